"""Shared random-instance generators for the test suite."""

from __future__ import annotations

import numpy as np

from pqmlab import Algorithm, Mode

ALL_PAIRINGS = [(algo, mode) for algo in Algorithm for mode in Mode]


def random_bits(rng: np.random.Generator, n: int) -> str:
    return "".join(rng.choice(["0", "1"], size=n))


def random_database(rng: np.random.Generator, n: int, r: int) -> list[str]:
    if r > 1 << n:
        raise ValueError(f"cannot draw {r} distinct {n}-bit patterns")
    pats: set[str] = set()
    while len(pats) < r:
        pats.add(random_bits(rng, n))
    return sorted(pats)


def random_widths(rng: np.random.Generator, z: int, max_width: int = 2) -> tuple[int, ...]:
    return tuple(int(w) for w in rng.integers(1, max_width + 1, size=z))


def random_instance(rng: np.random.Generator, algorithm: Algorithm):
    """(database, target, nu, widths) sized to stay well under the qubit cap."""
    if algorithm is Algorithm.EPPQM:
        widths = random_widths(rng, int(rng.integers(1, 4)))
        n = sum(widths)
    else:
        widths = None
        n = int(rng.integers(2, 7))
    r = int(rng.integers(1, min(4, 1 << n) + 1))
    database = random_database(rng, n, r)
    target = random_bits(rng, n)
    nu = 1.0 if algorithm is Algorithm.PQM else float(rng.uniform(0.1, 1.0))
    return database, target, nu, widths


def feature_distances(target: str, database, widths) -> list[int]:
    out = []
    for bits in database:
        d = 0
        pos = 0
        for w in widths:
            if target[pos:pos + w] != bits[pos:pos + w]:
                d += 1
            pos += w
        out.append(d)
    return out


def bit_distances(target: str, database) -> list[int]:
    return [sum(a != b for a, b in zip(target, bits)) for bits in database]
