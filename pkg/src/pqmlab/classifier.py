"""Memory-affinity classification.

One quantum memory is stored per class label. A target is classified by the
acceptance probability rho of each memory's retrieval run: exact mode reads
rho = p_accept off the statevector, sampled mode estimates rho = M/N from N
seeded measurement shots of the control qubit. The label with the largest
rho wins; ties fall to the earliest label in ingestion order and are flagged.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .circuits import Algorithm, Mode, accept_bit, execute, pipeline_circuit
from .errors import DomainError
from .model import (
    BitPattern,
    EncodingKind,
    EncodingScheme,
    LabeledDataset,
    Pattern,
    encode,
)
from .statevector import probability

__all__ = [
    "LabelDatabase",
    "LabelAffinity",
    "AffinityResult",
    "default_encoding",
    "build_databases",
    "encode_target",
    "affinity",
    "classify",
]

POLICIES = ("count-all", "discard-unstored")


def default_encoding(algorithm: Algorithm) -> EncodingKind:
    """Feature-grouped memories store label bits, bit-level ones one-hot bits."""
    return EncodingKind.LABEL if algorithm is Algorithm.EPPQM else EncodingKind.ONE_HOT


@dataclass(frozen=True)
class LabelDatabase:
    """The distinct encoded patterns of one class label."""

    label: str
    patterns: tuple[Pattern, ...]
    encoded: tuple[BitPattern, ...]
    scheme: EncodingScheme
    duplicates_removed: int

    @property
    def size(self) -> int:
        return len(self.encoded)


def build_databases(dataset: LabeledDataset, scheme: EncodingScheme) -> tuple[LabelDatabase, ...]:
    """Group the dataset by label (ingestion order), encode, drop duplicates."""
    groups: dict[str, list[Pattern]] = {}
    for pattern, label in zip(dataset.patterns, dataset.labels):
        groups.setdefault(label, []).append(pattern)
    out = []
    for label, patterns in groups.items():
        seen: dict[str, Pattern] = {}
        dropped = 0
        for pat in patterns:
            bits = encode(pat, scheme)
            if bits.bits in seen:
                dropped += 1
            else:
                seen[bits.bits] = pat
        if dropped:
            warnings.warn(
                f"label {label!r}: removed {dropped} duplicate pattern(s); "
                f"memories store each pattern once"
            )
        kept = tuple(seen.values())
        out.append(
            LabelDatabase(
                label,
                kept,
                tuple(encode(p, scheme) for p in kept),
                scheme,
                dropped,
            )
        )
    return tuple(out)


def encode_target(dataset: LabeledDataset, symbols, scheme: EncodingScheme) -> BitPattern:
    """Encode target feature symbols, naming the offending feature on error."""
    symbols = tuple(symbols)
    if len(symbols) != dataset.num_features:
        raise DomainError(
            f"target has {len(symbols)} features, dataset has {dataset.num_features}"
        )
    indices = []
    for name, alphabet, symbol in zip(dataset.feature_names, dataset.alphabets, symbols):
        try:
            indices.append(alphabet.index(symbol))
        except DomainError:
            raise DomainError(
                f"feature {name!r}: symbol {symbol!r} not in alphabet {alphabet.symbols}"
            ) from None
    return encode(Pattern(tuple(indices)), scheme)


@dataclass(frozen=True)
class LabelAffinity:
    label: str
    rho: float
    accepted: int | None = None  # sampled mode: accepted shots M
    shots: int | None = None     # sampled mode: counted shots N (after policy)


@dataclass(frozen=True)
class AffinityResult:
    per_label: tuple[LabelAffinity, ...]
    chosen_label: str
    tie: bool


def _joint_accept_memory(state, layout):
    """Marginal outcome distribution over (c, memory register).

    Index layout of the returned vector: bit 0 is c, bit 1 + j is m[j].
    """
    q = state.num_qubits
    probs = (state.amplitudes.real**2 + state.amplitudes.imag**2).reshape((2,) * q)
    keep = [layout.c] + list(layout.m)
    # flat index bit k must be keep[k]; numpy axis of qubit i is q - 1 - i and
    # the first reshaped axis is the most significant bit of the flat index
    axes = [q - 1 - qubit for qubit in reversed(keep)]
    spectators = [ax for ax in range(q) if ax not in axes]
    marg = probs.transpose(spectators + axes).reshape(-1, 1 << len(keep)).sum(axis=0)
    return marg


def affinity(
    db: LabelDatabase,
    target: BitPattern | str,
    algorithm: Algorithm,
    mode: Mode = Mode.NISQ,
    nu: float = 1.0,
    shots: int | None = None,
    rng=None,
    policy: str = "count-all",
    max_qubits: int | None = None,
) -> LabelAffinity:
    """Acceptance affinity of one label memory for one encoded target.

    shots = None runs exact mode. Sampled mode draws `shots` outcomes of
    (c, memory) from the executed state with the supplied seed or generator;
    the simulator is deterministic, so re-preparing the memory every shot
    would reproduce the identical pre-measurement state, and sampling the
    Born distribution directly is observationally equivalent.

    policy "discard-unstored" additionally drops accepted shots whose memory
    readout is not a stored pattern (never on an ideal simulator; kept for
    parity with hardware post-processing) from both M and N.
    """
    if policy not in POLICIES:
        raise DomainError(f"policy must be one of {POLICIES}, got {policy!r}")
    bits = target.bits if isinstance(target, BitPattern) else str(target)
    widths = db.scheme.widths if algorithm is Algorithm.EPPQM else None
    pipe = pipeline_circuit(
        [bp.bits for bp in db.encoded], bits, algorithm, mode,
        nu=nu, widths=widths, measurements=False,
    )
    state = execute(pipe, max_qubits=max_qubits)
    accept = accept_bit(mode)
    if shots is None:
        return LabelAffinity(db.label, probability(state, pipe.layout.c, accept))
    if shots < 1:
        raise DomainError(f"shots must be >= 1, got {shots}")
    gen = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    marg = _joint_accept_memory(state, pipe.layout)
    marg = marg / marg.sum()
    draws = gen.choice(marg.size, size=shots, p=marg)
    c_bits = draws & 1
    m_codes = draws >> 1
    accepted_mask = c_bits == accept
    counted = shots
    if policy == "discard-unstored":
        stored = {int(bp.bits[::-1], 2) for bp in db.encoded}
        bad = accepted_mask & ~np.isin(m_codes, np.fromiter(stored, dtype=np.int64))
        counted -= int(bad.sum())
        accepted_mask &= ~bad
    m_count = int(accepted_mask.sum())
    rho = m_count / counted if counted else 0.0
    return LabelAffinity(db.label, rho, m_count, counted)


def classify(
    dataset: LabeledDataset,
    target_symbols,
    algorithm: Algorithm,
    mode: Mode = Mode.NISQ,
    nu: float = 1.0,
    encoding: EncodingKind | None = None,
    shots: int | None = None,
    seed: int | None = None,
    policy: str = "count-all",
    max_qubits: int | None = None,
) -> AffinityResult:
    """Classify a target by per-label memory affinity.

    One seeded generator is shared across labels in ingestion order, so a
    fixed seed fixes every count in the result.
    """
    kind = encoding if encoding is not None else default_encoding(algorithm)
    scheme = EncodingScheme(kind, tuple(a.size for a in dataset.alphabets))
    databases = build_databases(dataset, scheme)
    target = encode_target(dataset, target_symbols, scheme)
    gen = np.random.default_rng(seed) if shots is not None else None
    per_label = tuple(
        affinity(
            db, target, algorithm, mode,
            nu=nu, shots=shots, rng=gen, policy=policy, max_qubits=max_qubits,
        )
        for db in databases
    )
    best = max(a.rho for a in per_label)
    winners = [a.label for a in per_label if a.rho == best]
    return AffinityResult(per_label, winners[0], len(winners) > 1)
