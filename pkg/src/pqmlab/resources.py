"""Closed-form resource estimates: qubit counts, gate inventories, savings.

Everything here is arithmetic over instance shape statistics; nothing builds
or simulates a circuit. The formulas mirror the published inventories, and
the test suite cross-checks them against histograms of constructed circuits,
so builders and formulas audit each other.

Gate counts are keyed by the same buckets circuits.histogram emits, with
controlled-X bucketed by control arity (1 cnot, 2 ccx, 3-4 mcx, 5+ mcx_gray).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .circuits import Algorithm, Mode
from .errors import DomainError
from .model import EncodingKind, EncodingScheme

__all__ = [
    "Convention",
    "InstanceStats",
    "pattern_bits",
    "qubit_count",
    "qubit_savings_percent",
    "storage_gate_counts",
    "retrieval_gate_counts",
    "measurement_count",
    "omega",
    "full_report",
    "ResourceReport",
]


class Convention:
    """Qubit accounting for the feature-grouped pipelines.

    THEORY reuses both auxiliary qubits across the storage/retrieval phases
    (n_l + z + 1 for NISQ, 2*n_l + z + 1 for FT). IMPLEMENTATION reassigns
    only the control qubit, as the published experiments did, costing one
    extra qubit. Bit-level pipelines need 2*n_o + 2 under either convention.
    """

    THEORY = "theory"
    IMPLEMENTATION = "implementation"


@dataclass(frozen=True)
class InstanceStats:
    """Shape of one stored-database instance.

    gamma is the fraction of 1 bits in the encoded database, delta the same
    for the encoded target; both optional since qubit counts need neither.
    """

    r: int
    sizes: tuple[int, ...]
    gamma: float | None = None
    delta: float | None = None

    def __post_init__(self):
        if self.r < 1:
            raise DomainError(f"need at least one stored pattern, got r={self.r}")
        if not self.sizes or any(a < 1 for a in self.sizes):
            raise DomainError(f"feature sizes must be >= 1, got {self.sizes}")
        for name, value in (("gamma", self.gamma), ("delta", self.delta)):
            if value is not None and not 0.0 <= value <= 1.0:
                raise DomainError(f"{name} must lie in [0, 1], got {value}")

    @classmethod
    def uniform(cls, r: int, z: int, a: int, gamma=None, delta=None) -> "InstanceStats":
        if z < 1:
            raise DomainError(f"need at least one feature, got z={z}")
        return cls(r, (a,) * z, gamma, delta)

    @property
    def z(self) -> int:
        return len(self.sizes)

    @property
    def a(self) -> int:
        """Dataset-level alphabet size: the largest per-feature size."""
        return max(self.sizes)

    def widths(self, kind: EncodingKind, uniform: bool = True) -> tuple[int, ...]:
        sizes = (self.a,) * self.z if uniform else self.sizes
        return EncodingScheme(kind, sizes).widths

    def bits(self, kind: EncodingKind, uniform: bool = True) -> int:
        return sum(self.widths(kind, uniform))


def pattern_bits(z: int, a: int, encoding: EncodingKind) -> int:
    """Encoded pattern length for z features over a uniform alphabet of size a:
    z*a one-hot bits (z when a <= 2), z*ceil(log2 a) label bits."""
    if z < 1:
        raise DomainError(f"need at least one feature, got z={z}")
    return EncodingScheme(encoding, (a,) * z).total_bits


_ENCODING_FOR = {
    Algorithm.PQM: EncodingKind.ONE_HOT,
    Algorithm.PPQM: EncodingKind.ONE_HOT,
    Algorithm.EPPQM: EncodingKind.LABEL,
}


def qubit_count(
    algorithm: Algorithm,
    mode: Mode,
    stats: InstanceStats,
    convention: str = Convention.THEORY,
    uniform: bool = True,
) -> int:
    """Qubits of the combined storage+retrieval circuit."""
    if convention not in (Convention.THEORY, Convention.IMPLEMENTATION):
        raise DomainError(f"unknown convention {convention!r}")
    n = stats.bits(_ENCODING_FOR[algorithm], uniform)
    if algorithm is not Algorithm.EPPQM:
        return 2 * n + 2
    extra = 0 if convention == Convention.THEORY else 1
    if mode is Mode.FT:
        return 2 * n + stats.z + 1 + extra
    return n + stats.z + 1 + extra


def qubit_savings_percent(onehot_qubits: int, label_qubits: int) -> int:
    """Relative qubit saving as an integer percent, rounded half-up
    (76.5 -> 77, never banker's)."""
    if onehot_qubits <= 0:
        raise DomainError("qubit count must be positive")
    value = 100.0 * (onehot_qubits - label_qubits) / onehot_qubits
    return int(math.floor(value + 0.5))


def _ones_of(total_bits: int, fraction: float | None, ones: int | None, name: str) -> int:
    if ones is not None:
        if not 0 <= ones <= total_bits:
            raise DomainError(f"{name} one-bit tally {ones} outside [0, {total_bits}]")
        return int(ones)
    if fraction is None:
        raise DomainError(f"{name} needs either a one-bit tally or a fraction")
    if not 0.0 <= fraction <= 1.0:
        raise DomainError(f"{name} fraction must lie in [0, 1], got {fraction}")
    return int(round(fraction * total_bits))


def _bucket_of_arity(arity: int) -> str:
    if arity == 1:
        return "cnot"
    if arity == 2:
        return "ccx"
    if arity <= 4:
        return "mcx"
    return "mcx_gray"


def _add(counts: dict[str, int], key: str, value: int) -> None:
    if value:
        counts[key] = counts.get(key, 0) + value


def storage_gate_counts(
    algorithm: Algorithm,
    mode: Mode,
    n: int,
    r: int,
    gamma: float | None = None,
    ones: int | None = None,
) -> dict[str, int]:
    """Storage inventory over n encoded bits and r patterns.

    Register-copy storage (bit-level families and feature-grouped FT) costs
    2nr cnot + 2nr ccx + 2nr x + 2r n-controlled fans + r cs. The merged
    feature-grouped NISQ pass replaces that with 2*ones cnot + 2*(nr - ones) x
    (ones = one bits across the r encoded patterns, gamma*n*r when given as a
    fraction). Pattern load/unload gates are excluded; circuits report them
    under the separate "load" bucket.
    """
    if n < 1 or r < 1:
        raise DomainError(f"need n >= 1 and r >= 1, got n={n}, r={r}")
    counts: dict[str, int] = {}
    if algorithm is Algorithm.EPPQM and mode is Mode.NISQ:
        total_ones = _ones_of(n * r, gamma, ones, "gamma")
        _add(counts, "cnot", 2 * total_ones)
        _add(counts, "x", 2 * (n * r - total_ones))
    else:
        _add(counts, "cnot", 2 * n * r)
        _add(counts, "ccx", 2 * n * r)
        _add(counts, "x", 2 * n * r)
    _add(counts, _bucket_of_arity(n), 2 * r)
    _add(counts, "cs", r)
    return counts


def retrieval_gate_counts(
    algorithm: Algorithm,
    mode: Mode,
    widths: tuple[int, ...],
    delta: float | None = None,
    ones: int | None = None,
) -> dict[str, int]:
    """Retrieval inventory; widths are the per-feature encoded bit widths
    (their sum is n). The NISQ X fans depend on the target: ones = one bits in
    the encoded target (bit-level) — the feature-grouped fan marks zeros, so
    it costs 2*(n - ones) gates. The single-qubit nu correction of NISQ
    circuits at nu != 1 is excluded; circuits report it under "nu_adjust".
    """
    widths = tuple(widths)
    n = sum(widths)
    if n < 1:
        raise DomainError("need at least one encoded bit")
    z = len(widths)
    counts: dict[str, int] = {"h": 2}
    if algorithm is Algorithm.EPPQM:
        for w in widths:
            _add(counts, _bucket_of_arity(w), 2)
        _add(counts, "u", z)
        _add(counts, "gu", z)
        if mode is Mode.FT:
            _add(counts, "cnot", 2 * n)
            _add(counts, "x", 2 * n + 2 * z)
        else:
            target_ones = _ones_of(n, delta, ones, "delta")
            _add(counts, "x", 2 * (n - target_ones))
    else:
        _add(counts, "u", n)
        _add(counts, "gu", n)
        if mode is Mode.FT:
            _add(counts, "cnot", 2 * n)
            _add(counts, "x", 2 * n)
        else:
            target_ones = _ones_of(n, delta, ones, "delta")
            _add(counts, "x", 2 * target_ones)
    return counts


def measurement_count(algorithm: Algorithm, stats: InstanceStats, uniform: bool = True) -> int:
    """Measured qubits of a pipeline: the memory register plus c."""
    return stats.bits(_ENCODING_FOR[algorithm], uniform) + 1


def omega(delta: float, a: int) -> float:
    """NISQ retrieval X-gate ratio one-hot/label: (delta/(1-delta)) * (a/ceil(log2 a)).

    The feature-grouped fan is cheaper exactly when omega > 1. Defined for
    a > 2 (below that the encodings coincide) and delta < 1.
    """
    if a <= 2:
        raise DomainError(f"omega is defined for alphabets larger than 2, got a={a}")
    if not 0.0 <= delta < 1.0:
        raise DomainError(f"delta must lie in [0, 1), got {delta}")
    return (delta / (1.0 - delta)) * (a / math.ceil(math.log2(a)))


@dataclass(frozen=True)
class ResourceReport:
    stats: InstanceStats
    qubits: dict[str, dict[str, int]]
    savings_percent: dict[str, int]
    storage: dict[str, dict[str, int]] | None
    retrieval: dict[str, dict[str, int]] | None
    measurements: dict[str, int]
    omega_value: float | None

    def to_dict(self) -> dict:
        return {
            "shape": {
                "r": self.stats.r,
                "z": self.stats.z,
                "a": self.stats.a,
                "sizes": list(self.stats.sizes),
                "gamma": self.stats.gamma,
                "delta": self.stats.delta,
            },
            "qubits": self.qubits,
            "savings_percent": self.savings_percent,
            "storage_gates": self.storage,
            "retrieval_gates": self.retrieval,
            "measurements": self.measurements,
            "omega": self.omega_value,
        }


def full_report(stats: InstanceStats, mode: Mode = Mode.NISQ, uniform: bool = True) -> ResourceReport:
    """Qubit/gate/savings summary comparing the one-hot bit-level memory with
    the feature-grouped label-encoded one, in the requested mode.

    Gate tables appear when the needed bit statistics are present (gamma for
    storage, delta for NISQ retrieval); omega when delta is known and a > 2.
    """
    n_o = stats.bits(EncodingKind.ONE_HOT, uniform)
    n_l = stats.bits(EncodingKind.LABEL, uniform)
    qubits = {}
    for name, algo in (("ppqm", Algorithm.PPQM), ("eppqm", Algorithm.EPPQM)):
        qubits[name] = {
            conv: qubit_count(algo, mode, stats, conv, uniform)
            for conv in (Convention.THEORY, Convention.IMPLEMENTATION)
        }
    savings = {
        conv: qubit_savings_percent(qubits["ppqm"][conv], qubits["eppqm"][conv])
        for conv in (Convention.THEORY, Convention.IMPLEMENTATION)
    }
    storage = None
    if stats.gamma is not None:
        storage = {
            "ppqm": storage_gate_counts(Algorithm.PPQM, mode, n_o, stats.r, gamma=stats.gamma),
            "eppqm": storage_gate_counts(Algorithm.EPPQM, mode, n_l, stats.r, gamma=stats.gamma),
        }
    retrieval = None
    if mode is Mode.FT or stats.delta is not None:
        retrieval = {
            "ppqm": retrieval_gate_counts(
                Algorithm.PPQM, mode, stats.widths(EncodingKind.ONE_HOT, uniform), delta=stats.delta
            ),
            "eppqm": retrieval_gate_counts(
                Algorithm.EPPQM, mode, stats.widths(EncodingKind.LABEL, uniform), delta=stats.delta
            ),
        }
    measurements = {
        "ppqm": measurement_count(Algorithm.PPQM, stats, uniform),
        "eppqm": measurement_count(Algorithm.EPPQM, stats, uniform),
    }
    omega_value = None
    if stats.delta is not None and stats.a > 2 and stats.delta < 1.0:
        omega_value = omega(stats.delta, stats.a)
    return ResourceReport(stats, qubits, savings, storage, retrieval, measurements, omega_value)
