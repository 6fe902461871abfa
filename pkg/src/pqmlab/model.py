"""Classical data model for quantum pattern memories.

Covers the pieces that need no simulator: categorical patterns and their
alphabets, one-hot / label bit encodings with per-feature widths, Hamming
distances at bit and feature level, database bit statistics, and the
closed-form retrieval distribution

    p_accept = (1/r) * sum_k cos^2(pi * d_k / (2 * denominator * nu))

shared by PQM (nu = 1, denominator = number of bits) and its parametric and
feature-grouped variants (denominator = number of features).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import DomainError

__all__ = [
    "Alphabet",
    "Pattern",
    "BitPattern",
    "EncodingKind",
    "EncodingScheme",
    "LabeledDataset",
    "encode",
    "decode",
    "hamming_bits",
    "hamming_features",
    "bit_fraction",
    "retrieval_distribution",
]


@dataclass(frozen=True)
class Alphabet:
    """Ordered symbol set of one categorical feature (first-appearance order)."""

    symbols: tuple[str, ...]

    def __post_init__(self):
        if not self.symbols:
            raise DomainError("alphabet must contain at least one symbol")
        if len(set(self.symbols)) != len(self.symbols):
            raise DomainError("alphabet symbols must be distinct")

    @property
    def size(self) -> int:
        return len(self.symbols)

    def index(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise DomainError(f"symbol {symbol!r} not in alphabet {self.symbols}") from None


@dataclass(frozen=True)
class Pattern:
    """One observation: a symbol index per feature."""

    features: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.features)


@dataclass(frozen=True)
class BitPattern:
    """Encoded observation: a bit string split into per-feature blocks."""

    bits: str
    widths: tuple[int, ...]

    def __post_init__(self):
        if set(self.bits) - {"0", "1"}:
            raise DomainError(f"bit string may contain only 0/1, got {self.bits!r}")
        if sum(self.widths) != len(self.bits):
            raise DomainError(
                f"widths {self.widths} sum to {sum(self.widths)}, "
                f"but bit string has length {len(self.bits)}"
            )

    def __len__(self) -> int:
        return len(self.bits)

    def blocks(self) -> tuple[str, ...]:
        out = []
        pos = 0
        for w in self.widths:
            out.append(self.bits[pos:pos + w])
            pos += w
        return tuple(out)


class EncodingKind(Enum):
    ONE_HOT = "onehot"
    LABEL = "label"


def _width(kind: EncodingKind, size: int) -> int:
    # Two-symbol (and degenerate one-symbol) features need a single bit in
    # either scheme; one-hot only pays `a` bits once a > 2.
    if size <= 2:
        return 1
    if kind is EncodingKind.ONE_HOT:
        return size
    return math.ceil(math.log2(size))


@dataclass(frozen=True)
class EncodingScheme:
    """Bit encoding of categorical features; per-feature widths may differ."""

    kind: EncodingKind
    sizes: tuple[int, ...]
    widths: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        if not self.sizes:
            raise DomainError("encoding scheme needs at least one feature")
        if any(a < 1 for a in self.sizes):
            raise DomainError(f"feature alphabet sizes must be >= 1, got {self.sizes}")
        object.__setattr__(self, "widths", tuple(_width(self.kind, a) for a in self.sizes))

    @classmethod
    def one_hot(cls, alphabets_or_sizes) -> "EncodingScheme":
        return cls(EncodingKind.ONE_HOT, _sizes_of(alphabets_or_sizes))

    @classmethod
    def label(cls, alphabets_or_sizes) -> "EncodingScheme":
        return cls(EncodingKind.LABEL, _sizes_of(alphabets_or_sizes))

    @property
    def num_features(self) -> int:
        return len(self.sizes)

    @property
    def total_bits(self) -> int:
        return sum(self.widths)


def _sizes_of(alphabets_or_sizes) -> tuple[int, ...]:
    out = []
    for item in alphabets_or_sizes:
        out.append(item.size if isinstance(item, Alphabet) else int(item))
    return tuple(out)


def _encode_feature(kind: EncodingKind, index: int, size: int, width: int) -> str:
    if size == 1:
        return "0"
    if size == 2:
        return str(index)
    if kind is EncodingKind.ONE_HOT:
        return "0" * index + "1" + "0" * (size - index - 1)
    return format(index, f"0{width}b")  # big-endian: leftmost bit is the high bit


def encode(pattern: Pattern, scheme: EncodingScheme) -> BitPattern:
    """Encode a pattern under the scheme, concatenating per-feature blocks."""
    if len(pattern) != scheme.num_features:
        raise DomainError(
            f"pattern has {len(pattern)} features, scheme expects {scheme.num_features}"
        )
    parts = []
    for j, (idx, size, width) in enumerate(zip(pattern.features, scheme.sizes, scheme.widths)):
        if not 0 <= idx < size:
            raise DomainError(f"feature {j}: symbol index {idx} out of range [0, {size})")
        parts.append(_encode_feature(scheme.kind, idx, size, width))
    return BitPattern("".join(parts), scheme.widths)


def decode(bit_pattern: BitPattern, scheme: EncodingScheme) -> Pattern:
    """Invert encode; rejects blocks that no symbol index produces."""
    if bit_pattern.widths != scheme.widths:
        raise DomainError(f"widths {bit_pattern.widths} do not match scheme {scheme.widths}")
    features = []
    for j, (block, size, width) in enumerate(
        zip(bit_pattern.blocks(), scheme.sizes, scheme.widths)
    ):
        for idx in range(size):
            if _encode_feature(scheme.kind, idx, size, width) == block:
                features.append(idx)
                break
        else:
            raise DomainError(f"feature {j}: block {block!r} is not a valid code")
    return Pattern(tuple(features))


def hamming_bits(x, y) -> int:
    """Number of positions where two equal-length bit strings differ."""
    x = x.bits if isinstance(x, BitPattern) else x
    y = y.bits if isinstance(y, BitPattern) else y
    if len(x) != len(y):
        raise DomainError(f"bit strings differ in length: {len(x)} vs {len(y)}")
    return sum(a != b for a, b in zip(x, y))


def hamming_features(p: Pattern, q: Pattern) -> int:
    """Number of features where two patterns hold different symbols."""
    if len(p) != len(q):
        raise DomainError(f"patterns differ in feature count: {len(p)} vs {len(q)}")
    return sum(a != b for a, b in zip(p.features, q.features))


def bit_fraction(patterns) -> float:
    """Fraction of 1 bits across a collection of bit strings (gamma/delta)."""
    total = 0
    ones = 0
    for pat in patterns:
        bits = pat.bits if isinstance(pat, BitPattern) else pat
        total += len(bits)
        ones += bits.count("1")
    if total == 0:
        raise DomainError("bit_fraction of an empty collection is undefined")
    return ones / total


def retrieval_distribution(
    distances, denominator: int, nu: float = 1.0
) -> tuple[float, tuple[float, ...] | None]:
    """Closed-form accept probability and per-pattern retrieval distribution.

    Args:
        distances: Hamming distance d_k from the target to each stored pattern,
            at bit level (denominator = number of bits) or feature level
            (denominator = number of features).
        denominator: scale of the phase angle, n or z.
        nu: scaling parameter in (0, 1]; 1 recovers the unparametrised memory.

    Returns:
        (p_accept, per_pattern) where per_pattern[k] is the probability of
        reading pattern k given acceptance, or None when p_accept is zero.
    """
    distances = tuple(distances)
    if not distances:
        raise DomainError("retrieval_distribution needs at least one stored pattern")
    if denominator < 1:
        raise DomainError(f"denominator must be >= 1, got {denominator}")
    if not 0.0 < nu <= 1.0:
        raise DomainError(f"nu must lie in (0, 1], got {nu}")
    for d in distances:
        if d < 0 or d > denominator:
            raise DomainError(f"distance {d} outside [0, {denominator}]")
    r = len(distances)
    weights = []
    for d in distances:
        c = math.cos(math.pi * d / (2.0 * denominator * nu))
        # angles that are odd multiples of pi/2 give an exact zero in the
        # mathematics but ~1e-17 in floats; snap so the zero case is signaled
        if abs(c) < 1e-15:
            c = 0.0
        weights.append(c * c)
    p_accept = sum(weights) / r
    if p_accept == 0.0:
        return 0.0, None
    return p_accept, tuple(w / (r * p_accept) for w in weights)


@dataclass(frozen=True)
class LabeledDataset:
    """Categorical dataset: z feature columns, one label column."""

    feature_names: tuple[str, ...]
    label_name: str
    alphabets: tuple[Alphabet, ...]
    patterns: tuple[Pattern, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.feature_names) != len(self.alphabets):
            raise DomainError("one alphabet per feature column required")
        if len(self.patterns) != len(self.labels):
            raise DomainError("one label per pattern required")
        for pat in self.patterns:
            if len(pat) != len(self.alphabets):
                raise DomainError("pattern width does not match feature count")

    @property
    def num_features(self) -> int:
        return len(self.feature_names)

    def __len__(self) -> int:
        return len(self.patterns)

    def label_order(self) -> tuple[str, ...]:
        seen = dict.fromkeys(self.labels)
        return tuple(seen)

    def symbols(self, pattern: Pattern) -> tuple[str, ...]:
        return tuple(a.symbols[i] for a, i in zip(self.alphabets, pattern.features))
