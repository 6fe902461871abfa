"""Circuit builders for quantum pattern-memory storage and retrieval.

Three algorithm families share one memory model:

- bit-level memory (uniform superposition of bit patterns) with the
  register-copy storage routine and phase-accumulation retrieval; the
  parametric variant scales every phase angle by 1/nu
- feature-grouped memory, which stores label-encoded bits, compares whole
  feature blocks through multi-controlled fans onto a feature register h, and
  accumulates one phase per feature instead of one per bit

Each family has a fault-tolerant (FT) flavour, where the target lives in a
quantum register and acceptance is c = 0, and a NISQ flavour, where the
target is classical, fans are thinner, and acceptance is c = 1.

Storage and retrieval circuits are built over a shared register layout so a
pipeline (storage, register reuse glue, retrieval, measurement) is plain
concatenation. Total qubit counts: 2n+2 for bit-level pipelines, 2n+z+1 /
n+z+1 for feature-grouped FT / NISQ.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import DomainError
from .model import BitPattern
from .statevector import (
    GateOp,
    QuantumState,
    apply,
    cnot,
    cs,
    ctrl_diag_phase,
    diag_phase,
    h,
    measure_op,
    mcx,
    new_state,
    probability,
    x,
)

__all__ = [
    "Algorithm",
    "Mode",
    "RegisterLayout",
    "Circuit",
    "make_layout",
    "storage_circuit",
    "retrieval_circuit",
    "pipeline_circuit",
    "accept_bit",
    "execute",
    "default_initial",
    "depth",
    "histogram",
]


class Algorithm(Enum):
    PQM = "pqm"      # bit-level, nu fixed at 1
    PPQM = "ppqm"    # bit-level, parametric nu
    EPPQM = "eppqm"  # feature-grouped, parametric nu


class Mode(Enum):
    FT = "ft"
    NISQ = "nisq"


@dataclass(frozen=True)
class RegisterLayout:
    """Named qubit spans. p/u/m/h_extra are disjoint; the retrieval-phase
    registers reuse storage qubits: the control c is u[0] and, for the
    feature-grouped family, h[0] is u[1] (the remaining h qubits are fresh).
    """

    p: tuple[int, ...]
    u: tuple[int, ...]
    m: tuple[int, ...]
    h_extra: tuple[int, ...]
    feature_level: bool

    def __post_init__(self):
        spans = self.p + self.u + self.m + self.h_extra
        if len(set(spans)) != len(spans):
            raise DomainError("register spans overlap")
        if len(self.u) != 2:
            raise DomainError("auxiliary register u must hold exactly 2 qubits")

    @property
    def t(self) -> tuple[int, ...]:
        return self.p

    @property
    def c(self) -> int:
        return self.u[0]

    @property
    def h(self) -> tuple[int, ...]:
        return (self.u[1],) + self.h_extra if self.feature_level else ()

    @property
    def total_qubits(self) -> int:
        return len(self.p) + len(self.u) + len(self.m) + len(self.h_extra)


def make_layout(algorithm: Algorithm, mode: Mode, n: int, z: int = 0) -> RegisterLayout:
    """Shared storage+retrieval layout for one algorithm/mode pairing."""
    if n < 1:
        raise DomainError(f"need at least one pattern bit, got n={n}")
    if algorithm is Algorithm.EPPQM:
        if z < 1:
            raise DomainError("feature-grouped layout needs z >= 1 features")
        if mode is Mode.NISQ:
            # u, m, h: n + z + 1 qubits total
            return RegisterLayout(
                p=(),
                u=(0, 1),
                m=tuple(range(2, n + 2)),
                h_extra=tuple(range(n + 2, n + z + 1)),
                feature_level=True,
            )
        # p, u, m, h: 2n + z + 1 qubits total
        return RegisterLayout(
            p=tuple(range(n)),
            u=(n, n + 1),
            m=tuple(range(n + 2, 2 * n + 2)),
            h_extra=tuple(range(2 * n + 2, 2 * n + z + 1)),
            feature_level=True,
        )
    # bit-level families: p, u, m: 2n + 2 qubits in both modes
    return RegisterLayout(
        p=tuple(range(n)),
        u=(n, n + 1),
        m=tuple(range(n + 2, 2 * n + 2)),
        h_extra=(),
        feature_level=False,
    )


@dataclass
class Circuit:
    """Gate list over a layout plus the metadata needed to run and audit it."""

    layout: RegisterLayout
    ops: list[GateOp]
    algorithm: Algorithm
    mode: Mode
    phase: str  # "storage" | "retrieval" | "pipeline"
    nu: float = 1.0
    widths: tuple[int, ...] | None = None
    num_patterns: int | None = None
    initial_basis: int | None = None
    # basis bits the incoming state must hold with certainty
    preconditions: tuple[tuple[int, int], ...] = field(default=())

    @property
    def num_qubits(self) -> int:
        return self.layout.total_qubits


def _as_bits(pattern) -> str:
    bits = pattern.bits if isinstance(pattern, BitPattern) else str(pattern)
    if set(bits) - {"0", "1"}:
        raise DomainError(f"pattern must be a bit string, got {bits!r}")
    return bits


def _normalize_database(database) -> list[str]:
    rows = [_as_bits(p) for p in database]
    if not rows:
        raise DomainError("database must contain at least one pattern")
    n = len(rows[0])
    if n == 0:
        raise DomainError("patterns must contain at least one bit")
    for b in rows:
        if len(b) != n:
            raise DomainError(f"patterns differ in length: {len(b)} vs {n}")
    if len(set(rows)) != len(rows):
        raise DomainError("stored patterns must be distinct")
    return rows


def _check_nu(algorithm: Algorithm, nu: float) -> float:
    nu = float(nu)
    if not 0.0 < nu <= 1.0:
        raise DomainError(f"nu must lie in (0, 1], got {nu}")
    if algorithm is Algorithm.PQM and nu != 1.0:
        raise DomainError("the unparametrised memory fixes nu = 1")
    return nu


def _check_widths(widths, n: int) -> tuple[int, ...]:
    if widths is None:
        raise DomainError("feature-grouped circuits need per-feature widths")
    widths = tuple(int(w) for w in widths)
    if any(w < 1 for w in widths):
        raise DomainError(f"feature widths must be >= 1, got {widths}")
    if sum(widths) != n:
        raise DomainError(f"widths {widths} sum to {sum(widths)}, patterns have {n} bits")
    return widths


def _feature_blocks(layout: RegisterLayout, widths: tuple[int, ...]) -> list[tuple[int, ...]]:
    blocks = []
    pos = 0
    for w in widths:
        blocks.append(layout.m[pos:pos + w])
        pos += w
    return blocks


def _storage_ops_ft(layout: RegisterLayout, rows: list[str]) -> list[GateOp]:
    """Register-copy storage: copy, compare, rotate a 1/sqrt(r) slice, undo."""
    p, u, m = layout.p, layout.u, layout.m
    n, r = len(m), len(rows)
    ops: list[GateOp] = []
    for i, bits in enumerate(rows, start=1):
        loads = [x(p[j], role="load") for j in range(n) if bits[j] == "1"]
        ops += loads
        for j in range(n):
            ops.append(mcx((p[j], u[1]), m[j]))
        for j in range(n):
            ops.append(cnot(p[j], m[j]))
            ops.append(x(m[j]))
        ops.append(mcx(m, u[0]))
        ops.append(cs(u[0], u[1], r + 1 - i))
        ops.append(mcx(m, u[0]))
        for j in range(n):
            ops.append(x(m[j]))
            ops.append(cnot(p[j], m[j]))
        for j in range(n):
            ops.append(mcx((p[j], u[1]), m[j]))
        ops += loads
    return ops


def _storage_ops_feature_nisq(layout: RegisterLayout, rows: list[str]) -> list[GateOp]:
    """Input-free storage: the copy and compare fans collapse into one pass
    that drives m to all-ones on the not-yet-stored branch (CNOT from u[1]
    where the bit is 1, plain X where it is 0)."""
    u, m = layout.u, layout.m
    n, r = len(m), len(rows)
    ops: list[GateOp] = []
    for i, bits in enumerate(rows, start=1):
        fan = []
        for j in range(n):
            fan.append(cnot(u[1], m[j]) if bits[j] == "1" else x(m[j]))
        ops += fan
        ops.append(mcx(m, u[0]))
        ops.append(cs(u[0], u[1], r + 1 - i))
        ops.append(mcx(m, u[0]))
        ops += fan
    return ops


def storage_circuit(database, algorithm: Algorithm, mode: Mode, layout=None) -> Circuit:
    """Build the storage circuit for r distinct patterns.

    Post-state: memory register in the uniform superposition of the stored
    patterns with amplitude 1/sqrt(r) each, every other register back in
    |0...0>.
    """
    rows = _normalize_database(database)
    n = len(rows[0])
    if layout is None:
        layout = make_layout(algorithm, mode, n, z=1 if algorithm is Algorithm.EPPQM else 0)
    if len(layout.m) != n:
        raise DomainError(f"layout memory register holds {len(layout.m)} qubits, patterns {n}")
    if algorithm is Algorithm.EPPQM and mode is Mode.NISQ:
        ops = _storage_ops_feature_nisq(layout, rows)
    else:
        if not layout.p:
            raise DomainError("register-copy storage needs the input register p")
        ops = _storage_ops_ft(layout, rows)
    initial = 1 << layout.u[1]
    pre = [(q, 0) for q in layout.p + layout.m] + [(layout.u[0], 0), (layout.u[1], 1)]
    return Circuit(
        layout, ops, algorithm, mode, "storage",
        num_patterns=len(rows), initial_basis=initial, preconditions=tuple(pre),
    )


def _nu_adjust_op(control: int, count: int, theta: float) -> GateOp | None:
    """Phase that moves the cos^2-weighted branch onto c = 1 for NISQ retrieval.

    The NISQ fans mark matches where the FT fans mark mismatches, so the
    accumulated phase is proportional to (count - d) rather than d. A single
    diag-phase of pi - 2*count*theta on c restores the complement identity for
    every nu; at nu = 1 it is the identity and is omitted.
    """
    angle = math.pi - 2.0 * count * theta
    if abs(complex(math.cos(angle), math.sin(angle)) - 1.0) < 1e-12:
        return None
    return diag_phase(control, angle, role="nu_adjust")


def _retrieval_ops_bit_ft(layout, target: str, theta: float) -> list[GateOp]:
    t, m, c = layout.t, layout.m, layout.c
    n = len(m)
    ops = [h(c)]
    for j in range(n):
        ops.append(cnot(t[j], m[j]))
        ops.append(x(m[j]))
    for j in range(n):
        ops.append(diag_phase(m[j], theta))
    for e in range(n):
        ops.append(ctrl_diag_phase(c, m[e], -2.0 * theta))
    for j in reversed(range(n)):
        ops.append(x(m[j]))
        ops.append(cnot(t[j], m[j]))
    ops.append(h(c))
    return ops


def _retrieval_ops_bit_nisq(layout, target: str, theta: float) -> list[GateOp]:
    m, c = layout.m, layout.c
    n = len(m)
    ones = [j for j in range(n) if target[j] == "1"]
    ops = [h(c)]
    ops += [x(m[j]) for j in ones]
    for j in range(n):
        ops.append(diag_phase(m[j], theta))
    adjust = _nu_adjust_op(c, n, theta)
    if adjust is not None:
        ops.append(adjust)
    for e in range(n):
        ops.append(ctrl_diag_phase(c, m[e], -2.0 * theta))
    ops += [x(m[j]) for j in reversed(ones)]
    ops.append(h(c))
    return ops


def _retrieval_ops_feature_ft(layout, target: str, theta: float, widths) -> list[GateOp]:
    t, m, c, hreg = layout.t, layout.m, layout.c, layout.h
    n, blocks = len(m), _feature_blocks(layout, widths)
    z = len(blocks)
    ops = [h(c)]
    for j in range(n):
        ops.append(cnot(t[j], m[j]))
        ops.append(x(m[j]))
    for f in range(z):
        ops.append(mcx(blocks[f], hreg[f]))
        ops.append(x(hreg[f]))
    for f in range(z):
        ops.append(diag_phase(hreg[f], theta))
    for e in range(z):
        ops.append(ctrl_diag_phase(c, hreg[e], -2.0 * theta))
    for f in reversed(range(z)):
        ops.append(x(hreg[f]))
        ops.append(mcx(blocks[f], hreg[f]))
    for j in reversed(range(n)):
        ops.append(x(m[j]))
        ops.append(cnot(t[j], m[j]))
    ops.append(h(c))
    return ops


def _retrieval_ops_feature_nisq(layout, target: str, theta: float, widths) -> list[GateOp]:
    m, c, hreg = layout.m, layout.c, layout.h
    n, blocks = len(m), _feature_blocks(layout, widths)
    z = len(blocks)
    zeros = [j for j in range(n) if target[j] == "0"]
    ops = [h(c)]
    ops += [x(m[j]) for j in zeros]
    for f in range(z):
        ops.append(mcx(blocks[f], hreg[f]))
    for f in range(z):
        ops.append(diag_phase(hreg[f], theta))
    adjust = _nu_adjust_op(c, z, theta)
    if adjust is not None:
        ops.append(adjust)
    for e in range(z):
        ops.append(ctrl_diag_phase(c, hreg[e], -2.0 * theta))
    for f in reversed(range(z)):
        ops.append(mcx(blocks[f], hreg[f]))
    ops += [x(m[j]) for j in reversed(zeros)]
    ops.append(h(c))
    return ops


def retrieval_circuit(
    target,
    algorithm: Algorithm,
    mode: Mode,
    nu: float = 1.0,
    widths=None,
    layout=None,
) -> Circuit:
    """Build the retrieval circuit for one target pattern.

    The circuit expects memory already loaded (and, in the feature-grouped
    family, the h register at all-ones; in the FT family, the target already
    in t): execute it on a state produced by storage plus the pipeline glue,
    or use pipeline_circuit which assembles the whole sequence.
    """
    bits = _as_bits(target)
    n = len(bits)
    if n == 0:
        raise DomainError("target must contain at least one bit")
    nu = _check_nu(algorithm, nu)
    if algorithm is Algorithm.EPPQM:
        widths = _check_widths(widths, n)
        z = len(widths)
        theta = math.pi / (2.0 * z * nu)
    else:
        widths = None
        theta = math.pi / (2.0 * n * nu)
    if layout is None:
        layout = make_layout(algorithm, mode, n, z=len(widths) if widths else 0)
    if len(layout.m) != n:
        raise DomainError(f"layout memory register holds {len(layout.m)} qubits, target {n}")
    if algorithm is Algorithm.EPPQM:
        if len(layout.h) != len(widths):
            raise DomainError(f"layout has {len(layout.h)} feature qubits, widths {len(widths)}")
        if mode is Mode.FT:
            ops = _retrieval_ops_feature_ft(layout, bits, theta, widths)
        else:
            ops = _retrieval_ops_feature_nisq(layout, bits, theta, widths)
    elif mode is Mode.FT:
        ops = _retrieval_ops_bit_ft(layout, bits, theta)
    else:
        ops = _retrieval_ops_bit_nisq(layout, bits, theta)
    return Circuit(layout, ops, algorithm, mode, "retrieval", nu=nu, widths=widths)


def accept_bit(mode: Mode) -> int:
    """Control-qubit value that accepts the retrieval: 0 for FT, 1 for NISQ."""
    return 0 if mode is Mode.FT else 1


def pipeline_circuit(
    database,
    target,
    algorithm: Algorithm,
    mode: Mode,
    nu: float = 1.0,
    widths=None,
    measurements: bool = True,
) -> Circuit:
    """Full circuit: storage, register-reuse glue, retrieval, measurement.

    Glue between the phases: FT targets are loaded into p by plain X gates
    (role "load"); feature-grouped pipelines re-raise u[1] to |1> with one X
    (role "init") because that qubit is reused as h[0] and retrieval starts
    from h = |1...1>. Measurement markers cover c and the memory register.
    """
    rows = _normalize_database(database)
    n = len(rows[0])
    bits = _as_bits(target)
    if len(bits) != n:
        raise DomainError(f"target has {len(bits)} bits, stored patterns {n}")
    nu = _check_nu(algorithm, nu)
    if algorithm is Algorithm.EPPQM:
        widths = _check_widths(widths, n)
    layout = make_layout(algorithm, mode, n, z=len(widths) if widths else 0)
    store = storage_circuit(rows, algorithm, mode, layout=layout)
    retrieve = retrieval_circuit(bits, algorithm, mode, nu=nu, widths=widths, layout=layout)
    ops = list(store.ops)
    if algorithm is Algorithm.EPPQM:
        ops.append(x(layout.h[0], role="init"))
    if mode is Mode.FT:
        ops += [x(layout.p[j], role="load") for j in range(n) if bits[j] == "1"]
    ops += retrieve.ops
    if measurements:
        ops.append(measure_op(layout.c))
        ops += [measure_op(q) for q in layout.m]
    initial = 1 << layout.u[1]
    for q in layout.h_extra:
        initial |= 1 << q
    pre = [(q, 0) for q in layout.p + layout.m] + [(layout.u[0], 0), (layout.u[1], 1)]
    pre += [(q, 1) for q in layout.h_extra]
    return Circuit(
        layout, ops, algorithm, mode, "pipeline",
        nu=nu, widths=widths, num_patterns=len(rows),
        initial_basis=initial, preconditions=tuple(pre),
    )


def default_initial(circuit: Circuit, max_qubits: int | None = None) -> QuantumState:
    """Documented start state of a storage or pipeline circuit."""
    if circuit.initial_basis is None:
        raise DomainError(
            "retrieval circuits have no default start state; "
            "execute them on a stored-memory state or build a pipeline"
        )
    return new_state(circuit.num_qubits, circuit.initial_basis, max_qubits=max_qubits)


def execute(
    circuit: Circuit,
    initial: QuantumState | None = None,
    max_qubits: int | None = None,
    check: bool = True,
) -> QuantumState:
    """Run every gate of the circuit and return the final state.

    The incoming state is copied, never mutated. Measurement markers are
    skipped (they exist for resource accounting); sample outcomes from the
    returned state with statevector.measure. Storage and pipeline circuits
    verify that the incoming state holds their documented start configuration
    on the work registers, so running storage twice without a reset is
    rejected.
    """
    if initial is None:
        state = default_initial(circuit, max_qubits=max_qubits)
    else:
        if initial.num_qubits != circuit.num_qubits:
            raise DomainError(
                f"state has {initial.num_qubits} qubits, circuit needs {circuit.num_qubits}"
            )
        state = initial.copy()
    if check:
        for qubit, bit in circuit.preconditions:
            if probability(state, qubit, bit) < 1.0 - 1e-10:
                raise DomainError(
                    f"initial state violates the circuit precondition qubit {qubit} = {bit} "
                    f"(was storage run twice without a reset?)"
                )
    for op in circuit.ops:
        if op.kind == "measure":
            continue
        apply(state, op)
    return state


def depth(circuit: Circuit) -> int:
    """Greedy as-soon-as-possible layering; every op occupies its qubits."""
    level = [0] * circuit.num_qubits
    top = 0
    for op in circuit.ops:
        qs = op.qubits()
        d = 1 + max(level[q] for q in qs)
        for q in qs:
            level[q] = d
        top = max(top, d)
    return top


def _bucket(op: GateOp) -> str:
    if op.role is not None:
        return op.role if op.role != "init" else "load"
    if op.kind == "x":
        arity = len(op.controls)
        if arity == 0:
            return "x"
        if arity == 1:
            return "cnot"
        if arity == 2:
            return "ccx"
        if arity <= 4:
            return "mcx"
        return "mcx_gray"
    return {"h": "h", "phase": "u", "cphase": "gu", "cs": "cs", "measure": "measure"}[op.kind]


def histogram(circuit: Circuit) -> dict[str, int]:
    """Gate counts keyed by kind, with controlled-X bucketed by control arity
    (1 cnot, 2 ccx, 3-4 mcx, 5+ mcx_gray). Pattern loads and register-reuse
    bridges count under "load" and the nu phase correction under "nu_adjust",
    keeping the algorithmic buckets aligned with the closed-form inventories.
    """
    counts: dict[str, int] = {}
    for op in circuit.ops:
        key = _bucket(op)
        counts[key] = counts.get(key, 0) + 1
    return counts
