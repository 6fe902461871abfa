"""Dense statevector simulator for the memory-circuit gate set.

- states are flat complex128 arrays of 2**n amplitudes, qubit 0 = least
  significant bit of the basis index
- gate set: X, H, multi-controlled X, DIAG_PHASE (phases the |0> component),
  CTRL_DIAG_PHASE, and the two-level storage rotation CS(j)
- projective measurement with a seeded generator; identical seed, identical
  outcome
- state width is capped (default 26 qubits, PQMLAB_MAX_QUBITS overrides)

Hot loops live in pqmlab.kernels and run jitted or as pure numpy depending on
PQMLAB_KERNELS.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import DomainError, ResourceError

DEFAULT_MAX_QUBITS = 26

GATE_KINDS = ("x", "h", "phase", "cphase", "cs", "measure")


def resolve_max_qubits(override: int | None = None) -> int:
    """Qubit cap: explicit override, else PQMLAB_MAX_QUBITS, else the default."""
    if override is not None:
        return int(override)
    env = os.environ.get("PQMLAB_MAX_QUBITS")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise DomainError(f"PQMLAB_MAX_QUBITS must be an integer, got {env!r}") from None
    return DEFAULT_MAX_QUBITS


@dataclass(frozen=True)
class GateOp:
    """One circuit operation.

    kind is one of GATE_KINDS; controls are control qubits (all positive
    polarity), param carries the phase angle for phase/cphase, the index j for
    cs, and role tags bookkeeping gates (pattern loads, register reuse
    bridges, the nu phase correction) that sit outside the published gate
    inventories.
    """

    kind: str
    target: int
    controls: tuple[int, ...] = ()
    param: float | int | None = None
    role: str | None = None

    def qubits(self) -> tuple[int, ...]:
        return self.controls + (self.target,)


def x(target: int, role: str | None = None) -> GateOp:
    return GateOp("x", target, role=role)


def cnot(control: int, target: int) -> GateOp:
    return GateOp("x", target, (control,))


def mcx(controls, target: int) -> GateOp:
    return GateOp("x", target, tuple(controls))


def h(target: int) -> GateOp:
    return GateOp("h", target)


def diag_phase(target: int, theta: float, role: str | None = None) -> GateOp:
    """diag(e^{i theta}, 1): phases the |0> component of the target."""
    return GateOp("phase", target, param=float(theta), role=role)


def ctrl_diag_phase(control: int, target: int, theta: float) -> GateOp:
    """Apply diag(e^{i theta}, 1) to the target where the control is |1>."""
    return GateOp("cphase", target, (control,), param=float(theta))


def cs(control: int, target: int, j: int) -> GateOp:
    """Controlled storage rotation; see cs_entries for the 2x2 block."""
    if int(j) != j or j < 1:
        raise DomainError(f"cs index j must be a positive integer, got {j}")
    return GateOp("cs", target, (control,), param=int(j))


def measure_op(target: int) -> GateOp:
    return GateOp("measure", target)


def cs_entries(j: int) -> tuple[float, float]:
    """Entries (a, b) of S^j = [[a, b], [-b, a]], a = sqrt((j-1)/j), b = 1/sqrt(j).

    Unitary by construction: columns are orthonormal for every j >= 1. The
    off-diagonal magnitude 1/sqrt(j) is what makes r successive applications
    carve equal 1/sqrt(r) amplitude slices during storage.
    """
    if j < 1:
        raise DomainError(f"cs index j must be >= 1, got {j}")
    return math.sqrt((j - 1) / j), 1.0 / math.sqrt(j)


@dataclass
class QuantumState:
    num_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    def copy(self) -> "QuantumState":
        return QuantumState(self.num_qubits, self.amplitudes.copy())

    def norm(self) -> float:
        a = self.amplitudes
        return float(np.sqrt(np.sum(a.real**2 + a.imag**2)))


def new_state(num_qubits: int, basis_index: int = 0, max_qubits: int | None = None) -> QuantumState:
    """Fresh computational-basis state |basis_index> on num_qubits qubits."""
    if num_qubits < 1:
        raise DomainError(f"need at least one qubit, got {num_qubits}")
    cap = resolve_max_qubits(max_qubits)
    if num_qubits > cap:
        raise ResourceError(
            f"state needs {num_qubits} qubits but the cap is {cap} "
            f"(raise it via max_qubits or PQMLAB_MAX_QUBITS)"
        )
    dim = 1 << num_qubits
    if not 0 <= basis_index < dim:
        raise DomainError(f"basis index {basis_index} outside [0, {dim})")
    amps = np.zeros(dim, dtype=np.complex128)
    amps[basis_index] = 1.0
    return QuantumState(num_qubits, amps)


def _check_qubits(state: QuantumState, op: GateOp) -> None:
    qs = op.qubits()
    for q in qs:
        if not 0 <= q < state.num_qubits:
            raise DomainError(f"qubit {q} outside state of {state.num_qubits} qubits")
    if len(set(qs)) != len(qs):
        raise DomainError(f"gate touches a qubit twice: {qs}")


def apply(state: QuantumState, op: GateOp) -> QuantumState:
    """Apply one gate in place and return the same state."""
    _check_qubits(state, op)
    amps, n = state.amplitudes, state.num_qubits
    if op.kind == "x":
        mask = 0
        for q in op.controls:
            mask |= 1 << q
        if mask:
            kernels.apply_mcx(amps, n, mask, op.target)
        else:
            kernels.apply_x(amps, n, op.target)
    elif op.kind == "h":
        if op.controls:
            raise DomainError("h takes no controls")
        kernels.apply_h(amps, n, op.target)
    elif op.kind == "phase":
        if op.controls:
            raise DomainError("phase takes no controls; use ctrl_diag_phase")
        kernels.apply_phase0(amps, n, op.target, complex(math.cos(op.param), math.sin(op.param)))
    elif op.kind == "cphase":
        (control,) = op.controls
        kernels.apply_cphase0(
            amps, n, control, op.target, complex(math.cos(op.param), math.sin(op.param))
        )
    elif op.kind == "cs":
        (control,) = op.controls
        a, b = cs_entries(op.param)
        kernels.apply_cs(amps, n, control, op.target, a, b)
    elif op.kind == "measure":
        raise DomainError("measure ops are accounting markers; use measure() instead")
    else:
        raise DomainError(f"unknown gate kind {op.kind!r}")
    return state


def probability(state: QuantumState, qubit: int, outcome: int = 1) -> float:
    """Marginal probability of reading `outcome` on one qubit."""
    if not 0 <= qubit < state.num_qubits:
        raise DomainError(f"qubit {qubit} outside state of {state.num_qubits} qubits")
    if outcome not in (0, 1):
        raise DomainError(f"outcome must be 0 or 1, got {outcome}")
    p1 = kernels.prob_one(state.amplitudes, state.num_qubits, qubit)
    return p1 if outcome == 1 else 1.0 - p1


@dataclass(frozen=True)
class MeasurementRecord:
    qubits: tuple[int, ...]
    bits: tuple[int, ...]
    state: QuantumState


def _as_generator(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def measure(state: QuantumState, qubits, rng) -> MeasurementRecord:
    """Projective measurement of the listed qubits, collapsing in place.

    Args:
        state: state to measure; mutated.
        qubits: qubit indices, measured in the given order.
        rng: integer seed or numpy Generator. A fixed seed fixes the outcome.
    """
    gen = _as_generator(rng)
    qubits = tuple(qubits)
    bits = []
    for q in qubits:
        p1 = probability(state, q, 1)
        outcome = 1 if gen.random() < p1 else 0
        prob = p1 if outcome == 1 else 1.0 - p1
        kernels.collapse(state.amplitudes, state.num_qubits, q, outcome, prob)
        bits.append(outcome)
    return MeasurementRecord(qubits, tuple(bits), state)
