"""OpenQASM 3 export.

Every gate the engine uses maps onto stdgates plus modifiers:

- diag(e^{i t}, 1) on one qubit == global phase t followed by p(-t).
- The controlled version == p(t) on the control plus cp(-t) on the pair
  (the cp cancels the extra phase the bare p puts on |11>).
- The r-th storage rotation is a controlled ry: the real 2x2 block
  [[sqrt((j-1)/j), 1/sqrt(j)], [-1/sqrt(j), sqrt((j-1)/j)]] is
  ry(-2*asin(1/sqrt(j))), emitted as a named gate per distinct j.
- Multi-controlled X uses the ctrl(k) modifier.

Output is a pure function of the circuit: floats are emitted with repr, so
identical circuits export byte-identical text.
"""

from __future__ import annotations

import math

from .circuits import Circuit
from .errors import DomainError
from .statevector import cs_entries

__all__ = ["export_qasm"]


def _q(i: int) -> str:
    return f"q[{i}]"


def _qlist(qubits) -> str:
    return ", ".join(_q(i) for i in qubits)


def _cs_definition(j: int) -> list[str]:
    a, b = cs_entries(j)
    beta = -2.0 * math.asin(b)
    return [
        f"// cs_{j}: controlled [[{a!r}, {b!r}], [{-b!r}, {a!r}]]",
        f"gate cs_{j} _c, _t {{ ctrl @ ry({beta!r}) _c, _t; }}",
    ]


def _register_comment(circuit: Circuit) -> list[str]:
    lay = circuit.layout
    lines = []
    for name, qubits in (("p", lay.p), ("u", lay.u), ("m", lay.m), ("h", lay.h_extra)):
        if qubits:
            lines.append(f"// register {name}: {_qlist(qubits)}")
    lines.append(f"// control qubit c: {_q(lay.c)}")
    return lines


def export_qasm(circuit: Circuit) -> str:
    """Serialize a circuit to OpenQASM 3 text."""
    ops = circuit.ops
    n_meas = sum(1 for op in ops if op.kind == "measure")
    cs_orders = sorted({int(op.param) for op in ops if op.kind == "cs"})

    lines = [
        "OPENQASM 3.0;",
        'include "stdgates.inc";',
        f"// {circuit.phase} circuit: algorithm={circuit.algorithm.value}, "
        f"mode={circuit.mode.value}, nu={circuit.nu!r}, "
        f"patterns={circuit.num_patterns}, qubits={circuit.layout.total_qubits}",
    ]
    lines += _register_comment(circuit)
    for j in cs_orders:
        lines += _cs_definition(j)
    lines.append(f"qubit[{circuit.layout.total_qubits}] q;")
    if n_meas:
        lines.append(f"bit[{n_meas}] meas;")

    if circuit.initial_basis is None:
        lines.append("// NOTE: expects an externally prepared memory state;")
        lines.append("// run only after the matching storage circuit.")
    elif circuit.initial_basis:
        lines.append("// initial state preparation")
        for i in range(circuit.layout.total_qubits):
            if (circuit.initial_basis >> i) & 1:
                lines.append(f"x {_q(i)};")

    meas_k = 0
    for op in ops:
        if op.kind == "x":
            k = len(op.controls)
            if k == 0:
                lines.append(f"x {_q(op.target)};")
            elif k == 1:
                lines.append(f"cx {_q(op.controls[0])}, {_q(op.target)};")
            else:
                lines.append(
                    f"ctrl({k}) @ x {_qlist(op.controls)}, {_q(op.target)};"
                )
        elif op.kind == "h":
            lines.append(f"h {_q(op.target)};")
        elif op.kind == "phase":
            t = float(op.param)
            lines.append(f"gphase({t!r});")
            lines.append(f"p({-t!r}) {_q(op.target)};")
        elif op.kind == "cphase":
            t = float(op.param)
            c = op.controls[0]
            lines.append(f"p({t!r}) {_q(c)};")
            lines.append(f"cp({-t!r}) {_q(c)}, {_q(op.target)};")
        elif op.kind == "cs":
            lines.append(f"cs_{int(op.param)} {_q(op.controls[0])}, {_q(op.target)};")
        elif op.kind == "measure":
            lines.append(f"meas[{meas_k}] = measure {_q(op.target)};")
            meas_k += 1
        else:
            raise DomainError(f"cannot export gate kind {op.kind!r}")
    return "\n".join(lines) + "\n"
