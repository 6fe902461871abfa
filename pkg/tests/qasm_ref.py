"""Reference interpreter for the OpenQASM 3 subset the exporter emits.

Deliberately shares no code with the package: its own parser, its own
dense simulator driven by plain python loops over basis indices. Used to
check that exported text reproduces the engine's accept probability.
"""

from __future__ import annotations

import math
import re

import numpy as np

X = np.array([[0, 1], [1, 0]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)


def _p(lam: float) -> np.ndarray:
    return np.array([[1, 0], [0, np.exp(1j * lam)]], dtype=complex)


def _ry(beta: float) -> np.ndarray:
    c, s = math.cos(beta / 2), math.sin(beta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _apply(state: np.ndarray, controls, target: int, u: np.ndarray) -> np.ndarray:
    out = state.copy()
    for i in range(state.size):
        if ((i >> target) & 1) == 0 and all((i >> c) & 1 for c in controls):
            j = i | (1 << target)
            a0, a1 = state[i], state[j]
            out[i] = u[0, 0] * a0 + u[0, 1] * a1
            out[j] = u[1, 0] * a0 + u[1, 1] * a1
    return out


def marginal(state: np.ndarray, qubit: int, outcome: int = 1) -> float:
    total = 0.0
    for i in range(state.size):
        if ((i >> qubit) & 1) == outcome:
            total += abs(state[i]) ** 2
    return total


_GATE_DEF = re.compile(r"gate\s+(\w+)\s+([^{]*)\{([^}]*)\}")


def _strip_comments(text: str) -> str:
    return re.sub(r"//[^\n]*", "", text)


def _operands(spec: str):
    return [tok.strip() for tok in spec.split(",") if tok.strip()]


class Interp:
    def __init__(self) -> None:
        self.num_qubits = 0
        self.state: np.ndarray | None = None
        self.macros: dict[str, tuple[list[str], list[str]]] = {}
        self.meas_targets: list[int] = []

    def run(self, text: str) -> None:
        text = _strip_comments(text)

        def grab(match: re.Match) -> str:
            name, formals, body = match.groups()
            stmts = [s.strip() for s in body.split(";") if s.strip()]
            self.macros[name] = (_operands(formals), stmts)
            return ""

        text = _GATE_DEF.sub(grab, text)
        for stmt in text.split(";"):
            stmt = " ".join(stmt.split())
            if stmt:
                self._statement(stmt)

    def _statement(self, stmt: str) -> None:
        if stmt.startswith("OPENQASM"):
            if stmt.split()[1] != "3.0":
                raise ValueError(f"unsupported version in {stmt!r}")
            return
        if stmt.startswith("include"):
            return
        m = re.fullmatch(r"qubit\[(\d+)\] q", stmt)
        if m:
            self.num_qubits = int(m.group(1))
            self.state = np.zeros(1 << self.num_qubits, dtype=complex)
            self.state[0] = 1.0
            return
        if re.fullmatch(r"bit\[\d+\] meas", stmt):
            return
        m = re.fullmatch(r"meas\[(\d+)\] = measure q\[(\d+)\]", stmt)
        if m:
            self.meas_targets.append(int(m.group(2)))
            return
        self._gate(stmt, {})

    def _gate(self, stmt: str, binding: dict[str, str]) -> None:
        n_ctrl = 0
        while True:
            m = re.match(r"ctrl(?:\((\d+)\))?\s*@\s*", stmt)
            if not m:
                break
            n_ctrl += int(m.group(1) or 1)
            stmt = stmt[m.end():]
        m = re.fullmatch(r"(\w+)\s*(?:\(([^)]*)\))?\s*(.*)", stmt)
        if not m:
            raise ValueError(f"cannot parse {stmt!r}")
        name, arg, spec = m.group(1), m.group(2), m.group(3)
        operands = [binding.get(tok, tok) for tok in _operands(spec)]

        if name in self.macros:
            if n_ctrl:
                raise ValueError("modifiers on custom gates unsupported")
            formals, body = self.macros[name]
            if len(formals) != len(operands):
                raise ValueError(f"{name}: arity mismatch")
            inner = dict(zip(formals, operands))
            for sub in body:
                self._gate(" ".join(sub.split()), inner)
            return

        qubits = []
        for tok in operands:
            q = re.fullmatch(r"q\[(\d+)\]", tok)
            if not q:
                raise ValueError(f"bad operand {tok!r} in {stmt!r}")
            qubits.append(int(q.group(1)))

        if name == "gphase":
            if qubits or n_ctrl:
                raise ValueError("gphase takes no operands")
            self.state *= np.exp(1j * float(arg))
            return
        if name == "cx":
            name, n_ctrl = "x", n_ctrl + 1
        if name == "cp":
            name, n_ctrl = "p", n_ctrl + 1
        matrices = {
            "x": lambda: X,
            "h": lambda: H,
            "p": lambda: _p(float(arg)),
            "ry": lambda: _ry(float(arg)),
        }
        if name not in matrices:
            raise ValueError(f"unsupported gate {name!r}")
        controls, target = qubits[:n_ctrl], qubits[-1]
        if len(qubits) != n_ctrl + 1:
            raise ValueError(f"{stmt!r}: expected {n_ctrl + 1} operands")
        self.state = _apply(self.state, controls, target, matrices[name]())


def simulate_qasm(text: str) -> Interp:
    interp = Interp()
    interp.run(text)
    if interp.state is None:
        raise ValueError("no qubit declaration found")
    return interp
