"""Pure-numpy gate kernels.

All kernels mutate a flat complex128 amplitude array of length 2**n in place.
Qubit 0 is the least significant bit of the basis index, so qubit q maps to
axis n - 1 - q of the array reshaped to n binary axes.
"""

from __future__ import annotations

import math

import numpy as np

NAME = "numpy"


def _indexer(n: int, fixed: dict[int, int]) -> tuple:
    idx: list = [slice(None)] * n
    for qubit, bit in fixed.items():
        idx[n - 1 - qubit] = bit
    return tuple(idx)


def apply_x(amps: np.ndarray, n: int, target: int) -> None:
    v = amps.reshape((2,) * n)
    lo = _indexer(n, {target: 0})
    hi = _indexer(n, {target: 1})
    tmp = v[lo].copy()
    v[lo] = v[hi]
    v[hi] = tmp


def apply_h(amps: np.ndarray, n: int, target: int) -> None:
    v = amps.reshape((2,) * n)
    lo = _indexer(n, {target: 0})
    hi = _indexer(n, {target: 1})
    s = 1.0 / math.sqrt(2.0)
    a0 = v[lo].copy()
    a1 = v[hi]
    v[lo] = (a0 + a1) * s
    v[hi] = (a0 - a1) * s


def apply_mcx(amps: np.ndarray, n: int, ctrl_mask: int, target: int) -> None:
    fixed = {q: 1 for q in range(n) if (ctrl_mask >> q) & 1}
    v = amps.reshape((2,) * n)
    lo = _indexer(n, {**fixed, target: 0})
    hi = _indexer(n, {**fixed, target: 1})
    tmp = np.array(v[lo], copy=True)
    v[lo] = v[hi]
    v[hi] = tmp


def apply_phase0(amps: np.ndarray, n: int, target: int, phase: complex) -> None:
    v = amps.reshape((2,) * n)
    v[_indexer(n, {target: 0})] *= phase


def apply_cphase0(amps: np.ndarray, n: int, control: int, target: int, phase: complex) -> None:
    v = amps.reshape((2,) * n)
    v[_indexer(n, {control: 1, target: 0})] *= phase


def apply_cs(amps: np.ndarray, n: int, control: int, target: int, a: float, b: float) -> None:
    v = amps.reshape((2,) * n)
    lo = _indexer(n, {control: 1, target: 0})
    hi = _indexer(n, {control: 1, target: 1})
    x0 = np.array(v[lo], copy=True)
    x1 = v[hi]
    v[lo] = a * x0 + b * x1
    v[hi] = a * x1 - b * x0


def prob_one(amps: np.ndarray, n: int, target: int) -> float:
    v = amps.reshape((2,) * n)
    block = v[_indexer(n, {target: 1})]
    return float(np.sum(block.real**2 + block.imag**2))


def collapse(amps: np.ndarray, n: int, target: int, outcome: int, prob: float) -> None:
    v = amps.reshape((2,) * n)
    v[_indexer(n, {target: 1 - outcome})] = 0.0
    amps *= 1.0 / math.sqrt(prob)
