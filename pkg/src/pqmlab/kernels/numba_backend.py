"""Numba-jitted gate kernels; same contract as numpy_backend.

Flat loops over basis indices with bit tests. Serial on purpose: results must
be bitwise deterministic and typical states are small enough that thread
startup would dominate.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

NAME = "numba"


@njit(cache=True)
def _x_kernel(amps, tbit):
    for i in range(amps.shape[0]):
        if not i & tbit:
            j = i | tbit
            tmp = amps[i]
            amps[i] = amps[j]
            amps[j] = tmp


@njit(cache=True)
def _h_kernel(amps, tbit):
    s = 1.0 / math.sqrt(2.0)
    for i in range(amps.shape[0]):
        if not i & tbit:
            j = i | tbit
            a0 = amps[i]
            a1 = amps[j]
            amps[i] = (a0 + a1) * s
            amps[j] = (a0 - a1) * s


@njit(cache=True)
def _mcx_kernel(amps, ctrl_mask, tbit):
    sel = ctrl_mask | tbit
    for i in range(amps.shape[0]):
        if i & sel == ctrl_mask:
            j = i | tbit
            tmp = amps[i]
            amps[i] = amps[j]
            amps[j] = tmp


@njit(cache=True)
def _phase0_kernel(amps, tbit, phase):
    for i in range(amps.shape[0]):
        if not i & tbit:
            amps[i] *= phase


@njit(cache=True)
def _cphase0_kernel(amps, cbit, tbit, phase):
    for i in range(amps.shape[0]):
        if i & cbit and not i & tbit:
            amps[i] *= phase


@njit(cache=True)
def _cs_kernel(amps, cbit, tbit, a, b):
    for i in range(amps.shape[0]):
        if i & cbit and not i & tbit:
            j = i | tbit
            x0 = amps[i]
            x1 = amps[j]
            amps[i] = a * x0 + b * x1
            amps[j] = a * x1 - b * x0


@njit(cache=True)
def _prob_one_kernel(amps, tbit):
    total = 0.0
    for i in range(amps.shape[0]):
        if i & tbit:
            c = amps[i]
            total += c.real * c.real + c.imag * c.imag
    return total


@njit(cache=True)
def _collapse_kernel(amps, tbit, outcome, scale):
    keep_one = outcome == 1
    for i in range(amps.shape[0]):
        if bool(i & tbit) == keep_one:
            amps[i] *= scale
        else:
            amps[i] = 0.0


def apply_x(amps: np.ndarray, n: int, target: int) -> None:
    _x_kernel(amps, 1 << target)


def apply_h(amps: np.ndarray, n: int, target: int) -> None:
    _h_kernel(amps, 1 << target)


def apply_mcx(amps: np.ndarray, n: int, ctrl_mask: int, target: int) -> None:
    _mcx_kernel(amps, ctrl_mask, 1 << target)


def apply_phase0(amps: np.ndarray, n: int, target: int, phase: complex) -> None:
    _phase0_kernel(amps, 1 << target, phase)


def apply_cphase0(amps: np.ndarray, n: int, control: int, target: int, phase: complex) -> None:
    _cphase0_kernel(amps, 1 << control, 1 << target, phase)


def apply_cs(amps: np.ndarray, n: int, control: int, target: int, a: float, b: float) -> None:
    _cs_kernel(amps, 1 << control, 1 << target, a, b)


def prob_one(amps: np.ndarray, n: int, target: int) -> float:
    return float(_prob_one_kernel(amps, 1 << target))


def collapse(amps: np.ndarray, n: int, target: int, outcome: int, prob: float) -> None:
    _collapse_kernel(amps, 1 << target, outcome, 1.0 / math.sqrt(prob))
