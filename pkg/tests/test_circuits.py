import math

import numpy as np
import pytest

from helpers import ALL_PAIRINGS, bit_distances, feature_distances, random_instance
from pqmlab import (
    Algorithm,
    DomainError,
    Mode,
    accept_bit,
    depth,
    execute,
    histogram,
    make_layout,
    pipeline_circuit,
    probability,
    retrieval_circuit,
    retrieval_distribution,
    storage_circuit,
)
from pqmlab.circuits import default_initial
from pqmlab.classifier import _joint_accept_memory


def memory_index(layout, bits: str) -> int:
    idx = 0
    for j, b in enumerate(bits):
        if b == "1":
            idx |= 1 << layout.m[j]
    return idx


@pytest.mark.parametrize("algo,mode", ALL_PAIRINGS)
@pytest.mark.parametrize("seed", range(4))
def test_storage_builds_uniform_superposition(algo, mode, seed):
    rng = np.random.default_rng(seed)
    database, _, _, _ = random_instance(rng, algo)
    circ = storage_circuit(database, algo, mode)
    state = execute(circ, default_initial(circ))
    r = len(database)
    expected = {memory_index(circ.layout, bits) for bits in database}
    for idx, amp in enumerate(state.amplitudes):
        if idx in expected:
            assert abs(amp - 1 / math.sqrt(r)) < 1e-10
        else:
            assert abs(amp) < 1e-10


@pytest.mark.parametrize("algo,mode", ALL_PAIRINGS)
@pytest.mark.parametrize("seed", range(6))
def test_pipeline_accept_probability_matches_closed_form(algo, mode, seed):
    rng = np.random.default_rng(1000 + seed)
    database, target, nu, widths = random_instance(rng, algo)
    pipe = pipeline_circuit(database, target, algo, mode, nu=nu, widths=widths,
                            measurements=False)
    state = execute(pipe)
    p_sim = probability(state, pipe.layout.c, accept_bit(mode))
    if algo is Algorithm.EPPQM:
        dists = feature_distances(target, database, widths)
        denom = len(widths)
    else:
        dists = bit_distances(target, database)
        denom = len(target)
    p_ref, _ = retrieval_distribution(dists, denom, nu)
    assert p_sim == pytest.approx(p_ref, abs=1e-11)


@pytest.mark.parametrize("algo", list(Algorithm))
@pytest.mark.parametrize("seed", range(5))
def test_ft_and_nisq_accept_probabilities_coincide(algo, seed):
    rng = np.random.default_rng(2000 + seed)
    database, target, nu, widths = random_instance(rng, algo)
    probs = []
    for mode in Mode:
        pipe = pipeline_circuit(database, target, algo, mode, nu=nu, widths=widths,
                                measurements=False)
        state = execute(pipe)
        probs.append(probability(state, pipe.layout.c, accept_bit(mode)))
    assert probs[0] == pytest.approx(probs[1], abs=1e-12)


@pytest.mark.parametrize("algo,mode", ALL_PAIRINGS)
def test_per_pattern_conditionals_match_closed_form(algo, mode):
    rng = np.random.default_rng(17)
    for _ in range(4):
        database, target, nu, widths = random_instance(rng, algo)
        pipe = pipeline_circuit(database, target, algo, mode, nu=nu, widths=widths,
                                measurements=False)
        state = execute(pipe)
        accept = accept_bit(mode)
        p_sim = probability(state, pipe.layout.c, accept)
        if algo is Algorithm.EPPQM:
            dists, denom = feature_distances(target, database, widths), len(widths)
        else:
            dists, denom = bit_distances(target, database), len(target)
        p_ref, per = retrieval_distribution(dists, denom, nu)
        if per is None:
            assert p_sim < 1e-11
            continue
        marg = _joint_accept_memory(state, pipe.layout)
        for bits, q_ref in zip(database, per):
            code = int(bits[::-1], 2)
            joint = float(marg[(code << 1) | accept])
            assert joint / p_sim == pytest.approx(q_ref, abs=1e-10)


def test_storage_cannot_run_twice_without_reset():
    circ = storage_circuit(["01", "10"], Algorithm.PQM, Mode.FT)
    state = execute(circ, default_initial(circ))
    with pytest.raises(DomainError, match="storage run twice"):
        execute(circ, state)


def test_nu_adjust_gate_appears_only_when_needed():
    pipe_flat = pipeline_circuit(["01", "10"], "00", Algorithm.PPQM, Mode.NISQ, nu=1.0)
    assert "nu_adjust" not in histogram(pipe_flat)
    pipe_tilt = pipeline_circuit(["01", "10"], "00", Algorithm.PPQM, Mode.NISQ, nu=0.7)
    assert histogram(pipe_tilt)["nu_adjust"] == 1
    ft = pipeline_circuit(["01", "10"], "00", Algorithm.PPQM, Mode.FT, nu=0.7)
    assert "nu_adjust" not in histogram(ft)


def test_layout_register_totals():
    assert make_layout(Algorithm.PQM, Mode.FT, 5).total_qubits == 12
    assert make_layout(Algorithm.PPQM, Mode.NISQ, 5).total_qubits == 12
    assert make_layout(Algorithm.EPPQM, Mode.FT, 6, z=3).total_qubits == 16
    assert make_layout(Algorithm.EPPQM, Mode.NISQ, 6, z=3).total_qubits == 10


def test_input_validation():
    with pytest.raises(DomainError):
        pipeline_circuit(["01", "01"], "00", Algorithm.PQM, Mode.FT)  # duplicate
    with pytest.raises(DomainError):
        pipeline_circuit(["01", "1"], "00", Algorithm.PQM, Mode.FT)  # ragged
    with pytest.raises(DomainError):
        pipeline_circuit([], "00", Algorithm.PQM, Mode.FT)
    with pytest.raises(DomainError):
        pipeline_circuit(["01"], "0", Algorithm.PQM, Mode.FT)  # target length
    with pytest.raises(DomainError):
        pipeline_circuit(["01"], "00", Algorithm.PQM, Mode.FT, nu=0.5)  # fixed nu
    with pytest.raises(DomainError):
        pipeline_circuit(["0101"], "0101", Algorithm.EPPQM, Mode.NISQ, widths=(2, 3))
    with pytest.raises(DomainError):
        pipeline_circuit(["01"], "0a", Algorithm.PQM, Mode.FT)


def test_retrieval_circuit_has_no_default_initial_state():
    circ = retrieval_circuit("010", Algorithm.PPQM, Mode.NISQ, nu=0.5)
    with pytest.raises(DomainError, match="pipeline"):
        default_initial(circ)


def test_execute_leaves_the_input_state_untouched():
    circ = storage_circuit(["01", "10"], Algorithm.PQM, Mode.FT)
    start = default_initial(circ)
    snapshot = start.amplitudes.copy()
    execute(circ, start)
    assert np.array_equal(start.amplitudes, snapshot)


def test_depth_bounds():
    pipe = pipeline_circuit(["010", "101"], "011", Algorithm.PPQM, Mode.NISQ, nu=0.9)
    d = depth(pipe)
    per_qubit = [0] * pipe.layout.total_qubits
    for op in pipe.ops:
        for q in op.qubits():
            per_qubit[q] += 1
    assert max(per_qubit) <= d <= len(pipe.ops)


def test_pipeline_measures_memory_and_control():
    pipe = pipeline_circuit(["010", "101"], "011", Algorithm.PPQM, Mode.NISQ)
    assert histogram(pipe)["measure"] == len(pipe.layout.m) + 1
    bare = pipeline_circuit(["010", "101"], "011", Algorithm.PPQM, Mode.NISQ,
                            measurements=False)
    assert "measure" not in histogram(bare)


def test_accept_bit_convention():
    assert accept_bit(Mode.FT) == 0
    assert accept_bit(Mode.NISQ) == 1


@pytest.mark.parametrize("algo,mode", ALL_PAIRINGS)
def test_storage_is_its_own_partial_inverse_on_work_registers(algo, mode):
    # after storage, every non-memory register must be back at zero
    rng = np.random.default_rng(9)
    database, _, _, _ = random_instance(rng, algo)
    circ = storage_circuit(database, algo, mode)
    state = execute(circ, default_initial(circ))
    work = [q for q in range(circ.layout.total_qubits) if q not in circ.layout.m]
    for q in work:
        assert probability(state, q, 1) < 1e-12
