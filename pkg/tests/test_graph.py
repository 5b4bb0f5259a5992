import math

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from qcldpc.construction import QcParityCheckMatrix, construct
from qcldpc.errors import ParameterError
from qcldpc.graph import (
    backward_differences,
    count_cycle_free_pairs,
    exhaust_z_eq_6L_plus_2,
    four_cycle_check_by_differences,
    girth_bfs,
    parity_argument,
    shift_differences,
)
from tests.oracles import has_four_cycle, nx_girth


@st.composite
def qc_matrices(draw):
    z = draw(st.integers(3, 50))
    dv = draw(st.integers(1, min(4, z)))
    L = draw(st.integers(1, 4))
    circ = []
    for _ in range(L):
        shifts = draw(st.lists(st.integers(0, z - 1), min_size=dv, max_size=dv, unique=True))
        circ.append(tuple(sorted(shifts)))
    return QcParityCheckMatrix(z=z, circulants=tuple(circ))


def _check_witness(h, report):
    dense = h.dense() if hasattr(h, "dense") else h
    w = report.witness
    assert len(w) == report.girth and len(set(w)) == len(w)
    for a, b in zip(w, w[1:] + w[:1]):
        assert a[0] != b[0]
        v, c = (a[1], b[1]) if a[0] == "v" else (b[1], a[1])
        assert dense[c, v] == 1


@settings(max_examples=120, deadline=None)
@given(qc_matrices())
def test_girth_matches_networkx(h):
    report = girth_bfs(h)
    assert report.girth == nx_girth(h.dense())
    assert girth_bfs(h, symmetric=True).girth == report.girth
    if not math.isinf(report.girth):
        _check_witness(h, report)


@settings(max_examples=150, deadline=None)
@given(qc_matrices())
def test_difference_test_agrees_with_bfs(h):
    free = four_cycle_check_by_differences(h)
    assert free == (not has_four_cycle(h.dense()))
    if h.dv >= 2:
        assert free == (girth_bfs(h).girth >= 6)


def test_girth_four_and_forest():
    assert girth_bfs(np.ones((2, 2), dtype=np.uint8)).girth == 4
    identity = QcParityCheckMatrix(z=7, circulants=((0,),))
    report = girth_bfs(identity)
    assert math.isinf(report.girth) and report.witness is None and report.four_cycle_free


def test_girth_of_a_long_cycle():
    # a single 2-regular bipartite cycle of length 2*z
    h = QcParityCheckMatrix(z=9, circulants=((0, 1),))
    assert girth_bfs(h).girth == 18


@pytest.mark.parametrize("dv,L,z", [(3, 2, 13), (3, 12, 85), (4, 10, 164), (4, 4, 49)])
def test_constructed_codes_have_girth_six(dv, L, z):
    h = construct(dv=dv, L=L, z=z)
    report = girth_bfs(h, symmetric=True)
    assert report.girth == 6 and report.four_cycle_free
    _check_witness(h, report)
    assert four_cycle_check_by_differences(h)


def test_girth_dense_input_matches_qc(code_26):
    assert girth_bfs(code_26.dense()).girth == girth_bfs(code_26).girth == 6


def test_girth_backends_agree(backend, code_1640):
    assert girth_bfs(code_1640, backend=backend).girth == 6


def test_differences_of_small_code(code_26):
    assert sorted(backward_differences(code_26)) == [1, 2, 3, 4, 5, 7]
    assert sorted(shift_differences(code_26)) == list(range(1, 13))


def test_exhaust_l2_all_assignments_have_four_cycles():
    assert exhaust_z_eq_6L_plus_2(2)
    free, total = count_cycle_free_pairs(14)
    assert (free, total) == (0, math.comb(14, 3) ** 2)


def test_exhaust_l3():
    assert exhaust_z_eq_6L_plus_2(3)


def test_exhaust_counter_is_not_vacuous():
    # at z = 13 plenty of pairs avoid 4-cycles
    free, total = count_cycle_free_pairs(13)
    assert 0 < free < total


def test_exhaust_guards():
    with pytest.raises(ParameterError):
        exhaust_z_eq_6L_plus_2(4)
    with pytest.raises(ParameterError):
        exhaust_z_eq_6L_plus_2(10)


@pytest.mark.parametrize("L", [2, 3])
def test_parity_contradiction(L):
    report = parity_argument(L)
    assert report.required_parity == 1 and report.forced_parity == 0
    assert report.contradiction
    assert report.subsets_checked == math.comb(6 * L + 2, 3)


@pytest.mark.parametrize("L", [2, 3])
def test_parity_symbolic(L):
    s1, s2, s3 = sympy.symbols("s1 s2 s3", integer=True)
    per_circulant = sympy.expand((s2 - s1) + (s3 - s1) + (s3 - s2))
    assert per_circulant == 2 * (s3 - s1)
    required = sympy.Rational(3 * L * (3 * L + 1), 2)
    assert required % 2 == 1
