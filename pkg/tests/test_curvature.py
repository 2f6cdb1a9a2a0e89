from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cartan_eds.curvature import (ConvergenceError, RiemannTensor, SecondFundamentalForm,
                                  dim_Km, dim_Km_by_rank, gauss_jacobian_rank, gauss_map, in_H,
                                  preimage_newton, random_curvature, random_h_in_H, validate)


def test_validate_examples():
    assert validate(RiemannTensor.zeros(3))
    assert validate(RiemannTensor.from_entries(2, [(1, 2, 1, 2, 1)]))
    arr = RiemannTensor.from_entries(2, [(1, 2, 1, 2, 1)]).array.copy()
    arr[1, 0, 0, 1] = Fraction(1)
    assert not validate(RiemannTensor(arr))


def test_first_bianchi_is_checked():
    arr = np.full((4,) * 4, Fraction(0), dtype=object)
    # pair symmetric and antisymmetric, but cyclic sum nonzero
    for (a, b, c, d), s in (((0, 1, 2, 3), 1), ((1, 0, 2, 3), -1), ((0, 1, 3, 2), -1),
                            ((1, 0, 3, 2), 1), ((2, 3, 0, 1), 1), ((3, 2, 0, 1), -1),
                            ((2, 3, 1, 0), -1), ((3, 2, 1, 0), 1)):
        arr[a, b, c, d] = Fraction(s)
    assert not validate(RiemannTensor(arr))


@pytest.mark.parametrize("m,want", [(2, 1), (3, 6), (4, 20), (5, 50)])
def test_dim_Km(m, want):
    assert dim_Km(m) == want
    assert dim_Km_by_rank(m) == want


def test_gauss_map_examples():
    assert gauss_map(SecondFundamentalForm.zeros(2, 3)).is_zero()
    h = SecondFundamentalForm.from_upper(2, 3, [1, 0, 1])
    assert gauss_map(h).component(1, 2, 1, 2) == 1
    h = SecondFundamentalForm.from_upper(2, 3, [1, 0, -1])
    assert gauss_map(h).component(1, 2, 1, 2) == -1


def test_second_fundamental_form_symmetry():
    arr = np.zeros((1, 2, 2), dtype=object)
    arr[0, 0, 1] = Fraction(1)
    with pytest.raises(ValueError):
        SecondFundamentalForm(2, 3, arr)


def test_in_H_examples():
    assert in_H(SecondFundamentalForm.from_upper(2, 3, [1, 0, 0]))
    assert not in_H(SecondFundamentalForm.zeros(2, 3))
    # h_{a,ij}: (1,1) -> normal 4, (1,2) -> 5, (2,2) -> 6
    vals = []
    for a in range(3):
        for i, j in [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]:
            vals.append(int((i, j) == [(0, 0), (0, 1), (1, 1)][a]))
    assert in_H(SecondFundamentalForm.from_upper(3, 6, vals))
    assert not in_H(SecondFundamentalForm.from_upper(3, 4, [1] * 6))


def test_gauss_jacobian_rank_examples():
    assert gauss_jacobian_rank(SecondFundamentalForm.zeros(3, 6)) == 0
    assert gauss_jacobian_rank(SecondFundamentalForm.from_upper(2, 3, [1, 0, 1])) == 1
    assert gauss_jacobian_rank(random_h_in_H(3, 6, 5)) == 6


def test_random_h_in_H():
    h = random_h_in_H(2, 3, 11)
    assert h.component(3, 1, 1) != 0
    assert in_H(random_h_in_H(3, 6, 4))
    with pytest.raises(ValueError):
        random_h_in_H(3, 4, 0)
    assert random_h_in_H(3, 6, 9) == random_h_in_H(3, 6, 9)


def test_preimage_closed_form_branch():
    R = RiemannTensor.from_entries(2, [(1, 2, 1, 2, 5)])
    h = preimage_newton(R, random_h_in_H(2, 3, 0))
    assert h.upper() == [5, 0, 1]
    assert gauss_map(h) == R


def test_preimage_zero_curvature():
    h = preimage_newton(RiemannTensor.zeros(3), random_h_in_H(3, 6, 1))
    assert (gauss_map(h) - RiemannTensor.zeros(3)).max_abs() <= 1e-10


@pytest.mark.parametrize("seed", range(5))
def test_preimage_round_trip(seed):
    R = gauss_map(random_h_in_H(3, 6, 100 + seed))
    h = preimage_newton(R, random_h_in_H(3, 6, seed), tol=1e-11)
    assert float((gauss_map(h) - R).max_abs()) <= 1e-9


def test_preimage_reports_non_convergence():
    R = gauss_map(random_h_in_H(3, 6, 3))
    with pytest.raises(ConvergenceError):
        preimage_newton(R, random_h_in_H(3, 6, 8), max_iters=0)


def test_curvature_entries_round_trip():
    R = random_curvature(4, 2)
    assert RiemannTensor.from_entries(4, R.entries()) == R


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(2, 3), (3, 6), (3, 5), (4, 10)]), st.integers(0, 10 ** 9))
def test_gauss_map_lands_in_Km(mN, seed):
    m, N = mN
    rng = np.random.default_rng(seed)
    count = (N - m) * m * (m + 1) // 2
    h = SecondFundamentalForm.from_upper(m, N, [Fraction(int(x)) for x in rng.integers(-3, 4, count)])
    R = gauss_map(h)
    assert validate(R)
    assert np.all(R.array == -R.array.transpose(1, 0, 2, 3))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(2, 3), (3, 6)]), st.integers(0, 10 ** 9))
def test_submersion_on_H(mN, seed):
    m, N = mN
    assert gauss_jacobian_rank(random_h_in_H(m, N, seed)) == dim_Km(m)


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 5), st.integers(0, 10 ** 9))
def test_random_curvature_is_valid(m, seed):
    assert validate(random_curvature(m, seed))
