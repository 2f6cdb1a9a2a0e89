from fractions import Fraction

import pytest

from cartan_eds.cartan import ORDINARY, cartan_verdict, tableau
from cartan_eds.curvature import (RiemannTensor, SecondFundamentalForm, gauss_map,
                                  preimage_newton, random_curvature, random_h_in_H)
from cartan_eds.embedding import (CertificationError, ambient_dim, build, certify,
                                  characters_closed_form, conformal_threshold, dims_report,
                                  gauge_invariance_check, gauss_residual, random_gauge,
                                  recover_h, step6_formulas, step6_table, sum_c_closed_form,
                                  top_is_integral)
from cartan_eds.exterior import is_integrable


def system(m, N, seed=0):
    h = random_h_in_H(m, N, seed)
    return build(m, N, gauss_map(h), h)


@pytest.fixture(scope="module")
def sys23():
    h = SecondFundamentalForm.from_upper(2, 3, [1, 0, 1])
    return build(2, 3, RiemannTensor.from_entries(2, [(1, 2, 1, 2, 1)]), h)


@pytest.fixture(scope="module")
def sys36():
    return system(3, 6, 2)


def test_build_counts(sys23, sys36):
    assert sys23.ambient_dim == 8 == ambient_dim(2, 3)
    assert len(sys23.step6_forms) == 6
    assert sys36.ambient_dim == 21
    assert len(sys36.step6_forms) == 18


def test_build_thresholds():
    h = SecondFundamentalForm.from_upper(2, 3, [1, 0, 1])
    with pytest.raises(ValueError, match="N >= "):
        build(2, 2, RiemannTensor.zeros(2), SecondFundamentalForm.zeros(2, 3))
    with pytest.raises(ValueError):
        build(1, 3, RiemannTensor.zeros(1), h)
    bad = RiemannTensor.from_entries(2, [(1, 2, 1, 2, 1)]).array.copy()
    bad[1, 0, 0, 1] = Fraction(1)
    with pytest.raises(ValueError):
        build(2, 3, RiemannTensor(bad), h)


def test_structure_data_is_integrable(sys23, sys36):
    assert is_integrable(sys23.sd)
    assert is_integrable(sys36.sd)


def test_gauss_residual_examples(sys23):
    assert gauss_residual(sys23).is_zero()
    assert top_is_integral(sys23)
    R = RiemannTensor.from_entries(2, [(1, 2, 1, 2, 3)])
    flat = build(2, 3, R, SecondFundamentalForm.zeros(2, 3))
    assert gauss_residual(flat) == -R
    assert not top_is_integral(flat)
    h = preimage_newton(R, random_h_in_H(2, 3, 0))
    assert gauss_residual(build(2, 3, R, h)).is_zero()


@pytest.mark.parametrize("mN,want", [((2, 3), [4, 6]), ((3, 6), [9, 15, 18]),
                                     ((4, 10), [16, 28, 36, 40])])
def test_characters_closed_form(mN, want):
    assert characters_closed_form(*mN) == want


def test_certify_2_3(sys23):
    rep, dims = certify(sys23)
    assert rep.c == [4, 6] and rep.sum_c == 10 and rep.verdict == ORDINARY
    assert (dims.dim_Fm, dims.dim_H, dims.dim_Km, dims.dim_Z) == (6, 3, 1, 10)
    assert dims.grassmannian_codim == 10


def test_certify_3_6(sys36):
    rep, dims = certify(sys36)
    assert rep.c == [9, 15, 18] and rep.sum_c == 42 == 6 * 3 * 4 // 2 + 9 * 8 // 12
    assert (dims.dim_Fm, dims.dim_H, dims.dim_Km, dims.dim_Z) == (18, 18, 6, 33)


def test_certify_requires_gauss_equation():
    R = RiemannTensor.from_entries(2, [(1, 2, 1, 2, 3)])
    with pytest.raises(CertificationError, match="Gauss"):
        certify(build(2, 3, R, SecondFundamentalForm.from_upper(2, 3, [1, 0, 1])))


def test_sum_closed_form_4_10():
    assert sum_c_closed_form(4, 10) == 120 == 10 * 4 * 5 // 2 + 16 * 15 // 12


def test_step6_table(sys23, sys36):
    t = step6_table(sys23)
    assert t[1].counts == [2, 1, 1, 1, 1] and t[1].total == 6
    assert t[0].counts[3:] == [0, 0]
    assert step6_table(sys36)[2].counts[4] == 3 == step6_formulas(3, 6, 2)[4]


def test_step6_shortfall_is_reported():
    # h_{3,11} = 0 breaks genericity for the p = 1 row of the tableau
    h = SecondFundamentalForm.from_upper(2, 3, [0, 1, 0])
    s = build(2, 3, gauss_map(h), h)
    with pytest.raises(CertificationError, match="row"):
        step6_table(s)


def test_gauge_invariance(sys23, sys36):
    assert gauge_invariance_check(sys23, 123)
    for seed in range(1, 4):
        assert gauge_invariance_check(sys36, seed)
    zero = build(3, 6, RiemannTensor.zeros(3), SecondFundamentalForm.zeros(3, 6))
    check = gauge_invariance_check(zero, 5)
    assert check.ok and check.diff == {}


def test_gauge_is_nontrivial(sys36):
    g = random_gauge(sys36, 1)
    assert len(g) == 3 and all(g.values())
    other = build(3, 6, sys36.R, sys36.h, gauge=g)
    assert other.ideal.resolved != sys36.ideal.resolved


@pytest.mark.parametrize("mN", [(2, 3), (3, 6)])
@pytest.mark.parametrize("seed", range(3))
def test_integrality_iff_gauss(mN, seed):
    m, N = mN
    h = random_h_in_H(m, N, seed)
    good = build(m, N, gauss_map(h), h)
    assert top_is_integral(good)
    bad_R = gauss_map(h) + random_curvature(m, seed + 50)
    bad = build(m, N, bad_R, h)
    assert top_is_integral(bad) == gauss_residual(bad).is_zero()


@pytest.mark.parametrize("mN", [(2, 3), (3, 6)])
def test_cartan_lemma_recovers_h(mN):
    s = system(*mN, seed=4)
    for k, block in enumerate(recover_h(s)):
        a = mN[0] + 1 + k
        assert block == [[s.h.component(a, i, j) for j in range(1, mN[0] + 1)]
                         for i in range(1, mN[0] + 1)]


def test_d_omega_a_tableau_is_pi(sys23):
    # d(w_3) = -sum_i w_3i ^ w_i; its tableau rows are the pi_3i directions
    gens = sys23.ideal.resolved
    g = gens[sys23.families["d_omega_a"][0]]
    rows = tableau(g, sys23.split)
    assert set(rows) == {(1,), (2,)}


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_closed_form_sum_identity(m):
    N = m * (m + 1) // 2
    assert sum(characters_closed_form(m, N)) == sum_c_closed_form(m, N)
    assert dims_report(m, N).grassmannian_codim == sum_c_closed_form(m, N)


@pytest.mark.parametrize("m,N", [(2, 3), (2, 5), (3, 6), (3, 8), (4, 10), (5, 15)])
def test_step6_rows_sum_to_characters(m, N):
    for p in range(m):
        assert sum(step6_formulas(m, N, p)) == characters_closed_form(m, N)[p]


def test_dims_values():
    d = [dims_report(*mN) for mN in [(2, 3), (3, 6), (4, 10)]]
    assert [x.dim_Km for x in d] == [1, 6, 20]
    assert [x.dim_Z for x in d] == [10, 33, 84]
    assert [x.grassmannian_codim for x in d] == [10, 42, 120]


@pytest.mark.parametrize("mn,sat,deficit", [((2, 2), True, 0), ((3, 4), False, 1),
                                            ((2, 1), False, 1)])
def test_conformal(mn, sat, deficit):
    r = conformal_threshold(*mn)
    assert r.satisfied == sat and r.deficit == deficit
    assert r.pfaffian_count == mn[0] + max(0, mn[1] - mn[0])


def test_verdict_with_random_gauge_matches(sys36):
    other = build(3, 6, sys36.R, sys36.h, gauge=random_gauge(sys36, 9))
    assert cartan_verdict(other.flag, other.ideal, other.split).c == [9, 15, 18]
