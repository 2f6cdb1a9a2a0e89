import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cartan_eds.exterior import Coframe, StructureDifferential, basis_vector, vector, wedge
from cartan_eds.ideal import (Flag, GeneratorSet, IntegralElement, NotInPolarSpaceError,
                              NotIntegralError, close, degree_slice, extend_element,
                              extension_rank, form_vector, is_closed, is_integral, polar_space,
                              restrict)
from cartan_eds.linalg import same_span
from helpers import brute_force_polar, random_adapted_system

cf3 = Coframe.standard(3)
cf4 = Coframe.standard(4)
w = {i: cf4.basis(i) for i in range(1, 5)}
e = {i: basis_vector(4, i) for i in range(1, 5)}
gs12 = GeneratorSet(cf4, [wedge(w[1], w[2])])


def span_equal(forms_a, forms_b, cf, p):
    from itertools import combinations
    index = {k: i for i, k in enumerate(combinations(range(1, cf.dim + 1), p))}
    to_rows = lambda fs: [[form_vector(f, index).get(i, 0) for i in range(len(index))] for f in fs]
    return same_span(to_rows(forms_a), to_rows(forms_b))


def test_degree_slice_examples():
    a1 = cf3.basis(1)
    s = degree_slice(GeneratorSet(cf3, [a1]), 2)
    assert span_equal(s, [wedge(a1, cf3.basis(2)), wedge(a1, cf3.basis(3))], cf3, 2)
    assert degree_slice(GeneratorSet(cf4, [wedge(w[1], w[2])]), 2) == [wedge(w[1], w[2])]
    assert degree_slice(GeneratorSet(cf3, [a1]), 1) == [a1]


def test_generator_set_rejects_zero_forms():
    with pytest.raises(ValueError):
        GeneratorSet(cf3, [cf3.one()])


def test_is_integral_examples():
    assert is_integral(IntegralElement([e[3], e[4]]), gs12)
    assert not is_integral(IntegralElement([e[1], e[2]]), gs12)
    assert is_integral(IntegralElement([vector(1, 0, 1, 0), e[4]]), gs12)


def test_polar_space_examples():
    H = polar_space(IntegralElement([e[1]]), gs12)
    assert len(H) == 3
    assert all(v[1] == 0 for v in H)
    assert len(polar_space(IntegralElement([e[3]]), gs12)) == 4
    assert len(polar_space(IntegralElement([e[3]]), GeneratorSet(cf4))) == 4
    with pytest.raises(NotIntegralError):
        polar_space(IntegralElement([e[1], e[2]]), gs12)


def test_extension_rank_examples():
    assert extension_rank(IntegralElement([e[1]]), gs12) == 1
    assert extension_rank(IntegralElement([e[3]]), gs12) == 2
    every = GeneratorSet(cf4, [w[i] for i in range(1, 5)])
    assert extension_rank(IntegralElement([], 4), every) == -1


def test_close_examples():
    a = cf3.basis
    sd = StructureDifferential(cf3, {3: wedge(a(1), a(2))})
    closed = close(GeneratorSet(cf3, [a(3)], sd))
    assert closed.generators == (a(3), wedge(a(1), a(2)))
    assert close(GeneratorSet(cf3, [a(1)])).generators == (a(1),)
    assert close(GeneratorSet(cf3, [wedge(a(1), a(2))])).generators == (wedge(a(1), a(2)),)
    assert is_closed(closed)
    assert not is_closed(GeneratorSet(cf3, [a(3)], sd))


def test_extend_element_examples():
    E3 = IntegralElement([e[3]])
    assert extend_element(E3, gs12, e[4]).dim == 2
    with pytest.raises(ValueError):
        extend_element(E3, gs12, e[3])
    with pytest.raises(NotInPolarSpaceError) as info:
        extend_element(IntegralElement([e[1]]), gs12, e[2])
    assert info.value.value != 0


def test_flag_elements():
    flag = Flag([e[3], e[4]])
    assert [E.dim for E in flag.elements()] == [0, 1, 2]
    with pytest.raises(ValueError):
        Flag([e[1], e[1]])


def test_restrict():
    E = IntegralElement([vector(1, 0, 1, 0), e[2]])
    phi = wedge(w[3], w[2])
    r = restrict(phi, E)
    assert r.terms == {(1, 2): 1}


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 5), st.integers(0, 10 ** 9))
def test_polar_space_matches_oracle(n, seed):
    cf, gens, basis, _ = random_adapted_system(n, seed)
    gs = GeneratorSet(cf, gens)
    E = IntegralElement(basis, n)
    assert is_integral(E, gs)
    H = polar_space(E, gs)
    assert same_span(H, brute_force_polar(E, gs))


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 5), st.integers(0, 10 ** 9), st.data())
def test_heredity_and_polar_contains_E(n, seed, data):
    cf, gens, basis, _ = random_adapted_system(n, seed)
    gs = GeneratorSet(cf, gens)
    E = IntegralElement(basis, n)
    H = IntegralElement(polar_space(E, gs), n)
    assert all(H.contains(v) for v in E.basis)
    if basis:
        sub = data.draw(st.lists(st.sampled_from(range(len(basis))), unique=True))
        assert is_integral(IntegralElement([basis[k] for k in sub], n), gs)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 5), st.integers(0, 10 ** 9), st.data())
def test_extension_integral_iff_in_polar(n, seed, data):
    cf, gens, basis, frame = random_adapted_system(n, seed)
    gs = GeneratorSet(cf, gens)
    E = IntegralElement(basis, n)
    coeffs = data.draw(st.lists(st.integers(-2, 2), min_size=n, max_size=n))
    v = tuple(sum(c * f[k] for c, f in zip(coeffs, frame)) for k in range(n))
    if E.contains(v):
        return
    H = IntegralElement(polar_space(E, gs), n)
    bigger = IntegralElement(list(basis) + [v], n)
    assert is_integral(bigger, gs) == H.contains(v)
    if H.contains(v):
        assert extend_element(E, gs, v).dim == E.dim + 1
    else:
        with pytest.raises(NotInPolarSpaceError):
            extend_element(E, gs, v)
