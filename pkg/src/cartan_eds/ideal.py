"""Exterior ideals at a point: integral elements and polar spaces.

An ideal is kept as a finite list of homogeneous generators together with
the structure differential used to close it.  Degree slices are produced on
demand.  The polar space of an integral element E = span(e_1..e_p) is the
common kernel of v -> g(v, e_S) over generators g of degree d <= p+1 and
(d-1)-subsets S of the basis.  This is equivalent to imposing every form of
the degree-(p+1) slice, because g vanishes on E.
"""

from fractions import Fraction
from itertools import combinations

from .exterior import (Coframe, Form, StructureDifferential, evaluate,
                       exterior_derivative, interior_product, resolve, wedge)
from .linalg import Echelon, as_fraction, independent_subset, nullspace, rank


class NotIntegralError(ValueError):
    pass


class NotInPolarSpaceError(ValueError):
    def __init__(self, message, constraint=None, value=None):
        super().__init__(message)
        self.constraint = constraint
        self.value = value


class GeneratorSet:
    """Homogeneous generators of positive degree plus structure data."""

    def __init__(self, coframe, generators=(), sd=None):
        if not isinstance(coframe, Coframe):
            raise TypeError("first argument must be a Coframe")
        self.coframe = coframe
        self.generators = tuple(generators)
        for g in self.generators:
            if g.coframe != coframe:
                raise ValueError("generator on a different coframe")
            if g.degree < 1:
                raise ValueError("generators must have positive degree (0-form %s)" % g.pretty())
        self.sd = sd if sd is not None else StructureDifferential.flat(coframe)
        if self.sd.coframe != coframe:
            raise ValueError("structure differential on a different coframe")
        self._resolved = None

    @property
    def dim(self):
        return self.coframe.dim

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __repr__(self):
        return "GeneratorSet(%s)" % ", ".join(g.pretty() for g in self.generators)

    @property
    def resolved(self):
        """Generators with auxiliaries replaced by their point values."""
        if self._resolved is None:
            self._resolved = tuple(resolve(g, self.sd) for g in self.generators)
        return self._resolved

    def scaled(self, factors):
        return GeneratorSet(self.coframe, [c * g for c, g in zip(factors, self.generators)], self.sd)


class IntegralElement:
    """A linear subspace of the tangent space, given by an independent basis.

    Whether it is integral depends on the ideal; see :func:`is_integral`.
    """

    def __init__(self, basis, ambient=None):
        self.basis = tuple(tuple(as_fraction(x) for x in v) for v in basis)
        if ambient is None:
            if not self.basis:
                raise ValueError("ambient dimension needed for the zero element")
            ambient = len(self.basis[0])
        self.ambient = ambient
        if any(len(v) != ambient for v in self.basis):
            raise ValueError("basis vectors must have length %d" % ambient)
        if rank(self.basis) != len(self.basis):
            raise ValueError("basis vectors are linearly dependent")

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, v):
        e = Echelon()
        for b in self.basis:
            e.add(b)
        return e.contains(v)

    def __repr__(self):
        return "IntegralElement(dim=%d, ambient=%d)" % (self.dim, self.ambient)


class Flag:
    """Ordered basis e_1..e_n; E_p is the span of the first p vectors."""

    def __init__(self, vectors, ambient=None):
        top = IntegralElement(vectors, ambient)
        self.vectors = top.basis
        self.ambient = top.ambient

    def __len__(self):
        return len(self.vectors)

    def element(self, p):
        if not 0 <= p <= len(self.vectors):
            raise IndexError("flag has length %d" % len(self.vectors))
        return IntegralElement(self.vectors[:p], self.ambient)

    def elements(self):
        return [self.element(p) for p in range(len(self.vectors) + 1)]


def _basis_forms(coframe, p):
    return {key: k for k, key in enumerate(combinations(range(1, coframe.dim + 1), p))}


def form_vector(phi, index):
    """Coefficient vector of a pure form against an indexed monomial basis."""
    row = {}
    for key, c in phi.terms.items():
        row[index[key]] = c
    return row


def degree_slice(gs, p):
    """Independent spanning set of the degree-p part of the algebraic ideal."""
    if not 1 <= p <= gs.dim:
        raise ValueError("degree %d outside 1..%d" % (p, gs.dim))
    cf = gs.coframe
    index = _basis_forms(cf, p)
    candidates = []
    for g in gs.resolved:
        if g.degree > p:
            continue
        for key in combinations(range(1, cf.dim + 1), p - g.degree):
            f = wedge(g, Form._raw(cf, len(key), {key: Fraction(1)}))
            if f:
                candidates.append(f)
    keep = independent_subset([form_vector(f, index) for f in candidates])
    return [candidates[i] for i in keep]


def _check_element(E, gs):
    if E.ambient != gs.dim:
        raise ValueError("element lives in dimension %d, ideal in %d" % (E.ambient, gs.dim))


def is_integral(E, gs):
    """Every generator of degree <= dim E vanishes on E."""
    _check_element(E, gs)
    p = E.dim
    for g in gs.resolved:
        if g.degree > p or not g:
            continue
        for sub in combinations(E.basis, g.degree):
            if evaluate(g, sub):
                return False
    return True


def polar_equations(E, gs):
    """1-forms v -> g(v, e_S) whose common kernel is the polar space H(E)."""
    _check_element(E, gs)
    p = E.dim
    out = []
    for g in gs.resolved:
        d = g.degree
        if d > p + 1 or not g:
            continue
        for sub in combinations(E.basis, d - 1):
            f = g
            for e in sub:
                f = interior_product(e, f)
            if (d - 1) % 2:
                f = -f
            if f:
                out.append(f)
    return out


def polar_space(E, gs):
    """Basis of H(E) = {v : phi(v, e_1..e_p) = 0 for phi in the (p+1)-slice}."""
    if not is_integral(E, gs):
        raise NotIntegralError("polar space requested for a non-integral element")
    n = gs.dim
    rows = []
    for f in polar_equations(E, gs):
        row = [Fraction(0)] * n
        for (i,), c in f.terms.items():
            row[i - 1] = c
        rows.append(row)
    return nullspace(rows, n)


def extension_rank(E, gs):
    """r(E) = dim H(E) - (dim E + 1); equals -1 when E cannot be extended."""
    return len(polar_space(E, gs)) - (E.dim + 1)


def close(gs):
    """Append d of every generator, dropping those that vanish identically."""
    extra = []
    for g in gs.generators:
        dg = exterior_derivative(g, gs.sd)
        if dg:
            extra.append(dg)
    return GeneratorSet(gs.coframe, gs.generators + tuple(extra), gs.sd)


def is_closed(gs):
    """d of every generator lies in the algebraic ideal (small dimensions only)."""
    for g in gs.generators:
        dg = resolve(exterior_derivative(g, gs.sd), gs.sd)
        if not dg or dg.degree > gs.dim:
            continue
        index = _basis_forms(gs.coframe, dg.degree)
        e = Echelon()
        for f in degree_slice(gs, dg.degree):
            e.add(form_vector(f, index))
        if not e.contains(form_vector(dg, index)):
            return False
    return True


def restrict(phi, E, sd=None):
    """Pull a form back to E, in the coframe dual to E's basis."""
    cf = Coframe.standard(E.dim)
    terms = {}
    for key in combinations(range(E.dim), phi.degree):
        c = evaluate(phi, [E.basis[k] for k in key], sd)
        if c:
            terms[tuple(k + 1 for k in key)] = c
    return Form(cf, phi.degree, terms)


def extend_element(E, gs, v):
    """span(E, v), provided v lies in H(E) but not in E."""
    if not is_integral(E, gs):
        raise NotIntegralError("cannot extend a non-integral element")
    v = tuple(as_fraction(x) for x in v)
    if E.contains(v):
        raise ValueError("vector already lies in E; not an extension")
    for f in polar_equations(E, gs):
        val = evaluate(f, [v])
        if val:
            raise NotInPolarSpaceError(
                "vector violates polar constraint %s (value %s)" % (f.pretty(), val), f, val)
    return IntegralElement(E.basis + (v,), E.ambient)
