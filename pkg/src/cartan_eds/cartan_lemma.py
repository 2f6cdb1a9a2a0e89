"""Constructive Cartan lemma at a point.

If w_1..w_r are independent 1-forms and sum_i theta_i ^ w_i = 0, then
theta_i = sum_j h_ij w_j for a unique symmetric matrix h.  With constant
coefficients the lemma is a statement about rational matrices, so h is
returned rather than merely shown to exist.
"""

from fractions import Fraction

from .exterior import evaluate, wedge
from .linalg import independent_subset, inverse, rank


class CartanLemmaError(ValueError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


def wedge_sum(theta, omega):
    cf = omega[0].coframe
    out = cf.zero(2)
    for t, w in zip(theta, omega):
        out = out + wedge(t, w)
    return out


def solve(theta, omega):
    """Return the symmetric r x r matrix h with theta_i = sum_j h_ij w_j."""
    theta, omega = list(theta), list(omega)
    r = len(omega)
    if len(theta) != r:
        raise ValueError("theta and omega must have the same length")
    if r == 0:
        return []
    cf = omega[0].coframe
    for f in theta + omega:
        if f.coframe != cf or f.degree != 1:
            raise ValueError("Cartan's lemma takes 1-forms on one coframe")
        if not f.is_pure():
            raise ValueError("resolve auxiliaries before applying Cartan's lemma")
    n = cf.dim
    rows = [[w.coefficient((i,)) for i in range(1, n + 1)] for w in omega]
    if rank(rows) != r:
        raise CartanLemmaError("the forms omega_i are linearly dependent")
    residual = wedge_sum(theta, omega)
    if residual:
        raise CartanLemmaError("sum theta_i ^ omega_i = %s is not zero" % residual.pretty(),
                               residual)
    # complete omega to a basis with coordinate 1-forms, then read theta in the dual frame
    std = [[Fraction(int(i == k)) for i in range(n)] for k in range(n)]
    extra = [k - r for k in independent_subset(rows + std) if k >= r]
    basis = rows + [std[k] for k in extra]
    inv = inverse(basis)
    frame = [[inv[mu][k] for mu in range(n)] for k in range(n)]
    h = [[evaluate(t, [frame[j]]) for j in range(r)] for t in theta]
    for i, t in enumerate(theta):
        for k in range(r, n):
            if evaluate(t, [frame[k]]):
                raise AssertionError("theta_%d has a component off span(omega)" % (i + 1))
    for i in range(r):
        for j in range(i):
            if h[i][j] != h[j][i]:
                raise AssertionError("recovered h is not symmetric")
    return h
