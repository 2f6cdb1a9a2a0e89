"""Random data shared by the test modules."""

from fractions import Fraction
from itertools import combinations

from hypothesis import strategies as st

from cartan_eds._rng import SplitMix64
from cartan_eds.cartan import CoframeSplit
from cartan_eds.exterior import (Coframe, Form, StructureDifferential, basis_vector, evaluate,
                                 wedge)
from cartan_eds.ideal import degree_slice
from cartan_eds.linalg import nullspace, rank

small = st.integers(-3, 3).map(Fraction)


@st.composite
def forms(draw, cf, degree):
    keys = list(combinations(range(1, cf.dim + 1), degree))
    chosen = draw(st.lists(st.sampled_from(keys), max_size=6)) if keys else []
    return Form(cf, degree, [(k, draw(small)) for k in chosen])


def random_form(rng, cf, degree, density=0.5, bound=3):
    terms = {}
    for key in combinations(range(1, cf.dim + 1), degree):
        if rng.uniform() < density:
            terms[key] = Fraction(rng.randint(-bound, bound))
    return Form(cf, degree, terms)


def random_invertible(rng, n, bound=2):
    while True:
        A = [[Fraction(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(n)]
        if rank(A) == n:
            return A


def _blocks(n, rng):
    """d of the standard coframe for a direct sum of so(3), Heisenberg and abelian pieces."""
    out, i = {}, 1
    while i <= n:
        kind = rng.randint(0, 2)
        if kind == 0 and i + 2 <= n:
            a, b, c = i, i + 1, i + 2
            out[a], out[b], out[c] = (b, c, 1), (c, a, 1), (a, b, 1)
            i += 3
        elif kind == 1 and i + 2 <= n:
            out[i + 2] = (i, i + 1, 1)
            i += 3
        else:
            i += 1
    return out


def random_integrable_sd(n, seed):
    """A random Lie-algebra structure: a block structure in random linear coordinates."""
    rng = SplitMix64(seed)
    base = Coframe.standard(n)
    d_base = {}
    for k, (a, b, s) in _blocks(n, rng).items():
        d_base[k] = s * wedge(base.basis(a), base.basis(b))
    A = random_invertible(rng, n)
    # theta_i = sum_j A_ij w_j; express d(theta_i) back in the theta coframe
    theta = [Form(base, 1, {(j + 1,): A[i][j] for j in range(n) if A[i][j]}) for i in range(n)]
    split = CoframeSplit(theta, [])
    cf = Coframe.standard(n)
    basis_d = {}
    for i in range(n):
        dt = base.zero(2)
        for j in range(n):
            if A[i][j] and j + 1 in d_base:
                dt = dt + A[i][j] * d_base[j + 1]
        basis_d[i + 1] = Form(cf, 2, split.expand(dt).terms)
    return StructureDifferential(cf, basis_d)


def random_sd(n, seed, density=0.4):
    """Arbitrary (usually non-integrable) structure data."""
    rng = SplitMix64(seed)
    cf = Coframe.standard(n)
    return StructureDifferential(cf, {i: random_form(rng, cf, 2, density) for i in range(1, n + 1)})


def random_adapted_system(n, seed, max_gens=3, max_degree=3):
    """Random generators vanishing on E = span(f_1..f_p) for a random frame f."""
    rng = SplitMix64(seed)
    cf = Coframe.standard(n)
    A = random_invertible(rng, n)
    theta = [Form(cf, 1, {(j + 1,): A[i][j] for j in range(n) if A[i][j]}) for i in range(n)]
    p = rng.randint(0, n - 1)
    gens = []
    for _ in range(rng.randint(0, max_gens)):
        d = rng.randint(1, min(max_degree, n))
        g = cf.zero(d)
        for key in combinations(range(n), d):
            if max(key) >= p and rng.uniform() < 0.5:
                mono = theta[key[0]]
                for k in key[1:]:
                    mono = wedge(mono, theta[k])
                g = g + rng.randint(-2, 2) * mono
        if g:
            gens.append(g)
    split = CoframeSplit(theta, [])
    frame = split.frame
    return cf, gens, [frame[k] for k in range(p)], frame


def brute_force_polar(E, gs):
    """Kernel of v -> psi(v, e_1..e_p) with psi over a spanning set of the (p+1)-slice."""
    n, p = gs.dim, E.dim
    rows = []
    for psi in degree_slice(gs, p + 1):
        rows.append([evaluate(psi, [basis_vector(n, i)] + list(E.basis))
                     for i in range(1, n + 1)])
    return nullspace(rows, n)


def symmetric(rng, r, bound=4):
    h = [[Fraction(0)] * r for _ in range(r)]
    for i in range(r):
        for j in range(i, r):
            h[i][j] = h[j][i] = Fraction(rng.randint(-bound, bound), rng.randint(1, 3))
    return h


def independent_forms(rng, cf, r):
    A = random_invertible(rng, cf.dim)
    return [Form(cf, 1, {(j + 1,): A[i][j] for j in range(cf.dim) if A[i][j]}) for i in range(r)]


def combine(h, omega):
    cf = omega[0].coframe
    out = []
    for row in h:
        f = cf.zero(1)
        for c, w in zip(row, omega):
            f = f + c * w
        out.append(f)
    return out
