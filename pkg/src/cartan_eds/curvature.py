"""Algebraic curvature tensors and the Gauss map.

Tensors are numpy arrays indexed from 0; the 1-based accessors
``component`` mirror the usual R_ijkl / h_aij notation, with normal
indices a running over m+1..N.

The curvature 2-forms are Omega_ij = 1/2 sum_kl R_ijkl eta_k ^ eta_l, and
the Gauss map is

    gamma(h)_ijkl = sum_a (h_aik h_ajl - h_ail h_ajk).
"""

from fractions import Fraction
from itertools import combinations_with_replacement, permutations

import numpy as np

from ._rng import SplitMix64
from .linalg import as_fraction, rank


class ConvergenceError(RuntimeError):
    pass


def _as_array(values, shape):
    arr = np.asarray(values, dtype=object).reshape(shape)
    if any(isinstance(x, (float, np.floating)) for x in arr.flat):
        return np.asarray(arr, dtype=float)
    return np.vectorize(as_fraction, otypes=[object])(arr) if arr.size else arr


class RiemannTensor:
    def __init__(self, components):
        arr = np.asarray(components, dtype=object)
        if arr.ndim != 4 or len(set(arr.shape)) != 1:
            raise ValueError("curvature tensor must have shape (m, m, m, m)")
        self.m = arr.shape[0]
        self.array = _as_array(arr, arr.shape)

    @property
    def exact(self):
        return self.array.dtype == object

    @classmethod
    def zeros(cls, m):
        return cls(np.full((m,) * 4, Fraction(0), dtype=object))

    @classmethod
    def from_entries(cls, m, entries):
        """Symmetry-complete a list of (i, j, k, l, value) entries (1-based)."""
        arr = np.full((m,) * 4, Fraction(0), dtype=object)
        seen = {}
        for i, j, k, l, v in entries:
            v = as_fraction(v)
            if not all(1 <= x <= m for x in (i, j, k, l)):
                raise ValueError("index out of range in (%d,%d,%d,%d)" % (i, j, k, l))
            i, j, k, l = i - 1, j - 1, k - 1, l - 1
            for (a, b, c, d), s in (((i, j, k, l), 1), ((j, i, k, l), -1),
                                    ((i, j, l, k), -1), ((j, i, l, k), 1),
                                    ((k, l, i, j), 1), ((l, k, i, j), -1),
                                    ((k, l, j, i), -1), ((l, k, j, i), 1)):
                key = (a, b, c, d)
                if key in seen and seen[key] != s * v:
                    raise ValueError("inconsistent entries at %s" % (tuple(x + 1 for x in key),))
                seen[key] = s * v
                arr[key] = s * v
        R = cls(arr)
        if not validate(R):
            raise ValueError("entries violate the curvature symmetries")
        return R

    def entries(self):
        """Nonzero components with i<j, k<l and (i,j) <= (k,l), 1-based."""
        m = self.m
        pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
        out = []
        for x, (i, j) in enumerate(pairs):
            for (k, l) in pairs[x:]:
                v = self.array[i, j, k, l]
                if v:
                    out.append((i + 1, j + 1, k + 1, l + 1, v))
        return out

    def component(self, i, j, k, l):
        return self.array[i - 1, j - 1, k - 1, l - 1]

    def is_zero(self):
        return not np.any(self.array != 0)

    def max_abs(self):
        return max((abs(x) for x in self.array.flat), default=0)

    def __sub__(self, other):
        return RiemannTensor(self.array - other.array)

    def __add__(self, other):
        return RiemannTensor(self.array + other.array)

    def __neg__(self):
        return RiemannTensor(-self.array)

    def __eq__(self, other):
        if not isinstance(other, RiemannTensor):
            return NotImplemented
        return self.m == other.m and bool(np.all(self.array == other.array))

    def __repr__(self):
        return "RiemannTensor(m=%d, %s)" % (self.m, self.entries())


class SecondFundamentalForm:
    """Coefficients h_aij, symmetric in (i, j), for normal directions a."""

    def __init__(self, m, N, components):
        if N <= m:
            raise ValueError("need N > m")
        self.m, self.N = m, N
        self.array = _as_array(components, (N - m, m, m))
        if not np.all(self.array == self.array.transpose(0, 2, 1)):
            raise ValueError("h_aij must be symmetric in i, j")

    @property
    def exact(self):
        return self.array.dtype == object

    @property
    def r(self):
        return self.N - self.m

    @classmethod
    def zeros(cls, m, N):
        return cls(m, N, np.full((N - m, m, m), Fraction(0), dtype=object))

    @classmethod
    def from_upper(cls, m, N, values):
        """Build from h_aij listed by a, then (i <= j) lexicographically."""
        pairs = list(combinations_with_replacement(range(m), 2))
        values = list(values)
        if len(values) != (N - m) * len(pairs):
            raise ValueError("expected %d values, got %d" % ((N - m) * len(pairs), len(values)))
        arr = np.empty((N - m, m, m), dtype=object)
        it = iter(values)
        for a in range(N - m):
            for i, j in pairs:
                arr[a, i, j] = arr[a, j, i] = next(it)
        return cls(m, N, arr)

    def upper(self):
        return [self.array[a, i, j] for a in range(self.r)
                for i, j in combinations_with_replacement(range(self.m), 2)]

    def component(self, a, i, j):
        return self.array[a - self.m - 1, i - 1, j - 1]

    def to_exact(self, max_denominator=10 ** 12):
        if self.exact:
            return self
        vals = [Fraction(float(x)).limit_denominator(max_denominator) for x in self.upper()]
        return SecondFundamentalForm.from_upper(self.m, self.N, vals)

    def __eq__(self, other):
        if not isinstance(other, SecondFundamentalForm):
            return NotImplemented
        return (self.m, self.N) == (other.m, other.N) and bool(np.all(self.array == other.array))

    def __repr__(self):
        return "SecondFundamentalForm(m=%d, N=%d, %s)" % (self.m, self.N, self.upper())


def validate(R, tol=0):
    """Pair symmetry, first-pair antisymmetry and the cyclic identity."""
    a = R.array

    def small(x):
        if tol:
            return np.all(np.abs(np.asarray(x, dtype=float)) <= tol)
        return not np.any(x != 0)

    return bool(small(a - a.transpose(2, 3, 0, 1))
                and small(a + a.transpose(1, 0, 2, 3))
                and small(a + a.transpose(1, 2, 0, 3) + a.transpose(2, 0, 1, 3)))


def dim_Km(m):
    if m < 2:
        raise ValueError("m must be at least 2")
    return m * m * (m * m - 1) // 12


def symmetry_constraints(m):
    """Sparse rows of the linear symmetry conditions on the m**4 coordinates."""
    def idx(i, j, k, l):
        return ((i * m + j) * m + k) * m + l

    rows = []
    r = range(m)
    for i in r:
        for j in r:
            for k in r:
                for l in r:
                    x = idx(i, j, k, l)
                    for row in ([(x, 1), (idx(k, l, i, j), -1)],
                                [(x, 1), (idx(j, i, k, l), 1)],
                                [(x, 1), (idx(k, i, j, l), 1), (idx(j, k, i, l), 1)]):
                        row = _merge_row(row)
                        if row:
                            rows.append(row)
    return rows


def _merge_row(items):
    out = {}
    for c, v in items:
        out[c] = out.get(c, 0) + v
    return {c: v for c, v in out.items() if v}


def dim_Km_by_rank(m):
    """m**4 minus the rank of the symmetry conditions."""
    return m ** 4 - rank(symmetry_constraints(m))


def _bilinear(x, y):
    return np.einsum("aik,ajl->ijkl", x, y) - np.einsum("ail,ajk->ijkl", x, y)


def gauss_map(h):
    return RiemannTensor(_bilinear(h.array, h.array))


def in_H(h):
    m, r = h.m, h.r
    need = m * (m - 1) // 2
    if r < need:
        return False
    vecs = [h.array[:, i, j] for i, j in combinations_with_replacement(range(m - 1), 2)]
    if not h.exact:
        return int(np.linalg.matrix_rank(np.array(vecs, dtype=float))) == len(vecs)
    return rank([list(v) for v in vecs]) == len(vecs)


def _directions(m, N, dtype=object):
    zero = Fraction(0) if dtype is object else 0.0
    one = Fraction(1) if dtype is object else 1.0
    out = []
    for a in range(N - m):
        for i, j in combinations_with_replacement(range(m), 2):
            d = np.full((N - m, m, m), zero, dtype=dtype)
            d[a, i, j] = d[a, j, i] = one
            out.append(d)
    return out


def gauss_jacobian(h):
    """Columns of d(gamma) at h, one per coordinate of W (x) S^2(R^m), flattened."""
    return [(_bilinear(d, h.array) + _bilinear(h.array, d)).reshape(-1)
            for d in _directions(h.m, h.N, object if h.exact else float)]


def gauss_jacobian_rank(h):
    if not h.exact:
        J = np.array(gauss_jacobian(h), dtype=float).T
        return int(np.linalg.matrix_rank(J))
    return rank([list(col) for col in gauss_jacobian(h)])


def random_h_in_H(m, N, seed, bound=3, max_tries=1000):
    """Seeded integer-valued h with in_H(h), by rejection."""
    if N - m < m * (m - 1) // 2:
        raise ValueError("need N - m >= m(m-1)/2 (N=%d, m=%d)" % (N, m))
    rng = SplitMix64(seed)
    count = (N - m) * m * (m + 1) // 2
    for _ in range(max_tries):
        h = SecondFundamentalForm.from_upper(
            m, N, [Fraction(rng.randint(-bound, bound)) for _ in range(count)])
        if in_H(h):
            return h
    raise RuntimeError("no h in H after %d draws" % max_tries)


def random_curvature(m, seed, bound=3):
    """Seeded exact curvature tensor: a random vector projected onto K_m."""
    rng = SplitMix64(seed)
    pairs = [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]
    # pair-symmetric part, then remove the cyclic-sum component
    arr = np.full((m,) * 4, Fraction(0), dtype=object)
    for x, (i, j) in enumerate(pairs):
        for (k, l) in pairs[x:]:
            v = Fraction(rng.randint(-bound, bound))
            for (a, b, c, d), s in (((i, j, k, l), 1), ((j, i, k, l), -1), ((i, j, l, k), -1),
                                    ((j, i, l, k), 1), ((k, l, i, j), 1), ((l, k, i, j), -1),
                                    ((k, l, j, i), -1), ((l, k, j, i), 1)):
                arr[a - 1, b - 1, c - 1, d - 1] = s * v
    # on pair-symmetric tensors the cyclic sum is the totally antisymmetric part
    R = RiemannTensor(arr - _alt(arr))
    if not validate(R):
        raise AssertionError("projection onto curvature tensors failed")
    return R


def _alt(a):
    """Total antisymmetrisation over the four slots."""
    out = np.full(a.shape, Fraction(0), dtype=object)
    perms = list(permutations(range(4)))
    for p in perms:
        inv = sum(1 for x in range(4) for y in range(x + 1, 4) if p[x] > p[y])
        out = out + (-1 if inv % 2 else 1) * a.transpose(p)
    return out / len(perms)


def preimage_newton(R, h0, max_iters=50, tol=1e-10):
    """Some h with |gamma(h) - R| <= tol, by least-squares Newton steps from h0.

    For (m, N) = (2, 3) the exact solution h_311 = R_1212, h_322 = 1,
    h_312 = 0 is returned directly.
    """
    m, N = h0.m, h0.N
    if R.m != m:
        raise ValueError("dimension mismatch")
    if m == 2 and N == 3:
        return SecondFundamentalForm.from_upper(2, 3, [as_fraction(R.component(1, 2, 1, 2))
                                                       if R.exact else float(R.component(1, 2, 1, 2)),
                                                       0, 1])
    if not in_H(h0):
        raise ValueError("starting point must lie in H")
    target = np.asarray(R.array, dtype=float).reshape(-1)
    pairs = list(combinations_with_replacement(range(m), 2))

    def unpack(x):
        return SecondFundamentalForm.from_upper(m, N, [float(v) for v in x])

    def residual(x):
        return _bilinear(unpack(x).array, unpack(x).array).reshape(-1) - target

    x = np.array([float(v) for v in h0.upper()])
    f = residual(x)
    for _ in range(max_iters):
        if np.max(np.abs(f)) <= tol:
            return unpack(x)
        J = np.array(gauss_jacobian(unpack(x)), dtype=float).T
        step = np.linalg.lstsq(J, -f, rcond=None)[0]
        t = 1.0
        norm = np.linalg.norm(f)
        while t > 1e-4:
            trial = x + t * step
            ft = residual(trial)
            if np.linalg.norm(ft) < norm:
                break
            t *= 0.5
        x, f = trial, ft
    if np.max(np.abs(f)) <= tol:
        return unpack(x)
    raise ConvergenceError("Newton iteration did not reach tolerance %g in %d steps "
                           "(residual %g)" % (tol, max_iters, float(np.max(np.abs(f)))))
