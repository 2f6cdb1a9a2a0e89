"""Exact linear algebra over the rationals.

Rank computations run a fraction-free elimination on integer rows (each
row is cleared of denominators and kept primitive), pivoting on the
leftmost nonzero column in row order.  Reduced row echelon forms and
kernels use plain :class:`fractions.Fraction` arithmetic.
"""

from fractions import Fraction
from math import gcd


def as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point value in exact computation: %r" % (x,))
    return Fraction(x)


def _sparse(row):
    if isinstance(row, dict):
        return {k: v for k, v in row.items() if v}
    return {k: v for k, v in enumerate(row) if v}


def _primitive(row):
    """Scale a sparse rational row to a primitive integer row."""
    if not row:
        return {}
    den = 1
    for v in row.values():
        v = as_fraction(v)
        den = den * v.denominator // gcd(den, v.denominator)
    out = {}
    g = 0
    for k, v in row.items():
        v = as_fraction(v)
        x = v.numerator * (den // v.denominator)
        out[k] = x
        g = gcd(g, x)
    if g > 1:
        for k in out:
            out[k] //= g
    return out


class Echelon:
    """Incrementally maintained row echelon form.

    ``add`` returns True when the row is independent of those already
    absorbed.  Rows may be dense sequences or ``{column: value}`` dicts.
    """

    def __init__(self):
        self.pivots = {}

    def __len__(self):
        return len(self.pivots)

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, row):
        r = _primitive(_sparse(row))
        while r:
            c = min(r)
            p = self.pivots.get(c)
            if p is None:
                return r
            a, b = p[c], r[c]
            new = {k: a * v for k, v in r.items()}
            for k, v in p.items():
                x = new.get(k, 0) - b * v
                if x:
                    new[k] = x
                else:
                    new.pop(k, None)
            g = 0
            for v in new.values():
                g = gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                new = {k: v // g for k, v in new.items()}
            r = new
        return r

    def contains(self, row):
        return not self.reduce(row)

    def add(self, row):
        r = self.reduce(row)
        if not r:
            return False
        self.pivots[min(r)] = r
        return True


def rank(rows):
    e = Echelon()
    for row in rows:
        e.add(row)
    return e.rank


def independent_subset(rows):
    """Indices of the rows that raise the rank, scanning in order."""
    e = Echelon()
    return [i for i, row in enumerate(rows) if e.add(row)]


def rref(rows, ncols):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[as_fraction(x) for x in row] for row in rows]
    for row in m:
        if len(row) != ncols:
            raise ValueError("row length %d != %d" % (len(row), ncols))
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def nullspace(rows, ncols):
    """Basis of {x : A x = 0}, one vector per free column (ascending)."""
    red, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def det(matrix):
    """Determinant by Bareiss elimination on denominator-cleared rows."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    rows = [[as_fraction(x) for x in row] for row in matrix]
    if any(len(row) != n for row in rows):
        raise ValueError("matrix is not square")
    scale = Fraction(1)
    a = []
    for row in rows:
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        a.append([int(x * den) for x in row])
        scale /= den
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] * scale


def inverse(matrix):
    n = len(matrix)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in red[:n]]


def same_span(a, b):
    ea = Echelon()
    for row in a:
        ea.add(row)
    if any(not ea.contains(row) for row in b):
        return False
    return rank(b) == ea.rank
