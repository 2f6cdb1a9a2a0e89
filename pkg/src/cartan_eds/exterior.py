"""Constant-coefficient exterior algebra over a coframe, at a single point.

Forms are sparse maps from strictly increasing multi-indices to
:class:`~fractions.Fraction` coefficients.  Index ``i`` (1-based) stands
for the coframe element ``w{i}``.  A coframe may also declare auxiliary
1-forms; they take the indices ``n+1, n+2, ...`` and behave as free
generators until :func:`resolve` substitutes their values at the point.
This is how a 1-form that vanishes at the point but has nonzero
differential is represented.

The exterior derivative is not computed from coefficient functions; it is
fixed by a :class:`StructureDifferential`, which assigns a 2-form to every
generator and extends by linearity and the graded Leibniz rule.
"""

from bisect import bisect_right
from fractions import Fraction
from itertools import combinations

from .linalg import as_fraction, det

__all__ = [
    "Coframe", "Form", "FormMatrix", "StructureDifferential",
    "wedge", "add", "scale", "evaluate", "interior_product",
    "exterior_derivative", "resolve", "d_squared_defects", "is_integrable",
    "matrix_wedge", "matrix_d", "matrix_add", "matrix_sub",
    "vector", "basis_vector", "parse_form",
]


class Coframe:
    """Ordered coframe names plus optional auxiliary 1-form names."""

    def __init__(self, names, aux_names=()):
        self.names = tuple(str(s) for s in names)
        self.aux_names = tuple(str(s) for s in aux_names)
        if not self.names:
            raise ValueError("a coframe needs at least one element")
        every = self.names + self.aux_names
        if len(set(every)) != len(every):
            raise ValueError("coframe names must be unique")
        self.dim = len(self.names)
        self.size = len(every)
        self._index = {s: i + 1 for i, s in enumerate(every)}

    @classmethod
    def standard(cls, n, aux_names=()):
        return cls(["w%d" % (i + 1) for i in range(n)], aux_names)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Coframe):
            return NotImplemented
        return self.names == other.names and self.aux_names == other.aux_names

    def __hash__(self):
        return hash((self.names, self.aux_names))

    def __repr__(self):
        if self.aux_names:
            return "Coframe(%r, aux=%r)" % (list(self.names), list(self.aux_names))
        return "Coframe(%r)" % (list(self.names),)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError("unknown coframe element %r" % (name,)) from None

    def name(self, i):
        if i <= self.dim:
            return self.names[i - 1]
        return self.aux_names[i - self.dim - 1]

    def is_aux(self, i):
        return i > self.dim

    def basis(self, i):
        """The 1-form w{i} (1-based; auxiliaries after the coframe)."""
        if not 1 <= i <= self.size:
            raise IndexError("index %d outside 1..%d" % (i, self.size))
        return Form._raw(self, 1, {(i,): Fraction(1)})

    def __getitem__(self, name):
        return self.basis(self.index(name))

    def zero(self, degree):
        return Form._raw(self, degree, {})

    def one(self):
        return Form._raw(self, 0, {(): Fraction(1)})


def vector(*components):
    return tuple(as_fraction(c) for c in components)


def basis_vector(n, i):
    """Frame vector e_i (1-based) dual to the coframe."""
    return tuple(Fraction(int(k == i - 1)) for k in range(n))


def _merge(a, b):
    """Sign and sorted concatenation of two multi-indices (None if they meet)."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    inv = 0
    for j in b:
        pos = bisect_right(a, j)
        if pos and a[pos - 1] == j:
            return 0, None
        inv += len(a) - pos
    return (-1 if inv & 1 else 1), tuple(sorted(a + b))


class Form:
    """A homogeneous form of fixed degree with exact coefficients."""

    __slots__ = ("coframe", "degree", "terms")

    def __init__(self, coframe, degree, terms=()):
        if degree < 0:
            raise ValueError("negative degree")
        items = terms.items() if isinstance(terms, dict) else terms
        clean = {}
        for key, c in items:
            key = tuple(int(i) for i in key)
            if len(key) != degree:
                raise ValueError("multi-index %r does not have degree %d" % (key, degree))
            if any(b <= a for a, b in zip(key, key[1:])):
                raise ValueError("multi-index %r is not strictly increasing" % (key,))
            if key and not (1 <= key[0] and key[-1] <= coframe.size):
                raise ValueError("multi-index %r outside 1..%d" % (key, coframe.size))
            c = as_fraction(c) + clean.get(key, 0)
            if c:
                clean[key] = c
            else:
                clean.pop(key, None)
        self.coframe = coframe
        self.degree = degree
        self.terms = clean

    @classmethod
    def _raw(cls, coframe, degree, terms):
        f = object.__new__(cls)
        f.coframe = coframe
        f.degree = degree
        f.terms = terms
        return f

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_pure(self):
        """True when no auxiliary generator occurs."""
        n = self.coframe.dim
        return all(not key or key[-1] <= n for key in self.terms)

    def coefficient(self, key):
        return self.terms.get(tuple(key), Fraction(0))

    def _check(self, other):
        if not isinstance(other, Form):
            raise TypeError("expected a Form, got %r" % (type(other).__name__,))
        if self.coframe != other.coframe:
            raise ValueError("forms live on different coframes")

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, Form):
            return NotImplemented
        return (self.coframe == other.coframe and self.degree == other.degree
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, -other)

    def __neg__(self):
        return Form._raw(self.coframe, self.degree, {k: -c for k, c in self.terms.items()})

    def __mul__(self, c):
        if isinstance(c, Form):
            return NotImplemented
        return scale(c, self)

    __rmul__ = __mul__

    def wedge(self, other):
        return wedge(self, other)

    def render(self):
        """Canonical text: ``num/den*w{i}^w{j} + ...`` in lexicographic order."""
        if not self.terms:
            return "0"
        out = []
        for key in sorted(self.terms):
            c = self.terms[key]
            coeff = "%d/%d" % (c.numerator, c.denominator)
            if key:
                out.append(coeff + "*" + "^".join("w%d" % i for i in key))
            else:
                out.append(coeff)
        return " + ".join(out)

    def pretty(self):
        """Human-readable rendering using the coframe names."""
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms):
            c = self.terms[key]
            mono = "^".join(self.coframe.name(i) for i in key)
            if not key:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append("%s*%s" % (c, mono))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return "Form(%d: %s)" % (self.degree, self.pretty())


def add(a, b):
    a._check(b)
    if a.degree != b.degree:
        raise ValueError("cannot add forms of degrees %d and %d" % (a.degree, b.degree))
    terms = dict(a.terms)
    for k, c in b.terms.items():
        s = terms.get(k, 0) + c
        if s:
            terms[k] = s
        else:
            terms.pop(k, None)
    return Form._raw(a.coframe, a.degree, terms)


def scale(c, a):
    c = as_fraction(c)
    if not c:
        return Form._raw(a.coframe, a.degree, {})
    return Form._raw(a.coframe, a.degree, {k: c * v for k, v in a.terms.items()})


def wedge(a, b):
    a._check(b)
    terms = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            sign, key = _merge(ka, kb)
            if not sign:
                continue
            s = terms.get(key, 0) + (ca * cb if sign > 0 else -ca * cb)
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
    return Form._raw(a.coframe, a.degree + b.degree, terms)


def wedge_all(forms, coframe=None):
    forms = list(forms)
    if not forms:
        return coframe.one()
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def _require_pure(phi, sd):
    if sd is not None:
        return resolve(phi, sd)
    if not phi.is_pure():
        raise ValueError("form involves auxiliaries; supply the structure "
                         "differential to resolve their values")
    return phi


def evaluate(phi, vectors, sd=None):
    """phi(v_1, ..., v_p): for each term c*w_J, c times det[v_k along J]."""
    phi = _require_pure(phi, sd)
    vectors = [tuple(as_fraction(x) for x in v) for v in vectors]
    if len(vectors) != phi.degree:
        raise ValueError("a %d-form takes %d vectors, got %d"
                         % (phi.degree, phi.degree, len(vectors)))
    n = phi.coframe.dim
    for v in vectors:
        if len(v) != n:
            raise ValueError("vector of length %d in dimension %d" % (len(v), n))
    total = Fraction(0)
    if phi.degree == 1:
        for (i,), c in phi.terms.items():
            total += c * vectors[0][i - 1]
        return total
    for key, c in phi.terms.items():
        total += c * det([[v[i - 1] for i in key] for v in vectors])
    return total


def interior_product(v, phi, sd=None):
    """Contraction of v into the first slot of phi."""
    if phi.degree < 1:
        raise ValueError("cannot contract a vector into a 0-form")
    phi = _require_pure(phi, sd)
    v = tuple(as_fraction(x) for x in v)
    if len(v) != phi.coframe.dim:
        raise ValueError("vector of length %d in dimension %d" % (len(v), phi.coframe.dim))
    terms = {}
    for key, c in phi.terms.items():
        for k, i in enumerate(key):
            x = v[i - 1]
            if not x:
                continue
            sub = key[:k] + key[k + 1:]
            s = terms.get(sub, 0) + (c * x if k % 2 == 0 else -c * x)
            if s:
                terms[sub] = s
            else:
                terms.pop(sub, None)
    return Form._raw(phi.coframe, phi.degree - 1, terms)


class StructureDifferential:
    """Values of d on the coframe elements and on declared auxiliaries.

    ``basis_d`` maps 1-based coframe indices to 2-forms (missing entries are
    zero).  ``auxiliaries`` maps each auxiliary name to ``(value,
    differential)``: the 1-form it equals at the point and its 2-form
    differential.  Values must be free of auxiliaries; differentials may
    mention them.
    """

    def __init__(self, coframe, basis_d=None, auxiliaries=None):
        self.coframe = coframe
        if basis_d is None:
            basis_d = {}
        elif not isinstance(basis_d, dict):
            basis_d = {i + 1: f for i, f in enumerate(basis_d)}
        self.basis_d = {}
        for i in range(1, coframe.dim + 1):
            f = basis_d.get(i)
            if f is None:
                f = coframe.zero(2)
            self._check_form(f, 2, "d(w%d)" % i)
            self.basis_d[i] = f
        extra = set(basis_d) - set(self.basis_d)
        if extra:
            raise ValueError("structure data for unknown indices %s" % sorted(extra))
        self.auxiliaries = {}
        for name, (value, diff) in (auxiliaries or {}).items():
            if name not in coframe.aux_names:
                raise ValueError("auxiliary %r is not declared on the coframe" % (name,))
            self._check_form(value, 1, "value of %s" % name)
            self._check_form(diff, 2, "d(%s)" % name)
            if not value.is_pure():
                raise ValueError("value of auxiliary %r refers to auxiliaries" % (name,))
            self.auxiliaries[name] = (value, diff)
        self._dcache = {}
        self._rcache = {}

    def _check_form(self, f, degree, what):
        if not isinstance(f, Form) or f.coframe != self.coframe:
            raise ValueError("%s must be a form on the same coframe" % what)
        if f.degree != degree:
            raise ValueError("%s must have degree %d, got %d" % (what, degree, f.degree))

    @classmethod
    def flat(cls, coframe):
        return cls(coframe)

    def d_of(self, i):
        """d of the degree-1 generator with index i."""
        if i <= self.coframe.dim:
            return self.basis_d[i]
        name = self.coframe.name(i)
        try:
            return self.auxiliaries[name][1]
        except KeyError:
            raise ValueError("auxiliary %r has no declared differential" % (name,)) from None

    def value_of(self, i):
        if i <= self.coframe.dim:
            return self.coframe.basis(i)
        name = self.coframe.name(i)
        try:
            return self.auxiliaries[name][0]
        except KeyError:
            raise ValueError("auxiliary %r has no declared value" % (name,)) from None

    def _d_monomial(self, key):
        out = self._dcache.get(key)
        if out is None:
            cf = self.coframe
            out = cf.zero(len(key) + 1)
            for k, i in enumerate(key):
                rest = Form._raw(cf, len(key) - 1, {key[:k] + key[k + 1:]: Fraction(1)})
                term = wedge(rest, self.d_of(i))
                out = out - term if k % 2 else out + term
            self._dcache[key] = out
        return out

    def _resolve_monomial(self, key):
        out = self._rcache.get(key)
        if out is None:
            cf = self.coframe
            out = cf.one()
            for i in key:
                out = wedge(out, self.value_of(i))
            self._rcache[key] = out
        return out


def exterior_derivative(phi, sd):
    if phi.coframe != sd.coframe:
        raise ValueError("form and structure differential use different coframes")
    terms = {}
    for key, c in phi.terms.items():
        for k, v in sd._d_monomial(key).terms.items():
            s = terms.get(k, 0) + c * v
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
    return Form._raw(phi.coframe, phi.degree + 1, terms)


def resolve(phi, sd):
    """Substitute the point values of every auxiliary generator."""
    if phi.coframe != sd.coframe:
        raise ValueError("form and structure differential use different coframes")
    n = phi.coframe.dim
    terms = {}
    for key, c in phi.terms.items():
        if not key or key[-1] <= n:
            s = terms.get(key, 0) + c
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
            continue
        for k, v in sd._resolve_monomial(key).terms.items():
            s = terms.get(k, 0) + c * v
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
    return Form._raw(phi.coframe, phi.degree, terms)


def d_squared_defects(sd):
    """d(d w_i) for every coframe element and d(d a) for every auxiliary."""
    out = [(i, exterior_derivative(sd.basis_d[i], sd)) for i in range(1, sd.coframe.dim + 1)]
    for name, (_, diff) in sd.auxiliaries.items():
        out.append((name, exterior_derivative(diff, sd)))
    return out


def is_integrable(sd):
    return all(f.is_zero() for _, f in d_squared_defects(sd))


class FormMatrix:
    """Rectangular matrix of forms sharing one degree; indexed M[i, j] from 0."""

    def __init__(self, entries):
        rows = [tuple(r) for r in entries]
        if not rows or not rows[0]:
            raise ValueError("empty form matrix")
        cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged form matrix")
        first = rows[0][0]
        for r in rows:
            for f in r:
                first._check(f)
                if f.degree != first.degree:
                    raise ValueError("form matrix entries must share one degree")
        self.entries = tuple(rows)
        self.rows = len(rows)
        self.cols = cols
        self.degree = first.degree
        self.coframe = first.coframe

    @classmethod
    def zeros(cls, coframe, rows, cols, degree):
        z = coframe.zero(degree)
        return cls([[z] * cols for _ in range(rows)])

    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, FormMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def is_zero(self):
        return all(f.is_zero() for r in self.entries for f in r)

    def transpose(self):
        return FormMatrix(list(zip(*self.entries)))

    def __neg__(self):
        return FormMatrix([[-f for f in r] for r in self.entries])

    def __add__(self, other):
        return matrix_add(self, other)

    def __sub__(self, other):
        return matrix_sub(self, other)

    def __repr__(self):
        body = "; ".join(", ".join(f.pretty() for f in r) for r in self.entries)
        return "FormMatrix(%dx%d, degree %d: [%s])" % (self.rows, self.cols, self.degree, body)


def matrix_wedge(a, b):
    if a.cols != b.rows:
        raise ValueError("cannot multiply %dx%d by %dx%d" % (a.rows, a.cols, b.rows, b.cols))
    cf = a.coframe
    out = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            acc = cf.zero(a.degree + b.degree)
            for k in range(a.cols):
                acc = acc + wedge(a[i, k], b[k, j])
            row.append(acc)
        out.append(row)
    return FormMatrix(out)


def matrix_d(a, sd):
    return FormMatrix([[exterior_derivative(f, sd) for f in r] for r in a.entries])


def matrix_add(a, b):
    if a.shape != b.shape:
        raise ValueError("shape mismatch %s vs %s" % (a.shape, b.shape))
    return FormMatrix([[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a.entries, b.entries)])


def matrix_sub(a, b):
    return matrix_add(a, -b)


def parse_form(text, coframe, degree=None):
    """Inverse of :meth:`Form.render`."""
    text = text.strip()
    if text == "0":
        if degree is None:
            raise ValueError("the zero form needs an explicit degree")
        return coframe.zero(degree)
    terms = {}
    deg = None
    for chunk in text.split(" + "):
        if "*" in chunk:
            coeff, mono = chunk.split("*", 1)
            key = []
            for part in mono.split("^"):
                if not part.startswith("w"):
                    raise ValueError("bad monomial %r" % (mono,))
                key.append(int(part[1:]))
        else:
            coeff, key = chunk, []
        key = tuple(key)
        if deg is None:
            deg = len(key)
        elif deg != len(key):
            raise ValueError("mixed degrees in %r" % (text,))
        terms[key] = terms.get(key, 0) + Fraction(coeff)
    if degree is not None and deg != degree:
        raise ValueError("expected degree %d, got %d" % (degree, deg))
    return Form(coframe, deg, terms)


def monomials(n, p):
    return combinations(range(1, n + 1), p)
