"""Cartan characters of an integral flag and the involutivity verdict.

Two independent routes produce the characters c_0..c_{n-1}:

* polar route: c_k = ambient dimension - dim H(E_k) along the flag;
* tableau route: rewrite every generator in an adapted coframe
  (w_1..w_n, pi_1..pi_s), read off the pi-linear coefficient 1-forms
  pi^J of each w_J, and take c_p = rank{pi^J : sup J <= p}.

The codimension of the integral-element variety at E_n is computed by
linearising: n-planes near E_n are graphs e_i + sum_a t_ai f_a over a
complement f_1..f_s, and ``tangent_codim`` is the rank of the first-order
conditions on the t_ai.  The flag is reported ordinary when that rank
equals sum(c_k) and not ordinary on any strict inequality; a disagreement
between the two character routes is reported as inconclusive.  Smoothness of the variety is assumed, which makes the
verdict a statement about the linearised codimension.
"""

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .exterior import Coframe, Form, evaluate, interior_product, wedge
from .ideal import IntegralElement, NotIntegralError, is_integral, polar_space
from .linalg import Echelon, as_fraction, inverse, rank

ORDINARY = "ordinary"
NOT_ORDINARY = "not_ordinary"
INCONCLUSIVE = "inconclusive"


class MalformedExpansionError(ValueError):
    pass


class CoframeSplit:
    """Adapted coframe: independence 1-forms w_1..w_n and complement pi_1..pi_s.

    The forms must be free of auxiliaries and together form a basis.  The
    candidate element E is the common kernel of the complement forms.
    """

    def __init__(self, independence, complement):
        self.independence = tuple(independence)
        self.complement = tuple(complement)
        forms = self.independence + self.complement
        if not forms:
            raise ValueError("empty split")
        cf = forms[0].coframe
        self.coframe = cf
        for f in forms:
            if f.coframe != cf or f.degree != 1:
                raise ValueError("split forms must be 1-forms on one coframe")
            if not f.is_pure():
                raise ValueError("split forms must not involve auxiliaries")
        if len(forms) != cf.dim:
            raise ValueError("split has %d forms, coframe dimension is %d" % (len(forms), cf.dim))
        matrix = [[f.coefficient((i,)) for i in range(1, cf.dim + 1)] for f in forms]
        if rank(matrix) != cf.dim:
            raise ValueError("split forms are not linearly independent")
        inv = inverse(matrix)
        self.n = len(self.independence)
        self.s = len(self.complement)
        # dual frame: column k of the inverse
        self.frame = tuple(tuple(inv[mu][k] for mu in range(cf.dim)) for k in range(cf.dim))
        self.theta = Coframe(["w%d" % (i + 1) for i in range(self.n)]
                             + ["pi%d" % (a + 1) for a in range(self.s)])
        # w_mu = sum_k inv[mu][k] theta_k
        self._subst = [Form._raw(self.theta, 1, {(k + 1,): inv[mu][k] for k in range(cf.dim)
                                                 if inv[mu][k]})
                       for mu in range(cf.dim)]
        self._cache = {}

    @classmethod
    def from_indices(cls, coframe, independence, complement):
        return cls([coframe.basis(i) for i in independence],
                   [coframe.basis(i) for i in complement])

    @property
    def independence_frame(self):
        return self.frame[:self.n]

    @property
    def complement_frame(self):
        return self.frame[self.n:]

    def element(self):
        return IntegralElement(self.independence_frame, self.coframe.dim)

    def flag_vectors(self):
        return self.independence_frame

    def expand(self, phi):
        """Rewrite a pure form in the adapted coframe."""
        if not phi.is_pure():
            raise ValueError("resolve auxiliaries before expanding")
        out = {}
        for key, c in phi.terms.items():
            mono = self._cache.get(key)
            if mono is None:
                mono = self.theta.one()
                for mu in key:
                    mono = wedge(mono, self._subst[mu - 1])
                self._cache[key] = mono
            for k, v in mono.terms.items():
                x = out.get(k, 0) + c * v
                if x:
                    out[k] = x
                else:
                    out.pop(k, None)
        return Form._raw(self.theta, phi.degree, out)

    def adapted(self, flag):
        """Whether span(e_1..e_p) equals E_p of the split for every p."""
        if len(flag) != self.n:
            return False
        for p in range(self.n + 1):
            e = Echelon()
            for v in self.independence_frame[:p]:
                e.add(v)
            if any(not e.contains(v) for v in flag.vectors[:p]):
                return False
        return True


def tableau(phi, split):
    """The pi-linear part of phi as {J: row over complement coordinates}.

    J is a tuple of independence positions (1-based).  Terms with two or more
    pi factors are discarded; a nonzero pure-w part means E is not integral.
    """
    n = split.n
    out = {}
    for key, c in split.expand(phi).terms.items():
        pis = [k for k, i in enumerate(key) if i > n]
        if not pis:
            raise MalformedExpansionError(
                "generator has a pure independence term %s*%s; E is not integral"
                % (c, key))
        if len(pis) > 1:
            continue
        k = pis[0]
        a = key[k] - n
        J = key[:k] + key[k + 1:]
        row = out.setdefault(J, {})
        x = row.get(a - 1, 0) + (-c if k % 2 else c)
        if x:
            row[a - 1] = x
        else:
            row.pop(a - 1, None)
    return {J: row for J, row in out.items() if row}


def tableau_rows(gs, split):
    """All (sup J, row) pairs from the generators, in generator order."""
    rows = []
    for g in gs.resolved:
        for J, row in tableau(g, split).items():
            rows.append((max(J) if J else 0, row))
    return rows


def tableau_characters(gs, split, flag=None):
    if flag is not None and not split.adapted(flag):
        raise ValueError("flag is not adapted to the coframe split")
    if not is_integral(split.element(), gs):
        raise NotIntegralError("annihilator of the complement forms is not integral")
    rows = sorted(tableau_rows(gs, split), key=lambda t: t[0])
    e = Echelon()
    out = []
    i = 0
    for p in range(split.n):
        while i < len(rows) and rows[i][0] <= p:
            e.add(rows[i][1])
            i += 1
        out.append(e.rank)
    return out


def polar_codims(flag, gs):
    n = len(flag)
    if not is_integral(flag.element(n), gs):
        raise NotIntegralError("flag is not integral")
    return [gs.dim - len(polar_space(flag.element(k), gs)) for k in range(n)]


def _contract(g, vectors):
    for v in vectors:
        g = interior_product(v, g)
    return g


def complete_basis(E):
    """Greedy completion of E's basis by standard basis vectors."""
    e = Echelon()
    for v in E.basis:
        e.add(v)
    out = []
    for i in range(E.ambient):
        v = tuple(Fraction(int(k == i)) for k in range(E.ambient))
        if e.add(v):
            out.append(v)
    return out


def tangent_system(E, gs, complement=None):
    """Rows of the first-order conditions on the t_ai (column a*n + i)."""
    if not is_integral(E, gs):
        raise NotIntegralError("tangent codimension needs an integral element")
    n = E.dim
    comp = complete_basis(E) if complement is None else [tuple(as_fraction(x) for x in f)
                                                         for f in complement]
    if len(comp) + n != E.ambient or rank(list(E.basis) + comp) != E.ambient:
        raise ValueError("complement does not complete E to a basis")
    rows = []
    for g in gs.resolved:
        d = g.degree
        if d > n or not g:
            continue
        for S in combinations(range(n), d):
            row = {}
            for j, i in enumerate(S):
                others = [E.basis[k] for k in S if k != i]
                lin = _contract(g, others)
                sign = -1 if (d - 1 - j) % 2 else 1
                for a, f in enumerate(comp):
                    x = evaluate(lin, [f])
                    if x:
                        col = a * n + i
                        y = row.get(col, 0) + sign * x
                        if y:
                            row[col] = y
                        else:
                            row.pop(col, None)
            if row:
                rows.append(row)
    return rows


def tangent_codim(E, gs, complement=None):
    """Codimension of the linearised integral-element variety at E."""
    return rank(tangent_system(E, gs, complement))


@dataclass
class CharacterReport:
    c: list
    polar_dims: list
    sum_c: int
    tangent_codim: int
    verdict: str
    ambient_dim: int
    tableau_c: Optional[list] = None
    notes: list = field(default_factory=list)

    def to_dict(self):
        d = asdict(self)
        if d["tableau_c"] is None:
            del d["tableau_c"]
        return d


def cartan_verdict(flag, gs, split=None):
    if any(g.degree == 0 for g in gs.generators):
        raise ValueError("Cartan's test excludes 0-form generators")
    c = polar_codims(flag, gs)
    polar_dims = [gs.dim - x for x in c]
    notes = []
    tab = None
    complement = None
    if split is not None:
        tab = tableau_characters(gs, split, flag)
        complement = split.complement_frame
    top = flag.element(len(flag))
    tc = tangent_codim(top, gs, complement)
    total = sum(c)
    if tab is not None and tab != c:
        verdict = INCONCLUSIVE
        notes.append("tableau characters %s disagree with polar characters %s" % (tab, c))
    elif tc == total:
        verdict = ORDINARY
    elif tc > total:
        verdict = NOT_ORDINARY
    else:
        verdict = NOT_ORDINARY
        notes.append("linearised codimension %d below the Cartan bound %d; "
                     "is the system closed?" % (tc, total))
    return CharacterReport(c=c, polar_dims=polar_dims, sum_c=total, tangent_codim=tc,
                           verdict=verdict, ambient_dim=gs.dim, tableau_c=tab, notes=notes)
