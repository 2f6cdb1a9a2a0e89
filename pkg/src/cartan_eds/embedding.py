"""The local isometric embedding system, built and certified at one point.

Ambient coframe on M x F_m(E^N), in this order:

    eta{i}            coframe of M                         (m)
    w{i}              tangential translation forms         (m)
    w{a}              normal translation forms             (N - m)
    w{i}_{j}, i<j     tangential rotation forms            (m(m-1)/2)
    w{a}_{i}          mixed rotation forms                 (m(N - m))

Auxiliary 1-forms:

    eta{i}_{j}, i<j   Levi-Civita forms of M: zero at the point (normal
                      gauge), differential 1/2 sum R_ijkl eta_k ^ eta_l
    w{a}_{b}, a<b     normal rotation forms, which are not coframe members
                      of F_m(E^N); zero at the point unless a gauge
                      perturbation is supplied

d on the frame-bundle part is the flat Maurer-Cartan system
d w_mu = -sum w_mu,nu ^ w_nu, d w_mu,nu = -sum w_mu,lam ^ w_lam,nu.

The ideal is generated by alpha_i = w_i - eta_i, w_a and
beta_ij = w_ij - eta_ij, closed under d.  With
pi_ai = w_ai - sum_j h_aij w_j, the 1-forms (w_i | alpha, w_a, beta, pi)
form the adapted coframe, and the candidate element E_m is the common
kernel of the second group.
"""

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations

from ._rng import SplitMix64
from .cartan import CoframeSplit, cartan_verdict, tableau
from .cartan_lemma import solve as cartan_solve
from .curvature import (RiemannTensor, SecondFundamentalForm, dim_Km, gauss_map, in_H,
                        validate)
from .exterior import Coframe, Form, StructureDifferential, resolve, wedge
from .ideal import Flag, GeneratorSet, close, is_integral, restrict
from .linalg import Echelon


class CertificationError(AssertionError):
    pass


def threshold_ok(m, N):
    return m >= 2 and N - m >= m * (m - 1) // 2


def ambient_dim(m, N):
    return m + N * (m + 1) - m * (m + 1) // 2


def _names(m, N):
    names = ["eta%d" % i for i in range(1, m + 1)]
    names += ["w%d" % mu for mu in range(1, N + 1)]
    names += ["w%d_%d" % (i, j) for i, j in combinations(range(1, m + 1), 2)]
    names += ["w%d_%d" % (a, i) for a in range(m + 1, N + 1) for i in range(1, m + 1)]
    aux = ["eta%d_%d" % (i, j) for i, j in combinations(range(1, m + 1), 2)]
    aux += ["w%d_%d" % (a, b) for a, b in combinations(range(m + 1, N + 1), 2)]
    return names, aux


@dataclass
class BcjsSystem:
    m: int
    N: int
    R: RiemannTensor
    h: SecondFundamentalForm
    coframe: Coframe
    sd: StructureDifferential
    one_forms: dict
    ideal: GeneratorSet
    families: dict
    flag: Flag
    split: CoframeSplit
    gauge: dict = field(default_factory=dict)

    @property
    def ambient_dim(self):
        return self.coframe.dim

    @property
    def step6_forms(self):
        """The s one-forms annihilating E_m: alpha, w_a, beta, pi."""
        f = self.one_forms
        return f["alpha"] + f["omega_a"] + f["beta"] + f["pi"]

    def top_element(self):
        return self.flag.element(self.m)


def build(m, N, R, h, gauge=None):
    """Assemble the closed system, adapted coframe and flag for (R, h)."""
    if m < 2:
        raise ValueError("need m >= 2")
    if not threshold_ok(m, N):
        raise ValueError("need N >= m(m+1)/2 = %d for m = %d (got N = %d)"
                         % (m * (m + 1) // 2, m, N))
    if R.m != m or (h.m, h.N) != (m, N):
        raise ValueError("R or h has the wrong dimensions")
    if not R.exact or not h.exact:
        raise ValueError("the system is built from exact R and h")
    if not validate(R):
        raise ValueError("R does not have the curvature-tensor symmetries")
    names, aux = _names(m, N)
    cf = Coframe(names, aux)
    gauge = dict(gauge or {})

    def w(mu):
        return cf["w%d" % mu]

    def eta(i):
        return cf["eta%d" % i]

    def conn(mu, nu):
        if mu == nu:
            return cf.zero(1)
        if mu > nu:
            return -conn(nu, mu)
        if mu <= m < nu:
            return -cf["w%d_%d" % (nu, mu)]
        return cf["w%d_%d" % (mu, nu)]

    def d_translation(mu):
        out = cf.zero(2)
        for nu in range(1, N + 1):
            out = out - wedge(conn(mu, nu), w(nu))
        return out

    def d_rotation(mu, nu):
        out = cf.zero(2)
        for lam in range(1, N + 1):
            out = out - wedge(conn(mu, lam), conn(lam, nu))
        return out

    basis_d = {}
    for mu in range(1, N + 1):
        basis_d[cf.index("w%d" % mu)] = d_translation(mu)
    for i, j in combinations(range(1, m + 1), 2):
        basis_d[cf.index("w%d_%d" % (i, j))] = d_rotation(i, j)
    for a in range(m + 1, N + 1):
        for i in range(1, m + 1):
            basis_d[cf.index("w%d_%d" % (a, i))] = d_rotation(a, i)

    auxiliaries = {}
    for i, j in combinations(range(1, m + 1), 2):
        omega = cf.zero(2)
        for k, l in combinations(range(1, m + 1), 2):
            c = R.component(i, j, k, l)
            if c:
                omega = omega + c * wedge(eta(k), eta(l))
        auxiliaries["eta%d_%d" % (i, j)] = (cf.zero(1), omega)
    for a, b in combinations(range(m + 1, N + 1), 2):
        value = gauge.get((a, b), cf.zero(1))
        auxiliaries["w%d_%d" % (a, b)] = (value, d_rotation(a, b))
    sd = StructureDifferential(cf, basis_d, auxiliaries)

    pairs = list(combinations(range(1, m + 1), 2))
    alpha = [w(i) - eta(i) for i in range(1, m + 1)]
    omega_a = [w(a) for a in range(m + 1, N + 1)]
    beta = [conn(i, j) - cf["eta%d_%d" % (i, j)] for i, j in pairs]
    pi = []
    for a in range(m + 1, N + 1):
        for i in range(1, m + 1):
            f = cf["w%d_%d" % (a, i)]
            for j in range(1, m + 1):
                f = f - h.component(a, i, j) * w(j)
            pi.append(f)
    one_forms = {"alpha": alpha, "omega_a": omega_a, "beta": beta, "pi": pi}

    pfaff = alpha + omega_a + beta
    ideal = close(GeneratorSet(cf, pfaff, sd))
    k = len(pfaff)
    if len(ideal) != 2 * k:
        raise AssertionError("a generator of the system has vanishing differential")
    ma, mo = len(alpha), len(omega_a)
    families = {
        "alpha": list(range(0, ma)),
        "omega_a": list(range(ma, ma + mo)),
        "beta": list(range(ma + mo, k)),
        "d_alpha": list(range(k, k + ma)),
        "d_omega_a": list(range(k + ma, k + ma + mo)),
        "d_beta": list(range(k + ma + mo, 2 * k)),
    }

    split = CoframeSplit([w(i) for i in range(1, m + 1)],
                         [resolve(f, sd) for f in pfaff + pi])
    n = cf.dim
    vectors = []
    for p in range(1, m + 1):
        v = [Fraction(0)] * n
        v[cf.index("eta%d" % p) - 1] = Fraction(1)
        v[cf.index("w%d" % p) - 1] = Fraction(1)
        for a in range(m + 1, N + 1):
            for i in range(1, m + 1):
                v[cf.index("w%d_%d" % (a, i)) - 1] = h.component(a, i, p)
        vectors.append(tuple(v))
    flag = Flag(vectors, n)
    if not split.adapted(flag):
        raise AssertionError("flag vectors are not dual to the adapted coframe")
    return BcjsSystem(m=m, N=N, R=R, h=h, coframe=cf, sd=sd, one_forms=one_forms,
                      ideal=ideal, families=families, flag=flag, split=split, gauge=gauge)


def gauss_residual(sys):
    return gauss_map(sys.h) - sys.R


def top_is_integral(sys):
    return is_integral(sys.top_element(), sys.ideal)


def characters_closed_form(m, N):
    return [N + m * (m - 1) // 2 + (N - m) * p + m * p * (m - p) // 2 for p in range(m)]


def sum_c_closed_form(m, N):
    return N * m * (m + 1) // 2 + m * m * (m * m - 1) // 12


@dataclass
class DimsReport:
    m: int
    N: int
    dim_M: int
    dim_Fm: int
    dim_H: int
    dim_Km: int
    dim_Z: int
    dim_grassmannian: int
    grassmannian_codim: int
    sum_c_closed_form: int

    def to_dict(self):
        return asdict(self)


def dims_report(m, N):
    dim_fm = N * (m + 1) - m * (m + 1) // 2
    dim_h = (N - m) * m * (m + 1) // 2
    dk = dim_Km(m)
    dim_z = m + dim_fm + dim_h - dk
    # G_m(T(M x U)): m-planes in each tangent space, times the base dimension
    dim_g = m * dim_fm + dim_fm + m
    return DimsReport(m=m, N=N, dim_M=m, dim_Fm=dim_fm, dim_H=dim_h, dim_Km=dk, dim_Z=dim_z,
                      dim_grassmannian=dim_g, grassmannian_codim=dim_g - dim_z,
                      sum_c_closed_form=sum_c_closed_form(m, N))


def _expect(what, got, want):
    if got != want:
        raise CertificationError("%s: computed %s, expected %s" % (what, got, want))


def certify(sys):
    """Run Cartan's test on the flag and check every count against its closed form."""
    residual = gauss_residual(sys)
    if not residual.is_zero():
        raise CertificationError("Gauss equation fails: gamma(h) - R = %s" % residual.entries())
    if not in_H(sys.h):
        raise CertificationError("h is not in H")
    report = cartan_verdict(sys.flag, sys.ideal, sys.split)
    dims = dims_report(sys.m, sys.N)
    _expect("characters", report.c, characters_closed_form(sys.m, sys.N))
    _expect("tableau characters", report.tableau_c, report.c)
    _expect("sum of characters", report.sum_c, dims.sum_c_closed_form)
    _expect("linearised codimension", report.tangent_codim, report.sum_c)
    _expect("grassmannian codimension", dims.grassmannian_codim, report.sum_c)
    _expect("verdict", report.verdict, "ordinary")
    return report, dims


@dataclass
class Step6Row:
    p: int
    counts: list
    formulas: list
    total: int

    def to_dict(self):
        return asdict(self)


def step6_formulas(m, N, p):
    return [m, N - m, m * (m - 1) // 2, (N - m) * p,
            p * (m - p) * (m - p - 1) // 2 + p * (p + 1) * (m - p) // 2]


def step6_table(sys, check=True):
    """Incremental ranks of the five 1-form families along the flag."""
    gens = sys.ideal.resolved
    fam = sys.families

    def rows(names, p):
        out = []
        for name in names:
            for g in fam[name]:
                for J, row in tableau(gens[g], sys.split).items():
                    if (max(J) if J else 0) <= p:
                        out.append(row)
        return out

    table = []
    for p in range(sys.m):
        e = Echelon()
        counts = []
        for group in (["alpha"], ["omega_a"], ["beta"], ["d_alpha", "d_omega_a"], ["d_beta"]):
            before = e.rank
            for row in rows(group, p):
                e.add(row)
            counts.append(e.rank - before)
        formulas = step6_formulas(sys.m, sys.N, p)
        if check:
            for k, (got, want) in enumerate(zip(counts, formulas)):
                if got != want:
                    raise CertificationError("step-6 row %d at p=%d: rank %d, formula %d "
                                             "(h not generic enough?)" % (k + 1, p, got, want))
        table.append(Step6Row(p=p, counts=counts, formulas=formulas, total=sum(counts)))
    return table


def recover_h(sys):
    """Cartan's lemma on the restriction to E_m: sum_i w_ai ^ w_i = 0 there."""
    E = sys.top_element()
    cf = sys.coframe
    omega = [restrict(cf["w%d" % i], E) for i in range(1, sys.m + 1)]
    out = []
    for a in range(sys.m + 1, sys.N + 1):
        theta = [restrict(cf["w%d_%d" % (a, i)], E) for i in range(1, sys.m + 1)]
        out.append(cartan_solve(theta, omega))
    return out


@dataclass
class GaugeCheck:
    ok: bool
    diff: dict

    def __bool__(self):
        return self.ok


def random_gauge(sys, seed, bound=2):
    rng = SplitMix64(seed)
    cf = sys.coframe
    out = {}
    for a, b in combinations(range(sys.m + 1, sys.N + 1), 2):
        while True:
            terms = {(i,): rng.randint(-bound, bound) for i in range(1, cf.dim + 1)}
            f = Form(cf, 1, terms)
            if f:
                break
        out[(a, b)] = f
    return out


def gauge_invariance_check(sys, seed):
    """Report is unchanged when the normal rotation forms get random values."""
    base = cartan_verdict(sys.flag, sys.ideal, sys.split).to_dict()
    other = build(sys.m, sys.N, sys.R, sys.h, gauge=random_gauge(sys, seed))
    new = cartan_verdict(other.flag, other.ideal, other.split).to_dict()
    diff = {k: (base[k], new.get(k)) for k in base if base[k] != new.get(k)}
    return GaugeCheck(ok=not diff, diff=diff)


@dataclass
class ConformalReport:
    m: int
    n: int
    bound: int
    satisfied: bool
    deficit: int
    pfaffian_count: int

    def to_dict(self):
        return asdict(self)


def conformal_threshold(m, n):
    if m < 2:
        raise ValueError("need m >= 2")
    bound = m * (m + 1) // 2 - 1
    return ConformalReport(m=m, n=n, bound=bound, satisfied=n >= bound,
                           deficit=max(0, bound - n), pfaffian_count=m + max(0, n - m))
