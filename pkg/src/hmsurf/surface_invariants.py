"""Surface-level invariants of Z(N,r) and of the symmetric quotient W(N,r).

All arithmetic is exact.  Half-integers are carried as ``Fraction`` and only
converted to ``int`` after an integrality assertion.
"""

import csv
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import gcd, prod

from .arith import divisors, euler_phi, h, inverse_mod, prime_divisors, rho, units, valuation
from .gl2 import involution_families
from .hj_resolution import SingularityType, fiber_multiplicities, hj_expansion
from .modular_curves import (CurveSignature, WeylQuantities, c_infty_self_intersection,
                             fricke_fixed_count, fricke_on_cusp, weyl_family_signature, x0_cusps,
                             x0_invariants, x0plus_is_rational, x1_genus)


class DataError(LookupError):
    """Base data (p_g and K^2 of the resolved surface) is not available."""


def _int(x, what):
    x = Fraction(x)
    if x.denominator != 1:
        raise ArithmeticError(f"{what} = {x} is not an integer")
    return int(x)


# --- levels -------------------------------------------------------------------

@dataclass(frozen=True)
class Level:
    N: int
    r: int
    raw_r: int = field(default=None, compare=False)

    def __post_init__(self):
        N, r = self.N, self.r
        if N < 2:
            raise ValueError(f"level must be at least 2, got {N}")
        if gcd(N, r) != 1:
            raise ValueError(f"r = {r} is not a unit mod {N}")
        least = min((x * x * r) % N for x in units(N))
        if self.raw_r is None:
            object.__setattr__(self, "raw_r", r)
        object.__setattr__(self, "r", least if N > 1 else 1)

    @property
    def k(self):
        return valuation(self.N, 2)

    @property
    def M(self):
        return self.N >> self.k

    @property
    def normalized(self):
        return self.raw_r % self.N != self.r

    def __str__(self):
        return f"({self.N},{self.r})"


def square_classes(N):
    """Least representatives of the unit square classes mod N."""
    return sorted({min((x * x * r) % N for x in units(N)) for r in units(N)})


def _ind_div(d, N):
    return 1 if N % d == 0 else 0


def _ind_exact(d, N):
    """1 if d exactly divides N, d a prime power: v_p(N) = v_p(d)."""
    p = prime_divisors(d)[0]
    return 1 if valuation(N, p) == valuation(d, p) else 0


# --- singularities -------------------------------------------------------------

@dataclass(frozen=True)
class SingularityCensus:
    at_1728: int
    at_0: tuple
    at_infty: tuple

    def all_points(self):
        out = [(SingularityType(2, 1), Fraction(self.at_1728))]
        out += [(SingularityType(3, q), Fraction(c)) for q, c in self.at_0]
        out += [(SingularityType(d, q), Fraction(c)) for (d, q), c in self.at_infty]
        return out


def singularity_census(level):
    N, r = level.N, level.r
    e0 = h(3 * N * N)
    if N % 3:
        at0 = ((1, Fraction(e0, 2)), (2, Fraction(e0, 2)))
    else:
        at0 = ((r % 3, Fraction(e0)),)
    inf = []
    for d in divisors(N)[1:]:
        for q in units(d):
            c = Fraction(rho(d, q * r) * euler_phi(N // d), 2)
            if c:
                inf.append(((d, q), c))
    return SingularityCensus(h(4 * N * N), at0, tuple(inf))


def _chain_corrections(d, q):
    """(K^2 correction, Euler number correction) of one (d,q) point.

    The local canonical cycle sum a_i E_i solves (sum a_i E_i).E_j = c_j - 2,
    a tridiagonal system handled by forward elimination.
    """
    c = hj_expansion(d, q).coefficients
    n = len(c)
    diag = [Fraction(-x) for x in c]
    rhs = [Fraction(x - 2) for x in c]
    for i in range(1, n):
        w = Fraction(1) / diag[i - 1]
        diag[i] -= w
        rhs[i] -= w * rhs[i - 1]
    a = [Fraction(0)] * n
    a[-1] = rhs[-1] / diag[-1]
    for i in range(n - 2, -1, -1):
        a[i] = (rhs[i] - a[i + 1]) / diag[i]
    k2 = sum(ai * (ci - 2) for ai, ci in zip(a, c))
    return k2, n + 1 - Fraction(1, d)


def quotient_invariants(level):
    """(p_g, K^2) of the minimal resolution, from the X(N) x X(N) quotient.

    K^2 and e of the smooth surface X(N) x X(N) divided by |SL_2(Z/N)/+-1|,
    corrected point by point over the quotient singularities; p_g from Noether.
    """
    N = level.N
    if N < 3:
        raise ValueError("needs N >= 3")
    G = Fraction(N**3, 2) * prod(1 - Fraction(1, p * p) for p in prime_divisors(N))
    g = 1 + G * (N - 6) / (12 * N)
    K2 = 8 * (g - 1) ** 2 / G
    e = 4 * (g - 1) ** 2 / G
    for sing, cnt in singularity_census(level).all_points():
        if cnt and sing.d > 1:
            dk, de = _chain_corrections(sing.d, sing.q)
            K2 += cnt * dk
            e += cnt * de
    chi = (K2 + e) / 12
    return _int(chi - 1, "p_g"), _int(K2, "K^2")


# --- base data ---------------------------------------------------------------------

_BASE = None


def _read_base(stream):
    out = {}
    for row in csv.DictReader(stream):
        out[(int(row["N"]), int(row["r"]))] = (int(row["pg_Z"]), int(row["c1sq_Z"]))
    return out


def load_base_data(path=None):
    if path is not None:
        with open(path, newline="") as fh:
            return _read_base(fh)
    global _BASE
    if _BASE is None:
        ref = resources.files("hmsurf") / "data" / "base_invariants.csv"
        with ref.open(newline="") as fh:
            _BASE = _read_base(fh)
    return _BASE


def base_data(level, override=None):
    """(p_g, K^2) of the resolved surface, bundled for 6 <= N <= 33."""
    table = dict(load_base_data())
    if override is not None:
        table.update(override if isinstance(override, dict) else load_base_data(override))
    key = (level.N, level.r)
    if key not in table:
        raise DataError(f"no base data for {level}: p_g and K^2 of the resolved surface come "
                        "from the Kani-Schanz formulas and are bundled only for 6 <= N <= 33; "
                        "pass an override file")
    return table[key]


# --- classification lists -----------------------------------------------------------

EK_TAGS = {-1: "rational", 0: "blown_up_elliptic_K3", 1: "properly_elliptic", 2: "general_type"}


@dataclass(frozen=True)
class EKClass:
    tag: str

    def __post_init__(self):
        if self.tag not in EK_TAGS.values():
            raise ValueError(f"unknown class {self.tag}")

    @property
    def kappa(self):
        return {v: k for k, v in EK_TAGS.items()}[self.tag]

    def __str__(self):
        return self.tag


def kappa_from_pg(pg):
    return -1 if pg == 0 else min(2, pg - 1)


def _kappa_Z_listed(N, r):
    if N <= 5 or (N, r) in {(6, 1), (7, 1), (8, 1)}:
        return -1
    if (N, r) in {(6, 5), (7, 3), (8, 3), (8, 5), (9, 1), (12, 1)}:
        return 0
    if (N, r) in {(8, 7), (9, 2), (10, 1), (10, 3), (11, 1)}:
        return 1
    return 2


_W_RATIONAL = {(15, 1), (15, 2), (15, 11), (16, 1), (16, 3), (16, 7), (18, 5), (20, 11), (24, 23)}
_W_K3 = {(16, 5), (18, 1), (20, 1), (20, 3), (21, 2)}
_W_ELLIPTIC = {(15, 7), (21, 5), (22, 1), (24, 11)}
_W_GENERAL = {(20, 13), (21, 1), (21, 10), (22, 7)}


def _kappa_W_listed(N, r):
    if N <= 14 or (N, r) in _W_RATIONAL:
        return -1
    if N == 17 or (N, r) in _W_K3:
        return 0
    if N == 19 or (N, r) in _W_ELLIPTIC:
        return 1
    if N >= 23 or (N, r) in _W_GENERAL:
        return 2
    raise ValueError(f"{(N, r)} is not covered by the classification")


def _pg_or_none(fn, level):
    try:
        return fn(level)
    except DataError:
        return None


def classify_Z(level, check=True):
    """Enriques-Kodaira class of Z(N,r) from the explicit lists, checked against p_g."""
    kappa = _kappa_Z_listed(level.N, level.r)
    if check:
        pg = _pg_or_none(lambda L: base_data(L)[0], level)
        if pg is not None and kappa_from_pg(pg) != kappa:
            raise AssertionError(f"classification list and p_g disagree for Z{level}")
    return EKClass(EK_TAGS[kappa])


def classify_W(level, check=True):
    """Enriques-Kodaira class of W(N,r) from the explicit lists, checked against p_g."""
    kappa = _kappa_W_listed(level.N, level.r)
    if check:
        pg = _pg_or_none(pg_W, level)
        if pg is not None and kappa_from_pg(pg) != kappa:
            raise AssertionError(f"classification list and p_g disagree for W{level}")
    return EKClass(EK_TAGS[kappa])


def z_is_rational(level):
    return _kappa_Z_listed(level.N, level.r) == -1


# --- fixed locus ---------------------------------------------------------------------

@dataclass(frozen=True)
class FixedLocusComponent:
    family: str
    multiplier: int
    signature: object
    k_dot: Fraction
    in_support_S: bool

    @property
    def genus(self):
        return self.signature.genus


def _k_dot(level, family):
    k, M, r = level.k, level.M, level.r
    w = WeylQuantities.of(M, r)
    mu, ei, e3 = w.mu_plus, w.einf_plus, w.e3_plus
    if family == "weyl":
        return mu / 3 - 2 * ei - e3 / 3
    if family == "(I,weyl)":
        return mu / 3 - ei - e3 / 3
    if family == "(antidiag,weyl)":
        if k == 1:
            return mu - 3 * ei
        return 2 ** (2 * k - 2) * mu - 3 * 2 ** (k - 1) * ei
    if family in ("(ns,weyl)", "(omega ns,weyl)"):
        return Fraction(2 ** (2 * k - 3), 3) * mu - 2 ** (k - 2) * ei - Fraction(2, 3) * e3
    if family in ("(s,weyl)", "(omega s,weyl)"):
        return 2 ** (2 * k - 3) * mu - 3 * 2 ** (k - 2) * ei
    raise ValueError(family)


_X1 = CurveSignature(1, 1, 1, 1, 0)
_X0_2 = CurveSignature(3, 1, 0, 2, 0)


def fixed_locus(level):
    """Components of the one-dimensional fixed locus of the swap involution."""
    out = []
    for fam, lam in involution_families(level.N, level.r):
        if fam == "I":
            # graph of lambda, a copy of X(1); not in S
            out.append(FixedLocusComponent(fam, lam, _X1, None, False))
        elif fam == "(borel,I)":
            out.append(FixedLocusComponent(fam, lam, _X0_2, None, False))
        else:
            sig = weyl_family_signature(level.N, level.r, fam)
            kd = _int(_k_dot(level, fam), f"K.F for {fam} on {level}")
            out.append(FixedLocusComponent(fam, lam, sig, kd, True))
    return out


# --- err_N(m) and cusp incidence ------------------------------------------------------

@dataclass(frozen=True)
class ErrTerm:
    n: int
    q: int
    k: int
    s: int
    t: int

    @property
    def value(self):
        g = gcd(self.s, self.t)
        return euler_phi(g) * ((self.s + self.t) // g - 1)


def err_terms(N, m):
    out = []
    for n in divisors(m):
        if gcd(n, N) != 1:
            raise ArithmeticError(f"n = {n} is not a unit mod {N}")
        q = (m * inverse_mod(n * n, N)) % N or N
        fc = fiber_multiplicities(N, SingularityType(N, q))
        a, b = fc.mult_j, fc.mult_jprime
        x = Fraction(m, n * n)
        ks = [i for i in range(1, len(a))
              if (b[i - 1] == 0 or Fraction(a[i - 1], b[i - 1]) > x)
              and Fraction(a[i], b[i]) <= x]
        assert len(ks) == 1, (N, m, n, ks)
        i = ks[0]
        det = a[i] * b[i - 1] - a[i - 1] * b[i]
        s = Fraction((m // n) * b[i - 1] - n * a[i - 1], det)
        t = Fraction(n * a[i] - (m // n) * b[i], det)
        assert s.denominator == 1 and t.denominator == 1 and s > 0 and t >= 0, (N, m, n, s, t)
        out.append(ErrTerm(n, q, i, int(s), int(t)))
    return out


def err(N, m):
    """The correction err_N(m) to K.F~_m for curves meeting D_inf with multiplicity."""
    if N == 1:
        return 0
    return sum(t.value for t in err_terms(N, m))


@dataclass(frozen=True)
class CuspIncidence:
    cusp: object
    chain: tuple
    q: int
    solutions: tuple

    @property
    def unique(self):
        return len(self.solutions) == 1

    @property
    def components(self):
        if not self.unique:
            return ()
        return tuple(i for i, x in enumerate(self.solutions[0]) if x)


def _nonneg_solutions(a, b, u, v):
    """All x >= 0 with sum a_i x_i = u and sum b_i x_i = v."""
    n = len(a)
    out = []

    def rec(i, ru, rv, acc):
        if i == n:
            if ru == 0 and rv == 0:
                out.append(tuple(acc))
            return
        top = min(ru // a[i] if a[i] else rv, rv // b[i] if b[i] else ru)
        for x in range(top + 1):
            acc.append(x)
            rec(i + 1, ru - x * a[i], rv - x * b[i], acc)
            acc.pop()

    rec(0, u, v, [])
    return out


def fm_cusp_incidence(level, m):
    """Where each cusp of X_0(m) lands on the resolution chains over (inf, inf)."""
    N, r = level.N, level.r
    if gcd(m, N) != 1 or rho(N, m * r) == 0:
        raise ValueError(f"m = {m} needs gcd(m,N) = 1 and m r a square mod {N}")
    out = []
    for cusp in x0_cusps(m):
        n = cusp.d
        q = (m * inverse_mod(n * n, N)) % N
        fc = fiber_multiplicities(N, SingularityType(N, q))
        sols = _nonneg_solutions(fc.mult_j, fc.mult_jprime, cusp.width,
                                 fricke_on_cusp(cusp).width)
        if not sols:
            raise ArithmeticError(f"no multiplicity vector for cusp {cusp} of X_0({m}) on {level}")
        out.append(CuspIncidence(cusp, fc.chain.coefficients, q, tuple(sols)))
    return out


def fm_smoothness_obstructions(level, m):
    """Candidate CM data (D, a, b) at which F~_{m,lambda} could be singular."""
    N = level.N
    out = []
    bmax = 2 * m
    for b in range(N, bmax + 1, N):
        for sb in (b, -b):
            for a in range(0, 2 * m):
                rest = 4 * m * m - a * a
                if rest <= 0 or rest % (b * b):
                    continue
                D = rest // (b * b)
                if (-D) % 4 == 0:
                    ok = a % 2 == 0 and (a // 2) % N in (1 % N, (N - 1) % N)
                elif (-D) % 4 == 1:
                    ok = (a - sb) % 2 == 0 and ((a - sb) // 2) % N in (1 % N, (N - 1) % N)
                else:
                    ok = False
                if ok:
                    out.append((D, a, sb))
    return sorted(set(out))


# --- isolated fixed points -------------------------------------------------------------

def s21(level):
    N, r = level.N, level.r
    if N % 4:
        return Fraction(h(4 * N * N), 2)
    return Fraction(h(4 * N * N)) if r % 4 == 3 else Fraction(0)


def s32(level):
    N, r = level.N, level.r
    if N % 3:
        return Fraction(h(3 * N * N), 2)
    return Fraction(h(3 * N * N)) if r % 3 == 2 else Fraction(0)


def p_infty_count(level):
    """Isolated fixed points in the resolutions over the cusps."""
    N, r, k, M = level.N, level.r, level.k, level.M
    if k == 0:
        return Fraction(rho(N, r), 2)
    if k == 1:
        return Fraction(rho(M, r), 2)
    if k == 2:
        return Fraction(rho(M, r))
    occ = 0
    if r % 8 == 1:
        occ += rho(M, r)
        if k >= 4:
            occ += rho(M, r)
    if k == 3 and r % 8 == 5:
        occ += rho(M, r)
    return Fraction(2 * occ)


@dataclass(frozen=True)
class FixedPointCensus:
    components: tuple
    p1: Fraction
    p2: Fraction
    p3: Fraction
    p_infty: Fraction
    s21: Fraction
    s32: Fraction

    @property
    def isolated(self):
        return self.p1 + self.p2 + self.p3 + self.p_infty


def fixed_point_census(level):
    N, r = level.N, level.r
    return FixedPointCensus(
        tuple(fixed_locus(level)),
        Fraction(rho(N, r), 2),
        Fraction(rho(N, 2 * r)) if N % 2 else Fraction(0),
        Fraction(rho(N, 3 * r), 2),
        p_infty_count(level),
        s21(level),
        s32(level),
    )


# --- blow-down deltas, p_g(W), K_W^2 ------------------------------------------------------

def blowdown_deltas(level):
    """(Delta K^2, Delta K.F) between the resolved surface and its blow-down Z°."""
    if z_is_rational(level):
        raise ValueError(f"Z~{level} is rational")
    N, r, k, M = level.N, level.r, level.k, level.M
    if k == 0:
        a = 2 * rho(N, r) + rho(N, 2 * r) + Fraction(rho(N, 3 * r), 2)
        b = Fraction(3, 2) * rho(N, r) + rho(N, 2 * r) + Fraction(rho(N, 3 * r), 2)
        return a, b
    if k == 1:
        return 3 * rho(M, r) + Fraction(rho(M, 3 * r), 2), 2 * rho(M, r) + Fraction(rho(M, 3 * r), 2)
    if k == 2:
        if r % 4 == 1:
            return Fraction(5 * rho(M, r)), Fraction(3 * rho(M, r))
        v = rho(M, r) + rho(M, 3 * r)
        return Fraction(v), Fraction(v)
    r8 = r % 8
    if r8 == 3:
        return Fraction(2 * rho(M, 3 * r)), Fraction(2 * rho(M, 3 * r))
    if r8 == 1:
        return (Fraction(10 * rho(M, r)), Fraction(6 * rho(M, r))) if k == 3 else \
            (Fraction(12 * rho(M, r)), Fraction(8 * rho(M, r)))
    if r8 == 5 and k == 3:
        return Fraction(2 * rho(M, r)), Fraction(2 * rho(M, r))
    return Fraction(0), Fraction(0)


def _support(level):
    return [c for c in fixed_locus(level) if c.in_support_S]


def _pg_W_cases(level, pgZ):
    """Closed-form 2 p_g(W), case by case on (k, r mod 8)."""
    N, r, k, M = level.N, level.r, level.k, level.M
    w = WeylQuantities.of(M, r)
    mu, ei = w.mu_plus, w.einf_plus
    R = lambda x: rho(M, x)  # noqa: E731
    F = Fraction
    if k == 0:
        inner = F(3, 2) * rho(N, r) + rho(N, 2 * r) + F(2, 3) * rho(N, 3 * r) - mu / 3 + 2 * ei
    elif k == 1:
        inner = 2 * R(r) + F(2, 3) * R(3 * r) - F(4, 3) * mu + 4 * ei
    elif k == 2 and r % 4 == 1:
        inner = 3 * R(r) + 6 * ei - 4 * mu
    elif k == 2:
        inner = R(r) + F(4, 3) * R(3 * r) + 10 * ei - F(20, 3) * mu
    elif r % 8 == 1:
        inner = (6 if k == 3 else 8) * R(r) + 3 * 2 ** (k - 1) * ei - 2 ** (2 * k - 2) * mu
    elif r % 8 == 3:
        inner = F(8, 3) * R(3 * r) + 2 ** (k + 1) * ei - F(2 ** (2 * k), 3) * mu
    elif r % 8 == 5:
        inner = (2 * R(r) if k == 3 else 0) + 3 * 2 ** (k - 1) * ei - 2 ** (2 * k - 2) * mu
    else:
        # 3 * 2^k, the sum over s, omega s and antidiag; 2^(k+1) undercounts
        inner = 3 * 2**k * ei - 2 ** (2 * k - 1) * mu
    return pgZ + inner / 4 - 1


def pg_W(level, override=None):
    """Geometric genus of W(N,r)."""
    if z_is_rational(level):
        return 0
    pgZ, _ = base_data(level, override)
    _, dkf = blowdown_deltas(level)
    kf = sum(c.k_dot for c in _support(level))
    twice = pgZ - (kf - dkf) / 4 - 1
    assert twice == _pg_W_cases(level, pgZ), (level, twice, _pg_W_cases(level, pgZ))
    return _int(twice / 2, f"p_g(W{level})")


def _kw_rhs(level):
    N, r, k, M = level.N, level.r, level.k, level.M
    if k == 0:
        return Fraction(13, 2) * rho(N, r) + 4 * rho(N, 2 * r) + 2 * rho(N, 3 * r)
    if k == 1:
        return Fraction(9 * rho(M, r) + 2 * rho(M, 3 * r))
    if k == 2:
        return Fraction(14 * rho(M, r)) if r % 4 == 1 else Fraction(4 * rho(M, r) + 4 * rho(M, 3 * r))
    r8 = r % 8
    if r8 == 1:
        return Fraction((28 if k == 3 else 36) * rho(M, r))
    if r8 == 3:
        return Fraction(8 * rho(M, 3 * r))
    if r8 == 5 and k == 3:
        return Fraction(8 * rho(M, r))
    return Fraction(0)


def two_kf_minus_f2(level):
    """2 K.F - F^2 over the support S, via adjunction."""
    return sum(3 * c.k_dot - 2 * c.genus + 2 for c in _support(level))


def kw_squared(level, override=None):
    """K_W^2 = c_1^2 of W(N,r)."""
    if z_is_rational(level):
        raise ValueError(f"Z~{level} is rational")
    _, k2 = base_data(level, override)
    rhs = _kw_rhs(level)
    dk2, dkf = blowdown_deltas(level)
    assert rhs == dk2 + 3 * dkf, level
    return _int((k2 - two_kf_minus_f2(level) + rhs) / 2, f"K_W^2 on {level}")


def kwbar_dot_cinf(level):
    """K_W-bar . C-bar_inf after contracting the (-1)-curves over the cusps."""
    N, r = level.N, level.r
    c2 = c_infty_self_intersection(N, r)
    kc = 2 * x1_genus(N) - 2 - c2 - Fraction(euler_phi(N), 2)
    corr = Fraction(sum(rho(d, -r) * euler_phi(N // d) for d in divisors(N)[1:]), 2)
    return _int(kc - corr, f"K.C on {level}")


def kw_dot_fm_bound(level, m):
    """Upper bound for K_W . F*_{m,lambda}."""
    N, r = level.N, level.r
    if m < 5:
        raise ValueError("the bound needs m >= 5")
    if gcd(m, N) != 1 or rho(N, m * r) == 0:
        raise ValueError(f"{m}*{r} is not a square mod {N}")
    index, _, nu3, nuinf, _ = x0_invariants(m)
    val = Fraction(index, 3) - nuinf - Fraction(nu3, 3) - err(N, m) - fricke_fixed_count(m)
    return val / 2


def frak_m_terms(level):
    N, r = level.N, level.r
    out = []
    for m in sorted(x for x in (range(5, 72)) if x0plus_is_rational(x)):
        if gcd(m, N) != 1 or rho(N, m * r) == 0:
            continue
        if kw_dot_fm_bound(level, m) <= -1:
            out.append(m)
    return out


def frak_m(level):
    N, r = level.N, level.r
    return Fraction(sum(rho(N, m * r) for m in frak_m_terms(level)), 2)


def k_small_squared(level, override=None):
    """K^2 of the surface obtained from W by contracting the known (-1)-curves."""
    if _kappa_W_listed(level.N, level.r) == -1 or z_is_rational(level):
        raise ValueError(f"W{level} is rational")
    N, r, M = level.N, level.r, level.M
    F = Fraction
    total = F(kw_squared(level, override))
    total += sum(F((d // 2) * rho(d, -r) * euler_phi(N // d), 2) for d in divisors(N)[1:])
    total += s21(level) + s32(level) + F(rho(N, 3 * r), 2) + frak_m(level) + F(rho(N, 5 * r), 2)
    total += F(rho(M, r), 4) * (2 * _ind_exact(2, N) + _ind_exact(4, N) * rho(4, 3 * r)
                                + _ind_exact(8, N) * rho(8, 5 * r) + _ind_div(16, N) * rho(8, r))
    total += _ind_exact(2, N) * rho(M, 2 * r)
    total += F(rho(N, r), 4) * (2 * _ind_exact(4, N) + _ind_div(8, N))
    total += F(_ind_div(2, N), 2) * rho(N, 3 * r)
    if _ind_exact(3, N):
        total += F(rho(N // 3, r), 4) * (4 * rho(3, r) + 5 * rho(3, 2 * r))
    return _int(total, f"K_small^2 on {level}")


# --- rows ----------------------------------------------------------------------------------

@dataclass(frozen=True)
class InvariantRow:
    level: Level
    pg_Z: int
    kappa_Z: int
    pg_W: int
    kwbar_cinf: int
    kw_sq: int
    ksmall_sq: object
    kappa_W: int

    COLUMNS = ("N", "r", "pg_Z", "kappa_Z", "pg_W", "kwbar_cinf", "kw_sq", "ksmall_sq", "kappa_W")

    def as_dict(self):
        return {"N": self.level.N, "r": self.level.r, "pg_Z": self.pg_Z, "kappa_Z": self.kappa_Z,
                "pg_W": self.pg_W, "kwbar_cinf": self.kwbar_cinf, "kw_sq": self.kw_sq,
                "ksmall_sq": self.ksmall_sq, "kappa_W": self.kappa_W}


def invariant_row(level, override=None):
    pgZ, _ = base_data(level, override)
    kz = kappa_from_pg(pgZ)
    assert kz == _kappa_Z_listed(level.N, level.r), level
    pw = pg_W(level, override)
    kw = _kappa_W_listed(level.N, level.r)
    assert kw == kappa_from_pg(pw), (level, pw, kw)
    ks = None if kw == -1 else k_small_squared(level, override)
    return InvariantRow(level, pgZ, kz, pw, kwbar_dot_cinf(level), kw_squared(level, override),
                        ks, kw)
