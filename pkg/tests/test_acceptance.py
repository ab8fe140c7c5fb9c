"""Acceptance criteria, one test each.  Every test prints a PASS/FAIL line."""

import time
from fractions import Fraction
from math import gcd

import pytest

from hmsurf import surface_invariants as si
from hmsurf.arith import divisors, h, units
from hmsurf.gl2 import MAX_ENUM_LEVEL, compare_involution_classes
from hmsurf.hj_resolution import continuant, fiber_multiplicities, hj_expansion
from hmsurf.modular_curves import psi, signature_checks, x0_cusps, x0_invariants
from hmsurf.surface_invariants import Level

from test_modular_curves import I3, _probe
from hmsurf.gl2 import ClassLabel

# pinned tolerances: integer invariants compare exactly, runtimes in seconds
EXACT = 0
TABLE_SECONDS = 5.0
ORACLE_SECONDS = 60.0


@pytest.fixture
def report(capsys):
    def emit(n, ok, what):
        with capsys.disabled():
            print(f"\nAC{n} {'PASS' if ok else 'FAIL'}: {what}")
        assert ok, what
    return emit


def test_ac1_table_reproduction(table, report):
    t0 = time.perf_counter()
    cols = ("pg_W", "kwbar_cinf", "kw_sq", "ksmall_sq", "kappa_W", "kappa_Z")
    bad = []
    for row in table:
        got = si.invariant_row(Level(row["N"], row["r"])).as_dict()
        for c in cols:
            if row[c] is None and c == "ksmall_sq":
                continue
            if abs(got[c] - row[c]) > EXACT:
                bad.append((row["N"], row["r"], c, got[c], row[c]))
    dt = time.perf_counter() - t0
    report(1, not bad and dt < TABLE_SECONDS,
           f"{len(table)} table rows, {len(bad)} mismatches, {dt:.2f}s")


def test_ac2_spot_values(report):
    L = Level(17, 1)
    got = (si.pg_W(L), si.kw_squared(L), si.k_small_squared(L), si.kwbar_dot_cinf(L),
           si.pg_W(Level(24, 23)), si.kwbar_dot_cinf(Level(24, 23)),
           si.k_small_squared(Level(23, 5)))
    report(2, got == (1, -20, -2, 3, 0, 0, 22), f"spot values {got}")


# transcribed independently of the library
W_LISTS = {
    -1: {(15, 1), (15, 2), (15, 11), (16, 1), (16, 3), (16, 7), (18, 5), (20, 11), (24, 23)},
    0: {(16, 5), (18, 1), (20, 1), (20, 3), (21, 2)},
    1: {(15, 7), (21, 5), (22, 1), (24, 11)},
    2: {(20, 13), (21, 1), (21, 10), (22, 7)},
}
Z_LISTS = {
    -1: {(6, 1), (7, 1), (8, 1)},
    0: {(6, 5), (7, 3), (8, 3), (8, 5), (9, 1), (12, 1)},
    1: {(8, 7), (9, 2), (10, 1), (10, 3), (11, 1)},
}


def _w_expected(N, r):
    if N <= 14:
        return -1
    for k, s in W_LISTS.items():
        if (N, r) in s:
            return k
    if N == 17:
        return 0
    if N == 19:
        return 1
    return 2 if N >= 23 else None


def _z_expected(N, r):
    if N <= 5:
        return -1
    for k, s in Z_LISTS.items():
        if (N, r) in s:
            return k
    return 2


def test_ac3_classification(table, report):
    bad = []
    for N in range(2, 34):
        for r in si.square_classes(N):
            L = Level(N, r)
            if si.classify_Z(L).kappa != _z_expected(N, r):
                bad.append(("Z", N, r))
            if N >= 6 and si.classify_W(L).kappa != _w_expected(N, r):
                bad.append(("W", N, r))
    for row in table:
        if si.kappa_from_pg(row["pg_W"]) != row["kappa_W"]:
            bad.append(("kappa", row["N"], row["r"]))
    report(3, not bad, f"classification lists and kappa = min(2, p_g - 1), {len(bad)} mismatches")


def test_ac4_oracle_equivalence(report):
    t0 = time.perf_counter()
    checks = list(signature_checks(21))
    bad = [c for c in checks if not c.ok]
    rows = [
        _probe(ClassLabel("I#", 2, 1), 1, I3) == (2, 0, 2, 1, 0, 1),
        _probe(ClassLabel("borel", 2, 2), 1, I3) == (3, 1, 0, 2, 0, 1),
        _probe(ClassLabel("borel#", 2, 3), 5, I3) == (6, 0, 0, 3, 0, 1),
        _probe(ClassLabel("borel_pl", 2, 3, ell=2), 1, I3) == (6, 0, 0, 3, 0, 2),
        _probe(ClassLabel("borel", 3, 1), 1, ClassLabel("I", 5, 1)) == (4, 0, 1, 2, 0, 2),
        _probe(ClassLabel("ns", 3, 1), 1, ClassLabel("I", 5, 1)) == (6, 2, 0, 2, 0, 1),
        _probe(ClassLabel("s", 3, 1), 2, ClassLabel("I", 5, 1)) == (12, 0, 0, 4, 0, 1),
        _probe(ClassLabel("ns_bar", 3, 1), 2, ClassLabel("I", 5, 1)) == (6, 2, 0, 2, 0, 1),
    ]
    dt = time.perf_counter() - t0
    report(4, not bad and all(rows) and dt < ORACLE_SECONDS,
           f"{len(checks)} signature checks, {len(bad)} mismatches, "
           f"{sum(rows)}/{len(rows)} table rows, {dt:.1f}s")


def test_ac5_involution_classes(report):
    bad = [(N, r) for N in range(2, MAX_ENUM_LEVEL + 1) for r in si.square_classes(N)
           if compare_involution_classes(N, r)]
    report(5, not bad, f"involution classes against enumeration for N <= {MAX_ENUM_LEVEL}, "
           f"{len(bad)} mismatches")


def test_ac6_hj_suite(report):
    ok = all(continuant(hj_expansion(d, q).coefficients) == d
             for d in range(2, 501) for q in units(d))
    ok &= fiber_multiplicities(17, (17, 9)).mult_j == (17, 9, 1, 0)
    ok &= fiber_multiplicities(17, (17, 9)).mult_jprime == (0, 1, 2, 17)
    ok &= fiber_multiplicities(15, (5, 2)).mult_j == (15, 6, 3, 0)
    ok &= fiber_multiplicities(15, (5, 2)).mult_jprime == (0, 3, 9, 15)
    ok &= fiber_multiplicities(16, (16, 5)).mult_j == (16, 5, 4, 3, 2, 1, 0)
    ok &= fiber_multiplicities(16, (16, 5)).mult_jprime == (0, 1, 4, 7, 10, 13, 16)
    for N in range(2, 101):
        for d in divisors(N)[1:]:
            for q in units(d):
                fc = fiber_multiplicities(N, (d, q))
                c, a = fc.chain.coefficients, fc.mult_j
                ok &= (a[0], a[-1]) == (N, 0)
                ok &= all(a[i - 1] + a[i + 1] == c[i - 1] * a[i] for i in range(1, len(c) + 1))
    report(6, bool(ok), "continuants to 500, three multiplicity chains, recurrences to N = 100")


def test_ac7_x0_suite(report):
    ok = x0_invariants(46)[4] == 5
    ok &= sorted(c.width for c in x0_cusps(46)) == [1, 2, 23, 46]
    ok &= h(92) + 3 * h(23) == 12
    ok &= all(sum(c.width for c in x0_cusps(m)) == psi(m) for m in range(1, 301))
    report(7, bool(ok), "X_0(46), h(-92) + 3h(-23) = 12, widths sum to psi(m) for m <= 300")


CASE_PAIRS = [((16, 5), 5), ((16, 5), 21), ((17, 1), 9), ((17, 1), 15), ((17, 1), 16),
              ((17, 1), 21), ((21, 2), 29), ((19, 2), 41), ((19, 1), 49), ((24, 23), 23),
              ((22, 1), 23), ((18, 1), 25), ((20, 1), 21)]


def test_ac8_err_and_incidence(report):
    ok = all(si.err(N, m) == 0 for N in range(2, 41) for m in range(1, N) if gcd(m, N) == 1)
    for pair, m in CASE_PAIRS:
        L = Level(*pair)
        incs = si.fm_cusp_incidence(L, m)
        ok &= sum(i.cusp.width for i in incs) == psi(m)
        for inc in incs:
            fc = fiber_multiplicities(L.N, (L.N, inc.q))
            for sol in inc.solutions:
                ok &= sum(a * x for a, x in zip(fc.mult_j, sol)) == inc.cusp.width
    inc = {(i.cusp.c, i.cusp.d): i for i in si.fm_cusp_incidence(Level(16, 5), 21)}
    ok &= inc[1, 1].components == (0, 1) and inc[1, 7].components == (3,)
    inc = {(i.cusp.c, i.cusp.d): i for i in si.fm_cusp_incidence(Level(17, 1), 9)}
    ok &= inc[1, 1].q == 9 and inc[1, 1].components == (1,)
    report(8, bool(ok), f"err vanishes below N <= 40, widths balance on {len(CASE_PAIRS)} pairs")


def test_ac9_positivity(report):
    zero = {(24, 1), (24, 5), (24, 7), (24, 17)}
    bad = []
    for N in range(6, 34):
        for r in si.square_classes(N):
            if _w_expected(N, r) != 2:
                continue
            v = si.k_small_squared(Level(N, r))
            if (N, r) in zero and v != 0 or (N, r) not in zero and v <= 0:
                bad.append((N, r, v))
    report(9, not bad, f"K_small^2 > 0 on general-type levels, = 0 at the four (24, r); "
           f"{len(bad)} exceptions")
