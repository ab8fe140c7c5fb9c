from fractions import Fraction
from math import gcd

import pytest

from hmsurf.arith import h
from hmsurf.gl2 import ClassLabel, crt_matrix, extended_centralizer, standard_generator
from hmsurf.modular_curves import (CurveSignature, WeylQuantities, c_infty_self_intersection,
                                   fricke_fixed_count, fricke_on_cusp, psi, signature_checks,
                                   weyl_family_signature, x0_cusps, x0_invariants, x1_genus,
                                   xh_signature_oracle)


def test_x0_46():
    index, nu2, nu3, nuinf, genus = x0_invariants(46)
    assert genus == 5
    assert sorted(c.width for c in x0_cusps(46)) == [1, 2, 23, 46]


def test_cusp_widths_sum_to_index():
    for m in range(1, 301):
        cusps = x0_cusps(m)
        assert sum(c.width for c in cusps) == psi(m)
        assert len(cusps) == x0_invariants(m)[3]


def test_fricke_is_an_involution_on_cusps():
    for m in range(2, 120):
        for c in x0_cusps(m):
            assert fricke_on_cusp(fricke_on_cusp(c)) == c


def test_fricke_fixed_points():
    assert fricke_fixed_count(23) == h(92) + h(23)
    assert fricke_fixed_count(5) == 2


def test_x1_genus():
    assert [x1_genus(N) for N in (11, 13, 17)] == [1, 2, 5]
    assert all(x1_genus(N) == 0 for N in range(5, 11))


def test_cusp_curve_self_intersection_is_integral():
    for N in range(5, 40):
        for r in range(1, N):
            if gcd(r, N) == 1:
                assert c_infty_self_intersection(N, r).denominator == 1


def test_signature_consistency():
    with pytest.raises(ValueError):
        CurveSignature(12, 0, 0, 1, 0)
    with pytest.raises(ValueError):
        CurveSignature.from_counts(Fraction(3, 2), 0, 0, 1)


def test_weyl_17():
    assert weyl_family_signature(17, 1, "weyl").as_tuple() == (153, 9, 0, 9, 7, 1)
    w = WeylQuantities.of(17, 1)
    assert (w.mu_plus, w.einf_plus) == (153, 9)


def test_closed_forms_match_oracle():
    checks = list(signature_checks(21))
    assert len(checks) >= 70
    bad = [c for c in checks if not c.ok]
    assert bad == []


def _probe(label, r_label, other):
    q1, q2 = label.modulus, other.modulus
    r = next(x for x in range(1, q1 * q2) if x % q1 == r_label % q1 and x % q2 == 1 % q2)
    g = crt_matrix([standard_generator(label, r), standard_generator(other, r)])
    return xh_signature_oracle(extended_centralizer(g)).as_tuple()


# (index, e2, e3, cusps, genus, components)
I3 = ClassLabel("I", 3, 1)


@pytest.mark.parametrize("label,r,expected", [
    (ClassLabel("I#", 2, 1), 1, (2, 0, 2, 1, 0, 1)),
    (ClassLabel("I#", 2, 3), 5, (2, 0, 2, 1, 0, 1)),
    (ClassLabel("borel", 2, 1), 1, (3, 1, 0, 2, 0, 1)),
    (ClassLabel("borel", 2, 3), 1, (3, 1, 0, 2, 0, 1)),
    (ClassLabel("borel#", 2, 3), 5, (6, 0, 0, 3, 0, 1)),
    (ClassLabel("borel#", 2, 2), 3, (6, 0, 0, 3, 0, 1)),
    (ClassLabel("borel_pl", 2, 3, ell=2), 1, (6, 0, 0, 3, 0, 2)),
])
def test_two_adic_rows(label, r, expected):
    assert _probe(label, r, I3) == expected


@pytest.mark.parametrize("other", [ClassLabel("I", 2, 2), ClassLabel("I", 5, 1),
                                   ClassLabel("I", 7, 1)])
@pytest.mark.parametrize("tag,r,expected", [
    ("borel", 1, (4, 0, 1, 2, 0, 2)),
    ("ns", 1, (6, 2, 0, 2, 0, 1)),
    ("s", 2, (12, 0, 0, 4, 0, 1)),
    ("ns_bar", 2, (6, 2, 0, 2, 0, 1)),
])
def test_three_adic_rows(tag, r, expected, other):
    assert _probe(ClassLabel(tag, 3, 1), r, other) == expected


def test_antidiag_e2_follows_r():
    # at (12,5) and (20,13) there are no elliptic points of order 2
    assert weyl_family_signature(12, 5, "(antidiag,weyl)").e2 == 0
    assert weyl_family_signature(20, 13, "(antidiag,weyl)").e2 == 0


def test_level_four_rejected():
    with pytest.raises(ValueError):
        weyl_family_signature(4, 3, "(ns,weyl)")
