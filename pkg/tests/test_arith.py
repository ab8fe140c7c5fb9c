from fractions import Fraction
from math import gcd

import pytest

from hmsurf.arith import (class_number, divisors, euler_phi, factorize, h, kronecker, rho,
                          units)


def _fundamental(D):
    """Write a negative discriminant as D0 * f^2 with f as large as possible."""
    f = max(f for f in range(1, int((-D) ** 0.5) + 1)
            if D % (f * f) == 0 and (D // (f * f)) % 4 in (0, 1))
    return D // (f * f), f


def class_number_oracle(D):
    """Dirichlet's formula for the fundamental part and the conductor formula."""
    D0, f = _fundamental(D)
    w = {-3: 6, -4: 4}.get(D0, 2)
    h0 = -Fraction(w, 2 * -D0) * sum(kronecker(D0, a) * a for a in range(1, -D0))
    out = h0 * f
    for p, _ in factorize(f):
        out *= 1 - Fraction(kronecker(D0, p), p)
    out /= Fraction(w, 2) if f > 1 else 1
    assert out.denominator == 1
    return int(out)


def test_class_number_matches_analytic_formula():
    for n in range(3, 800):
        D = -n
        if D % 4 in (0, 1):
            assert class_number(D) == class_number_oracle(D), D


def test_small_class_numbers():
    assert [h(n) for n in (3, 4, 7, 8, 11, 12, 16, 20, 23)] == [1, 1, 1, 1, 1, 1, 1, 2, 3]


def test_fricke_fixed_points_at_23():
    # w_23 on X_0(46) has h(-92) + 3h(-23) = 12 fixed points
    assert h(92) + 3 * h(23) == 12


def test_rho_brute_force():
    for d in range(1, 120):
        for m in range(0, 2 * d):
            brute = sum(1 for x in units(d) if (x * x - m) % d == 0) if d > 1 else 1
            assert rho(d, m) == brute, (d, m)


def test_kronecker_euler_criterion():
    for p in (3, 5, 7, 11, 13, 17, 19, 23):
        for a in range(-30, 30):
            want = 0 if a % p == 0 else (1 if pow(a % p, (p - 1) // 2, p) == 1 else -1)
            assert kronecker(a, p) == want


def test_phi_and_divisors():
    for n in range(1, 200):
        assert euler_phi(n) == sum(1 for x in range(1, n + 1) if gcd(x, n) == 1)
        assert divisors(n) == [d for d in range(1, n + 1) if n % d == 0]


def test_bad_discriminant():
    with pytest.raises(ValueError):
        class_number(-5)
