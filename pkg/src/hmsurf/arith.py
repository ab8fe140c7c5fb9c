"""Exact elementary number theory used throughout the package.

Everything here works over Python integers and ``fractions.Fraction``;
no floating point is used anywhere.
"""

from fractions import Fraction
from functools import lru_cache
from math import floor, gcd, isqrt

Rational = Fraction


@lru_cache(maxsize=None)
def factorize(n):
    """Prime factorisation of ``n`` as a tuple of (p, e) pairs, by trial division."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_divisors(n):
    return [p for p, _ in factorize(n)]


def valuation(n, p):
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def euler_phi(n):
    if n < 1:
        raise ValueError(f"euler_phi needs n >= 1, got {n}")
    out = n
    for p, _ in factorize(n):
        out = out // p * (p - 1)
    return out


@lru_cache(maxsize=None)
def divisors(n):
    """All positive divisors of ``n`` in ascending order."""
    if n < 1:
        raise ValueError(f"divisors needs n >= 1, got {n}")
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def units(n):
    return [x for x in range(n) if gcd(x, n) == 1] if n > 1 else [0]


@lru_cache(maxsize=None)
def _rho_prime_power(p, e, m):
    q = p**e
    return sum(1 for x in range(1, q) if x % p and (x * x - m) % q == 0)


def rho(d, m):
    """Number of units x modulo d with x^2 = m (mod d); rho(1, m) = 1."""
    if d < 1:
        raise ValueError(f"rho needs d >= 1, got {d}")
    out = 1
    for p, e in factorize(d):
        q = p**e
        out *= _rho_prime_power(p, e, m % q)
        if not out:
            return 0
    return out


def is_square_mod(m, n):
    """True when the unit m is a square modulo n."""
    return rho(n, m) > 0


def inverse_mod(a, n):
    return pow(a, -1, n)


def kronecker(a, n):
    """The Kronecker symbol (a/n), defined for all integer pairs."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol for odd positive n
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def check_discriminant(D):
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"{D} is not a negative discriminant")
    return D


@lru_cache(maxsize=None)
def class_number(D):
    """Class number of the imaginary quadratic order of discriminant D.

    Counts reduced primitive forms (a, b, c) with b^2 - 4ac = D,
    |b| <= a <= c and b >= 0 whenever |b| = a or a = c.
    """
    check_discriminant(D)
    h = 0
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b < 0 and a == c:
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            h += 1
        a += 1
    return h


def h(n):
    """Shorthand for class_number(-n)."""
    return class_number(-n)


def frac(x):
    """Fractional part x - floor(x) of a rational."""
    x = Fraction(x)
    return x - floor(x)


def sqrt_exact(n):
    r = isqrt(n)
    return r if r * r == n else None
