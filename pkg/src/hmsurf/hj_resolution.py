"""Hirzebruch-Jung continued fractions and resolution chains.

A cyclic quotient singularity of type (d, q) is resolved by a chain of
rational curves with self-intersections -c_1, ..., -c_l where
d/q = c_1 - 1/(c_2 - 1/(...)).
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


@dataclass(frozen=True)
class SingularityType:
    d: int
    q: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"order must be positive, got {self.d}")
        if self.d > 1:
            q = self.q % self.d
            if gcd(q, self.d) != 1:
                raise ValueError(f"type ({self.d},{self.q}) is not cyclic quotient")
            object.__setattr__(self, "q", q)
        else:
            object.__setattr__(self, "q", 0)

    @property
    def smooth(self):
        return self.d == 1

    def __str__(self):
        return "smooth" if self.smooth else f"({self.d},{self.q})"


@dataclass(frozen=True)
class HJChain:
    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(self.coefficients))
        if any(c < 2 for c in self.coefficients):
            raise ValueError(f"HJ coefficients must be >= 2: {self.coefficients}")

    @property
    def self_intersections(self):
        return tuple(-c for c in self.coefficients)

    def __len__(self):
        return len(self.coefficients)

    def __str__(self):
        return "[[" + ",".join(map(str, self.coefficients)) + "]]"


@dataclass(frozen=True)
class FiberChain:
    chain: HJChain
    level: int
    mult_j: tuple
    mult_jprime: tuple


def hj_expansion(d, q):
    """HJ continued fraction of d/q via c = ceil(d/q), (d, q) <- (q, cq - d)."""
    if d < 2:
        raise ValueError(f"need d >= 2, got {d}")
    if gcd(d, q) != 1:
        raise ValueError(f"gcd({d},{q}) != 1")
    q %= d
    coeffs = []
    while q:
        c = -(-d // q)
        coeffs.append(c)
        d, q = q, c * q - d
    return HJChain(coeffs)


def continuant(coeffs):
    """Numerator of [[c_1,...,c_l]]; the empty chain has continuant 1."""
    prev, cur = 0, 1
    for c in reversed(coeffs):
        prev, cur = cur, c * cur - prev
    return cur


def evaluate(coeffs):
    """Exact value of c_1 - 1/(c_2 - 1/(...))."""
    val = None
    for c in reversed(coeffs):
        val = Fraction(c) if val is None else c - 1 / val
    return val


def resolution_of_type(d, q):
    """Self-intersections of the minimal resolution of a type (d, q) point."""
    return hj_expansion(d, q).self_intersections


def fiber_multiplicities(N, sing):
    """Multiplicities of the chain components in the two fibres over infinity.

    Solves a_{i+1} = c_i a_i - a_{i-1} with a_0 = N, a_{l+1} = 0, and the
    mirror problem for a' with a'_0 = 0, a'_{l+1} = N.
    """
    if isinstance(sing, tuple):
        sing = SingularityType(*sing)
    d, q = sing.d, sing.q
    if d < 2 or N % d:
        raise ValueError(f"type {sing} does not occur at level {N}")
    chain = hj_expansion(d, q)
    c = chain.coefficients
    n = len(c)
    scale = N // d

    # seed a_{l+1} = 0, a_l = 1 and run backwards
    a = [0] * (n + 2)
    a[n] = 1
    for i in range(n, 0, -1):
        a[i - 1] = c[i - 1] * a[i] - a[i + 1]
    a = tuple(x * scale for x in a)

    ap = [0] * (n + 2)
    ap[1] = 1
    for i in range(1, n + 1):
        ap[i + 1] = c[i - 1] * ap[i] - ap[i - 1]
    ap = tuple(x * scale for x in ap)

    assert a[0] == N and a[-1] == 0, a
    assert ap[0] == 0 and ap[-1] == N, ap
    for i in range(1, n + 1):
        assert a[i + 1] == c[i - 1] * a[i] - a[i - 1]
        assert ap[i + 1] == c[i - 1] * ap[i] - ap[i - 1]
    assert all(x >= 0 for x in a + ap)
    return FiberChain(chain, N, a, ap)
