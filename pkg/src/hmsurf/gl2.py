"""2x2 matrices over Z/NZ, named class representatives, and enumeration oracles.

Matrices are stored as (a, b, c, d) tuples meaning [[a, b], [c, d]].  The
enumeration code works one prime power at a time and glues the pieces
together with the Chinese remainder theorem, which keeps the group orders
manageable for composite levels.
"""

from dataclasses import dataclass
from itertools import product
from math import gcd

from .arith import factorize, kronecker, units

MAX_ENUM_LEVEL = 24


class ResourceGuardError(RuntimeError):
    """Raised when an enumeration would exceed the configured level guard."""


@dataclass(frozen=True)
class ResidueMatrix:
    modulus: int
    entries: tuple

    def __post_init__(self):
        n = self.modulus
        if n < 1:
            raise ValueError(f"bad modulus {n}")
        object.__setattr__(self, "entries", tuple(x % n for x in self.entries))
        if len(self.entries) != 4:
            raise ValueError("a 2x2 matrix needs four entries")

    @classmethod
    def of(cls, n, a, b, c, d):
        return cls(n, (a, b, c, d))

    @classmethod
    def identity(cls, n):
        return cls(n, (1, 0, 0, 1))

    @property
    def det(self):
        a, b, c, d = self.entries
        return (a * d - b * c) % self.modulus

    @property
    def trace(self):
        a, _, _, d = self.entries
        return (a + d) % self.modulus

    def is_invertible(self):
        return gcd(self.det, self.modulus) == 1

    def __mul__(self, other):
        if isinstance(other, int):
            return ResidueMatrix(self.modulus, tuple(other * x for x in self.entries))
        if other.modulus != self.modulus:
            raise ValueError("moduli differ")
        return ResidueMatrix(self.modulus, mat_mul(self.entries, other.entries, self.modulus))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def inverse(self):
        if not self.is_invertible():
            raise ValueError(f"{self} is not invertible")
        return ResidueMatrix(self.modulus, mat_inv(self.entries, self.modulus))

    def reduce(self, m):
        if self.modulus % m:
            raise ValueError(f"{m} does not divide {self.modulus}")
        return ResidueMatrix(m, self.entries)

    def is_scalar(self, s):
        a, b, c, d = self.entries
        n = self.modulus
        return b == 0 and c == 0 and a == d == s % n

    def __str__(self):
        a, b, c, d = self.entries
        return f"[[{a},{b}],[{c},{d}]] mod {self.modulus}"


def mat_mul(x, y, n):
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % n, (a * f + b * h) % n,
            (c * e + d * g) % n, (c * f + d * h) % n)


def mat_inv(x, n):
    a, b, c, d = x
    u = pow((a * d - b * c) % n, -1, n)
    return ((d * u) % n, (-b * u) % n, (-c * u) % n, (a * u) % n)


def mat_det(x, n):
    a, b, c, d = x
    return (a * d - b * c) % n


def crt_pair(parts):
    """Combine [(modulus, value)] with pairwise coprime moduli."""
    n, x = 1, 0
    for m, v in parts:
        # x' = x mod n, v mod m
        t = ((v - x) * pow(n, -1, m)) % m if m > 1 else 0
        x += n * t
        n *= m
    return x % n


def crt_matrix(blocks):
    """Glue matrices over coprime moduli into one over their product."""
    n = 1
    for b in blocks:
        n *= b.modulus
    entries = tuple(crt_pair([(b.modulus, b.entries[i]) for b in blocks]) for i in range(4))
    return ResidueMatrix(n, entries)


def prime_power_parts(n):
    return [p**e for p, e in factorize(n)]


# --- named elements -------------------------------------------------------

TAGS = ("I", "I#", "borel", "borel_pl", "borel#", "s", "ns", "ns_bar", "antidiag", "weyl")


@dataclass(frozen=True)
class ClassLabel:
    tag: str
    p: int
    k: int
    scalar: int = 1
    ell: int = 1

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown tag {self.tag}")
        if self.tag == "weyl":
            if self.p % 2 == 0:
                raise ValueError("weyl needs an odd modulus")
            return
        if factorize(self.p) != ((self.p, 1),) or self.k < 1:
            raise ValueError(f"bad prime power {self.p}^{self.k}")
        if self.tag == "borel#" and not (self.p == 2 and self.k >= 2):
            raise ValueError("borel# only exists mod 2^k with k >= 2")
        if self.tag in ("I#", "antidiag") and self.p != 2:
            raise ValueError(f"{self.tag} only exists mod 2^k")
        if self.tag == "ns_bar" and not (self.p == 3 and self.k == 1):
            raise ValueError("ns_bar only exists mod 3")
        if self.tag == "borel_pl" and not 1 <= self.ell <= self.k:
            raise ValueError("borel_pl needs 1 <= ell <= k")

    @property
    def modulus(self):
        return self.p if self.tag == "weyl" else self.p**self.k


def least_nonresidue(p):
    return next(x for x in range(2, p) if kronecker(x, p) == -1)


def _projective(label, r):
    """The tabulated projective matrix for a label at a prime power."""
    p, k = label.p, label.k
    q = p**k
    if label.tag == "I":
        return (1, 0, 0, 1)
    if label.tag == "borel":
        return (1, p ** (k - 1), 0, 1)
    if label.tag == "borel_pl":
        return (1, p ** (k - label.ell), 0, 1)
    if label.tag == "ns_bar":
        return (1, 1, -1, 1)
    if label.tag == "s":
        return (1, 0, 0, -1)
    if p == 2:
        h = 2 ** (k - 1)
        if label.tag == "I#":
            return (1, h, h, h + 1)
        if label.tag == "borel#":
            return (1, 0, 0, h + 1)
        if label.tag == "ns":
            return (1, 2, -2, -1)
        if label.tag == "antidiag":
            return (0, -r, 1, 0)
    if label.tag == "ns":
        xi = least_nonresidue(p)
        return (0, xi, 1, 0)
    raise ValueError(f"no element {label.tag} mod {q}")


def _lift(q, proj, r):
    """Least scaling u*proj (lexicographically on entries) with det = r mod q."""
    best = None
    for u in units(q):
        e = tuple((u * x) % q for x in proj)
        if mat_det(e, q) == r % q and (best is None or e < best):
            best = e
    return best


def standard_generator(label, r):
    """A lift with determinant r of the named element for ``label``."""
    if label.tag == "weyl":
        return g_weyl(label.p, r)
    q = label.modulus
    if gcd(r, q) != 1:
        raise ValueError(f"r = {r} is not a unit mod {q}")
    e = _lift(q, _projective(label, r), r)
    if e is None:
        raise ValueError(f"no lift of {label.tag} mod {q} with determinant {r}")
    g = ResidueMatrix(q, e)
    return g * label.scalar if label.scalar != 1 else g


def g_weyl(M, r):
    """The Weyl-type element mod odd M: split at p if (-r/p) = 1, else non-split."""
    if M % 2 == 0:
        raise ValueError("g_weyl needs an odd modulus")
    if M == 1:
        return ResidueMatrix(1, (0, 0, 0, 0))
    blocks = []
    for p, k in factorize(M):
        tag = "s" if kronecker(-r, p) == 1 else "ns"
        blocks.append(standard_generator(ClassLabel(tag, p, k), r))
    return crt_matrix(blocks)


def lambda_reps(n, r):
    """Least positive representative of each {x, -x} with x^2 = r mod n."""
    if n == 1:
        return [1]
    roots = [x for x in range(1, n) if gcd(x, n) == 1 and (x * x - r) % n == 0]
    return sorted({min(x, n - x) for x in roots})


@dataclass(frozen=True)
class InvolutionClass:
    """A conjugacy-class representative of g with g^2 = +-det g, det g = r."""
    family: str
    matrix: ResidueMatrix
    scalar: int = 1

    def __str__(self):
        lam = f"{self.scalar}*" if self.family in ("I", "(borel,I)") else ""
        return f"{lam}{self.family}: {self.matrix}"


# families of the fixed locus; the omega-twisted ones only for k >= 3
FAMILIES = ("I", "(borel,I)", "weyl", "(I,weyl)", "(antidiag,weyl)",
            "(ns,weyl)", "(omega ns,weyl)", "(s,weyl)", "(omega s,weyl)")


def _split(N):
    k = 0
    while N % 2 == 0:
        N //= 2
        k += 1
    return k, N


def family_matrix(N, r, family, scalar=1):
    """The level-N matrix of a fixed-locus family, glued from its 2- and odd parts."""
    k, M = _split(N)
    q = 2**k
    r %= N
    if family == "I":
        return ResidueMatrix(N, (scalar, 0, 0, scalar))
    if family == "weyl":
        if k:
            raise ValueError("weyl family needs odd N")
        return g_weyl(N, r)
    if k == 0:
        raise ValueError(f"{family} needs even N")
    odd = g_weyl(M, r) if M > 1 else None
    omega = 2 ** (k - 1) + 1
    if family == "(borel,I)":
        two = standard_generator(ClassLabel("borel", 2, k), 1) * scalar
        odd = ResidueMatrix(M, (scalar, 0, 0, scalar)) if M > 1 else None
    elif family == "(I,weyl)":
        if k != 1:
            raise ValueError("(I,weyl) needs k = 1")
        two = ResidueMatrix(2, (1, 0, 0, 1))
    elif family == "(antidiag,weyl)":
        two = standard_generator(ClassLabel("antidiag", 2, k), r)
    elif family in ("(ns,weyl)", "(omega ns,weyl)", "(s,weyl)", "(omega s,weyl)"):
        if k < 2:
            raise ValueError(f"{family} needs k >= 2")
        tag = "ns" if "ns" in family else "s"
        two = standard_generator(ClassLabel(tag, 2, k), r)
        if family.startswith("(omega"):
            if k < 3:
                raise ValueError(f"{family} needs k >= 3")
            two = two * omega
    else:
        raise ValueError(f"unknown family {family}")
    return crt_matrix([two, odd]) if odd is not None else two


def involution_families(N, r):
    """Family names (with scalar) of the classes with g^2 = +-det g, det g = r."""
    if gcd(r, N) != 1:
        raise ValueError(f"gcd({r},{N}) != 1")
    k, M = _split(N)
    r %= N
    lams = lambda_reps(N, r)
    out = []
    if k == 0:
        out += [("I", lam) for lam in lams]
        out.append(("weyl", 1))
        return out
    scal = [("I", lam) for lam in lams] + [("(borel,I)", lam) for lam in lams]
    if k == 1:
        if M == 1:
            # at N = 2 both weyl-type families collapse onto the scalar ones
            return scal
        return scal + [("(I,weyl)", 1), ("(antidiag,weyl)", 1)]
    if k == 2:
        if r % 4 == 1:
            return scal + [("(antidiag,weyl)", 1)]
        return [("(s,weyl)", 1), ("(ns,weyl)", 1), ("(antidiag,weyl)", 1)]
    r8 = r % 8
    if r8 == 1:
        return scal + [("(antidiag,weyl)", 1)]
    if r8 == 3:
        return [("(ns,weyl)", 1), ("(omega ns,weyl)", 1), ("(antidiag,weyl)", 1)]
    if r8 == 5:
        return [("(antidiag,weyl)", 1)]
    # s rather than ns: only s has a lift of determinant 7 mod 8
    return [("(s,weyl)", 1), ("(omega s,weyl)", 1), ("(antidiag,weyl)", 1)]




def involution_classes(N, r):
    """Closed-form class representatives following the casework by (k, r mod 8)."""
    out = []
    for fam, lam in involution_families(N, r):
        g = family_matrix(N, r, fam, lam)
        s = g * g
        d = g.det
        assert s.is_scalar(d) or s.is_scalar(-d), (fam, g)
        assert d == r % N, (fam, g, r)
        out.append(InvolutionClass(fam, g, lam))
    return out


# --- enumeration oracles --------------------------------------------------

def _guard(N, limit):
    if limit is not None and N > limit:
        raise ResourceGuardError(f"level {N} exceeds the enumeration guard {limit}")


def gl2_elements(q):
    """All of GL_2(Z/q) as entry tuples."""
    rng = range(q)
    return [e for e in product(rng, rng, rng, rng) if gcd(mat_det(e, q), q) == 1]


_GL2_CACHE = {}


def _gl2(q):
    if q not in _GL2_CACHE:
        _GL2_CACHE[q] = gl2_elements(q)
    return _GL2_CACHE[q]


def gl2_order(n):
    out = 1
    for p, e in factorize(n):
        out *= p ** (4 * e - 3) * (p * p - 1) * (p - 1)
    return out


def _generators(q):
    gens = [(1, 1, 0, 1), (1, 0, 1, 1)]
    gens += [(u, 0, 0, 1) for u in units(q) if u != 1]
    return gens


def local_involution_classes(q, r):
    """Orbits of conjugation on {g in GL_2(Z/q): det g = r, g^2 = +-det g}.

    Returns (class_of, signs, neg) where class_of maps each element to a class
    index, signs[i] is the set of epsilon with g^2 = epsilon*det g, and
    neg[i] is the class of -g.
    """
    r %= q
    cand = []
    for e in _gl2(q):
        if mat_det(e, q) != r:
            continue
        s = mat_mul(e, e, q)
        if s[1] or s[2] or s[0] != s[3]:
            continue
        if s[0] in (r, (-r) % q):
            cand.append(e)
    parent = {e: e for e in cand}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    gens = [(x, mat_inv(x, q)) for x in _generators(q)]
    for e in cand:
        for x, xi in gens:
            f = mat_mul(mat_mul(x, e, q), xi, q)
            a, b = find(e), find(f)
            if a != b:
                parent[a] = b
    roots = sorted({find(e) for e in cand})
    index = {root: i for i, root in enumerate(roots)}
    class_of = {e: index[find(e)] for e in cand}
    signs = [set() for _ in roots]
    for e in cand:
        s = mat_mul(e, e, q)[0]
        if s == r:
            signs[class_of[e]].add(1)
        if s == (-r) % q:
            signs[class_of[e]].add(-1)
    neg = [0] * len(roots)
    for e in cand:
        neg[class_of[e]] = class_of[tuple((-x) % q for x in e)]
    reps = [None] * len(roots)
    for e in cand:
        i = class_of[e]
        if reps[i] is None or e < reps[i]:
            reps[i] = e
    return class_of, signs, neg, reps


def brute_involution_classes(N, r, limit=MAX_ENUM_LEVEL):
    """Enumerate the classes of g in GL_2(Z/N)/{+-1} with det g = r, g^2 = +-det g.

    Returns a list of (key, matrix) where key is the canonical tuple of local
    class indices; two elements are conjugate modulo +-1 iff their keys agree.
    """
    _guard(N, limit)
    if gcd(r, N) != 1:
        raise ValueError(f"gcd({r},{N}) != 1")
    parts = prime_power_parts(N)
    local = [local_involution_classes(q, r) for q in parts]
    seen = {}
    for combo in product(*[range(len(L[1])) for L in local]):
        common = {1, -1}
        for L, i in zip(local, combo):
            common &= L[1][i]
        if not common:
            continue
        negc = tuple(L[2][i] for L, i in zip(local, combo))
        key = min(combo, negc)
        if key not in seen:
            blocks = [ResidueMatrix(q, L[3][i]) for q, L, i in zip(parts, local, key)]
            seen[key] = crt_matrix(blocks) if blocks else ResidueMatrix(1, (0, 0, 0, 0))
    return sorted(seen.items())


def class_key(g, r=None):
    """Canonical key of g in the brute-force class list at its level."""
    N = g.modulus
    r = g.det if r is None else r
    parts = prime_power_parts(N)
    combo, negc = [], []
    for q in parts:
        class_of, _, neg, _ = local_involution_classes_cached(q, r % q)
        i = class_of[tuple(x % q for x in g.entries)]
        combo.append(i)
        negc.append(neg[i])
    return min(tuple(combo), tuple(negc))


_LOCAL_CACHE = {}


def local_involution_classes_cached(q, r):
    key = (q, r % q)
    if key not in _LOCAL_CACHE:
        _LOCAL_CACHE[key] = local_involution_classes(q, r)
    return _LOCAL_CACHE[key]


def compare_involution_classes(N, r):
    """Check closed form against enumeration; returns a list of problems (empty if fine)."""
    problems = []
    brute = dict(brute_involution_classes(N, r))
    closed = involution_classes(N, r)
    keys = []
    for c in closed:
        try:
            keys.append(class_key(c.matrix, r))
        except KeyError:
            problems.append(f"{c} is not an involution class at ({N},{r})")
    if len(set(keys)) != len(keys):
        problems.append(f"({N},{r}): closed-form representatives are not pairwise distinct")
    missing = set(brute) - set(keys)
    if missing:
        problems.append(f"({N},{r}): {len(missing)} classes missing from closed form")
    if len(closed) != len(brute):
        problems.append(f"({N},{r}): closed form has {len(closed)} classes, enumeration {len(brute)}")
    return problems


# --- subgroups -------------------------------------------------------------

@dataclass(frozen=True)
class SubgroupH:
    modulus: int
    elements: frozenset
    kind: str

    def __len__(self):
        return len(self.elements)

    def __contains__(self, e):
        return e in self.elements

    def determinants(self):
        return {mat_det(e, self.modulus) for e in self.elements}


def _local_commuting(q, g, sign):
    """{h in GL_2(Z/q) : g h g^-1 = sign*h}."""
    gi = mat_inv(g, q)
    out = []
    for h in _gl2(q):
        c = mat_mul(mat_mul(g, h, q), gi, q)
        if all((x - sign * y) % q == 0 for x, y in zip(c, h)):
            out.append(h)
    return out


def _glue(N, parts, lists):
    out = set()
    for combo in product(*lists):
        blocks = [ResidueMatrix(q, e) for q, e in zip(parts, combo)]
        out.add(crt_matrix(blocks).entries)
    return out


def centralizer(g, limit=MAX_ENUM_LEVEL):
    """H_g = {h : g h g^-1 = h}."""
    N = g.modulus
    _guard(N, limit)
    if not g.is_invertible():
        raise ValueError(f"{g} is not invertible")
    parts = prime_power_parts(N)
    lists = [_local_commuting(q, tuple(x % q for x in g.entries), 1) for q in parts]
    return SubgroupH(N, frozenset(_glue(N, parts, lists)), "centralizer")


def extended_centralizer(g, limit=MAX_ENUM_LEVEL):
    """H_g^+ = {h : g h g^-1 = +-h}."""
    N = g.modulus
    _guard(N, limit)
    if not g.is_invertible():
        raise ValueError(f"{g} is not invertible")
    parts = prime_power_parts(N)
    elems = set()
    for sign in (1, -1):
        lists = [_local_commuting(q, tuple(x % q for x in g.entries), sign) for q in parts]
        elems |= _glue(N, parts, lists)
    return SubgroupH(N, frozenset(elems), "extended")


def full_group(N, limit=MAX_ENUM_LEVEL):
    _guard(N, limit)
    parts = prime_power_parts(N)
    return SubgroupH(N, frozenset(_glue(N, parts, [_gl2(q) for q in parts])), "full")


def sl2_elements(N):
    parts = prime_power_parts(N)
    lists = [[e for e in _gl2(q) if mat_det(e, q) == 1 % q] for q in parts]
    return _glue(N, parts, lists)


def cm_action_matrix(D, a, b, N):
    """Matrix of a + b*phi on E[N] for CM by the order of discriminant D.

    phi = sqrt(-d) when D = -4d, and phi = (1 + sqrt(-d))/2 when D = -d = 1 mod 4.
    """
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"{D} is not a negative discriminant")
    if D % 4 == 0:
        d = -D // 4
        norm = a * a + d * b * b
        m = ResidueMatrix(N, (a, -b * d, b, a))
    else:
        d = -D
        norm = a * a + a * b + b * b * (d + 1) // 4
        m = ResidueMatrix(N, (a, -b * (d + 1) // 4, b, a + b))
    if gcd(norm, N) != 1:
        raise ValueError(f"norm {norm} is not coprime to {N}")
    return m
