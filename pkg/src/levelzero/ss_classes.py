"""Semisimple classes as Weyl orbits in X (x) (Q/Z)_{p'} and the Frobenius on them."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from sympy import factorint

from .linalg import lcm_all, mat_vec
from .root_datum import BasedAutomorphism, RootDatum, identity_automorphism, make_automorphism
from .weyl import canonical_int, from_ints, generate_weyl, mod1, orbit_int, to_ints

QLBAR = "Qlbar"
ZLBAR = "Zlbar"


def prime_of(q: int) -> int:
    f = factorint(q)
    if len(f) != 1:
        raise ValueError("q=%d is not a prime power" % q)
    return next(iter(f))


def is_prime(n: int) -> bool:
    return n >= 2 and factorint(n) == {n: 1}


@dataclass(frozen=True)
class FrobeniusDescriptor:
    theta: BasedAutomorphism
    q: int
    p: int
    ell: int | None = None
    lam: str = QLBAR
    diagram_rotation: tuple | None = None

    def __post_init__(self):
        if prime_of(self.q) != self.p:
            raise ValueError("q=%d is not a power of p=%d" % (self.q, self.p))
        if self.ell is not None and (self.ell == self.p or not is_prime(self.ell)):
            raise ValueError("ell must be a prime different from p")
        if self.lam not in (QLBAR, ZLBAR):
            raise ValueError("lambda must be %s or %s" % (QLBAR, ZLBAR))
        if self.lam == ZLBAR and self.ell is None:
            raise ValueError("lambda = Zlbar needs ell")

    def with_lambda(self, lam: str) -> "FrobeniusDescriptor":
        return FrobeniusDescriptor(self.theta, self.q, self.p, self.ell, lam, self.diagram_rotation)


def make_frobenius(rd: RootDatum, q: int, theta=None, ell=None, lam=QLBAR, rotation=None):
    """Validated descriptor; ``theta`` is a matrix on X (identity when None)."""
    th = identity_automorphism(rd) if theta is None else make_automorphism(rd, theta)
    rot = tuple(int(k) for k in rotation) if rotation is not None else None
    F = FrobeniusDescriptor(th, q, prime_of(q), ell, lam, rot)
    if rot is not None and any(rot):
        from .building import frobenius_node_permutation

        frobenius_node_permutation(rd, F)  # raises when the rotation is not admissible
    return F


def class_vector(entries, p: int | None = None):
    """Reduce mod 1 and check that denominators are prime to p."""
    v = mod1(entries)
    if p is not None and any(Fraction(x).denominator % p == 0 for x in v):
        raise ValueError("class vector has denominator divisible by p=%d" % p)
    return v


@dataclass(frozen=True)
class GeometricClass:
    rep: tuple
    label: str = "W0"
    context: object = field(default=None, repr=False, compare=False, hash=False)

    @property
    def order(self) -> int:
        return class_order(self.rep)


def class_order(v) -> int:
    return lcm_all(Fraction(x).denominator for x in v)


def frobenius_image(v, F: FrobeniusDescriptor, matrix=None):
    """theta(q v) mod 1; ``matrix`` overrides theta (facet Frobenius)."""
    M = F.theta.matrix if matrix is None else matrix
    return mod1(mat_vec(M, [F.q * Fraction(x) for x in v]))


def is_F_stable(c: GeometricClass, F: FrobeniusDescriptor, matrix=None) -> bool:
    H = c.context
    v = mod1(c.rep)
    N = class_order(v)
    x = to_ints(v, N)
    y = to_ints(frobenius_image(v, F, matrix), N)
    return canonical_int(y, H.elements, N) == canonical_int(x, H.elements, N)


def ell_regular_part(v, ell: int):
    v = mod1(v)
    m = class_order(v)
    la = 1
    while m % (la * ell) == 0:
        la *= ell
    mp = m // la
    if mp == 1:
        return tuple(Fraction(0) for _ in v)
    u = pow(la, -1, mp)
    return mod1([la * u * x for x in v])


def order_ok(order: int, lam: str, ell: int | None) -> bool:
    return lam == QLBAR or ell is None or order % ell != 0


def _int_order(x, N: int) -> int:
    g = N
    for a in x:
        g = gcd(g, a)
    return N // g


def stable_classes_int(elements, matrix, q: int, N: int, rank: int, lam=QLBAR, ell=None):
    """Sorted canonical reps (ints mod N) of F-stable orbits, F(x) = matrix (q x)."""
    from itertools import product

    seen = set()
    out = []
    for x in product(range(N), repeat=rank):
        if x in seen:
            continue
        orb = orbit_int(x, elements, N)
        seen |= orb
        rep = min(orb)
        if not order_ok(_int_order(rep, N), lam, ell):
            continue
        y = tuple(sum(a * q * b for a, b in zip(row, rep)) % N for row in matrix)
        if y in orb:
            out.append(rep)
    out.sort()
    return out


def check_level(N: int, p: int):
    if N < 1:
        raise ValueError("order bound must be positive")
    if N % p == 0:
        raise ValueError("order bound N=%d is divisible by p=%d" % (N, p))


def enumerate_F_stable_orbits(rd: RootDatum, F: FrobeniusDescriptor, N: int, lam=None):
    lam = lam or F.lam
    check_level(N, F.p)
    W = generate_weyl(rd)
    reps = stable_classes_int(W.elements, F.theta.matrix, F.q, N, rd.rank, lam, F.ell)
    return [GeometricClass(from_ints(x, N), "W0", W) for x in reps]
