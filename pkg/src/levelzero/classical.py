"""Characteristic polynomials of classical dual groups in eigenvalue-orbit form."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import isqrt

ODD_ORTHOGONAL = "odd-orthogonal-dual-of-symplectic"  # G = Sp_2n, G^ = SO_2n+1
SYMPLECTIC = "symplectic-dual-of-odd-orthogonal"  # G = SO_2n+1, G^ = Sp_2n
EVEN_ORTHOGONAL = "even-orthogonal"
UNITARY = "unitary"
FAMILIES = (ODD_ORTHOGONAL, SYMPLECTIC, EVEN_ORTHOGONAL, UNITARY)


@dataclass(frozen=True)
class ClassicalType:
    family: str
    n: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError("unknown classical family %r" % self.family)

    @property
    def dimension(self) -> int:
        if self.family == ODD_ORTHOGONAL:
            return 2 * self.n + 1
        if self.family == UNITARY:
            return self.n
        return 2 * self.n

    @property
    def unitary(self) -> bool:
        return self.family == UNITARY


def q_orbit(v, q: int):
    """Orbit of v in Q/Z under multiplication by q, sorted."""
    v = Fraction(v) % 1
    out = [v]
    x = v * q % 1
    while x != v:
        out.append(x)
        x = x * q % 1
    return tuple(sorted(out))


@dataclass(frozen=True)
class OrbitPolynomial:
    orbits: tuple  # sorted ((orbit, multiplicity), ...)
    q: int
    unitary: bool = False
    closed: bool = True  # False when the eigenvalue multiset was not Frobenius-stable

    @property
    def degree(self) -> int:
        return sum(len(o) * m for o, m in self.orbits)

    def multiplicity(self, orbit) -> int:
        return dict(self.orbits).get(tuple(orbit), 0)

    def eigenvalues(self) -> Counter:
        c = Counter()
        for o, m in self.orbits:
            for x in o:
                c[x] += m
        return c

    @property
    def frobenius(self) -> int:
        return self.q * self.q if self.unitary else self.q


def from_multiplicities(table, q: int, unitary=False) -> OrbitPolynomial:
    items = tuple(sorted((tuple(o), m) for o, m in table.items() if m))
    if any(m < 0 for _, m in items):
        raise ValueError("negative multiplicity")
    return OrbitPolynomial(items, q, unitary)


def from_eigenvalues(eigs, q: int, unitary=False) -> OrbitPolynomial:
    """Group eigenvalues into Frobenius orbits; each orbit takes its largest count."""
    fq = q * q if unitary else q
    counts = Counter(Fraction(x) % 1 for x in eigs)
    table = {}
    closed = True
    for x in counts:
        o = q_orbit(x, fq)
        if o in table:
            continue
        ms = [counts.get(y, 0) for y in o]
        table[o] = max(ms)
        closed = closed and min(ms) == max(ms)
    P = from_multiplicities(table, q, unitary)
    return OrbitPolynomial(P.orbits, q, unitary, closed)


def class_eigenvalues(v, family: str):
    v = [Fraction(x) % 1 for x in v]
    if family == UNITARY:
        return v
    eigs = v + [(-x) % 1 for x in v]
    if family == ODD_ORTHOGONAL:
        eigs.append(Fraction(0))
    return eigs


def char_polynomial(c, t: ClassicalType, q: int) -> OrbitPolynomial:
    rep = getattr(c, "rep", c)
    if len(rep) != t.n:
        raise ValueError("class has %d coordinates, type needs %d" % (len(rep), t.n))
    return from_eigenvalues(class_eigenvalues(rep, t.family), q, t.unitary)


def duality(x, P: OrbitPolynomial):
    return (-x * P.q) % 1 if P.unitary else (-x) % 1


def is_self_dual(P: OrbitPolynomial) -> bool:
    e = P.eigenvalues()
    return all(e[duality(x, P)] == m for x, m in e.items())


def fusion_flag(P: OrbitPolynomial, t: ClassicalType) -> bool:
    """Even orthogonal class where O and SO conjugacy may differ (no eigenvalue 0 or 1/2)."""
    if t.family != EVEN_ORTHOGONAL:
        return False
    e = P.eigenvalues()
    return e[Fraction(0)] == 0 and e[Fraction(1, 2)] == 0 and P.degree > 0


def vertex_polynomial(P1: OrbitPolynomial, P2: OrbitPolynomial, t: ClassicalType) -> OrbitPolynomial:
    table = Counter(dict(P1.orbits))
    table.update(dict(P2.orbits))
    if t.family == ODD_ORTHOGONAL:
        zero = (Fraction(0),)
        if table[zero] < 1:
            raise ValueError("symplectic vertex needs an eigenvalue 1 to remove")
        table[zero] -= 1
    return from_multiplicities(table, P1.q, P1.unitary)


def jordan_multiplicities(s) -> list:
    s = Fraction(s)
    if s < 0 or (2 * s).denominator != 1:
        raise ValueError("s must be a nonnegative half-integer")
    two_s = int(2 * s)
    return list(range(two_s - 1, 0, -2))


def floor_square(s) -> int:
    s = Fraction(s)
    return (s * s).numerator // (s * s).denominator


def jordan_inertial_restriction(jord, q: int, unitary=False) -> OrbitPolynomial:
    table = Counter()
    for rho, m in jord:
        table[tuple(sorted(Fraction(x) % 1 for x in rho))] += m
    return from_multiplicities(table, q, unitary)


def quarter_square_splittings(total: int):
    """All (s, s') in (1/2)Z>=0 with floor(s^2) + floor(s'^2) = total."""
    if total < 0:
        return []
    halves = []
    k = 0
    while k * k // 4 <= total:
        halves.append(Fraction(k, 2))
        k += 1
    vals = {h: floor_square(h) for h in halves}
    return [(a, b) for a in halves for b in halves if vals[a] + vals[b] == total]


@dataclass
class CompatibilityReport:
    passed: bool
    target: OrbitPolynomial
    checked: int
    message: str = ""


def _self_dual_orbit(o, P: OrbitPolynomial) -> bool:
    return {duality(x, P) for x in o} == set(o)


def verify_compatibility(s1, s2, t: ClassicalType, q: int, types=None, a_table=None) -> CompatibilityReport:
    """Check P_t = P_s~ over every admissible Jordan splitting at a vertex.

    ``types`` gives the classical types of the two factors' duals; ``a_table``
    optionally overrides the multiplicity pairs {orbit: (a1, a2)}.
    """
    t1, t2 = types if types is not None else vertex_factor_types(t, len(s1), len(s2))
    P1 = char_polynomial(s1, t1, q)
    P2 = char_polynomial(s2, t2, q)
    target = vertex_polynomial(P1, P2, t)
    if a_table is None:
        orbs = set(dict(P1.orbits)) | set(dict(P2.orbits))
        a_table = {o: (P1.multiplicity(o), P2.multiplicity(o)) for o in orbs}
    fixed = Counter()
    choices = []
    for o in sorted(a_table):
        a1, a2 = a_table[o]
        total = a1 + a2
        if _self_dual_orbit(o, target):
            if t.family == ODD_ORTHOGONAL and o == (Fraction(0),):
                total -= 1
            splits = quarter_square_splittings(total)
            if not splits:
                raise ValueError("no admissible splitting for orbit %s with total %d" % (list(map(str, o)), total))
            choices.append((o, splits))
        else:
            fixed[o] += total
    checked = 0
    for combo in product(*[c[1] for c in choices]):
        jord = [(o, m) for o, m in fixed.items()]
        for (o, _), (s, sp) in zip(choices, combo):
            jord += [(o, m) for m in jordan_multiplicities(s)]
            jord += [(o, m) for m in jordan_multiplicities(sp)]
        Pt = jordan_inertial_restriction(jord, q, t.unitary)
        checked += 1
        if Pt.orbits != target.orbits:
            return CompatibilityReport(False, target, checked, "splitting %s gives %s" % (combo, Pt.orbits))
    return CompatibilityReport(True, target, checked)


def vertex_factor_types(t: ClassicalType, n1: int, n2: int):
    """Dual classical types of the two factors of a vertex group."""
    if n1 + n2 != t.n:
        raise ValueError("vertex ranks do not add up")
    if t.family == ODD_ORTHOGONAL:
        return ClassicalType(ODD_ORTHOGONAL, n1), ClassicalType(ODD_ORTHOGONAL, n2)
    if t.family == SYMPLECTIC:
        return ClassicalType(SYMPLECTIC, n1), ClassicalType(EVEN_ORTHOGONAL, n2)
    return ClassicalType(t.family, n1), ClassicalType(t.family, n2)


def is_quarter_square(k: int) -> bool:
    r = isqrt(4 * k)
    return r * r // 4 == k or (r + 1) * (r + 1) // 4 == k


# exhaustive grid over vertex types and classes

def _factor_classes(t: ClassicalType, q: int, N: int):
    """F-stable classes of order dividing N in the dual torus of one vertex factor."""
    from .catalog import so_even, sp, torus
    from .ss_classes import stable_classes_int
    from .weyl import from_ints, generate_weyl

    if t.n == 0:
        return [()]
    if t.family == EVEN_ORTHOGONAL:
        rd = so_even(2 * t.n) if t.n >= 2 else torus(1)
    else:
        rd = sp(2 * t.n)  # signed permutations
    W = generate_weyl(rd)
    ident = tuple(tuple(int(i == j) for j in range(t.n)) for i in range(t.n))
    return [from_ints(x, N) for x in stable_classes_int(W.elements, ident, q, N, t.n)]


def classical_type_for(rd) -> ClassicalType:
    """Recognize Sp_2n, SO_2n+1, SO_2n in classical coordinates."""
    from .catalog import so_even, so_odd, sp

    n = rd.rank
    key = (rd.roots, rd.coroots)
    if key == (sp(2 * n).roots, sp(2 * n).coroots):
        return ClassicalType(ODD_ORTHOGONAL, n)
    if key == (so_odd(2 * n + 1).roots, so_odd(2 * n + 1).coroots):
        return ClassicalType(SYMPLECTIC, n)
    if n >= 2 and key == (so_even(2 * n).roots, so_even(2 * n).coroots):
        return ClassicalType(EVEN_ORTHOGONAL, n)
    raise ValueError("root datum is not a classical group in standard coordinates")


@dataclass
class GridRow:
    vertex: tuple
    s1: tuple
    s2: tuple
    target: OrbitPolynomial
    passed: bool
    splittings: int
    fusion: bool


def compatibility_grid(t: ClassicalType, q: int, N: int):
    """verify_compatibility over all vertex types and F-stable classes of order dividing N."""
    rows = []
    for n1 in range(t.n + 1):
        n2 = t.n - n1
        if t.family == EVEN_ORTHOGONAL and 1 in (n1, n2):
            continue  # SO_2 x SO_2n-2 is not a vertex group
        if t.family == SYMPLECTIC and n2 == 1:
            continue  # nor is SO_2n-1 x SO_2
        t1, t2 = vertex_factor_types(t, n1, n2)
        for s1 in _factor_classes(t1, q, N):
            for s2 in _factor_classes(t2, q, N):
                rep = verify_compatibility(s1, s2, t, q, (t1, t2))
                whole = char_polynomial(tuple(s1) + tuple(s2), t, q)
                ok = rep.passed and whole.orbits == rep.target.orbits
                rows.append(GridRow((n1, n2), tuple(s1), tuple(s2), rep.target, ok, rep.checked,
                                    fusion_flag(char_polynomial(s2, t2, q), t2)))
    return rows
