"""Facets of the fundamental alcove, class systems S_phi and their coherence."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .inertial import InertialParam, enumerate_inertial_params
from .linalg import dot, integer_solvable, mat_mul, mat_vec
from .root_datum import RootDatum, affine_simple_system, alcove_vertex, make_root_datum
from .ss_classes import (
    QLBAR, FrobeniusDescriptor, GeometricClass, check_level, class_order, stable_classes_int,
)
from .weyl import (
    canonical_int, canonical_rep, from_ints, generate_weyl, reflection_subgroup, to_ints,
)


# affine diagram and the Frobenius action on it

def _node_of(nodes, lin):
    for j, n in enumerate(nodes):
        if n.linear == lin:
            return j
    raise ValueError("vector %r is not the linear part of an affine node" % (lin,))


def theta_node_permutation(rd: RootDatum, F: FrobeniusDescriptor):
    nodes = affine_simple_system(rd)
    return tuple(_node_of(nodes, F.theta(n.linear)) for n in nodes)


def _neighbours(rd, nodes, j):
    n = nodes[j]
    out = []
    for k, m in enumerate(nodes):
        if k != j and m.component == n.component:
            c = rd.coroots[rd.index_of(m.linear)]
            if dot(n.linear, c) != 0:
                out.append(k)
    return out


def affine_cycle(rd: RootDatum, comp: int):
    """Nodes of a type A component in cyclic order, starting at the extra node."""
    nodes = affine_simple_system(rd)
    members = [j for j, n in enumerate(nodes) if n.component == comp]
    start = next(j for j in members if nodes[j].simple is None)
    nbrs = {j: _neighbours(rd, nodes, j) for j in members}
    if len(members) == 2:
        return [start] + [j for j in members if j != start]
    if any(len(v) != 2 for v in nbrs.values()):
        raise ValueError("diagram rotation is only supported on type A components")
    cycle = [start]
    nxt = max(nbrs[start], key=lambda k: nodes[k].linear)
    while nxt != start:
        prev = cycle[-1]
        cycle.append(nxt)
        a, b = nbrs[nxt]
        nxt = b if a == prev else a
    if len(cycle) != len(members):
        raise ValueError("diagram rotation is only supported on type A components")
    return cycle


def rotation_permutation(rd: RootDatum, F: FrobeniusDescriptor):
    nodes = affine_simple_system(rd)
    perm = list(range(len(nodes)))
    rot = F.diagram_rotation or ()
    ncomp = len(rd.components)
    if rot and len(rot) != ncomp:
        raise ValueError("diagram_rotation needs one integer per component (%d)" % ncomp)
    for c, k in enumerate(rot):
        if k % len([n for n in nodes if n.component == c]) == 0:
            continue
        cyc = affine_cycle(rd, c)
        for i, j in enumerate(cyc):
            perm[j] = cyc[(i + k) % len(cyc)]
    return tuple(perm)


def frobenius_node_permutation(rd: RootDatum, F: FrobeniusDescriptor):
    """Node action of F: theta followed by the rotation; the two must commute."""
    th = theta_node_permutation(rd, F)
    rho = rotation_permutation(rd, F)
    if any(rho[th[j]] != th[rho[j]] for j in range(len(th))):
        raise ValueError("diagram rotation does not commute with theta on the affine diagram")
    return tuple(rho[th[j]] for j in range(len(th)))


def _weyl_element_for(rd, nodes, perm):
    """The w in W0 with w(lin_j) = lin_perm(j) for all nodes, or None."""
    for w in generate_weyl(rd).elements:
        if all(mat_vec(w, n.linear) == nodes[perm[j]].linear for j, n in enumerate(nodes)):
            return w
    return None


@lru_cache(maxsize=None)
def facet_frobenius_matrix(rd: RootDatum, F: FrobeniusDescriptor):
    """Linear part of F on the standard apartment: w_rot * theta."""
    if not F.diagram_rotation or not any(F.diagram_rotation):
        return F.theta.matrix
    nodes = affine_simple_system(rd)
    rho = rotation_permutation(rd, F)
    w = _weyl_element_for(rd, nodes, rho)
    if w is None:
        raise ValueError("diagram rotation has no linear part in W0")
    return mat_mul(w, F.theta.matrix)


# facet types

@dataclass(frozen=True)
class FacetType:
    J: tuple
    barycenter: tuple = field(compare=False)
    labels: tuple = field(compare=False, default=())

    @property
    def name(self) -> str:
        return "{" + ",".join(self.labels) + "}"

    def is_face_of(self, other: "FacetType") -> bool:
        return set(self.J) >= set(other.J)


def barycenter(rd: RootDatum, J) -> tuple:
    nodes = affine_simple_system(rd)
    J = set(J)
    total = [Fraction(0)] * rd.rank
    for c, comp in enumerate(rd.components):
        verts = []
        for j, n in enumerate(nodes):
            if n.component != c or j in J:
                continue
            k = None if n.simple is None else rd.simple_indices.index(n.simple)
            verts.append(alcove_vertex(rd, comp, k))
        for i in range(rd.rank):
            total[i] += sum(v[i] for v in verts) / len(verts)
    return tuple(total)


@lru_cache(maxsize=None)
def facet_types(rd: RootDatum, F: FrobeniusDescriptor):
    nodes = affine_simple_system(rd)
    perm = frobenius_node_permutation(rd, F)
    ncomp = len(rd.components)
    out = []
    for size in range(len(nodes) + 1):
        for J in combinations(range(len(nodes)), size):
            Js = set(J)
            if any({j for j, n in enumerate(nodes) if n.component == c} <= Js for c in range(ncomp)):
                continue
            if {perm[j] for j in J} != Js:
                continue
            out.append(FacetType(J, barycenter(rd, J), tuple(nodes[j].label for j in J)))
    return tuple(out)


def hyperspecial_facet(rd: RootDatum, F: FrobeniusDescriptor):
    """The facet J = all finite simple nodes, when it is F-stable."""
    nodes = affine_simple_system(rd)
    J = tuple(j for j, n in enumerate(nodes) if n.simple is not None)
    for f in facet_types(rd, F):
        if f.J == J:
            return f
    return None


def facet_weyl(rd: RootDatum, sigma: FacetType):
    return _facet_weyl(rd, sigma.J)


@lru_cache(maxsize=None)
def _facet_weyl(rd, J):
    return reflection_subgroup(rd, J, affine_simple_system(rd))


def parahoric_quotient(rd: RootDatum, sigma: FacetType) -> RootDatum:
    b = sigma.barycenter
    keep = [i for i, r in enumerate(rd.roots) if Fraction(dot(r, b)).denominator == 1]
    roots = [rd.roots[i] for i in keep]
    nodes = affine_simple_system(rd)
    simple = [roots.index(nodes[j].linear) for j in sigma.J]
    return make_root_datum(rd.rank, roots, [rd.coroots[i] for i in keep], simple, rd.name)


# class tables per facet

@dataclass
class FacetTable:
    facet: FacetType
    classes: list  # int reps at level N, sorted
    psi: dict  # rep -> W0 rep (ints)


@lru_cache(maxsize=256)
def _tables(rd: RootDatum, F: FrobeniusDescriptor, N: int, lam: str):
    W0 = generate_weyl(rd)
    M = facet_frobenius_matrix(rd, F)
    out = []
    for f in facet_types(rd, F):
        H = facet_weyl(rd, f)
        reps = stable_classes_int(H.elements, M, F.q, N, rd.rank, lam, F.ell)
        psi = {x: canonical_int(x, W0.elements, N) for x in reps}
        out.append(FacetTable(f, reps, psi))
    return tuple(out)


def facet_classes(rd: RootDatum, F: FrobeniusDescriptor, sigma: FacetType, N: int, lam=None):
    """F-stable W_J-classes of Lambda-invertible order dividing N at sigma."""
    lam = lam or F.lam
    check_level(N, F.p)
    H = facet_weyl(rd, sigma)
    for t in _tables(rd, F, N, lam):
        if t.facet == sigma:
            return [GeometricClass(from_ints(x, N), sigma.name, H) for x in t.classes]
    raise ValueError("facet %s is not F-stable" % sigma.name)


def psi_sigma(rd: RootDatum, c: GeometricClass, lam=QLBAR) -> InertialParam:
    W0 = generate_weyl(rd)
    rep = canonical_rep(c.rep, W0)
    return InertialParam(GeometricClass(rep, "W0", W0), lam, class_order(rep))


def face_restriction(rd: RootDatum, c: GeometricClass, omega: FacetType, sigma: FacetType):
    """Transport a class at omega to its face sigma (J_sigma contains J_omega)."""
    if not sigma.is_face_of(omega):
        raise ValueError("%s is not a face of %s" % (sigma.name, omega.name))
    H = facet_weyl(rd, sigma)
    return GeometricClass(canonical_rep(c.rep, H), sigma.name, H)


@dataclass
class ClassSystem:
    assignment: dict  # FacetType -> frozenset of GeometricClass
    lam: str = QLBAR

    def __getitem__(self, sigma):
        return self.assignment[sigma]

    def facets(self):
        return sorted(self.assignment, key=lambda f: (len(f.J), f.J))

    def orders(self):
        return [c.order for s in self.assignment.values() for c in s]


def compute_S_phi(rd: RootDatum, F: FrobeniusDescriptor, lam, phi: InertialParam) -> ClassSystem:
    lam = lam or F.lam
    N = phi.order
    target = to_ints(phi.rep, N)
    assignment = {}
    for t in _tables(rd, F, N, lam):
        H = facet_weyl(rd, t.facet)
        assignment[t.facet] = frozenset(
            GeometricClass(from_ints(x, N), t.facet.name, H) for x in t.classes if t.psi[x] == target
        )
    return ClassSystem(assignment, lam)


# apartment symmetries

@dataclass(frozen=True)
class AlcoveSymmetry:
    w: tuple  # linear part in W0
    perm: tuple  # node permutation


@lru_cache(maxsize=None)
def alcove_symmetries(rd: RootDatum):
    """Elements t_lambda w (lambda in X^vee) mapping the fundamental alcove to itself."""
    nodes = affine_simple_system(rd)
    lins = {n.linear: j for j, n in enumerate(nodes)}
    out = []
    for w in generate_weyl(rd).elements:
        perm = []
        for n in nodes:
            j = lins.get(mat_vec(w, n.linear))
            if j is None:
                break
            perm.append(j)
        if len(perm) != len(nodes):
            continue
        A = [nodes[perm[j]].linear for j in range(len(nodes))]
        b = [nodes[j].offset - nodes[perm[j]].offset for j in range(len(nodes))]
        if not nodes or integer_solvable(A, b):
            out.append(AlcoveSymmetry(w, tuple(perm)))
    return tuple(out)


def frobenius_symmetries(rd: RootDatum, F: FrobeniusDescriptor):
    fp = frobenius_node_permutation(rd, F)
    return tuple(
        g for g in alcove_symmetries(rd)
        if all(g.perm[fp[j]] == fp[g.perm[j]] for j in range(len(fp)))
    )


@dataclass
class CoherenceReport:
    passed: bool
    face_pairs: int
    symmetries: int
    counterexample: str | None = None
    condition: int | None = None
    scope: str = "apartment"  # symmetries checked on the standard apartment only


def verify_zero_coherence(S: ClassSystem, rd: RootDatum, F: FrobeniusDescriptor) -> CoherenceReport:
    facets = facet_types(rd, F)
    N = 1
    for o in S.orders():
        N = N * o // _gcd(N, o)
    tables = {t.facet: t for t in _tables(rd, F, N, QLBAR)}
    stored = {f: {to_ints(c.rep, N) for c in S.assignment.get(f, ())} for f in facets}
    pairs = [(s, w) for s in facets for w in facets if s != w and s.is_face_of(w)]
    for sigma, omega in pairs:
        Hs = facet_weyl(rd, sigma)
        for x in tables[omega].classes:
            r = canonical_int(x, Hs.elements, N)
            if (r in stored[sigma]) != (x in stored[omega]):
                return CoherenceReport(
                    False, len(pairs), 0,
                    "class %s at %s restricts to %s at %s"
                    % (_fmt(x, N), omega.name, _fmt(r, N), sigma.name),
                    2,
                )
    syms = frobenius_symmetries(rd, F)
    by_J = {f.J: f for f in facets}
    for g in syms:
        for f in facets:
            img = by_J.get(tuple(sorted(g.perm[j] for j in f.J)))
            if img is None:
                return CoherenceReport(False, len(pairs), len(syms), "symmetry leaves facet types", 1)
            H = facet_weyl(rd, img)
            moved = {canonical_int(_act(g.w, x, N), H.elements, N) for x in stored[f]}
            if moved != stored[img]:
                return CoherenceReport(
                    False, len(pairs), len(syms),
                    "symmetry maps S at %s onto a different set at %s" % (f.name, img.name),
                    1,
                )
    return CoherenceReport(True, len(pairs), len(syms))


def verify_composition_law(rd: RootDatum, F: FrobeniusDescriptor, N: int, lam=None) -> bool:
    """psi_sigma(restriction(c)) = psi_omega(c) for all face pairs and classes."""
    lam = lam or F.lam
    W0 = generate_weyl(rd)
    tables = {t.facet: t for t in _tables(rd, F, N, lam)}
    facets = list(tables)
    for sigma in facets:
        Hs = facet_weyl(rd, sigma)
        for omega in facets:
            if not sigma.is_face_of(omega):
                continue
            for x in tables[omega].classes:
                r = canonical_int(x, Hs.elements, N)
                if canonical_int(r, W0.elements, N) != tables[omega].psi[x]:
                    return False
    return True


def _act(w, x, N):
    return tuple(sum(a * b for a, b in zip(row, x)) % N for row in w)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _fmt(x, N):
    return "(" + ", ".join(str(Fraction(a, N)) for a in x) + ")"


@dataclass
class PartitionReport:
    passed: bool
    parameters: int
    cardinalities: dict  # facet name -> number of classes
    message: str = ""


def verify_partition(rd: RootDatum, F: FrobeniusDescriptor, lam, N: int) -> PartitionReport:
    lam = lam or F.lam
    check_level(N, F.p)
    params = enumerate_inertial_params(rd, F, N, lam)
    universe = {t.facet: set(t.classes) for t in _tables(rd, F, N, lam)}
    covered = {f: set() for f in universe}
    card = {}
    for phi in params:
        S = compute_S_phi(rd, F, lam, phi)
        for f, classes in S.assignment.items():
            for c in classes:
                x = to_ints(c.rep, N)
                if x in covered[f]:
                    return PartitionReport(False, len(params), card, "class %s at %s lies in two S_phi" % (_fmt(x, N), f.name))
                covered[f].add(x)
    for f in universe:
        card[f.name] = len(universe[f])
        if covered[f] != universe[f]:
            missing = sorted(universe[f] - covered[f]) or sorted(covered[f] - universe[f])
            return PartitionReport(False, len(params), card, "class %s at %s is not covered" % (_fmt(missing[0], N), f.name))
    return PartitionReport(True, len(params), card)


def is_attained(rd: RootDatum, F: FrobeniusDescriptor, phi: InertialParam, lam=None) -> bool:
    S = compute_S_phi(rd, F, lam or phi.lam, phi)
    return any(S.assignment.values())
