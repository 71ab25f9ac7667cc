"""Levi parameter maps, restriction fibers, the equivalence criterion and discreteness."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .inertial import InertialParam
from .linalg import dot, identity, mat_mul, mat_vec, nullspace
from .root_datum import RootDatum, levi_subdatum
from .ss_classes import FrobeniusDescriptor, GeometricClass, class_order
from .weyl import (
    ReflectionSubgroup, canonical_rep, fixing_reflection_subgroup, from_ints,
    generate_weyl, level, levi_weyl, mod1, orbit_int, stabilizer, to_ints,
)


@dataclass(frozen=True)
class LeviContext:
    delta_m: tuple  # root indices
    W_M: ReflectionSubgroup

    @property
    def label(self) -> str:
        return "M" + str(list(self.delta_m))


def make_levi(rd: RootDatum, F: FrobeniusDescriptor | None, delta_m) -> LeviContext:
    delta_m = tuple(sorted(set(delta_m)))
    if not set(delta_m) <= set(rd.simple_indices):
        raise ValueError("Levi set must consist of simple roots")
    if F is not None:
        img = {F.theta(rd.roots[i]) for i in delta_m}
        if img != {rd.roots[i] for i in delta_m}:
            raise ValueError("Levi set is not theta-stable")
    return LeviContext(delta_m, levi_weyl(rd, delta_m))


def levi_param_map(rd: RootDatum, phi_m: GeometricClass, lam="Qlbar") -> InertialParam:
    W0 = generate_weyl(rd)
    rep = canonical_rep(phi_m.rep, W0)
    return InertialParam(GeometricClass(rep, "W0", W0), lam, class_order(rep))


def restriction_fibers(rd: RootDatum, F: FrobeniusDescriptor, phi: InertialParam, M: LeviContext):
    """F-stable W_M-orbits inside the W0-orbit of phi."""
    v = mod1(phi.rep)
    N = level(v)
    W0 = generate_weyl(rd)
    pts = orbit_int(to_ints(v, N), W0.elements, N)
    H = M.W_M.elements
    reps = set()
    for x in pts:
        orb = orbit_int(x, H, N)
        y = tuple(sum(a * F.q * b for a, b in zip(row, x)) % N for row in F.theta.matrix)
        if y in orb:
            reps.add(min(orb))
    return [GeometricClass(from_ints(x, N), M.label, M.W_M) for x in sorted(reps)]


def satisfies_equivalence_criterion(rd: RootDatum, phi_m: GeometricClass, M: LeviContext) -> bool:
    W0 = generate_weyl(rd)
    st = stabilizer(phi_m.rep, W0)
    fx = fixing_reflection_subgroup(phi_m.rep, rd, W0)
    return st.issubset(M.W_M) and fx.issubset(M.W_M)


@dataclass(frozen=True)
class DiscretenessWitness:
    w: tuple
    delta_m: tuple
    v: tuple
    w_m: tuple


def _noncentral_fixed_torus(rd: RootDatum, theta_p, delta_m) -> bool:
    """Is Z(M^)^{theta', o} non-central in G^ ?"""
    n = rd.rank
    rows = [rd.coroots[i] for i in delta_m]
    I = identity(n)
    rows += [tuple(theta_p[i][j] - I[i][j] for j in range(n)) for i in range(n)]
    basis = nullspace(rows, n)
    return any(dot(y, c) != 0 for y in basis for c in rd.coroots)


def discreteness_witness(rd: RootDatum, F: FrobeniusDescriptor, phi: InertialParam):
    """A proper Levi of the L-group through which phi extends, or None when discrete."""
    W0 = generate_weyl(rd)
    v = mod1(phi.rep)
    N = level(v)
    pts = sorted(orbit_int(to_ints(v, N), W0.elements, N))
    simple = rd.simple_indices
    for w in W0.elements:
        tp = mat_mul(w, F.theta.matrix)
        for k in range(len(simple)):
            for delta_m in combinations(simple, k):
                sub = levi_subdatum(rd, delta_m)
                roots_m = set(sub.roots)
                if {mat_vec(tp, r) for r in roots_m} != roots_m:
                    continue
                if not _noncentral_fixed_torus(rd, tp, delta_m):
                    continue
                WM = levi_weyl(rd, delta_m, W0)
                for x in pts:
                    y = tuple(sum(a * F.q * b for a, b in zip(row, x)) % N for row in tp)
                    for u in WM.elements:
                        z = tuple(sum(a * b for a, b in zip(row, y)) % N for row in u)
                        if z == x:
                            return DiscretenessWitness(w, tuple(delta_m), from_ints(x, N), u)
    return None


def is_discrete(rd: RootDatum, F: FrobeniusDescriptor, phi: InertialParam) -> bool:
    return discreteness_witness(rd, F, phi) is None
