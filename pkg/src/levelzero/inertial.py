"""Tame inertial parameters as F-stable Weyl orbits."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .linalg import identity, integer_kernel, lattice_index, mat_mul, matrix_order, transpose
from .root_datum import RootDatum
from .ss_classes import (
    QLBAR, FrobeniusDescriptor, GeometricClass, check_level, class_order, ell_regular_part,
    enumerate_F_stable_orbits, order_ok,
)
from .weyl import (
    canonical_rep, fixing_reflection_subgroup, from_ints, generate_weyl, orbit_int, stabilizer,
)


@dataclass(frozen=True)
class InertialParam:
    orbit: GeometricClass
    lam: str
    order: int

    @property
    def rep(self):
        return self.orbit.rep


def as_param(rd: RootDatum, v, lam=QLBAR) -> InertialParam:
    W = generate_weyl(rd)
    rep = canonical_rep(v, W)
    return InertialParam(GeometricClass(rep, "W0", W), lam, class_order(rep))


def enumerate_inertial_params(rd: RootDatum, F: FrobeniusDescriptor, N: int, lam=None):
    lam = lam or F.lam
    return [InertialParam(c, lam, class_order(c.rep)) for c in enumerate_F_stable_orbits(rd, F, N, lam)]


def refine_to_Ql(rd: RootDatum, F: FrobeniusDescriptor, phi: InertialParam, N: int):
    """Qlbar parameters of order dividing N whose ell-regular part is phi."""
    if F.ell is None:
        raise ValueError("refinement needs ell")
    check_level(N, F.p)
    W = generate_weyl(rd)
    out = []
    for psi in enumerate_inertial_params(rd, F, N, QLBAR):
        if canonical_rep(ell_regular_part(psi.rep, F.ell), W) == phi.rep:
            out.append(psi)
    return out


def centralizer_connected(rd: RootDatum, phi: InertialParam) -> bool:
    """Stabilizer of the representative equals its reflection part (connectedness proxy)."""
    W = generate_weyl(rd)
    st = stabilizer(phi.rep, W)
    fx = fixing_reflection_subgroup(phi.rep, rd, W)
    return st.element_set == fx.element_set


def twisted_torus_params(rd: RootDatum, F: FrobeniusDescriptor, w, N: int, lam=None):
    """W0-orbits of v with (w theta)(q v) = v and order dividing N."""
    lam = lam or F.lam
    check_level(N, F.p)
    W = generate_weyl(rd)
    M = mat_mul(w, F.theta.matrix)
    reps = set()
    for x in product(range(N), repeat=rd.rank):
        y = tuple(sum(a * F.q * b for a, b in zip(row, x)) % N for row in M)
        if y != x:
            continue
        rep = min(orbit_int(x, W.elements, N))
        reps.add(rep)
    out = []
    for x in sorted(reps):
        v = from_ints(x, N)
        o = class_order(v)
        if order_ok(o, lam, F.ell):
            out.append(InertialParam(GeometricClass(v, "W0", W), lam, o))
    return out


def torus_theta_decomposition(r: int, theta):
    """(basis of X^theta, basis of (1-theta)X, [X : X^theta + (1-theta)X])."""
    theta = tuple(tuple(int(x) for x in row) for row in theta)
    if len(theta) != r:
        raise ValueError("theta has the wrong size")
    matrix_order(theta)
    I = identity(r)
    L = tuple(tuple(I[i][j] - theta[i][j] for j in range(r)) for i in range(r))
    fixed = [_normalize(v) for v in integer_kernel(L, r)]
    image = [_normalize(v) for v in _lattice_basis(transpose(L), r)]
    index = lattice_index(fixed + image, r)
    if index == 0:
        raise ValueError("fixed and image spaces are not complementary")
    return fixed, image, index


def _lattice_basis(generators, r):
    """Z-basis of the lattice spanned by the generators (rows)."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_decomp

    gens = [g for g in generators if any(g)]
    if not gens:
        return []
    G = Matrix(len(gens), r, [x for g in gens for x in g])
    D, U, V = smith_normal_decomp(G, domain=ZZ)
    Vinv = V.inv()
    out = []
    for i in range(min(D.shape)):
        d = int(D[i, i])
        if d:
            out.append(tuple(int(d * Vinv[i, j]) for j in range(r)))
    return out


def _normalize(v):
    v = tuple(int(x) for x in v)
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v
