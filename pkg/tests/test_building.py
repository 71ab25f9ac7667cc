from __future__ import annotations

from fractions import Fraction as Fr

import pytest

from levelzero.building import (
    ClassSystem, alcove_symmetries, compute_S_phi, face_restriction, facet_classes, facet_frobenius_matrix,
    facet_types, facet_weyl, frobenius_symmetries, hyperspecial_facet, is_attained, parahoric_quotient,
    psi_sigma, verify_composition_law, verify_partition, verify_zero_coherence,
)
from levelzero.catalog import gl, gl_flip, pgl, sl, so_odd, sp, torus
from levelzero.inertial import as_param, enumerate_inertial_params
from levelzero.linalg import dot
from levelzero.root_datum import affine_simple_system
from levelzero.ss_classes import GeometricClass, make_frobenius
from levelzero.weyl import canonical_rep, generate_weyl

from oracles import frob, orbit_by_reflections


def facet_by_labels(rd, F, lins):
    nodes = affine_simple_system(rd)
    J = tuple(sorted(j for j, n in enumerate(nodes) if n.linear in lins))
    return next(f for f in facet_types(rd, F) if f.J == J)


def test_facet_types_examples():
    assert [f.J for f in facet_types(torus(2), make_frobenius(torus(2), 3))] == [()]
    assert len(facet_types(sl(2), make_frobenius(sl(2), 3))) == 3
    assert [f.J for f in facet_types(gl(3), make_frobenius(gl(3), 5, rotation=(1,)))] == [()]


@pytest.mark.parametrize("rd", [sl(2), gl(3), sp(4), so_odd(5), pgl(3)], ids=lambda r: r.name)
def test_barycenter_in_facet(rd):
    F = make_frobenius(rd, 5)
    nodes = affine_simple_system(rd)
    for f in facet_types(rd, F):
        for j, n in enumerate(nodes):
            val = dot(n.linear, f.barycenter) + n.offset
            assert (val == 0) if j in f.J else (val > 0)


def test_parahoric_examples():
    F = make_frobenius(sp(4), 3)
    rd = sp(4)
    chamber = facet_types(rd, F)[0]
    assert chamber.J == () and parahoric_quotient(rd, chamber).roots == ()
    F2 = make_frobenius(sl(2), 3)
    hyp = hyperspecial_facet(sl(2), F2)
    assert parahoric_quotient(sl(2), hyp).roots == sl(2).roots
    mid = facet_by_labels(rd, F, {(-2, 0), (0, 2)})
    assert mid.barycenter == (Fr(1, 2), 0)
    q = parahoric_quotient(rd, mid)
    assert set(q.roots) == {(2, 0), (-2, 0), (0, 2), (0, -2)}
    assert generate_weyl(q).element_set == facet_weyl(rd, mid).element_set


@pytest.mark.parametrize("rd", [gl(3), sp(4), so_odd(5)], ids=lambda r: r.name)
def test_parahoric_weyl_matches_reflection_subgroup(rd):
    F = make_frobenius(rd, 3)
    for f in facet_types(rd, F):
        q = parahoric_quotient(rd, f)
        assert generate_weyl(q).element_set == facet_weyl(rd, f).element_set


def test_psi_examples():
    rd = sp(4)
    F = make_frobenius(rd, 3)
    mid = facet_by_labels(rd, F, {(-2, 0), (0, 2)})
    a = GeometricClass((Fr(1, 2), 0), mid.name, facet_weyl(rd, mid))
    b = GeometricClass((0, Fr(1, 2)), mid.name, facet_weyl(rd, mid))
    assert canonical_rep(a.rep, facet_weyl(rd, mid)) != canonical_rep(b.rep, facet_weyl(rd, mid))
    assert psi_sigma(rd, a).rep == psi_sigma(rd, b).rep
    assert psi_sigma(rd, GeometricClass((0, 0))).rep == (0, 0)


def test_face_restriction_examples():
    rd = sp(4)
    F = make_frobenius(rd, 3)
    chamber = facet_types(rd, F)[0]
    mid = facet_by_labels(rd, F, {(-2, 0), (0, 2)})
    c = GeometricClass((Fr(1, 2), 0), chamber.name, facet_weyl(rd, chamber))
    assert face_restriction(rd, c, chamber, chamber).rep == c.rep
    r = face_restriction(rd, c, chamber, mid)
    assert r.rep == (Fr(1, 2), 0)  # sign changes fix (1/2, 0); the swap is not in W_J
    with pytest.raises(ValueError):
        face_restriction(rd, r, mid, chamber)


def test_S_phi_examples():
    rd = sl(2)
    F3 = make_frobenius(rd, 3)
    phi = as_param(rd, (Fr(1, 4),))
    S = compute_S_phi(rd, F3, None, phi)
    sizes = {f.J: len(S[f]) for f in facet_types(rd, F3)}
    assert sizes == {(): 0, (0,): 1, (1,): 1}
    F5 = make_frobenius(rd, 5)
    S = compute_S_phi(rd, F5, None, as_param(rd, (Fr(3, 4),)))
    iwahori = facet_types(rd, F5)[0]
    assert {c.rep for c in S[iwahori]} == {(Fr(1, 4),), (Fr(3, 4),)}
    triv = compute_S_phi(rd, F5, None, as_param(rd, (0,)))
    assert all({c.rep for c in v} == {(0,)} for v in triv.assignment.values())


def brute_S(rd, F, phi):
    """S_phi by reflection closure on the facet's walls, no matrix groups."""
    nodes = affine_simple_system(rd)
    big = orbit_by_reflections(phi.rep, rd.roots, rd.coroots)
    M = facet_frobenius_matrix(rd, F)
    out = {}
    for f in facet_types(rd, F):
        lins = [nodes[j].linear for j in f.J]
        cos = [rd.coroots[rd.index_of(l)] for l in lins]
        orbs = set()
        for v in big:
            o = orbit_by_reflections(v, lins, cos)
            if frob(v, M, F.q) in o:
                orbs.add(min(o))
        out[f.J] = orbs
    return out


CASES = [(sl(2), None, None), (pgl(2), None, None), (gl(3), None, None), (sp(4), None, None),
         (so_odd(5), None, None), (gl(3), gl_flip(3), None), (gl(3), None, (1,)), (gl(2), None, (1,))]


@pytest.mark.parametrize("rd,theta,rot", CASES, ids=lambda x: getattr(x, "name", str(x)))
@pytest.mark.parametrize("q,N", [(3, 8), (5, 4)])
def test_S_phi_matches_brute_force(rd, theta, rot, q, N):
    F = make_frobenius(rd, q, theta=theta, rotation=rot)
    for phi in enumerate_inertial_params(rd, F, N):
        S = compute_S_phi(rd, F, None, phi)
        got = {f.J: {c.rep for c in S[f]} for f in S.assignment}
        assert got == brute_S(rd, F, phi)


@pytest.mark.parametrize("rd,theta,rot", CASES, ids=lambda x: getattr(x, "name", str(x)))
def test_coherence_and_partition(rd, theta, rot):
    F = make_frobenius(rd, 5, theta=theta, rotation=rot)
    for N in (4, 6):
        assert verify_partition(rd, F, None, N).passed
        assert verify_composition_law(rd, F, N)
        for phi in enumerate_inertial_params(rd, F, N):
            assert verify_zero_coherence(compute_S_phi(rd, F, None, phi), rd, F).passed


def test_deleting_a_vertex_class_breaks_condition_2():
    rd = sl(2)
    F = make_frobenius(rd, 5)
    S = compute_S_phi(rd, F, None, as_param(rd, (Fr(1, 4),)))
    vertex = facet_types(rd, F)[1]
    broken = dict(S.assignment)
    broken[vertex] = frozenset()
    rep = verify_zero_coherence(ClassSystem(broken), rd, F)
    assert not rep.passed and rep.condition == 2


def test_everything_is_coherent():
    rd = sp(4)
    F = make_frobenius(rd, 3)
    S = ClassSystem({f: frozenset(facet_classes(rd, F, f, 8)) for f in facet_types(rd, F)})
    assert verify_zero_coherence(S, rd, F).passed


def test_symmetry_violation_detected():
    rd = pgl(2)
    F = make_frobenius(rd, 3)
    assert len(frobenius_symmetries(rd, F)) == 2
    # at q=3 the chamber carries nothing over 1/4, so dropping one vertex keeps condition (2)
    S = compute_S_phi(rd, F, None, as_param(rd, (Fr(1, 4),)))
    chamber, v0, v1 = facet_types(rd, F)
    assert not S[chamber] and S[v0] and S[v1]
    fake = ClassSystem({chamber: frozenset(), v0: S[v0], v1: frozenset()})
    rep = verify_zero_coherence(fake, rd, F)
    assert not rep.passed and rep.condition == 1


def test_alcove_symmetry_groups():
    assert len(alcove_symmetries(sl(2))) == 1
    assert len(alcove_symmetries(pgl(2))) == 2
    assert len(alcove_symmetries(gl(2))) == 2
    assert len(alcove_symmetries(gl(3))) == 3
    assert len(alcove_symmetries(sp(4))) == 1
    assert len(alcove_symmetries(so_odd(5))) == 2


@pytest.mark.parametrize("rd", [pgl(2), gl(3), so_odd(5)], ids=lambda r: r.name)
def test_psi_equivariance_under_symmetries(rd):
    F = make_frobenius(rd, 5)
    by_J = {f.J: f for f in facet_types(rd, F)}
    from levelzero.weyl import act

    for g in alcove_symmetries(rd):
        for f in facet_types(rd, F):
            img = by_J[tuple(sorted(g.perm[j] for j in f.J))]
            for c in facet_classes(rd, F, f, 4):
                moved = GeometricClass(canonical_rep(act(g.w, c.rep), facet_weyl(rd, img)), img.name)
                assert psi_sigma(rd, moved).rep == psi_sigma(rd, c).rep


def test_partition_examples():
    assert verify_partition(sl(2), make_frobenius(sl(2), 3), None, 1).passed
    r = verify_partition(sl(2), make_frobenius(sl(2), 3), None, 8)
    assert r.passed and r.parameters == 3 and sum(r.cardinalities.values()) == 8
    assert verify_partition(sp(4), make_frobenius(sp(4), 3), None, 8).passed
    with pytest.raises(ValueError):
        verify_partition(sl(2), make_frobenius(sl(2), 3), None, 6)


def test_attained_examples():
    for rd in (sl(2), gl(3), sp(4)):
        F = make_frobenius(rd, 5)
        assert all(is_attained(rd, F, p) for p in enumerate_inertial_params(rd, F, 4))
    rd = gl(3)
    F = make_frobenius(rd, 5, rotation=(1,))
    assert is_attained(rd, F, as_param(rd, (0, 0, 0)))
    phi = as_param(rd, (0, 0, Fr(1, 2)))  # split-torus only: no F-fixed chamber vector
    assert not is_attained(rd, F, phi)
    chamber = facet_types(rd, F)[0]
    assert all(psi_sigma(rd, c).rep != phi.rep for c in facet_classes(rd, F, chamber, 2))


@pytest.mark.parametrize("rd", [sl(2), pgl(2), gl(2), gl(3), sp(4), so_odd(5)], ids=lambda r: r.name)
def test_hyperspecial_bijective(rd):
    F = make_frobenius(rd, 5)
    h = hyperspecial_facet(rd, F)
    for N in (4, 8, 12):
        params = {p.rep for p in enumerate_inertial_params(rd, F, N)}
        images = [psi_sigma(rd, c).rep for c in facet_classes(rd, F, h, N)]
        assert sorted(images) == sorted(params)
