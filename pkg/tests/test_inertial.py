from __future__ import annotations

from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings, strategies as st

from levelzero.building import is_attained
from levelzero.catalog import gl, gl_flip, pgl, sl, sp
from levelzero.inertial import (
    as_param, centralizer_connected, enumerate_inertial_params, refine_to_Ql, torus_theta_decomposition,
    twisted_torus_params,
)
from levelzero.linalg import mat_vec, rank
from levelzero.ss_classes import QLBAR, ZLBAR, ell_regular_part, make_frobenius
from levelzero.weyl import canonical_rep, generate_weyl

from oracles import signed_permutation


def reps(params):
    return [p.rep for p in params]


def test_enumerate_examples():
    F = make_frobenius(sl(2), 3)
    assert reps(enumerate_inertial_params(sl(2), F, 1)) == [(0,)]
    assert reps(enumerate_inertial_params(sl(2), F, 8)) == [(0,), (Fr(1, 4),), (Fr(1, 2),)]
    F = make_frobenius(gl(2), 3)
    assert reps(enumerate_inertial_params(gl(2), F, 2)) == [(0, 0), (0, Fr(1, 2)), (Fr(1, 2), Fr(1, 2))]


def test_refine_examples():
    rd = sl(2)
    F = make_frobenius(rd, 5, ell=3, lam=ZLBAR)
    phi = as_param(rd, (Fr(1, 2),), ZLBAR)
    assert reps(refine_to_Ql(rd, F, phi, 4)) == [(Fr(1, 2),)]  # ell does not divide N
    assert reps(refine_to_Ql(rd, F, phi, 6)) == [(Fr(1, 6),), (Fr(1, 2),)]
    F = make_frobenius(rd, 7, ell=3, lam=ZLBAR)
    assert reps(refine_to_Ql(rd, F, as_param(rd, (0,), ZLBAR), 3)) == [(0,), (Fr(1, 3),)]
    with pytest.raises(ValueError):
        refine_to_Ql(rd, F, as_param(rd, (0,)), 14)


@pytest.mark.parametrize("rd", [sl(2), gl(2), pgl(2), sp(4)], ids=lambda r: r.name)
@pytest.mark.parametrize("q,ell,N", [(5, 2, 12), (7, 3, 12), (5, 3, 18)])
def test_refinement_partitions_full_enumeration(rd, q, ell, N):
    F = make_frobenius(rd, q, ell=ell, lam=ZLBAR)
    Np = N
    while Np % ell == 0:
        Np //= ell
    full = reps(enumerate_inertial_params(rd, F, N, QLBAR))
    seen = []
    for phi in enumerate_inertial_params(rd, F, Np, ZLBAR):
        fib = reps(refine_to_Ql(rd, F, phi, N))
        assert phi.rep in fib
        assert len(set(fib)) == len(fib)
        W = generate_weyl(rd)
        for r in fib:
            assert canonical_rep(ell_regular_part(r, ell), W) == phi.rep
        seen += fib
    assert sorted(seen) == sorted(full) and len(seen) == len(set(seen))


def test_centralizer_examples():
    assert centralizer_connected(sl(2), as_param(sl(2), (0,)))
    assert not centralizer_connected(sl(2), as_param(sl(2), (Fr(1, 2),)))
    assert centralizer_connected(gl(2), as_param(gl(2), (Fr(1, 2), 0)))


def test_twisted_torus_examples():
    rd = sl(2)
    F = make_frobenius(rd, 3)
    W = generate_weyl(rd)
    ident, s = sorted(W.elements, key=lambda g: g != ((1,),))
    assert reps(twisted_torus_params(rd, F, ident, 2)) == [(0,), (Fr(1, 2),)]
    assert (Fr(1, 4),) in reps(twisted_torus_params(rd, F, s, 4))
    assert reps(twisted_torus_params(sp(4), make_frobenius(sp(4), 3), ((1, 0), (0, 1)), 1)) == [(0, 0)]


CASES = [
    (sl(2), None, None), (pgl(2), None, None), (gl(2), None, None), (gl(3), None, None), (sp(4), None, None),
    (gl(2), gl_flip(2), None), (gl(3), gl_flip(3), None), (gl(2), None, (1,)), (gl(3), None, (1,)),
    (pgl(2), None, (1,)),
]


@pytest.mark.parametrize("rd,theta,rot", CASES, ids=lambda x: getattr(x, "name", str(x)))
@pytest.mark.parametrize("q,N", [(3, 4), (5, 8), (7, 6)])
def test_attained_covered_by_twisted_tori(rd, theta, rot, q, N):
    F = make_frobenius(rd, q, theta=theta, rotation=rot)
    params = enumerate_inertial_params(rd, F, N)
    union = set()
    for w in generate_weyl(rd).elements:
        tor = reps(twisted_torus_params(rd, F, w, N))
        assert set(tor) <= set(reps(params))
        union |= set(tor)
    attained = {p.rep for p in params if is_attained(rd, F, p)}
    assert attained <= union
    if rot is None:
        # quasi-split: every parameter factors through some unramified torus and is attained
        assert attained == union == set(reps(params))


def test_theta_decomposition_examples():
    fixed, image, idx = torus_theta_decomposition(2, ((1, 0), (0, 1)))
    assert len(fixed) == 2 and image == [] and idx == 1
    fixed, image, idx = torus_theta_decomposition(1, ((-1,),))
    assert fixed == [] and image == [(2,)] and idx == 2
    fixed, image, idx = torus_theta_decomposition(2, ((0, 1), (1, 0)))
    assert fixed == [(1, 1)] and image == [(1, -1)] and idx == 2
    with pytest.raises(ValueError):
        torus_theta_decomposition(2, ((1, 1), (0, 1)))


def index_oracle(theta):
    """|det| of the stacked bases, computed independently of the Smith form."""
    from sympy import Matrix

    fixed, image, _ = torus_theta_decomposition(len(theta), theta)
    return abs(int(Matrix(fixed + image).det()))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda r: st.tuples(st.permutations(list(range(r))), st.lists(st.sampled_from([1, -1]), min_size=r, max_size=r))))
def test_theta_decomposition_properties(data):
    perm, signs = data
    theta = signed_permutation(perm, signs)
    r = len(perm)
    fixed, image, idx = torus_theta_decomposition(r, theta)
    assert len(fixed) + len(image) == r
    assert rank(fixed + image) == r
    for b in fixed:
        assert mat_vec(theta, b) == b
    for b in image:
        assert rank(image + [mat_vec(theta, b)]) == len(image)
    assert idx >= 1
    assert index_oracle(theta) == idx
