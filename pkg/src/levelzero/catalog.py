"""Standard root data in explicit coordinates."""
from __future__ import annotations

from itertools import permutations

from .linalg import dot, solve
from .root_datum import RootDatum, make_automorphism, make_root_datum


def _unit(n, i, k=1):
    return tuple(k if j == i else 0 for j in range(n))


def _add(*vs):
    return tuple(sum(x) for x in zip(*vs))


def cartan_matrix(kind: str, n: int):
    """Matrix A[i][j] = <alpha_i, alpha_j^vee>; the last node is the odd one in B/C."""
    A = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]
    if kind == "A":
        pass
    elif kind == "B" and n >= 2:
        A[n - 2][n - 1] = -2
    elif kind == "C" and n >= 2:
        A[n - 1][n - 2] = -2
    elif kind == "D" and n >= 3:
        A = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]
        A[n - 1][n - 2] = A[n - 2][n - 1] = 0
        A[n - 1][n - 3] = A[n - 3][n - 1] = -1
    elif kind == "G" and n == 2:
        A = [[2, -1], [-3, 2]]
    else:
        raise ValueError("unsupported Cartan type %s%d" % (kind, n))
    return tuple(tuple(r) for r in A)


def close_roots(simple_roots, simple_coroots):
    """All (root, coroot) pairs generated from the simple ones by reflections."""
    pairs = list(zip(map(tuple, simple_roots), map(tuple, simple_coroots)))
    pairs += [(tuple(-x for x in a), tuple(-x for x in c)) for a, c in pairs]
    seen = dict(pairs)
    todo = list(pairs)
    while todo:
        b, bc = todo.pop()
        for a, ac in zip(simple_roots, simple_coroots):
            k = dot(b, ac)
            nb = tuple(x - k * y for x, y in zip(b, a))
            m = dot(a, bc)
            nbc = tuple(x - m * y for x, y in zip(bc, ac))
            if nb not in seen:
                seen[nb] = nbc
                todo.append((nb, nbc))
    roots = sorted(seen)
    return roots, [seen[r] for r in roots]


def _from_simple(rank, sr, sc, name):
    roots, coroots = close_roots(sr, sc)
    simple = [roots.index(tuple(r)) for r in sr]
    return make_root_datum(rank, roots, coroots, simple, name)


def simply_connected(kind: str, n: int, name: str | None = None) -> RootDatum:
    """X = weight lattice in fundamental-weight coordinates."""
    A = cartan_matrix(kind, n)
    sr = [tuple(A[i]) for i in range(n)]
    sc = [_unit(n, i) for i in range(n)]
    return _from_simple(n, sr, sc, name or "%s%d-sc" % (kind, n))


def adjoint(kind: str, n: int, name: str | None = None) -> RootDatum:
    """X = root lattice in simple-root coordinates."""
    A = cartan_matrix(kind, n)
    sr = [_unit(n, i) for i in range(n)]
    sc = [tuple(A[k][j] for k in range(n)) for j in range(n)]
    return _from_simple(n, sr, sc, name or "%s%d-ad" % (kind, n))


def sl(n: int) -> RootDatum:
    return simply_connected("A", n - 1, "SL%d" % n)


def pgl(n: int) -> RootDatum:
    return adjoint("A", n - 1, "PGL%d" % n)


def gl(n: int) -> RootDatum:
    sr = [_add(_unit(n, i), _unit(n, i + 1, -1)) for i in range(n - 1)]
    if not sr:
        return torus(1, "GL1")
    return _from_simple(n, sr, sr, "GL%d" % n)


def sp(two_n: int) -> RootDatum:
    """Sp_{2n} in the coordinates X = Z^n, roots +-e_i +- e_j and +-2e_i."""
    n = two_n // 2
    sr = [_add(_unit(n, i), _unit(n, i + 1, -1)) for i in range(n - 1)] + [_unit(n, n - 1, 2)]
    sc = sr[:-1] + [_unit(n, n - 1)]
    return _from_simple(n, sr, sc, "Sp%d" % two_n)


def so_odd(two_n_plus_1: int) -> RootDatum:
    """SO_{2n+1}: roots +-e_i +- e_j and +-e_i, coroots of the short roots 2e_i."""
    n = two_n_plus_1 // 2
    sr = [_add(_unit(n, i), _unit(n, i + 1, -1)) for i in range(n - 1)] + [_unit(n, n - 1)]
    sc = sr[:-1] + [_unit(n, n - 1, 2)]
    return _from_simple(n, sr, sc, "SO%d" % two_n_plus_1)


def so_even(two_n: int) -> RootDatum:
    n = two_n // 2
    sr = [_add(_unit(n, i), _unit(n, i + 1, -1)) for i in range(n - 1)]
    sr.append(_add(_unit(n, n - 2), _unit(n, n - 1)))
    return _from_simple(n, sr, sr, "SO%d" % two_n)


def torus(r: int, name: str | None = None) -> RootDatum:
    return make_root_datum(r, [], [], [], name or "T%d" % r)


def by_name(name: str) -> RootDatum:
    """Parse names like GL3, SL2, PGL2, Sp4, SO5, SO6, T2."""
    import re

    m = re.fullmatch(r"(GL|SL|PGL|Sp|SO|T)(\d+)", name)
    if not m:
        raise ValueError("unknown group name %r" % name)
    fam, k = m.group(1), int(m.group(2))
    if fam == "SO":
        return so_odd(k) if k % 2 else so_even(k)
    return {"GL": gl, "SL": sl, "PGL": pgl, "Sp": sp, "T": torus}[fam](k)


def diagram_automorphisms(rd: RootDatum):
    """Based automorphisms of a datum whose simple roots span X (x) Q."""
    sr, sc = rd.simple_roots, rd.simple_coroots
    k = len(sr)
    if k != rd.rank:
        raise ValueError("simple roots do not span X; diagram automorphisms not unique")
    A = [[dot(a, c) for c in sc] for a in sr]
    out = []
    for perm in permutations(range(k)):
        if any(A[perm[i]][perm[j]] != A[i][j] for i in range(k) for j in range(k)):
            continue
        # row r of M solves <m_r, alpha_i> = alpha_perm(i)[r]
        target = [sr[perm[i]] for i in range(k)]
        rows = []
        ok = True
        for r in range(rd.rank):
            x = solve([list(v) for v in sr], [t[r] for t in target])
            if x is None or any(getattr(v, "denominator", 1) != 1 for v in x):
                ok = False
                break
            rows.append(tuple(int(v) for v in x))
        if not ok:
            continue
        try:
            out.append(make_automorphism(rd, rows))
        except ValueError:
            continue
    return out


def gl_flip(n: int):
    """x -> -w0 x on GL_n, i.e. (x_1..x_n) -> (-x_n..-x_1)."""
    return tuple(tuple(-1 if j == n - 1 - i else 0 for j in range(n)) for i in range(n))

