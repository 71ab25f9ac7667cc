"""Based root data, their duals, Levi subdata and affine simple systems."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .linalg import (
    dot, identity, inverse, mat_vec, matrix_order, rank as mat_rank, solve, transpose,
)


class RootDatumError(ValueError):
    """Validation failure; ``index`` names the offending root when there is one."""

    def __init__(self, message: str, index: int | None = None):
        if index is not None:
            message = "%s (root %d)" % (message, index)
        super().__init__(message)
        self.index = index


@dataclass(frozen=True)
class RootDatum:
    rank: int
    roots: tuple
    coroots: tuple
    simple_indices: tuple
    name: str = ""

    @property
    def simple_roots(self):
        return tuple(self.roots[i] for i in self.simple_indices)

    @property
    def simple_coroots(self):
        return tuple(self.coroots[i] for i in self.simple_indices)

    def index_of(self, root) -> int:
        return self._root_index[tuple(root)]

    @cached_property
    def _root_index(self):
        return {r: i for i, r in enumerate(self.roots)}

    @cached_property
    def coefficients(self):
        """Coordinates of each root in the simple roots (integers)."""
        return tuple(_simple_coefficients(self.simple_roots, r) for r in self.roots)

    @cached_property
    def positive_indices(self):
        return tuple(i for i, c in enumerate(self.coefficients) if all(x >= 0 for x in c))

    def reflection(self, i: int):
        """Matrix of s_alpha on X: x -> x - <x, alpha^vee> alpha."""
        a, ac = self.roots[i], self.coroots[i]
        n = self.rank
        return tuple(tuple(int(r == c) - a[r] * ac[c] for c in range(n)) for r in range(n))

    @cached_property
    def components(self):
        """Irreducible components as tuples of positions in simple_indices."""
        k = len(self.simple_indices)
        sr, sc = self.simple_roots, self.simple_coroots
        parent = list(range(k))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in range(k):
            for j in range(k):
                if i != j and dot(sr[i], sc[j]) != 0:
                    parent[find(i)] = find(j)
        groups = {}
        for i in range(k):
            groups.setdefault(find(i), []).append(i)
        return tuple(sorted(tuple(g) for g in groups.values()))

    def component_roots(self, comp):
        """Indices of roots supported on the given component."""
        comp = set(comp)
        return tuple(
            i for i, c in enumerate(self.coefficients)
            if all(x == 0 for j, x in enumerate(c) if j not in comp)
        )

    def highest_root(self, comp) -> int:
        best = max(self.component_roots(comp), key=lambda i: sum(self.coefficients[i]))
        return best

    def is_torus(self) -> bool:
        return not self.roots


def _simple_coefficients(simple_roots, r):
    if not simple_roots:
        return ()
    A = transpose(simple_roots)  # columns are simple roots
    x = solve(A, r)
    if x is None:
        return None
    return tuple(x)


def _lex_positive(v) -> bool:
    for x in v:
        if x:
            return x > 0
    return False


def _find_base(roots):
    pos = [r for r in roots if _lex_positive(r)]
    pset = set(pos)
    out = []
    for r in pos:
        decomposable = any(
            tuple(a - b for a, b in zip(r, s)) in pset for s in pos if s != r
        )
        if not decomposable:
            out.append(r)
    return out


def make_root_datum(rank, roots, coroots, simple=None, name="") -> RootDatum:
    """Canonicalize and validate. ``simple`` lists indices into ``roots`` or None."""
    roots = [tuple(int(x) for x in r) for r in roots]
    coroots = [tuple(int(x) for x in r) for r in coroots]
    if len(roots) != len(coroots):
        raise RootDatumError("roots and coroots differ in number")
    for i, (r, c) in enumerate(zip(roots, coroots)):
        if len(r) != rank or len(c) != rank:
            raise RootDatumError("vector length differs from rank", i)
    if simple is None:
        simple_vecs = _find_base(roots)
    else:
        simple_vecs = [roots[i] for i in simple]
    order = sorted(range(len(roots)), key=lambda i: roots[i])
    new_roots = tuple(roots[i] for i in order)
    new_coroots = tuple(coroots[i] for i in order)
    pos = {r: i for i, r in enumerate(new_roots)}
    simple_idx = tuple(sorted(pos[v] for v in set(simple_vecs)))
    return validate_root_datum(RootDatum(rank, new_roots, new_coroots, simple_idx, name))


def validate_root_datum(raw: RootDatum) -> RootDatum:
    roots, coroots = raw.roots, raw.coroots
    n = raw.rank
    if n < 1:
        raise RootDatumError("rank must be positive")
    if len(roots) != len(coroots):
        raise RootDatumError("roots and coroots differ in number")
    index = {}
    for i, (r, c) in enumerate(zip(roots, coroots)):
        if len(r) != n or len(c) != n:
            raise RootDatumError("vector length differs from rank", i)
        if r in index:
            raise RootDatumError("duplicate root", i)
        index[r] = i
    for i, (r, c) in enumerate(zip(roots, coroots)):
        if dot(r, c) != 2:
            raise RootDatumError("pairing <alpha, alpha^vee> is not 2", i)
    for i, (r, c) in enumerate(zip(roots, coroots)):
        neg = tuple(-x for x in r)
        j = index.get(neg)
        if j is None or coroots[j] != tuple(-x for x in c):
            raise RootDatumError("negative root missing", i)
        if tuple(2 * x for x in r) in index:
            raise RootDatumError("root system is not reduced", i)
    for i, (a, ac) in enumerate(zip(roots, coroots)):
        for b, bc in zip(roots, coroots):
            k = dot(b, ac)
            img = tuple(x - k * y for x, y in zip(b, a))
            j = index.get(img)
            if j is None:
                raise RootDatumError("reflection does not permute roots", i)
            m = dot(a, bc)
            cimg = tuple(x - m * y for x, y in zip(bc, ac))
            if coroots[j] != cimg:
                raise RootDatumError("reflection does not permute coroots", i)
    simple = tuple(raw.simple_indices)
    if any(not 0 <= s < len(roots) for s in simple) or len(set(simple)) != len(simple):
        raise RootDatumError("simple indices out of range")
    srs = [roots[s] for s in simple]
    if srs and mat_rank(srs) != len(srs):
        raise RootDatumError("simple roots are linearly dependent", simple[0])
    for i, r in enumerate(roots):
        c = _simple_coefficients(srs, r) if srs else None
        if c is None or any(Fraction(x).denominator != 1 for x in c):
            raise RootDatumError("root is not an integer combination of simple roots", i)
        if not (all(x >= 0 for x in c) or all(x <= 0 for x in c)):
            raise RootDatumError("root has mixed-sign simple coefficients", i)
    canon = tuple(sorted(simple, key=lambda s: roots[s]))
    return RootDatum(n, tuple(roots), tuple(coroots), canon, raw.name)


@dataclass(frozen=True)
class BasedAutomorphism:
    matrix: tuple
    order: int

    def __call__(self, v):
        return mat_vec(self.matrix, v)


def make_automorphism(rd: RootDatum, matrix) -> BasedAutomorphism:
    """Check that ``matrix`` (acting on X) is a based automorphism of rd."""
    M = tuple(tuple(int(x) for x in row) for row in matrix)
    if len(M) != rd.rank or any(len(r) != rd.rank for r in M):
        raise ValueError("automorphism has the wrong shape")
    try:
        Minv = inverse(M)
    except ValueError:
        raise ValueError("automorphism is singular") from None
    if any(isinstance(x, Fraction) for row in Minv for x in row):
        raise ValueError("automorphism is not invertible over Z")
    dual_action = transpose(Minv)
    for i, (r, c) in enumerate(zip(rd.roots, rd.coroots)):
        img = mat_vec(M, r)
        if img not in rd._root_index:
            raise ValueError("automorphism does not permute roots (root %d)" % i)
        if rd.coroots[rd.index_of(img)] != mat_vec(dual_action, c):
            raise ValueError("automorphism does not permute coroots (root %d)" % i)
    simple = set(rd.simple_roots)
    if any(mat_vec(M, s) not in simple for s in simple):
        raise ValueError("automorphism is not based")
    return BasedAutomorphism(M, matrix_order(M))


def identity_automorphism(rd: RootDatum) -> BasedAutomorphism:
    return BasedAutomorphism(identity(rd.rank), 1)


def simple_permutation(rd: RootDatum, theta: BasedAutomorphism):
    """theta's action on positions of simple_indices."""
    sr = rd.simple_roots
    pos = {r: k for k, r in enumerate(sr)}
    return tuple(pos[mat_vec(theta.matrix, r)] for r in sr)


def _dual_name(name: str) -> str:
    if name.endswith("-dual"):
        return name[: -len("-dual")]
    return name + "-dual" if name else ""


def dual_root_datum(rd: RootDatum) -> RootDatum:
    return make_root_datum(rd.rank, rd.coroots, rd.roots, rd.simple_indices, _dual_name(rd.name))


def transpose_automorphism(rd: RootDatum, theta: BasedAutomorphism) -> BasedAutomorphism:
    """The transposed matrix, as an automorphism of X^vee (contravariant in theta)."""
    make_automorphism(rd, theta.matrix)
    return make_automorphism(dual_root_datum(rd), transpose(theta.matrix))


def levi_subdatum(rd: RootDatum, delta_m) -> RootDatum:
    """Roots supported on the simple roots ``delta_m`` (root indices)."""
    delta_m = set(delta_m)
    if not delta_m <= set(rd.simple_indices):
        raise ValueError("Levi set is not a subset of the simple roots")
    positions = {k for k, s in enumerate(rd.simple_indices) if s in delta_m}
    keep = list(rd.component_roots(positions)) if positions else []
    roots = [rd.roots[i] for i in keep]
    simple = [roots.index(rd.roots[i]) for i in delta_m]
    return make_root_datum(rd.rank, roots, [rd.coroots[i] for i in keep], simple, rd.name)


@dataclass(frozen=True)
class AffineNode:
    """Affine root x -> <linear, x> + offset on the apartment X^vee (x) R."""

    component: int
    simple: int | None  # root index, None for the extra node
    linear: tuple
    offset: int

    @property
    def label(self) -> str:
        if self.simple is None:
            return "a0.%d" % self.component
        return "a%d" % self.simple


def affine_simple_system(rd: RootDatum):
    nodes = []
    for c, comp in enumerate(rd.components):
        for k in comp:
            s = rd.simple_indices[k]
            nodes.append(AffineNode(c, s, rd.roots[s], 0))
        h = rd.highest_root(comp)
        nodes.append(AffineNode(c, None, tuple(-x for x in rd.roots[h]), 1))
    return tuple(nodes)


def highest_root_marks(rd: RootDatum, comp):
    """Coefficients m_k of the highest root, keyed by simple position."""
    coeffs = rd.coefficients[rd.highest_root(comp)]
    return {k: int(coeffs[k]) for k in comp}


def alcove_vertex(rd: RootDatum, comp, k):
    """Vertex of the component's alcove opposite node k (None means the extra node)."""
    if k is None:
        return tuple(Fraction(0) for _ in range(rd.rank))
    marks = highest_root_marks(rd, comp)
    comp = list(comp)
    sr = [rd.simple_roots[j] for j in comp]
    sc = [rd.simple_coroots[j] for j in comp]
    A = [[dot(a, c) for c in sc] for a in sr]
    target = [Fraction(1, marks[k]) if j == k else Fraction(0) for j in comp]
    t = solve(A, target)
    return tuple(sum(ti * c[i] for ti, c in zip(t, sc)) for i in range(rd.rank))

