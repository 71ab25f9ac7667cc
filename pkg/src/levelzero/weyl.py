"""Finite Weyl groups as integer matrices and their orbits on X (x) Q/Z."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .linalg import dot, identity, lcm_all, mat_mul, mat_vec
from .root_datum import RootDatum

DEFAULT_BOUND = 10**6


class WeylBoundExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class WeylGroup:
    elements: tuple
    generators: tuple
    rank: int

    def __len__(self):
        return len(self.elements)

    @cached_property
    def element_set(self):
        return frozenset(self.elements)

    def __contains__(self, g):
        return g in self.element_set


@dataclass(frozen=True)
class ReflectionSubgroup:
    """Subgroup of a Weyl group; ``generating_roots`` is None when not reflection-generated."""

    parent: WeylGroup = field(repr=False, compare=False)
    elements: tuple
    generating_roots: tuple | None
    rank: int

    @property
    def reflection_generated(self) -> bool:
        return self.generating_roots is not None

    def __len__(self):
        return len(self.elements)

    @cached_property
    def element_set(self):
        return frozenset(self.elements)

    def __contains__(self, g):
        return g in self.element_set

    def issubset(self, other) -> bool:
        return self.element_set <= other.element_set


def close_group(generators, n: int, bound: int = DEFAULT_BOUND):
    """All products of the generators, sorted."""
    e = identity(n)
    seen = {e}
    todo = [e]
    gens = list(dict.fromkeys(generators))
    while todo:
        g = todo.pop()
        for s in gens:
            h = mat_mul(g, s)
            if h not in seen:
                seen.add(h)
                if len(seen) > bound:
                    raise WeylBoundExceeded("group order exceeds bound %d" % bound)
                todo.append(h)
    return tuple(sorted(seen))


_WEYL_CACHE: dict = {}


def generate_weyl(rd: RootDatum, bound: int = DEFAULT_BOUND) -> WeylGroup:
    key = (rd.rank, rd.roots, rd.coroots, rd.simple_indices)
    if key in _WEYL_CACHE and len(_WEYL_CACHE[key].elements) <= bound:
        return _WEYL_CACHE[key]
    gens = tuple(rd.reflection(i) for i in rd.simple_indices)
    W = WeylGroup(close_group(gens, rd.rank, bound), gens, rd.rank)
    _WEYL_CACHE[key] = W
    return W


def subgroup(parent: WeylGroup, generators, generating_roots=None) -> ReflectionSubgroup:
    elems = close_group(generators, parent.rank, len(parent.elements))
    return ReflectionSubgroup(parent, elems, generating_roots, parent.rank)


# vectors in X (x) Q/Z

def mod1(v):
    return tuple(Fraction(x) % 1 for x in v)


def level(v) -> int:
    return lcm_all(Fraction(x).denominator for x in v)


def act(g, v):
    return mod1(mat_vec(g, v))


def to_ints(v, N: int):
    return tuple(int(Fraction(x) * N) % N for x in v)


def from_ints(x, N: int):
    return tuple(Fraction(a, N) for a in x)


def act_int(g, x, N: int):
    return tuple(sum(a * b for a, b in zip(row, x)) % N for row in g)


def orbit_int(x, elements, N: int):
    return {act_int(g, x, N) for g in elements}


def canonical_int(x, elements, N: int):
    return min(act_int(g, x, N) for g in elements)


def orbit(v, H):
    v = mod1(v)
    N = level(v)
    return sorted(from_ints(y, N) for y in orbit_int(to_ints(v, N), H.elements, N))


def canonical_rep(v, H):
    """Lexicographically least element of the H-orbit of v mod 1."""
    v = mod1(v)
    N = level(v)
    return from_ints(canonical_int(to_ints(v, N), H.elements, N), N)


def _reflections_in(rd: RootDatum, elements):
    es = set(elements)
    out = []
    for i in rd.positive_indices:
        if rd.reflection(i) in es:
            out.append(i)
    return out


def stabilizer(v, H, rd: RootDatum | None = None) -> ReflectionSubgroup:
    """{w in H : w v = v mod 1}, flagged reflection-generated when the reflections in it generate it."""
    v = mod1(v)
    N = level(v)
    x = to_ints(v, N)
    elems = tuple(g for g in H.elements if act_int(g, x, N) == x)
    parent = H if isinstance(H, WeylGroup) else H.parent
    roots = None
    if rd is not None:
        refl = _reflections_in(rd, elems)
        gen = close_group([rd.reflection(i) for i in refl], rd.rank, len(elems))
        if set(gen) == set(elems):
            roots = tuple(rd.roots[i] for i in refl)
    return ReflectionSubgroup(parent, elems, roots, parent.rank)


def reflection_subgroup(rd: RootDatum, J, nodes, W0: WeylGroup | None = None) -> ReflectionSubgroup:
    """Group generated by the linear parts of the affine reflections in J."""
    W0 = W0 or generate_weyl(rd)
    roots = tuple(sorted(nodes[j].linear for j in J))
    gens = [rd.reflection(rd.index_of(r)) for r in roots]
    return subgroup(W0, gens, roots)


def fixing_reflection_subgroup(v, rd: RootDatum, W0: WeylGroup | None = None) -> ReflectionSubgroup:
    """Generated by the s_beta with <v, beta^vee> integral."""
    W0 = W0 or generate_weyl(rd)
    v = mod1(v)
    idx = [i for i in rd.positive_indices if Fraction(dot(v, rd.coroots[i])).denominator == 1]
    return subgroup(W0, [rd.reflection(i) for i in idx], tuple(rd.roots[i] for i in idx))


def levi_weyl(rd: RootDatum, delta_m, W0: WeylGroup | None = None) -> ReflectionSubgroup:
    W0 = W0 or generate_weyl(rd)
    delta_m = sorted(delta_m)
    return subgroup(W0, [rd.reflection(i) for i in delta_m], tuple(rd.roots[i] for i in delta_m))
