"""Small exact linear algebra over Z and Q."""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_decomp

Vec = tuple
Mat = tuple  # tuple of row tuples


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else 0


def lcm_all(values) -> int:
    return reduce(lcm, values, 1)


def identity(n: int) -> Mat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(A: Mat) -> Mat:
    return tuple(zip(*A)) if A else ()


def mat_mul(A: Mat, B: Mat) -> Mat:
    Bt = transpose(B)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def mat_vec(A: Mat, v) -> Vec:
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def mat_pow(A: Mat, k: int) -> Mat:
    out = identity(len(A))
    for _ in range(k):
        out = mat_mul(out, A)
    return out


def matrix_order(A: Mat, bound: int = 1000) -> int:
    """Multiplicative order of A, or raise ValueError past ``bound``."""
    I = identity(len(A))
    P = A
    for k in range(1, bound + 1):
        if P == I:
            return k
        P = mat_mul(P, A)
    raise ValueError("matrix has no finite order below %d" % bound)


def rref(rows):
    """Reduced row echelon form over Q. Returns (rows, pivot columns)."""
    M = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    if not M:
        return M, pivots
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, ncols: int):
    """Q-basis of {x : rows·x = 0}, each vector scaled to primitive integers."""
    R, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            x[pc] = -row[f]
        basis.append(primitive(x))
    return basis


def solve(A, b):
    """One rational solution of A x = b, or None."""
    if not A:
        return None
    ncols = len(A[0])
    aug = [list(r) + [bb] for r, bb in zip(A, b)]
    R, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[-1]
    return tuple(x)


def primitive(v) -> Vec:
    """Scale a rational vector to coprime integers (sign kept)."""
    den = lcm_all(Fraction(x).denominator for x in v)
    ints = [int(Fraction(x) * den) for x in v]
    g = reduce(gcd, ints, 0) or 1
    return tuple(i // g for i in ints)


def inverse(A: Mat) -> Mat:
    """Exact inverse over Q; entries returned as ints when integral."""
    n = len(A)
    aug = [list(A[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(R) < n:
        raise ValueError("matrix is singular")
    out = []
    for row in R:
        out.append(tuple(int(x) if x.denominator == 1 else x for x in row[n:]))
    return tuple(out)


def _smith(rows, ncols: int):
    M = Matrix(len(rows), ncols, [x for r in rows for x in r])
    D, U, V = smith_normal_decomp(M, domain=ZZ)
    diag = [int(D[i, i]) for i in range(min(D.shape))]
    return diag, U, V


def invariant_factors(rows, ncols: int):
    """Nonzero Smith invariants of an integer matrix."""
    if not rows:
        return []
    diag, _, _ = _smith(rows, ncols)
    return [abs(d) for d in diag if d != 0]


def integer_kernel(rows, ncols: int):
    """Z-basis of the saturated lattice {x in Z^n : rows·x = 0}."""
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    diag, _, V = _smith(rows, ncols)
    r = sum(1 for d in diag if d != 0)
    return [tuple(int(V[i, j]) for i in range(ncols)) for j in range(r, ncols)]


def integer_solvable(A, b) -> bool:
    """True iff A x = b has a solution x in Z^n."""
    if not A:
        return all(x == 0 for x in b)
    ncols = len(A[0])
    diag, U, _ = _smith(A, ncols)
    Ub = [sum(int(U[i, k]) * b[k] for k in range(len(b))) for i in range(len(b))]
    for i, y in enumerate(Ub):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if y != 0:
                return False
        elif y % d:
            return False
    return True


def lattice_index(generators, dim: int) -> int:
    """Index in Z^dim of the lattice spanned by the generators; 0 if not full rank."""
    inv = invariant_factors([tuple(g) for g in generators], dim) if generators else []
    if len(inv) < dim:
        return 0
    return reduce(lambda a, b: a * b, inv, 1)
