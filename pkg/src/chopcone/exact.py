"""Exact integer and rational linear algebra.

Matrices are tuples of row tuples holding Python ints (arbitrary precision),
rational vectors are tuples of :class:`fractions.Fraction`.  Nothing in this
module touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .errors import NotPointed, NotSquare, SingularMatrix

IntMatrix = tuple  # tuple[tuple[int, ...], ...]
RatVector = tuple  # tuple[Fraction, ...]


def as_int_matrix(rows: Iterable[Iterable[int]], ncols: int | None = None) -> IntMatrix:
    """Normalise nested iterables into an immutable integer matrix.

    ``ncols`` is only needed for matrices with zero rows.
    """
    out = []
    for row in rows:
        r = []
        for v in row:
            if isinstance(v, Fraction):
                if v.denominator != 1:
                    raise ValueError(f"non-integral entry {v}")
                v = v.numerator
            elif not isinstance(v, int):
                if float(v) != int(v):
                    raise ValueError(f"non-integral entry {v}")
                v = int(v)
            r.append(int(v))
        out.append(tuple(r))
    widths = {len(r) for r in out}
    if len(widths) > 1:
        raise ValueError("ragged matrix")
    if ncols is not None and widths and widths != {ncols}:
        raise ValueError(f"expected {ncols} columns")
    return tuple(out)


def as_rat_vector(values: Iterable) -> RatVector:
    return tuple(Fraction(v) for v in values)


def ncols(M: Sequence[Sequence], default: int = 0) -> int:
    return len(M[0]) if M else default


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zeros(m: int, n: int) -> IntMatrix:
    return tuple((0,) * n for _ in range(m))


def transpose(M: Sequence[Sequence], n: int | None = None) -> tuple:
    if not M:
        return tuple(() for _ in range(n or 0))
    return tuple(zip(*M))


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> tuple:
    Bt = transpose(B)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def matvec(A: Sequence[Sequence], x: Sequence) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, x)) for row in A)


def hstack(*blocks: Sequence[Sequence]) -> tuple:
    rows = len(blocks[0])
    return tuple(sum((tuple(b[i]) for b in blocks), ()) for i in range(rows))


def det(M: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by Bareiss fraction-free elimination."""
    n = len(M)
    if any(len(r) != n for r in M):
        raise NotSquare(f"{n} rows but row lengths {[len(r) for r in M]}")
    if n == 0:
        return 1
    a = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(M: Sequence[Sequence[int]]) -> int:
    """Exact rank over the rationals (fraction-free elimination)."""
    a = [list(r) for r in M]
    if not a:
        return 0
    m, n = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == m:
            break
    return r


def adjugate(M: Sequence[Sequence[int]]) -> IntMatrix:
    n = len(M)
    if n == 1:
        return ((1,),)
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(map(tuple, M)) if k != i]
            adj[j][i] = (-1) ** (i + j) * det(minor)
    return tuple(map(tuple, adj))


def inverse(M: Sequence[Sequence]) -> tuple:
    """Exact inverse with Fraction entries (Gauss-Jordan)."""
    n = len(M)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [v / p for v in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(tuple(row[n:]) for row in a)


def integer_inverse(M: Sequence[Sequence[int]]) -> IntMatrix:
    """Inverse of a unimodular matrix as an integer matrix."""
    inv = inverse(M)
    return as_int_matrix(inv)


def row_echelon(M: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, tuple[int, ...]]:
    """Unimodular row reduction ``U @ M = R`` with ``R`` in integer echelon form.

    Returns ``(U, R, pivots)`` where ``pivots[k]`` is the column of the
    leading entry of row ``k``.  Leading entries are positive and entries
    above a pivot are reduced into ``[0, pivot)``.
    """
    m = len(M)
    n = ncols(M)
    R = [list(r) for r in M]
    U = [list(r) for r in identity(m)]
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if R[i][c] != 0]
            if not nz:
                break
            k = min(nz, key=lambda i: abs(R[i][c]))
            R[r], R[k] = R[k], R[r]
            U[r], U[k] = U[k], U[r]
            clean = True
            for i in range(r + 1, m):
                if R[i][c]:
                    q = R[i][c] // R[r][c]
                    R[i] = [x - q * y for x, y in zip(R[i], R[r])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[r])]
                    if R[i][c]:
                        clean = False
            if clean:
                break
        if all(R[i][c] == 0 for i in range(r, m)):
            continue
        if R[r][c] < 0:
            R[r] = [-x for x in R[r]]
            U[r] = [-x for x in U[r]]
        for i in range(r):
            q = R[i][c] // R[r][c]
            if q:
                R[i] = [x - q * y for x, y in zip(R[i], R[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        pivots.append(c)
        r += 1
    return tuple(map(tuple, U)), tuple(map(tuple, R)), tuple(pivots)


def hermite_upper_triangular(M: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(X, P, Y)`` with ``Y = X M P`` upper triangular.

    ``X`` is unimodular, ``P`` a permutation matrix (always the identity
    here since row operations alone suffice for nonsingular input) and the
    diagonal of ``Y`` is strictly positive.
    """
    M = as_int_matrix(M)
    n = len(M)
    if any(len(r) != n for r in M):
        raise NotSquare(f"expected a square matrix, got {n}x{ncols(M)}")
    if det(M) == 0:
        raise SingularMatrix("hermite_upper_triangular needs a nonsingular matrix")
    X, Y, _ = row_echelon(M)
    return X, identity(n), Y


def integer_solutions(E: Sequence[Sequence[int]], b: Sequence[int], n: int | None = None):
    """Parametrise all integer solutions of ``E x = b``.

    Returns ``(x0, T)`` such that the solutions are exactly ``x0 + T y`` for
    integer ``y`` (``T`` has linearly independent columns), or ``None`` when
    there is no integer solution.
    """
    E = as_int_matrix(E)
    n = ncols(E, n or 0) if n is None else n
    m = len(E)
    if m == 0:
        return (0,) * n, identity(n)
    V, R, piv = row_echelon(transpose(E, n))
    # E V^T = R^T; column c of R^T has its first nonzero in row piv[c]
    H = transpose(R)
    r = len(piv)
    z = []
    for c in range(r):
        row = piv[c]
        rest = b[row] - sum(H[row][k] * z[k] for k in range(c))
        q, rem = divmod(rest, H[row][c])
        if rem:
            return None
        z.append(q)
    z += [0] * (n - r)
    for i in range(m):
        if sum(H[i][k] * z[k] for k in range(n)) != b[i]:
            return None
    U = transpose(V)
    x0 = matvec(U, z)
    T = tuple(tuple(U[i][k] for k in range(r, n)) for i in range(n))
    return x0, T


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(x // g for x in v) if g else tuple(v)


def _kernel_vector(rows: Sequence[Sequence[int]], n: int) -> tuple[int, ...]:
    # generalized cross product of n-1 rows
    return tuple((-1) ** j * det([r[:j] + r[j + 1:] for r in rows]) for j in range(n))


def cone_generators(normals: Sequence[Sequence[int]], n: int | None = None) -> list[tuple[int, ...]]:
    """Primitive extreme-ray generators of the pointed cone ``{x : normals x >= 0}``.

    Brute force over (n-1)-subsets of the facet normals, fine for small n.
    """
    N = as_int_matrix(normals)
    n = ncols(N) if n is None else n
    if rank(N) < n:
        raise NotPointed("facet normals do not have full column rank")
    if n == 1:
        return [v for v in ((1,), (-1,)) if all(r[0] * v[0] >= 0 for r in N)]
    rays = set()
    for sub in combinations(N, n - 1):
        if rank(sub) < n - 1:
            continue
        v = primitive(_kernel_vector(sub, n))
        for cand in (v, tuple(-x for x in v)):
            if all(x >= 0 for x in matvec(N, cand)):
                rays.add(cand)
    return sorted(rays)


def _independent_rows(N: IntMatrix, n: int) -> IntMatrix:
    chosen = []
    for row in N:
        if rank(chosen + [row]) > len(chosen):
            chosen.append(row)
            if len(chosen) == n:
                break
    return tuple(chosen)


def _unipotent_minorant(Yp: Sequence[Sequence[Fraction]]) -> IntMatrix:
    n = len(Yp)
    return tuple(
        tuple(1 if i == j else (int(Yp[i][j] // 1) if j > i else 0) for j in range(n))
        for i in range(n))


def _greedy_inverse_minorant(Yp: Sequence[Sequence[Fraction]]) -> IntMatrix:
    """Integral unipotent upper triangular ``W`` with ``W @ Yp >= 0``.

    Row i is fixed from left to right: entry (i, j) only affects columns
    >= j of the product, and enters column j with coefficient 1.
    """
    n = len(Yp)
    W = [[int(i == j) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            partial = Yp[i][j] + sum(W[i][k] * Yp[k][j] for k in range(i + 1, j))
            if partial < 0:
                W[i][j] = -int(partial // 1)  # ceil(-partial)
    return tuple(map(tuple, W))


def embedding_steps(facet_normals: Sequence[Sequence[int]]) -> dict:
    """Intermediate objects of the positive-orthant construction.

    Keys: ``Y0`` (chosen facet rows), ``B`` (integral simplicial over-cone
    generators), ``X``, ``P``, ``Y`` (triangularisation of ``B``), ``Yp``
    (unipotent part), ``Ypp`` (integral unipotent minorant), ``fallback``
    (True when floor rounding did not give a containing cone) and ``A``.
    """
    N = as_int_matrix(facet_normals)
    if not N:
        raise NotPointed("no facet normals: the cone is the whole space")
    n = len(N[0])
    if rank(N) < n:
        raise NotPointed(f"facet normals have rank {rank(N)} < {n}; the cone contains a line")
    Y0 = _independent_rows(N, n)
    d = det(Y0)
    sgn = 1 if d > 0 else -1
    B = tuple(tuple(sgn * v for v in row) for row in adjugate(Y0))
    X, P, Y = hermite_upper_triangular(B)
    Yp = tuple(tuple(Fraction(Y[i][j], Y[j][j]) for j in range(n)) for i in range(n))
    Ypp = _unipotent_minorant(Yp)
    Ypp_inv = integer_inverse(Ypp)
    fallback = any(v < 0 for row in matmul(Ypp_inv, Yp) for v in row)
    if fallback:
        Ypp_inv = _greedy_inverse_minorant(Yp)
        Ypp = integer_inverse(Ypp_inv)
    A = matmul(Ypp_inv, X)
    return dict(Y0=Y0, B=B, X=X, P=P, Y=Y, Yp=Yp, Ypp=Ypp, fallback=fallback, A=A)


def positive_orthant_embedding(facet_normals: Sequence[Sequence[int]]) -> IntMatrix:
    """Unimodular ``A`` mapping the pointed cone ``{x : N x >= 0}`` into the
    nonnegative orthant."""
    return embedding_steps(facet_normals)["A"]
