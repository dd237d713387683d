"""Rational H-polyhedra: boundedness, lattice points, uniform sampling.

An :class:`InequalitySystem` holds rows ``normal . x >= bound`` and
``normal . x = value`` with exact rational data.  Internally every row is
scaled to integers and Fourier-Motzkin elimination runs on integer tuples
``(a_0, ..., a_{d-1}, b)`` meaning ``a . x >= b``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DegenerateBox, Infeasible, Unbounded
from .exact import cone_generators, integer_solutions, rank

Row = tuple  # (a_0, ..., a_{d-1}, b), integers


@dataclass(frozen=True)
class InequalitySystem:
    """Feasible set ``{x in R^dim : normal.x >= bound (ineqs), normal.x = value (eqs)}``."""

    dim: int
    ineqs: tuple = ()
    eqs: tuple = ()

    def __post_init__(self):
        ineqs = tuple((tuple(Fraction(v) for v in a), Fraction(b)) for a, b in self.ineqs)
        eqs = tuple((tuple(Fraction(v) for v in a), Fraction(b)) for a, b in self.eqs)
        for a, _ in ineqs + eqs:
            if len(a) != self.dim:
                raise ValueError(f"normal {a} does not have dimension {self.dim}")
        object.__setattr__(self, "ineqs", ineqs)
        object.__setattr__(self, "eqs", eqs)

    @classmethod
    def from_matrices(cls, A=(), b=(), C=(), d=(), dim=None):
        """``A x >= b`` and ``C x = d``."""
        if dim is None:
            dim = len(A[0]) if len(A) else len(C[0])
        return cls(dim, tuple(zip(map(tuple, A), b)), tuple(zip(map(tuple, C), d)))

    @classmethod
    def box(cls, lo: Sequence, hi: Sequence) -> "InequalitySystem":
        n = len(lo)
        rows = []
        for i in range(n):
            e = tuple(int(i == j) for j in range(n))
            rows.append((e, lo[i]))
            rows.append((tuple(-v for v in e), -Fraction(hi[i])))
        return cls(n, tuple(rows))

    def with_constraints(self, ineqs=(), eqs=()) -> "InequalitySystem":
        return InequalitySystem(self.dim, self.ineqs + tuple(ineqs), self.eqs + tuple(eqs))

    def contains(self, x: Sequence) -> bool:
        return (all(sum(a_i * x_i for a_i, x_i in zip(a, x)) >= b for a, b in self.ineqs)
                and all(sum(a_i * x_i for a_i, x_i in zip(a, x)) == b for a, b in self.eqs))

    def integer_rows(self) -> tuple[list[Row], list[Row]]:
        return [_scale(a, b) for a, b in self.ineqs], [_scale(a, b) for a, b in self.eqs]


@dataclass(frozen=True)
class LatticePointSet:
    dim: int
    points: tuple = ()

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


@dataclass
class SampleResult:
    points: np.ndarray
    n_proposals: int
    acceptance_rate: float
    box_lo: tuple
    box_hi: tuple
    box_volume: Fraction = field(default=Fraction(0))


def _scale(a: Sequence[Fraction], b: Fraction) -> Row:
    den = 1
    for v in (*a, b):
        den = lcm(den, Fraction(v).denominator)
    return tuple(int(v * den) for v in a) + (int(b * den),)


def _normalize(row: Row, integral: bool) -> Row:
    *a, b = row
    g = 0
    for v in a:
        g = gcd(g, v)
    if g == 0:
        return row
    if integral:
        return tuple(v // g for v in a) + (-((-b) // g),)
    g = gcd(g, b)
    return tuple(v // g for v in row)


def _dedup(rows: Iterable[Row]) -> tuple[list[Row], bool]:
    """Keep the tightest bound per normal; report an infeasible constant row."""
    best: dict[tuple, int] = {}
    for row in rows:
        a, b = row[:-1], row[-1]
        if not any(a):
            if b > 0:
                return [], False
            continue
        if a not in best or b > best[a]:
            best[a] = b
    return [a + (b,) for a, b in best.items()], True


def eliminate(rows: Sequence[Row], j: int, integral: bool = True) -> tuple[list[Row], bool]:
    """Fourier-Motzkin elimination of coordinate ``j`` (its column becomes zero)."""
    pos, neg, out = [], [], []
    for r in rows:
        (pos if r[j] > 0 else neg if r[j] < 0 else out).append(r)
    for p in pos:
        for q in neg:
            cp, cq = -q[j], p[j]
            out.append(_normalize(tuple(cp * x + cq * y for x, y in zip(p, q)), integral))
    return _dedup(out)


def projection_chain(rows: Sequence[Row], dim: int, integral: bool = True):
    """Successive projections, last coordinate eliminated first.

    Returns ``(levels, feasible)`` where ``levels[k]`` constrains only
    coordinates ``0..k-1`` (``levels[dim]`` is the input) and ``feasible``
    is False when a contradiction was derived.
    """
    cur, ok = _dedup(_normalize(tuple(r), integral) for r in rows)
    levels = [None] * (dim + 1)
    levels[dim] = cur
    if not ok:
        return levels, False
    for k in range(dim - 1, -1, -1):
        cur, ok = eliminate(cur, k, integral)
        levels[k] = cur
        if not ok:
            return levels, False
    return levels, True


def _homogeneous_rows(system: InequalitySystem) -> list[Row]:
    ineqs, eqs = system.integer_rows()
    rows = [r[:-1] + (0,) for r in ineqs]
    for r in eqs:
        rows.append(r[:-1] + (0,))
        rows.append(tuple(-v for v in r[:-1]) + (0,))
    return rows


def cone_is_trivial(rows: Sequence[Row], dim: int) -> bool:
    """True iff the cone ``{x : a.x >= 0 for rows}`` is ``{0}``.

    Along the projection chain every coordinate must be bounded on both
    sides once the previous ones are pinned to zero.
    """
    levels, _ = projection_chain([r[:-1] + (0,) for r in rows], dim, integral=False)
    for k in range(dim):
        col = [r[k] for r in levels[k + 1]]
        if not (any(c > 0 for c in col) and any(c < 0 for c in col)):
            return False
    return True


def recession_witness(rows: Sequence[Row], dim: int):
    """A nonzero integer vector of the cone ``{a.x >= 0}``, or None if it is ``{0}``."""
    if cone_is_trivial(rows, dim):
        return None
    N = tuple(tuple(r[:-1]) for r in rows)
    if not N:
        return tuple(int(i == 0) for i in range(dim))
    if rank(N) < dim:
        _, T = integer_solutions(N, (0,) * len(N), dim)
        return tuple(T[i][0] for i in range(dim))
    return cone_generators(N, dim)[0]


def is_feasible(system: InequalitySystem) -> bool:
    ineqs, eqs = system.integer_rows()
    rows = list(ineqs)
    for r in eqs:
        rows.append(r)
        rows.append(tuple(-v for v in r))
    _, ok = projection_chain(rows, system.dim, integral=False)
    return ok


def is_bounded(system: InequalitySystem) -> bool:
    """True iff the feasible set is bounded (an empty set counts as bounded)."""
    if system.dim == 0:
        return True
    if cone_is_trivial(_homogeneous_rows(system), system.dim):
        return True
    return not is_feasible(system)


class _Enumerator:
    def __init__(self, rows: Sequence[Row], dim: int):
        self.dim = dim
        self.levels, self.feasible = projection_chain(rows, dim, integral=True)
        # per level k: rows of levels[k+1] with nonzero k-th coefficient
        self.bounds = []
        for k in range(dim if self.feasible else 0):
            lo = [r for r in self.levels[k + 1] if r[k] > 0]
            hi = [r for r in self.levels[k + 1] if r[k] < 0]
            self.bounds.append((lo, hi))

    def _range(self, k: int, x: list[int]) -> tuple[int, int]:
        lo_rows, hi_rows = self.bounds[k]
        if not lo_rows or not hi_rows:
            raise Unbounded(f"coordinate {k} is unbounded")
        lo = None
        for r in lo_rows:
            rest = r[-1] - sum(r[i] * x[i] for i in range(k))
            v = -((-rest) // r[k])
            if lo is None or v > lo:
                lo = v
        hi = None
        for r in hi_rows:
            rest = r[-1] - sum(r[i] * x[i] for i in range(k))
            v = (-rest) // (-r[k])  # r[k] < 0: x_k <= rest / r[k]
            if hi is None or v < hi:
                hi = v
        return lo, hi

    def points(self) -> Iterator[tuple[int, ...]]:
        if not self.feasible:
            return
        if self.dim == 0:
            yield ()
            return
        x = [0] * self.dim

        def rec(k):
            lo, hi = self._range(k, x)
            for v in range(lo, hi + 1):
                x[k] = v
                if k + 1 == self.dim:
                    yield tuple(x)
                else:
                    yield from rec(k + 1)

        yield from rec(0)

    def count(self) -> int:
        if not self.feasible:
            return 0
        if self.dim == 0:
            return 1
        x = [0] * self.dim
        last = self.dim - 1

        def rec(k):
            lo, hi = self._range(k, x)
            if k == last:
                return max(0, hi - lo + 1)
            total = 0
            for v in range(lo, hi + 1):
                x[k] = v
                total += rec(k + 1)
            return total

        return rec(0)


def _reduced(system: InequalitySystem):
    """Eliminate equalities by an integral affine parametrisation.

    Returns ``(rows_in_y, x0, T)`` or None when the equalities have no
    integer solution.
    """
    ineqs, eqs = system.integer_rows()
    n = system.dim
    if not eqs:
        return ineqs, (0,) * n, None
    sol = integer_solutions([r[:-1] for r in eqs], [r[-1] for r in eqs], n)
    if sol is None:
        return None
    x0, T = sol
    k = len(T[0]) if T and T[0] else 0
    rows = []
    for r in ineqs:
        a = r[:-1]
        aT = tuple(sum(a[i] * T[i][j] for i in range(n)) for j in range(k))
        rows.append(aT + (r[-1] - sum(ai * xi for ai, xi in zip(a, x0)),))
    return rows, x0, T


def _free_dim(dim: int, T) -> int:
    if T is None:
        return dim
    return len(T[0]) if T else 0


def _check_bounded(system: InequalitySystem):
    if not is_bounded(system):
        raise Unbounded("the system defines an unbounded polyhedron")


def enumerate_lattice_points(system: InequalitySystem, check: bool = True) -> LatticePointSet:
    """All integer points of a bounded system, ascending lexicographic order."""
    if check:
        _check_bounded(system)
    red = _reduced(system)
    if red is None:
        return LatticePointSet(system.dim, ())
    rows, x0, T = red
    k = _free_dim(system.dim, T)
    pts = _Enumerator(rows, k).points()
    if T is not None:
        pts = (tuple(x0[i] + sum(T[i][j] * y[j] for j in range(k)) for i in range(system.dim))
               for y in pts)
        return LatticePointSet(system.dim, tuple(sorted(pts)))
    return LatticePointSet(system.dim, tuple(pts))


def count_lattice_points(system: InequalitySystem, check: bool = True) -> int:
    if check:
        _check_bounded(system)
    red = _reduced(system)
    if red is None:
        return 0
    rows, x0, T = red
    k = _free_dim(system.dim, T)
    return _Enumerator(rows, k).count()


def bounding_box(system: InequalitySystem) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Exact coordinate-wise bounds of the (real) feasible set by projection."""
    ineqs, eqs = system.integer_rows()
    rows = list(ineqs)
    for r in eqs:
        rows.append(r)
        rows.append(tuple(-v for v in r))
    n = system.dim
    lo, hi = [], []
    for j in range(n):
        cur, ok = _dedup(_normalize(tuple(r), False) for r in rows)
        for k in range(n):
            if k != j and ok:
                cur, ok = eliminate(cur, k, integral=False)
        if not ok:
            raise Infeasible("the system has no real solution")
        lows = [Fraction(r[-1], r[j]) for r in cur if r[j] > 0]
        highs = [Fraction(r[-1], r[j]) for r in cur if r[j] < 0]
        if not lows or not highs:
            raise Unbounded(f"coordinate {j} is unbounded")
        l, h = max(lows), min(highs)
        if l > h:
            raise Infeasible("the system has no real solution")
        lo.append(l)
        hi.append(h)
    return tuple(lo), tuple(hi)


def sample_uniform(system: InequalitySystem, n_samples: int, seed: int,
                   max_proposals: int | None = None, batch: int = 65536) -> SampleResult:
    """Rejection sampling from the exact bounding box.

    Deterministic for a given seed; each call owns its generator.
    """
    if system.eqs:
        raise DegenerateBox("equality constraints give a set of zero volume")
    lo, hi = bounding_box(system)
    volume = Fraction(1)
    for l, h in zip(lo, hi):
        volume *= h - l
    if volume == 0:
        raise DegenerateBox("the bounding box has zero volume")
    ineqs, _ = system.integer_rows()
    A = np.array([r[:-1] for r in ineqs], dtype=float).reshape(len(ineqs), system.dim)
    b = np.array([r[-1] for r in ineqs], dtype=float)
    lo_f = np.array([float(v) for v in lo])
    hi_f = np.array([float(v) for v in hi])
    rng = np.random.default_rng(seed)
    max_proposals = max_proposals or 1000 * max(n_samples, 1)
    accepted = []
    n_acc = 0
    n_prop = 0
    while n_acc < n_samples:
        if n_prop >= max_proposals:
            raise Infeasible(f"acceptance too low: {n_acc} of {n_prop} proposals inside")
        m = min(batch, max_proposals - n_prop)
        x = lo_f + (hi_f - lo_f) * rng.random((m, system.dim))
        inside = np.all(x @ A.T >= b - 1e-12, axis=1) if len(b) else np.ones(m, bool)
        need = n_samples - n_acc
        idx = np.flatnonzero(inside)
        if len(idx) >= need:
            # stop exactly at the proposal that produced the last needed point
            cut = idx[need - 1] + 1
            n_prop += cut
            accepted.append(x[idx[:need]])
            n_acc += need
        else:
            n_prop += m
            accepted.append(x[idx])
            n_acc += len(idx)
    pts = np.concatenate(accepted) if accepted else np.empty((0, system.dim))
    return SampleResult(pts, n_prop, n_acc / n_prop if n_prop else 0.0, lo, hi, volume)
