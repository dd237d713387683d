"""Chopped and sliced cones: chops, slices, counting measures and their limit.

A cone is stored as integer matrices ``p`` (chopping), ``q`` (slicing),
``r`` (cone facets) and ``s`` (parameter map).  For a parameter ``lam`` the
chop is ``{x : r x >= 0, p x <= s lam}`` and the slice at ``beta`` adds
``q x = beta``.  The monoids defining the partial orders are the standard
nonnegative coordinate cones, so every comparison is componentwise.
"""
from __future__ import annotations

import csv
import io
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Dict, List, Sequence, Tuple, Union

import numpy as np

from .errors import (DegenerateBox, DimensionMismatch, Infeasible, NotBounded, RankDeficientQ,
                     UnknownTestFunction)
from .exact import as_int_matrix, matvec, rank
from .polyhedra import (InequalitySystem, count_lattice_points, enumerate_lattice_points,
                        recession_witness, sample_uniform)


@dataclass(frozen=True)
class ChoppedSlicedCone:
    rank_K: int
    rank_Lambda: int
    rank_LambdaTilde: int
    rank_Q: int
    rank_R: int
    p_map: tuple
    q_map: tuple
    r_map: tuple
    s_map: tuple

    def __post_init__(self):
        shapes = {
            "p_map": (self.rank_LambdaTilde, self.rank_K),
            "q_map": (self.rank_Q, self.rank_K),
            "r_map": (self.rank_R, self.rank_K),
            "s_map": (self.rank_LambdaTilde, self.rank_Lambda),
        }
        for name, (m, n) in shapes.items():
            try:
                M = as_int_matrix(getattr(self, name))
            except ValueError as exc:
                raise DimensionMismatch(f"{name}: {exc}") from None
            if len(M) != m or any(len(row) != n for row in M):
                raise DimensionMismatch(f"{name} must be {m}x{n}")
            object.__setattr__(self, name, M)

    @classmethod
    def from_maps(cls, p, q, r, s, rank_K=None):
        """Infer the ranks from the matrices (``rank_K`` is needed if all are empty)."""
        mats = [m for m in (p, q, r) if len(m)]
        if rank_K is None:
            rank_K = len(mats[0][0])
        rank_Lambda = len(s[0]) if len(s) else 0
        return cls(rank_K, rank_Lambda, len(p), len(q), len(r), p, q, r, s)

    @cached_property
    def recession_rows(self) -> list:
        rows = [tuple(row) + (0,) for row in self.r_map]
        rows += [tuple(-v for v in row) + (0,) for row in self.p_map]
        return rows

    @cached_property
    def is_valid(self) -> bool:
        return recession_witness(self.recession_rows, self.rank_K) is None

    def recession_ray(self):
        """A nonzero ``x`` with ``r x >= 0`` and ``p x <= 0``, or None."""
        return recession_witness(self.recession_rows, self.rank_K)

    def require_valid(self):
        if not self.is_valid:
            ray = self.recession_ray()
            raise NotBounded(f"chops are unbounded along the recession ray {ray}", ray)
        return self

    def s_of(self, lam: Sequence[int]) -> tuple:
        lam = _vec(lam, self.rank_Lambda, "lambda")
        return matvec(self.s_map, lam)

    def q_of(self, x: Sequence) -> tuple:
        return matvec(self.q_map, x)


def _vec(v, n, name) -> tuple:
    if isinstance(v, int):
        v = (v,)
    v = tuple(v)
    if len(v) != n:
        raise DimensionMismatch(f"{name} must have {n} coordinates, got {len(v)}")
    return v


def validate(c: ChoppedSlicedCone) -> bool:
    """True iff every chop is bounded, i.e. ``{r x >= 0, p x <= 0} = {0}``."""
    return c.is_valid


def chop(c: ChoppedSlicedCone, lam: Sequence[int]) -> InequalitySystem:
    sl = c.s_of(lam)
    ineqs = [(row, 0) for row in c.r_map]
    ineqs += [(tuple(-v for v in row), -b) for row, b in zip(c.p_map, sl)]
    return InequalitySystem(c.rank_K, tuple(ineqs))


def slice_system(c: ChoppedSlicedCone, lam: Sequence[int], beta: Sequence[int]) -> InequalitySystem:
    beta = _vec(beta, c.rank_Q, "beta")
    return chop(c, lam).with_constraints(eqs=zip(c.q_map, beta))


def slice_count(c: ChoppedSlicedCone, lam: Sequence[int], beta: Sequence[int]) -> int:
    """Number of lattice points of the slice ``C^lam_beta``."""
    c.require_valid()
    return count_lattice_points(slice_system(c, lam, beta), check=False)


def chop_count(c: ChoppedSlicedCone, lam: Sequence[int]) -> int:
    c.require_valid()
    return count_lattice_points(chop(c, lam), check=False)


@dataclass
class SliceCountTable:
    lam: tuple
    entries: Dict[tuple, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def atoms(self):
        return self.entries.items()


@dataclass
class ScaledMeasure:
    n: int
    atoms_map: Dict[tuple, Fraction] = field(default_factory=dict)

    @property
    def total(self) -> Fraction:
        return sum(self.atoms_map.values(), Fraction(0))

    def atoms(self):
        return self.atoms_map.items()


def measure(c: ChoppedSlicedCone, lam: Sequence[int]) -> SliceCountTable:
    """Push the lattice points of ``C^lam`` forward along ``q``."""
    c.require_valid()
    table: Dict[tuple, int] = {}
    for x in enumerate_lattice_points(chop(c, lam), check=False):
        beta = c.q_of(x)
        table[beta] = table.get(beta, 0) + 1
    return SliceCountTable(_vec(lam, c.rank_Lambda, "lambda"), dict(sorted(table.items())))


def scaled_measure(c: ChoppedSlicedCone, lam: Sequence[int], n: int) -> ScaledMeasure:
    """Atoms ``beta / n`` with weights ``|C^{n lam}_beta cap K| / n^rank_K``."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    lam = _vec(lam, c.rank_Lambda, "lambda")
    base = measure(c, tuple(n * v for v in lam))
    scale = Fraction(1, n ** c.rank_K)
    atoms = {tuple(Fraction(b, n) for b in beta): cnt * scale for beta, cnt in base.entries.items()}
    return ScaledMeasure(n, atoms)


# ---------------------------------------------------------------------------
# test functions


@dataclass(frozen=True)
class PairingFunction:
    """A named bounded continuous function on ``Q_R``."""

    name: str
    func: Callable
    exact: bool

    def __call__(self, beta):
        return self.func(beta)


def _bump(center, radius):
    r2 = radius * radius

    def f(beta):
        d2 = sum((float(b) - c) ** 2 for b, c in zip(beta, center))
        return max(0.0, 1.0 - d2 / r2)
    return f


def get_test_function(name: str) -> PairingFunction:
    """Catalogue: ``const``, ``proj<k>``, ``sq<k>`` (1-based ``k``), ``bump(c1,...;r)``."""
    key = name.strip().replace("_", "")
    if key == "const":
        return PairingFunction(name, lambda beta: Fraction(1), True)
    m = re.fullmatch(r"(proj|sq)(\d+)", key)
    if m:
        k = int(m.group(2)) - 1
        if k < 0:
            raise UnknownTestFunction(name)
        if m.group(1) == "proj":
            return PairingFunction(name, lambda beta: Fraction(beta[k]), True)
        return PairingFunction(name, lambda beta: Fraction(beta[k]) ** 2, True)
    m = re.fullmatch(r"bump\(([^;]*);([^)]*)\)", key)
    if m:
        center = tuple(float(v) for v in m.group(1).split(","))
        radius = float(m.group(2))
        if radius <= 0:
            raise UnknownTestFunction(name)
        return PairingFunction(name, _bump(center, radius), False)
    raise UnknownTestFunction(name)


def _as_function(f) -> PairingFunction:
    return get_test_function(f) if isinstance(f, str) else f


def pairing(m: Union[ScaledMeasure, SliceCountTable], f) -> Union[Fraction, float]:
    """``(f, m)``: sum of ``f(atom) * weight``; exact for rational-valued ``f``."""
    f = _as_function(f)
    total = Fraction(0) if f.exact else 0.0
    for atom, weight in m.atoms():
        total += f(atom) * weight
    return total


def limit_pairing_estimate(c: ChoppedSlicedCone, lam: Sequence[int], f, n_samples: int,
                           seed: int) -> Tuple[float, float]:
    """Monte Carlo estimate of ``int_{C^lam} f(q(x)) dx`` with its standard error."""
    f = _as_function(f)
    c.require_valid()
    if rank(c.q_map) < c.rank_Q:
        raise RankDeficientQ("q must have full rank for the limit measure")
    try:
        res = sample_uniform(chop(c, lam), n_samples, seed)
    except (Infeasible, DegenerateBox):
        # empty or lower-dimensional chop: the limit measure is zero
        return 0.0, 0.0
    Q = np.array(c.q_map, dtype=float).reshape(c.rank_Q, c.rank_K)
    betas = res.points @ Q.T
    vals = np.array([float(f(tuple(b))) for b in betas])
    N = res.n_proposals
    vol = float(res.box_volume)
    mean = vals.sum() / N
    var = max(float((vals ** 2).sum() / N - mean ** 2), 0.0)
    return vol * mean, vol * math.sqrt(var / N)


@dataclass
class ConvergenceRow:
    n: int
    pairing: Union[Fraction, float]
    limit_estimate: float
    stderr: float
    abs_deviation: float


def convergence_report(c: ChoppedSlicedCone, lam: Sequence[int], f, n_list: Sequence[int],
                       n_samples: int = 100_000, seed: int = 0) -> List[ConvergenceRow]:
    f = _as_function(f)
    limit, err = limit_pairing_estimate(c, lam, f, n_samples, seed)
    rows = []
    for n in n_list:
        val = pairing(scaled_measure(c, lam, n), f)
        rows.append(ConvergenceRow(n, val, limit, err, abs(float(val) - limit)))
    return rows


def _fmt_exact(v) -> str:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return f"{v:.6g}"


def report_csv(rows: Sequence[ConvergenceRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "pairing", "limit_estimate", "stderr", "abs_deviation"])
    for r in rows:
        w.writerow([r.n, _fmt_exact(r.pairing), f"{r.limit_estimate:.6g}", f"{r.stderr:.6g}",
                    f"{r.abs_deviation:.6g}"])
    return buf.getvalue()
