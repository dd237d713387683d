"""Vector partition functions and the reduction of slice counts to them.

``Phi_E(y)`` counts ``x >= 0`` integral with ``E x = y``.  A pointed chopped
and sliced cone is first moved into the nonnegative orthant by a unimodular
change of coordinates; slack variables then turn

    r~ x >= 0,   p' x <= s lam,   q' x = beta,   x >= 0

into ``E (x, y, z) = B (lam, beta)`` with ``(x, y, z) >= 0``, where

    E = [[r~, -I, 0], [p', 0, I], [q', 0, 0]],   B = [[0, 0], [s, 0], [0, I]].

Counts along a ray ``t -> (lam0 + t dlam, beta0 + t dbeta)`` are fitted by
quasi-polynomials with exact rational interpolation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .csc import ChoppedSlicedCone, slice_count
from .errors import KernelConditionViolated, NoFit, NotPointed
from .exact import as_int_matrix, integer_inverse, inverse, matmul, matvec, rank
from .polyhedra import InequalitySystem, count_lattice_points, recession_witness


@dataclass(frozen=True)
class VPFProblem:
    E: tuple
    n_vars: int = -1

    def __post_init__(self):
        E = as_int_matrix(self.E)
        n = self.n_vars if self.n_vars >= 0 else (len(E[0]) if E else 0)
        if any(len(row) != n for row in E):
            raise ValueError(f"E must have {n} columns")
        object.__setattr__(self, "E", E)
        object.__setattr__(self, "n_vars", n)
        rows = [tuple(row) + (0,) for row in E] + [tuple(-v for v in row) + (0,) for row in E]
        rows += [tuple(int(j == i) for j in range(n)) + (0,) for i in range(n)]
        ray = recession_witness(rows, n) if n else None
        if ray is not None:
            raise KernelConditionViolated(f"E x = 0 has the nonnegative solution {ray}")

    @property
    def rank_Y(self) -> int:
        return len(self.E)

    @property
    def rank_X(self) -> int:
        return self.n_vars


def phi(p: VPFProblem, y: Sequence[int]) -> int:
    """``Phi_E(y)``: nonnegative integer solutions of ``E x = y``."""
    y = tuple(y)
    if len(y) != p.rank_Y:
        raise ValueError(f"y must have {p.rank_Y} coordinates")
    n = p.n_vars
    ineqs = [(tuple(int(j == i) for j in range(n)), 0) for i in range(n)]
    system = InequalitySystem(n, tuple(ineqs), tuple(zip(p.E, y)))
    return count_lattice_points(system, check=False)


@dataclass(frozen=True)
class EBPair:
    problem: VPFProblem
    B: tuple
    embedding: tuple
    r_tilde: tuple = field(default=(), compare=False)

    def rhs(self, lam: Sequence[int], beta: Sequence[int]) -> tuple:
        return matvec(self.B, tuple(lam) + tuple(beta))

    def count(self, lam, beta) -> int:
        return phi(self.problem, self.rhs(_tuple(lam), _tuple(beta)))


def _tuple(v) -> tuple:
    return (v,) if isinstance(v, int) else tuple(v)


def transformed_cone(c: ChoppedSlicedCone, A) -> ChoppedSlicedCone:
    """The same cone written in the coordinates ``x' = A x`` (``A`` unimodular)."""
    Ainv = integer_inverse(A)
    return ChoppedSlicedCone(c.rank_K, c.rank_Lambda, c.rank_LambdaTilde, c.rank_Q, c.rank_R,
                             matmul(c.p_map, Ainv) if c.p_map else (),
                             matmul(c.q_map, Ainv) if c.q_map else (),
                             matmul(c.r_map, Ainv), c.s_map)


def reduce_to_vpf(c: ChoppedSlicedCone) -> EBPair:
    """Build ``(E, B)`` with ``|C^lam_beta cap K| = Phi_E(B (lam, beta))``."""
    nK = c.rank_K
    if not c.r_map or rank(c.r_map) < nK:
        raise NotPointed(f"the cone is not pointed: rank(r) = {rank(c.r_map) if c.r_map else 0} < {nK}")
    c.require_valid()
    from .exact import positive_orthant_embedding
    A = positive_orthant_embedding(c.r_map)
    t = transformed_cone(c, A)
    units = {tuple(int(j == i) for j in range(nK)) for i in range(nK)}
    r_t = tuple(row for row in t.r_map if row not in units)
    nR, nL, nQ, nLam = len(r_t), c.rank_LambdaTilde, c.rank_Q, c.rank_Lambda
    E = []
    for i, row in enumerate(r_t):
        E.append(row + tuple(-int(j == i) for j in range(nR)) + (0,) * nL)
    for i, row in enumerate(t.p_map):
        E.append(row + (0,) * nR + tuple(int(j == i) for j in range(nL)))
    for row in t.q_map:
        E.append(row + (0,) * (nR + nL))
    B = [(0,) * (nLam + nQ) for _ in range(nR)]
    B += [tuple(row) + (0,) * nQ for row in c.s_map]
    B += [(0,) * nLam + tuple(int(j == i) for j in range(nQ)) for i in range(nQ)]
    problem = VPFProblem(tuple(E), nK + nR + nL)
    return EBPair(problem, tuple(B), A, r_t)


def verify_reduction(pair: EBPair, c: ChoppedSlicedCone, lam, beta) -> bool:
    return slice_count(c, _tuple(lam), _tuple(beta)) == pair.count(lam, beta)


# ---------------------------------------------------------------------------
# quasi-polynomials


def _fmt(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def _trim(coeffs) -> tuple:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class QuasiPolynomial:
    """``t -> sum_k components[t mod period][k] t^k``."""

    period: int
    components: tuple
    degree_bound: int

    def __call__(self, t: int) -> Fraction:
        total = Fraction(0)
        for k, a in enumerate(self.components[t % self.period]):
            total += a * t ** k
        return total

    @property
    def degree(self) -> int:
        """Largest degree among the classes (0 for the zero function)."""
        return max((len(_trim(c)) - 1 for c in self.components), default=0) if any(
            _trim(c) for c in self.components) else 0

    def to_json(self) -> dict:
        return {"period": self.period,
                "classes": [{"residue": r, "coeffs": [_fmt(Fraction(a)) for a in c]}
                            for r, c in enumerate(self.components)]}

    @classmethod
    def from_json(cls, data: dict, degree_bound: int | None = None) -> "QuasiPolynomial":
        classes = sorted(data["classes"], key=lambda d: d["residue"])
        comps = tuple(tuple(Fraction(s) for s in d["coeffs"]) for d in classes)
        if len(comps) != data["period"]:
            raise ValueError("one class per residue is required")
        if degree_bound is None:
            degree_bound = data.get("degree_bound", max((len(c) - 1 for c in comps), default=0))
        return cls(int(data["period"]), comps, max(degree_bound, 0))


def _interpolate(ts: Sequence[int], vs: Sequence[int]) -> tuple:
    """Coefficients (ascending) of the polynomial through ``(ts, vs)``."""
    V = [[Fraction(t) ** k for k in range(len(ts))] for t in ts]
    return _trim(matvec(inverse(V), [Fraction(v) for v in vs]))


def _eval(coeffs, t) -> Fraction:
    return sum((a * t ** k for k, a in enumerate(coeffs)), Fraction(0))


def _candidate(values: Sequence[int], n_train: int, m: int, d: int):
    """Per-class interpolants from the earliest ``d + 1`` points of each class."""
    comps = []
    for rho in range(m):
        ts = list(range(rho, n_train, m))[:d + 1]
        if len(ts) < d + 1:
            return None
        comps.append(_interpolate(ts, [values[t] for t in ts]))
    return tuple(comps)


def _first_failure(values, comps, m) -> int:
    for t, v in enumerate(values):
        if _eval(comps[t % m], t) != v:
            return t
    return len(values)


def fit_quasipolynomial(counter: Callable[[int], int], t_max: int, period_max: int,
                        degree_bound: int, holdout: int | None = None) -> QuasiPolynomial:
    """Smallest period, then smallest degree, reproducing ``counter`` on ``0..t_max``.

    The last ``holdout`` values (default ``max(degree_bound + 1, 5)``) are
    not used for interpolation; they must be predicted exactly.
    """
    degree_bound = max(int(degree_bound), 0)
    holdout = max(degree_bound + 1, 5) if holdout is None else holdout
    if holdout < degree_bound + 1:
        raise ValueError("at least degree_bound + 1 held-out points are required")
    need = (degree_bound + 1) * period_max + holdout
    if t_max + 1 < need:
        raise ValueError(f"t_max must be at least {need - 1} for these bounds")
    values = [int(counter(t)) for t in range(t_max + 1)]
    n_train = t_max + 1 - holdout
    best = -1
    for m in range(1, period_max + 1):
        for d in range(degree_bound + 1):
            comps = _candidate(values, n_train, m, d)
            if comps is None:
                continue
            fail = _first_failure(values, comps, m)
            if fail == len(values):
                return QuasiPolynomial(m, comps, degree_bound)
            best = max(best, fail - 1)
    raise NoFit(f"no quasi-polynomial with period <= {period_max} and degree <= {degree_bound} "
                f"reproduces t = 0..{t_max}; the largest consistent window is 0..{best}",
                (0, best))


def ray_counter(c: ChoppedSlicedCone, base_lambda, base_beta, dir_lambda, dir_beta):
    bl, bb, dl, db = map(_tuple, (base_lambda, base_beta, dir_lambda, dir_beta))

    def counter(t: int) -> int:
        lam = tuple(a + t * b for a, b in zip(bl, dl))
        beta = tuple(a + t * b for a, b in zip(bb, db))
        return slice_count(c, lam, beta)
    return counter


def ray_scan(c: ChoppedSlicedCone, base_lambda, base_beta, dir_lambda, dir_beta, t_max: int,
             period_max: int, degree_bound: int | None = None,
             holdout: int | None = None) -> QuasiPolynomial:
    """Fit the slice counts along a ray.  A ray that leaves a chamber shows
    up as ``NoFit``; vanishing outside the support is indistinguishable
    from the zero quasi-polynomial."""
    c.require_valid()
    if degree_bound is None:
        degree_bound = max(c.rank_K - c.rank_Q, 0)
    counter = ray_counter(c, base_lambda, base_beta, dir_lambda, dir_beta)
    try:
        return fit_quasipolynomial(counter, t_max, period_max, degree_bound, holdout)
    except NoFit as exc:
        raise NoFit(f"ray leaves a chamber or bounds insufficient: {exc}", exc.window) from None
