"""Littlewood-Richardson coefficients as slices of a chopped and sliced cone.

The cone lives on string coordinates ``t`` for a reduced word of ``w0``.
Its inequalities come from i-trails in the fundamental representations of
the Langlands dual algebra, which are built explicitly here:

* type A factors: the defining representation and its exterior powers,
  ``e_i`` replacing ``v_{i+1}`` by ``v_i`` in a wedge monomial;
* B2 / C2: the 4- and 5-dimensional modules, which are multiplicity free;
  each ``e_i`` acts on the weight basis with the sl2 string coefficients.

For a trail ``gamma = g_0 -> g_1 -> ... -> g_l = delta`` with
``g_{k-1} = g_k + c_k alpha_{i_k}`` the inequality coefficient of ``t_k``
is ``<g_k, alpha_{i_k}> + c_k``, the midpoint pairing
``<(g_{k-1} + g_k) / 2, alpha_{i_k}>``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from .csc import ChoppedSlicedCone, measure, slice_count
from .errors import NotLongestWord, UnsupportedType, WeightNotInRep
from .liealg import (CartanData, apply_word, cartan, check_word, freudenthal, is_longest_word,
                     langlands_dual, reflect_weight, to_root_coords, weyl_dimension)
from .littelmann import chopping_rows, weight_map_rows
from .polyhedra import InequalitySystem, enumerate_lattice_points

SUPPORTED_TYPES = ("A1", "A2", "A3", "B2", "C2", "A1xA1")


@dataclass(frozen=True)
class RepModule:
    cd_dual: CartanData
    highest_weight: tuple
    basis_weights: tuple
    raising_ops: tuple  # raising_ops[i][row][col], 0-based simple index

    @property
    def dim(self) -> int:
        return len(self.basis_weights)

    def block(self, mu) -> List[int]:
        return [k for k, w in enumerate(self.basis_weights) if w == tuple(mu)]


def _factors(tag: str):
    """(letter, rank, offset) per simple factor."""
    out, off = [], 0
    for part in tag.split("x"):
        out.append((part[0], int(part[1:]), off))
        off += int(part[1:])
    return out


def _wedge_module(cd: CartanData, rank: int, offset: int, k: int) -> RepModule:
    n = cd.n
    subsets = sorted(combinations(range(rank + 1), k))
    index = {S: j for j, S in enumerate(subsets)}

    def weight(S):
        # eps_a has fundamental coordinate [a == i] - [a == i + 1] at factor index i
        w = [0] * n
        for a in S:
            if a < rank:
                w[offset + a] += 1
            if a >= 1:
                w[offset + a - 1] -= 1
        return tuple(w)

    ops = []
    for i in range(n):
        M = [[0] * len(subsets) for _ in subsets]
        if offset <= i < offset + rank:
            a = i - offset  # e_i sends v_{a+1} to v_a
            for S in subsets:
                if a + 1 in S and a not in S:
                    T = tuple(sorted((set(S) - {a + 1}) | {a}))
                    M[index[T]][index[S]] = 1
        ops.append(tuple(map(tuple, M)))
    return RepModule(cd, weight(tuple(range(k))), tuple(weight(S) for S in subsets), tuple(ops))


def _string_module(cd: CartanData, hw: tuple) -> RepModule:
    table = freudenthal(cd, hw)
    if any(m != 1 for m in table.values()):
        raise UnsupportedType(f"V{hw} is not multiplicity free")
    weights = sorted(table, key=lambda w: (sum(to_root_coords(cd, tuple(h - x for h, x in zip(hw, w)))), w))
    index = {w: j for j, w in enumerate(weights)}
    ops = []
    for i in range(cd.n):
        alpha = cd.simple_root(i)
        M = [[Fraction(0)] * len(weights) for _ in weights]
        for w in weights:
            up = tuple(x + a for x, a in zip(w, alpha))
            if up not in index:
                continue
            p = 1  # steps available above w
            while tuple(x + (p + 1) * a for x, a in zip(w, alpha)) in index:
                p += 1
            q = 0
            while tuple(x - (q + 1) * a for x, a in zip(w, alpha)) in index:
                q += 1
            M[index[up]][index[w]] = Fraction(p * (q + 1))
        ops.append(tuple(map(tuple, M)))
    return RepModule(cd, tuple(hw), tuple(weights), tuple(ops))


def _require_supported(cd: CartanData):
    if cd.type_tag not in SUPPORTED_TYPES and not (
            cd.type_tag and all(p in ("A1", "A2", "A3") for p in cd.type_tag.split("x"))):
        raise UnsupportedType(f"type {cd.type_tag or cd.a} is not supported")


@lru_cache(maxsize=None)
def fundamental_rep(cd: CartanData, i: int) -> RepModule:
    """``V(omega_i^vee)`` of the Langlands dual algebra (1-based ``i``)."""
    _require_supported(cd)
    dual = langlands_dual(cd)
    if not 1 <= i <= cd.n:
        raise ValueError(f"index {i} out of range")
    hw = tuple(int(j == i - 1) for j in range(cd.n))
    for letter, rank, off in _factors(dual.type_tag):
        if off <= i - 1 < off + rank:
            if letter == "A":
                rep = _wedge_module(dual, rank, off, i - off)
            else:
                rep = _string_module(dual, hw)
            break
    expected = freudenthal(dual, hw)
    got: Dict[tuple, int] = {}
    for w in rep.basis_weights:
        got[w] = got.get(w, 0) + 1
    assert got == expected and rep.highest_weight == hw, "module weights disagree with Freudenthal"
    return rep


# ---------------------------------------------------------------------------
# trails


@dataclass(frozen=True)
class ITrail:
    c: tuple
    from_weight: tuple
    to_weight: tuple
    coefficients: tuple  # inequality coefficients of t_k

    def path(self, cd_dual: CartanData, word) -> List[tuple]:
        return _trail_path(cd_dual, word, self.c, self.to_weight)


def _trail_path(cd_dual, word, c, delta):
    path = [tuple(delta)]
    for k in range(len(word) - 1, -1, -1):
        alpha = cd_dual.simple_root(word[k] - 1)
        path.append(tuple(x + c[k] * a for x, a in zip(path[-1], alpha)))
    return path[::-1]  # g_0 = gamma, ..., g_l = delta


def _apply_composite(rep: RepModule, word, c, vec: Dict[int, Fraction]) -> Dict[int, Fraction]:
    # e_{i_1}^{c_1} ... e_{i_l}^{c_l}: rightmost factor acts first
    for k in range(len(word) - 1, -1, -1):
        M = rep.raising_ops[word[k] - 1]
        for _ in range(c[k]):
            out: Dict[int, Fraction] = {}
            for col, v in vec.items():
                for row in range(rep.dim):
                    m = M[row][col]
                    if m:
                        out[row] = out.get(row, 0) + m * v
            vec = {r: v for r, v in out.items() if v}
            if not vec:
                return vec
    return vec


def composite_is_nonzero(rep: RepModule, word, c, delta) -> bool:
    return any(_apply_composite(rep, word, c, {k: Fraction(1)}) for k in rep.block(delta))


def trail_coefficients(cd_dual: CartanData, word, c, delta) -> tuple:
    path = _trail_path(cd_dual, word, c, delta)
    return tuple(path[k + 1][word[k] - 1] + c[k] for k in range(len(word)))


def itrails(rep: RepModule, gamma, delta, word) -> List[ITrail]:
    """All i-trails from ``gamma`` to ``delta`` in ``rep`` (lexicographic in ``c``)."""
    gamma, delta = tuple(gamma), tuple(delta)
    word = tuple(word)
    if not rep.block(gamma) or not rep.block(delta):
        raise WeightNotInRep(f"{gamma} or {delta} is not a weight of the module")
    cd = rep.cd_dual
    diff = to_root_coords(cd, tuple(g - d for g, d in zip(gamma, delta)))
    if any(v < 0 or v.denominator != 1 for v in diff):
        return []
    l, n = len(word), cd.n
    eqs = [(tuple(int(word[k] - 1 == j) for k in range(l)), diff[j]) for j in range(n)]
    ineqs = [(tuple(int(k == m) for k in range(l)), 0) for m in range(l)]
    cands = enumerate_lattice_points(InequalitySystem(l, tuple(ineqs), tuple(eqs)))
    out = []
    for c in cands:
        if composite_is_nonzero(rep, word, c, delta):
            out.append(ITrail(c, gamma, delta, trail_coefficients(cd, word, c, delta)))
    return out


def cone_trails(cd: CartanData, word, i: int) -> List[ITrail]:
    """Trails from ``omega_i`` to ``w0 s_i omega_i`` (they cut out the string cone)."""
    rep = fundamental_rep(cd, i)
    dual = rep.cd_dual
    hw = rep.highest_weight
    low = apply_word(dual, word, reflect_weight(dual, i - 1, hw))
    return itrails(rep, hw, low, word)


def lambda_trails(cd: CartanData, word, i: int) -> List[ITrail]:
    """Trails from ``s_i omega_i`` to ``w0 omega_i`` (they bound the lambda side)."""
    rep = fundamental_rep(cd, i)
    dual = rep.cd_dual
    hw = rep.highest_weight
    return itrails(rep, reflect_weight(dual, i - 1, hw), apply_word(dual, word, hw), word)


def string_cone_rows(cd: CartanData, word) -> tuple:
    """String-cone inequalities ``row . t >= 0`` derived from trails (deduplicated)."""
    rows = []
    for i in range(1, cd.n + 1):
        for tr in cone_trails(cd, word, i):
            if tr.coefficients not in rows and any(tr.coefficients):
                rows.append(tr.coefficients)
    return tuple(rows)


# ---------------------------------------------------------------------------
# the cone


@dataclass(frozen=True)
class BZSystem:
    cd: CartanData
    word: tuple
    trails: Dict[int, tuple]
    lam_trails: Dict[int, tuple]
    csc: ChoppedSlicedCone = field(repr=False)


@lru_cache(maxsize=None)
def build_bz_csc(cd: CartanData, word=None) -> BZSystem:
    """Assemble ``r`` (cone trails), ``p, s`` (lambda trails, then the
    chopping rows in ``nu``) and ``q`` (weight map) on ``Lambda = P x P``."""
    _require_supported(cd)
    from .liealg import longest_word
    word = longest_word(cd) if word is None else check_word(cd, word)
    if not is_longest_word(cd, word):
        raise NotLongestWord(f"{word} is not a reduced word for w0")
    n, l = cd.n, len(word)
    trails, lam_trails = {}, {}
    r_rows, p_rows, s_rows = [], [], []
    for i in range(1, n + 1):
        trails[i] = tuple(cone_trails(cd, word, i))
        lam_trails[i] = tuple(lambda_trails(cd, word, i))
        r_rows += [tr.coefficients for tr in trails[i]]
        for tr in lam_trails[i]:
            p_rows.append(tuple(-v for v in tr.coefficients))
            s_rows.append(tuple(int(j == i - 1) for j in range(n)) + (0,) * n)
    P, S = chopping_rows(cd, word)
    p_rows += list(P)
    s_rows += [(0,) * n + tuple(row) for row in S]
    q = weight_map_rows(cd, word)
    c = ChoppedSlicedCone(l, 2 * n, len(p_rows), n, len(r_rows), p_rows, q, r_rows, s_rows)
    return BZSystem(cd, word, trails, lam_trails, c)


def lr_coefficient(sys: BZSystem, lam, nu, beta) -> int:
    """``[V(lam) (x) V(nu) : V(lam + nu - beta)]`` as a slice count."""
    return slice_count(sys.csc, tuple(lam) + tuple(nu), tuple(beta))


def lr_table(sys: BZSystem, lam, nu) -> Dict[tuple, int]:
    """All ``beta`` (simple-root coordinates) with nonzero coefficient."""
    return measure(sys.csc, tuple(lam) + tuple(nu)).entries


def lr_table_oracle(cd: CartanData, lam, nu) -> Dict[tuple, int]:
    """``tensor_decompose`` re-indexed by ``beta = lam + nu - mu``."""
    from .liealg import tensor_decompose
    out = {}
    for mu, m in tensor_decompose(cd, lam, nu).items():
        beta = to_root_coords(cd, tuple(a + b - c for a, b, c in zip(lam, nu, mu)))
        out[tuple(int(v) for v in beta)] = m
    return dict(sorted(out.items()))
