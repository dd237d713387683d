"""Root systems, Weyl words and representation-theoretic oracles.

Conventions
-----------
* Weights are integer tuples in fundamental-weight coordinates,
  ``mu[i] = <alpha_i^vee, mu>``.
* Roots are integer tuples in simple-root coordinates.
* The Cartan matrix satisfies ``a[i][j] = <alpha_i^vee, alpha_j>``, so the
  simple root ``alpha_j`` has fundamental-weight coordinates given by column
  ``j`` of ``a``.
* B2 is ``[[2, -1], [-2, 2]]`` (``alpha_1`` long), C2 is its transpose.
* Word letters are 1-based, as in ``s_1 s_2 s_1``.
"""
from __future__ import annotations

import os
import re
from math import lcm
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .errors import NotDominant, NotFiniteType, NotReduced, TooLarge
from .exact import det, inverse

Weight = Tuple[int, ...]
WeightFunction = Dict[Weight, int]

DEFAULT_DIM_CAP = int(os.environ.get("CHOPCONE_DIM_CAP", "10000"))
DEFAULT_TENSOR_CAP = int(os.environ.get("CHOPCONE_TENSOR_CAP", "1000000"))


@dataclass(frozen=True)
class CartanData:
    a: tuple
    type_tag: Optional[str] = None
    _sym: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        a = tuple(tuple(int(v) for v in row) for row in self.a)
        n = len(a)
        if any(len(r) != n for r in a):
            raise ValueError("Cartan matrix must be square")
        for i in range(n):
            if a[i][i] != 2:
                raise ValueError(f"a[{i}][{i}] must be 2")
            for j in range(n):
                if i != j and (a[i][j] > 0 or (a[i][j] == 0) != (a[j][i] == 0)):
                    raise ValueError(f"not a generalized Cartan matrix at ({i}, {j})")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "_sym", _symmetrizer(a))

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def symmetrizer(self) -> Optional[tuple]:
        """Positive integers ``d`` with ``d_i a_ij = d_j a_ji`` (None if not symmetrizable)."""
        return self._sym

    def is_finite_type(self) -> bool:
        d = self._sym
        if d is None:
            return False
        B = [[d[i] * self.a[i][j] for j in range(self.n)] for i in range(self.n)]
        return all(det([row[:k] for row in B[:k]]) > 0 for k in range(1, self.n + 1))

    def require_finite(self):
        if not self.is_finite_type():
            raise NotFiniteType(f"{self.type_tag or self.a} is not of finite type")

    def root_to_weight(self, r: Sequence[int]) -> Weight:
        return tuple(sum(self.a[i][j] * r[j] for j in range(self.n)) for i in range(self.n))

    def simple_root(self, i: int) -> Weight:
        """``alpha_i`` (0-based index) in fundamental-weight coordinates."""
        return tuple(self.a[k][i] for k in range(self.n))


def _symmetrizer(a):
    n = len(a)
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        queue = [start]
        while queue:
            i = queue.pop()
            for j in range(n):
                if j != i and a[i][j] != 0:
                    val = d[i] * a[i][j] / a[j][i]
                    if d[j] is None:
                        d[j] = val
                        queue.append(j)
                    elif d[j] != val:
                        return None
    den = lcm(*(v.denominator for v in d)) if d else 1
    return tuple(int(v * den) for v in d)


def _block_diag(blocks):
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, v in enumerate(row):
                out[off + i][off + j] = v
        off += len(b)
    return tuple(map(tuple, out))


def _simple_type(letter: str, n: int):
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    if letter in "ABCD":
        for i in range(n - 1):
            a[i][i + 1] = a[i + 1][i] = -1
    if letter == "B" and n >= 2:
        a[n - 1][n - 2] = -2
    elif letter == "C" and n >= 2:
        a[n - 2][n - 1] = -2
    elif letter == "D":
        if n < 4:
            raise ValueError("D_n needs n >= 4")
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
    elif letter == "G":
        if n != 2:
            raise ValueError("G has rank 2")
        a = [[2, -1], [-3, 2]]
    elif letter not in "ABC":
        raise ValueError(f"unknown type letter {letter}")
    return a


def cartan(type_tag: str) -> CartanData:
    """CartanData from a label such as ``"A2"``, ``"B2"``, ``"C2"`` or ``"A1xA1"``."""
    tag = type_tag.replace("×", "x").replace(" ", "").replace("_", "")
    parts = tag.split("x")
    blocks = []
    for p in parts:
        m = re.fullmatch(r"([A-G])(\d+)", p)
        if not m:
            raise ValueError(f"cannot parse type {type_tag!r}")
        blocks.append(_simple_type(m.group(1), int(m.group(2))))
    return CartanData(_block_diag(blocks), tag)


_DUAL_LETTER = {"B": "C", "C": "B"}


def langlands_dual(cd: CartanData) -> CartanData:
    """Transpose the Cartan matrix; B and C labels are swapped."""
    tag = cd.type_tag
    if tag is not None:
        tag = "x".join(_DUAL_LETTER.get(p[0], p[0]) + p[1:] for p in tag.split("x"))
    return CartanData(tuple(zip(*cd.a)), tag)


# ---------------------------------------------------------------------------
# Weyl group


def reflect_weight(cd: CartanData, i: int, mu: Sequence[int]) -> Weight:
    """``s_i mu`` for a 0-based index ``i``."""
    c = mu[i]
    return tuple(mu[j] - c * cd.a[j][i] for j in range(cd.n))


def reflect_root(cd: CartanData, i: int, r: Sequence[int]) -> Weight:
    c = sum(cd.a[i][j] * r[j] for j in range(cd.n))
    out = list(r)
    out[i] -= c
    return tuple(out)


def apply_word(cd: CartanData, word: Sequence[int], mu: Sequence[int]) -> Weight:
    """``s_{i_1} ... s_{i_l} mu`` (rightmost letter acts first)."""
    mu = tuple(mu)
    for i in reversed(word):
        mu = reflect_weight(cd, i - 1, mu)
    return mu


def dominant_rep(cd: CartanData, mu: Sequence[int]) -> Weight:
    mu = tuple(mu)
    while True:
        for i in range(cd.n):
            if mu[i] < 0:
                mu = reflect_weight(cd, i, mu)
                break
        else:
            return mu


def weyl_orbit(cd: CartanData, mu: Sequence[int]) -> set:
    start = tuple(mu)
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for i in range(cd.n):
            w = reflect_weight(cd, i, v)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


@lru_cache(maxsize=None)
def positive_roots(cd: CartanData) -> tuple:
    """All positive roots in simple-root coordinates, sorted by height."""
    cd.require_finite()
    simple = [tuple(int(i == j) for j in range(cd.n)) for i in range(cd.n)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        r = queue.popleft()
        for i in range(cd.n):
            if r == simple[i]:
                continue
            s = reflect_root(cd, i, r)
            if s not in seen:
                seen.add(s)
                queue.append(s)
    return tuple(sorted(seen, key=lambda r: (sum(r), r)))


def is_reduced(cd: CartanData, word: Sequence[int]) -> bool:
    """A word is reduced iff each ``s_{i_1}...s_{i_{k-1}} alpha_{i_k}`` is positive."""
    cd.require_finite()
    for k, i in enumerate(word):
        r = tuple(int(j == i - 1) for j in range(cd.n))
        for j in reversed(word[:k]):
            r = reflect_root(cd, j - 1, r)
        if any(v < 0 for v in r):
            return False
    return True


def check_word(cd: CartanData, word: Sequence[int]) -> tuple:
    word = tuple(int(i) for i in word)
    if any(not 1 <= i <= cd.n for i in word):
        raise NotReduced(f"letters of {word} must lie in 1..{cd.n}")
    if not is_reduced(cd, word):
        raise NotReduced(f"{word} is not a reduced word")
    return word


@lru_cache(maxsize=None)
def longest_word(cd: CartanData) -> tuple:
    """Reduced word for ``w0``: reflect ``rho`` greedily to ``-rho``."""
    cd.require_finite()
    mu = (1,) * cd.n
    word = []
    while True:
        for i in range(cd.n):
            if mu[i] > 0:
                mu = reflect_weight(cd, i, mu)
                word.append(i + 1)
                break
        else:
            return tuple(word)


def is_longest_word(cd: CartanData, word: Sequence[int]) -> bool:
    return (len(word) == len(positive_roots(cd))) and is_reduced(cd, word)


# ---------------------------------------------------------------------------
# Inner products and dimensions


@lru_cache(maxsize=None)
def _form(cd: CartanData) -> tuple:
    # (lam, mu) = lam^T diag(d) A^{-1} mu in fundamental-weight coordinates
    inv = inverse(cd.a)
    d = cd.symmetrizer
    return tuple(tuple(d[i] * inv[i][j] for j in range(cd.n)) for i in range(cd.n))


def inner(cd: CartanData, lam: Sequence, mu: Sequence) -> Fraction:
    G = _form(cd)
    return sum((lam[i] * G[i][j] * mu[j] for i in range(cd.n) for j in range(cd.n)), Fraction(0))


def weight_root_pairing(cd: CartanData, lam: Sequence, root: Sequence[int]) -> Fraction:
    """``(lam, alpha)`` for a weight and a root in simple-root coordinates."""
    d = cd.symmetrizer
    return sum((Fraction(lam[i] * d[i] * root[i]) for i in range(cd.n)), Fraction(0))


def to_root_coords(cd: CartanData, mu: Sequence[int]) -> tuple:
    inv = inverse(cd.a)
    return tuple(sum(inv[i][j] * mu[j] for j in range(cd.n)) for i in range(cd.n))


def is_dominant(mu: Sequence[int]) -> bool:
    return all(v >= 0 for v in mu)


def _require_dominant(mu):
    if not is_dominant(mu):
        raise NotDominant(f"{tuple(mu)} is not dominant")


def weyl_dimension(cd: CartanData, lam: Sequence[int]) -> int:
    """Weyl's product formula."""
    cd.require_finite()
    _require_dominant(lam)
    rho = (1,) * cd.n
    lr = tuple(l + 1 for l in lam)
    num = Fraction(1)
    for alpha in positive_roots(cd):
        num *= weight_root_pairing(cd, lr, alpha) / weight_root_pairing(cd, rho, alpha)
    assert num.denominator == 1
    return int(num)


def _below(cd: CartanData, lam: Weight, mu: Weight) -> bool:
    return all(v >= 0 and v.denominator == 1 for v in to_root_coords(cd, tuple(l - m for l, m in zip(lam, mu))))


@lru_cache(maxsize=4096)
def _dominant_multiplicities(cd: CartanData, lam: Weight) -> dict:
    """Freudenthal's recursion restricted to dominant weights."""
    n = cd.n
    roots = positive_roots(cd)
    root_w = [cd.root_to_weight(r) for r in roots]
    # dominant weights of V(lam) by subtracting positive roots
    dom = {lam}
    queue = deque([lam])
    while queue:
        mu = queue.popleft()
        for aw in root_w:
            nu = tuple(m - a for m, a in zip(mu, aw))
            if is_dominant(nu) and nu not in dom:
                dom.add(nu)
                queue.append(nu)
    height = {mu: sum(to_root_coords(cd, tuple(l - m for l, m in zip(lam, mu)))) for mu in dom}
    rho = (1,) * n
    lr = tuple(l + 1 for l in lam)
    top = inner(cd, lr, lr)
    mult = {lam: 1}
    for mu in sorted(dom, key=lambda m: height[m]):
        if mu == lam:
            continue
        total = Fraction(0)
        for r, aw in zip(roots, root_w):
            k = 1
            while True:
                nu = tuple(m + k * a for m, a in zip(mu, aw))
                dnu = dominant_rep(cd, nu)
                if dnu not in dom:
                    break
                total += mult[dnu] * weight_root_pairing(cd, nu, r)
                k += 1
        mr = tuple(m + 1 for m in mu)
        m = 2 * total / (top - inner(cd, mr, mr))
        assert m.denominator == 1
        mult[mu] = int(m)
    return {mu: m for mu, m in mult.items() if m}


def freudenthal(cd: CartanData, lam: Sequence[int], cap: int | None = None) -> WeightFunction:
    """Full weight-multiplicity table of ``V(lam)``."""
    cd.require_finite()
    lam = tuple(int(v) for v in lam)
    _require_dominant(lam)
    cap = DEFAULT_DIM_CAP if cap is None else cap
    dim = weyl_dimension(cd, lam)
    if dim > cap:
        raise TooLarge(f"dim V{lam} = {dim} exceeds the cap {cap}")
    table = {}
    for mu, m in _dominant_multiplicities(cd, lam).items():
        for nu in weyl_orbit(cd, mu):
            table[nu] = m
    return table


# ---------------------------------------------------------------------------
# Demazure characters


def demazure_operator(cd: CartanData, i: int, char: WeightFunction) -> WeightFunction:
    """Apply ``D_i`` (1-based ``i``) to a formal character."""
    alpha = cd.simple_root(i - 1)
    out: WeightFunction = {}
    for mu, c in char.items():
        k = mu[i - 1]
        if k >= 0:
            for j in range(k + 1):
                nu = tuple(m - j * a for m, a in zip(mu, alpha))
                out[nu] = out.get(nu, 0) + c
        elif k <= -2:
            for j in range(1, -k):
                nu = tuple(m + j * a for m, a in zip(mu, alpha))
                out[nu] = out.get(nu, 0) - c
    return {mu: c for mu, c in out.items() if c}


def demazure_character(cd: CartanData, word: Sequence[int], lam: Sequence[int]) -> WeightFunction:
    """Character of ``V_w(lam)`` as ``D_{i_1} ... D_{i_l} e^lam``."""
    word = check_word(cd, word)
    lam = tuple(int(v) for v in lam)
    _require_dominant(lam)
    char = {lam: 1}
    for i in reversed(word):
        char = demazure_operator(cd, i, char)
    return char


# ---------------------------------------------------------------------------
# Tensor products


def character_product(a: WeightFunction, b: WeightFunction) -> WeightFunction:
    out: WeightFunction = {}
    for mu, c in a.items():
        for nu, d in b.items():
            w = tuple(x + y for x, y in zip(mu, nu))
            out[w] = out.get(w, 0) + c * d
    return {w: c for w, c in out.items() if c}


def _klimyk(cd: CartanData, lam: Weight, nu: Weight, cap: int) -> Dict[Weight, int]:
    # sum over weights mu of the smaller factor of sign(w) V(w.(lam + mu))
    if weyl_dimension(cd, lam) < weyl_dimension(cd, nu):
        lam, nu = nu, lam
    result: Dict[Weight, int] = {}
    for mu, m in freudenthal(cd, nu, cap).items():
        v = [l + x + 1 for l, x in zip(lam, mu)]
        sign = 1
        while True:
            if 0 in v:
                sign = 0
                break
            i = next((k for k, x in enumerate(v) if x < 0), None)
            if i is None:
                break
            c = v[i]
            v = [v[j] - c * cd.a[j][i] for j in range(cd.n)]
            sign = -sign
        if sign:
            w = tuple(x - 1 for x in v)
            result[w] = result.get(w, 0) + sign * m
    return {w: m for w, m in result.items() if m}


def _peel(cd: CartanData, lam: Weight, nu: Weight, cap: int) -> Dict[Weight, int]:
    # strip off highest weights from the product character
    char = character_product(freudenthal(cd, lam, cap), freudenthal(cd, nu, cap))
    result = {}

    def height(mu):
        return sum(to_root_coords(cd, mu))

    while char:
        mu = max(char, key=lambda m: (height(m), m))
        m = char[mu]
        assert is_dominant(mu) and m > 0
        result[mu] = m
        for w, c in freudenthal(cd, mu, cap).items():
            v = char.get(w, 0) - m * c
            if v:
                char[w] = v
            else:
                char.pop(w, None)
    return result


def tensor_decompose(cd: CartanData, lam: Sequence[int], nu: Sequence[int],
                     cap: int | None = None, method: str = "klimyk") -> Dict[Weight, int]:
    """Multiplicities ``[V(lam) (x) V(nu) : V(mu)]``.

    ``method="klimyk"`` reflects ``lam + mu + rho`` over the weights ``mu`` of
    the smaller factor (Racah-Speiser); ``method="peel"`` strips highest
    weights off the product character.  The two are independent and are
    cross-checked in the tests.
    """
    cd.require_finite()
    lam = tuple(int(v) for v in lam)
    nu = tuple(int(v) for v in nu)
    _require_dominant(lam)
    _require_dominant(nu)
    cap = DEFAULT_TENSOR_CAP if cap is None else cap
    total = weyl_dimension(cd, lam) * weyl_dimension(cd, nu)
    if total > cap:
        raise TooLarge(f"dim product {total} exceeds the cap {cap}")
    if method == "klimyk":
        result = _klimyk(cd, lam, nu, cap)
    elif method == "peel":
        result = _peel(cd, lam, nu, cap)
    else:
        raise ValueError(f"unknown method {method!r}")
    return dict(sorted(result.items(), reverse=True))
