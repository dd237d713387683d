"""Demazure weight multiplicities as slice counts of string cones.

For a reduced word ``i = (i_1, ..., i_l)`` a string ``a`` lies in the
polytope for ``lam`` when it is in the string cone and

    a_j + sum_{k > j} a_{i_j i_k} a_k <= lam_{i_j}     (j = 1..l),

and it has weight ``lam - sum_j a_j alpha_{i_j}``.  The string cones
themselves are stored as data tables; each table is checked against the
Demazure character formula before it is used.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, Sequence

from .csc import ChoppedSlicedCone, measure, slice_count
from .errors import UnsupportedTypeWord, ValidationFailed
from .exact import as_int_matrix, rank
from .liealg import CartanData, cartan, check_word, demazure_character


def chopping_rows(cd: CartanData, word: Sequence[int]):
    """``(P, S)`` with ``P a <= S lam`` the chopping inequalities above."""
    word = check_word(cd, word)
    l = len(word)
    P = tuple(
        tuple(1 if k == j else (cd.a[word[j] - 1][word[k] - 1] if k > j else 0) for k in range(l))
        for j in range(l))
    S = tuple(tuple(int(word[j] - 1 == i) for i in range(cd.n)) for j in range(l))
    return P, S


def weight_map_rows(cd: CartanData, word: Sequence[int]):
    """``n x l`` matrix whose column ``j`` is ``alpha_{i_j}`` in simple-root coordinates."""
    return tuple(tuple(int(w - 1 == i) for w in word) for i in range(cd.n))


# String cones, rows r with r . a >= 0.  Keys are (type tag, word).  The
# tables were produced by ``bz.string_cone_rows`` from i-trails and are
# re-checked against Demazure characters when first used.
_BUILTIN: Dict[tuple, tuple] = {
    ("A1", (1,)): ((1,),),
    ("A1xA1", (1, 2)): ((1, 0), (0, 1)),
    ("A1xA1", (2, 1)): ((1, 0), (0, 1)),
    ("A2", (1, 2, 1)): ((1, 0, 0), (0, 1, -1), (0, 0, 1)),
    ("A2", (2, 1, 2)): ((1, 0, 0), (0, 1, -1), (0, 0, 1)),
    ("B2", (1, 2, 1, 2)): ((1, 0, 0, 0), (0, 1, -1, 0), (0, 0, 1, -1), (0, 0, 0, 1)),
    ("B2", (2, 1, 2, 1)): ((1, 0, 0, 0), (0, 2, -1, 0), (0, 1, 0, -1), (0, 0, 1, -2),
                           (0, 0, 0, 1)),
    ("C2", (1, 2, 1, 2)): ((1, 0, 0, 0), (0, 2, -1, 0), (0, 1, 0, -1), (0, 0, 1, -2),
                           (0, 0, 0, 1)),
    ("C2", (2, 1, 2, 1)): ((1, 0, 0, 0), (0, 1, -1, 0), (0, 0, 1, -1), (0, 0, 0, 1)),
    ("A3", (1, 2, 1, 3, 2, 1)): (
        (1, 0, 0, 0, 0, 0), (0, 1, -1, 0, 0, 0), (0, 0, 1, 0, 0, 0),
        (0, 0, 0, 1, -1, 0), (0, 0, 0, 0, 1, -1), (0, 0, 0, 0, 0, 1)),
}


@dataclass(frozen=True)
class StringConeSpec:
    cd: CartanData
    word: tuple
    rows: tuple
    provenance: str = "user_supplied"

    def __post_init__(self):
        word = check_word(self.cd, self.word)
        rows = as_int_matrix(self.rows)
        if any(len(r) != len(word) for r in rows):
            raise ValidationFailed(f"string cone rows must have length {len(word)}")
        if rank(rows) < len(word):
            raise ValidationFailed("the string cone is not pointed")
        object.__setattr__(self, "word", word)
        object.__setattr__(self, "rows", rows)

    @property
    def length(self) -> int:
        return len(self.word)


def builtin_string_cone(cd: CartanData, word: Sequence[int], validate: bool = True) -> StringConeSpec:
    key = (cd.type_tag, tuple(word))
    if key not in _BUILTIN:
        raise UnsupportedTypeWord(f"no built-in string cone for type {cd.type_tag} word {tuple(word)}")
    spec = StringConeSpec(cd, tuple(word), _BUILTIN[key], "builtin")
    if validate:
        _validated(spec)
    return spec


def builtin_catalog() -> list:
    return sorted(_BUILTIN)


def load_string_cone(path_or_data) -> StringConeSpec:
    """Read ``{"type": ..., "word": [...], "rows": [[...]]}`` and validate it."""
    if isinstance(path_or_data, dict):
        data = path_or_data
    else:
        with open(path_or_data) as fh:
            data = json.load(fh)
    spec = StringConeSpec(cartan(data["type"]), tuple(data["word"]), tuple(map(tuple, data["rows"])))
    _validated(spec)
    return spec


def build_csc(spec: StringConeSpec, prefix_length: int | None = None) -> ChoppedSlicedCone:
    """The chopped and sliced cone on strings; trailing coordinates beyond
    ``prefix_length`` are pinned to zero by extra facet rows."""
    l, n = spec.length, spec.cd.n
    P, S = chopping_rows(spec.cd, spec.word)
    r = list(spec.rows)
    if prefix_length is not None:
        if not 0 <= prefix_length <= l:
            raise ValueError(f"prefix length must lie in 0..{l}")
        for k in range(prefix_length, l):
            e = tuple(int(j == k) for j in range(l))
            r += [e, tuple(-v for v in e)]
    c = ChoppedSlicedCone(l, n, l, n, len(r), P, weight_map_rows(spec.cd, spec.word), r, S)
    if not c.is_valid:
        raise ValidationFailed(f"string cone gives unbounded chops (ray {c.recession_ray()})")
    return c


def demazure_multiplicity(spec: StringConeSpec, prefix_length: int, lam, beta) -> int:
    """``dim V_w(lam)_{lam - beta}`` for ``w`` the prefix of the word."""
    return slice_count(build_csc(spec, prefix_length), tuple(lam), tuple(beta))


def multiplicity_table(spec: StringConeSpec, lam, prefix_length: int | None = None) -> Dict[tuple, int]:
    """Weight ``lam - beta`` (fundamental coordinates) -> slice count."""
    c = build_csc(spec, spec.length if prefix_length is None else prefix_length)
    lam = tuple(lam)
    out = {}
    for beta, cnt in measure(c, lam).entries.items():
        w = tuple(l - x for l, x in zip(lam, spec.cd.root_to_weight(beta)))
        out[w] = cnt
    return out


def dominant_grid(n: int, max_sum: int) -> Iterable[tuple]:
    for lam in product(range(max_sum + 1), repeat=n):
        if sum(lam) <= max_sum:
            yield lam


def oracle_mismatches(spec: StringConeSpec, max_sum: int, prefixes: Iterable[int] | None = None):
    """Compare slice tables with Demazure characters on a grid of ``lam``.

    Yields ``(lam, prefix, weight, slice_count, oracle)`` for every
    disagreement, including lattice points at weights the oracle lacks.
    """
    prefixes = range(spec.length + 1) if prefixes is None else prefixes
    for lam in dominant_grid(spec.cd.n, max_sum):
        for m in prefixes:
            got = multiplicity_table(spec, lam, m)
            want = demazure_character(spec.cd, spec.word[:m], lam)
            for w in set(got) | set(want):
                if got.get(w, 0) != want.get(w, 0):
                    yield lam, m, w, got.get(w, 0), want.get(w, 0)


def _load_grid(spec: StringConeSpec) -> int:
    return 3 if spec.cd.n <= 2 else 2


@lru_cache(maxsize=None)
def _validated(spec: StringConeSpec) -> StringConeSpec:
    bad = next(oracle_mismatches(spec, _load_grid(spec)), None)
    if bad is not None:
        lam, m, w, got, want = bad
        raise ValidationFailed(
            f"string cone disagrees with the Demazure character at lam={lam}, prefix={m}, "
            f"weight={w}: {got} != {want}")
    return spec
