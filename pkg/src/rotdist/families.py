"""Word families whose tree pairs are far apart under restricted rotations."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .distances import GenSet, rotation_graph
from .errors import ParameterViolation
from .groupf import TreePair, pair_of_word, word_of_pair
from .rotations import Generator, Word
from .trees import render_tree


@dataclass(frozen=True)
class FamilyInstance:
    name: str
    params: tuple
    word: Word
    pair: TreePair
    genset: GenSet
    predicted_lower_bound: Optional[int] = None
    predicted_upper_bound: Optional[int] = None
    buried_t1: Optional[tuple] = None
    buried_t2: Optional[tuple] = None
    derived: bool = False

    @property
    def n(self) -> int:
        return self.pair.n

    def describe(self) -> dict:
        return {
            "name": self.name,
            "params": dict(self.params),
            "n": self.n,
            "word": str(self.word),
            "t1": render_tree(self.pair.t1),
            "t2": render_tree(self.pair.t2),
            "genset": str(self.genset),
            "lower_bound": self.predicted_lower_bound,
            "upper_bound": self.predicted_upper_bound,
            "derived": self.derived,
        }


def _x(k: int, e: int = 1) -> list[Generator]:
    sign = 1 if e > 0 else -1
    return [Generator("x", k, sign)] * abs(e)


def _build(name, params, letters, genset, lower, upper, buried_t1=None, buried_t2=None, n=None):
    word = Word(tuple(letters))
    pair = pair_of_word(word)
    if n is not None and pair.n != n:
        raise AssertionError(f"{name} produced {pair.n} carets, expected {n}")
    return FamilyInstance(name, tuple(params.items()), word, pair, genset, lower, upper, buried_t1, buried_t2)


def badword(m: int, n: int) -> FamilyInstance:
    """``x_{m+2} ... x_{n-2} x_{n-3}^-1 ... x_{m+1}^-1`` over ``{x0..x_m}``."""
    if m < 1:
        raise ParameterViolation("badword needs m >= 1")
    if n <= m + 4:
        raise ParameterViolation(f"badword needs n > m + 4 (got m={m}, n={n})")
    letters = []
    for k in range(m + 2, n - 1):
        letters += _x(k)
    for k in range(n - 3, m, -1):
        letters += _x(k, -1)
    return _build("Badword", {"m": m, "n": n}, letters, GenSet.finite(range(m + 1)),
                  4 * n - 4 * m - 4, 4 * n - 8, (n - 3, n - 2), (n - 2, n - 1), n)


def longra(n: int) -> FamilyInstance:
    """``x0 x1 ... x_{n-2} x_{n-3}^-1 ... x1^-1 x0^-2``; right-arm distance exactly 2n-2."""
    if n < 3:
        raise ParameterViolation("longra needs n >= 3")
    letters = []
    for k in range(n - 1):
        letters += _x(k)
    for k in range(n - 3, 0, -1):
        letters += _x(k, -1)
    letters += _x(0, -2)
    return _build("LongRA", {"n": n}, letters, GenSet.all_right_arm(), 2 * n - 2, 2 * n - 2, n=n)


def _spinal_letters(I: int, m: int, extra: bool) -> list[Generator]:
    letters = _x(I + 2)
    for k in range(I + 3, m + 1):
        letters += _x(k, 2)
    if extra:
        letters += _x(m + 1) + _x(m, -1)
    for k in range(m - 1, I + 1, -1):
        letters += _x(k, -2)
    letters += _x(I + 1, -1)
    return letters


def _spinal_genset(I: int, left_max: Optional[int]) -> tuple[GenSet, int]:
    J = I if left_max is None else left_max
    if I < 1 or J < 0:
        raise ParameterViolation("spinal families need I >= 1 and a nonnegative left level")
    return GenSet.finite(range(I + 1), range(1, J + 1)), J


def spinalword(I: int, m: int, left_max: Optional[int] = None) -> FamilyInstance:
    """``x_{I+2} x_{I+3}^2 ... x_m^2 x_{m-1}^-2 ... x_{I+2}^-2 x_{I+1}^-1`` with ``n = 2m - I``.

    The generating set is ``{x0..x_I, y1..y_J}`` with ``J = left_max`` (default ``I``).
    """
    if m < I + 2:
        raise ParameterViolation(f"spinalword needs m >= I + 2 (got I={I}, m={m})")
    S, J = _spinal_genset(I, left_max)
    n = 2 * m - I
    return _build("Spinal", {"I": I, "m": m, "J": J}, _spinal_letters(I, m, False), S,
                  4 * n - 4 * max(I, J) - 12, 4 * n - 8, (m - 1, m), (m, m + 1), n)


def spinal_parity(I: int, m: int, left_max: Optional[int] = None) -> FamilyInstance:
    """The spinal family with one extra caret (``x_{m+1} x_m^-1`` in the middle)."""
    if m < I + 2:
        raise ParameterViolation(f"spinal_parity needs m >= I + 2 (got I={I}, m={m})")
    S, J = _spinal_genset(I, left_max)
    n = 2 * m - I + 1
    return _build("SpinalParity", {"I": I, "m": m, "J": J}, _spinal_letters(I, m, True), S,
                  4 * n - 4 * max(I, J) - 10, 4 * n - 8, (m, m + 1), (m + 1, m + 2), n)


@lru_cache(maxsize=None)
def discovered_rr(n: int) -> FamilyInstance:
    """A pair at the largest {x0,x1} distance among reduced n-caret pairs, found by exhaustive search.

    Among all maximising pairs the first in canonical text order is returned.
    """
    if not 3 <= n <= 8:
        raise ParameterViolation("the discovered family is searched for 3 <= n <= 8")
    S = GenSet.finite((0, 1))
    g = rotation_graph(n, S)
    best = (-1, None)
    for idx, rows in g.iter_distance_rows():
        for r, i in enumerate(idx):
            order = np.argsort(-rows[r], kind="stable")
            for j in order:
                d = int(rows[r, j])
                if d <= best[0]:
                    break
                pair = TreePair(g.trees[i], g.trees[j])
                if pair.reduced:
                    best = (d, pair)
                    break
    d, pair = best
    word = word_of_pair(pair).to_word()
    return FamilyInstance("Discovered", (("n", n),), word, pair, S, d, 4 * n - 8, derived=True)


FAMILIES = {
    "badword": badword,
    "longra": longra,
    "spinal": spinalword,
    "spinal-parity": spinal_parity,
    "discovered": discovered_rr,
}
