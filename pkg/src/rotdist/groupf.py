"""Thompson's group F: normal forms, rewriting and tree pair diagrams.

Normal forms are ``x_{i1}^{r1} ... x_{ik}^{rk} x_{jl}^{-sl} ... x_{j1}^{-s1}``
with ascending positive indices and descending negative ones.  A tree pair
``(T1, T2)`` reads off its normal form from leaf exponents: the positive part
comes from ``T2``, the negative part from ``T1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import SizeMismatch
from .rotations import Generator, Word, apply_word
from .trees import (
    LEAF,
    Tree,
    all_right,
    caret_count,
    leaf_exponents,
    render_tree,
)
from .errors import NotApplicableAtStep


def _exps_to_terms(exps: Sequence[int]) -> tuple:
    return tuple((i, e) for i, e in enumerate(exps) if e)


def _terms_to_exps(terms) -> dict:
    return {i: e for i, e in terms}


@dataclass(frozen=True)
class NormalForm:
    """``positive`` and ``negative`` are ``((index, exponent), ...)`` sorted by index, exponents > 0."""

    positive: tuple = ()
    negative: tuple = ()

    def __post_init__(self):
        for part in (self.positive, self.negative):
            idx = [i for i, _ in part]
            if idx != sorted(set(idx)) or any(e <= 0 or i < 0 for i, e in part):
                raise ValueError(f"malformed normal form part {part!r}")

    @classmethod
    def from_word(cls, w: Word) -> "NormalForm":
        """Read a word that is already written in normal form."""
        pos: dict = {}
        neg: dict = {}
        seen_negative = False
        last = None
        for g in w.expand_y():
            if g.sign > 0:
                if seen_negative or (last is not None and g.index < last):
                    raise ValueError(f"{w} is not in normal form")
                pos[g.index] = pos.get(g.index, 0) + 1
            else:
                if seen_negative and g.index > last:
                    raise ValueError(f"{w} is not in normal form")
                seen_negative = True
                neg[g.index] = neg.get(g.index, 0) + 1
            last = g.index
        return cls(tuple(sorted(pos.items())), tuple(sorted(neg.items())))

    @property
    def length(self) -> int:
        return sum(e for _, e in self.positive) + sum(e for _, e in self.negative)

    def indices(self) -> set:
        return {i for i, _ in self.positive} | {i for i, _ in self.negative}

    def _violations(self, exempt_zero: bool) -> list[int]:
        pos = {i for i, _ in self.positive}
        neg = {i for i, _ in self.negative}
        both = pos & neg
        out = []
        for i in sorted(both):
            if exempt_zero and i == 0:
                continue
            if i + 1 not in pos and i + 1 not in neg:
                out.append(i)
        return out

    @property
    def unique(self) -> bool:
        """True when the reduction condition holds, i.e. this is the unique normal form."""
        return not self._violations(False)

    @property
    def partially_reduced(self) -> bool:
        return not self._violations(True)

    def to_word(self) -> Word:
        parts = [("x", i, e) for i, e in self.positive]
        parts += [("x", i, -e) for i, e in reversed(self.negative)]
        return Word.of(*parts)

    def __str__(self) -> str:
        return str(self.to_word())


@dataclass(frozen=True)
class TreePair:
    t1: Tree
    t2: Tree

    def __post_init__(self):
        if caret_count(self.t1) != caret_count(self.t2):
            raise SizeMismatch(
                f"trees have {caret_count(self.t1)} and {caret_count(self.t2)} carets")

    @property
    def n(self) -> int:
        return caret_count(self.t1)

    @property
    def reduced(self) -> bool:
        return _common_exposed(self.t1, self.t2) is None

    def swap(self) -> "TreePair":
        return TreePair(self.t2, self.t1)

    def __str__(self) -> str:
        return f"({render_tree(self.t1)}, {render_tree(self.t2)})"


# --- pairs <-> words -------------------------------------------------------------


def word_of_pair(p: TreePair) -> NormalForm:
    """Leaf-exponent normal form of the pair as given (no reduction)."""
    if caret_count(p.t1) != caret_count(p.t2):
        raise SizeMismatch("trees differ in size")
    return NormalForm(_exps_to_terms(leaf_exponents(p.t2)), _exps_to_terms(leaf_exponents(p.t1)))


def _tree_from_terms(terms, n: int) -> Tree | None:
    """The n-caret tree whose nonzero leaf exponents are ``terms``, or None if n is too small."""
    build = Word.of(*[("x", i, e) for i, e in terms])
    try:
        t = apply_word(all_right(n), build)
    except NotApplicableAtStep:
        return None
    want = _terms_to_exps(terms)
    got = leaf_exponents(t)
    if any(got[i] != want.get(i, 0) for i in range(len(got))):
        return None
    return t


def pair_of_word(nf: NormalForm | Word | str, reduce: bool = True) -> TreePair:
    """Smallest tree pair whose leaf exponents spell ``nf``.

    Words not yet in normal form are normalised first (without reduction).
    With ``reduce=False`` the direct leaf-exponent pair is returned even when
    it is unreduced, e.g. ``x0 x2 x0^-1`` gives the 4-caret pair.
    """
    if isinstance(nf, str):
        nf = Word.parse(nf)
    if isinstance(nf, Word):
        try:
            nf = NormalForm.from_word(nf)
        except ValueError:
            nf = seminormal_form(nf)
    top = max(nf.indices(), default=-1)
    n = max(1, top + 1)
    while True:
        t1 = _tree_from_terms(nf.negative, n)
        t2 = _tree_from_terms(nf.positive, n) if t1 is not None else None
        if t1 is not None and t2 is not None:
            p = TreePair(t1, t2)
            return reduce_pair(p) if reduce else p
        n += 1


# --- reduction ---------------------------------------------------------------------


def _exposed_paths(t: Tree) -> dict:
    """Map first leaf number -> path for every exposed caret."""
    out = {}

    def visit(node, offset, path):
        if node is None:
            return 1
        if node[0] is None and node[1] is None:
            out[offset] = path
            return 2
        nl = visit(node[0], offset, path + "L")
        return nl + visit(node[1], offset + nl, path + "R")

    visit(t, 0, "")
    return out


def _common_exposed(t1: Tree, t2: Tree, skip=()) -> tuple | None:
    a = _exposed_paths(t1)
    b = _exposed_paths(t2)
    for leaf in sorted(a.keys() & b.keys()):
        if leaf not in skip:
            return leaf, a[leaf], b[leaf]
    return None


def _prune(t: Tree, path: str) -> Tree:
    if not path:
        return LEAF
    if path[0] == "L":
        return (_prune(t[0], path[1:]), t[1])
    return (t[0], _prune(t[1], path[1:]))


def reduce_pair(p: TreePair) -> TreePair:
    """Delete common exposed carets until none remain."""
    t1, t2 = p.t1, p.t2
    while caret_count(t1) > 1:
        hit = _common_exposed(t1, t2)
        if hit is None:
            break
        _, a, b = hit
        t1, t2 = _prune(t1, a), _prune(t2, b)
    return TreePair(t1, t2)


def partially_reduce_pair(p: TreePair) -> TreePair:
    """Like :func:`reduce_pair` but keeps a common caret on leaves 0 and 1 that hangs off the left arm."""
    t1, t2 = p.t1, p.t2
    while caret_count(t1) > 1:
        skip = ()
        a = _exposed_paths(t1)
        if 0 in a and a[0] and set(a[0]) == {"L"}:
            skip = (0,)
        hit = _common_exposed(t1, t2, skip)
        if hit is None:
            break
        _, pa, pb = hit
        t1, t2 = _prune(t1, pa), _prune(t2, pb)
    return TreePair(t1, t2)


# --- rewriting ------------------------------------------------------------------------


def _seminormal_letters(letters: list) -> list:
    """Bring (index, sign) letters into positive-ascending / negative-descending order.

    Uses only the relations of F and free cancellation, so the length never grows.
    """
    w = list(letters)
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(w) - 1:
            (a, sa), (b, sb) = w[i], w[i + 1]
            if sa < 0 and sb > 0:
                # x_a^-1 x_b
                if a == b:
                    del w[i:i + 2]
                    i = max(i - 1, 0)
                    changed = True
                    continue
                if a < b:
                    w[i], w[i + 1] = (b + 1, 1), (a, -1)
                else:
                    w[i], w[i + 1] = (b, 1), (a + 1, -1)
                changed = True
            elif sa > 0 and sb > 0 and a > b:
                # x_a x_b = x_b x_{a+1} for b < a
                w[i], w[i + 1] = (b, 1), (a + 1, 1)
                changed = True
            elif sa < 0 and sb < 0 and a < b:
                # x_a^-1 x_b^-1 = x_{b+1}^-1 x_a^-1 for a < b
                w[i], w[i + 1] = (b + 1, -1), (a, -1)
                changed = True
            i += 1
    return w


def _letters(w: Word) -> list:
    return [(g.index, g.sign) for g in w.expand_y()]


def _nf_from_letters(letters: list) -> NormalForm:
    pos: dict = {}
    neg: dict = {}
    for i, s in letters:
        d = pos if s > 0 else neg
        d[i] = d.get(i, 0) + 1
    return NormalForm(tuple(sorted(pos.items())), tuple(sorted(neg.items())))


def seminormal_form(w: Word | str) -> NormalForm:
    """A (not necessarily unique) normal form for ``w``; already-normal words pass through."""
    if isinstance(w, str):
        w = Word.parse(w)
    try:
        return NormalForm.from_word(w)
    except ValueError:
        return _nf_from_letters(_seminormal_letters(_letters(w)))


def _reduce_nf(nf: NormalForm, exempt_zero: bool) -> NormalForm:
    pos = _terms_to_exps(nf.positive)
    neg = _terms_to_exps(nf.negative)
    while True:
        bad = [i for i in sorted(pos.keys() & neg.keys())
               if not (exempt_zero and i == 0) and i + 1 not in pos and i + 1 not in neg]
        if not bad:
            break
        i = bad[-1]
        # u x_i phi(v) x_i^-1 w -> u v w
        for d in (pos, neg):
            d[i] -= 1
            if d[i] == 0:
                del d[i]
            for j in sorted(k for k in d if k > i + 1):
                d[j - 1] = d.pop(j)
    return NormalForm(tuple(sorted(pos.items())), tuple(sorted(neg.items())))


def to_unique_normal_form(w: Word | NormalForm | str) -> NormalForm:
    nf = w if isinstance(w, NormalForm) else seminormal_form(w)
    return _reduce_nf(nf, exempt_zero=False)


def partial_reduce(w: Word | NormalForm | str) -> NormalForm:
    """Maximal partially reduced form: every reduction except cancelling an x0 pair."""
    nf = w if isinstance(w, NormalForm) else seminormal_form(w)
    return _reduce_nf(nf, exempt_zero=True)


def word_length_infinite(w: Word | NormalForm | str) -> int:
    return to_unique_normal_form(w).length


def shift(w: Word | str) -> Word:
    if isinstance(w, str):
        w = Word.parse(w)
    out = []
    for g in w:
        if g.family != "x":
            raise ValueError("shift is defined on x-words")
        out.append(Generator("x", g.index + 1, g.sign))
    return Word(tuple(out))


# --- multiplication --------------------------------------------------------------------


def _union(a: Tree, b: Tree) -> Tree:
    if a is None:
        return b
    if b is None:
        return a
    return (_union(a[0], b[0]), _union(a[1], b[1]))


def _hanging(small: Tree, big: Tree, out: list) -> None:
    """Subtrees of ``big`` that sit at the leaves of ``small`` (``small`` a rooted subtree of ``big``)."""
    if small is None:
        out.append(big)
        return
    _hanging(small[0], big[0], out)
    _hanging(small[1], big[1], out)


def _graft(t: Tree, pieces: list, pos: list) -> Tree:
    if t is None:
        piece = pieces[pos[0]]
        pos[0] += 1
        return piece
    return (_graft(t[0], pieces, pos), _graft(t[1], pieces, pos))


def _refine(p: TreePair, target: Tree, side: int) -> TreePair:
    """Grow ``p`` so that its tree on ``side`` equals ``target``, mirroring grafts onto the partner."""
    pieces: list = []
    _hanging(p.t2 if side == 2 else p.t1, target, pieces)
    other = p.t1 if side == 2 else p.t2
    grown = _graft(other, pieces, [0])
    return TreePair(grown, target) if side == 2 else TreePair(target, grown)


def multiply(a: TreePair, b: TreePair) -> TreePair:
    """Pair for the product whose normal form is ``word(a)`` followed by ``word(b)``.

    Words act from the right end, so ``b`` runs first: the pairs are chained
    through a common refinement of ``b.t2`` and ``a.t1``.
    """
    common = _union(b.t2, a.t1)
    b2 = _refine(b, common, 2)
    a2 = _refine(a, common, 1)
    return TreePair(b2.t1, a2.t2)


def identity_pair() -> TreePair:
    return TreePair(all_right(1), all_right(1))


def generator_pair(g: Generator) -> TreePair:
    """Reduced pair (T-, T+) of a generator with sign +1; inverses swap the trees."""
    w = Word((Generator(g.family, g.index, 1),)).expand_y()
    p = pair_of_word(to_unique_normal_form(w))
    return p if g.sign > 0 else p.swap()


def pair_of_element(w: Word | str) -> TreePair:
    """Reduced pair for an arbitrary word, through its unique normal form."""
    return pair_of_word(to_unique_normal_form(w))
