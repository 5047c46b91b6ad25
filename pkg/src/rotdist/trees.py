"""Rooted binary trees as pure shapes.

A tree is either ``LEAF`` (``None``) or a caret, the 2-tuple ``(left, right)``.
Nested tuples are immutable and hashable, which is what the exhaustive
searches in :mod:`rotdist.distances` need.

Text form::

    tree := "*" | "(" tree " " tree ")"

Leaves are numbered 0..n from left to right.  The right side of a tree is the
root together with the chain of right children below it (the right arm); the
left arm is the chain of left children below the root.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Tuple

from .errors import NotASiblingPair, ParseError, ResourceCap

Tree = Optional[tuple]
LEAF: Tree = None

DEFAULT_ENUM_CAP = 14


class Arm(enum.Enum):
    RIGHT = "RightArm"
    LEFT = "LeftArm"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, order=True)
class CaretLocation:
    """A spine position: right-arm level 0 is the root, left-arm levels start at 1."""

    arm: Arm
    level: int

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("level must be nonnegative")
        if self.arm is Arm.LEFT and self.level < 1:
            raise ValueError("left-arm locations start at level 1")

    @property
    def path(self) -> str:
        return ("R" if self.arm is Arm.RIGHT else "L") * self.level

    def __str__(self) -> str:
        return f"{self.arm}:{self.level}"


@dataclass(frozen=True)
class GTrace:
    """Position of an exposed caret relative to the spine.

    ``r`` is the number of edges from the caret up to its spinal ancestor,
    ``s`` the ancestor's level, and ``labels`` one L/R letter per non-spinal
    node on that path, nearest the spine first.
    """

    r: int
    s: int
    arm: Arm
    labels: str = ""

    def __post_init__(self):
        if self.r < 0 or self.s < 0:
            raise ValueError("r and s must be nonnegative")
        if len(self.labels) != self.r:
            raise ValueError("one label per non-spinal node is required")
        if self.r and self.labels[0] != ("L" if self.arm is Arm.RIGHT else "R"):
            raise ValueError("first label must point away from the arm")

    @property
    def rs(self) -> Tuple[int, int]:
        return (self.r, self.s)


# --- construction and text ---------------------------------------------------


def parse_tree(text: str) -> Tree:
    pos = 0

    def node() -> Tree:
        nonlocal pos
        if pos >= len(text):
            raise ParseError("unexpected end of input", pos)
        ch = text[pos]
        if ch == "*":
            pos += 1
            return LEAF
        if ch != "(":
            raise ParseError(f"expected '*' or '(' but found {ch!r}", pos)
        pos += 1
        left = node()
        if pos >= len(text) or text[pos] != " ":
            raise ParseError("expected a single space between subtrees", pos)
        pos += 1
        right = node()
        if pos >= len(text) or text[pos] != ")":
            raise ParseError("expected ')'", pos)
        pos += 1
        return (left, right)

    tree = node()
    if pos != len(text):
        raise ParseError("trailing characters", pos)
    return tree


def render_tree(t: Tree) -> str:
    parts: list[str] = []

    def emit(u: Tree) -> None:
        if u is None:
            parts.append("*")
        else:
            parts.append("(")
            emit(u[0])
            parts.append(" ")
            emit(u[1])
            parts.append(")")

    emit(t)
    return "".join(parts)


def all_right(n: int) -> Tree:
    if n < 0:
        raise ValueError("caret count must be nonnegative")
    t: Tree = LEAF
    for _ in range(n):
        t = (LEAF, t)
    return t


def left_comb(n: int) -> Tree:
    """The all-left tree: root plus n-1 left carets."""
    if n < 0:
        raise ValueError("caret count must be nonnegative")
    t: Tree = LEAF
    for _ in range(n):
        t = (t, LEAF)
    return t


@lru_cache(maxsize=None)
def caret_count(t: Tree) -> int:
    if t is None:
        return 0
    return 1 + caret_count(t[0]) + caret_count(t[1])


def leaf_count(t: Tree) -> int:
    return caret_count(t) + 1


# --- structure -----------------------------------------------------------------


def subtree_at(t: Tree, path: str) -> Tree:
    """Follow a string of L/R moves from the root; ``None`` if it runs off the tree."""
    for step in path:
        if t is None:
            return None
        t = t[0] if step == "L" else t[1]
    return t


def replace_at(t: Tree, path: str, new: Tree) -> Tree:
    if not path:
        return new
    if t is None:
        raise ValueError(f"path {path!r} leaves the tree")
    if path[0] == "L":
        return (replace_at(t[0], path[1:], new), t[1])
    return (t[0], replace_at(t[1], path[1:], new))


def arm_length(t: Tree, arm: Arm) -> int:
    """Number of carets on the given arm, counting the root for the right arm."""
    side = 0 if arm is Arm.LEFT else 1
    count = 0
    node = t if arm is Arm.RIGHT else (t[0] if t is not None else None)
    while node is not None:
        count += 1
        node = node[side]
    return count


def location_exists(t: Tree, loc: CaretLocation) -> bool:
    return subtree_at(t, loc.path) is not None


def carets(t: Tree) -> Iterator[Tuple[str, tuple]]:
    """Yield ``(path, caret)`` for every caret, in preorder."""
    stack = [("", t)]
    while stack:
        path, node = stack.pop()
        if node is None:
            continue
        yield path, node
        stack.append((path + "R", node[1]))
        stack.append((path + "L", node[0]))


def leaf_exponents(t: Tree) -> list[int]:
    """Length of the longest all-left upward path from each leaf that avoids the right side."""
    exps: list[int] = []

    def visit(node: Tree, right_side: bool, run: int) -> None:
        if node is None:
            exps.append(run)
            return
        # a left child continues the chain only if this node is off the right side
        visit(node[0], False, 0 if right_side else run + 1)
        visit(node[1], right_side, 0)

    visit(t, True, 0)
    return exps


def _find_exposed(t: Tree, first_leaf: int) -> Optional[str]:
    """Path to the exposed caret with leaves (first_leaf, first_leaf+1), if any."""
    path = []
    offset = 0
    node = t
    while node is not None:
        left, right = node
        if left is None and right is None:
            return "".join(path) if offset == first_leaf else None
        nl = leaf_count(left)
        if first_leaf < offset + nl:
            path.append("L")
            node = left
        else:
            path.append("R")
            offset += nl
            node = right
    return None


def sibling_pairs(t: Tree) -> list[list[int]]:
    pairs: list[list[int]] = []

    def visit(node: Tree, offset: int) -> int:
        if node is None:
            return 1
        if node[0] is None and node[1] is None:
            pairs.append([offset, offset + 1])
            return 2
        nl = visit(node[0], offset)
        return nl + visit(node[1], offset + nl)

    visit(t, 0)
    return pairs


def has_sibling_pair(t: Tree, pair) -> bool:
    i, j = pair
    return j == i + 1 and _find_exposed(t, i) is not None


def g_trace(t: Tree, exposed_leaf_pair) -> GTrace:
    """Compute G(c) for the exposed caret carrying the given sibling pair.

    A caret that is itself on the spine gets ``r = 0`` and empty labels.
    """
    i, j = exposed_leaf_pair
    path = _find_exposed(t, i) if j == i + 1 else None
    if path is None:
        raise NotASiblingPair(f"[{i}, {j}] is not a sibling pair of {render_tree(t)}")
    if not path:
        return GTrace(0, 0, Arm.RIGHT, "")
    run = len(path) - len(path.lstrip(path[0]))
    arm = Arm.RIGHT if path[0] == "R" else Arm.LEFT
    if run == len(path):
        return GTrace(0, run, arm, "")
    return GTrace(len(path) - run, run, arm, path[run:])


# --- enumeration -----------------------------------------------------------------


@lru_cache(maxsize=None)
def _shapes(n: int) -> Tuple[Tree, ...]:
    if n == 0:
        return (LEAF,)
    out = []
    for k in range(n):
        for left in _shapes(k):
            for right in _shapes(n - 1 - k):
                out.append((left, right))
    return tuple(out)


@lru_cache(maxsize=16)
def _sorted_trees(n: int) -> Tuple[Tree, ...]:
    return tuple(sorted(_shapes(n), key=render_tree))


def enumerate_trees(n: int, cap: int = DEFAULT_ENUM_CAP) -> list[Tree]:
    """All trees with n carets, sorted by their canonical text."""
    if n < 0:
        raise ValueError("caret count must be nonnegative")
    if n > cap:
        raise ResourceCap(f"enumerating trees with {n} carets exceeds the cap of {cap}")
    return list(_sorted_trees(n))


def catalan(n: int) -> int:
    c = [1]
    for m in range(1, n + 1):
        c.append(sum(c[k] * c[m - 1 - k] for k in range(m)))
    return c[n]
