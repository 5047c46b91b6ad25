"""Rotations at spine locations and their reading as generators of F.

Conventions fixed here and checked by the test suite:

* ``x_k`` is a left rotation at right-arm level ``k``; ``x_k^-1`` the right
  rotation at the same place.
* ``y_k`` is a right rotation at left-arm level ``k`` (the mirror image), so
  that ``y_k`` acts exactly as ``x0^k x1 x0^-(k+1)``.
* Words act on trees from the right end: ``apply_word(t, "a b")`` applies
  ``b`` first.
"""

from __future__ import annotations

import enum
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import NotApplicable, NotApplicableAtStep, ParseError, UnspecifiedCase
from .trees import (
    Arm,
    CaretLocation,
    GTrace,
    Tree,
    arm_length,
    enumerate_trees,
    g_trace,
    has_sibling_pair,
    render_tree,
    replace_at,
    sibling_pairs,
    subtree_at,
)


class Direction(enum.Enum):
    LEFT = "LeftRotation"
    RIGHT = "RightRotation"

    @property
    def inverse(self) -> "Direction":
        return Direction.RIGHT if self is Direction.LEFT else Direction.LEFT

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class RotationStep:
    location: CaretLocation
    direction: Direction

    @property
    def inverse(self) -> "RotationStep":
        return RotationStep(self.location, self.direction.inverse)

    def __str__(self) -> str:
        return f"{self.direction} at {self.location}"


# --- words -------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Generator:
    family: str
    index: int
    sign: int = 1

    def __post_init__(self):
        if self.family not in ("x", "y"):
            raise ValueError(f"unknown generator family {self.family!r}")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.index < (1 if self.family == "y" else 0):
            raise ValueError(f"{self.family} index out of range: {self.index}")

    @property
    def inverse(self) -> "Generator":
        return Generator(self.family, self.index, -self.sign)

    def __str__(self) -> str:
        return f"{self.family}{self.index}" + ("" if self.sign == 1 else "^-1")


_LETTER = re.compile(r"([xy])(\d+)(?:\^(-?\d+))?\Z")


@dataclass(frozen=True)
class Word:
    """A finite sequence of generator letters, each with exponent +-1."""

    letters: tuple = field(default_factory=tuple)

    @classmethod
    def parse(cls, text: str) -> "Word":
        if text == "":
            return cls(())
        letters: list[Generator] = []
        pos = 0
        for token in text.split(" "):
            m = _LETTER.match(token)
            if m is None:
                raise ParseError(f"bad letter {token!r}", pos)
            family, index, exp = m.group(1), int(m.group(2)), m.group(3)
            power = 1 if exp is None else int(exp)
            if power == 0:
                raise ParseError(f"zero exponent in {token!r}", pos)
            if family == "y" and index < 1:
                raise ParseError("y generators start at index 1", pos)
            g = Generator(family, index, 1 if power > 0 else -1)
            letters.extend([g] * abs(power))
            pos += len(token) + 1
        return cls(tuple(letters))

    @classmethod
    def of(cls, *parts: tuple) -> "Word":
        """Build from ``(family, index, exponent)`` triples."""
        letters = []
        for family, index, power in parts:
            g = Generator(family, index, 1 if power > 0 else -1)
            letters.extend([g] * abs(power))
        return cls(tuple(letters))

    def grouped(self) -> list[tuple[Generator, int]]:
        """Run-length form: ``[(generator with sign +1, exponent), ...]``."""
        runs: list[list] = []
        for g in self.letters:
            base = Generator(g.family, g.index, 1)
            if runs and runs[-1][0] == base and (runs[-1][1] > 0) == (g.sign > 0):
                runs[-1][1] += g.sign
            else:
                runs.append([base, g.sign])
        return [(g, e) for g, e in runs]

    def __str__(self) -> str:
        out = []
        for g, e in self.grouped():
            out.append(f"{g.family}{g.index}" + ("" if e == 1 else f"^{e}"))
        return " ".join(out)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Generator]:
        return iter(self.letters)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple(g.inverse for g in reversed(self.letters)))

    def expand_y(self) -> "Word":
        """Rewrite every ``y_n`` as ``x0^n x1 x0^-(n+1)``."""
        out: list[Generator] = []
        for g in self.letters:
            if g.family == "x":
                out.append(g)
                continue
            n = g.index
            block = [Generator("x", 0, 1)] * n + [Generator("x", 1, 1)] + [Generator("x", 0, -1)] * (n + 1)
            if g.sign < 0:
                block = [h.inverse for h in reversed(block)]
            out.extend(block)
        return Word(tuple(out))


# --- rotating ----------------------------------------------------------------


def _rotate_node(node: Tree, direction: Direction) -> Tree:
    if direction is Direction.RIGHT:
        (a, b), c = node
        return (a, (b, c))
    a, (b, c) = node
    return ((a, b), c)


def can_rotate_at(t: Tree, path: str, direction: Direction) -> bool:
    node = subtree_at(t, path)
    if node is None:
        return False
    child = node[0] if direction is Direction.RIGHT else node[1]
    return child is not None


def rotate_at(t: Tree, path: str, direction: Direction) -> Tree:
    """Rotate at the caret reached by ``path`` (any caret, not only the spine)."""
    if not can_rotate_at(t, path, direction):
        raise NotApplicable(f"{direction} impossible at {path or 'root'} of {render_tree(t)}")
    return replace_at(t, path, _rotate_node(subtree_at(t, path), direction))


def can_rotate(t: Tree, step: RotationStep) -> bool:
    return can_rotate_at(t, step.location.path, step.direction)


def rotate(t: Tree, step: RotationStep) -> Tree:
    if not can_rotate(t, step):
        raise NotApplicable(f"{step} is not applicable to {render_tree(t)}")
    return rotate_at(t, step.location.path, step.direction)


def spine_steps(t: Tree, right_levels: Iterable[int] | None = None,
                left_levels: Iterable[int] | None = None) -> list[RotationStep]:
    """Applicable steps at the given levels (default: the whole spine), in a fixed order."""
    if right_levels is None:
        right_levels = range(arm_length(t, Arm.RIGHT))
    if left_levels is None:
        left_levels = range(1, arm_length(t, Arm.LEFT) + 1)
    steps = []
    for arm, levels in ((Arm.RIGHT, sorted(right_levels)), (Arm.LEFT, sorted(left_levels))):
        for k in levels:
            loc = CaretLocation(arm, k)
            for d in (Direction.LEFT, Direction.RIGHT):
                s = RotationStep(loc, d)
                if can_rotate(t, s):
                    steps.append(s)
    return steps


def step_of_generator(g: Generator) -> RotationStep:
    if g.family == "x":
        d = Direction.LEFT if g.sign > 0 else Direction.RIGHT
        return RotationStep(CaretLocation(Arm.RIGHT, g.index), d)
    d = Direction.RIGHT if g.sign > 0 else Direction.LEFT
    return RotationStep(CaretLocation(Arm.LEFT, g.index), d)


def generator_of_step(step: RotationStep) -> Generator:
    loc, d = step.location, step.direction
    if loc.arm is Arm.RIGHT:
        return Generator("x", loc.level, 1 if d is Direction.LEFT else -1)
    return Generator("y", loc.level, 1 if d is Direction.RIGHT else -1)


def apply_word(t: Tree, w: Word | str) -> Tree:
    """Execute ``w`` as a rotation script, rightmost letter first."""
    if isinstance(w, str):
        w = Word.parse(w)
    for pos in range(len(w.letters) - 1, -1, -1):
        step = step_of_generator(w.letters[pos])
        if not can_rotate(t, step):
            raise NotApplicableAtStep(pos, f"letter {pos} ({w.letters[pos]}): {step} impossible on {render_tree(t)}")
        t = rotate_at(t, step.location.path, step.direction)
    return t


def word_of_steps(steps: Sequence[RotationStep]) -> Word:
    """The word whose execution performs ``steps`` in the given order."""
    return Word(tuple(generator_of_step(s) for s in reversed(steps)))


# --- sibling pairs -------------------------------------------------------------


@dataclass(frozen=True)
class SiblingEffect:
    created: list
    destroyed: list


def sibling_effect(t: Tree, step: RotationStep) -> SiblingEffect:
    before = {tuple(p) for p in sibling_pairs(t)}
    after = {tuple(p) for p in sibling_pairs(rotate(t, step))}
    return SiblingEffect(
        created=[list(p) for p in sorted(after - before)],
        destroyed=[list(p) for p in sorted(before - after)],
    )


# --- G(c) transitions ------------------------------------------------------------

# (direction, relation of k to s, first two labels or None) -> (dr, ds)
# relation: "<" means k < s-1, "s-1", "s", ">" means k > s.
_RIGHT_TABLE = {
    (Direction.LEFT, "<", None): (0, -1),
    (Direction.RIGHT, "<", None): (0, +1),
    (Direction.LEFT, "s-1", None): (+1, -1),
    (Direction.RIGHT, "s-1", None): (0, +1),
    (Direction.LEFT, "s", None): (+1, 0),
    (Direction.RIGHT, "s", "LL"): (-1, 0),
    (Direction.RIGHT, "s", "LR"): (-1, +1),
    (Direction.LEFT, ">", None): (0, 0),
    (Direction.RIGHT, ">", None): (0, 0),
}
_LEFT_TABLE = {
    (Direction.LEFT, "<", None): (0, +1),
    (Direction.RIGHT, "<", None): (0, -1),
    (Direction.LEFT, "s-1", None): (0, +1),
    (Direction.RIGHT, "s-1", None): (+1, -1),
    (Direction.LEFT, "s", "RL"): (-1, +1),
    (Direction.LEFT, "s", "RR"): (-1, 0),
    (Direction.RIGHT, "s", None): (+1, 0),
    (Direction.LEFT, ">", None): (0, 0),
    (Direction.RIGHT, ">", None): (0, 0),
}


def _relation(k: int, s: int) -> str:
    if k < s - 1:
        return "<"
    if k == s - 1:
        return "s-1"
    if k == s:
        return "s"
    return ">"


def _flip(label: str) -> str:
    return "R" if label == "L" else "L"


def predict_g_transition(g: GTrace, step: RotationStep) -> GTrace:
    """Predict G(c) after one spine rotation, using only the published rules.

    Raises :class:`UnspecifiedCase` where neither the two tables nor the two
    root rules say what happens.
    """
    if g.r == 0:
        raise UnspecifiedCase("exposed caret lies on the spine")
    k, d = step.location.level, step.direction

    if k == 0:
        if g.s == 1:
            flips = (g.arm is Arm.RIGHT and d is Direction.LEFT) or (g.arm is Arm.LEFT and d is Direction.RIGHT)
            if not flips:
                raise UnspecifiedCase("root rotation with s = 1 that keeps the ancestor's arm")
            other = Arm.LEFT if g.arm is Arm.RIGHT else Arm.RIGHT
            return GTrace(g.r, 1, other, _flip(g.labels[0]) + g.labels[1:])
        toward_root = Direction.LEFT if g.arm is Arm.RIGHT else Direction.RIGHT
        return GTrace(g.r, g.s - 1 if d is toward_root else g.s + 1, g.arm, g.labels)

    if step.location.arm is not g.arm:
        return g

    if len(g.labels) < 2:
        raise UnspecifiedCase("tables need two labels on the path (r >= 2)")
    table = _RIGHT_TABLE if g.arm is Arm.RIGHT else _LEFT_TABLE
    rel = _relation(k, g.s)
    key = (d, rel, g.labels[:2])
    if key not in table:
        key = (d, rel, None)
    dr, ds = table[key]

    a = g.labels[0]
    if dr == +1:
        labels = a + (a if rel == "s" else _flip(a)) + g.labels[1:]
    elif dr == -1:
        labels = a + g.labels[2:]
    else:
        labels = g.labels
    return GTrace(g.r + dr, g.s + ds, g.arm, labels)


@dataclass
class TableReport:
    n_max: int
    checked: int = 0
    matched: int = 0
    mismatches: list = field(default_factory=list)
    uncovered: Counter = field(default_factory=Counter)

    @property
    def passed(self) -> bool:
        return self.checked > 0 and not self.mismatches

    @property
    def conformance(self) -> float:
        return self.matched / self.checked if self.checked else 0.0


def g_table_conformance(n_max: int, n_min: int = 1) -> TableReport:
    """Compare predicted and recomputed G(c) for every tree, exposed caret and spine rotation."""
    rep = TableReport(n_max)
    for n in range(n_min, n_max + 1):
        for t in enumerate_trees(n):
            pairs = sibling_pairs(t)
            steps = spine_steps(t)
            for pair in pairs:
                g = g_trace(t, pair)
                for step in steps:
                    try:
                        predicted = predict_g_transition(g, step)
                    except UnspecifiedCase as exc:
                        rep.uncovered[str(exc)] += 1
                        continue
                    rep.checked += 1
                    u = rotate(t, step)
                    actual = g_trace(u, pair) if has_sibling_pair(u, pair) else None
                    if actual == predicted:
                        rep.matched += 1
                    else:
                        rep.mismatches.append((render_tree(t), tuple(pair), str(step), g, predicted, actual))
    return rep
