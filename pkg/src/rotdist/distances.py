"""Rotation distances: exact formulas, definedness, BFS oracles and bound checks."""

from __future__ import annotations

import csv
import enum
import logging
import os
import re
import tempfile
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from .errors import (
    InternalInvariantViolation,
    NotApplicableAtStep,
    NotDefined,
    NotRightArmSet,
    ParseError,
    ResourceCap,
    SizeMismatch,
)
from .groupf import NormalForm, TreePair, partial_reduce, reduce_pair, to_unique_normal_form, word_of_pair
from .rotations import (
    Direction,
    Generator,
    RotationStep,
    Word,
    apply_word,
    can_rotate_at,
    rotate_at,
    spine_steps,
    word_of_steps,
)
from .trees import (
    Arm,
    Tree,
    arm_length,
    caret_count,
    carets,
    enumerate_trees,
    has_sibling_pair,
    render_tree,
)

log = logging.getLogger(__name__)

BFS_CAP = 12
EXTENDED_CAP = 12


class Mode(enum.Enum):
    FINITE = "finite"
    ALL_RIGHT_ARM = "right-all"
    ALL_NODES = "all-nodes"


@dataclass(frozen=True)
class GenSet:
    """Permitted rotation locations.  Finite sets always contain the root (x0)."""

    right_levels: frozenset = frozenset({0})
    left_levels: frozenset = frozenset()
    mode: Mode = Mode.FINITE

    def __post_init__(self):
        object.__setattr__(self, "right_levels", frozenset(self.right_levels))
        object.__setattr__(self, "left_levels", frozenset(self.left_levels))
        if self.mode is Mode.FINITE:
            if 0 not in self.right_levels:
                raise ValueError("a finite generating set must contain x0")
            if any(k < 0 for k in self.right_levels) or any(k < 1 for k in self.left_levels):
                raise ValueError("levels out of range")

    @classmethod
    def finite(cls, right: Iterable[int] = (0,), left: Iterable[int] = ()) -> "GenSet":
        return cls(frozenset(right), frozenset(left), Mode.FINITE)

    @classmethod
    def all_right_arm(cls) -> "GenSet":
        return cls(frozenset(), frozenset(), Mode.ALL_RIGHT_ARM)

    @classmethod
    def all_nodes(cls) -> "GenSet":
        return cls(frozenset(), frozenset(), Mode.ALL_NODES)

    @classmethod
    def parse(cls, text: str) -> "GenSet":
        text = text.strip()
        if text == Mode.ALL_RIGHT_ARM.value:
            return cls.all_right_arm()
        if text == Mode.ALL_NODES.value:
            return cls.all_nodes()
        right, left = set(), set()
        pos = 0
        for tok in text.split(","):
            m = re.fullmatch(r"([xy])(\d+)", tok.strip())
            if m is None:
                raise ParseError(f"bad generator {tok!r}", pos)
            k = int(m.group(2))
            if m.group(1) == "x":
                right.add(k)
            elif k < 1:
                raise ParseError("y generators start at index 1", pos)
            else:
                left.add(k)
            pos += len(tok) + 1
        if 0 not in right:
            raise ParseError("generating set must include x0")
        return cls.finite(right, left)

    def __str__(self) -> str:
        if self.mode is not Mode.FINITE:
            return self.mode.value
        toks = [f"x{k}" for k in sorted(self.right_levels)] + [f"y{k}" for k in sorted(self.left_levels)]
        return ",".join(toks)

    @property
    def is_right_arm(self) -> bool:
        return self.mode is Mode.ALL_RIGHT_ARM or (self.mode is Mode.FINITE and not self.left_levels)

    @property
    def first_level(self) -> Optional[int]:
        """Smallest nonzero right-arm level (i_1), None when only the root is allowed."""
        rest = [k for k in self.right_levels if k > 0]
        return min(rest) if rest else None

    def allows(self, step: RotationStep) -> bool:
        if self.mode is Mode.ALL_NODES:
            return True
        if step.location.arm is Arm.RIGHT:
            return self.mode is Mode.ALL_RIGHT_ARM or step.location.level in self.right_levels
        return self.mode is Mode.FINITE and step.location.level in self.left_levels

    def upper_bound(self, n: int) -> Optional[int]:
        """Proven upper bound on the distance of defined pairs with n carets."""
        if self.mode is Mode.ALL_RIGHT_ARM:
            return 2 * n - 2
        if self.mode is Mode.FINITE and n >= 3:
            return 4 * n - 8
        return None


RR = GenSet.finite((0, 1))


@dataclass
class DistanceResult:
    defined: bool
    distance: Optional[int] = None
    upper_bound: Optional[int] = None
    lower_bound: Optional[int] = None
    witness: Optional[Word] = None
    method: str = ""
    bound_sources: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.distance is not None:
            if self.lower_bound is not None and self.distance < self.lower_bound:
                raise InternalInvariantViolation("distance below its lower bound")
            if self.upper_bound is not None and self.distance > self.upper_bound:
                raise InternalInvariantViolation("distance above its upper bound")


def _check_sizes(t1: Tree, t2: Tree) -> int:
    n1, n2 = caret_count(t1), caret_count(t2)
    if n1 != n2:
        raise SizeMismatch(f"trees have {n1} and {n2} carets")
    if n1 < 1:
        raise SizeMismatch("distances need trees with at least one caret")
    return n1


# --- neighbours ----------------------------------------------------------------------------


def neighbours(t: Tree, S: GenSet) -> list:
    """``[(label, tree), ...]`` for every rotation S permits; labels are steps or caret paths."""
    out = []
    if S.mode is Mode.ALL_NODES:
        for path, _ in carets(t):
            for d in (Direction.LEFT, Direction.RIGHT):
                if can_rotate_at(t, path, d):
                    out.append(((path, d), rotate_at(t, path, d)))
        return out
    if S.mode is Mode.ALL_RIGHT_ARM:
        steps = spine_steps(t, range(arm_length(t, Arm.RIGHT)), ())
    else:
        steps = spine_steps(t, S.right_levels, S.left_levels)
    for s in steps:
        out.append((s, rotate_at(t, s.location.path, s.direction)))
    return out


# --- exact right-arm distance ----------------------------------------------------------------


def d_ra(t1: Tree, t2: Tree) -> DistanceResult:
    """Right-arm rotation distance: letter count of the pair's unique normal form."""
    n = _check_sizes(t1, t2)
    nf = word_of_pair(reduce_pair(TreePair(t1, t2)))
    w = nf.to_word()
    return DistanceResult(True, nf.length, upper_bound=2 * n - 2, lower_bound=nf.length,
                          witness=w, method="formula",
                          bound_sources={"upper": "2n-2 (Culik-Wood)", "lower": "normal-form length"})


def rra_defined(t1: Tree, t2: Tree, S: GenSet) -> bool:
    """Can ``t1`` reach ``t2`` with rotations at S's right-arm levels only?

    Decided on the partially reduced leaf-exponent word of the pair as given.
    """
    _check_sizes(t1, t2)
    if S.mode is not Mode.FINITE:
        return True
    if S.left_levels:
        raise NotRightArmSet("left-arm levels present; use bfs_distance for spinal sets")
    i1 = S.first_level
    nf = partial_reduce(word_of_pair(TreePair(t1, t2)))
    limit = i1 - 1 if i1 is not None else float("inf")
    return not any(1 <= t <= limit for t in nf.indices())


# --- BFS oracle -------------------------------------------------------------------------------


def _bfs_from(target: Tree, S: GenSet, stop: Optional[Tree] = None) -> dict:
    dist = {target: 0}
    queue = deque([target])
    while queue:
        u = queue.popleft()
        if stop is not None and stop in dist:
            break
        du = dist[u]
        for _, v in neighbours(u, S):
            if v not in dist:
                dist[v] = du + 1
                queue.append(v)
    return dist


def bfs_distance(t1: Tree, t2: Tree, S: GenSet, cap: int = BFS_CAP) -> DistanceResult:
    """Exact distance by breadth-first search of the rotation graph.

    The witness follows, from ``t1``, the neighbour one step closer to ``t2``
    that comes first in canonical text order.
    """
    n = _check_sizes(t1, t2)
    if n > cap:
        raise ResourceCap(f"BFS with {n} carets exceeds the cap of {cap}")
    dist = _bfs_from(t2, S, stop=t1)
    if t1 not in dist:
        return DistanceResult(False, method="bfs")
    steps = []
    u = t1
    while u != t2:
        best = None
        for label, v in neighbours(u, S):
            if dist.get(v) == dist[u] - 1:
                key = render_tree(v)
                if best is None or key < best[0]:
                    best = (key, label, v)
        steps.append(best[1])
        u = best[2]
    witness = None if S.mode is Mode.ALL_NODES else word_of_steps(steps)
    d = dist[t1]
    ub = S.upper_bound(n)
    return DistanceResult(True, d, upper_bound=ub if ub is not None and d <= ub else None,
                          witness=witness, method="bfs",
                          bound_sources={"upper": "theorem"} if ub is not None and d <= ub else {})


class RotationGraph:
    """The rotation graph on all n-caret trees for one generating set."""

    def __init__(self, n: int, S: GenSet, cap: int = BFS_CAP):
        if n > cap:
            raise ResourceCap(f"rotation graph with {n} carets exceeds the cap of {cap}")
        self.n = n
        self.genset = S
        self.trees = enumerate_trees(n, cap=max(cap, n))
        self.index = {t: i for i, t in enumerate(self.trees)}
        rows, cols = [], []
        for i, t in enumerate(self.trees):
            for _, v in neighbours(t, S):
                rows.append(i)
                cols.append(self.index[v])
        size = len(self.trees)
        data = np.ones(len(rows), dtype=np.int8)
        self.matrix = csr_matrix((data, (rows, cols)), shape=(size, size))
        log.debug("graph n=%d S=%s: %d vertices, %d arcs", n, S, size, len(rows))

    def __len__(self) -> int:
        return len(self.trees)

    def components(self) -> np.ndarray:
        return connected_components(self.matrix, directed=False)[1]

    def distances(self, sources=None) -> np.ndarray:
        """Hop distances (``inf`` when unreachable) from ``sources`` (default: all)."""
        return shortest_path(self.matrix, directed=False, unweighted=True, indices=sources)

    def iter_distance_rows(self, chunk: int = 512):
        for start in range(0, len(self), chunk):
            idx = np.arange(start, min(start + chunk, len(self)))
            yield idx, self.distances(idx)


@lru_cache(maxsize=32)
def rotation_graph(n: int, S: GenSet, cap: int = BFS_CAP) -> RotationGraph:
    return RotationGraph(n, S, cap)


# --- constructive witnesses ----------------------------------------------------------------------


def _realise(g: Generator, S: GenSet) -> list[Generator]:
    """Letters over S that act on trees exactly as ``g`` (a conjugate by root rotations)."""
    j = g.index
    if S.mode is Mode.ALL_RIGHT_ARM or j in S.right_levels:
        return [g]
    below = [k for k in S.right_levels if 0 < k < j]
    if not below:
        raise NotDefined(f"no permitted level below {j} to realise x{j}")
    i = max(below)
    shift = j - i
    # x_j = x0^-(j-i) x_i x0^(j-i)
    return [Generator("x", 0, -1)] * shift + [Generator("x", i, g.sign)] + [Generator("x", 0, 1)] * shift


def _forbidden(nf: NormalForm, S: GenSet) -> bool:
    if S.mode is not Mode.FINITE:
        return False
    i1 = S.first_level
    limit = i1 - 1 if i1 is not None else float("inf")
    return any(1 <= t <= limit for t in nf.indices())


def witness_sequence(t1: Tree, t2: Tree, S: GenSet) -> Word:
    """A valid (not necessarily shortest) rotation script from ``t1`` to ``t2`` over S's right arm.

    The pair's normal form (unique when it avoids forbidden letters, partially
    reduced otherwise) is executed letter by letter, each letter at a level S
    lacks being replaced by its conjugate through root rotations.
    """
    _check_sizes(t1, t2)
    if S.mode is Mode.ALL_NODES:
        raise ValueError("witness_sequence works with spine generating sets")
    S_right = S if S.mode is not Mode.FINITE else GenSet.finite(S.right_levels)
    word_nf = word_of_pair(TreePair(t1, t2))
    nf = to_unique_normal_form(word_nf)
    if _forbidden(nf, S_right):
        nf = partial_reduce(word_nf)
        if _forbidden(nf, S_right):
            raise NotDefined("restricted right-arm distance is not defined for this pair")
    letters: list[Generator] = []
    for g in nf.to_word():
        letters.extend(_realise(g, S_right))
    script = Word(tuple(letters))
    try:
        end = apply_word(t1, script)
    except NotApplicableAtStep as exc:
        raise InternalInvariantViolation(f"witness letter {exc.index} not applicable") from exc
    if end != t2:
        raise InternalInvariantViolation("witness does not reach the target tree")
    return script


def script_is_valid(t1: Tree, t2: Tree, script: Word, S: GenSet) -> bool:
    """True when every letter is permitted by S and the script carries t1 to t2."""
    from .rotations import step_of_generator

    if not all(S.allows(step_of_generator(g)) for g in script):
        return False
    try:
        return apply_word(t1, script) == t2
    except NotApplicableAtStep:
        return False


# --- certification of bounds -------------------------------------------------------------------------


@dataclass
class BoundReport:
    n: int
    genset: str
    bound: Optional[int]
    maximum: int
    defined_pairs: int
    total_pairs: int
    violations: int
    witness_pair: Optional[tuple] = None

    @property
    def passed(self) -> bool:
        return self.bound is not None and self.violations == 0


def max_distance(n: int, S: GenSet, cap: int = BFS_CAP) -> tuple[int, tuple, int]:
    """Largest finite BFS distance over all ordered pairs; also an extremal pair and the defined-pair count."""
    g = rotation_graph(n, S, cap)
    best, where, defined = -1, None, 0
    for idx, rows in g.iter_distance_rows():
        finite = np.isfinite(rows)
        defined += int(finite.sum())
        masked = np.where(finite, rows, -1)
        k = int(np.argmax(masked))
        r, c = divmod(k, masked.shape[1])
        if masked[r, c] > best:
            best, where = int(masked[r, c]), (g.trees[idx[r]], g.trees[c])
    return best, where, defined


def check_upper_bounds(n: int, S: GenSet, cap: int = BFS_CAP) -> BoundReport:
    bound = S.upper_bound(n)
    g = rotation_graph(n, S, cap)
    best, where, defined = max_distance(n, S, cap)
    violations = 0
    if bound is not None:
        for _, rows in g.iter_distance_rows():
            violations += int((np.isfinite(rows) & (rows > bound)).sum())
    pair = (render_tree(where[0]), render_tree(where[1])) if where else None
    return BoundReport(n, str(S), bound, best, defined, len(g) ** 2, violations, pair)


@dataclass
class FamilyReport:
    name: str
    params: dict
    n: int
    genset: str
    distance: Optional[int]
    lower: Optional[int]
    upper: Optional[int]

    @property
    def passed(self) -> bool:
        if self.distance is None:
            return False
        if self.lower is not None and self.distance < self.lower:
            return False
        return self.upper is None or self.distance <= self.upper


def check_lower_bound_family(inst, cap: int = BFS_CAP) -> FamilyReport:
    res = bfs_distance(inst.pair.t1, inst.pair.t2, inst.genset, cap=cap)
    if not res.defined:
        raise NotDefined(f"{inst.name} pair is not connected under {inst.genset}")
    return FamilyReport(inst.name, dict(inst.params), inst.n, str(inst.genset), res.distance,
                        inst.predicted_lower_bound, inst.predicted_upper_bound)


@dataclass
class PersistenceReport:
    start: str
    pair: tuple
    radius: int
    visited: int
    all_contain: bool
    first_split_depth: Optional[int]

    @property
    def passed(self) -> bool:
        return self.all_contain


def sibling_persistence(start: Tree, pair, S: GenSet, radius: int, cap: int = BFS_CAP) -> PersistenceReport:
    """Truncated BFS from ``start``: does every tree within ``radius`` keep ``pair``?"""
    n = caret_count(start)
    if n > cap:
        raise ResourceCap(f"BFS with {n} carets exceeds the cap of {cap}")
    dist = {start: 0}
    queue = deque([start])
    visited_within = 0
    first_split = None
    while queue:
        u = queue.popleft()
        du = dist[u]
        if not has_sibling_pair(u, pair):
            first_split = du
            break
        if du <= radius:
            visited_within += 1
        for _, v in neighbours(u, S):
            if v not in dist:
                dist[v] = du + 1
                queue.append(v)
    all_contain = first_split is None or first_split > radius
    return PersistenceReport(render_tree(start), tuple(pair), radius, visited_within, all_contain, first_split)


def check_sibling_persistence(inst, radius: int, side: str = "t1", cap: int = BFS_CAP) -> PersistenceReport:
    start = inst.pair.t1 if side == "t1" else inst.pair.t2
    pair = inst.buried_t1 if side == "t1" else inst.buried_t2
    return sibling_persistence(start, pair, inst.genset, radius, cap)


# --- ordinary rotation distance ------------------------------------------------------------------------


def graph_diameter(matrix, orbits: Optional[np.ndarray] = None,
                   progress: Callable[[int, int, int], None] | None = None) -> int:
    """Exact diameter of a connected undirected graph by eccentricity bounds.

    ``orbits`` labels vertices by automorphism orbit; eccentricity is constant on an
    orbit, so bounds are pooled per orbit.
    """
    size = matrix.shape[0]
    if orbits is None:
        orbits = np.arange(size)
    _, orbits = np.unique(orbits, return_inverse=True)
    k = int(orbits.max()) + 1
    big = np.iinfo(np.int64).max // 4
    lower = np.zeros(k, dtype=np.int64)
    upper = np.full(k, big, dtype=np.int64)
    rep = np.zeros(k, dtype=np.int64)
    rep[orbits[::-1]] = np.arange(size)[::-1]
    alive = np.ones(k, dtype=bool)
    best_lo, best_hi = 0, big
    pick_high = False
    rounds = 0
    while alive.any() and best_lo < best_hi:
        cand = np.flatnonzero(alive)
        o = cand[np.argmax(upper[cand])] if pick_high else cand[np.argmin(lower[cand])]
        pick_high = not pick_high
        d = shortest_path(matrix, directed=False, unweighted=True, indices=int(rep[o]))
        if not np.all(np.isfinite(d)):
            raise ValueError("graph is not connected")
        d = d.astype(np.int64)
        ecc = int(d.max())
        rounds += 1
        lo = np.maximum(d, ecc - d)
        hi = ecc + d
        np.maximum.at(lower, orbits, lo)
        np.minimum.at(upper, orbits, hi)
        lower[o] = upper[o] = ecc
        best_lo = max(best_lo, int(lower.max()))
        alive &= upper > best_lo
        alive[o] = False
        best_hi = max(best_lo, int(upper[alive].max())) if alive.any() else best_lo
        if progress:
            progress(rounds, best_lo, best_hi)
    return best_lo


def _polygon_edges(t: Tree) -> set:
    """Sides and diagonals of the polygon triangulation matching ``t``."""
    edges = set()

    def visit(node: Tree, first: int) -> int:
        if node is None:
            edges.add((first, first + 1))
            return first + 1
        mid = visit(node[0], first)
        last = visit(node[1], mid)
        edges.add((first, last))
        return last

    visit(t, 0)
    return edges


def _tree_of_edges(edges: set, a: int, b: int) -> Tree:
    if b - a == 1:
        return None
    for c in range(a + 1, b):
        if (a, c) in edges and (c, b) in edges:
            return (_tree_of_edges(edges, a, c), _tree_of_edges(edges, c, b))
    raise InternalInvariantViolation("edge set is not a triangulation")


def polygon_symmetry(t: Tree, turn: int = 0, reflect: bool = False) -> Tree:
    """Image of ``t`` under a dihedral symmetry of its (n+2)-gon; these act on every rotation graph
    with rotations at all nodes as automorphisms."""
    n = caret_count(t)
    size = n + 2

    def move(v: int) -> int:
        v = (-v) % size if reflect else v
        return (v + turn) % size

    edges = {tuple(sorted((move(a), move(b)))) for a, b in _polygon_edges(t)}
    return _tree_of_edges(edges, 0, size - 1)


def dihedral_orbits(trees: list, index: dict) -> np.ndarray:
    size = len(trees)
    rows = np.arange(size)
    turn = np.array([index[polygon_symmetry(t, 1)] for t in trees])
    flip = np.array([index[polygon_symmetry(t, 0, True)] for t in trees])
    m = csr_matrix((np.ones(2 * size), (np.concatenate([rows, rows]), np.concatenate([turn, flip]))),
                   shape=(size, size))
    return connected_components(m, directed=False)[1]


def d_r_ordinary_diameter(n: int, cap: int = EXTENDED_CAP) -> int:
    """Diameter of the full rotation graph (rotations at every node)."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return 0
    g = rotation_graph(n, GenSet.all_nodes(), cap)
    return graph_diameter(g.matrix, dihedral_orbits(g.trees, g.index))


# --- optional CSV cache ----------------------------------------------------------------------------------


class DistanceCache:
    """CSV distance tables, one file per (n, generating set)."""

    HEADER = ["n", "genset", "tree_a", "tree_b", "distance"]

    def __init__(self, directory: str):
        self.directory = directory
        os.makedirs(directory, exist_ok=True)

    def _path(self, n: int, S: GenSet) -> str:
        safe = re.sub(r"[^A-Za-z0-9-]", "_", str(S))
        return os.path.join(self.directory, f"dist_n{n}_{safe}.csv")

    def load(self, n: int, S: GenSet) -> dict:
        path = self._path(n, S)
        out = {}
        if not os.path.exists(path):
            return out
        with open(path, newline="") as fh:
            for row in csv.DictReader(fh):
                d = row["distance"]
                out[(row["tree_a"], row["tree_b"])] = None if d == "undefined" else int(d)
        return out

    def lookup(self, n: int, S: GenSet, a: str, b: str):
        """``(hit, distance)``; distance is None for a cached undefined pair."""
        table = self.load(n, S)
        if (a, b) in table:
            return True, table[(a, b)]
        return False, None

    def store(self, n: int, S: GenSet, rows: dict) -> None:
        table = self.load(n, S)
        table.update(rows)
        path = self._path(n, S)
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        with os.fdopen(fd, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(self.HEADER)
            for (a, b), d in sorted(table.items()):
                w.writerow([n, str(S), a, b, "undefined" if d is None else d])
        os.replace(tmp, path)


# --- definedness against reachability ------------------------------------------------------------------


@dataclass
class DefinednessReport:
    n: int
    genset: str
    pairs: int
    defined: int
    mismatches: int
    examples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.mismatches == 0


def check_definedness(n: int, S: GenSet, cap: int = BFS_CAP, keep: int = 5) -> DefinednessReport:
    """Compare ``rra_defined`` with reachability in the rotation graph over every ordered pair."""
    g = rotation_graph(n, S, cap)
    comp = g.components()
    defined = mismatches = 0
    examples = []
    for i, a in enumerate(g.trees):
        for j, b in enumerate(g.trees):
            claim = rra_defined(a, b, S)
            defined += claim
            if claim != (comp[i] == comp[j]):
                mismatches += 1
                if len(examples) < keep:
                    examples.append((render_tree(a), render_tree(b), claim))
    return DefinednessReport(n, str(S), len(g) ** 2, defined, mismatches, examples)
