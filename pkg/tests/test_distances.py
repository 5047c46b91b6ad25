import csv
import itertools

import networkx as nx
import numpy as np
import pytest

from rotdist import (
    GenSet,
    NotDefined,
    NotRightArmSet,
    ParseError,
    ResourceCap,
    SizeMismatch,
    all_right,
    apply_word,
    bfs_distance,
    check_upper_bounds,
    d_r_ordinary_diameter,
    d_ra,
    enumerate_trees,
    left_comb,
    pair_of_word,
    parse_tree,
    rotation_graph,
    rra_defined,
    witness_sequence,
)
from rotdist.distances import (
    RR,
    DistanceCache,
    check_definedness,
    graph_diameter,
    neighbours,
    polygon_symmetry,
    script_is_valid,
)

from oracles import full_rotation_nx, rotation_nx

X1_PAIR = pair_of_word("x1")
PRIMED = pair_of_word("x0 x2 x0^-1", reduce=False)
X02 = GenSet.parse("x0,x2")

# genset -> caret paths it may rotate at, for the independent oracle
ORACLE_PATHS = {
    "x0,x1": ["", "R"],
    "x0,x2": ["", "RR"],
    "x0,x3": ["", "RRR"],
    "x0,x1,y1": ["", "R", "L"],
    "x0,y2": ["", "LL"],
}


def test_genset_parse_and_format():
    S = GenSet.parse("x2,x0,y1")
    assert str(S) == "x0,x2,y1"
    assert S.first_level == 2
    assert not S.is_right_arm
    assert str(GenSet.parse("right-all")) == "right-all"
    assert str(GenSet.parse("all-nodes")) == "all-nodes"
    assert GenSet.parse("x0").first_level is None
    for bad in ("x1,x2", "x0,z3", "x0,y0", ""):
        with pytest.raises(ParseError):
            GenSet.parse(bad)


def test_named_bfs_examples():
    assert bfs_distance(left_comb(2), all_right(2), RR).distance == 1
    assert not bfs_distance(X1_PAIR.t1, X1_PAIR.t2, X02).defined
    res = bfs_distance(PRIMED.t1, PRIMED.t2, X02)
    assert res.defined and res.distance == 3
    assert script_is_valid(PRIMED.t1, PRIMED.t2, res.witness, X02)
    same = bfs_distance(all_right(4), all_right(4), RR)
    assert same.distance == 0 and len(same.witness) == 0


def test_rra_defined_examples():
    assert not rra_defined(X1_PAIR.t1, X1_PAIR.t2, X02)
    assert rra_defined(PRIMED.t1, PRIMED.t2, X02)
    for a in enumerate_trees(4):
        assert rra_defined(a, all_right(4), RR)
    with pytest.raises(NotRightArmSet):
        rra_defined(all_right(3), all_right(3), GenSet.parse("x0,y1"))
    with pytest.raises(SizeMismatch):
        rra_defined(all_right(3), all_right(4), RR)


@pytest.mark.parametrize("spec", sorted(ORACLE_PATHS))
def test_bfs_matches_independent_graph(spec):
    S = GenSet.parse(spec)
    for n in range(1, 6):
        g = rotation_nx(n, ORACLE_PATHS[spec])
        lengths = dict(nx.all_pairs_shortest_path_length(g))
        ours = rotation_graph(n, S)
        D = ours.distances()
        for i, a in enumerate(ours.trees):
            for j, b in enumerate(ours.trees):
                expected = lengths[a].get(b)
                got = None if np.isinf(D[i, j]) else int(D[i, j])
                assert got == expected


def test_single_query_bfs_agrees_with_graph():
    S = GenSet.parse("x0,x1,y1")
    g = rotation_graph(4, S)
    D = g.distances()
    for i, j in itertools.product(range(0, len(g), 3), range(0, len(g), 5)):
        res = bfs_distance(g.trees[i], g.trees[j], S)
        assert res.defined == bool(np.isfinite(D[i, j]))
        if res.defined:
            assert res.distance == D[i, j]
            assert len(res.witness) == res.distance
            assert apply_word(g.trees[i], res.witness) == g.trees[j]


@pytest.mark.parametrize("spec", ["x0,x1", "x0,x2", "x0,x1,y1", "right-all"])
def test_metric_axioms(spec):
    S = GenSet.parse(spec)
    for n in range(1, 6):
        D = rotation_graph(n, S).distances()
        assert np.array_equal(D, D.T)
        assert np.all(np.diag(D) == 0)
        # triangle inequality through every midpoint
        for k in range(len(D)):
            assert np.all(D <= D[:, [k]] + D[[k], :])


def test_monotonicity():
    chain = ["x0", "x0,x2", "x0,x1,x2", "x0,x1,x2,y1"]
    for n in range(1, 6):
        prev = None
        for spec in chain:
            D = rotation_graph(n, GenSet.parse(spec)).distances()
            if prev is not None:
                assert np.all(D <= prev)
            prev = D


def test_d_ra_is_normal_form_length():
    assert d_ra(parse_tree("((* *) *)"), parse_tree("(* (* *))")).distance == 1
    for n in range(1, 6):
        g = rotation_graph(n, GenSet.all_right_arm())
        D = g.distances()
        for i, a in enumerate(g.trees):
            for j, b in enumerate(g.trees):
                assert d_ra(a, b).distance == D[i, j]


@pytest.mark.parametrize("spec", ["x0,x1", "x0,x2", "x0,x3", "x0,x2,x5", "x0", "right-all"])
def test_witnesses_are_valid(spec):
    S = GenSet.parse(spec)
    for n in range(1, 6):
        g = rotation_graph(n, S)
        comp = g.components()
        for i, a in enumerate(g.trees):
            for j, b in enumerate(g.trees):
                if comp[i] != comp[j]:
                    with pytest.raises(NotDefined):
                        witness_sequence(a, b, S)
                    continue
                w = witness_sequence(a, b, S)
                assert script_is_valid(a, b, w, S)
                if spec == "right-all":
                    assert len(w) == d_ra(a, b).distance
                if a == b:
                    assert len(w) == 0


def test_witness_uses_right_part_of_spinal_sets():
    S = GenSet.parse("x0,x2,y1")
    w = witness_sequence(PRIMED.t1, PRIMED.t2, S)
    assert apply_word(PRIMED.t1, w) == PRIMED.t2
    assert all(g.family == "x" for g in w)


def test_witness_is_deterministic():
    a, b = enumerate_trees(6)[7], enumerate_trees(6)[101]
    first = bfs_distance(a, b, RR).witness
    rotation_graph.cache_clear()
    assert bfs_distance(a, b, RR).witness == first


def test_upper_bound_reports():
    rep = check_upper_bounds(3, RR)
    assert rep.maximum == 4 and rep.passed
    for n in (4, 5):
        rep = check_upper_bounds(n, X02)
        assert rep.passed and rep.maximum <= 4 * n - 8
    rep = check_upper_bounds(5, GenSet.all_right_arm())
    assert rep.maximum == 8 and rep.bound == 8


def test_definedness_reports():
    for spec in ("x0,x2", "x0,x3"):
        for n in range(1, 6):
            assert check_definedness(n, GenSet.parse(spec)).passed


def test_ordinary_diameter_small():
    assert d_r_ordinary_diameter(1) == 0
    assert d_r_ordinary_diameter(2) == 1
    assert d_r_ordinary_diameter(3) == 2
    for n in range(4, 8):
        assert d_r_ordinary_diameter(n) == nx.diameter(full_rotation_nx(n))


def test_polygon_symmetries_are_automorphisms():
    S = GenSet.all_nodes()
    for n in (3, 5):
        for t in enumerate_trees(n):
            for turn, reflect in [(1, False), (2, False), (0, True)]:
                image = polygon_symmetry(t, turn, reflect)
                before = {polygon_symmetry(u, turn, reflect) for _, u in neighbours(t, S)}
                after = {u for _, u in neighbours(image, S)}
                assert before == after
        assert polygon_symmetry(all_right(n), n + 2) == all_right(n)


def test_graph_diameter_plain():
    g = rotation_graph(6, GenSet.all_nodes())
    assert graph_diameter(g.matrix) == 7


def test_caps():
    with pytest.raises(ResourceCap):
        bfs_distance(all_right(13), left_comb(13), RR)
    with pytest.raises(ResourceCap):
        rotation_graph(6, RR, 5)


def test_distance_cache_roundtrip(tmp_path):
    cache = DistanceCache(str(tmp_path))
    cache.store(3, RR, {("(* (* (* *)))", "(((* *) *) *)"): 4})
    cache.store(3, X02, {("(* (* (* *)))", "(* ((* *) *))"): None})
    assert cache.lookup(3, RR, "(* (* (* *)))", "(((* *) *) *)") == (True, 4)
    assert cache.lookup(3, X02, "(* (* (* *)))", "(* ((* *) *))") == (True, None)
    assert cache.lookup(3, RR, "a", "b") == (False, None)
    files = sorted(p.name for p in tmp_path.iterdir())
    assert not any(f.endswith(".tmp") for f in files)
    with open(tmp_path / files[1], newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["n", "genset", "tree_a", "tree_b", "distance"]
    assert rows[1][-1] in ("4", "undefined")
