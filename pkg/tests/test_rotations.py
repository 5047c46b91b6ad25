import pytest
from hypothesis import given, strategies as st

from rotdist import (
    Arm,
    CaretLocation,
    Direction,
    Generator,
    GTrace,
    NotApplicable,
    NotApplicableAtStep,
    ParseError,
    RotationStep,
    UnspecifiedCase,
    Word,
    all_right,
    apply_word,
    enumerate_trees,
    g_table_conformance,
    g_trace,
    left_comb,
    parse_tree,
    predict_g_transition,
    render_tree,
    rotate,
    sibling_effect,
)
from rotdist.rotations import spine_steps, step_of_generator, word_of_steps

from test_trees import trees

R0L = RotationStep(CaretLocation(Arm.RIGHT, 0), Direction.LEFT)
R0R = RotationStep(CaretLocation(Arm.RIGHT, 0), Direction.RIGHT)


def test_word_parse_and_print():
    w = Word.parse("x0 x2^-1 y1^3")
    assert len(w) == 5
    assert str(w) == "x0 x2^-1 y1^3"
    assert str(Word.parse("x1 x1 x1^-1")) == "x1^2 x1^-1"
    assert Word.parse("") == Word(())
    assert str(Word.of(("x", 3, 2), ("x", 0, -1))) == "x3^2 x0^-1"
    assert str(Word.parse("x0 x1^-1").inverse()) == "x1 x0^-1"
    with pytest.raises(ParseError):
        Word.parse("x0 z1")
    with pytest.raises(ParseError):
        Word.parse("y0")
    with pytest.raises(ParseError):
        Word.parse("x0^0")


def test_rotation_directions():
    # left rotation: (A (B C)) -> ((A B) C)
    assert rotate(all_right(2), R0L) == left_comb(2)
    assert rotate(left_comb(2), R0R) == all_right(2)
    with pytest.raises(NotApplicable):
        rotate(all_right(2), R0R)


def test_generator_meaning():
    # x0 turns the first tree of its pair into the second by a left rotation at the root
    assert apply_word(parse_tree("(* (* *))"), "x0") == parse_tree("((* *) *)")
    assert apply_word(parse_tree("(* (* (* *)))"), "x1") == parse_tree("(* ((* *) *))")
    # y1 is a right rotation at the left child of the root
    assert apply_word(parse_tree("(((* *) *) *)"), "y1") == parse_tree("((* (* *)) *)")


def test_words_run_right_to_left():
    t = all_right(3)
    assert apply_word(t, "x0 x1") == apply_word(apply_word(t, "x1"), "x0")
    with pytest.raises(NotApplicableAtStep) as info:
        apply_word(all_right(2), "x0 x0^-1")
    assert info.value.index == 1


@given(trees(max_carets=7))
def test_y_generators_are_conjugates(t):
    # y_n acts as x0^n x1 x0^-(n+1) wherever both are applicable
    for n in (1, 2):
        w = Word.parse(f"y{n}")
        try:
            direct = apply_word(t, w)
        except NotApplicableAtStep:
            continue
        try:
            assert apply_word(t, w.expand_y()) == direct
        except NotApplicableAtStep:
            pass


def test_spine_steps_and_scripts():
    t = parse_tree("((* *) (* (* *)))")
    steps = spine_steps(t, [0, 1], [1])
    assert [str(s) for s in steps] == [
        "LeftRotation at RightArm:0", "RightRotation at RightArm:0", "LeftRotation at RightArm:1"]
    w = word_of_steps(steps[:2])
    assert str(w) == "x0^-1 x0"


def test_sibling_effect():
    t = parse_tree("((* *) (* *))")
    eff = sibling_effect(t, R0L)
    assert eff.created == [] and eff.destroyed == [[2, 3]]
    eff = sibling_effect(parse_tree("((* *) *)"), R0R)
    assert eff.created == [[1, 2]] and eff.destroyed == [[0, 1]]


def test_predict_matches_examples():
    t = parse_tree("(* (* ((* (* *)) (* *))))")
    g = g_trace(t, (3, 4))
    step = RotationStep(CaretLocation(Arm.RIGHT, 2), Direction.RIGHT)
    after = predict_g_transition(g, step)
    assert after == g_trace(rotate(t, step), (3, 4))
    assert after.rs == (1, 3)


def test_unspecified_cases_raise():
    with pytest.raises(UnspecifiedCase):
        predict_g_transition(GTrace(0, 2, Arm.RIGHT, ""), R0L)
    with pytest.raises(UnspecifiedCase):
        predict_g_transition(GTrace(1, 2, Arm.RIGHT, "L"), RotationStep(CaretLocation(Arm.RIGHT, 2), Direction.RIGHT))


def test_table_conformance_exhaustive_small():
    rep = g_table_conformance(6)
    assert rep.checked > 0 and rep.mismatches == []
    assert rep.conformance == 1.0
    assert sum(rep.uncovered.values()) > 0


def test_every_generator_step_roundtrips():
    for t in enumerate_trees(5):
        for k in range(4):
            for sign in (1, -1):
                g = Generator("x", k, sign)
                try:
                    u = apply_word(t, Word((g,)))
                except NotApplicableAtStep:
                    continue
                assert apply_word(u, Word((g.inverse,))) == t
                assert render_tree(u) != render_tree(t)
    assert step_of_generator(Generator("y", 2, -1)) == RotationStep(CaretLocation(Arm.LEFT, 2), Direction.LEFT)
