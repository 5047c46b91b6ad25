import itertools

import pytest
from hypothesis import given, settings, strategies as st

from rotdist import (
    NormalForm,
    SizeMismatch,
    TreePair,
    Word,
    all_right,
    apply_word,
    enumerate_trees,
    multiply,
    pair_of_word,
    partial_reduce,
    partially_reduce_pair,
    reduce_pair,
    render_tree,
    seminormal_form,
    to_unique_normal_form,
    word_length_infinite,
    word_of_pair,
)
from rotdist.groupf import generator_pair, identity_pair, pair_of_element, shift
from rotdist.rotations import Generator

from oracles import compose_word, pair_map

letters = st.tuples(st.integers(0, 5), st.sampled_from([1, -1]))
words = st.lists(letters, max_size=8)


def as_word(ls) -> Word:
    return Word(tuple(Generator("x", k, s) for k, s in ls))


def element(w: Word):
    return compose_word([(g.index, g.sign) for g in w])


def test_named_normal_forms():
    assert str(to_unique_normal_form("x0 x2 x0^-1")) == "x1"
    assert str(partial_reduce("x0 x2 x0^-1")) == "x0 x2 x0^-1"
    assert str(partial_reduce("x2 x4 x2^-1")) == "x3"
    assert str(to_unique_normal_form("x1^-1 x3 x1")) == "x4"
    assert str(to_unique_normal_form("x0 x0^-1")) == ""
    assert str(to_unique_normal_form("x2 x0")) == "x0 x3"
    assert str(seminormal_form("x0^-1 x2")) == "x3 x0^-1"
    assert word_length_infinite("x0 x2 x0^-1") == 1


def test_normal_form_flags():
    nf = NormalForm.from_word(Word.parse("x0 x2 x0^-1"))
    assert not nf.unique and nf.partially_reduced
    nf = NormalForm.from_word(Word.parse("x1 x2 x1^-1"))
    assert nf.unique
    with pytest.raises(ValueError):
        NormalForm.from_word(Word.parse("x2 x1"))


@settings(max_examples=300, deadline=None)
@given(words)
def test_normal_form_is_the_same_element(ls):
    w = as_word(ls)
    nf = to_unique_normal_form(w)
    assert element(nf.to_word()) == element(w)
    assert nf.unique
    assert element(partial_reduce(w).to_word()) == element(w)


def test_normal_form_is_unique_on_short_words():
    seen = {}
    for ls in itertools.chain.from_iterable(
            itertools.product([(k, s) for k in range(3) for s in (1, -1)], repeat=r) for r in range(4)):
        w = as_word(ls)
        f = element(w)
        nf = str(to_unique_normal_form(w))
        assert seen.setdefault(f, nf) == nf


@settings(max_examples=200, deadline=None)
@given(words)
def test_pair_of_word_is_the_element(ls):
    w = as_word(ls)
    p = pair_of_element(w)
    assert p.reduced or p.n == 1  # the identity keeps its single caret
    assert pair_map(p.t1, p.t2) == element(w)


def test_specific_pairs():
    p = pair_of_word("x0")
    assert (render_tree(p.t1), render_tree(p.t2)) == ("(* (* *))", "((* *) *)")
    p = pair_of_word("x0 x2 x0^-1", reduce=False)
    assert (render_tree(p.t1), render_tree(p.t2)) == ("((* *) (* (* *)))", "((* *) ((* *) *))")
    r = reduce_pair(p)
    assert (render_tree(r.t1), render_tree(r.t2)) == ("(* (* (* *)))", "(* ((* *) *))")
    assert partially_reduce_pair(p) == p
    assert pair_of_word("") == identity_pair()


def test_roundtrip_on_reduced_pairs():
    for n in range(1, 6):
        ts = enumerate_trees(n)
        for a in ts:
            for b in ts:
                p = TreePair(a, b)
                nf = word_of_pair(p)
                assert apply_word(a, nf.to_word()) == b
                if p.reduced:
                    assert pair_of_word(nf) == p


def test_reduction_preserves_element():
    for n in range(1, 6):
        for a in enumerate_trees(n):
            for b in enumerate_trees(n):
                p = TreePair(a, b)
                r = reduce_pair(p)
                assert pair_map(r.t1, r.t2) == pair_map(a, b)


def test_multiply_matches_concatenation():
    ws = ["x0", "x1", "x0^-1", "x2 x1^-1", "x1 x3 x0^-2", "x0 x0 x1"]
    for u in ws:
        for v in ws:
            prod = reduce_pair(multiply(pair_of_element(u), pair_of_element(v)))
            assert prod == pair_of_element(Word.parse(u) + Word.parse(v))
    assert str(word_of_pair(reduce_pair(multiply(pair_of_word("x0"), pair_of_word("x1"))))) == "x0 x1"


def test_generator_pairs():
    p = generator_pair(Generator("y", 1))
    assert (render_tree(p.t1), render_tree(p.t2)) == ("(((* *) *) *)", "((* (* *)) *)")
    assert generator_pair(Generator("x", 0, -1)) == pair_of_word("x0").swap()


def test_shift_conjugates_by_x0():
    # on words avoiding x0, shifting indices is conjugation by x0
    w = Word.parse("x1 x2^-1 x3")
    lhs = to_unique_normal_form(Word.parse("x0^-1") + w + Word.parse("x0"))
    assert lhs == to_unique_normal_form(shift(w))


def test_size_mismatch():
    with pytest.raises(SizeMismatch):
        TreePair(all_right(2), all_right(3))


def test_word_length_property_small():
    assert word_length_infinite(Word.parse("x0 x1 x2 x1^-1 x0^-2")) == 6
    assert word_length_infinite("x3 x0^-1 x0") == 1
    assert word_length_infinite("") == 0
