"""Trees, leaf exponents and the normal forms they encode.

A pair of trees with the same number of carets is an element of Thompson's
group F.  Reading leaf exponents off both trees gives a word; reducing that
word gives the unique normal form.
"""

from rotdist import (
    leaf_exponents,
    pair_of_word,
    parse_tree,
    partial_reduce,
    render_tree,
    to_unique_normal_form,
    word_length_infinite,
    word_of_pair,
)

t = parse_tree("((* (* *)) ((* *) *))")
print("tree          ", render_tree(t))
print("leaf exponents", leaf_exponents(t))

# The word x0 x2 x0^-1 is not reduced: its x0 pair can be cancelled,
# shifting x2 down to x1.
w = "x0 x2 x0^-1"
print()
print("word           ", w)
print("unique form    ", to_unique_normal_form(w))
print("partial form   ", partial_reduce(w), "(x0 pairs are kept)")
print("length over all x_i:", word_length_infinite(w))

# The same element drawn as an unreduced 4-caret pair and as its reduced 3-caret pair.
big = pair_of_word(w, reduce=False)
small = pair_of_word(w)
for label, p in (("unreduced", big), ("reduced", small)):
    print(f"{label:>10}: {render_tree(p.t1)}  ->  {render_tree(p.t2)}   word {word_of_pair(p)}")
