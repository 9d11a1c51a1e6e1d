from math import factorial

import pytest

from gdperm import constructions as C
from gdperm.core import COLLIDING, STAR, Family, InputError, NaturalGraph, is_colliding, matching, path, star, verify_family

S = STAR


def test_star_small():
    assert C.construct_star(1).words == ((1, 2, S), (S, 1, 2), (2, S, 1))
    f = C.construct_star(2)
    assert f.words[0] == (1, 2, 3, S, S)
    for i, w in enumerate(f.words):
        assert w == f.words[0][len(w) - i:] + f.words[0][:len(w) - i]


@pytest.mark.parametrize("r", range(1, 7))
def test_star_valid(r):
    f = C.construct_star(r)
    assert len(f) == 2 * r + 1 and f.graph == star(r)
    assert verify_family(f).valid


def test_matching_small():
    assert C.construct_matching(1).words == ((1, 2, S), (2, S, 1), (S, 1, 2))
    f = C.construct_matching(2)
    assert len(f) == 9 and f.length == 6
    assert (1, 2, S, 3, 4, S) in f.words


@pytest.mark.parametrize("l", range(1, 7))
def test_matching_valid(l):
    f = C.construct_matching(l)
    assert len(f) == 3 ** l
    assert verify_family(f).valid


@pytest.mark.parametrize("n", range(1, 7))
def test_complete(n):
    f = C.construct_complete(n)
    assert len(f) == factorial(n + 1) // 2
    if n <= 5:
        assert verify_family(f).valid


def test_complete_two():
    assert C.construct_complete(2).words == ((1, 2, 3), (2, 3, 1), (3, 1, 2))


def test_odd_permutation_breaks_complete_family():
    f = C.construct_complete(3)
    odd = (2, 1, 3, 4)
    g = Family(f.words + (odd,), f.graph)
    assert not verify_family(g).valid


def test_p4_ten():
    f = C.construct_p4_ten()
    assert len(f) == 10 and len(set(f.words)) == 10
    assert verify_family(f).valid
    assert verify_family(Family(f.words, path(5), COLLIDING)).valid


def test_product():
    a = C.construct_star(1)
    b = C.shift_family(C.construct_star(1), 2)
    p = C.product_construction([a, b])
    assert len(p) == 9 and p.length == 6
    assert p.graph.edges == ((1, 2), (3, 4))
    assert verify_family(p).valid
    assert C.product_construction([a]) is a
    q = C.product_construction([C.construct_star(2), C.shift_family(C.construct_star(1), 3)])
    assert len(q) == 15 and verify_family(q).valid
    with pytest.raises(InputError, match="overlapping|shares"):
        C.product_construction([a, a])


def test_substitute_examples():
    x = (S, 1, 2, 4, 3)
    assert C.substitute(x, (5, 6, 7, 8, 9)) == (5, 1, 2, 4, 3, 6, 7, 8, 9)
    assert C.substitute((2, 1, 3), ()) == (2, 1, 3)
    with pytest.raises(InputError):
        C.substitute((S, 1), (1, 2))
    with pytest.raises(InputError):
        C.substitute((S, S, 1), (2,))


def test_substitute_preserves_collisions_both_ways():
    xs = [C.star_out(w, (1, 2, 3, 4)) for w in C.P4_TEN]
    ys = [C.shift_word(w, 4) for w in C.P4_TEN]
    # pairs differing in the x-part only
    for i in range(10):
        for j in range(i + 1, 10):
            assert is_colliding(C.substitute(xs[i], ys[0]), C.substitute(xs[j], ys[0]))
    # pairs differing in the y-part only
    for i in range(10):
        for j in range(i + 1, 10):
            assert is_colliding(C.substitute(xs[3], ys[i]), C.substitute(xs[3], ys[j]))


@pytest.mark.parametrize("n,size", [(5, 10), (6, 20), (7, 30), (8, 60), (9, 100), (10, 200), (13, 1000)])
def test_rho_recursion(n, size):
    f = C.rho_recursion_build(n)
    assert len(f) == size == C.expected_size("rho-recursion", n)
    assert all(sorted(w) == list(range(1, n + 1)) for w in f.words)
    assert verify_family(f).valid


def test_rho_recursion_base_is_p4_ten():
    assert C.rho_recursion_build(5).words == C.P4_TEN
    with pytest.raises(InputError):
        C.rho_recursion_build(4)


def test_parity_double():
    f = C.parity_double(C.construct_p4_ten(), 6)
    assert len(f) == 20
    assert verify_family(f).valid
    assert f.words[:2] == ((1, 2, 4, 3, 5, 6), (1, 2, 4, 3, 6, 5))


def test_parity_double_needs_shorter_path_difference():
    # {12, 21} collide only through {1,2}; the doubled words 132 and 312 would not collide
    f = Family(((1, 2), (2, 1)), path(2), COLLIDING)
    with pytest.raises(InputError, match="P_1-different"):
        C.parity_double(f, 3)
    assert not is_colliding((1, 3, 2), (3, 1, 2))


def test_parity_double_single_word_and_errors():
    f = C.parity_double(Family(((1,),), NaturalGraph([1])), 2)
    assert f.words == ((1, 2), (2, 1))
    with pytest.raises(InputError):
        C.parity_double(C.construct_p4_ten(), 7)


@pytest.mark.parametrize("n", range(1, 7))
def test_catalan(n):
    f = C.catalan_construction(n)
    assert len(f) == [1, 2, 5, 14, 42, 132][n - 1]
    assert f.order == tuple(range(1, n + 1))
    assert f.meta["anchor"] == f.meta["min_anchor"] == 2 ** (n - 1)
    assert verify_family(f).valid


def test_catalan_anchor():
    f = C.catalan_construction(3, anchor=6)
    assert len(f) == 5 and f.length == 6 + 3
    assert verify_family(f).valid
    assert all(w[5] != STAR for w in f.words)
    with pytest.raises(InputError, match="minimum is 4"):
        C.catalan_construction(3, anchor=3)


def test_edge_split():
    f = C.edge_split_transform(C.construct_star(1), (1, 2), 3, 4)
    assert len(f) == 3 and f.length == 6
    assert f.words[0] == (1, 2, S, 3, 4, S)
    assert f.graph.edges == ((3, 4),)
    assert verify_family(f).valid
    with pytest.raises(InputError):
        C.edge_split_transform(C.construct_star(1), (1, 2), 2, 4)


def test_edge_split_star_to_matching():
    f = C.edge_split_transform(C.construct_star(2), (1, 3), 4, 5)
    assert len(f) == 5
    assert sorted(f.graph.edges) == [(1, 2), (4, 5)]
    assert verify_family(f).valid


def test_fill_stars():
    assert C.fill_stars((S, 1, S)) == (2, 1, 3)
    with pytest.raises(InputError):
        C.fill_stars((5, S))


@pytest.mark.parametrize(
    "f,graph",
    [
        (C.construct_star(3), star(3)),
        (C.construct_matching(3), matching(3)),
        (C.construct_p4_ten(), C.p4_plus_k1()),
    ],
)
def test_filled_words_stay_valid(f, graph):
    filled = Family(tuple(C.fill_stars(w) for w in f.words), graph)
    assert verify_family(filled).valid
