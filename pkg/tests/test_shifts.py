import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kshift import builtin
from kshift.automata import EPWord
from kshift.errors import LengthMismatch
from kshift.markov import alphabet, is_admissible, markov_forbidden_patterns, transition_matrix
from kshift.reconstruction import psi_window
from kshift.shifts import (
    Pattern,
    WindowConfig,
    box_points,
    distance_windows,
    distance_words,
    excluded_by,
    occurs,
    restrict_diagonal,
)

LETTERS = "abc"


@st.composite
def windows(draw, rank=None, horizon=None):
    k = draw(st.integers(1, 3)) if rank is None else rank
    p = draw(st.integers(0, 3)) if horizon is None else horizon
    cells = draw(st.lists(st.sampled_from(LETTERS), min_size=(p + 1) ** k, max_size=(p + 1) ** k))
    return WindowConfig(k, p, tuple(cells))


@st.composite
def window_pairs(draw):
    x = draw(windows())
    y = draw(windows(rank=x.rank, horizon=x.horizon))
    return x, y


def test_box_points_lexicographic():
    assert box_points(2, 1) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert len(box_points(3, 2)) == 27


def test_window_indexing_and_translate():
    w = WindowConfig.from_function(2, 2, lambda t: 10 * t[0] + t[1])
    assert w[(2, 1)] == 21
    moved = w.translate((1, 0))
    assert moved.horizon == 1 and moved[(0, 0)] == 10 and moved[(1, 1)] == 21
    assert w.restrict(0).cells == (0,)
    with pytest.raises(KeyError):
        w[(3, 0)]


def test_single_cell_pattern():
    w = WindowConfig(2, 1, ("a", "b", "c", "a"))
    assert occurs(Pattern(((0, 0),), ("c",)), w)
    assert not occurs(Pattern(((0, 0),), ("z",)), w)


def test_self_occurrence():
    w = WindowConfig(2, 1, ("a", "b", "c", "a"))
    assert occurs(Pattern(tuple(t for t, _ in w.items()), w.cells), w)


def test_diagonal_pattern_absent_from_constant_window():
    g = builtin("flip2")
    ax, by = alphabet(g).by_name("a·x"), alphabet(g).by_name("b·y")
    w = WindowConfig.from_function(2, 3, lambda t: ax)
    assert not occurs(Pattern(((0, 0), (1, 1)), (ax, by)), w)


def test_excluded_by_basics():
    w = WindowConfig(1, 2, ("a", "b", "c"))
    assert excluded_by([], w)
    assert not excluded_by([Pattern(((0,),), ("b",))], w)
    assert excluded_by([Pattern(((0,),), ("z",))], w)


def test_markov_patterns_reject_bad_diagonal():
    g = builtin("cycle")
    a, b = alphabet(g).letters
    assert not excluded_by(markov_forbidden_patterns(transition_matrix(g)), WindowConfig(1, 2, (a, b, b)))
    assert excluded_by(markov_forbidden_patterns(transition_matrix(g)), WindowConfig(1, 2, (a, b, a)))


@pytest.mark.parametrize("name", ["cycle", "two_letter"])
def test_forbidden_pattern_equivalence_one_graphs(name):
    g = builtin(name)
    patterns = markov_forbidden_patterns(transition_matrix(g))
    letters = alphabet(g).letters
    for m in range(4):
        for w in itertools.product(letters, repeat=m + 1):
            assert is_admissible(g, w) == excluded_by(patterns, WindowConfig(1, m, w))


def test_forbidden_pattern_equivalence_on_diagonal_windows():
    # rank-2 windows built on a two-vertex product: only the diagonal cells
    # carry the word, off-diagonal cells hold a filler no pattern mentions
    from kshift.library import product_kgraph
    cyc = builtin("cycle")
    g = product_kgraph(cyc, cyc)
    patterns = markov_forbidden_patterns(transition_matrix(g))
    letters = alphabet(g).letters
    for m in range(3):
        for w in itertools.product(letters, repeat=m + 1):
            window = WindowConfig.from_function(2, m, lambda t: w[t[0]] if t[0] == t[1] else None)
            assert is_admissible(g, w) == excluded_by(patterns, window)


def test_restrict_diagonal_examples():
    assert restrict_diagonal(WindowConfig.from_function(3, 2, lambda t: "s")) == ("s", "s", "s")
    assert restrict_diagonal(WindowConfig(2, 0, ("q",))) == ("q",)
    g = builtin("flip2")
    ax = alphabet(g).by_name("a·x")
    assert restrict_diagonal(psi_window(g, EPWord((), (ax,)), 2)) == (ax, ax, ax)


def test_distance_words_examples():
    assert distance_words("abcd", "abcd") == 0
    assert distance_words("abcd", "xbcd") == 1
    assert distance_words("abcde", "abcdz") == Fraction(1, 8)
    with pytest.raises(LengthMismatch):
        distance_words("ab", "abc")


def test_distance_windows_examples():
    x = WindowConfig.from_function(2, 2, lambda t: "a")
    assert distance_windows(x, x) == 0
    assert distance_windows(x, x.replace((2, 0), "b")) == Fraction(1, 2)
    assert distance_windows(x, x.replace((0, 0), "b")) == 1
    with pytest.raises(LengthMismatch):
        distance_windows(x, x.restrict(1))


@settings(max_examples=200, deadline=None)
@given(window_pairs())
def test_contractivity(pair):
    x, y = pair
    assert distance_words(restrict_diagonal(x), restrict_diagonal(y)) <= distance_windows(x, y)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_metric_axioms(data):
    x = data.draw(windows())
    y = data.draw(windows(rank=x.rank, horizon=x.horizon))
    z = data.draw(windows(rank=x.rank, horizon=x.horizon))
    assert distance_windows(x, y) == distance_windows(y, x)
    assert (distance_windows(x, y) == 0) == (x == y)
    assert distance_windows(x, z) <= max(distance_windows(x, y), distance_windows(y, z))
    u, v, w = (restrict_diagonal(c) for c in (x, y, z))
    assert distance_words(u, w) <= max(distance_words(u, v), distance_words(v, w))


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_pattern_heredity(data):
    w = data.draw(windows())
    p = tuple(data.draw(st.integers(0, w.horizon)) for _ in range(w.rank))
    sub = w.translate(p)
    size = data.draw(st.integers(1, len(sub.cells)))
    picks = data.draw(st.lists(st.sampled_from(list(sub.items())), min_size=1, max_size=size, unique=True))
    lo = [min(t[i] for t, _ in picks) for i in range(w.rank)]
    domain = tuple(tuple(a - b for a, b in zip(t, lo)) for t, _ in picks)
    pattern = Pattern(domain, tuple(v for _, v in picks))
    assert occurs(pattern, sub)
    assert occurs(pattern, w)
