import itertools
import random

import pytest

from kshift import builtin
from kshift.automata import EPWord, alpha, phi_code
from kshift.errors import InadmissibleWord, WordTooShort
from kshift.groupoid import ep_words
from kshift.kgraph import box, compose_all
from kshift.markov import alphabet, language
from kshift.reconstruction import (
    psi_value,
    psi_window,
    reconstruct_segment,
    reconstruct_window,
    verify_covariance,
    window_membership,
)
from kshift.shifts import WindowConfig, box_points, restrict_diagonal

from oracles import brute_split


@pytest.fixture(scope="module")
def flip2():
    return builtin("flip2")


def letter(g, name):
    return alphabet(g).by_name(name)


def const(g, name):
    return EPWord((), (letter(g, name),))


def test_segment_examples(flip2):
    ax, bx = letter(flip2, "a·x"), letter(flip2, "b·x")
    y = (ax, ax)
    assert reconstruct_segment(flip2, y, (1, 0), (2, 1)).value == bx
    assert reconstruct_segment(flip2, y, (1, 0), (2, 1)).value == phi_code(flip2, 1)((ax, ax))
    assert reconstruct_segment(flip2, y, (1, 1), (1, 1)).value == flip2.identity("v")
    word = tuple(alphabet(flip2).letters)
    for j in range(len(word)):
        assert reconstruct_segment(flip2, word, (j, j), (j + 1, j + 1)).value == word[j]


def test_segment_identity_at_vertex():
    g = builtin("cycle")
    a, b = alphabet(g).letters
    seg = reconstruct_segment(g, (a, b), (1,), (1,))
    assert seg.value == g.identity(a.source)


def test_segment_errors(flip2):
    ax = letter(flip2, "a·x")
    with pytest.raises(WordTooShort):
        reconstruct_segment(flip2, (ax,), (0, 0), (2, 2))
    cyc = builtin("cycle")
    a, _ = alphabet(cyc).letters
    with pytest.raises(InadmissibleWord):
        reconstruct_segment(cyc, (a, a), (0,), (2,))
    with pytest.raises(ValueError):
        reconstruct_segment(flip2, (ax, ax), (1, 1), (0, 1))


@pytest.mark.parametrize("name", ["flip2", "prod3", "cycle"])
def test_segment_matches_brute_force(name):
    g = builtin(name)
    for y in language(g, 1):
        top = tuple(2 for _ in range(g.rank))
        word = compose_all(y).word
        for n in box(top):
            for m in box(n):
                seg = reconstruct_segment(g, y, m, n)
                rest = tuple(2 - c for c in n)
                mid = tuple(b - a for a, b in zip(m, n))
                hits = brute_split(g, word, m, mid, rest)
                assert len(hits) == 1 and seg.value.word == hits[0][1]


@pytest.mark.parametrize("name", ["flip2", "prod3"])
def test_j_independence(name):
    g = builtin(name)
    rng = random.Random(3)
    letters = alphabet(g).letters
    for _ in range(40):
        y = tuple(rng.choice(letters) for _ in range(5))
        n = tuple(rng.randint(0, 3) for _ in range(g.rank))
        m = tuple(rng.randint(0, c) for c in n)
        values = {reconstruct_segment(g, y, m, n, j).value for j in range(max(n), 6)}
        assert len(values) == 1


def test_psi_value_examples(flip2):
    y = EPWord((letter(flip2, "b·y"),), (letter(flip2, "a·x"), letter(flip2, "a·y")))
    assert psi_value(flip2, y, (0, 0)) == y[0]
    for j in range(4):
        assert psi_value(flip2, y, (j, j)) == y[j]
    assert psi_value(flip2, const(flip2, "a·x"), (1, 0)) == letter(flip2, "b·x")


def test_psi_window_examples(flip2):
    ax, bx = letter(flip2, "a·x"), letter(flip2, "b·x")
    w = psi_window(flip2, const(flip2, "a·x"), 1)
    assert dict(w.items()) == {(0, 0): ax, (1, 0): bx, (0, 1): bx, (1, 1): ax}
    assert psi_window(flip2, const(flip2, "a·y"), 0).cells == (letter(flip2, "a·y"),)
    d = builtin("delta2")
    wd = psi_window(d, EPWord((), tuple(alphabet(d).letters)), 3)
    assert len(set(wd.cells)) == 1


@pytest.mark.parametrize("name", ["flip2", "prod3", "cycle"])
def test_two_routes_agree(name):
    g = builtin(name)
    for y in ep_words(g, 2, 2):
        w = psi_window(g, y, 2)
        for n in box_points(g.rank, 2):
            assert reconstruct_segment(g, y, n, tuple(c + 1 for c in n)).value == w[n]
        assert reconstruct_window(g, y.prefix(3), 2) == w


@pytest.mark.parametrize("name", ["flip2", "prod3", "cycle", "two_letter"])
def test_round_trip(name):
    g = builtin(name)
    for y in ep_words(g, 2, 2):
        for p in range(4):
            assert restrict_diagonal(psi_window(g, y, p)) == y.prefix(p + 1)


def test_injectivity_shadow(flip2):
    words = language(flip2, 2)
    seen = {}
    for w in words:
        y = EPWord(w, (w[-1],))
        key = psi_window(flip2, y, 2)
        assert key not in seen
        seen[key] = w


@pytest.mark.parametrize("name", ["flip2", "prod3"])
def test_uniformity_shadow(name):
    g = builtin(name)
    k = g.rank
    rng = random.Random(11)
    letters = alphabet(g).letters
    for p in range(3):
        q = p * k + p
        for _ in range(15):
            head = tuple(rng.choice(letters) for _ in range(q + 1))
            tail1 = tuple(rng.choice(letters) for _ in range(3))
            tail2 = tuple(rng.choice(letters) for _ in range(3))
            y1 = EPWord(head + tail1, (rng.choice(letters),))
            y2 = EPWord(head + tail2, (rng.choice(letters),))
            assert psi_window(g, y1, p) == psi_window(g, y2, p)


def test_membership_examples(flip2):
    y = const(flip2, "a·x")
    w = psi_window(flip2, y, 2)
    assert window_membership(flip2, w)
    assert not window_membership(flip2, w.replace((1, 0), letter(flip2, "a·x")))
    for lam in alphabet(flip2).letters:
        assert window_membership(flip2, psi_window(flip2, EPWord((), (lam,)), 0))


def test_membership_rejects_foreign_letters(flip2):
    w = psi_window(flip2, const(flip2, "a·x"), 1)
    assert not window_membership(flip2, w.replace((0, 1), "junk"))


def test_membership_agrees_with_psi_exhaustively(flip2):
    # every rank-2 horizon-1 window over Σ: member iff it is Ψ of its diagonal
    letters = alphabet(flip2).letters
    members = 0
    for cells in itertools.product(letters, repeat=4):
        w = WindowConfig(2, 1, cells)
        diag = restrict_diagonal(w)
        expected = psi_window(flip2, EPWord(diag, (diag[-1],)), 1) == w
        assert window_membership(flip2, w) == expected
        members += expected
    assert members == 16


def test_covariance_examples(flip2):
    y = const(flip2, "a·x")
    assert verify_covariance(flip2, y, (0, 0), 2)
    assert verify_covariance(flip2, y, (0, 1), 1)
    z = EPWord(tuple(alphabet(flip2).letters), (letter(flip2, "b·y"),))
    assert alpha(flip2, z, (1, 1)) == z.shift(1)
    assert verify_covariance(flip2, z, (1, 1), 2)


@pytest.mark.parametrize("name", ["flip2", "prod3", "cycle"])
def test_covariance_on_small_points(name):
    g = builtin(name)
    for y in ep_words(g, 1, 2):
        for p in box_points(g.rank, 2):
            assert verify_covariance(g, y, p, 2)
