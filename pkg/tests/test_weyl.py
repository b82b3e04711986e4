import itertools
import random

import pytest
from hypothesis import given, strategies as st

from hecke_dft import weyl
from hecke_dft.weyl import IDENTITY, S0, S1, U, LatticeConfig, WeylElement


def w(r, letters):
    return weyl.from_word(r, letters)


def test_length_examples():
    assert weyl.length(IDENTITY) == 0
    assert weyl.length(S0) == 1
    assert weyl.length(w(1, [1, 0])) == 2


def test_multiply_examples():
    assert weyl.multiply(S1, S1) == IDENTITY
    assert weyl.multiply(U, weyl.multiply(S1, U)) == S0
    assert weyl.multiply(w(0, [0, 1]), w(0, [1, 0])) == IDENTITY
    assert S1 * S1 == IDENTITY


def test_invalid_encodings_rejected():
    with pytest.raises(ValueError):
        WeylElement(2, 0, None)
    with pytest.raises(ValueError):
        WeylElement(0, 0, 1)
    with pytest.raises(ValueError):
        WeylElement(0, 2, None)
    with pytest.raises(ValueError):
        WeylElement(0, -1, None)


@pytest.mark.parametrize("M,tau", [(1, 0.5), (0, 0.5), (2.5, 0.5), (3, 0.0), (3, 1.0), (3, -0.2), (True, 0.5)])
def test_lattice_config_validation(M, tau):
    with pytest.raises(ValueError):
        LatticeConfig(M, tau)


def test_act_examples():
    cfg = LatticeConfig(4, 0.5)
    assert weyl.act(S1, 5, cfg) == -5
    assert weyl.act(S0, 5, cfg) == 3
    assert weyl.act(IDENTITY, 7, cfg) == 7
    assert weyl.act(U, 1, 4) == 3


@pytest.mark.parametrize(
    "n,expected,length,folded",
    [(3, IDENTITY, 0, 3), (5, S0, 1, 3), (-3, S1, 1, 3), (9, w(0, [1, 0]), 2, 1)],
)
def test_chamber_map_examples(n, expected, length, folded):
    cfg = LatticeConfig(4, 0.5)
    wn = weyl.chamber_map(n, cfg)
    assert wn == expected
    assert weyl.length(wn) == length
    assert weyl.fold(n, 4) == folded


def test_eta_examples():
    assert weyl.eta(IDENTITY) == 1
    assert weyl.eta(S1) == -1
    assert weyl.eta(U) == 1


def test_bruhat_examples():
    assert weyl.bruhat_less(S1, w(0, [0, 1]))
    assert not weyl.bruhat_less(U, S1)
    assert not weyl.bruhat_less(w(0, [0, 1]), S1)


def test_enumerate_strictly_less():
    assert weyl.enumerate_strictly_less(S1) == [IDENTITY]
    assert weyl.enumerate_strictly_less(IDENTITY) == []
    # sorted by (length, last generator): s0 precedes s1
    assert weyl.enumerate_strictly_less(w(0, [0, 1])) == [IDENTITY, S0, S1]
    assert set(weyl.enumerate_strictly_less(w(0, [0, 1]))) == {IDENTITY, S1, S0}
    for el in weyl.elements_up_to(6):
        below = weyl.enumerate_strictly_less(el)
        expected = [v for v in weyl.elements_up_to(6) if weyl.bruhat_less(v, el)]
        assert sorted(below) == sorted(expected)
        assert len(below) == (2 * el.word_length - 1 if el.word_length else 0)


def test_reduced_word_examples():
    assert weyl.reduced_word(w(0, [0, 1])) == (0, (0, 1))
    assert weyl.reduced_word(U) == (1, ())
    assert weyl.reduced_word(weyl.chamber_map(9, 4)) == (0, (1, 0))


def test_reduced_word_round_trip():
    for el in weyl.elements_up_to(8):
        r, word = weyl.reduced_word(el)
        assert weyl.from_word(r, word) == el
        assert all(a != b for a, b in zip(word, word[1:]))
        if word:
            assert word[-1] == el.last_generator


def _shortest_by_search(n, M):
    for el in weyl.elements_up_to(4 * M, u_exponents=(0,)):
        if 0 <= weyl.act(el, n, M) <= M:
            return el.word_length
    raise AssertionError("no element found")


@pytest.mark.parametrize("M", range(2, 9))
def test_chamber_map_minimal(M):
    for n in range(-4 * M, 4 * M + 1):
        wn = weyl.chamber_map(n, M)
        assert 0 <= weyl.act(wn, n, M) <= M
        assert wn.u_exponent == 0
        assert wn.word_length == _shortest_by_search(n, M)


def test_eta_flips_under_u_conjugation():
    for el in weyl.elements_up_to(6):
        if el.word_length == 0:
            continue
        conj = weyl.multiply(U, weyl.multiply(el, U))
        assert weyl.eta(conj) == -weyl.eta(el)


@pytest.mark.parametrize("M", [2, 3, 4, 8])
def test_chamber_map_of_negative(M):
    for n in range(-4 * M, 4 * M + 1):
        if n == 0:
            continue
        assert weyl.chamber_map(-n, M) == weyl.multiply(weyl.chamber_map(n, M), S1)


def test_multiply_associative_sample():
    rng = random.Random(11)
    pool = list(weyl.elements_up_to(6))
    for _ in range(1000):
        a, b, c = (rng.choice(pool) for _ in range(3))
        assert weyl.multiply(weyl.multiply(a, b), c) == weyl.multiply(a, weyl.multiply(b, c))


def test_inverse():
    for el in weyl.elements_up_to(6):
        assert weyl.multiply(el, weyl.inverse(el)) == IDENTITY
        assert weyl.multiply(weyl.inverse(el), el) == IDENTITY


def test_act_is_a_group_action():
    M = 5
    pool = list(weyl.elements_up_to(4))
    for a, b in itertools.product(pool, repeat=2):
        for n in (-7, 0, 3, 11):
            assert weyl.act(weyl.multiply(a, b), n, M) == weyl.act(a, weyl.act(b, n, M), M)


words = st.tuples(st.integers(0, 1), st.lists(st.integers(0, 1), max_size=12))


@given(words, words)
def test_from_word_matches_letterwise_product(x, y):
    def slow(r, letters):
        out = U if r else IDENTITY
        for i in letters:
            out = weyl.multiply(out, S0 if i == 0 else S1)
        return out

    assert weyl.from_word(*x) == slow(*x)
    assert weyl.multiply(weyl.from_word(*x), weyl.from_word(*y)) == weyl.multiply(slow(*x), slow(*y))


@given(st.integers(-500, 500), st.integers(2, 12))
def test_fold_lands_in_alcove(n, M):
    assert 0 <= weyl.fold(n, M) <= M
