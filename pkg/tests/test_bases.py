import itertools

import pytest

from fzeta import (
    G1,
    IterInt,
    ONE,
    Word,
    XI2,
    XI3SQ,
    XI4,
    ZERO,
    broadhurst_basis,
    broadhurst_words,
    deligne4_basis,
    deligne4_words,
    f6,
    generator_count,
    log3_free_class,
    lyndon_fg_words,
    psi0,
    psi0_order_check,
)
from fzeta.bases import Psi0DomainError
from fzeta.words import ORDER_X6, is_lyndon


def brute_broadhurst_words(n):
    """Independent oracle: filter + rotation test over all 3^n words."""
    letters = [ZERO, XI3SQ, XI2]
    out = []
    for t in itertools.product(letters, repeat=n):
        if any(a.is_zero and b == XI2 for a, b in zip(t, t[1:])):
            continue
        key = tuple(ORDER_X6.key(a) for a in t)
        if all(key < key[i:] + key[:i] for i in range(1, n)):
            if any(not a.is_zero for a in t):
                out.append(Word(t))
    out.sort(key=ORDER_X6.word_key)
    return out


def test_broadhurst_weight1():
    basis = broadhurst_basis(1)
    assert basis[0].is_two_pi_i
    assert [b.integral for b in basis[1:]] == [
        IterInt(ONE, Word.of(XI3SQ), ZERO),
        IterInt(ONE, Word.of(XI2), ZERO),
    ]


def test_broadhurst_weight2_and_3_match_paper():
    assert [str(w) for w in broadhurst_words(2)] == ["0.x6^4", "x6^4.x6^3"]
    assert [str(w) for w in broadhurst_words(3)] == [
        "0.0.x6^4",
        "0.x6^4.x6^4",
        "0.x6^4.x6^3",
        "x6^4.x6^4.x6^3",
        "x6^4.x6^3.x6^3",
    ]


@pytest.mark.parametrize("n", range(1, 7))
def test_broadhurst_matches_brute_force(n):
    assert broadhurst_words(n) == brute_broadhurst_words(n)


@pytest.mark.parametrize("n", range(1, 7))
def test_broadhurst_count_matches_lyndon_fg(n):
    assert len(broadhurst_words(n)) == len(lyndon_fg_words(n))


def test_deligne4_examples():
    b1 = deligne4_basis(1)
    assert b1[0].is_two_pi_i
    assert [str(b.integral.word) for b in b1[1:]] == ["x4^1"]
    assert [str(w) for w in deligne4_words(2)] == ["0.x4^1"]
    # weight 3: the two Lyndon words over {0, xi4}; both have depth <= 2
    w3 = deligne4_words(3)
    assert [str(w) for w in w3] == ["0.0.x4^1", "0.x4^1.x4^1"]
    assert all(w.depth <= 2 for w in w3)


def test_psi0_examples():
    assert psi0(Word.of(ZERO, XI3SQ)) == (f6(2),)
    assert psi0(Word.of(XI3SQ, XI2)) == (f6(1), G1)
    assert psi0(Word.of(XI3SQ, XI2, XI2)) == (f6(1), G1, G1)
    assert [psi0(w) for w in broadhurst_words(3)] == [
        (f6(3),),
        (f6(2), f6(1)),
        (f6(2), G1),
        (f6(1), f6(1), G1),
        (f6(1), G1, G1),
    ]


def test_psi0_domain_errors():
    with pytest.raises(Psi0DomainError):
        psi0(Word.of(ZERO, XI2))
    with pytest.raises(Psi0DomainError):
        psi0(Word.of(XI3SQ, ZERO))


def test_psi0_preserves_weight_and_depth():
    for n in range(1, 6):
        for w in broadhurst_words(n):
            img = psi0(w)
            assert sum(l.weight for l in img) == w.weight
            assert len(img) == w.depth


@pytest.mark.parametrize("n", range(1, 6))
def test_psi0_order_preserving_bijection(n):
    assert psi0_order_check(n)


def test_generator_count_table():
    assert generator_count(6, 1) == 2
    assert generator_count(6, 4) == 1
    assert generator_count(1, 3) == 1
    assert generator_count(1, 1) == 0
    assert generator_count(1, 4) == 0
    assert generator_count(2, 1) == 1
    assert generator_count(2, 2) == 0
    assert generator_count(2, 5) == 1
    assert generator_count(4, 1) == 1
    for n in range(2, 9):
        assert generator_count(4, n) == 1
        assert generator_count(6, n) == 1
    with pytest.raises(ValueError):
        generator_count(5, 2)


def test_log3_free_classifier_consistency():
    letters = [ZERO, XI2, XI3SQ]
    for n in range(1, 7):
        for t in itertools.product(letters, repeat=n):
            w = Word(t)
            cls = log3_free_class(w)
            if cls == "c":
                assert sum(1 for a in t if a == XI3SQ) <= 2
            # the three cases are mutually exclusive by construction: check
            # that a word in case (a) has no xi3^2 while (b)/(c) have some
            if cls == "a":
                assert XI3SQ not in t
            if cls in ("b", "c"):
                assert XI3SQ in t
