import itertools
import math
import random
from fractions import Fraction

import pytest

from fzeta import (
    EMPTY,
    Letter,
    LetterOrder,
    ORDER_X6,
    Word,
    XI2,
    XI3SQ,
    ZERO,
    cfl_factorize,
    deconcatenations,
    is_lyndon,
    lyndon_count,
    lyndon_words,
    radford_decompose,
    radford_expand,
    shuffle,
    shuffle_comb,
)
from fzeta.algebra import LinComb

A = Letter.root(0, 6)  # generic distinct letters for structural tests
B = Letter.root(1, 6)
C = Letter.root(2, 6)


def brute_shuffle(u, v):
    """Independent oracle: place u's letters on chosen positions."""
    out = {}
    n, m = len(u), len(v)
    for pos in itertools.combinations(range(n + m), n):
        w, iu, iv = [], 0, 0
        for i in range(n + m):
            if i in pos:
                w.append(u[iu])
                iu += 1
            else:
                w.append(v[iv])
                iv += 1
        w = tuple(w)
        out[w] = out.get(w, 0) + 1
    return out


def lincomb_of(d):
    return LinComb([(Word(t), c) for t, c in d.items()])


def rand_word(rng, letters, max_len=4):
    return Word(tuple(rng.choice(letters) for _ in range(rng.randint(0, max_len))))


def test_shuffle_two_singletons():
    got = shuffle(Word.of(A), Word.of(B))
    assert got == lincomb_of({(A, B): 1, (B, A): 1})


def test_shuffle_pair_with_singleton():
    got = shuffle(Word.of(A, B), Word.of(C))
    assert got == lincomb_of({(A, B, C): 1, (A, C, B): 1, (C, A, B): 1})


def test_shuffle_0xi_squared():
    # brute force over all 6 interleavings of (0 xi) with (0 xi)
    u = (ZERO, XI3SQ)
    expected = lincomb_of(brute_shuffle(u, u))
    got = shuffle(Word(u), Word(u))
    assert got == expected
    assert got.coeff(Word.of(ZERO, XI3SQ, ZERO, XI3SQ)) == 2
    assert got.coeff(Word.of(ZERO, ZERO, XI3SQ, XI3SQ)) == 4


def test_shuffle_total_mass():
    rng = random.Random(7)
    letters = [ZERO, XI3SQ, XI2]
    for _ in range(30):
        u, v = rand_word(rng, letters), rand_word(rng, letters)
        total = sum(c for _, c in shuffle(u, v))
        assert total == math.comb(len(u) + len(v), len(u))


def test_shuffle_commutative_associative():
    rng = random.Random(11)
    letters = [ZERO, XI3SQ, XI2]
    for _ in range(20):
        u, v, w = (rand_word(rng, letters, 3) for _ in range(3))
        assert shuffle(u, v) == shuffle(v, u)
        lhs = shuffle_comb(shuffle(u, v), LinComb.term(w))
        rhs = shuffle_comb(LinComb.term(u), shuffle(v, w))
        assert lhs == rhs


def test_deconcatenations_examples():
    w = Word.of(A, B, C)
    assert deconcatenations(w) == [
        (EMPTY, w),
        (Word.of(A), Word.of(B, C)),
        (Word.of(A, B), Word.of(C)),
        (w, EMPTY),
    ]
    assert deconcatenations(EMPTY) == [(EMPTY, EMPTY)]


def test_deconcatenation_coassociative():
    rng = random.Random(3)
    letters = [ZERO, XI3SQ, XI2]
    for _ in range(20):
        w = rand_word(rng, letters, 6)
        key = lambda triple: tuple(str(x) for x in triple)
        left = sorted(
            (
                (u1, u2, v)
                for u, v in deconcatenations(w)
                for u1, u2 in deconcatenations(u)
            ),
            key=key,
        )
        right = sorted(
            (
                (u, v1, v2)
                for u, v in deconcatenations(w)
                for v1, v2 in deconcatenations(v)
            ),
            key=key,
        )
        assert left == right


def test_is_lyndon_examples():
    assert is_lyndon(Word.of(ZERO, XI3SQ), ORDER_X6)
    assert not is_lyndon(Word.of(XI3SQ, ZERO), ORDER_X6)
    assert is_lyndon(Word.of(ZERO, ZERO, XI3SQ), ORDER_X6)
    with pytest.raises(ValueError):
        is_lyndon(EMPTY, ORDER_X6)


def test_lyndon_words_necklace_counts():
    for q in (2, 3):
        letters = [(Letter.root(k, 6), 1) for k in range(q)]
        order = LetterOrder([l for l, _ in letters])
        for n in range(1, 7):
            got = lyndon_words(letters, n, order)
            assert len(got) == lyndon_count(q, n)


def test_cfl_factorization_unique():
    # Exhaustive check up to length 6 over two letters: the greedy
    # factorization is the only non-increasing factorization into Lyndon words.
    order = LetterOrder([A, B])

    def all_factorizations(t):
        if not t:
            yield ()
            return
        for i in range(1, len(t) + 1):
            head = t[:i]
            if is_lyndon(head, order):
                for rest in all_factorizations(t[i:]):
                    yield (head,) + rest

    for n in range(1, 7):
        for t in itertools.product((A, B), repeat=n):
            w = Word(t)
            fac = cfl_factorize(w, order)
            assert all(is_lyndon(f, order) for f in fac)
            keys = [order.word_key(f) for f in fac]
            assert keys == sorted(keys, reverse=True)
            assert sum((f.letters for f in fac), ()) == t
            noninc = [
                fs
                for fs in all_factorizations(t)
                if [order.word_key(f) for f in fs]
                == sorted((order.word_key(f) for f in fs), reverse=True)
            ]
            assert len(noninc) == 1
            assert list(noninc[0]) == [f.letters for f in fac]


def test_radford_fixed_points_and_square():
    order = LetterOrder([A, B])
    lw = Word.of(A, B)
    poly = radford_decompose(LinComb.term(lw), order)
    assert poly == LinComb.term((lw,), Fraction(1))
    # w sh w = 2 ww, so ww decomposes as half the shuffle square
    sq = radford_decompose(LinComb.term(Word.of(A, A)), order)
    assert sq == LinComb.term((Word.of(A), Word.of(A)), Fraction(1, 2))


def test_radford_two_letter_example():
    # With a < b:  b a = (a sh b) - ab
    order = LetterOrder([A, B])
    poly = radford_decompose(LinComb.term(Word.of(B, A)), order)
    assert poly == LinComb(
        [((Word.of(A), Word.of(B)), Fraction(1)), ((Word.of(A, B),), Fraction(-1))]
    )


def test_radford_round_trip_random():
    rng = random.Random(5)
    letters = [ZERO, XI3SQ, XI2]
    for _ in range(15):
        x = LinComb(
            [
                (rand_word(rng, letters, 4), Fraction(rng.randint(-3, 3)))
                for _ in range(3)
            ]
        )
        poly = radford_decompose(x, ORDER_X6)
        assert radford_expand(poly) == x
        for mono, _ in poly:
            assert all(is_lyndon(f, ORDER_X6) for f in mono)
