import random
from fractions import Fraction

import pytest
from mpmath import mp

from fzeta import (
    IterInt,
    Letter,
    ONE,
    Word,
    XI2,
    XI3,
    XI3SQ,
    XI4,
    ZERO,
    shuffle,
)
from fzeta.algebra import LinComb
from fzeta import numerics
from fzeta.numerics import (
    PrecisionError,
    eval_iterint,
    find_relation,
    fletter_value,
    hurwitz_zeta,
    polylog_root,
    verify_relation,
    zeta,
)
from fzeta.fwords import G1, f4, f6

P = 60
TOL = mp.mpf(10) ** (-P + 8)


def I1(*letters):
    return IterInt(ONE, Word(tuple(letters)), ZERO)


def close(a, b, tol=TOL):
    with mp.workdps(P + 20):
        return abs(a - b) < tol


def test_zeta_classical_values():
    with mp.workdps(P + 10):
        assert close(zeta(2, P), mp.pi**2 / 6)
        assert close(zeta(4, P), mp.pi**4 / 90)
        # frozen digits, cross-checked against mpmath's independent zeta
        assert mp.nstr(zeta(3, P), 20) == "1.2020569031595942854"
        assert close(zeta(3, P), mp.zeta(3))


def test_zeta_rejects_small_n():
    with pytest.raises(ValueError):
        zeta(1, P)


def test_hurwitz_against_mpmath():
    with mp.workdps(P + 10):
        for n in (2, 3, 5):
            for a in (Fraction(1, 6), Fraction(1, 3), Fraction(5, 6), Fraction(1)):
                mine = hurwitz_zeta(n, a, P)
                ref = mp.zeta(n, mp.mpf(a.numerator) / a.denominator)
                assert close(mine, ref)


def test_hurwitz_double_precision_independence():
    a = hurwitz_zeta(4, Fraction(2, 3), P)
    b = hurwitz_zeta(4, Fraction(2, 3), P + 20)
    assert abs(a - b) < mp.mpf(10) ** (-P + 5)


def test_polylog_root_against_mpmath():
    with mp.workdps(P + 10):
        for n in (1, 2, 3, 4):
            for (k, N) in ((1, 3), (2, 3), (1, 4), (1, 2), (1, 6), (5, 6)):
                mine = polylog_root(n, k, N, P)
                ref = mp.polylog(n, mp.e ** (2j * mp.pi * k / N))
                assert close(mine, ref)


def test_polylog_divergent_rejected():
    with pytest.raises(ValueError):
        polylog_root(1, 0, 1, P)


def test_letter_relation_values():
    # 2 Re Li_1(i) = -log 2, so g6_1 = 2log2 = -2 f4_1
    with mp.workdps(P + 10):
        li = polylog_root(1, 1, 4, P)
        assert close(2 * li.real, -mp.log(2))
        assert close(fletter_value(G1, P), 2 * mp.log(2))
        assert close(fletter_value(f4(1), P), -mp.log(2))
        # 2 Re Li_3(xi_3) = -(8/9) zeta(3)
        li3 = polylog_root(3, 1, 3, P)
        assert close(2 * li3.real, -mp.mpf(8) / 9 * zeta(3, P))
        # Re Li_2(i) = -pi^2/48
        li2 = polylog_root(2, 1, 4, P)
        assert close(li2.real, -(mp.pi**2) / 48)


def test_prop1_second_line_im_parts():
    # Im Li_2(xi_6) = (3/2) Im Li_2(xi_3); the real parts differ by a
    # rational multiple of pi^2 (here: none is needed for the imaginary part)
    with mp.workdps(P + 10):
        a = polylog_root(2, 1, 6, P)
        b = polylog_root(2, 1, 3, P)
        assert close(a.imag, mp.mpf(3) / 2 * b.imag)
        rel = find_relation([a.real - 1.5 * b.real, mp.pi**2], 4, P)
        assert rel is not None


def test_eval_iterint_log2():
    with mp.workdps(P + 10):
        assert close(eval_iterint(I1(XI2), P), mp.log(2))


def test_eval_iterint_depth1_cross_check():
    got = eval_iterint(I1(ZERO, XI3SQ), P)
    with mp.workdps(P + 10):
        ref = -polylog_root(2, 1, 3, P)
    assert close(got, ref)


def test_eval_iterint_pure_zeros():
    assert abs(eval_iterint(I1(ZERO, ZERO), P)) == 0


def test_holder_matches_depth1_route():
    # force the Hoelder path on a depth-1 word and compare to the Hurwitz route
    with mp.workdps(P + 10):
        got = numerics._eval_holder((ZERO, ZERO, XI3SQ), P)
        ref = -polylog_root(3, 1, 3, P)
        assert close(got, ref)
        got = numerics._eval_holder((ZERO, XI2), P)
        ref = -polylog_root(2, 1, 2, P)
        assert close(got, ref)


def test_eval_iterint_weight2_closed_form():
    # I(1, xi2 xi2, 0) = log(2)^2/2 by the shuffle square of log 2
    with mp.workdps(P + 10):
        got = eval_iterint(I1(XI2, XI2), P)
        assert close(got, mp.log(2) ** 2 / 2)


def test_eval_quadrature_oracle():
    # weight-2 words against direct nested quadrature at modest precision
    words = [(XI3SQ, XI2), (ZERO, XI3SQ), (XI2, XI3SQ), (XI3SQ, XI3SQ)]
    with mp.workdps(30):
        for w in words:
            a2, a1 = (numerics.letter_mpc(a) for a in w)

            def inner(t):
                return 1 / (t - a1)

            def outer(x):
                return mp.quad(inner, [0, x]) / (x - a2)

            ref = mp.quad(outer, [0, 1])
            got = eval_iterint(I1(*w), 30)
            assert abs(got - ref) < mp.mpf(10) ** (-18)


def test_numeric_shuffle_identity():
    rng = random.Random(17)
    x6 = [ZERO, XI3SQ, XI2, XI3, Letter.root(1, 6), Letter.root(5, 6)]
    pairs = []
    for _ in range(6):
        u = Word(tuple(rng.choice(x6) for _ in range(rng.randint(1, 3))))
        v = Word(tuple(rng.choice(x6) for _ in range(rng.randint(1, 2))))
        pairs.append((u, v))
    Pq = 40
    with mp.workdps(Pq + 10):
        for u, v in pairs:
            lhs = eval_iterint(IterInt(ONE, u, ZERO), Pq) * eval_iterint(
                IterInt(ONE, v, ZERO), Pq
            )
            rhs = eval_iterint(
                LinComb([(IterInt(ONE, w, ZERO), c) for w, c in shuffle(u, v)]), Pq
            )
            assert abs(lhs - rhs) < mp.mpf(10) ** (-Pq + 8)


def test_regularized_eval_consistency():
    # eval of a singular integral equals eval of its regularization
    from fzeta import regularize

    i = I1(XI3SQ, ZERO)
    a = eval_iterint(i, P)
    b = eval_iterint(regularize(i), P)
    assert close(a, b)


def test_eval_double_precision_independence():
    i = I1(XI3SQ, XI2, XI2)
    a = eval_iterint(i, P)
    b = eval_iterint(i, P + 20)
    assert abs(a - b) < mp.mpf(10) ** (-P + 5)


def test_odd_letter_relation():
    # (3^{n-1}/(3^{n-1}-1)) f6_n = -(4^{n-1}/(2^{n-1}-1)) f4_n for odd n
    with mp.workdps(P + 10):
        for n in (3, 5):
            lhs = mp.mpf(3 ** (n - 1)) / (3 ** (n - 1) - 1) * fletter_value(f6(n), P)
            rhs = mp.mpf(4 ** (n - 1)) / (2 ** (n - 1) - 1) * fletter_value(f4(n), P)
            assert abs(lhs + rhs) < mp.mpf(10) ** (-50)


def test_find_relation_zeta3():
    with mp.workdps(P + 10):
        vals = [zeta(3, P), 2 * polylog_root(3, 1, 3, P).real]
    rel = find_relation(vals, 4, P)
    assert rel is not None
    a, b = rel.integers
    assert (abs(a), abs(b)) == (8, 9) and a * b > 0
    assert verify_relation(rel, vals, P)


def test_find_relation_pi2():
    with mp.workdps(P + 10):
        vals = [mp.pi**2, polylog_root(2, 1, 4, P).real * 48]
        rel = find_relation(vals, 4, P)
        assert rel is not None
        assert sorted(map(abs, rel.integers)) == [1, 1]


def test_find_relation_none_for_independent():
    with mp.workdps(P + 10):
        rel = find_relation([mp.mpf(1), mp.sqrt(2)], 3, P)
        assert rel is None


def test_find_relation_precision_guard():
    with pytest.raises(PrecisionError):
        find_relation([1.0, 2.0, 3.0], 10, 20)
