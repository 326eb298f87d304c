"""Multiprecision numerics: zeta values, depth-one polylogarithms at roots of
unity, iterated integrals on the unit circle, and integer-relation detection.

Precision is a propagated parameter P (significant decimal digits), never
ambient state; internal computations run with guard digits plus a dynamic
bump where partial sums can grow, so exported values are accurate to well
below 10^(-P+5).  Depth-one values go through the Hurwitz-zeta finite
Fourier decomposition; deeper iterated integrals split the integration path
at 1/2 so that every sub-series converges at least geometrically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from mpmath import mp, mpc, mpf

from .algebra import LinComb
from .fwords import FLetter
from .iterint import IterInt, based_at_one, rebase_to_zero
from .words import Letter, ONE, Word, ZERO

ComplexMP = mpc  # exported values are mpmath complex numbers

_GUARD = 15


class PrecisionError(ValueError):
    pass


def _to_mp(q) -> mpf:
    if isinstance(q, Fraction):
        return mp.mpf(q.numerator) / q.denominator
    return mp.mpf(q)


def mp_coeff(c):
    """Exact coefficient (int, Fraction or QSqrtM3) to mpmath at current dps."""
    from .algebra import QSqrtM3

    if isinstance(c, QSqrtM3):
        # 1/(i sqrt3) = -i/sqrt(3)
        return _to_mp(c.a) + _to_mp(c.b) * mpc(0, -1) / mp.sqrt(3)
    return _to_mp(c)


def letter_mpc(a: Letter) -> mpc:
    """exp(2 pi i k/N) at the current working precision."""
    if a.is_zero:
        return mp.mpc(0)
    r = a.reduced()
    return mp.e ** (2j * mp.pi * r.numerator / r.denominator)


def hurwitz_zeta(n: int, a: Fraction, P: int) -> mpf:
    """zeta(n, a) for integer n >= 2 and rational 0 < a <= 1 by
    Euler-Maclaurin summation.

    (x+a)^(-n) is completely monotone, so the remainder after J correction
    terms is bounded by the first omitted term; we add terms until that bound
    drops below the target accuracy.
    """
    if n < 2:
        raise ValueError("hurwitz_zeta needs n >= 2")
    a = Fraction(a)
    if not (0 < a <= 1):
        raise ValueError("offset must satisfy 0 < a <= 1")
    with mp.workdps(P + _GUARD + 10):
        eps = mp.mpf(10) ** (-(P + _GUARD))
        M = int(0.45 * (P + 25)) + n + 5
        av = _to_mp(a)
        s = mp.fsum((k + av) ** (-n) for k in range(M))
        x = M + av
        s += x ** (1 - n) / (n - 1) + x ** (-n) / 2
        # correction terms B_{2j}/(2j)! * n(n+1)..(n+2j-2) * x^(-n-2j+1)
        rising = mp.mpf(n)
        xp = x ** (-n - 1)
        j = 1
        prev = mp.inf
        while True:
            term = mp.bernoulli(2 * j) / mp.factorial(2 * j) * rising * xp
            if abs(term) < eps:
                break
            if abs(term) > abs(prev):
                raise PrecisionError("Euler-Maclaurin terms stopped decreasing")
            s += term
            prev = term
            rising *= (n + 2 * j - 1) * (n + 2 * j)
            xp /= x * x
            j += 1
        return +s


def zeta(n: int, P: int = 60) -> mpf:
    """Riemann zeta at integer n >= 2 to P digits."""
    if n < 2:
        raise ValueError("zeta needs n >= 2")
    return hurwitz_zeta(n, Fraction(1), P)


def polylog_root(n: int, k: int, N: int, P: int = 60) -> mpc:
    """Li_n(xi_N^k) for n >= 1, excluding the divergent Li_1(1).

    For n >= 2 uses Li_n(xi^m) = N^(-n) * sum_j xi^(jm) zeta(n, j/N);
    at n = 1 the closed form -log(1 - xi).
    """
    if N < 1:
        raise ValueError("bad root order")
    k %= N
    if n < 1:
        raise ValueError("polylog index must be >= 1")
    if n == 1:
        if k == 0:
            raise ValueError("Li_1(1) diverges")
        with mp.workdps(P + _GUARD):
            return +(-mp.log(1 - letter_mpc(Letter.root(k, N))))
    if k == 0:
        return mp.mpc(zeta(n, P))
    with mp.workdps(P + _GUARD + 10):
        xi = letter_mpc(Letter.root(k, N))
        total = sum(
            xi**j * hurwitz_zeta(n, Fraction(j, N), P + 5) for j in range(1, N + 1)
        )
        return +(total / mp.mpf(N) ** n)


def fletter_value(letter: FLetter, P: int = 60) -> mpc:
    """Parity realization of an f-alphabet letter: g6_1 = 2 log 2,
    f6_n = -2 Re/Im Li_n(xi_3), f4_n = 2 Re/Im Li_n(i) for odd/even n."""
    with mp.workdps(P + _GUARD):
        if letter.family == "g6":
            return mp.mpc(2 * mp.log(2))
        n = letter.weight
        if letter.family == "f6":
            li = polylog_root(n, 1, 3, P)
            return mp.mpc(-2 * li.real) if n % 2 else mpc(0, 1) * (-2 * li.imag)
        li = polylog_root(n, 1, 4, P)
        return mp.mpc(2 * li.real) if n % 2 else mpc(0, 1) * (2 * li.imag)


# ---------------------------------------------------------------------------
# Iterated integrals
# ---------------------------------------------------------------------------

_EVAL_CACHE: dict = {}


def clear_cache():
    _EVAL_CACHE.clear()


def eval_iterint(x, P: int = 60) -> mpc:
    """Numerical value of an IterInt (or a LinComb of them).

    Singular integrals mean their tangential-base-point regularization;
    integrals not based at 0 are reduced by exact path concatenation and
    reversal, including the product terms.
    """
    if isinstance(x, IterInt):
        x = LinComb.term(x)
    with mp.workdps(P + _GUARD):
        total = mp.mpc(0)
        for i, c in x:
            total += mp_coeff(c) * _eval_one(i, P)
        return +total


def _eval_one(i: IterInt, P: int) -> mpc:
    if i.upper == i.lower:
        return mp.mpc(1 if i.weight == 0 else 0)
    principal, ledger = rebase_to_zero(i)
    total = mp.mpc(0)
    for j, c in principal:
        total += c * _eval_based(j, P)
    for sign, left, right in ledger:
        total += sign * _eval_based(left, P) * _eval_based(right, P)
    return total


def _eval_based(i: IterInt, P: int) -> mpc:
    """Evaluate a 0-based integral (regular or not) at P digits."""
    total = mp.mpc(0)
    for j, c in based_at_one(i):
        total += c * _eval_regular_word(j.word.letters, P)
    return total


def _eval_regular_word(letters: Tuple[Letter, ...], P: int) -> mpc:
    """Regular I(1, w, 0) with letters in {0} u {roots of unity}."""
    if not letters:
        return mp.mpc(1)
    key = (letters, P)
    hit = _EVAL_CACHE.get(key)
    if hit is not None:
        return hit
    with mp.workdps(P + _GUARD):
        if sum(1 for a in letters if not a.is_zero) == 1:
            # depth 1: I(1, 0^{n-1} a, 0) = -Li_n(1/a), Hurwitz route
            a = next(x for x in letters if not x.is_zero)
            r = a.reduced()
            val = -polylog_root(len(letters), -r.numerator, r.denominator, P)
        else:
            val = _eval_holder(letters, P)
        val = +val
    _EVAL_CACHE[key] = val
    return val


def _eval_holder(letters: Tuple[Letter, ...], P: int) -> mpc:
    """Hoelder-style path splitting at 1/2:

    I(1,w,0) = sum over w = uv of (-1)^|u| I(1/2, (1-.)(u reversed), 0) I(1/2, v, 0)

    Both factors are series whose partial argument products all have modulus
    <= 1/2, hence converge geometrically.  Sub-words are encoded as
    (transformed?, Letter) pairs so each factor can rebuild its letters at
    whatever working precision it needs.
    """
    n = len(letters)
    with mp.workdps(P + _GUARD):
        total = mp.mpc(0)
        for cut in range(n + 1):
            u, v = letters[:cut], letters[cut:]
            left = _eval_series(tuple((True, a) for a in reversed(u)), P)
            right = _eval_series(tuple((False, a) for a in v), P)
            total += (-1) ** cut * left * right
        return +total


def _series_letter_is_zero(tag: Tuple[bool, Letter]) -> bool:
    transformed, a = tag
    return (a == ONE) if transformed else a.is_zero


def _series_letter_value(tag: Tuple[bool, Letter]) -> mpc:
    transformed, a = tag
    return (1 - letter_mpc(a)) if transformed else letter_mpc(a)


def _eval_series(tags: Tuple[Tuple[bool, Letter], ...], P: int) -> mpc:
    """I(1/2, w, 0) by the multiple-polylog sum.

    Nonzero letters have modulus >= 1, so all partial argument products from
    the outside in have modulus <= 1/2; intermediate partial sums can still
    grow when a single ratio exceeds 1, which is absorbed by a dynamic
    precision bump.
    """
    if not tags:
        return mp.mpc(1)
    if _series_letter_is_zero(tags[-1]):
        raise ValueError("series form needs a nonzero last letter")
    # parse 0^{n_r-1} a_r ... 0^{n_1-1} a_1 left to right
    ns: List[int] = []
    idx: List[Tuple[bool, Letter]] = []
    run = 0
    for t in tags:
        if _series_letter_is_zero(t):
            run += 1
        else:
            ns.append(run + 1)
            idx.append(t)
            run = 0
    r = len(idx)
    # growth estimate at double precision for the precision bump
    az_f = [complex(_series_letter_value(t)) for t in idx]
    xs_f = [0.5 / az_f[0]] + [az_f[i - 1] / az_f[i] for i in range(1, r)]
    growth = sum(max(0.0, math.log10(abs(x))) for x in xs_f)
    K = int((P + _GUARD + 12) * math.log2(10)) + 10 * r + 16
    bump = int(K * growth) + 10
    with mp.workdps(P + _GUARD + bump):
        az = [_series_letter_value(t) for t in idx]
        xs = [mp.mpf(1) / 2 / az[0]] + [az[i - 1] / az[i] for i in range(1, r)]
        # level j sums the j innermost variables; level j uses xs[r-j], ns[r-j]
        x_of = [None] + [xs[r - j] for j in range(1, r + 1)]
        n_of = [None] + [ns[r - j] for j in range(1, r + 1)]
        s = [mp.mpc(1)] + [mp.mpc(0)] * r
        prev = list(s)  # values at k-1
        pw = [mp.mpc(1)] * (r + 1)
        for k in range(1, K + 1):
            kf = mp.mpf(k)
            kpow = {n: kf ** (-n) for n in set(ns)}
            for j in range(r, 0, -1):
                pw[j] = pw[j] * x_of[j]
                s[j] += pw[j] * kpow[n_of[j]] * prev[j - 1]
            for j in range(1, r + 1):
                prev[j] = s[j]
        return +((-1) ** r * s[r])


# ---------------------------------------------------------------------------
# Integer relations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Relation:
    integers: Tuple[int, ...]
    residual: mpf

    def __str__(self):
        return f"{list(self.integers)} (residual {mp.nstr(self.residual, 3)})"


def find_relation(
    values: Sequence, max_coeff_digits: int = 4, P: int = 60
) -> Optional[Relation]:
    """Find a small integer relation among real numbers with PSLQ, or None.

    Never returns a relation whose residual reaches the detection threshold
    10^(-P/2); callers that can re-evaluate their inputs should re-verify at
    elevated precision with `verify_relation`.
    """
    if len(values) < 2:
        raise ValueError("need at least two values")
    if P < 10 + max_coeff_digits * len(values):
        raise PrecisionError(
            f"P = {P} too small for {len(values)} values with "
            f"{max_coeff_digits}-digit coefficients"
        )
    with mp.workdps(P):
        vals = [mp.mpf(v) for v in values]
        try:
            rel = mp.pslq(
                vals,
                tol=mp.mpf(10) ** (-(P - 8)),
                maxcoeff=10**max_coeff_digits,
                maxsteps=50000,
            )
        except ValueError:
            return None
        if rel is None or not any(rel):
            return None
        residual = abs(mp.fsum(c * v for c, v in zip(rel, vals)))
        if residual >= mp.mpf(10) ** (mp.mpf(-P) / 2):
            return None
        return Relation(tuple(int(c) for c in rel), residual)


def verify_relation(rel: Relation, values: Sequence, P: int) -> bool:
    """Re-check a relation against (possibly re-evaluated) values."""
    with mp.workdps(P):
        residual = abs(mp.fsum(c * mp.mpf(v) for c, v in zip(rel.integers, values)))
        return residual < mp.mpf(10) ** (mp.mpf(-P) / 2)


def mpf_to_fraction(x) -> Fraction:
    """Exact binary value of an mpf as a Fraction."""
    from mpmath.libmp import to_rational

    p, q = to_rational(mp.mpf(x)._mpf_)
    return Fraction(int(p), int(q))


def rationalize(x, max_den: int = 10**8) -> Fraction:
    """Nearest small-denominator rational; callers re-verify residuals."""
    return mpf_to_fraction(x).limit_denominator(max_den)
