"""Iterated integrals I(upper, word, lower) with shuffle regularization at
tangential base points, path reversal/concatenation, and the sum
representation as multiple polylogarithms.

All endpoints live in {0} u {roots of unity}: on the unit circle log|z| = 0,
so regularization of a singular integral is an integer linear combination of
regular integrals with the same endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .algebra import LinComb
from .words import EMPTY, Letter, Word, ZERO, ONE, shuffle


class RegularizationError(ValueError):
    pass


@dataclass(frozen=True)
class IterInt:
    """I(upper, word, lower); leftmost letter sits next to `upper`."""

    upper: Letter
    word: Word
    lower: Letter = ZERO

    def __post_init__(self):
        if self.upper == self.lower and self.word.weight:
            raise RegularizationError(
                "zero-length path with a nonempty word has no meaning"
            )

    @property
    def weight(self) -> int:
        return self.word.weight

    @property
    def depth(self) -> int:
        return self.word.depth

    def is_regular(self) -> bool:
        """Convergent without regularization: a_1 != lower and a_n != upper."""
        if not self.word.weight:
            return True
        return self.word[-1] != self.lower and self.word[0] != self.upper

    def reverse(self) -> Tuple[int, "IterInt"]:
        """Path reversal: I(b,w,a) = (-1)^|w| I(a, w reversed, b)."""
        return (-1) ** self.word.weight, IterInt(
            self.lower, self.word.reverse(), self.upper
        )

    def conjugate(self) -> "IterInt":
        return IterInt(self.upper.conjugate(), self.word.conjugate(), self.lower.conjugate())

    def __str__(self) -> str:
        from .grammar import format_iterint

        return format_iterint(self)

    __repr__ = __str__


def regularize(x) -> LinComb:
    """Shuffle regularization of 0-based integrals on the unit circle.

    Accepts an IterInt with lower = 0 (or a LinComb of them) and returns an
    integer-coefficient LinComb of regular integrals with the same endpoints.
    Pure-zero words give 0; regular inputs pass through unchanged.
    """
    if isinstance(x, IterInt):
        x = LinComb.term(x)
    out = LinComb()
    for i, c in x:
        out = out + _regularize_one(i) * c
    return out


def _regularize_one(i: IterInt) -> LinComb:
    if i.lower != ZERO:
        raise RegularizationError("regularize expects integrals based at 0")
    if i.upper.is_zero:
        raise RegularizationError("upper endpoint 0 with lower 0 is degenerate")
    w = i.word
    if not w.weight:
        return LinComb.term(i)
    # Strip trailing zeros: I(z, u b 0^t, 0) = (-1)^t I(z, [u sh 0^t] b, 0).
    t = 0
    while t < w.weight and w[w.weight - 1 - t].is_zero:
        t += 1
    if t == w.weight:
        return LinComb()  # I(z, 0^n, 0) = log(|z|)^n/n! = 0 on the circle
    if t:
        u, b = w[: w.weight - 1 - t], w[w.weight - 1 - t]
        zeros = Word((ZERO,) * t)
        out = LinComb()
        for v, c in shuffle(u, zeros):
            out = out + _strip_upper(IterInt(i.upper, v + Word((b,)), ZERO)) * (
                c * (-1) ** t
            )
        return out
    return _strip_upper(i)


def _strip_upper(i: IterInt) -> LinComb:
    """Strip leading letters equal to the upper endpoint:
    I(z, z^m b u, 0) = (-1)^m sum over v in u sh z^m of I(z, b v, 0)."""
    w, z = i.word, i.upper
    m = 0
    while m < w.weight and w[m] == z:
        m += 1
    if m == w.weight:
        return LinComb()  # I(z, z^m, 0) = (-log|z|)^m/m! = 0 on the circle
    if not m:
        return LinComb.term(i)
    b, u = w[m], w[m + 1 :]
    zs = Word((z,) * m)
    out = LinComb()
    for v, c in shuffle(u, zs):
        out = out + LinComb.term(IterInt(z, Word((b,)) + v, ZERO), c * (-1) ** m)
    return out


def rebase_to_zero(i: IterInt) -> Tuple[LinComb, List[Tuple[int, IterInt, IterInt]]]:
    """Split a path through 0: I(b,w,a) = I(b,w,0) + (-1)^n I(a, w~, 0) + products.

    Returns the depth-preserving principal terms and, separately, the full
    ledger of product terms (coeff, left factor, right factor) so that exact
    evaluation is possible.  For a = 0 the integral is already based and the
    ledger is empty.
    """
    if i.lower == ZERO:
        return LinComb.term(i), []
    if i.upper == ZERO:
        sign, rev = i.reverse()
        return LinComb.term(rev, sign), []
    principal = LinComb()
    ledger = []
    n = i.word.weight
    for cut in range(n + 1):
        u, v = i.word[:cut], i.word[cut:]
        sign = (-1) ** v.weight
        if cut == n:
            principal = principal + LinComb.term(IterInt(i.upper, u, ZERO))
        elif cut == 0:
            principal = principal + LinComb.term(
                IterInt(i.lower, v.reverse(), ZERO), sign
            )
        else:
            ledger.append(
                (sign, IterInt(i.upper, u, ZERO), IterInt(i.lower, v.reverse(), ZERO))
            )
    return principal, ledger


def scale_to_one(i: IterInt) -> IterInt:
    """Rescale a regular 0-based integral to upper endpoint 1 by x -> x/z.

    Letters divide by the upper endpoint; roots of unity stay roots of unity.
    Valid for regular integrals only (regularize first).
    """
    if i.lower != ZERO or i.upper.is_zero:
        raise ValueError("scale_to_one expects a 0-based integral")
    if not i.is_regular():
        raise RegularizationError("scale_to_one expects a regular integral")
    if i.upper == ONE:
        return i
    z = i.upper
    return IterInt(ONE, Word(tuple(a.divide(z) for a in i.word.letters)), ZERO)


def based_at_one(x) -> LinComb:
    """Exact reduction of regular or singular 0-based integrals to regular
    integrals with upper endpoint 1."""
    out = LinComb()
    for i, c in regularize(x):
        out = out + LinComb.term(scale_to_one(i), c)
    return out


@dataclass(frozen=True)
class LiValue:
    """Li_{n_r,...,n_1}(z_r,...,z_1) at roots of unity, outermost index first."""

    indices: Tuple[int, ...]
    args: Tuple[Letter, ...]

    def __post_init__(self):
        if len(self.indices) != len(self.args):
            raise ValueError("indices and arguments must align")

    @property
    def weight(self) -> int:
        return sum(self.indices)

    @property
    def depth(self) -> int:
        return len(self.indices)

    def is_convergent(self) -> bool:
        return not (
            self.indices and self.indices[0] == 1 and self.args[0] == ONE
        )

    def __str__(self):
        ns = ",".join(map(str, self.indices))
        zs = ",".join(map(str, self.args))
        return f"Li_{{{ns}}}({zs})"


def to_li(i: IterInt) -> Tuple[int, LiValue]:
    """Sum representation of a regular 0-based integral:
    (-1)^r I(z, 0^{n_r-1} a_r ... 0^{n_1-1} a_1, 0) = Li_{n_r..n_1}(z/a_r, ..., a_2/a_1).

    Returns (sign, LiValue) with sign = (-1)^r so that value(i) = sign * Li.
    """
    if i.lower != ZERO:
        raise ValueError("to_li expects a 0-based integral")
    if not i.is_regular():
        raise RegularizationError("to_li expects a regular integral; regularize first")
    if i.depth < 1:
        raise ValueError("to_li needs depth >= 1")
    indices: List[int] = []
    nonzero: List[Letter] = []
    run = 0
    for a in i.word.letters:
        if a.is_zero:
            run += 1
        else:
            indices.append(run + 1)
            nonzero.append(a)
            run = 0
    # Word is regular so it cannot end in 0: run == 0 here.
    args = []
    prev = i.upper
    for a in nonzero:
        args.append(prev.divide(a))
        prev = a
    r = len(indices)
    return (-1) ** r, LiValue(tuple(indices), tuple(args))


def from_li(sign: int, li: LiValue, upper: Letter = ONE) -> IterInt:
    """Inverse of `to_li` for the given upper endpoint."""
    letters: List[Letter] = []
    prev = upper
    for n, x in zip(li.indices, li.args):
        a = prev.divide(x)
        letters.extend([ZERO] * (n - 1))
        letters.append(a)
        prev = a
    if sign != (-1) ** li.depth:
        raise ValueError("sign does not match the depth convention")
    return IterInt(upper, Word(tuple(letters)), ZERO)
