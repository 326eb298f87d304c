"""Letters, words, shuffle product, deconcatenation and Lyndon machinery.

Letters are 0 or roots of unity xi_N^k.  A letter remembers the form it was
written in ("x6^4") but compares and hashes by the reduced rational k/N, so
xi_6^3 and xi_2 are the same letter.  Words are tuples of letters; all word
operations are pure.

Letter orders are explicit values (tuples listing letters in ascending
order), never globals: the Broadhurst basis depends on the order used.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from .algebra import LinComb


@dataclass(frozen=True)
class Letter:
    """0 or the root of unity xi_N^k (stored as written, compared reduced)."""

    k: int
    n: int  # n == 0 encodes the letter 0

    def __post_init__(self):
        if self.n < 0 or (self.n == 0 and self.k != 0):
            raise ValueError("bad letter")
        object.__setattr__(self, "k", self.k % self.n if self.n else 0)

    @staticmethod
    def zero() -> "Letter":
        return Letter(0, 0)

    @staticmethod
    def root(k: int, n: int) -> "Letter":
        if n < 1:
            raise ValueError("root order must be positive")
        return Letter(k % n, n)

    @staticmethod
    def one() -> "Letter":
        return Letter(0, 1)

    @property
    def is_zero(self) -> bool:
        return self.n == 0

    def reduced(self) -> Fraction:
        """k/N in lowest terms; identifies the letter as a point on the circle."""
        if self.is_zero:
            raise ValueError("0 is not a root of unity")
        return Fraction(self.k, self.n) % 1

    def _key(self):
        return (0, Fraction(0)) if self.is_zero else (1, self.reduced())

    def __eq__(self, other) -> bool:
        return isinstance(other, Letter) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def conjugate(self) -> "Letter":
        if self.is_zero:
            return self
        return Letter.root(-self.k, self.n)

    def divide(self, other: "Letter") -> "Letter":
        """self / other for roots of unity (used to rescale integrals)."""
        if self.is_zero:
            return self
        q = (self.reduced() - other.reduced()) % 1
        return Letter.root(q.numerator, q.denominator)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        if self.n == 1:
            return "1"
        return f"x{self.n}^{self.k}"

    __repr__ = __str__


ZERO = Letter.zero()
ONE = Letter.one()
XI2 = Letter.root(3, 6)     # -1, rendered x6^3
XI3 = Letter.root(2, 6)     # xi_3, rendered x6^2
XI3SQ = Letter.root(4, 6)   # xi_3^2, rendered x6^4
XI6 = Letter.root(1, 6)
XI6_5 = Letter.root(5, 6)
XI4 = Letter.root(1, 4)     # i
XI4_3 = Letter.root(3, 4)   # -i


@dataclass(frozen=True)
class Word:
    """A finite sequence of letters; leftmost letter is a_n in I(z, a_n..a_1, 0)."""

    letters: Tuple[Letter, ...] = ()

    @staticmethod
    def of(*letters: Letter) -> "Word":
        return Word(tuple(letters))

    @property
    def weight(self) -> int:
        return len(self.letters)

    @property
    def depth(self) -> int:
        return sum(1 for a in self.letters if not a.is_zero)

    def __len__(self) -> int:
        return len(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.letters[i])
        return self.letters[i]

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def reverse(self) -> "Word":
        return Word(self.letters[::-1])

    def conjugate(self) -> "Word":
        return Word(tuple(a.conjugate() for a in self.letters))

    def __str__(self) -> str:
        return ".".join(str(a) for a in self.letters) if self.letters else "e"

    __repr__ = __str__


EMPTY = Word()


class LetterOrder:
    """Total order on a finite set of letters, given in ascending sequence."""

    def __init__(self, ascending: Sequence):
        self._rank = {a: i for i, a in enumerate(ascending)}
        self.ascending = tuple(ascending)

    def key(self, letter) -> int:
        try:
            return self._rank[letter]
        except KeyError:
            raise ValueError(f"letter {letter} not covered by this order") from None

    def word_key(self, w) -> Tuple[int, ...]:
        return tuple(self.key(a) for a in _letters_of(w))

    def less(self, u, v) -> bool:
        return self.word_key(u) < self.word_key(v)


# Order used by the Broadhurst basis definition.
ORDER_X6 = LetterOrder([ZERO, XI3SQ, XI2])
ORDER_X4 = LetterOrder([ZERO, XI4])


def _letters_of(w):
    return w.letters if isinstance(w, Word) else tuple(w)


def shuffle(u: Word, v: Word) -> LinComb:
    """Shuffle product: sum over order-preserving interleavings, with
    multiplicities as integer coefficients."""
    out = LinComb()
    for t, c in _shuffle_tuples(_letters_of(u), _letters_of(v)):
        out = out + LinComb.term(_rewrap(u, t), c)
    return out


def _rewrap(model, letters):
    return Word(letters) if isinstance(model, Word) else letters


@lru_cache(maxsize=65536)
def _shuffle_tuples(u: tuple, v: tuple) -> Tuple[Tuple[tuple, int], ...]:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc = {}
    for t, c in _shuffle_tuples(u[1:], v):
        key = (u[0],) + t
        acc[key] = acc.get(key, 0) + c
    for t, c in _shuffle_tuples(u, v[1:]):
        key = (v[0],) + t
        acc[key] = acc.get(key, 0) + c
    return tuple(acc.items())


def shuffle_comb(x: LinComb, y: LinComb) -> LinComb:
    """Bilinear extension of the shuffle product to LinComb<Word>."""
    out = LinComb()
    for u, cu in x:
        for v, cv in y:
            out = out + shuffle(u, v) * (cu * cv)
    return out


def deconcatenations(w: Word) -> List[Tuple[Word, Word]]:
    """All |w|+1 splittings w = uv, in order, including the trivial ones."""
    ls = _letters_of(w)
    return [(_rewrap(w, ls[:i]), _rewrap(w, ls[i:])) for i in range(len(ls) + 1)]


def is_lyndon(w, order: LetterOrder) -> bool:
    """True iff w strictly precedes all its proper rotations (lex by `order`)."""
    ls = _letters_of(w)
    if not ls:
        raise ValueError("the empty word is neither Lyndon nor not")
    key = tuple(order.key(a) for a in ls)
    return all(key < key[i:] + key[:i] for i in range(1, len(key)))


def lyndon_words(
    alphabet: Sequence[Tuple[object, int]],
    total_weight: int,
    order: LetterOrder,
    filt: Optional[Callable] = None,
) -> List:
    """All Lyndon words of the given total weight over a weighted alphabet,
    sorted ascending.

    `alphabet` lists (letter, weight) pairs.  Generation is exhaustive
    enumerate-and-test, which is complete by construction; the weights are
    all >= 1 so the tree is finite.
    """
    if total_weight < 1:
        raise ValueError("total_weight must be >= 1")
    letters = sorted(alphabet, key=lambda lw: order.key(lw[0]))
    found = []

    def grow(prefix: tuple, remaining: int):
        if remaining == 0:
            if is_lyndon(prefix, order) and (filt is None or filt(prefix)):
                found.append(prefix)
            return
        for a, wt in letters:
            if wt <= remaining:
                grow(prefix + (a,), remaining - wt)

    grow((), total_weight)
    found.sort(key=lambda t: tuple(order.key(a) for a in t))
    return [Word(t) if isinstance(alphabet[0][0], Letter) else t for t in found]


def lyndon_count(q: int, n: int) -> int:
    """Moreau's necklace-counting formula: number of length-n Lyndon words
    over a q-letter alphabet."""
    return sum(_mobius(d) * q ** (n // d) for d in range(1, n + 1) if n % d == 0) // n


def _mobius(n: int) -> int:
    out, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    if n > 1:
        out = -out
    return out


def cfl_factorize(w, order: LetterOrder) -> List:
    """Chen-Fox-Lyndon factorization into a non-increasing product of Lyndon
    words (Duval's algorithm)."""
    ls = _letters_of(w)
    key = [order.key(a) for a in ls]
    out = []
    i, n = 0, len(ls)
    while i < n:
        j, k = i + 1, i
        while j < n and key[k] <= key[j]:
            k = i if key[k] < key[j] else k + 1
            j += 1
        while i <= k:
            out.append(_rewrap(w, ls[i : i + j - k]))
            i += j - k
    return out


def radford_decompose(x: LinComb, order: LetterOrder) -> LinComb:
    """Write a shuffle polynomial as a Q-polynomial in Lyndon words.

    Returns a LinComb whose terms are multisets of Lyndon words (sorted
    tuples); `radford_expand` shuffles them back out.  The leading word of a
    shuffle monomial is its concatenation, which makes elimination from the
    largest remaining word terminate.
    """
    remainder = x
    out = LinComb()
    while remainder:
        w = max(remainder.terms(), key=order.word_key)
        c = remainder.coeff(w)
        if len(_letters_of(w)) == 0:
            out = out + LinComb.term((), c)
            remainder = remainder - LinComb.term(w, c)
            continue
        factors = cfl_factorize(w, order)
        mult = 1
        for _, grp in itertools.groupby(factors, key=lambda f: _letters_of(f)):
            mult *= math.factorial(len(list(grp)))
        mono = tuple(sorted(factors, key=order.word_key))
        coeff = Fraction(c, mult) if not isinstance(c, Fraction) else c / mult
        out = out + LinComb.term(mono, coeff)
        remainder = remainder - _expand_monomial(mono) * coeff
        if remainder.coeff(w):
            raise AssertionError("radford elimination failed to make progress")
    return out


def radford_expand(poly: LinComb, empty=EMPTY) -> LinComb:
    """Inverse of `radford_decompose`: substitute shuffle products back in.

    `empty` is the weight-zero word used for the constant monomial ().
    """
    out = LinComb()
    for mono, c in poly:
        out = out + _expand_monomial(mono, empty) * c
    return out


def _expand_monomial(mono: Tuple, empty=EMPTY) -> LinComb:
    if not mono:
        return LinComb.term(empty)
    acc = LinComb.term(mono[0])
    for f in mono[1:]:
        acc = shuffle_comb(acc, LinComb.term(f))
    return acc
