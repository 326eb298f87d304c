"""Basis enumeration: the Broadhurst basis of MZV(6), a Lyndon-word Deligne
basis for MZV(4), the naive letter-substitution map psi0, and the f-alphabet
letter counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

from .fwords import FLetter, FWord, G1, f4, f6, fword_order_key
from .iterint import IterInt
from .words import (
    EMPTY,
    LetterOrder,
    ONE,
    ORDER_X4,
    ORDER_X6,
    Word,
    XI2,
    XI3SQ,
    XI4,
    ZERO,
    is_lyndon,
    lyndon_words,
)


@dataclass(frozen=True)
class BasisElement:
    integral: Optional[IterInt]  # None encodes the distinguished atom 2*pi*i
    weight: int
    depth: int
    family: str  # "B6" or "D4"

    @property
    def is_two_pi_i(self) -> bool:
        return self.integral is None

    def __str__(self):
        return "2pii" if self.is_two_pi_i else str(self.integral)

    __repr__ = __str__


def no_zero_xi2(letters: Tuple) -> bool:
    """True iff the word has no adjacent 0 xi2 pair."""
    return all(
        not (a.is_zero and b == XI2) for a, b in zip(letters, letters[1:])
    )


def broadhurst_words(n: int) -> List[Word]:
    """Lyndon words in 0 < xi3^2 < xi2 of weight n with no 0 xi2 subsequence,
    ascending.  Weight-1 words are xi3^2 and xi2 (the word 0 is excluded)."""
    ws = lyndon_words([(ZERO, 1), (XI3SQ, 1), (XI2, 1)], n, ORDER_X6, no_zero_xi2)
    return [w for w in ws if w.depth > 0]


def broadhurst_basis(n: int) -> List[BasisElement]:
    """The weight-n Broadhurst elements; at n = 1 the atom 2*pi*i comes first."""
    if n < 1:
        raise ValueError("weight must be >= 1")
    out = []
    if n == 1:
        out.append(BasisElement(None, 1, 0, "B6"))
    for w in broadhurst_words(n):
        out.append(BasisElement(IterInt(ONE, w, ZERO), n, w.depth, "B6"))
    return out


def deligne4_words(n: int) -> List[Word]:
    """Lyndon words over 0 < xi4 of weight n (the word 0 itself excluded)."""
    ws = lyndon_words([(ZERO, 1), (XI4, 1)], n, ORDER_X4)
    return [w for w in ws if w.depth > 0]


def deligne4_basis(n: int) -> List[BasisElement]:
    if n < 1:
        raise ValueError("weight must be >= 1")
    out = []
    if n == 1:
        out.append(BasisElement(None, 1, 0, "D4"))
    for w in deligne4_words(n):
        out.append(BasisElement(IterInt(ONE, w, ZERO), n, w.depth, "D4"))
    return out


class Psi0DomainError(ValueError):
    pass


def psi0(w: Word) -> Tuple[FLetter, ...]:
    """The naive map: u xi2 v -> psi0(u) g1 psi0(v) and
    u 0^{n-1} xi3^2 v -> psi0(u) f_n psi0(v); defined exactly on words with
    no 0 xi2 subsequence and no trailing zero."""
    out: List[FLetter] = []
    run = 0
    for a in w.letters:
        if a.is_zero:
            run += 1
        elif a == XI3SQ:
            out.append(f6(run + 1))
            run = 0
        elif a == XI2:
            if run:
                raise Psi0DomainError(f"psi0 undefined: 0 xi2 subsequence in {w}")
            out.append(G1)
        else:
            raise Psi0DomainError(f"psi0 undefined on letter {a}")
    if run:
        raise Psi0DomainError(f"psi0 undefined: {w} ends in 0")
    return tuple(out)


def fg_alphabet(max_weight: int) -> List[Tuple[FLetter, int]]:
    """The weighted f,g alphabet for MZV(6) up to a weight bound."""
    letters: List[Tuple[FLetter, int]] = [(G1, 1), (f6(1), 1)]
    letters += [(f6(m), m) for m in range(2, max_weight + 1)]
    return letters


def f4_alphabet(max_weight: int) -> List[Tuple[FLetter, int]]:
    return [(f4(m), m) for m in range(1, max_weight + 1)]


def fg_letter_order(max_weight: int) -> LetterOrder:
    ordered = sorted((l for l, _ in fg_alphabet(max_weight)), key=FLetter.order_key)
    return LetterOrder(ordered)


def lyndon_fg_words(n: int) -> List[Tuple[FLetter, ...]]:
    """Lyndon words of total weight n in the f,g alphabet, ascending."""
    order = fg_letter_order(n)
    return lyndon_words(fg_alphabet(n), n, order)


def psi0_order_check(n: int) -> bool:
    """psi0 restricted to weight-n Broadhurst words is an order-preserving
    bijection onto weight-n Lyndon f,g words (checked by dual enumeration)."""
    images = [psi0(w) for w in broadhurst_words(n)]
    targets = lyndon_fg_words(n)
    if images != targets:
        return False
    keys = [fword_order_key(t) for t in images]
    return keys == sorted(keys)


def generator_count(N: int, n: int) -> int:
    """Number of weight-n letters in the f alphabet of motivic MZV(N)."""
    if n < 1:
        raise ValueError("weight must be >= 1")
    if N == 1:
        return 1 if (n % 2 and n >= 3) else 0
    if N == 2:
        return 1 if (n == 1 or n % 2) else 0
    if N in (4, 6):
        phi_half = {4: 1, 6: 1}[N]
        nu = {4: 1, 6: 2}[N]
        return phi_half + nu - 1 if n == 1 else phi_half
    raise ValueError(f"unsupported N = {N}")


def log3_free_class(w: Word) -> Optional[str]:
    """Syntactic classifier for words over {0, xi2, xi3^2} whose integral
    I(1,w,0) is free of the letter log 3: returns "a", "b", "c" or None.

    (a) no xi3^2; (b) a single xi3^2, no xi2, weight >= 2; (c) the word
    neither begins nor ends in xi3^2 and deleting zeros leaves xi3^2 xi2..xi2,
    xi2..xi2 xi3^2, or xi3^2 xi2..xi2 xi3^2.
    """
    ls = w.letters
    if any(a not in (ZERO, XI2, XI3SQ) for a in ls):
        raise ValueError("classifier expects letters 0, xi2, xi3^2")
    n_x3 = sum(1 for a in ls if a == XI3SQ)
    n_x2 = sum(1 for a in ls if a == XI2)
    if n_x3 == 0:
        return "a"
    if n_x3 == 1 and n_x2 == 0 and w.weight >= 2:
        return "b"
    if ls and ls[0] != XI3SQ and ls[-1] != XI3SQ:
        core = tuple(a for a in ls if not a.is_zero)
        if core and n_x2 == len(core) - n_x3 and n_x2 >= 1:
            if n_x3 == 1 and core[0] == XI3SQ and all(a == XI2 for a in core[1:]):
                return "c"
            if n_x3 == 1 and core[-1] == XI3SQ and all(a == XI2 for a in core[:-1]):
                return "c"
            if (
                n_x3 == 2
                and core[0] == XI3SQ
                and core[-1] == XI3SQ
                and all(a == XI2 for a in core[1:-1])
            ):
                return "c"
    return None
