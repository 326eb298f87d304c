"""The f-alphabet: graded letters, words with pi powers, and expressions.

Two alphabet families occur and never mix inside a word:
  * family "6" (MZV(6)): letters g6_1 and f6_n, n >= 1;
  * family "4" (MZV(4)): letters f4_n, n >= 1.

The letter order is g1 > f1 > f2 > f3 > ..., i.e. heavier f letters are
smaller; words compare lexicographically.  FWord.pi_power counts literal
powers of pi (always even in shipped data).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Tuple


@dataclass(frozen=True)
class FLetter:
    family: str  # "f6", "g6" or "f4"
    weight: int

    def __post_init__(self):
        if self.family not in ("f6", "g6", "f4"):
            raise ValueError(f"unknown f-alphabet family {self.family!r}")
        if self.weight < 1 or (self.family == "g6" and self.weight != 1):
            raise ValueError(f"no such letter: {self.family} at weight {self.weight}")

    @property
    def alphabet(self) -> str:
        """"6" or "4": which MZV extension the letter belongs to."""
        return "6" if self.family in ("f6", "g6") else "4"

    def order_key(self) -> Tuple[int, int]:
        # ascending: ... f3 < f2 < f1 < g1
        return (-self.weight, 1 if self.family == "g6" else 0)

    def parity(self) -> int:
        """Sign of complex conjugation on the letter's realization:
        odd-weight f letters and g1 are real (+1), even-weight f letters are
        imaginary (-1)."""
        if self.family == "g6":
            return 1
        return 1 if self.weight % 2 else -1

    def __str__(self):
        return ("g" if self.family == "g6" else "f") + f"{4 if self.family == 'f4' else 6}_{self.weight}"

    __repr__ = __str__


def f6(n: int) -> FLetter:
    return FLetter("f6", n)


def f4(n: int) -> FLetter:
    return FLetter("f4", n)


G1 = FLetter("g6", 1)


@dataclass(frozen=True)
class FWord:
    """A word in one alphabet family with an attached power of pi."""

    letters: Tuple[FLetter, ...]
    pi_power: int = 0

    def __post_init__(self):
        if self.pi_power < 0:
            raise ValueError("negative pi power")
        families = {l.alphabet for l in self.letters}
        if len(families) > 1:
            raise ValueError("the two alphabets MZV(4) and MZV(6) do not mix")

    @property
    def weight(self) -> int:
        return sum(l.weight for l in self.letters) + self.pi_power

    @property
    def coradical_depth(self) -> int:
        return len(self.letters)

    @property
    def alphabet(self) -> str:
        return self.letters[0].alphabet if self.letters else ""

    def order_key(self):
        return (
            self.pi_power,
            len(self.letters),
            0 if self.alphabet in ("6", "") else 1,
            tuple(l.order_key() for l in self.letters),
        )

    def suffixes(self):
        """Right factors, pi power carried wholly to the right slot."""
        return [FWord(self.letters[i:], self.pi_power) for i in range(len(self.letters) + 1)]

    def __str__(self):
        bits = [str(l) for l in self.letters]
        if self.pi_power == 1:
            bits.append("pi")
        elif self.pi_power:
            bits.append(f"pi^{self.pi_power}")
        return ".".join(bits) if bits else "1"

    __repr__ = __str__


def fword_order_key(w) -> tuple:
    """Lexicographic key for plain f-letter tuples (ascending order)."""
    letters = w.letters if isinstance(w, FWord) else tuple(w)
    return tuple(l.order_key() for l in letters)


@dataclass
class FExpr:
    """An image in the f alphabet: a rational combination of coordinates
    (word, j), where j grades by powers of (2 pi i).

    The pure tail in Q[2 pi i] sits at the empty-word coordinates ((), j).
    Coordinates are kept over Q with explicit (2 pi i) powers because odd
    powers of 2 pi i are not rational multiples of pi powers.
    """

    family: str
    coords: dict = field(default_factory=dict)  # (letters tuple, j) -> Fraction

    def coeff(self, letters: Tuple[FLetter, ...], j: int = 0) -> Fraction:
        return self.coords.get((tuple(letters), j), Fraction(0))

    def tail(self, n: int) -> Fraction:
        """Coefficient of (2 pi i)^n."""
        return self.coords.get(((), n), Fraction(0))

    def weights(self):
        return sorted(
            {sum(l.weight for l in ls) + j for (ls, j) in self.coords}
        )

    def weight_slice(self, n: int) -> "FExpr":
        return FExpr(
            self.family,
            {
                (ls, j): c
                for (ls, j), c in self.coords.items()
                if sum(l.weight for l in ls) + j == n
            },
        )

    def items_sorted(self):
        return sorted(
            self.coords.items(),
            key=lambda kv: (kv[0][1], len(kv[0][0]), fword_order_key(kv[0][0])),
        )

    def __str__(self):
        bits = []
        for (ls, j), c in self.items_sorted():
            word = ".".join(str(l) for l in ls) if ls else "1"
            pi = f".(2pii)^{j}" if j else ""
            bits.append(f"({c})*{word}{pi}")
        return " + ".join(bits) if bits else "0"
