"""Exact coefficient arithmetic: rationals, the quadratic ring Q(1/(i*sqrt3)),
and formal linear combinations.

Rationals are `fractions.Fraction` (always reduced, positive denominator).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, Tuple


def frac(x, y=None) -> Fraction:
    """Shorthand Fraction constructor that also accepts strings like '-3/2'."""
    if y is not None:
        return Fraction(x, y)
    return Fraction(x)


@dataclass(frozen=True)
class QSqrtM3:
    """Element a + b*u of Q(u) with u = 1/(i*sqrt(3)), so u**2 = -1/3.

    This is the coefficient ring needed for the g-2 series, where even-weight
    letters come divided by i*sqrt(3).
    """

    a: Fraction
    b: Fraction = Fraction(0)

    @staticmethod
    def of(a, b=0) -> "QSqrtM3":
        return QSqrtM3(Fraction(a), Fraction(b))

    def __add__(self, other: "QSqrtM3") -> "QSqrtM3":
        other = _coerce(other)
        return QSqrtM3(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self) -> "QSqrtM3":
        return QSqrtM3(-self.a, -self.b)

    def __sub__(self, other: "QSqrtM3") -> "QSqrtM3":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "QSqrtM3":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "QSqrtM3":
        other = _coerce(other)
        # (a + b u)(c + d u) = ac - bd/3 + (ad + bc) u
        return QSqrtM3(
            self.a * other.a - self.b * other.b / 3,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QSqrtM3":
        other = _coerce(other)
        # 1/(c + d u) = (c - d u)/(c^2 + d^2/3)
        n = other.a * other.a + other.b * other.b / 3
        if n == 0:
            raise ZeroDivisionError("division by zero in QSqrtM3")
        return self * QSqrtM3(other.a / n, -other.b / n)

    def conjugate(self) -> "QSqrtM3":
        """Complex conjugation (u is purely imaginary)."""
        return QSqrtM3(self.a, -self.b)

    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}/isqrt3"
        return f"{self.a}+{self.b}/isqrt3"


def _coerce(x) -> QSqrtM3:
    if isinstance(x, QSqrtM3):
        return x
    if isinstance(x, (int, Fraction)):
        return QSqrtM3(Fraction(x))
    raise TypeError(f"cannot coerce {x!r} into QSqrtM3")


class LinComb:
    """Finite formal sum of hashable terms with exact coefficients.

    Zero coefficients are never stored.  Coefficients may be int, Fraction or
    QSqrtM3; mixing int/Fraction is fine, promotion to QSqrtM3 is explicit via
    `map_coeffs`.  Instances are treated as immutable.
    """

    __slots__ = ("_d",)

    def __init__(self, data: Dict | Iterable[Tuple[object, object]] = ()):
        d = {}
        items = data.items() if isinstance(data, dict) else data
        for t, c in items:
            if c:
                c0 = d.get(t)
                c1 = c if c0 is None else c0 + c
                if c1:
                    d[t] = c1
                elif t in d:
                    del d[t]
        self._d = d

    @staticmethod
    def term(t, c=1) -> "LinComb":
        return LinComb([(t, c)])

    @staticmethod
    def zero() -> "LinComb":
        return LinComb()

    def coeff(self, t):
        return self._d.get(t, 0)

    def __iter__(self) -> Iterator[Tuple[object, object]]:
        return iter(self._d.items())

    def items_sorted(self, key: Callable = None):
        return sorted(self._d.items(), key=(lambda tc: key(tc[0])) if key else None)

    def terms(self):
        return self._d.keys()

    def __len__(self) -> int:
        return len(self._d)

    def __bool__(self) -> bool:
        return bool(self._d)

    def __eq__(self, other) -> bool:
        return isinstance(other, LinComb) and self._d == other._d

    def __hash__(self):
        return hash(frozenset(self._d.items()))

    def __add__(self, other: "LinComb") -> "LinComb":
        if not other:
            return self
        d = dict(self._d)
        for t, c in other._d.items():
            c1 = d.get(t, 0) + c
            if c1:
                d[t] = c1
            elif t in d:
                del d[t]
        out = LinComb.__new__(LinComb)
        out._d = d
        return out

    def __neg__(self) -> "LinComb":
        out = LinComb.__new__(LinComb)
        out._d = {t: -c for t, c in self._d.items()}
        return out

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-other)

    def __mul__(self, scalar) -> "LinComb":
        if not scalar:
            return LinComb()
        out = LinComb.__new__(LinComb)
        out._d = {t: c * scalar for t, c in self._d.items()}
        return out

    __rmul__ = __mul__

    def map_terms(self, f: Callable[[object], "LinComb"]) -> "LinComb":
        """Linear extension of a term-level map t -> LinComb."""
        out = LinComb()
        for t, c in self._d.items():
            out = out + f(t) * c
        return out

    def map_coeffs(self, f: Callable) -> "LinComb":
        return LinComb([(t, f(c)) for t, c in self._d.items()])

    def __repr__(self) -> str:
        if not self._d:
            return "0"
        bits = []
        for t, c in self.items_sorted(key=lambda t: repr(t)):
            bits.append(f"({c})*{t!r}")
        return " + ".join(bits)
