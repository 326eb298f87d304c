"""The coaction side: exact depth-one values, the weight-window derivation
recursion, its depth-graded mod-3 shadow, and the computational verification
that the Broadhurst-basis-to-Lyndon-word matrix is triangular with unit
diagonal mod 3.

Two letter normalizations appear.  The theorem machinery uses the "naive"
letters (f_m realized by -Li_m(xi_3), g_1 by log 2), which is what makes the
diagonal entries equal to 1.  The decomposition module uses the parity
letters (a factor 2, plus sign conventions for the MZV(4) alphabet); both are
thin wrappers over the same exact depth-one coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .algebra import LinComb
from .bases import broadhurst_words, lyndon_fg_words, psi0
from .fwords import FLetter, fword_order_key
from .iterint import IterInt, rebase_to_zero, regularize, scale_to_one
from .words import EMPTY, Letter, ONE, Word, ZERO


class NeedsDecompositionError(ValueError):
    """A derivation window of depth >= 2 was hit and no exact base-value
    resolver was supplied."""


class Mod3Error(ArithmeticError):
    """A coefficient with denominator divisible by 3 appeared where the
    mod-3 reduction is asserted to exist."""


def mod3(q: Fraction) -> int:
    q = Fraction(q)
    if q.denominator % 3 == 0:
        raise Mod3Error(f"{q} has no reduction modulo 3")
    return (q.numerator * pow(q.denominator, -1, 3)) % 3


# ---------------------------------------------------------------------------
# Exact depth-one coordinates
# ---------------------------------------------------------------------------


def zeta_li3_coord(m: int) -> Fraction:
    """zeta(m) = c * Li_m(xi_3) mod Q(2 pi i)^m: c = (1+(-1)^(m-1)) 3^(m-1)/(1-3^(m-1))."""
    return Fraction((1 + (-1) ** (m - 1)) * 3 ** (m - 1), 1 - 3 ** (m - 1))


def zeta_li4_coord(m: int) -> Fraction:
    """zeta(m) in terms of Li_m(i) mod Q(2 pi i)^m (zero at even m)."""
    if m % 2 == 0:
        return Fraction(0)
    return 2 / (Fraction(4) ** (1 - m) - Fraction(2) ** (1 - m))


def li_coord(m: int, arg: Letter, family: str) -> Fraction:
    """Coefficient of Li_m(xi_3) (family B6) or Li_m(i) (family D4) in
    Li_m(arg) modulo Q(2 pi i)^m, for m >= 2 and arg a root of unity.

    Complex conjugation acts by (-1)^(m-1) modulo 2 pi i, which transfers the
    two stated reductions (zeta(m) and Li_m(xi_6)) to all of mu_6 resp. mu_4.
    """
    if m < 2:
        raise ValueError("li_coord handles weight >= 2 only")
    r = arg.reduced()
    conj_sign = (-1) ** (m - 1)
    if family == "B6":
        table = {
            Fraction(0): zeta_li3_coord(m),
            Fraction(1, 2): (Fraction(2) ** (1 - m) - 1) * zeta_li3_coord(m),
            Fraction(1, 3): Fraction(1),
            Fraction(2, 3): Fraction(conj_sign),
            Fraction(1, 6): Fraction(2) ** (1 - m) + (-1) ** m,
            Fraction(5, 6): conj_sign * (Fraction(2) ** (1 - m) + (-1) ** m),
        }
    elif family == "D4":
        table = {
            Fraction(0): zeta_li4_coord(m),
            Fraction(1, 2): (Fraction(2) ** (1 - m) - 1) * zeta_li4_coord(m),
            Fraction(1, 4): Fraction(1),
            Fraction(3, 4): Fraction(conj_sign),
        }
    else:
        raise ValueError(f"unknown family {family!r}")
    try:
        return table[r]
    except KeyError:
        raise ValueError(f"argument {arg} outside the {family} alphabet") from None


@dataclass(frozen=True)
class Weight1Value:
    """alpha*log2 + beta*log3 + q*i*pi, all coefficients exact rationals."""

    log2: Fraction = Fraction(0)
    log3: Fraction = Fraction(0)
    ipi: Fraction = Fraction(0)

    def __add__(self, o):
        return Weight1Value(self.log2 + o.log2, self.log3 + o.log3, self.ipi + o.ipi)

    def __neg__(self):
        return Weight1Value(-self.log2, -self.log3, -self.ipi)

    def __sub__(self, o):
        return self + (-o)


_ABS2_LOGS = {
    1: (Fraction(0), Fraction(0)),
    2: (Fraction(1, 2), Fraction(0)),
    3: (Fraction(0), Fraction(1, 2)),
    4: (Fraction(1), Fraction(0)),
}


def weight1_based(z: Letter, x: Letter) -> Weight1Value:
    """Exact regularized value of I(z, x, 0) for unit-circle z.

    I(z, x, 0) = I(1, x/z, 0) = log(1 - 1/y) with y = x/z, and for a root of
    unity u = 1/y = exp(2 pi i s): |1-u|^2 = 2 - 2 cos(2 pi s) in {1,2,3,4}
    and arg(1-u) = pi (s - 1/2).  Letters equal to an endpoint give 0 by the
    tangential prescription (log|z| = 0 on the circle).
    """
    if z.is_zero:
        raise ValueError("upper endpoint 0 is degenerate here")
    if x.is_zero or x == z:
        return Weight1Value()
    u = z.divide(x)  # 1/y = z/x
    s = u.reduced()
    abs2 = 2 - 2 * _cos_2pi(s)
    a, b = _ABS2_LOGS[int(abs2)]
    return Weight1Value(a, b, s - Fraction(1, 2))


def _cos_2pi(s: Fraction) -> Fraction:
    table = {
        Fraction(0): Fraction(1),
        Fraction(1, 6): Fraction(1, 2),
        Fraction(1, 4): Fraction(0),
        Fraction(1, 3): Fraction(-1, 2),
        Fraction(1, 2): Fraction(-1),
        Fraction(2, 3): Fraction(-1, 2),
        Fraction(3, 4): Fraction(0),
        Fraction(5, 6): Fraction(1, 2),
    }
    try:
        return table[s % 1]
    except KeyError:
        raise ValueError(f"no exact cosine for 2 pi * {s}") from None


def weight1_value(i: IterInt) -> Weight1Value:
    """Exact value of a weight-1 iterated integral between unit-circle or 0
    endpoints (path through 0: the two product splits are trivial)."""
    if i.weight != 1:
        raise ValueError("weight-1 integrals only")
    x = i.word[0]
    out = Weight1Value()
    if not i.upper.is_zero:
        out = out + weight1_based(i.upper, x)
    if not i.lower.is_zero:
        out = out - weight1_based(i.lower, x)
    return out


@dataclass(frozen=True)
class DepthGradedValue:
    """Depth-graded value of a depth <= 1 integral modulo (2 pi i)^m and
    products: the rational coefficient of Li_m(xi_3) resp. Li_m(i) for
    m >= 2, or the (log2, log3) pair at m = 1."""

    weight: int
    family: str
    li_coeff: Optional[Fraction] = None
    log2: Optional[Fraction] = None
    log3: Optional[Fraction] = None

    @property
    def modulus_class(self) -> int:
        return mod3(self.li_coeff)


def depth_one_value(i: IterInt, m: int, family: str = "B6") -> DepthGradedValue:
    """Exact depth-graded coordinate of a weight-m, depth <= 1 integral.

    Uses path concatenation and reversal; the product terms always contain a
    depth-0 factor which vanishes on the unit circle, so the two principal
    terms are exact at this level.
    """
    if i.weight != m:
        raise ValueError(f"integral has weight {i.weight}, letter weight {m}")
    if i.depth > 1:
        raise ValueError("depth_one_value handles depth <= 1 only")
    if m == 1:
        if i.depth == 0 or i.upper == i.lower:
            return DepthGradedValue(1, family, None, Fraction(0), Fraction(0))
        v = weight1_value(i)
        return DepthGradedValue(1, family, None, v.log2, v.log3)
    if i.depth == 0 or i.upper == i.lower:
        return DepthGradedValue(m, family, Fraction(0))
    coeff = _li_coeff_based(i, family)
    return DepthGradedValue(m, family, coeff)


def _li_coeff_based(i: IterInt, family: str) -> Fraction:
    """Li-coordinate of I(b, w, a) via I(b,w,0) + (-1)^m I(a, w~, 0)."""
    m = i.weight
    total = Fraction(0)
    pieces = []
    if not i.upper.is_zero:
        pieces.append((1, IterInt(i.upper, i.word, ZERO)))
    if not i.lower.is_zero:
        pieces.append(((-1) ** m, IterInt(i.lower, i.word.reverse(), ZERO)))
    for sign, j in pieces:
        for reg, c in regularize(j):
            if reg.depth == 0:
                continue
            # regular depth-1 word based at 0 is forced to be 0^{m-1} x
            x = reg.word[-1]
            arg = reg.upper.divide(x)  # value is -Li_m(upper/x)
            total += sign * c * (-li_coord(m, arg, family))
    return total


# ---------------------------------------------------------------------------
# Letter coordinates of depth-one windows, in both normalizations
# ---------------------------------------------------------------------------


def window_coordinate(
    i: IterInt,
    x: FLetter,
    normalization: str = "naive",
    resolver: Optional[Callable[[IterInt, FLetter], Fraction]] = None,
) -> Fraction:
    """The x-coordinate of the f-alphabet image of a weight-matching window
    integral.  Depth 0 gives 0; depth 1 is exact; deeper windows require a
    resolver (supplied by the decomposition module)."""
    m = x.weight
    family = "B6" if x.alphabet == "6" else "D4"
    if i.upper == i.lower:
        return Fraction(0)
    if i.depth > 1:
        if resolver is None:
            raise NeedsDecompositionError(
                f"window {i} has depth {i.depth}; exact decomposition needed"
            )
        return resolver(i, x)
    v = depth_one_value(i, m, family)
    if m == 1:
        if family == "D4":
            # rho(f4_1) = 2 Re Li_1(i) = -log 2
            c = -v.log2
            return c if normalization == "parity" else 2 * c
        if x.family == "g6":
            # naive g1 = log 2, parity g1 = 2 log 2
            return v.log2 if normalization == "naive" else v.log2 / 2
        # naive f1 = -Li_1(xi_3) with real part log(3)/2; parity f1 = log 3
        return 2 * v.log3 if normalization == "naive" else v.log3
    c = v.li_coeff
    if family == "D4":
        # Li_m(i) is congruent to +rho(f4_m)/2
        return c if normalization == "naive" else c / 2
    # Li_m(xi_3) is congruent to -f_m (naive) resp. -rho(f6_m)/2 (parity)
    return -c if normalization == "naive" else -c / 2


# ---------------------------------------------------------------------------
# The derivation recursion
# ---------------------------------------------------------------------------


def _window(i: IterInt, k: int, m: int) -> Tuple[IterInt, IterInt]:
    """Window k of width m in I(a_{n+1}, a_n...a_1, a_0): returns the window
    integral I(a_{k+m+1}, a_{k+m}..a_{k+1}, a_k) and the remaining integral
    with the window letters removed."""
    n = i.weight
    ls = i.word.letters
    left = i.upper if k + m == n else ls[n - k - m - 1]
    right = i.lower if k == 0 else ls[n - k]
    wnd = Word(ls[n - k - m : n - k])
    rest = Word(ls[: n - k - m] + ls[n - k :])
    if left == right and wnd.weight:
        window = None  # zero-length path: the window integral vanishes
    else:
        window = IterInt(left, wnd, right)
    return window, IterInt(i.upper, rest, i.lower)


def delta(
    x: FLetter,
    i: IterInt,
    resolver: Optional[Callable[[IterInt, FLetter], Fraction]] = None,
    normalization: str = "naive",
) -> LinComb:
    """Eq-style weight-window recursion: delta_x I as an exact rational
    combination of iterated integrals of weight weight(i) - weight(x).

    Returns 0 when the integral's weight is below the letter weight.  Windows
    of depth >= 2 need exact base values: without a resolver they raise
    NeedsDecompositionError (they are never needed for the mod-3 theorem).
    """
    m = x.weight
    n = i.weight
    if n < m:
        return LinComb()
    out = LinComb()
    for k in range(n - m + 1):
        window, rest = _window(i, k, m)
        if window is None:
            continue
        c = window_coordinate(window, x, normalization, resolver)
        if c:
            out = out + LinComb.term(rest, c)
    return out


def delta_mod3(x: FLetter, i: IterInt) -> LinComb:
    """delta_x modulo lower depth modulo 3 on I(1, w, 0).

    Keeps exactly the depth-1 windows (their removal preserves the depth
    count), reduces the exact window coordinates mod 3, and drops output
    terms whose word is a nonempty string of zeros.  Coefficients are ints
    in {1, 2}; a coordinate with denominator divisible by 3 is a hard error.
    """
    if i.lower != ZERO or i.upper != ONE:
        raise ValueError("delta_mod3 expects integrals of the form I(1, w, 0)")
    m = x.weight
    n = i.weight
    if n < m:
        return LinComb()
    out = LinComb()
    for k in range(n - m + 1):
        window, rest = _window(i, k, m)
        if window is None or window.depth != 1:
            continue
        c = mod3(window_coordinate(window, x, "naive"))
        if not c:
            continue
        if rest.weight and rest.depth == 0:
            continue  # I(1, 0^k, 0) = 0
        out = out + LinComb.term(rest, c)
    return out.map_coeffs(lambda v: v % 3)


# ---------------------------------------------------------------------------
# Theorem verification
# ---------------------------------------------------------------------------


@dataclass
class DepthBlock:
    depth: int
    rows: List[Word]  # Broadhurst words, sorted
    cols: List[Tuple[FLetter, ...]]  # Lyndon f,g words, sorted
    matrix: List[List[int]]  # entries in Z/3


@dataclass
class TriangularityReport:
    weight: int
    blocks: List[DepthBlock]
    cross_block_violations: List[Tuple[Word, Tuple[FLetter, ...], int]]
    violations: List[str]

    @property
    def ok(self) -> bool:
        return not self.violations and not self.cross_block_violations

    @property
    def diagnosis(self) -> str:
        if self.ok:
            return "triangular_unit_diagonal"
        bad = self.violations + [str(v) for v in self.cross_block_violations]
        return "violation(" + "; ".join(map(str, bad)) + ")"


def coefficient_on_lyndon_word(w: Word, v: Tuple[FLetter, ...]) -> int:
    """Entry of the mod-3 depth-graded matrix: apply delta_mod3 along the
    letters of v (leftmost first) to I(1, w, 0) and read off the coefficient
    of the empty integral."""
    state = LinComb.term(IterInt(ONE, w, ZERO))
    for letter in v:
        nxt = LinComb()
        for term, c in state:
            nxt = nxt + delta_mod3(letter, term) * c
        state = nxt.map_coeffs(lambda q: q % 3)
        if not state:
            return 0
    return state.coeff(IterInt(ONE, EMPTY, ZERO)) % 3


def verify_theorem(n: int) -> TriangularityReport:
    """Build the depth-graded mod-3 matrix of the decomposition map at weight
    n over the Broadhurst words, aligned with Lyndon f,g words through the
    naive letter-substitution map, and check block triangularity with unit
    diagonal."""
    if n < 1:
        raise ValueError("weight must be >= 1")
    rows_all = broadhurst_words(n)
    cols_all = lyndon_fg_words(n)
    blocks: List[DepthBlock] = []
    violations: List[str] = []
    cross: List[Tuple[Word, Tuple[FLetter, ...], int]] = []

    depths = sorted({w.depth for w in rows_all})
    for d in depths:
        rows = [w for w in rows_all if w.depth == d]
        cols = [v for v in cols_all if len(v) == d]
        if [psi0(w) for w in rows] != cols:
            violations.append(f"psi0 misaligns depth-{d} block")
            continue
        matrix = [[coefficient_on_lyndon_word(w, v) for v in cols] for w in rows]
        for ri, w in enumerate(rows):
            for ci, v in enumerate(cols):
                e = matrix[ri][ci]
                if ci == ri and e != 1:
                    violations.append(f"diagonal entry {e} != 1 at {w} / {'.'.join(map(str, v))}")
                if ci > ri and e:
                    violations.append(f"entry {e} above diagonal at {w} / {'.'.join(map(str, v))}")
        blocks.append(DepthBlock(d, rows, cols, matrix))

    # the map cannot raise the coradical depth above the word depth; check
    # that applying it across blocks gives nothing (lower depth is discarded
    # by construction, higher must vanish)
    for w in rows_all:
        for v in cols_all:
            if len(v) > w.depth:
                e = coefficient_on_lyndon_word(w, v)
                if e:
                    cross.append((w, v, e))
    return TriangularityReport(n, blocks, cross, violations)
