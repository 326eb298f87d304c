"""Weight-graded decomposition of iterated integrals into the f alphabet,
relative to the Broadhurst basis (MZV(6)) or the Lyndon-word Deligne basis
(MZV(4)), together with its inverse on f-words and identity verification.

Construction, per weight n up to the cap:

* coordinates are pairs (f-word, j) graded by powers of (2 pi i);
* all coordinates whose leading letter has weight < n come from the exact
  window recursion (depth-one windows are exact rationals, deeper windows
  recurse through lower weights);
* the two primitive coordinates of each basis generator - the new letter
  f_n and (2 pi i)^n - are pinned as follows: the depth-one generator
  0^{n-1} x carries the parity normalization of the letter itself (its tail
  is fixed by numerical subtraction and rationalized), and the remaining
  generators are pinned by the complex-conjugation parity of the alphabet,
  which yields an exact linear system once the conjugated generators are
  expanded over the basis monomials;
* every numerically rationalized entry is stored with provenance and
  re-verified against a high-precision residual.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from mpmath import mp, mpc

from .algebra import LinComb
from .bases import broadhurst_words, deligne4_words
from .coaction import window_coordinate, weight1_value
from .fwords import FExpr, FLetter, G1, f4, f6, fword_order_key
from .iterint import IterInt, rebase_to_zero, regularize, scale_to_one
from .linsolve import solve_affine
from .numerics import eval_iterint, fletter_value, rationalize
from .words import EMPTY, Letter, ONE, Word, ZERO, _shuffle_tuples

Coords = Dict[Tuple[Tuple[FLetter, ...], int], Fraction]

PI_ATOM = "2pii"  # monomial-key entry for the 2 pi i generator


class DecompositionError(ValueError):
    pass


def coords_add(a: Coords, b: Coords, scale: Fraction = Fraction(1)) -> Coords:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, Fraction(0)) + v * scale
        if s:
            out[k] = s
        elif k in out:
            del out[k]
    return out


def coords_mul(a: Coords, b: Coords) -> Coords:
    """Shuffle product on words, addition on (2 pi i) powers."""
    out: Coords = {}
    for (la, ja), ca in a.items():
        for (lb, jb), cb in b.items():
            for letters, mult in _shuffle_tuples(la, lb):
                k = (letters, ja + jb)
                s = out.get(k, Fraction(0)) + ca * cb * mult
                if s:
                    out[k] = s
                elif k in out:
                    del out[k]
    return out


def coords_weight(coords: Coords) -> Optional[int]:
    ws = {sum(l.weight for l in ls) + j for (ls, j) in coords}
    if not ws:
        return None
    if len(ws) > 1:
        raise DecompositionError(f"inhomogeneous coordinates: weights {sorted(ws)}")
    return ws.pop()


def parity_sign(ls: Tuple[FLetter, ...], j: int) -> int:
    """Complex conjugation on the realization: even-weight letters and odd
    (2 pi i) powers flip sign."""
    s = (-1) ** j
    for l in ls:
        s *= l.parity()
    return s


@dataclass
class FamilySpec:
    name: str  # "B6" or "D4"

    def gen_words(self, n: int) -> List[Word]:
        return broadhurst_words(n) if self.name == "B6" else deligne4_words(n)

    def letters(self, m: int) -> List[FLetter]:
        if self.name == "B6":
            return [f6(1), G1] if m == 1 else [f6(m)]
        return [f4(m)]

    def new_letter(self, n: int) -> FLetter:
        return f6(n) if self.name == "B6" else f4(n)


@dataclass
class GenRecord:
    word: Word
    coords: Coords
    provenance: str


class Decomposer:
    """Builds and applies the decomposition table for one alphabet family.

    Weight cap W defaults to 4 (configurable up to 5); `digits` is the
    working precision for the numeric pinning steps.
    """

    def __init__(self, family: str = "B6", W: int = 4, digits: int = 120):
        if family not in ("B6", "D4"):
            raise ValueError(f"unknown family {family!r}")
        if W > 5:
            raise ValueError("weight cap above 5 is out of scope")
        self.spec = FamilySpec(family)
        self.family = family
        self.W = W
        self.digits = digits
        self.gens: Dict[Word, GenRecord] = {}
        self._built = 0
        self._word_cache: Dict[Word, Coords] = {}
        self._mono_rows: Dict[tuple, Coords] = {}
        self._values: Dict[object, mpc] = {}

    # -- values ------------------------------------------------------------

    def value_of_genkey(self, key) -> mpc:
        v = self._values.get(key)
        if v is None:
            with mp.workdps(self.digits + 10):
                if key == PI_ATOM:
                    v = 2j * mp.pi
                else:
                    v = eval_iterint(IterInt(ONE, key, ZERO), self.digits)
            self._values[key] = v
        return v

    def value_of_monomial(self, mono: tuple) -> mpc:
        v = self._values.get(mono)
        if v is None:
            with mp.workdps(self.digits + 10):
                acc = mp.mpc(1)
                for k in mono:
                    acc *= self.value_of_genkey(k)
                v = +acc
            self._values[mono] = v
        return v

    # -- monomials ----------------------------------------------------------

    def monomials(self, n: int) -> List[tuple]:
        """Multisets of generators (including the 2 pi i atom) of total
        weight n, as sorted key tuples."""
        gens: List[Tuple[object, int]] = [(PI_ATOM, 1)]
        for m in range(1, n + 1):
            gens += [(w, m) for w in self.spec.gen_words(m)]
        out: List[tuple] = []

        def grow(prefix: tuple, start: int, remaining: int):
            if remaining == 0:
                out.append(prefix)
                return
            for idx in range(start, len(gens)):
                key, wt = gens[idx]
                if wt <= remaining:
                    grow(prefix + (key,), idx, remaining - wt)

        grow((), 0, n)
        return out

    def row_of_monomial(self, mono: tuple) -> Coords:
        row = self._mono_rows.get(mono)
        if row is not None:
            return row
        if len(mono) == 1:
            row = dict(self._gen_row(mono[0]))
        else:
            row = self._gen_row(mono[0])
            for k in mono[1:]:
                row = coords_mul(row, self._gen_row(k))
        self._mono_rows[mono] = row
        return row

    def _gen_row(self, key) -> Coords:
        if key == PI_ATOM:
            return {((), 1): Fraction(1)}
        rec = self.gens.get(key)
        if rec is None:
            raise DecompositionError(f"generator {key} not built yet")
        return rec.coords

    # -- derivation part ----------------------------------------------------

    def derivation_coords(self, word: Word) -> Coords:
        """All coordinates whose leading letter has weight < weight(word),
        through the exact window recursion."""
        n = word.weight
        i = IterInt(ONE, word, ZERO)
        out: Coords = {}
        for m in range(1, n):
            for x in self.spec.letters(m):
                dx = self._delta(x, i)
                if not dx:
                    continue
                img = self.image_of_lincomb(dx)
                for (ls, j), c in img.items():
                    k = ((x,) + ls, j)
                    s = out.get(k, Fraction(0)) + c
                    if s:
                        out[k] = s
                    elif k in out:
                        del out[k]
        return out

    def _delta(self, x: FLetter, i: IterInt) -> LinComb:
        from .coaction import delta

        return delta(x, i, resolver=self._deep_resolver, normalization="parity")

    def _deep_resolver(self, window: IterInt, x: FLetter) -> Fraction:
        """Parity x-coordinate of a depth >= 2 window of weight < current:
        the product terms of the path splitting carry no single-letter
        coordinate, so only the two principal terms contribute."""
        m = window.weight
        total = Fraction(0)
        pieces = []
        if not window.upper.is_zero:
            pieces.append((1, IterInt(window.upper, window.word, ZERO)))
        if not window.lower.is_zero:
            pieces.append(
                ((-1) ** m, IterInt(window.lower, window.word.reverse(), ZERO))
            )
        for sign, j in pieces:
            img = self._image_of_based(j)
            total += sign * img.get(((x,), 0), Fraction(0))
        return total

    # -- images -------------------------------------------------------------

    def image_of_word(self, word: Word) -> Coords:
        """psi-image of the regular integral I(1, word, 0)."""
        cached = self._word_cache.get(word)
        if cached is not None:
            return cached
        n = word.weight
        if n == 0:
            return {((), 0): Fraction(1)}
        if n > self.W:
            raise DecompositionError(f"weight {n} above the cap W = {self.W}")
        self.ensure_built(n)
        rec = self.gens.get(word)
        if rec is not None:
            return rec.coords
        if n == 1:
            out = self._weight1_image(word)
        else:
            dcoords = self.derivation_coords(word)
            value = eval_iterint(IterInt(ONE, word, ZERO), self.digits)
            lam = self._lambda_fit(dcoords, value, n, context=str(word))
            out = {}
            for mono, c in lam.items():
                if c:
                    out = coords_add(out, self.row_of_monomial(mono), c)
        self._word_cache[word] = out
        return out

    def _weight1_image(self, word: Word) -> Coords:
        v = weight1_value(IterInt(ONE, word, ZERO))
        out: Coords = {}
        if self.family == "B6":
            if v.log2:
                out[((G1,), 0)] = v.log2 / 2
            if v.log3:
                out[((f6(1),), 0)] = v.log3
        else:
            if v.log3:
                raise DecompositionError("log 3 cannot appear in the MZV(4) family")
            if v.log2:
                out[((f4(1),), 0)] = -v.log2
        if v.ipi:
            out[((), 1)] = v.ipi / 2
        return out

    def _image_of_based(self, i: IterInt) -> Coords:
        """Image of a 0-based integral: regularize, rescale to upper 1."""
        out: Coords = {}
        for j, c in regularize(i):
            out = coords_add(out, self.image_of_word(scale_to_one(j).word), Fraction(c))
        return out

    def image_of_iterint(self, i: IterInt) -> Coords:
        if i.upper == i.lower:
            return {((), 0): Fraction(1)} if i.weight == 0 else {}
        principal, ledger = rebase_to_zero(i)
        out: Coords = {}
        for j, c in principal:
            out = coords_add(out, self._image_of_based(j), Fraction(c))
        for sign, left, right in ledger:
            prod = coords_mul(self._image_of_based(left), self._image_of_based(right))
            out = coords_add(out, prod, Fraction(sign))
        return out

    def image_of_lincomb(self, comb: LinComb) -> Coords:
        out: Coords = {}
        for i, c in comb:
            out = coords_add(out, self.image_of_iterint(i), Fraction(c))
        return out

    # -- the solver ---------------------------------------------------------

    def _primitive_keys(self, n: int):
        return (((self.spec.new_letter(n),), 0), ((), n))

    def _lambda_fit(
        self,
        dcoords: Coords,
        value: mpc,
        n: int,
        context: str = "",
        monos: Optional[List[tuple]] = None,
        rows: Optional[Dict[tuple, Coords]] = None,
    ) -> Dict[tuple, Fraction]:
        """Exact expansion over weight-n basis monomials of the element with
        the given derivation coordinates and numerical value.

        The derivation coordinates determine the expansion up to the
        two-dimensional primitive ambiguity; the complex value pins the two
        remaining rational parameters, which are rationalized and re-verified.
        """
        monos = monos if monos is not None else self.monomials(n)
        rows = rows or {mono: self.row_of_monomial(mono) for mono in monos}
        prim = set(self._primitive_keys(n))
        cols = sorted(
            {k for row in rows.values() for k in row if k not in prim}
            | {k for k in dcoords if k not in prim},
            key=lambda k: (k[1], len(k[0]), fword_order_key(k[0])),
        )
        a = [[rows[mono].get(col, Fraction(0)) for mono in monos] for col in cols]
        b = [dcoords.get(col, Fraction(0)) for col in cols]
        sol = solve_affine(a, b)
        if sol is None:
            raise DecompositionError(f"derivation system inconsistent for {context}")
        part, null = sol
        if len(null) != 2:
            raise DecompositionError(
                f"expected 2-dimensional primitive ambiguity for {context}, "
                f"got {len(null)}"
            )
        with mp.workdps(self.digits + 10):
            vals = [self.value_of_monomial(m) for m in monos]
            v0 = mp.fsum((_fr(c) * v for c, v in zip(part, vals)), absolute=False)
            k1 = mp.fsum((_fr(c) * v for c, v in zip(null[0], vals)), absolute=False)
            k2 = mp.fsum((_fr(c) * v for c, v in zip(null[1], vals)), absolute=False)
            rhs = value - v0
            det = k1.real * k2.imag - k2.real * k1.imag
            if abs(det) < mp.mpf(10) ** (-(self.digits // 2)):
                raise DecompositionError(
                    f"primitive directions degenerate for {context}"
                )
            s = (rhs.real * k2.imag - k2.real * rhs.imag) / det
            t = (k1.real * rhs.imag - rhs.real * k1.imag) / det
            sq, tq = rationalize(s, 10**18), rationalize(t, 10**18)
            resid = abs(rhs - _fr(sq) * k1 - _fr(tq) * k2)
            if resid > mp.mpf(10) ** (-(self.digits - 40)):
                raise DecompositionError(
                    f"rationalization failed for {context}: residual "
                    f"{mp.nstr(resid, 3)} (digits={self.digits})"
                )
        lam = {}
        for mono, c0, c1, c2 in zip(monos, part, null[0], null[1]):
            c = c0 + sq * c1 + tq * c2
            if c:
                lam[mono] = c
        return lam

    # -- building -----------------------------------------------------------

    def ensure_built(self, n: int):
        if n > self.W:
            raise DecompositionError(f"weight {n} above the cap W = {self.W}")
        while self._built < n:
            self._build_weight(self._built + 1)
            self._built += 1

    def _build_weight(self, n: int):
        words = self.spec.gen_words(n)
        if n == 1:
            for w in words:
                self.gens[w] = GenRecord(w, self._weight1_image(w), "analytic")
            return

        new = self.spec.new_letter(n)
        key_f, key_pi = self._primitive_keys(n)

        # derivation parts of all weight-n generators (exact)
        dparts = {w: self.derivation_coords(w) for w in words}

        # the depth-one generator 0^{n-1} x has an empty derivation part and
        # carries the parity normalization of the new letter
        dist = words[0]
        if dist.depth != 1 or dparts[dist]:
            raise DecompositionError(f"unexpected distinguished generator {dist}")
        cf_dist = window_coordinate(IterInt(ONE, dist, ZERO), new, "parity")
        with mp.workdps(self.digits + 10):
            rho = fletter_value(new, self.digits)
            v = self.value_of_genkey(dist)
            rem = v - _fr(cf_dist) * rho
            cpi_dist = rationalize(
                (rem / (2j * mp.pi) ** n).real, 10**12
            )
            resid = abs(rem - _fr(cpi_dist) * (2j * mp.pi) ** n)
            if resid > mp.mpf(10) ** (-(self.digits - 40)):
                raise DecompositionError(
                    f"tail pinning failed for {dist}: residual {mp.nstr(resid, 3)}"
                )

        # monomial rows: products are complete, generator rows only at their
        # derivation coordinates; that is all the lambda fits below use
        monos = self.monomials(n)
        rows: Dict[tuple, Coords] = {}
        for mono in monos:
            if len(mono) == 1 and mono[0] in (w for w in words):
                rows[mono] = dparts[mono[0]]
            else:
                rows[mono] = self.row_of_monomial(mono)

        # conjugation-parity expansion of every sigma(g)
        p_f = new.parity()
        p_pi = (-1) ** n
        lam_sigma: Dict[Word, Dict[tuple, Fraction]] = {}
        for g in words:
            sg = g.conjugate()
            d_sg = self.derivation_coords(sg)
            # exact parity check on the derivation parts
            expect = {
                (ls, j): c * parity_sign(ls, j) for (ls, j), c in dparts[g].items()
            }
            if expect != d_sg:
                raise DecompositionError(
                    f"conjugation parity fails on derivation part of {g}"
                )
            with mp.workdps(self.digits + 10):
                v_sg = self.value_of_genkey(g).conjugate()
            lam_sigma[g] = self._lambda_fit(
                d_sg, v_sg, n, context=f"sigma({g})", monos=monos, rows=rows
            )

        # linear systems for the primitive coordinates of the generators:
        # sum_{g'} lambda_{sigma(g)}[g'] c[g'] + products = p * c[g]
        idx = {w: i for i, w in enumerate(words)}
        a_f: List[List[Fraction]] = []
        b_f: List[Fraction] = []
        a_pi: List[List[Fraction]] = []
        b_pi: List[Fraction] = []
        for g in words:
            lam = lam_sigma[g]
            row_f = [Fraction(0)] * len(words)
            row_pi = [Fraction(0)] * len(words)
            const_pi = Fraction(0)
            for mono, c in lam.items():
                if len(mono) == 1 and mono[0] in idx:
                    row_f[idx[mono[0]]] += c
                    row_pi[idx[mono[0]]] += c
                else:
                    const_pi += c * rows[mono].get(key_pi, Fraction(0))
            row_f[idx[g]] -= p_f
            row_pi[idx[g]] -= p_pi
            a_f.append(row_f)
            b_f.append(Fraction(0))
            a_pi.append(row_pi)
            b_pi.append(-const_pi)
        # pin the distinguished generator in both systems
        pin_f = [Fraction(0)] * len(words)
        pin_f[idx[dist]] = Fraction(1)
        a_f.append(pin_f)
        b_f.append(cf_dist)
        a_pi.append(pin_f[:])
        b_pi.append(Fraction(cpi_dist))

        cf = _solve_pinned(a_f, b_f, f"f-coordinates at weight {n} ({self.family})")
        cpi = _solve_pinned(
            a_pi, b_pi, f"pi-tails at weight {n} ({self.family})"
        )

        for g in words:
            coords = dict(dparts[g])
            if cf[idx[g]]:
                coords[key_f] = cf[idx[g]]
            if cpi[idx[g]]:
                coords[key_pi] = cpi[idx[g]]
            prov = (
                f"analytic f; tail pinned at {self.digits} digits"
                if g == dist
                else f"sigma-pinned at {self.digits} digits"
            )
            self.gens[g] = GenRecord(g, coords, prov)

    # -- public operations ----------------------------------------------------

    def decompose(self, i: IterInt) -> FExpr:
        if i.weight > self.W:
            raise DecompositionError(f"weight {i.weight} above the cap W = {self.W}")
        self.ensure_built(max(i.weight, 1))
        return FExpr(self.family, self.image_of_iterint(i))

    def psi_inverse(self, coords: Coords) -> Tuple[Dict[tuple, Fraction], mpc]:
        """The unique basis-monomial combination mapping to the given
        coordinates, and its numerical value."""
        n = coords_weight(coords)
        if n is None:
            return {}, mp.mpc(0)
        if n == 0:
            c = coords.get(((), 0), Fraction(0))
            return {(): c}, _fr(c) + mp.mpc(0)
        self.ensure_built(n)
        monos = self.monomials(n)
        rows = {mono: self.row_of_monomial(mono) for mono in monos}
        cols = sorted(
            {k for row in rows.values() for k in row} | set(coords),
            key=lambda k: (k[1], len(k[0]), fword_order_key(k[0])),
        )
        a = [[rows[mono].get(col, Fraction(0)) for mono in monos] for col in cols]
        b = [coords.get(col, Fraction(0)) for col in cols]
        sol = solve_affine(a, b)
        if sol is None:
            raise DecompositionError("target is not in the span of the table")
        lam_vec, null = sol
        if null:
            raise DecompositionError(
                f"singular table at weight {n}: nullity {len(null)}"
            )
        lam = {m: c for m, c in zip(monos, lam_vec) if c}
        with mp.workdps(self.digits + 10):
            value = mp.fsum(
                (_fr(c) * self.value_of_monomial(m) for m, c in lam.items()),
                absolute=False,
            ) + mp.mpc(0)
        return lam, value


def _fr(q: Fraction):
    q = Fraction(q)
    return mp.mpf(q.numerator) / q.denominator


def _solve_pinned(a, b, what: str) -> List[Fraction]:
    sol = solve_affine(a, b)
    if sol is None:
        raise DecompositionError(f"inconsistent parity system for {what}")
    part, null = sol
    if null:
        # deterministic representative: zero the free directions
        pass
    return part


# ---------------------------------------------------------------------------
# Identity verification
# ---------------------------------------------------------------------------

_DECOMPOSERS: Dict[Tuple[str, int, int], Decomposer] = {}


def get_decomposer(family: str, W: int = 4, digits: int = 120) -> Decomposer:
    key = (family, W, digits)
    d = _DECOMPOSERS.get(key)
    if d is None:
        d = Decomposer(family, W, digits)
        _DECOMPOSERS[key] = d
    return d


def value_of_fterm(
    letters: Tuple[FLetter, ...], pi_power: int, W: int = 4, digits: int = 120
) -> mpc:
    """Number whose psi-image is the word (letters) * pi^pi_power.

    Literal pi powers convert to the (2 pi i) grading by pi^k = (2 pi i)^k
    / (2i)^k, which is rational only for even k; odd powers are rejected.
    """
    if pi_power % 2:
        raise DecompositionError("odd literal pi powers are not in the image space")
    factor = Fraction(-4) ** (-(pi_power // 2)) if pi_power else Fraction(1)
    if not letters:
        with mp.workdps(digits + 10):
            return _fr(factor) * (2j * mp.pi) ** pi_power + mp.mpc(0)
    family = "B6" if letters[0].alphabet == "6" else "D4"
    dec = get_decomposer(family, W, digits)
    _, value = dec.psi_inverse({(tuple(letters), pi_power): Fraction(1)})
    with mp.workdps(digits + 10):
        return +(_fr(factor) * value)


def verify_identity(
    lhs: Sequence[Tuple[Fraction, Tuple[FLetter, ...], int]],
    rhs: Sequence[Tuple[Fraction, Tuple[FLetter, ...], int]],
    P: int = 60,
    W: int = 4,
    digits: int = 120,
) -> Tuple[bool, mpc]:
    """Compare two f-alphabet expressions as numbers.

    Each side is a list of terms (rational coefficient, letter tuple, literal
    pi power); both sides must be weight-homogeneous of the same weight.
    Returns (equal within 10^(-P/2), residual).
    """
    weights = {
        sum(l.weight for l in ls) + k for c, ls, k in list(lhs) + list(rhs) if c
    }
    if len(weights) != 1:
        raise DecompositionError(f"sides are not weight-homogeneous: {sorted(weights)}")
    with mp.workdps(digits + 10):
        total = mp.mpc(0)
        for sign, side in ((1, lhs), (-1, rhs)):
            for c, ls, k in side:
                total += sign * _fr(c) * value_of_fterm(ls, k, W, digits)
        residual = abs(total)
        return bool(residual < mp.mpf(10) ** (mp.mpf(-P) / 2)), residual
