"""Parsing and rendering of the interchange grammars.

Words:      letters "0" and "x<N>^<k>", dot-separated, e.g. "0.x6^4.x6^3";
            the empty word is "e".
Integrals:  "I(<end>;<word>;<end>)" with ends "0", "1" or a letter.
F-words:    letters "f6_3", "g6_1", "f4_2", dot-separated; "1" is the empty
            word; an optional trailing ".pi^<k>" carries a power of pi.

Parse errors carry the offending position.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Tuple

from .words import Letter, Word, ZERO, ONE


class ParseError(ValueError):
    def __init__(self, text: str, pos: int, why: str):
        super().__init__(f"{why} at column {pos + 1} in {text!r}")
        self.pos = pos


_LETTER_RE = re.compile(r"x(\d+)\^(-?\d+)$")


def parse_letter(tok: str, text: str = "", pos: int = 0) -> Letter:
    tok = tok.strip()
    if tok == "0":
        return ZERO
    if tok == "1":
        return ONE
    m = _LETTER_RE.match(tok)
    if not m:
        raise ParseError(text or tok, pos, f"bad letter {tok!r}")
    n, k = int(m.group(1)), int(m.group(2))
    if n < 1:
        raise ParseError(text or tok, pos, f"bad root order in {tok!r}")
    return Letter.root(k, n)


def parse_word(text: str) -> Word:
    s = text.strip()
    if s in ("", "e"):
        return Word()
    letters = []
    pos = 0
    for tok in s.split("."):
        letters.append(parse_letter(tok, text, pos))
        pos += len(tok) + 1
    return Word(tuple(letters))


def format_word(w: Word) -> str:
    return str(w)


def parse_iterint(text: str):
    from .iterint import IterInt

    s = text.strip()
    if not (s.startswith("I(") and s.endswith(")")):
        raise ParseError(text, 0, "expected I(<end>;<word>;<end>)")
    parts = s[2:-1].split(";")
    if len(parts) != 3:
        raise ParseError(text, 2, "expected three ';'-separated fields")
    upper = parse_letter(parts[0], text, 2)
    word = parse_word(parts[1])
    lower = parse_letter(parts[2], text, 2 + len(parts[0]) + 1 + len(parts[1]) + 1)
    return IterInt(upper, word, lower)


def format_iterint(i) -> str:
    return f"I({i.upper};{i.word};{i.lower})"


_FLETTER_RE = re.compile(r"([fg])(\d+)_(\d+)$")
_PI_RE = re.compile(r"pi(?:\^(\d+))?$")


def parse_fletter(tok: str, text: str = "", pos: int = 0):
    from .fwords import FLetter

    m = _FLETTER_RE.match(tok.strip())
    if not m:
        raise ParseError(text or tok, pos, f"bad f-letter {tok!r}")
    kind, n, wt = m.group(1), int(m.group(2)), int(m.group(3))
    if kind == "g":
        if (n, wt) != (6, 1):
            raise ParseError(text or tok, pos, "the g letter exists only as g6_1")
        return FLetter("g6", 1)
    if n not in (4, 6) or wt < 1:
        raise ParseError(text or tok, pos, f"bad f-letter {tok!r}")
    return FLetter(f"f{n}", wt)


def parse_fword(text: str):
    """Parse an f-word with optional trailing pi power, e.g. "g6_1.f6_3.pi^2"."""
    from .fwords import FWord

    s = text.strip()
    if s in ("1", ""):
        return FWord((), 0)
    letters = []
    pi = 0
    toks = s.split(".")
    pos = 0
    for i, tok in enumerate(toks):
        m = _PI_RE.match(tok.strip())
        if m:
            if i != len(toks) - 1:
                raise ParseError(text, pos, "pi power must come last")
            pi = int(m.group(1) or 1)
        else:
            letters.append(parse_fletter(tok, text, pos))
        pos += len(tok) + 1
    return FWord(tuple(letters), pi)


def parse_rational(tok: str) -> Fraction:
    try:
        return Fraction(tok.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(tok, 0, f"bad rational {tok.strip()!r}") from e


# ---------------------------------------------------------------------------
# Value expressions for the CLI (`eval`, `relation`, `verify-identity`):
#   expr    := term (('+'|'-') term)*
#   term    := factor ('*' factor)*
#   factor  := rational | 'pi' ['^' int] | 'zeta(' int ')'
#            | 'Li(' int ';' letter ')' | 're(' expr ')' | 'im(' expr ')'
#            | f-letter realization (f6_3, g6_1, f4_2, ...) | I(...)
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(I\([^)]*\)|zeta\(\d+\)|Li\(\d+;[^)]*\)|re\(|im\(|[fg]\d+_\d+"
    r"|pi(?:\^\d+)?|-?\d+(?:/\d+)?|\*|\+|-|\(|\))"
)


def tokenize_expr(text: str) -> List[str]:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ParseError(text, pos, "unrecognized token")
        out.append(m.group(1))
        pos = m.end()
    return out


def eval_expr(text: str, digits: int):
    """Evaluate a value expression to an mpmath complex at `digits` digits.

    The f-letter tokens evaluate to the parity realizations of the alphabet
    letters (g6_1 -> 2 log 2, f6_3 -> -2 Re Li_3(xi_3), ...).
    """
    from mpmath import mp

    from . import numerics
    from .fwords import FLetter

    toks = tokenize_expr(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take():
        nonlocal pos
        t = toks[pos]
        pos += 1
        return t

    def parse_expr():
        val = parse_term()
        while peek() in ("+", "-"):
            if take() == "+":
                val = val + parse_term()
            else:
                val = val - parse_term()
        return val

    def parse_term():
        val = parse_factor()
        while peek() == "*":
            take()
            val = val * parse_factor()
        return val

    def parse_factor():
        t = peek()
        if t is None:
            raise ParseError(text, len(text), "unexpected end of expression")
        take()
        if t == "(":
            v = parse_expr()
            if take() != ")":
                raise ParseError(text, 0, "missing ')'")
            return v
        if t in ("re(", "im("):
            v = parse_expr()
            if take() != ")":
                raise ParseError(text, 0, "missing ')'")
            return v.real if t == "re(" else v.imag
        if t.startswith("I("):
            from .grammar import parse_iterint

            return numerics.eval_iterint(parse_iterint(t), digits)
        if t.startswith("zeta("):
            return numerics.zeta(int(t[5:-1]), digits)
        if t.startswith("Li("):
            inner = t[3:-1]
            n_s, letter_s = inner.split(";")
            a = parse_letter(letter_s, t, 3)
            return numerics.polylog_root(int(n_s), a.k, a.n, digits)
        if t.startswith("pi"):
            k = int(t[3:]) if "^" in t else 1
            with mp.workdps(digits + 10):
                return mp.pi**k
        if re.match(r"[fg]\d+_\d+$", t):
            fl = parse_fletter(t)
            return numerics.fletter_value(fl, digits)
        return mp.mpf(0) + _frac_to_mp(parse_rational(t), digits)

    val = parse_expr()
    if pos != len(toks):
        raise ParseError(text, 0, f"trailing tokens {toks[pos:]!r}")
    return val


def _frac_to_mp(q: Fraction, digits: int):
    from mpmath import mp

    with mp.workdps(digits + 10):
        return mp.mpf(q.numerator) / q.denominator
