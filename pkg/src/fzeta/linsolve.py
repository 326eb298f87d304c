"""Exact linear algebra over Fraction: row reduction, affine solve, and
square solve.  Matrices are lists of lists of Fractions; everything is small
(dimensions <= ~60), so plain Gaussian elimination with exact pivoting is
fine.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Tuple


def rref(m: List[List[Fraction]]) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form (copy) and pivot column indices."""
    a = [row[:] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        f = a[r][c]
        a[r] = [x / f for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                g = a[i][c]
                a[i] = [x - g * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def solve_affine(
    a: List[List[Fraction]], b: List[Fraction]
) -> Optional[Tuple[List[Fraction], List[List[Fraction]]]]:
    """All solutions of A x = b: a particular solution and a nullspace basis,
    or None if inconsistent."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    aug = [list(map(Fraction, a[i])) + [Fraction(b[i])] for i in range(rows)]
    red, pivots = rref(aug)
    if cols in pivots:
        return None  # pivot in the constant column: inconsistent
    part = [Fraction(0)] * cols
    for r, c in enumerate(pivots):
        part[c] = red[r][cols]
    free = [c for c in range(cols) if c not in pivots]
    null = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -red[r][f]
        null.append(v)
    return part, null


def solve_square(a: List[List[Fraction]], b: List[Fraction]) -> List[Fraction]:
    """Unique solution of a square nonsingular system (raises otherwise)."""
    out = solve_affine(a, b)
    if out is None:
        raise ValueError("inconsistent linear system")
    part, null = out
    if null:
        raise ValueError(f"singular system: nullity {len(null)}")
    return part
