"""Casorati determinants of polynomial tuples.

The matrix comes in two equivalent layouts: row k holds the k-th forward
differences of the tuple, or the k-th shifts f_i(z+k).  The shift rows are
unipotent combinations of the difference rows, so both layouts share one
determinant; computing both is a useful cross-check and the shift form is
the cheaper one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

from . import diffcalc
from .poly import Poly

Form = Literal["delta", "shift"]


@dataclass(frozen=True)
class CasoratiMatrix:
    """m x m grid of polynomials; row 0 is the tuple itself in either form."""

    entries: tuple[tuple[Poly, ...], ...]
    form: Form

    @property
    def size(self) -> int:
        return len(self.entries)


def casorati_matrix(fs: Sequence[Poly], form: Form = "delta") -> CasoratiMatrix:
    if not fs:
        raise ValueError("need at least one polynomial")
    m = len(fs)
    rows = []
    current = list(fs)
    for k in range(m):
        if form == "shift":
            rows.append(tuple(diffcalc.shift(f, k) for f in fs))
        else:
            if k:
                current = [diffcalc.delta(f) for f in current]
            rows.append(tuple(current))
    return CasoratiMatrix(tuple(rows), form)


def _det_cofactor(rows: list[list[Poly]]) -> Poly:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = Poly()
    for j, top in enumerate(rows[0]):
        if not top:
            continue
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        term = top * _det_cofactor(minor)
        total = total - term if j % 2 else total + term
    return total


def _det_bareiss(rows: list[list[Poly]]) -> Poly:
    """Fraction-free elimination; every division is exact in the poly ring."""
    n = len(rows)
    m = [row[:] for row in rows]
    sign = 1
    prev = Poly.constant(1)
    for k in range(n - 1):
        if not m[k][k]:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Poly()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num.divexact(prev)
            m[i][k] = Poly()
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def determinant(matrix: CasoratiMatrix) -> Poly:
    rows = [list(row) for row in matrix.entries]
    if matrix.size <= 4:
        return _det_cofactor(rows)
    return _det_bareiss(rows)


def casoratian(fs: Sequence[Poly], form: Form = "delta") -> Poly:
    """Casorati determinant of the tuple, in the requested row layout."""
    return determinant(casorati_matrix(fs, form))


def linearly_independent(fs: Sequence[Poly]) -> bool:
    """True iff the Casoratian is not the zero polynomial."""
    return bool(casoratian(fs))


def casoratian_replace(fs: Sequence[Poly], index: int, fsum: Poly) -> Poly:
    """Determinant with column `index` replaced by fsum = f_1 + ... + f_m.

    Replacing one column by the sum of all columns leaves the determinant
    unchanged (multilinearity kills every duplicated-column term), which is
    asserted before returning.
    """
    total = Poly()
    for f in fs:
        total = total + f
    if total != fsum:
        raise ValueError("fsum must equal the sum of the tuple")
    if not 0 <= index < len(fs):
        raise ValueError("replacement index out of range")
    replaced = list(fs)
    replaced[index] = fsum
    det = casoratian(replaced)
    original = casoratian(fs)
    if det != original and det != -original:  # pragma: no cover - identity
        raise ArithmeticError("column replacement changed the determinant")
    return det
