"""Exact linear algebra over the rationals.

Rank and determinants are computed by integer fraction-free (Bareiss)
elimination after clearing denominators row by row; kernel bases come from
back-substitution over ``fractions.Fraction``.  No floating point is used
anywhere, so rank/sign verdicts are bit-exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry table does not match declared dimensions")

    @classmethod
    def from_rows(cls, data) -> "ExactMatrix":
        entries = tuple(tuple(Fraction(x) for x in row) for row in data)
        if not entries:
            raise ValueError("matrix needs at least one row")
        return cls(len(entries), len(entries[0]), entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols, tuple((Fraction(0),) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self.entries[i][j]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows, tuple(zip(*self.entries)))

    def matvec(self, x) -> tuple[Fraction, ...]:
        if len(x) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(r[j] * x[j] for j in range(self.cols)) for r in self.entries)

    def stack(self, other: "ExactMatrix") -> "ExactMatrix":
        if other.cols != self.cols:
            raise ValueError("column counts differ")
        return ExactMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def submatrix(self, row_idx, col_idx) -> "ExactMatrix":
        rows = tuple(tuple(self.entries[i][j] for j in col_idx) for i in row_idx)
        return ExactMatrix(len(rows), len(rows[0]), rows)

    def scale_row(self, i: int, c) -> "ExactMatrix":
        c = Fraction(c)
        rows = list(self.entries)
        rows[i] = tuple(c * x for x in rows[i])
        return ExactMatrix(self.rows, self.cols, tuple(rows))

    def to_text(self) -> str:
        """Dump format: one row per line, entries as 'p/q' or integer, tab-separated."""
        def fmt(x: Fraction) -> str:
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

        return "\n".join("\t".join(fmt(x) for x in row) for row in self.entries) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ExactMatrix":
        rows = []
        for line in text.splitlines():
            if line.strip():
                rows.append([Fraction(tok) for tok in line.split("\t")])
        return cls.from_rows(rows)


@dataclass(frozen=True)
class RankReport:
    rank: int
    nullity: int
    kernel_basis: tuple[tuple[Fraction, ...], ...]


def _integer_rows(a: ExactMatrix) -> list[list[int]]:
    out = []
    for row in a.entries:
        scale = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * scale) for x in row])
    return out


def _bareiss_echelon(m: list[list[int]], cols: int) -> tuple[list[list[int]], list[int]]:
    """In-place fraction-free elimination; returns the echelon rows and pivot columns."""
    rows = len(m)
    pivot_cols: list[int] = []
    prev = 1
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pr is None:
            continue
        if pr != r:
            m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        for i in range(r + 1, rows):
            head = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for j in range(c, cols):
                row_i[j] = (piv * row_i[j] - head * row_r[j]) // prev
        prev = piv
        pivot_cols.append(c)
        r += 1
        if r == rows:
            break
    return m, pivot_cols


def exact_rank(a: ExactMatrix) -> RankReport:
    """Exact rank over Q plus a kernel basis (one vector per free column)."""
    m, pivot_cols = _bareiss_echelon(_integer_rows(a), a.cols)
    rank = len(pivot_cols)
    free_cols = [c for c in range(a.cols) if c not in set(pivot_cols)]
    basis = []
    for f in free_cols:
        x = [Fraction(0)] * a.cols
        x[f] = Fraction(1)
        for i in range(rank - 1, -1, -1):
            c = pivot_cols[i]
            s = sum(Fraction(m[i][j]) * x[j] for j in range(c + 1, a.cols) if x[j])
            x[c] = -s / m[i][c]
        basis.append(tuple(x))
    return RankReport(rank, a.cols - rank, tuple(basis))


def exact_det(a: ExactMatrix) -> Fraction:
    """Determinant via Bareiss elimination (square matrices)."""
    if a.rows != a.cols:
        raise ValueError("determinant needs a square matrix")
    n = a.rows
    scale = Fraction(1)
    m = []
    for row in a.entries:
        s = lcm(*(x.denominator for x in row))
        scale *= s
        m.append([int(x * s) for x in row])
    sign = 1
    prev = 1
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            sign = -sign
        piv = m[c][c]
        for i in range(c + 1, n):
            head = m[i][c]
            for j in range(c, n):
                m[i][j] = (piv * m[i][j] - head * m[c][j]) // prev
        prev = piv
    return Fraction(sign * m[n - 1][n - 1]) / scale


__all__ = ["ExactMatrix", "RankReport", "exact_rank", "exact_det"]
