"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`; matrices are small dense row-major
arrays.  Everything here is exact, there is no tolerance anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction

_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"``; decimals and exponents are rejected."""
    if not isinstance(text, str):
        raise ValueError(f"expected a rational string, got {text!r}")
    m = _RATIONAL.match(text)
    if m is None:
        raise ValueError(f"not a rational of the form p or p/q: {text!r}")
    num, den = m.groups()
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def as_vector(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


class Matrix:
    """Dense immutable matrix over the rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence):
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = tuple(Fraction(e) for e in entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cannot infer column count of an empty matrix")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        columns = [list(c) for c in columns]
        if any(len(c) != rows for c in columns):
            raise ValueError("ragged columns")
        return cls(rows, len(columns), [columns[j][i] for i in range(rows) for j in range(len(columns))])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return self.entries[j::self.cols] if self.rows else ()

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(e) for e in self.row(i)) for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = [Fraction(0)] * (self.rows * other.cols)
        # skip zeros: differential matrices are very sparse
        other_rows = [other.row(k) for k in range(other.rows)]
        for i in range(self.rows):
            base = i * other.cols
            for k, a in enumerate(self.row(i)):
                if not a:
                    continue
                for j, b in enumerate(other_rows[k]):
                    if b:
                        out[base + j] += a * b
        return Matrix(self.rows, other.cols, out)

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        return tuple(
            sum((a * b for a, b in zip(self.row(i), v) if a and b), Fraction(0))
            for i in range(self.rows)
        )


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Gauss-Jordan in place on a list of rows; returns (rows, pivots)."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        prow = rows[r]
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row_i = rows[i]
                    for j in nz:
                        row_i[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form and pivot columns (rank = len(pivots))."""
    rows, pivots = _rref_rows(m.to_rows(), m.cols)
    return Matrix(m.rows, m.cols, [e for r in rows for e in r]), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


@dataclass(frozen=True)
class SubspaceBasis:
    """A subspace of Q^ambient_dim held as the nonzero rows of an RREF."""

    ambient_dim: int
    vectors: tuple[tuple[Fraction, ...], ...]
    pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __len__(self) -> int:
        return len(self.vectors)

    def contains(self, v: Sequence) -> bool:
        residue, _ = reduce_mod_subspace(v, self)
        return not any(residue)


def span(vectors: Iterable[Sequence], ambient_dim: int) -> SubspaceBasis:
    rows = [[Fraction(x) for x in v] for v in vectors]
    for r in rows:
        if len(r) != ambient_dim:
            raise ValueError(f"vector of length {len(r)} in ambient dimension {ambient_dim}")
    rows, pivots = _rref_rows(rows, ambient_dim)
    rows = rows[:len(pivots)]
    return SubspaceBasis(ambient_dim, tuple(tuple(r) for r in rows), tuple(pivots))


def zero_subspace(ambient_dim: int) -> SubspaceBasis:
    return SubspaceBasis(ambient_dim, (), ())


def kernel_basis(m: Matrix) -> SubspaceBasis:
    """Right null space of ``m``."""
    reduced, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    raw = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -reduced[r, f]
        raw.append(v)
    return span(raw, m.cols)


def image_basis(m: Matrix) -> SubspaceBasis:
    """Column space of ``m``."""
    return span((m.column(j) for j in range(m.cols)), m.rows)


def reduce_mod_subspace(v: Sequence, s: SubspaceBasis) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Split ``v = residue + sum(coefficients[i] * s.vectors[i])``.

    The residue vanishes on every pivot coordinate of ``s``, which makes it
    the canonical representative of the coset ``v + s``.
    """
    if len(v) != s.ambient_dim:
        raise ValueError(f"vector of length {len(v)} in ambient dimension {s.ambient_dim}")
    residue = [Fraction(x) for x in v]
    coeffs = []
    for b, p in zip(s.vectors, s.pivots):
        c = residue[p]
        coeffs.append(c)
        if c:
            for j, x in enumerate(b):
                if x:
                    residue[j] -= c * x
    return tuple(residue), tuple(coeffs)


def solve(m: Matrix, b: Sequence) -> tuple[Fraction, ...] | None:
    """One solution of ``m x = b`` (free variables set to zero), or None."""
    if len(b) != m.rows:
        raise ValueError(f"right-hand side of length {len(b)} for {m.rows} rows")
    aug = [list(m.row(i)) + [Fraction(b[i])] for i in range(m.rows)]
    rows, pivots = _rref_rows(aug, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [Fraction(0)] * m.cols
    for r, p in enumerate(pivots):
        x[p] = rows[r][m.cols]
    return tuple(x)


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("only square matrices are invertible")
    n = m.rows
    aug = [list(m.row(i)) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    rows, pivots = _rref_rows(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return Matrix(n, n, [rows[i][n + j] for i in range(n) for j in range(n)])


def determinant(m: Matrix) -> Fraction:
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    rows = m.to_rows()
    n = m.rows
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        det *= rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] / rows[c][c]
            if f:
                for j in range(c, n):
                    rows[i][j] -= f * rows[c][j]
    return det


def subspaces_equal(a: SubspaceBasis, b: SubspaceBasis) -> bool:
    # RREF bases are canonical
    return a.ambient_dim == b.ambient_dim and a.vectors == b.vectors
