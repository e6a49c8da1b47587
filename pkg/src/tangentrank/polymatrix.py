"""Matrices of homogeneous polynomials with per-row degrees.

Every entry in row k is homogeneous of degree row_degrees[k]; structural
zeros are zero polynomials of the row degree.  Determinants come in two
independent flavors (cofactor expansion and fraction-free elimination) so
each can serve as an oracle for the other.
"""

from __future__ import annotations

from .errors import NotSquare, ShapeMismatch
from .homogpoly import HomogPoly


class PolyMatrix:
    __slots__ = ("ring", "rows", "cols", "row_degrees", "entries")

    def __init__(self, ring, entries, row_degrees):
        self.ring = ring
        self.entries = [list(row) for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        self.row_degrees = list(row_degrees)
        if len(self.row_degrees) != self.rows:
            raise ShapeMismatch("row_degrees length does not match row count")
        for k, row in enumerate(self.entries):
            if len(row) != self.cols:
                raise ShapeMismatch("ragged rows")
            for p in row:
                if p.degree != self.row_degrees[k]:
                    raise ShapeMismatch(
                        f"entry of degree {p.degree} in row {k} of degree "
                        f"{self.row_degrees[k]}")

    @classmethod
    def identity(cls, ring, size: int) -> "PolyMatrix":
        one = HomogPoly(ring, 0, [ring.one])
        zero = HomogPoly.zero(ring, 0)
        return cls(ring,
                   [[one if i == j else zero for j in range(size)] for i in range(size)],
                   [0] * size)

    def entry(self, i: int, j: int) -> HomogPoly:
        return self.entries[i][j]

    def __eq__(self, other):
        return (isinstance(other, PolyMatrix) and other.rows == self.rows
                and other.cols == self.cols and other.entries == self.entries)

    def mat_mul(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"{self.rows}x{self.cols} times {other.rows}x{other.cols}")
        if other.rows and any(d != other.row_degrees[0] for d in other.row_degrees):
            raise ShapeMismatch("right factor must have uniform row degrees")
        rd = other.row_degrees[0] if other.rows else 0
        out = []
        for k in range(self.rows):
            row = []
            for m in range(other.cols):
                acc = HomogPoly.zero(self.ring, self.row_degrees[k] + rd)
                for i in range(self.cols):
                    a = self.entries[k][i]
                    if a.is_zero():
                        continue
                    row_i = other.entries[i][m]
                    if row_i.is_zero():
                        continue
                    acc = acc + a * row_i
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.ring, out,
                          [d + rd for d in self.row_degrees])

    def __mul__(self, other):
        return self.mat_mul(other)

    def det(self) -> HomogPoly:
        """Determinant by cofactor expansion along the first row."""
        if self.rows != self.cols:
            raise NotSquare(f"{self.rows}x{self.cols} matrix has no determinant")
        memo: dict = {}
        return self._det_sub(0, tuple(range(self.cols)), memo)

    def _det_sub(self, r: int, cols: tuple, memo: dict) -> HomogPoly:
        """Determinant of rows r.. on the given columns, memoized on cols."""
        if r == self.rows:
            return HomogPoly(self.ring, 0, [self.ring.one])
        key = (r, cols)
        hit = memo.get(key)
        if hit is not None:
            return hit
        deg = sum(self.row_degrees[r:])
        acc = HomogPoly.zero(self.ring, deg)
        row = self.entries[r]
        for idx, c in enumerate(cols):
            a = row[c]
            if a.is_zero():
                continue
            sub = self._det_sub(r + 1, cols[:idx] + cols[idx + 1:], memo)
            term = a * sub
            acc = acc - term if idx % 2 else acc + term
        memo[key] = acc
        return acc

    def signed_maximal_minors(self):
        """For an n x (n+1) matrix: G_i = (-1)^i det(columns without i).

        The sign convention makes self . G^T vanish identically (Laplace
        expansion of a matrix with a repeated row).  Subdeterminants are
        shared across the n+1 deletions.
        """
        if self.cols != self.rows + 1:
            raise ShapeMismatch("signed maximal minors need an n x (n+1) matrix")
        memo: dict = {}
        all_cols = tuple(range(self.cols))
        out = []
        for i in range(self.cols):
            cols = all_cols[:i] + all_cols[i + 1:]
            d = self._det_sub(0, cols, memo)
            out.append(-d if i % 2 else d)
        return out

    def det_fraction_free(self) -> HomogPoly:
        """Bareiss-style elimination; equals det() over any integral domain."""
        if self.rows != self.cols:
            raise NotSquare(f"{self.rows}x{self.cols} matrix has no determinant")
        n = self.rows
        total_deg = sum(self.row_degrees)
        if n == 0:
            return HomogPoly(self.ring, 0, [self.ring.one])
        m = [list(row) for row in self.entries]
        sign = 1
        prev = None
        for k in range(n - 1):
            if m[k][k].is_zero():
                for i in range(k + 1, n):
                    if not m[i][k].is_zero():
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return HomogPoly.zero(self.ring, total_deg)
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    elt = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                    if prev is not None:
                        elt = elt.exact_div(prev)
                    m[i][j] = elt
            prev = m[k][k]
        result = m[n - 1][n - 1]
        return -result if sign < 0 else result

    def render(self) -> str:
        return "\n".join("[" + ", ".join(p.render() for p in row) + "]"
                         for row in self.entries)

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols}, row_degrees={self.row_degrees})"
