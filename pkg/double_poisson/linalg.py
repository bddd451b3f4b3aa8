"""
Exact sparse linear algebra over the rationals.

Matrices are stored as sparse Fraction dictionaries; reductions clear row
denominators and run sympy's fraction-free elimination over ZZ on the sparse
``DomainMatrix`` representation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from .exceptions import DoublePoissonError

logger = logging.getLogger(__name__)

Vector = List[Fraction]


@dataclass
class RatMatrix:
    """Sparse exact-rational matrix; ``entries`` never holds zeros."""

    rows: int
    cols: int
    entries: Dict[Tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned: Dict[Tuple[int, int], Fraction] = {}
        for (i, j), value in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise DoublePoissonError(f"Entry ({i}, {j}) outside a {self.rows}x{self.cols} matrix")
            value = Fraction(value)
            if value:
                cleaned[(i, j)] = value
        self.entries = cleaned

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[object]]) -> "RatMatrix":
        n_rows = len(rows)
        n_cols = len(rows[0]) if rows else 0
        entries = {
            (i, j): Fraction(value)  # type: ignore[arg-type]
            for i, row in enumerate(rows)
            for j, value in enumerate(row)
        }
        return cls(n_rows, n_cols, entries)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, Fraction]]) -> "RatMatrix":
        entries = {(i, j): value for j, column in enumerate(columns) for i, value in column.items()}
        return cls(rows, len(columns), entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return not self.entries

    def column(self, j: int) -> Vector:
        out = [Fraction(0)] * self.rows
        for (i, col), value in self.entries.items():
            if col == j:
                out[i] = value
        return out

    def to_dense(self) -> List[Vector]:
        dense = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), value in self.entries.items():
            dense[i][j] = value
        return dense

    def hstack(self, other: "RatMatrix") -> "RatMatrix":
        if other.rows != self.rows:
            raise DoublePoissonError("Cannot stack matrices with different row counts")
        entries = dict(self.entries)
        entries.update({(i, j + self.cols): v for (i, j), v in other.entries.items()})
        return RatMatrix(self.rows, self.cols + other.cols, entries)

    def matmul(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise DoublePoissonError(f"Shape mismatch {self.shape} @ {other.shape}")
        by_row: Dict[int, List[Tuple[int, Fraction]]] = {}
        for (k, j), value in other.entries.items():
            by_row.setdefault(k, []).append((j, value))
        out: Dict[Tuple[int, int], Fraction] = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                out[(i, j)] = out.get((i, j), Fraction(0)) + a * b
        return RatMatrix(self.rows, other.cols, out)

    def apply(self, vector: Sequence[Fraction]) -> Vector:
        if len(vector) != self.cols:
            raise DoublePoissonError(f"Vector of length {len(vector)} for {self.cols} columns")
        out = [Fraction(0)] * self.rows
        for (i, j), value in self.entries.items():
            out[i] += value * vector[j]
        return out


def _integer_rows(m: RatMatrix) -> Dict[int, Dict[int, int]]:
    """Scale each row by the lcm of its denominators; rank and kernel are unchanged."""
    rows: Dict[int, Dict[int, Fraction]] = {}
    for (i, j), value in m.entries.items():
        rows.setdefault(i, {})[j] = value
    scaled: Dict[int, Dict[int, int]] = {}
    for i, row in rows.items():
        factor = lcm(*(value.denominator for value in row.values()))
        scaled[i] = {j: int(value * factor) for j, value in row.items()}
    return scaled


def _reduce(m: RatMatrix) -> Tuple[Dict[int, Dict[int, int]], int, Tuple[int, ...]]:
    """Fraction-free reduced row echelon form: (rows, denominator, pivot columns)."""
    if m.rows == 0 or m.cols == 0 or not m.entries:
        return {}, 1, ()
    sparse = {
        i: {j: ZZ(value) for j, value in row.items()}
        for i, row in _integer_rows(m).items()
    }
    dm = DomainMatrix(sparse, (m.rows, m.cols), ZZ)
    reduced, denominator, pivots = dm.rref_den(method="FF")
    rows = {
        i: {j: int(value) for j, value in row.items()}
        for i, row in reduced.to_sparse().rep.items()
    }
    logger.debug(f"Reduced {m.rows}x{m.cols} matrix with {len(m.entries)} entries to rank {len(pivots)}")
    return rows, int(denominator), tuple(pivots)


def rank(m: RatMatrix) -> int:
    _, _, pivots = _reduce(m)
    return len(pivots)


def _primitive(vector: Iterable[int]) -> Vector:
    values = list(vector)
    divisor = 0
    for value in values:
        divisor = gcd(divisor, value)
    if divisor == 0:
        return [Fraction(0)] * len(values)
    leading = next(value for value in values if value)
    if leading < 0:
        divisor = -divisor
    return [Fraction(value, divisor) for value in values]


def nullspace_basis(m: RatMatrix) -> List[Vector]:
    """Basis of the right kernel as primitive integer vectors (cols - rank of them)."""
    rows, denominator, pivots = _reduce(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vector = [0] * m.cols
        vector[free] = denominator
        for row_index, pivot in enumerate(pivots):
            value = rows.get(row_index, {}).get(free, 0)
            if value:
                vector[pivot] = -value
        basis.append(_primitive(vector))
    return basis


def in_span(v: Sequence[Fraction], m: RatMatrix) -> bool:
    """True iff ``v`` lies in the column span of ``m``."""
    if len(v) != m.rows:
        raise DoublePoissonError(f"Vector of length {len(v)} against {m.rows} rows")
    column = RatMatrix(m.rows, 1, {(i, 0): Fraction(value) for i, value in enumerate(v)})
    if column.is_zero():
        return True
    return rank(m.hstack(column)) == rank(m)


def independent_columns(m: RatMatrix) -> Tuple[int, ...]:
    """Indices of the leftmost columns forming a basis of the column span."""
    _, _, pivots = _reduce(m)
    return pivots


def _rational_domain_matrix(m: RatMatrix) -> DomainMatrix:
    if m.rows != m.cols:
        raise DoublePoissonError(f"Square matrix expected, got {m.rows}x{m.cols}")
    sparse: Dict[int, Dict[int, object]] = {}
    for (i, j), value in m.entries.items():
        sparse.setdefault(i, {})[j] = QQ(value.numerator, value.denominator)
    return DomainMatrix(sparse, m.shape, QQ)


def _from_qq(value: object) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))  # type: ignore[attr-defined]


def determinant(m: RatMatrix) -> Fraction:
    return _from_qq(_rational_domain_matrix(m).det())


def inverse(m: RatMatrix) -> RatMatrix:
    """Exact inverse of a square matrix; singular input raises."""
    dm = _rational_domain_matrix(m)
    if m.rows == 0:
        return RatMatrix(0, 0)
    if not dm.det():
        raise DoublePoissonError(f"Singular {m.rows}x{m.cols} matrix has no inverse")
    entries = {
        (i, j): _from_qq(value)
        for i, row in dm.inv().to_sparse().rep.items()
        for j, value in row.items()
    }
    return RatMatrix(m.rows, m.cols, entries)
