"""Dense square matrices over the localized ring.

Provides exact products, determinants (fraction-free Bareiss with the
t/d1/d2 denominators tracked separately, cofactor expansion for n <= 4),
and the conjugation/block machinery that splits off the invariant vector
of the representation: conjugating by the upper-triangular all-ones
matrix C turns every generator image into a block-lower-triangular matrix
whose upper-left block is the reduced image.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple

from .ring import ONE, ZERO, Polynomial, RingElement, try_exact_div

__all__ = [
    "RingMatrix",
    "BlockDecomposition",
    "mat_mul",
    "det",
    "upper_ones",
    "upper_ones_inverse",
    "conjugate_by_C",
    "block_decompose_reduced",
]

_P_ONE = Polynomial.one()


@dataclass(frozen=True)
class RingMatrix:
    """Square matrix; dimension is fixed at construction."""

    entries: tuple[tuple[RingElement, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.entries)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "entries", rows)

    @property
    def n(self) -> int:
        return len(self.entries)

    @staticmethod
    def identity(n: int) -> RingMatrix:
        return RingMatrix(
            tuple(
                tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)
            )
        )

    @staticmethod
    def build(n: int, fill: Callable[[int, int], RingElement]) -> RingMatrix:
        return RingMatrix(tuple(tuple(fill(i, j) for j in range(n)) for i in range(n)))

    def __getitem__(self, idx: tuple[int, int]) -> RingElement:
        i, j = idx
        return self.entries[i][j]

    def __mul__(self, other: RingMatrix) -> RingMatrix:
        return mat_mul(self, other)

    def __sub__(self, other: RingMatrix) -> RingMatrix:
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
        return RingMatrix(
            tuple(
                tuple(a - b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            )
        )

    def scale(self, c: RingElement) -> RingMatrix:
        return RingMatrix(tuple(tuple(c * e for e in row) for row in self.entries))

    def apply(self, vec: tuple[RingElement, ...]) -> tuple[RingElement, ...]:
        if len(vec) != self.n:
            raise ValueError("vector length mismatch")
        out = []
        for row in self.entries:
            acc = ZERO
            for e, v in zip(row, vec):
                if not (e.is_zero or v.is_zero):
                    acc = acc + e * v
            out.append(acc)
        return tuple(out)

    def det(self) -> RingElement:
        return det(self)

    def is_identity(self) -> bool:
        return self == RingMatrix.identity(self.n)

    def __str__(self) -> str:
        rows = ["[" + ", ".join(str(e) for e in row) + "]" for row in self.entries]
        return "[" + ", ".join(rows) + "]"

    def __repr__(self) -> str:
        return f"RingMatrix({self})"


def mat_mul(a: RingMatrix, b: RingMatrix) -> RingMatrix:
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")
    n = a.n
    bt = list(zip(*b.entries))  # columns of b
    rows = []
    for i in range(n):
        arow = a.entries[i]
        row = []
        for j in range(n):
            acc = ZERO
            for e, f in zip(arow, bt[j]):
                if not (e.is_zero or f.is_zero):
                    acc = acc + e * f
            row.append(acc)
        rows.append(tuple(row))
    return RingMatrix(tuple(rows))


def _det_cofactor(rows: list[list[RingElement]]) -> RingElement:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = ZERO
    sign = 1
    for j in range(n):
        pivot = rows[0][j]
        if not pivot.is_zero:
            minor = [[row[k] for k in range(n) if k != j] for row in rows[1:]]
            term = pivot * _det_cofactor(minor)
            total = total + (term if sign > 0 else -term)
        sign = -sign
    return total


def _cleared_rows(m: RingMatrix) -> tuple[list[list[Polynomial]], int, int, int]:
    """Scale each row to clear its denominators; return rows plus the total
    exponents of t, d1, d2 that were multiplied in."""
    from .ring import D1_POLY, D2_POLY

    rows: list[list[Polynomial]] = []
    tot_t = tot_d1 = tot_d2 = 0
    for row in m.entries:
        rt = max(e.den_t for e in row)
        r1 = max(e.den_d1 for e in row)
        r2 = max(e.den_d2 for e in row)
        tot_t += rt
        tot_d1 += r1
        tot_d2 += r2
        cleared = []
        for e in row:
            p = e.num.shift_t(rt - e.den_t)
            if r1 != e.den_d1:
                p = p * D1_POLY ** (r1 - e.den_d1)
            if r2 != e.den_d2:
                p = p * D2_POLY ** (r2 - e.den_d2)
            cleared.append(p)
        rows.append(cleared)
    return rows, tot_t, tot_d1, tot_d2


def _det_bareiss_poly(rows: list[list[Polynomial]]) -> Polynomial:
    """Fraction-free elimination; every division is exact in Z[t, z, zk]."""
    n = len(rows)
    sign = 1
    prev = _P_ONE
    for k in range(n - 1):
        if rows[k][k].is_zero:
            for r in range(k + 1, n):
                if not rows[r][k].is_zero:
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                return Polynomial.zero()
        pivot = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = pivot * rows[i][j] - rows[i][k] * rows[k][j]
                q = try_exact_div(num, prev)
                assert q is not None, "Bareiss division must be exact"
                rows[i][j] = q
            rows[i][k] = Polynomial.zero()
        prev = pivot
    result = rows[n - 1][n - 1]
    return result if sign > 0 else -result


def det(m: RingMatrix) -> RingElement:
    """Exact determinant.

    Cofactor expansion for n <= 4; for larger matrices, row denominators
    are cleared, Bareiss runs over Z[t, z, zk], and the collected
    denominator exponents are divided back out.
    """
    if m.n <= 4:
        return _det_cofactor([list(row) for row in m.entries])
    rows, tot_t, tot_d1, tot_d2 = _cleared_rows(m)
    poly = _det_bareiss_poly(rows)
    return RingElement(poly, tot_t, tot_d1, tot_d2)


def det_bareiss(m: RingMatrix) -> RingElement:
    """Bareiss path regardless of size (n <= 4 included), for cross-checks."""
    if m.n == 1:
        return m.entries[0][0]
    rows, tot_t, tot_d1, tot_d2 = _cleared_rows(m)
    poly = _det_bareiss_poly(rows)
    return RingElement(poly, tot_t, tot_d1, tot_d2)


def upper_ones(n: int) -> RingMatrix:
    """Upper-triangular all-ones matrix C."""
    return RingMatrix.build(n, lambda i, j: ONE if j >= i else ZERO)


def upper_ones_inverse(n: int) -> RingMatrix:
    """C^-1, written directly: 1 on the diagonal, -1 on the superdiagonal."""
    def fill(i: int, j: int) -> RingElement:
        if i == j:
            return ONE
        if j == i + 1:
            return -ONE
        return ZERO

    return RingMatrix.build(n, fill)


def conjugate_by_C(m: RingMatrix) -> RingMatrix:
    """C^-1 * m * C for the all-ones upper-triangular C of matching size."""
    if m.n < 2:
        raise ValueError("conjugation by C needs dimension >= 2")
    return upper_ones_inverse(m.n) * m * upper_ones(m.n)


class BlockDecomposition(NamedTuple):
    upper_left: RingMatrix
    bottom_row: tuple[RingElement, ...]
    corner: RingElement
    upper_right_is_zero: bool


def block_decompose_reduced(m: RingMatrix) -> BlockDecomposition:
    """Split into the (n-1) x (n-1) upper-left block, the bottom row, the
    corner scalar, and whether the upper-right column is exactly zero."""
    n = m.n
    if n < 2:
        raise ValueError("block decomposition needs dimension >= 2")
    upper_left = RingMatrix(
        tuple(tuple(m.entries[i][j] for j in range(n - 1)) for i in range(n - 1))
    )
    bottom_row = tuple(m.entries[n - 1][j] for j in range(n - 1))
    corner = m.entries[n - 1][n - 1]
    upper_right_is_zero = all(m.entries[i][n - 1].is_zero for i in range(n - 1))
    return BlockDecomposition(upper_left, bottom_row, corner, upper_right_is_zero)
