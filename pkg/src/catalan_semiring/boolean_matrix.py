"""Square Boolean matrices with max/min arithmetic.

Matrices are immutable and bit-packed: row ``i`` is an ``int`` whose binary
expansion, read left to right over ``n`` digits, is the row itself.  Entry
``(i, j)`` (1-based) is therefore bit ``n - j`` of ``rows[i-1]``.  Addition is
a row-wise ``|``; the product ORs together the rows of the right factor
selected by the set bits of each row of the left factor.

The canonical order on matrices of one size is the row-major bit pattern read
as a binary integer (``code``), ascending.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionError, DomainError, ParseError, ResourceLimitError

__all__ = [
    "BoolMatrix",
    "Shape",
    "SHAPE_CAPS",
    "zero",
    "unit",
    "mat_add",
    "mat_mul",
    "is_upper_triangular",
    "is_lower_triangular",
    "is_stair_triangular",
    "antidiagonal",
    "conjugate_by_P",
    "enumerate_matrices",
    "negate_upper_triangle",
    "crop_first_col_last_row",
]


@dataclass(frozen=True)
class BoolMatrix:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise DimensionError("matrix size must be positive")
        rows = tuple(int(r) for r in self.rows)
        if len(rows) != self.n:
            raise DimensionError(f"expected {self.n} rows, got {len(rows)}")
        limit = 1 << self.n
        if any(r < 0 or r >= limit for r in rows):
            raise ValueError("row bit pattern out of range")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "BoolMatrix":
        n = len(entries)
        rows = []
        for row in entries:
            if len(row) != n:
                raise DimensionError("matrix must be square")
            value = 0
            for x in row:
                if x not in (0, 1, True, False):
                    raise ValueError(f"Boolean entries only, got {x!r}")
                value = (value << 1) | int(x)
            rows.append(value)
        return cls(n, tuple(rows))

    @classmethod
    def from_code(cls, n: int, code: int) -> "BoolMatrix":
        mask = (1 << n) - 1
        rows = tuple((code >> (n * (n - 1 - i))) & mask for i in range(n))
        return cls(n, rows)

    @classmethod
    def from_text(cls, text: str) -> "BoolMatrix":
        lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
        if not lines or any(set(line) - {"0", "1"} for line in lines):
            raise ParseError(f"malformed matrix text {text!r}")
        if any(len(line) != len(lines) for line in lines):
            raise ParseError("matrix text must be square")
        return cls(len(lines), tuple(int(line, 2) for line in lines))

    @property
    def code(self) -> int:
        value = 0
        for r in self.rows:
            value = (value << self.n) | r
        return value

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f"entry ({i}, {j}) outside a {self.n}x{self.n} matrix")
        return (self.rows[i - 1] >> (self.n - j)) & 1

    def to_lists(self) -> list[list[int]]:
        n = self.n
        return [[(r >> (n - 1 - j)) & 1 for j in range(n)] for r in self.rows]

    to_json = to_lists

    def to_text(self) -> str:
        return "\n".join(format(r, f"0{self.n}b") for r in self.rows)

    def __str__(self) -> str:
        return self.to_text()

    def __add__(self, other: "BoolMatrix") -> "BoolMatrix":
        return mat_add(self, other)

    def __mul__(self, other: "BoolMatrix") -> "BoolMatrix":
        return mat_mul(self, other)

    def __le__(self, other: "BoolMatrix") -> bool:
        """Entrywise order."""
        _same_size(self, other)
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def __lt__(self, other: "BoolMatrix") -> bool:
        return self <= other and self != other


class Shape(enum.Enum):
    FULL = "full"
    UPPER = "upper"
    LOWER = "lower"
    STAIR = "stair"

    @classmethod
    def parse(cls, value: "str | Shape") -> "Shape":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ParseError(f"unknown matrix shape {value!r}") from None


SHAPE_CAPS = {Shape.FULL: 4, Shape.UPPER: 5, Shape.LOWER: 5, Shape.STAIR: 10}


def _same_size(a: BoolMatrix, b: BoolMatrix) -> int:
    if a.n != b.n:
        raise DimensionError(f"matrix sizes differ: {a.n} != {b.n}")
    return a.n


def zero(n: int) -> BoolMatrix:
    return BoolMatrix(n, (0,) * n)


def unit(n: int) -> BoolMatrix:
    """The identity matrix."""
    return BoolMatrix(n, tuple(1 << (n - 1 - i) for i in range(n)))


def mat_add(a: BoolMatrix, b: BoolMatrix) -> BoolMatrix:
    n = _same_size(a, b)
    return BoolMatrix(n, tuple(x | y for x, y in zip(a.rows, b.rows)))


def mat_mul(a: BoolMatrix, b: BoolMatrix) -> BoolMatrix:
    """Boolean product: ``(ab)_ij = 1`` iff ``a_ik = b_kj = 1`` for some ``k``."""
    n = _same_size(a, b)
    brows = b.rows
    out = []
    for r in a.rows:
        acc = 0
        k = 0
        while r:
            if r & 1:
                acc |= brows[n - 1 - k]
            r >>= 1
            k += 1
        out.append(acc)
    return BoolMatrix(n, tuple(out))


def is_upper_triangular(a: BoolMatrix) -> bool:
    n = a.n
    # row i may only use columns i..n, i.e. the low n-i+1 bits
    return all(r >> (n - i) == 0 for i, r in enumerate(a.rows))


def is_lower_triangular(a: BoolMatrix) -> bool:
    n = a.n
    return all(r & ((1 << (n - 1 - i)) - 1) == 0 for i, r in enumerate(a.rows))


def is_stair_triangular(a: BoolMatrix) -> bool:
    """Unit diagonal, and every 1 at ``(i, j)`` with ``i < j`` is supported by
    1s at ``(i, i+1..j)`` and ``(i+1..j-1, j)``."""
    n = a.n
    if any(a[i, i] != 1 for i in range(1, n + 1)):
        return False
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if a[i, j]:
                if any(a[i, k] == 0 for k in range(i + 1, j + 1)):
                    return False
                if any(a[k, j] == 0 for k in range(i + 1, j)):
                    return False
    return is_upper_triangular(a)


def antidiagonal(n: int) -> BoolMatrix:
    """The permutation matrix ``P`` with 1s at ``(i, n+1-i)``."""
    return BoolMatrix(n, tuple(1 << i for i in range(n)))


def _reverse_bits(r: int, n: int) -> int:
    return int(format(r, f"0{n}b")[::-1], 2)


def conjugate_by_P(a: BoolMatrix) -> BoolMatrix:
    """``P a P``: entry ``(i, j)`` becomes ``a[n+1-i, n+1-j]``."""
    n = a.n
    return BoolMatrix(n, tuple(_reverse_bits(r, n) for r in reversed(a.rows)))


def negate_upper_triangle(a: BoolMatrix) -> BoolMatrix:
    """Flip every entry on or above the diagonal; entries below stay 0."""
    if not is_upper_triangular(a):
        raise DomainError("negate_upper_triangle expects an upper triangular matrix", "upper-triangular")
    n = a.n
    return BoolMatrix(n, tuple(r ^ ((1 << (n - i)) - 1) for i, r in enumerate(a.rows)))


def crop_first_col_last_row(a: BoolMatrix) -> BoolMatrix:
    """Drop the first column and the last row: ``out[i, j] = a[i, j+1]``."""
    n = a.n
    if n < 2:
        raise DimensionError("cannot crop a 1x1 matrix")
    mask = (1 << (n - 1)) - 1
    return BoolMatrix(n - 1, tuple(r & mask for r in a.rows[:-1]))


def _stair_rows(n: int) -> list[BoolMatrix]:
    # row i of a stair matrix is the interval i..r_i with r nondecreasing, r_i >= i
    found = []

    def extend(i, prev, ends):
        if i > n:
            rows = tuple(((1 << (n - i0 + 1)) - 1) ^ ((1 << (n - r)) - 1) for i0, r in enumerate(ends, start=1))
            found.append(BoolMatrix(n, rows))
            return
        for r in range(max(i, prev), n + 1):
            extend(i + 1, r, ends + [r])

    extend(1, 1, [])
    return found


def enumerate_matrices(n: int, shape: "Shape | str", force: bool = False) -> list[BoolMatrix]:
    """All ``n x n`` Boolean matrices of ``shape``, ascending by ``code``."""
    shape = Shape.parse(shape)
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    cap = SHAPE_CAPS[shape]
    if n > cap and not force:
        raise ResourceLimitError(f"enumerating {shape.value}({n}) exceeds the cap n<={cap}; pass force=True")
    if shape is Shape.STAIR:
        return sorted(_stair_rows(n), key=lambda m: m.code)
    if shape is Shape.FULL:
        return [BoolMatrix.from_code(n, c) for c in range(1 << (n * n))]
    if shape is Shape.UPPER:
        free = [(i, j) for i in range(n) for j in range(n) if j >= i]
    else:
        free = [(i, j) for i in range(n) for j in range(n) if j <= i]
    # free positions keep their row-major order, so counting over them in
    # binary (first position most significant) is ascending in ``code``
    weights = [1 << (n * n - 1 - (i * n + j)) for i, j in free]
    out = []
    for bits in itertools.product((0, 1), repeat=len(free)):
        code = sum(w for w, bit in zip(weights, bits) if bit)
        out.append(BoolMatrix.from_code(n, code))
    return out
