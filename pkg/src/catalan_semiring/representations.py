"""Matrix representations of Catalan semirings and the Young-diagram picture.

* ``rep_B``  -- the 0/1 graph matrix of a transformation (multiplicative only),
* ``rep_S``  -- stair triangular matrix of an extensive map, ``1`` iff ``i <= j <= ia``,
* ``rep_M``  -- for a decreasing map of ``[n+1]``, the lower triangular ``n x n``
  matrix whose row ``i`` holds ``(i+1)a - 1`` left-justified 1s,
* ``rep_M_conjugated`` -- ``P M(a) P``, landing in the upper triangular matrices.

Rows of ``rep_M`` are unary numbers, so their lengths read from the bottom row
upward form a partition inside the staircase ``(n, n-1, ..., 1)``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .boolean_matrix import (
    BoolMatrix,
    conjugate_by_P,
    crop_first_col_last_row,
    is_lower_triangular,
    negate_upper_triangle,
)
from .chain_maps import Transformation, bar, is_decreasing, is_extensive, is_order_preserving
from .errors import DomainError, ResourceLimitError

__all__ = [
    "Partition",
    "STAIRCASE_CAP",
    "rep_B",
    "rep_S",
    "rep_M",
    "rep_M_conjugated",
    "complement_pipeline",
    "complement_steps",
    "matrix_to_partition",
    "partition_to_matrix",
    "enumerate_staircase_partitions",
    "element_record",
]

STAIRCASE_CAP = 12


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing positive parts; the empty tuple is the empty diagram."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(parts[k] < parts[k + 1] for k in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def fits_staircase(self, n: int) -> bool:
        """Contained in ``(n, n-1, ..., 1)``."""
        return all(p <= n - k for k, p in enumerate(self.parts))

    def diagram(self, n: int | None = None) -> str:
        """French-convention drawing: the first (longest) row at the bottom."""
        width = n if n is not None else (self.parts[0] if self.parts else 0)
        height = n if n is not None else len(self.parts)
        padded = list(self.parts) + [0] * (height - len(self.parts))
        lines = ["#" * p + "." * max(0, width - k - p) for k, p in enumerate(padded)]
        return "\n".join(reversed(lines))

    def to_json(self) -> list[int]:
        return list(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")" if self.parts else "()"


def _require(a: Transformation, predicate, name: str, what: str) -> None:
    if not predicate(a):
        raise DomainError(f"{what}: {a} is not {name}", name)


def rep_B(a: Transformation) -> BoolMatrix:
    """Entry ``(i, j)`` is 1 iff ``ia == j``."""
    n = a.n
    return BoolMatrix(n, tuple(1 << (n - x) for x in a.images))


def rep_S(a: Transformation) -> BoolMatrix:
    """Stair matrix of an extensive order-preserving map."""
    _require(a, is_order_preserving, "order-preserving", "rep_S")
    _require(a, is_extensive, "extensive", "rep_S")
    n = a.n
    rows = tuple(((1 << (n - i + 1)) - 1) ^ ((1 << (n - x)) - 1) for i, x in enumerate(a.images, start=1))
    return BoolMatrix(n, rows)


def rep_M(a: Transformation) -> BoolMatrix:
    """Lower triangular ``n x n`` image of a decreasing order-preserving map of ``[n+1]``."""
    _require(a, is_order_preserving, "order-preserving", "rep_M")
    _require(a, is_decreasing, "decreasing", "rep_M")
    if a.n < 2:
        raise DomainError("rep_M needs a chain of size at least 2", "size")
    n = a.n - 1
    rows = []
    for i in range(1, n + 1):
        length = a(i + 1) - 1
        rows.append(((1 << length) - 1) << (n - length))
    return BoolMatrix(n, tuple(rows))


def rep_M_conjugated(a: Transformation) -> BoolMatrix:
    return conjugate_by_P(rep_M(a))


def complement_steps(a: Transformation) -> dict:
    """Every intermediate object of the complementarity construction for ``a`` in ``C_{n+1}``.

    Keys: ``alpha``, ``S``, ``negated``, ``cropped``, ``alpha_bar``, ``M_bar``, ``PMP_bar``.
    """
    s = rep_S(a)
    negated = negate_upper_triangle(s)
    cropped = crop_first_col_last_row(negated)
    alpha_bar = bar(a)
    m_bar = rep_M(alpha_bar)
    return {
        "alpha": a,
        "S": s,
        "negated": negated,
        "cropped": cropped,
        "alpha_bar": alpha_bar,
        "M_bar": m_bar,
        "PMP_bar": conjugate_by_P(m_bar),
    }


def complement_pipeline(a: Transformation) -> BoolMatrix:
    """Negate the upper triangle of ``S(a)``, then drop its first column and last row.

    For ``a`` in ``C_{n+1}`` the result equals ``rep_M_conjugated(bar(a))``.
    """
    if a.n < 2:
        raise DomainError("complement_pipeline needs a chain of size at least 2", "size")
    return crop_first_col_last_row(negate_upper_triangle(rep_S(a)))


def _row_length(row: int, n: int) -> int:
    """Length ``k`` of a row of the form ``1^k 0^(n-k)``, or -1."""
    for k in range(n + 1):
        if row == ((1 << k) - 1) << (n - k):
            return k
    return -1


def matrix_to_partition(m: BoolMatrix) -> Partition:
    """Row lengths of an ``rep_M`` image, read from the last row up, zeros dropped."""
    n = m.n
    if not is_lower_triangular(m):
        raise DomainError("matrix is not lower triangular", "lower-triangular")
    lengths = [_row_length(r, n) for r in m.rows]
    if any(k < 0 for k in lengths):
        raise DomainError("every row must be left-justified 1s", "left-justified")
    if any(lengths[i] > lengths[i + 1] for i in range(n - 1)):
        raise DomainError("row lengths must weakly increase downwards", "weakly-increasing")
    return Partition(tuple(k for k in reversed(lengths) if k))


def partition_to_matrix(p: Partition, n: int) -> BoolMatrix:
    """Inverse of ``matrix_to_partition`` for diagrams inside the staircase of size ``n``."""
    if not p.fits_staircase(n):
        raise DomainError(f"{p} does not fit the staircase of size {n}", "staircase")
    padded = list(p.parts) + [0] * (n - len(p.parts))
    lengths = list(reversed(padded))
    return BoolMatrix(n, tuple(((1 << k) - 1) << (n - k) for k in lengths))


def enumerate_staircase_partitions(n: int, force: bool = False) -> list[Partition]:
    """Partitions inside ``(n, n-1, ..., 1)``.

    Ordered lexicographically by ``(lambda_n, ..., lambda_1)`` with zero padding,
    which matches the lexicographic order of the corresponding decreasing maps.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > STAIRCASE_CAP and not force:
        raise ResourceLimitError(f"staircase partitions for n={n} exceed the cap n<={STAIRCASE_CAP}")
    out: list[Partition] = []

    def fill(k, floor, tail):
        # tail holds lambda_{k+1}, ..., lambda_n (padded), smallest last
        if k == 0:
            out.append(Partition(tuple(p for p in tail if p)))
            return
        for part in range(floor, n + 2 - k):
            fill(k - 1, part, (part,) + tail)

    fill(n, 0, ())
    return out


def element_record(a: Transformation) -> dict:
    """JSON record with every representation defined at ``a``."""
    record: dict = {"transformation": a.to_json()}
    if not is_order_preserving(a):
        return record
    if is_extensive(a):
        record["S"] = rep_S(a).to_json()
    if is_decreasing(a) and a.n >= 2:
        m = rep_M(a)
        record["M"] = m.to_json()
        record["PMP"] = conjugate_by_P(m).to_json()
        record["partition"] = matrix_to_partition(m).to_json()
    return record

