"""Order-preserving transformations of a finite chain.

A transformation of the chain ``1 < 2 < ... < n`` is stored as the tuple of
its images ``(1a, 2a, ..., na)`` using 1-based values.  Transformations act
on the *right*: the product ``a * b`` first applies ``a`` and then ``b``, so
that ``i(ab) = (ia)b``.

Three families are enumerable:

* ``O``      -- all order-preserving maps,
* ``C``      -- extensive (``i <= ia``) order-preserving maps,
* ``Cminus`` -- decreasing (``ia <= i``) order-preserving maps.

With pointwise-maximum addition each family is an additively idempotent
semiring; the induced order ``a <= b iff a + b == b`` is pointwise.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionError, ParseError, ResourceLimitError

__all__ = [
    "MonoidClass",
    "Transformation",
    "ENUMERATION_CAPS",
    "identity",
    "compose",
    "add",
    "meet",
    "power",
    "leq",
    "bar",
    "is_order_preserving",
    "is_extensive",
    "is_decreasing",
    "belongs_to",
    "enumerate_class",
    "hasse_edges",
    "hasse_dot",
    "parse_transformation",
    "format_transformation",
]


class MonoidClass(enum.Enum):
    O = "o"
    C = "c"
    CMINUS = "cminus"

    @classmethod
    def parse(cls, value: "str | MonoidClass") -> "MonoidClass":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("-", "").replace("_", "")
        for member in cls:
            if member.value == key:
                return member
        raise ParseError(f"unknown monoid class {value!r}; expected one of o, c, cminus")


# Largest n enumerated without an explicit ``force=True``.
ENUMERATION_CAPS = {MonoidClass.O: 8, MonoidClass.C: 10, MonoidClass.CMINUS: 10}


@dataclass(frozen=True, order=True)
class Transformation:
    """A self-map of ``{1, ..., n}`` given by its image vector (1-based)."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if not images:
            raise DimensionError("a transformation needs a chain of size n >= 1")
        n = len(images)
        for i, x in enumerate(images, start=1):
            if not 1 <= x <= n:
                raise ValueError(f"image of {i} is {x}, outside 1..{n}")
        object.__setattr__(self, "images", images)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        """Image of the point ``i`` (1-based)."""
        return self.images[i - 1]

    def __mul__(self, other: "Transformation") -> "Transformation":
        return compose(self, other)

    def __add__(self, other: "Transformation") -> "Transformation":
        return add(self, other)

    def __pow__(self, k: int) -> "Transformation":
        return power(self, k)

    def __str__(self) -> str:
        return format_transformation(self)

    def __repr__(self) -> str:
        return f"Transformation({format_transformation(self)!r})"

    def to_json(self) -> list[int]:
        return list(self.images)


def _same_size(a: Transformation, b: Transformation) -> int:
    if a.n != b.n:
        raise DimensionError(f"chain sizes differ: {a.n} != {b.n}")
    return a.n


def identity(n: int) -> Transformation:
    """The identity map on ``[n]``."""
    return Transformation(tuple(range(1, n + 1)))


def compose(a: Transformation, b: Transformation) -> Transformation:
    """Right-action product: ``i(ab) = (ia)b``."""
    _same_size(a, b)
    bi = b.images
    return Transformation(tuple(bi[x - 1] for x in a.images))


def add(a: Transformation, b: Transformation) -> Transformation:
    """Pointwise maximum of the images."""
    _same_size(a, b)
    return Transformation(tuple(map(max, a.images, b.images)))


def meet(a: Transformation, b: Transformation) -> Transformation:
    """Pointwise minimum of the images (lattice meet in ``O_n``)."""
    _same_size(a, b)
    return Transformation(tuple(map(min, a.images, b.images)))


def power(a: Transformation, k: int) -> Transformation:
    """``k``-fold product of ``a`` with itself; ``power(a, 0)`` is the identity."""
    if k < 0:
        raise ValueError("exponent must be non-negative")
    result = identity(a.n)
    base = a
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def leq(a: Transformation, b: Transformation) -> bool:
    _same_size(a, b)
    return all(x <= y for x, y in zip(a.images, b.images))


def bar(a: Transformation) -> Transformation:
    """Conjugate of ``a`` by the order reversal ``i -> n+1-i``.

    ``bar`` is an involutive automorphism of the monoid ``O_n`` and swaps the
    extensive and the decreasing maps.
    """
    m = a.n
    return Transformation(tuple(m + 1 - a(m + 1 - i) for i in range(1, m + 1)))


def is_order_preserving(a: Transformation) -> bool:
    im = a.images
    return all(im[i] <= im[i + 1] for i in range(len(im) - 1))


def is_extensive(a: Transformation) -> bool:
    return all(i <= x for i, x in enumerate(a.images, start=1))


def is_decreasing(a: Transformation) -> bool:
    return all(x <= i for i, x in enumerate(a.images, start=1))


def belongs_to(a: Transformation, cls: "MonoidClass | str") -> bool:
    cls = MonoidClass.parse(cls)
    if not is_order_preserving(a):
        return False
    if cls is MonoidClass.C:
        return is_extensive(a)
    if cls is MonoidClass.CMINUS:
        return is_decreasing(a)
    return True


def _check_cap(n: int, cap: int, what: str, force: bool) -> None:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > cap and not force:
        raise ResourceLimitError(f"{what} with n={n} exceeds the cap n<={cap}; pass force=True to override")


def enumerate_class(n: int, cls: "MonoidClass | str", force: bool = False) -> list[Transformation]:
    """All maps of ``[n]`` in ``cls``, in lexicographic order of image vectors."""
    cls = MonoidClass.parse(cls)
    _check_cap(n, ENUMERATION_CAPS[cls], f"enumerating {cls.value}", force)
    # nondecreasing tuples come out of combinations_with_replacement in lex order
    out = []
    for images in itertools.combinations_with_replacement(range(1, n + 1), n):
        if cls is MonoidClass.C and any(x < i for i, x in enumerate(images, start=1)):
            continue
        if cls is MonoidClass.CMINUS and any(x > i for i, x in enumerate(images, start=1)):
            continue
        out.append(Transformation(images))
    return out


def hasse_edges(elements: Sequence[Transformation]) -> list[tuple[int, int]]:
    """Covering pairs ``(i, j)`` of the pointwise order: ``elements[i] < elements[j]``
    with nothing strictly in between.  Indices refer to ``elements``."""
    m = len(elements)
    below = [[i != j and leq(elements[i], elements[j]) for j in range(m)] for i in range(m)]
    edges = []
    for i in range(m):
        for j in range(m):
            if below[i][j] and not any(below[i][k] and below[k][j] for k in range(m)):
                edges.append((i, j))
    return edges


def hasse_dot(elements: Sequence[Transformation], name: str = "hasse") -> str:
    """DOT digraph of the Hasse diagram, bottom-to-top, layered by image sum."""
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    labels = [format_transformation(a) for a in elements]
    for label in labels:
        lines.append(f'  "{label}";')
    layers: dict[int, list[str]] = {}
    for a, label in zip(elements, labels):
        layers.setdefault(sum(a.images), []).append(label)
    for rank in sorted(layers):
        members = " ".join(f'"{x}";' for x in layers[rank])
        lines.append(f"  {{ rank=same; {members} }}")
    for i, j in hasse_edges(elements):
        lines.append(f'  "{labels[i]}" -> "{labels[j]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_transformation(text: "str | Iterable[int]") -> Transformation:
    """Parse ``"1244"`` (digit form, n <= 9), ``"10,1,3"`` (comma form) or a
    sequence of integers (the JSON form)."""
    if not isinstance(text, str):
        values = list(text)
    else:
        s = text.strip()
        if s.startswith("[") and s.endswith("]"):
            s = s[1:-1]
        if not s:
            raise ParseError("empty transformation text")
        try:
            if "," in s:
                values = [int(part) for part in s.split(",")]
            elif s.isdigit():
                values = [int(ch) for ch in s]
            else:
                raise ValueError
        except ValueError:
            raise ParseError(f"malformed transformation text {text!r}") from None
    try:
        return Transformation(tuple(values))
    except (ValueError, TypeError) as exc:
        raise ParseError(f"invalid transformation {text!r}: {exc}") from None


def format_transformation(a: Transformation) -> str:
    if a.n <= 9:
        return "".join(str(x) for x in a.images)
    return ",".join(str(x) for x in a.images)
