"""Semiring terms and identities.

Terms are built from single-letter variables with sums, (non-commutative)
products and positive powers.  The text syntax is the usual one::

    x^2 y^2 = x^3 y^2 + x^2 y^3

Juxtaposition (or ``*``) is the product, ``^k`` a power with ``k >= 1``,
``+`` the sum, and parentheses group.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import ParseError

__all__ = [
    "Var",
    "Sum",
    "Product",
    "Power",
    "Term",
    "Identity",
    "normalize",
    "variables_of",
    "format_term",
    "parse_term",
    "parse_identity",
]


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Sum:
    terms: tuple


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Power:
    base: object
    exponent: int

    def __post_init__(self):
        if self.exponent < 1:
            raise ValueError("exponents must be >= 1")


Term = Union[Var, Sum, Product, Power]


def normalize(t: Term) -> Term:
    """Flatten nested sums/products, unwrap 1-child nodes and ``t^1``."""
    if isinstance(t, Var):
        return t
    if isinstance(t, Power):
        base = normalize(t.base)
        if t.exponent == 1:
            return base
        if isinstance(base, Power):
            return Power(base.base, base.exponent * t.exponent)
        return Power(base, t.exponent)
    if isinstance(t, Sum):
        flat = []
        for child in map(normalize, t.terms):
            flat.extend(child.terms if isinstance(child, Sum) else [child])
        return flat[0] if len(flat) == 1 else Sum(tuple(flat))
    if isinstance(t, Product):
        flat = []
        for child in map(normalize, t.factors):
            flat.extend(child.factors if isinstance(child, Product) else [child])
        return flat[0] if len(flat) == 1 else Product(tuple(flat))
    raise TypeError(f"not a term: {t!r}")


def variables_of(t: Term) -> list[str]:
    """Variables in order of first occurrence."""
    seen: list[str] = []

    def walk(u):
        if isinstance(u, Var):
            if u.name not in seen:
                seen.append(u.name)
        elif isinstance(u, Power):
            walk(u.base)
        else:
            for child in (u.terms if isinstance(u, Sum) else u.factors):
                walk(child)

    walk(t)
    return seen


def has_sum(t: Term) -> bool:
    if isinstance(t, Var):
        return False
    if isinstance(t, Sum):
        return True
    if isinstance(t, Power):
        return has_sum(t.base)
    return any(has_sum(f) for f in t.factors)


def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Sum):
        return " + ".join(format_term(u) for u in t.terms)
    if isinstance(t, Product):
        parts = []
        for f in t.factors:
            s = format_term(f)
            parts.append(f"({s})" if isinstance(f, Sum) else s)
        return " ".join(parts)
    base = format_term(t.base)
    if not isinstance(t.base, Var):
        base = f"({base})"
    return f"{base}^{t.exponent}"


@dataclass(frozen=True)
class Identity:
    lhs: Term
    rhs: Term
    variables: tuple[str, ...] = ()

    def __post_init__(self):
        lhs, rhs = normalize(self.lhs), normalize(self.rhs)
        occurring = variables_of(lhs) + [v for v in variables_of(rhs) if v not in variables_of(lhs)]
        variables = tuple(self.variables) or tuple(sorted(occurring))
        missing = [v for v in occurring if v not in variables]
        if missing:
            raise ValueError(f"variables {missing} occur but are not listed")
        object.__setattr__(self, "lhs", lhs)
        object.__setattr__(self, "rhs", rhs)
        object.__setattr__(self, "variables", variables)

    @property
    def multiplicative_only(self) -> bool:
        return not (has_sum(self.lhs) or has_sum(self.rhs))

    def __str__(self) -> str:
        return f"{format_term(self.lhs)} = {format_term(self.rhs)}"


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>[A-Za-z])|(?P<op>[+*^()=]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} at offset {pos} in {text!r}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
        pos = m.end()
    return tokens


class _Parser:
    # sum := product ('+' product)* ; product := power (['*'] power)* ;
    # power := atom ('^' num)* ; atom := var | '(' sum ')'
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, value=None):
        kind, tok = self.peek()
        if kind is None or (value is not None and tok != value):
            raise ParseError(f"expected {value or 'a token'} in {self.text!r}")
        self.pos += 1
        return kind, tok

    def parse_sum(self):
        terms = [self.parse_product()]
        while self.peek()[1] == "+":
            self.take("+")
            terms.append(self.parse_product())
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def parse_product(self):
        factors = [self.parse_power()]
        while True:
            kind, tok = self.peek()
            if tok == "*":
                self.take("*")
                factors.append(self.parse_power())
            elif kind == "var" or tok == "(":
                factors.append(self.parse_power())
            else:
                break
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def parse_power(self):
        t = self.parse_atom()
        while self.peek()[1] == "^":
            self.take("^")
            kind, tok = self.take()
            if kind != "num" or int(tok) < 1:
                raise ParseError(f"exponent must be a positive integer in {self.text!r}")
            t = Power(t, int(tok))
        return t

    def parse_atom(self):
        kind, tok = self.take()
        if kind == "var":
            return Var(tok)
        if tok == "(":
            t = self.parse_sum()
            self.take(")")
            return t
        raise ParseError(f"unexpected {tok!r} in {self.text!r}")


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.parse_sum()
    if p.pos != len(p.tokens):
        raise ParseError(f"trailing input {p.tokens[p.pos][1]!r} in {text!r}")
    return normalize(t)


def parse_identity(text: str) -> Identity:
    if text.count("=") != 1:
        raise ParseError(f"an identity needs exactly one '=': {text!r}")
    left, right = text.split("=")
    return Identity(parse_term(left), parse_term(right))
