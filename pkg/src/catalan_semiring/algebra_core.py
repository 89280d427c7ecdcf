"""Finite additively idempotent semirings and an exhaustive checking engine.

A :class:`FiniteSemiring` wraps an indexed carrier together with up to two
binary operations (``"add"`` and ``"mul"``).  Either operation may be absent,
which is how monoid and semilattice reducts are modelled.  Elements are
addressed by their index in the carrier; operation tables are built lazily,
and vectorised with numpy once they exist.

Everything here is exhaustive: identities are checked under every assignment,
homomorphisms on every pair, isomorphisms by backtracking over bijections.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from .boolean_matrix import BoolMatrix, Shape, enumerate_matrices, mat_add, mat_mul
from .chain_maps import MonoidClass, Transformation, add, compose, enumerate_class
from .errors import CatalanError, DomainError, ResourceLimitError
from .terms import Identity, Power, Product, Sum, Term, Var, parse_term

__all__ = [
    "OPS",
    "AxiomError",
    "CheckReport",
    "FiniteSemiring",
    "default_budget",
    "eval_term",
    "check_identity",
    "recheck_identity_witness",
    "paper_identity",
    "paper_identities",
    "paper_witnesses",
    "check_homomorphism",
    "check_injective",
    "check_isomorphism_exists",
    "semiring_from_transformations",
    "semiring_from_matrices",
]

OPS = ("add", "mul")
AXIOM_CHECK_LIMIT = 200
TABLE_THRESHOLD = 1024
DEFAULT_BUDGET = 10**8
BUDGET_ENV = "CATALAN_BUDGET"
_CHUNK = 1 << 20


class AxiomError(CatalanError):
    """A carrier failed the ai-semiring axioms (an implementation bug upstream)."""


def default_budget() -> int:
    value = os.environ.get(BUDGET_ENV)
    return int(float(value)) if value else DEFAULT_BUDGET


def _render(x: Any) -> Any:
    if hasattr(x, "to_json"):
        return x.to_json()
    return x


@dataclass
class CheckReport:
    """Outcome of one exhaustive check.

    ``witness`` is set exactly when the verdict is ``"fails"``.
    """

    name: str
    verdict: str
    witness: dict | None = None
    pairs_checked: int = 0
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in ("holds", "fails"):
            raise ValueError(f"bad verdict {self.verdict!r}")
        if (self.verdict == "fails") != (self.witness is not None):
            raise ValueError("a witness must accompany exactly the failing verdicts")

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        out = {"name": self.name, "verdict": self.verdict, "pairs_checked": self.pairs_checked}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        return out


class FiniteSemiring:
    """Finite carrier with optional ``add`` / ``mul`` operations.

    ``add`` and ``mul`` act on elements.  ``table_builder(op)`` may supply a
    precomputed ``(N, N)`` index table faster than calling the operation
    pairwise.  Axioms of whichever operations are present are verified on
    construction when the carrier has at most ``AXIOM_CHECK_LIMIT`` elements
    (override with ``check_axioms``).
    """

    def __init__(
        self,
        elements: Sequence,
        add: Callable | None = None,
        mul: Callable | None = None,
        name: str = "S",
        *,
        table_builder: Callable[[str], np.ndarray] | None = None,
        check_axioms: bool | None = None,
    ):
        self.elements = list(elements)
        self.name = name
        self._ops = {"add": add, "mul": mul}
        self._index = {x: i for i, x in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise ValueError("carrier elements must be distinct")
        self._tables: dict[str, np.ndarray] = {}
        self._memo: dict[str, dict] = {"add": {}, "mul": {}}
        self._table_builder = table_builder
        if check_axioms is None:
            check_axioms = len(self.elements) <= AXIOM_CHECK_LIMIT
        self.axioms_checked = bool(check_axioms)
        if check_axioms:
            failures = [r for r in self.axiom_reports() if not r.holds]
            if failures:
                r = failures[0]
                raise AxiomError(f"{name}: axiom {r.name} fails at {r.witness}")

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        ops = "+".join(op for op in OPS if self.has(op))
        return f"FiniteSemiring({self.name!r}, size={len(self)}, ops={ops})"

    @property
    def ops(self) -> tuple[str, ...]:
        return tuple(op for op in OPS if self.has(op))

    def has(self, op: str) -> bool:
        return self._ops.get(op) is not None

    def index(self, x) -> int:
        try:
            return self._index[x]
        except (KeyError, TypeError):
            raise DomainError(f"{x!r} is not an element of {self.name}", "carrier") from None

    def element(self, i: int):
        return self.elements[i]

    def render(self, i: int):
        return _render(self.elements[int(i)])

    def _require(self, op: str) -> Callable:
        fn = self._ops.get(op)
        if fn is None:
            raise DomainError(f"{self.name} has no operation {op!r}", op)
        return fn

    def table(self, op: str) -> np.ndarray:
        """Full ``(N, N)`` operation table on indices (built on first use)."""
        fn = self._require(op)
        if op not in self._tables:
            if self._table_builder is not None:
                t = np.asarray(self._table_builder(op), dtype=np.int32)
            else:
                els = self.elements
                t = np.empty((len(els), len(els)), dtype=np.int32)
                for i, x in enumerate(els):
                    for j, y in enumerate(els):
                        t[i, j] = self.index(fn(x, y))
            self._tables[op] = t
        return self._tables[op]

    def tabulated(self, op: str) -> bool:
        return op in self._tables or len(self) <= TABLE_THRESHOLD

    def apply(self, op: str, i, j):
        """``i op j`` on indices; ``i`` and ``j`` may be numpy index arrays when
        the carrier is small enough to tabulate."""
        if self.tabulated(op):
            return self.table(op)[i, j]
        fn = self._require(op)
        memo = self._memo[op]
        key = (int(i), int(j))
        if key not in memo:
            memo[key] = self.index(fn(self.elements[key[0]], self.elements[key[1]]))
        return memo[key]

    def apply_elements(self, op: str, x, y):
        return self._require(op)(x, y)

    def power(self, i, k: int):
        """``i^k`` for ``k >= 1`` by repeated squaring."""
        if k < 1:
            raise ValueError("exponents must be >= 1")
        result = None
        base = i
        while k:
            if k & 1:
                result = base if result is None else self.apply("mul", result, base)
            k >>= 1
            if k:
                base = self.apply("mul", base, base)
        return result

    def reduct(self, ops: Iterable[str], name: str | None = None) -> "FiniteSemiring":
        """Same carrier with only ``ops`` kept (tables are shared)."""
        ops = tuple(ops)
        unknown = set(ops) - set(OPS)
        if unknown:
            raise ValueError(f"unknown operations {sorted(unknown)}")
        r = FiniteSemiring.__new__(FiniteSemiring)
        r.elements = self.elements
        r.name = name or f"{self.name}[{','.join(ops)}]"
        r._ops = {op: (self._ops[op] if op in ops else None) for op in OPS}
        r._index = self._index
        # shared: tables built through either object serve both
        r._tables = self._tables
        r._memo = self._memo
        r._table_builder = self._table_builder
        r.axioms_checked = self.axioms_checked
        return r

    def multiplicative_reduct(self) -> "FiniteSemiring":
        return self.reduct(("mul",), name=f"{self.name}[mul]")

    def additive_reduct(self) -> "FiniteSemiring":
        return self.reduct(("add",), name=f"{self.name}[add]")

    def subsemiring(self, indices: Iterable[int], name: str | None = None) -> "FiniteSemiring":
        idx = sorted(set(int(i) for i in indices))
        return FiniteSemiring(
            [self.elements[i] for i in idx],
            self._ops["add"],
            self._ops["mul"],
            name or f"sub({self.name})",
        )

    def axiom_reports(self) -> list[CheckReport]:
        """Exhaustive check of the axioms of the operations present."""
        n = len(self)
        idx = np.arange(n)
        reports = []

        def report(name, ok, labels):
            bad = np.argwhere(~ok)
            if bad.size:
                where = {lab: self.render(v) for lab, v in zip(labels, bad[0])}
                reports.append(CheckReport(name, "fails", witness=where, pairs_checked=int(ok.size)))
            else:
                reports.append(CheckReport(name, "holds", pairs_checked=int(ok.size)))

        if self.has("add"):
            a = self.table("add")
            report("add-commutative", a == a.T, "xy")
            report("add-idempotent", a[idx, idx] == idx, "x")
            report("add-associative", a[a[:, :, None], idx] == a[idx[:, None, None], a[None, :, :]], "xyz")
        if self.has("mul"):
            m = self.table("mul")
            report("mul-associative", m[m[:, :, None], idx] == m[idx[:, None, None], m[None, :, :]], "xyz")
        if self.has("add") and self.has("mul"):
            a, m = self.table("add"), self.table("mul")
            # x(y+z) = xy + xz, indexed (x, y, z)
            report("left-distributive", m[idx[:, None, None], a[None, :, :]] == a[m[:, :, None], m[:, None, :]], "xyz")
            # (y+z)x = yx + zx, indexed (y, z, x)
            report("right-distributive", m[a[:, :, None], idx] == a[m[:, None, :], m[None, :, :]], "yzx")
        return reports


def _eval(t: Term, env: dict, s: FiniteSemiring):
    if isinstance(t, Var):
        if t.name not in env:
            raise DomainError(f"unbound variable {t.name!r}", "assignment")
        return env[t.name]
    if isinstance(t, Power):
        return s.power(_eval(t.base, env, s), t.exponent)
    if isinstance(t, Product):
        value = _eval(t.factors[0], env, s)
        for f in t.factors[1:]:
            value = s.apply("mul", value, _eval(f, env, s))
        return value
    if isinstance(t, Sum):
        value = _eval(t.terms[0], env, s)
        for u in t.terms[1:]:
            value = s.apply("add", value, _eval(u, env, s))
        return value
    raise TypeError(f"not a term: {t!r}")


def eval_term(t: "Term | str", assignment: dict, s: FiniteSemiring) -> int:
    """Value (an index into ``s``) of ``t`` with variables bound to indices."""
    if isinstance(t, str):
        t = parse_term(t)
    return int(_eval(t, {k: int(v) for k, v in assignment.items()}, s))


def _identity_witness(identity: Identity, s: FiniteSemiring, values: Sequence[int], lhs: int, rhs: int) -> dict:
    return {
        "assignment": {v: int(i) for v, i in zip(identity.variables, values)},
        "elements": {v: s.render(i) for v, i in zip(identity.variables, values)},
        "lhs": int(lhs),
        "rhs": int(rhs),
        "lhs_value": s.render(lhs),
        "rhs_value": s.render(rhs),
    }


def check_identity(identity: "Identity | str", s: FiniteSemiring, budget: int | None = None, name: str | None = None) -> CheckReport:
    """Decide whether ``identity`` holds in ``s`` by trying every assignment.

    Assignments are visited in lexicographic order of element indices, so a
    failure reports the first offending assignment.
    """
    if isinstance(identity, str):
        from .terms import parse_identity

        identity = parse_identity(identity)
    if not identity.multiplicative_only and not s.has("add"):
        raise DomainError(f"{s.name} has no addition but the identity uses +", "add")
    name = name or f"{identity} in {s.name}"
    nvars = len(identity.variables)
    size = len(s)
    total = size**nvars
    limit = default_budget() if budget is None else budget
    if total > limit:
        raise ResourceLimitError(f"{total} assignments exceed the budget of {limit}", required=total)

    if all(s.tabulated(op) for op in s.ops):
        shape = (size,) * nvars
        for start in range(0, total, _CHUNK):
            flat = np.arange(start, min(total, start + _CHUNK))
            coords = np.unravel_index(flat, shape)
            env = dict(zip(identity.variables, coords))
            lhs = np.broadcast_to(_eval(identity.lhs, env, s), flat.shape)
            rhs = np.broadcast_to(_eval(identity.rhs, env, s), flat.shape)
            bad = np.flatnonzero(lhs != rhs)
            if bad.size:
                k = bad[0]
                values = [int(c[k]) for c in coords]
                return CheckReport(
                    name, "fails",
                    witness=_identity_witness(identity, s, values, lhs[k], rhs[k]),
                    pairs_checked=int(start + k + 1),
                )
        return CheckReport(name, "holds", pairs_checked=total)

    for count, values in enumerate(itertools.product(range(size), repeat=nvars), start=1):
        env = dict(zip(identity.variables, values))
        lhs, rhs = _eval(identity.lhs, env, s), _eval(identity.rhs, env, s)
        if lhs != rhs:
            return CheckReport(name, "fails", witness=_identity_witness(identity, s, values, lhs, rhs), pairs_checked=count)
    return CheckReport(name, "holds", pairs_checked=total)


def recheck_identity_witness(identity: Identity, s: FiniteSemiring, report: CheckReport) -> bool:
    """Re-evaluate a failing report's witness; True iff it still separates the sides."""
    if report.witness is None:
        return False
    env = report.witness["assignment"]
    lhs, rhs = eval_term(identity.lhs, env, s), eval_term(identity.rhs, env, s)
    return lhs == report.witness["lhs"] and rhs == report.witness["rhs"] and lhs != rhs


def _xpow(name: str, k: int) -> Term:
    return Var(name) if k == 1 else Power(Var(name), k)


def paper_identity(which: int, n: int) -> Identity:
    """``which=1``: ``x^n = x^(n+1)`` (n >= 1).
    ``which=2``: ``x^(n-1) y^(n-1) = x^n y^(n-1) + x^(n-1) y^n`` (n >= 2)."""
    if which == 1:
        if n < 1:
            raise ValueError("x^n = x^(n+1) needs n >= 1")
        return Identity(_xpow("x", n), _xpow("x", n + 1), ("x",))
    if which == 2:
        if n < 2:
            raise ValueError("x^(n-1) y^(n-1) = ... needs n >= 2 (no empty products)")
        lhs = Product((_xpow("x", n - 1), _xpow("y", n - 1)))
        rhs = Sum((Product((_xpow("x", n), _xpow("y", n - 1))), Product((_xpow("x", n - 1), _xpow("y", n)))))
        return Identity(lhs, rhs, ("x", "y"))
    raise ValueError(f"no identity number {which}")


def paper_identities(n: int) -> tuple[Identity, Identity]:
    return paper_identity(1, n), paper_identity(2, n)


def paper_witnesses(n: int) -> tuple[Transformation, Transformation, Transformation]:
    """Counterexample maps ``(alpha, beta, gamma)`` for size parameter ``n >= 1``.

    ``alpha`` in ``C_{n+2}`` shifts every point up by one (capped at ``n+2``);
    ``beta`` does the same in ``C_{n+1}``; ``gamma`` in ``C_{n+1}`` sends
    ``1..n`` to ``n`` and fixes ``n+1``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    alpha = Transformation(tuple(i + 1 if i <= n + 1 else n + 2 for i in range(1, n + 3)))
    beta = Transformation(tuple(i + 1 if i <= n else n + 1 for i in range(1, n + 2)))
    gamma = Transformation(tuple(n if i <= n else n + 1 for i in range(1, n + 2)))
    return alpha, beta, gamma


def check_homomorphism(
    f: Callable,
    a: FiniteSemiring,
    b: FiniteSemiring,
    ops: Iterable[str] = OPS,
    name: str | None = None,
) -> CheckReport:
    """``f(x op y) == f(x) op f(y)`` for every pair of ``a`` and each op in ``ops``."""
    ops = tuple(ops)
    name = name or f"homomorphism {a.name} -> {b.name} ({'+'.join(ops)})"
    images = [b.index(f(x)) for x in a.elements]
    per_op = {}
    checked = 0
    for op in ops:
        for i in range(len(a)):
            for j in range(len(a)):
                checked += 1
                lhs = images[int(a.apply(op, i, j))]
                rhs = int(b.apply(op, images[i], images[j]))
                if lhs != rhs:
                    return CheckReport(
                        name, "fails",
                        witness={
                            "op": op,
                            "x": a.render(i),
                            "y": a.render(j),
                            "f(x op y)": b.render(lhs),
                            "f(x) op f(y)": b.render(rhs),
                        },
                        pairs_checked=checked,
                    )
        per_op[op] = len(a) ** 2
    return CheckReport(name, "holds", pairs_checked=checked, details={"pairs_per_op": per_op})


def check_injective(f: Callable, a: FiniteSemiring, name: str | None = None) -> CheckReport:
    name = name or f"injective on {a.name}"
    seen: dict = {}
    for i, x in enumerate(a.elements):
        y = f(x)
        if y in seen:
            j = seen[y]
            return CheckReport(
                name, "fails",
                witness={"x": a.render(j), "y": a.render(i), "image": _render(y)},
                pairs_checked=i + 1,
            )
        seen[y] = i
    return CheckReport(name, "holds", pairs_checked=len(a), details={"distinct_images": len(seen)})


def _signatures(s: FiniteSemiring, ops: Sequence[str]) -> list[tuple]:
    n = len(s)
    idx = np.arange(n)
    sig = [[] for _ in range(n)]
    for op in ops:
        t = s.table(op)
        cols = [
            t[idx, idx] == idx,
            (t == idx[:, None]).sum(axis=1),
            (t == idx[None, :]).sum(axis=0),
            (t == idx[None, :]).sum(axis=1),
            (t == idx[:, None]).sum(axis=0),
        ]
        for i in range(n):
            sig[i].extend(int(c[i]) for c in cols)
    return [tuple(x) for x in sig]


def check_isomorphism_exists(
    a: FiniteSemiring,
    b: FiniteSemiring,
    ops: Iterable[str] | None = None,
    name: str | None = None,
    max_size: int = 42,
    node_budget: int = 10**7,
    prune: bool = True,
) -> CheckReport:
    """Search for a bijection ``a -> b`` preserving every op in ``ops``
    (default: the operations both structures have).

    With ``prune`` the candidates for each element are restricted by simple
    isomorphism invariants first.  ``holds`` carries the bijection in
    ``details["bijection"]``; ``fails`` carries the reason (size mismatch,
    differing invariants, exhausted search) as its witness.
    """
    ops = tuple(op for op in OPS if a.has(op) and b.has(op)) if ops is None else tuple(ops)
    name = name or f"isomorphism {a.name} ~ {b.name} ({'+'.join(ops)})"
    if len(a) != len(b):
        return CheckReport(name, "fails", witness={"reason": "size mismatch", "sizes": [len(a), len(b)]})
    n = len(a)
    if n > max_size:
        raise ResourceLimitError(f"isomorphism search on {n} elements exceeds max_size={max_size}", required=n)
    ta = {op: a.table(op) for op in ops}
    tb = {op: b.table(op) for op in ops}
    if prune:
        sig_a, sig_b = _signatures(a, ops), _signatures(b, ops)
    else:
        sig_a = sig_b = [()] * n
    if sorted(sig_a) != sorted(sig_b):
        return CheckReport(name, "fails", witness={"reason": "element invariants differ", "nodes": 0})
    candidates = [[j for j in range(n) if sig_b[j] == sig_a[i]] for i in range(n)]
    order = sorted(range(n), key=lambda i: len(candidates[i]))
    phi = [-1] * n
    inv = [-1] * n
    nodes = 0

    def consistent(i):
        # all products among assigned elements agree with phi
        for op in ops:
            t, u = ta[op], tb[op]
            for k in range(n):
                if phi[k] < 0:
                    continue
                for x, y in ((i, k), (k, i)):
                    z = t[x, y]
                    w = u[phi[x], phi[y]]
                    if phi[z] >= 0:
                        if phi[z] != w:
                            return False
                    elif inv[w] >= 0:
                        return False
        return True

    def search(depth):
        nonlocal nodes
        if depth == n:
            return True
        i = order[depth]
        for j in candidates[i]:
            if inv[j] >= 0:
                continue
            nodes += 1
            if nodes > node_budget:
                raise ResourceLimitError(f"isomorphism search exceeded {node_budget} nodes", required=nodes)
            phi[i], inv[j] = j, i
            if consistent(i) and search(depth + 1):
                return True
            phi[i], inv[j] = -1, -1
        return False

    if search(0):
        # final full verification, independent of the pruning logic
        for op in ops:
            if not all(phi[ta[op][x, y]] == tb[op][phi[x], phi[y]] for x in range(n) for y in range(n)):
                raise AssertionError("isomorphism search produced an invalid bijection")
        bijection = [[a.render(i), b.render(phi[i])] for i in range(n)]
        return CheckReport(name, "holds", pairs_checked=nodes, details={"bijection": bijection})
    return CheckReport(name, "fails", witness={"reason": "exhausted", "nodes": nodes}, pairs_checked=nodes)


def semiring_from_transformations(
    n: int, cls: "MonoidClass | str", ops: Iterable[str] = OPS, force: bool = False
) -> FiniteSemiring:
    """``O_n``, ``C_n`` or ``C^-_n`` with max-addition and right-action composition."""
    cls = MonoidClass.parse(cls)
    ops = tuple(ops)
    label = {MonoidClass.O: "O", MonoidClass.C: "C", MonoidClass.CMINUS: "Cminus"}[cls]
    return FiniteSemiring(
        enumerate_class(n, cls, force=force),
        add if "add" in ops else None,
        compose if "mul" in ops else None,
        name=f"{label}_{n}" + ("" if set(ops) == set(OPS) else f"[{','.join(ops)}]"),
    )


def _matrix_table_builder(elements: list[BoolMatrix]) -> Callable[[str], np.ndarray]:
    n = elements[0].n
    codes = np.array([m.code for m in elements], dtype=np.int64)
    order = np.argsort(codes)
    sorted_codes = codes[order]

    def to_index(code_array):
        pos = np.clip(np.searchsorted(sorted_codes, code_array), 0, len(codes) - 1)
        if (sorted_codes[pos] != code_array).any():
            raise AxiomError("matrix carrier is not closed under the operation")
        return order[pos].astype(np.int32)

    def build(op):
        if op == "add":
            return to_index(codes[:, None] | codes[None, :])
        dense = np.array([m.to_lists() for m in elements], dtype=bool)
        weights = (1 << np.arange(n * n - 1, -1, -1, dtype=np.int64)).reshape(n, n)
        out = np.empty((len(elements), len(elements)), dtype=np.int64)
        step = max(1, _CHUNK // max(1, len(elements) * n * n * n))
        for s in range(0, len(elements), step):
            block = dense[s : s + step]
            # (block i, all j, row, k, col)
            prod = (block[:, None, :, :, None] & dense[None, :, None, :, :]).any(axis=3)
            out[s : s + step] = (prod * weights).sum(axis=(2, 3))
        return to_index(out)

    return build


def semiring_from_matrices(n: int, shape: "Shape | str", ops: Iterable[str] = OPS, force: bool = False) -> FiniteSemiring:
    """Boolean ``n x n`` matrices of ``shape`` under entrywise max and the Boolean product."""
    shape = Shape.parse(shape)
    ops = tuple(ops)
    elements = enumerate_matrices(n, shape, force=force)
    return FiniteSemiring(
        elements,
        mat_add if "add" in ops else None,
        mat_mul if "mul" in ops else None,
        name=f"{shape.value}({n})" + ("" if set(ops) == set(OPS) else f"[{','.join(ops)}]"),
        table_builder=_matrix_table_builder(elements),
    )
