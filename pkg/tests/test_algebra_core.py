import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from catalan_semiring.algebra_core import (
    AxiomError,
    CheckReport,
    FiniteSemiring,
    check_homomorphism,
    check_identity,
    check_injective,
    check_isomorphism_exists,
    eval_term,
    paper_identities,
    paper_identity,
    paper_witnesses,
    recheck_identity_witness,
    semiring_from_matrices,
    semiring_from_transformations,
)
from catalan_semiring.boolean_matrix import BoolMatrix, enumerate_matrices, mat_add, mat_mul
from catalan_semiring.chain_maps import add, bar, compose, identity, parse_transformation, power
from catalan_semiring.errors import DomainError, ResourceLimitError
from catalan_semiring.representations import rep_B, rep_M, rep_S
from catalan_semiring.terms import parse_identity, parse_term

T = parse_transformation


def brute_identity(identity, elements, add_fn, mul_fn):
    """Element-level evaluation over every assignment, no tables involved."""
    def ev(t, env):
        from catalan_semiring.terms import Power, Product, Sum, Var

        if isinstance(t, Var):
            return env[t.name]
        if isinstance(t, Power):
            base = ev(t.base, env)
            out = base
            for _ in range(t.exponent - 1):
                out = mul_fn(out, base)
            return out
        if isinstance(t, Product):
            out = ev(t.factors[0], env)
            for f in t.factors[1:]:
                out = mul_fn(out, ev(f, env))
            return out
        out = ev(t.terms[0], env)
        for u in t.terms[1:]:
            out = add_fn(out, ev(u, env))
        return out

    for values in itertools.product(elements, repeat=len(identity.variables)):
        env = dict(zip(identity.variables, values))
        if ev(identity.lhs, env) != ev(identity.rhs, env):
            return values
    return None


# -- FiniteSemiring ---------------------------------------------------------

def test_adapters_sizes():
    assert len(semiring_from_transformations(3, "cminus")) == 5
    assert len(semiring_from_matrices(2, "upper")) == 8
    assert len(semiring_from_transformations(3, "o")) == 10
    assert semiring_from_transformations(3, "o").axioms_checked


def test_axiom_reports_on_O3_and_upper2():
    for s in (semiring_from_transformations(3, "o"), semiring_from_matrices(2, "upper"), semiring_from_matrices(3, "upper")):
        reports = s.axiom_reports()
        assert {r.name for r in reports} == {
            "add-commutative", "add-idempotent", "add-associative",
            "mul-associative", "left-distributive", "right-distributive",
        }
        assert all(r.holds for r in reports)


def test_axiom_violation_raises():
    elements = [0, 1, 2]
    with pytest.raises(AxiomError):
        FiniteSemiring(elements, lambda a, b: (a + b) % 3, lambda a, b: a * b % 3, "Z3")
    with pytest.raises(AxiomError):
        FiniteSemiring(elements, max, lambda a, b: (a - b) % 3, "bad")


def test_matrix_tables_match_element_ops():
    s = semiring_from_matrices(3, "upper")
    for op, fn in (("add", mat_add), ("mul", mat_mul)):
        table = s.table(op)
        for i, a in enumerate(s.elements):
            for j, b in enumerate(s.elements):
                assert s.elements[table[i, j]] == fn(a, b)


def test_index_and_missing_element():
    s = semiring_from_transformations(3, "c")
    assert s.element(s.index(T("133"))) == T("133")
    with pytest.raises(DomainError):
        s.index(T("112"))


def test_reducts():
    s = semiring_from_transformations(3, "c")
    m = s.multiplicative_reduct()
    assert m.ops == ("mul",) and s.ops == ("add", "mul")
    with pytest.raises(DomainError):
        m.table("add")
    assert s.additive_reduct().ops == ("add",)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 63), st.integers(1, 20))
def test_power_by_squaring_matches_naive(i, k):
    s = semiring_from_matrices(3, "upper")
    naive = i
    for _ in range(k - 1):
        naive = s.apply("mul", naive, i)
    assert s.power(i, k) == naive


def test_subsemiring_keeps_operations():
    s = semiring_from_matrices(2, "upper")
    sub = s.subsemiring([0, 1])
    assert len(sub) == 2 and sub.ops == ("add", "mul")


# -- terms and identities ---------------------------------------------------

def test_eval_term_examples():
    alpha, beta, gamma = paper_witnesses(2)
    c4 = semiring_from_transformations(4, "c", ops=("mul",))
    v = eval_term("x^2", {"x": c4.index(alpha)}, c4)
    assert c4.element(v)(1) == 3
    assert eval_term("x", {"x": 5}, c4) == 5
    c3 = semiring_from_transformations(3, "c")
    env = {"x": c3.index(beta), "y": c3.index(gamma)}
    assert c3.element(eval_term("x y", env, c3))(1) == 2
    assert c3.element(eval_term("x^2 y + x y^2", env, c3))(1) == 3
    with pytest.raises(DomainError):
        eval_term("x y", {"x": 0}, c3)


def test_paper_identities_instantiation():
    e1, e2 = paper_identities(3)
    assert str(e1) == "x^3 = x^4"
    assert str(e2) == "x^2 y^2 = x^3 y^2 + x^2 y^3"
    e1, e2 = paper_identities(2)
    assert str(e1) == "x^2 = x^3"
    assert str(e2) == "x y = x^2 y + x y^2"
    assert str(paper_identity(1, 1)) == "x = x^2"
    with pytest.raises(ValueError):
        paper_identities(1)
    with pytest.raises(ValueError):
        paper_identity(3, 2)


def test_paper_witnesses():
    assert tuple(map(str, paper_witnesses(2))) == ("2344", "233", "223")
    assert tuple(map(str, paper_witnesses(1))) == ("233", "22", "12")
    for n in range(1, 6):
        alpha, beta, gamma = paper_witnesses(n)
        assert power(alpha, n)(1) == n + 1 and power(alpha, n + 1)(1) == n + 2


def test_check_identity_examples():
    upper3 = semiring_from_matrices(3, "upper")
    assert check_identity(paper_identity(1, 3), upper3).holds
    c4 = semiring_from_transformations(4, "c", ops=("mul",))
    r = check_identity(paper_identity(1, 2), c4)
    assert not r.holds
    assert r.witness["elements"]["x"] == [2, 3, 4, 4]
    assert check_identity("x = x", upper3).holds


def test_check_identity_budget(monkeypatch):
    s = semiring_from_matrices(3, "upper")
    with pytest.raises(ResourceLimitError) as err:
        check_identity(parse_identity("x y z = z y x"), s, budget=1000)
    assert err.value.required == 64**3
    monkeypatch.setenv("CATALAN_BUDGET", "100")
    with pytest.raises(ResourceLimitError):
        check_identity(parse_identity("x y = y x"), s)


def test_check_identity_needs_addition():
    with pytest.raises(DomainError):
        check_identity(paper_identity(2, 2), semiring_from_transformations(3, "c", ops=("mul",)))


IDENTITY_SAMPLES = ["x y = y x", "x^2 = x^3", "x y x = x y", "x + y = y", "x (x + y) = x^2 + x y",
                    "x y + y x = y x + x y", "x^2 y = x y^2", "x y = x^2 y + x y^2"]


@pytest.mark.parametrize("text", IDENTITY_SAMPLES)
@pytest.mark.parametrize("target", [("c", 3), ("cminus", 3), ("o", 3), ("upper", 2), ("lower", 2), ("stair", 3)])
def test_check_identity_agrees_with_brute_force(text, target):
    kind, n = target
    if kind in ("c", "cminus", "o"):
        s = semiring_from_transformations(n, kind)
        add_fn, mul_fn = add, compose
    else:
        s = semiring_from_matrices(n, kind)
        add_fn, mul_fn = mat_add, mat_mul
    ident = parse_identity(text)
    report = check_identity(ident, s)
    first_bad = brute_identity(ident, s.elements, add_fn, mul_fn)
    assert report.holds == (first_bad is None)
    if first_bad is not None:
        # deterministic: lexicographically first witness
        assert tuple(s.element(report.witness["assignment"][v]) for v in ident.variables) == first_bad
        assert recheck_identity_witness(ident, s, report)


def test_scalar_path_for_large_carriers():
    s = semiring_from_matrices(5, "upper", ops=("mul",))
    assert not s.tabulated("mul")
    r = check_identity(paper_identity(1, 5), s)
    assert r.holds and r.pairs_checked == 2**15


def test_check_report_invariants():
    with pytest.raises(ValueError):
        CheckReport("x", "fails")
    with pytest.raises(ValueError):
        CheckReport("x", "holds", witness={})
    with pytest.raises(ValueError):
        CheckReport("x", "maybe")


# -- homomorphisms and isomorphisms -----------------------------------------

def test_check_homomorphism_examples():
    cm3 = semiring_from_transformations(3, "cminus")
    lower2 = semiring_from_matrices(2, "lower")
    r = check_homomorphism(rep_M, cm3, lower2, ("mul", "add"))
    assert r.holds and r.details["pairs_per_op"] == {"mul": 25, "add": 25}
    c2 = semiring_from_transformations(2, "c")
    upper2 = semiring_from_matrices(2, "upper")
    r = check_homomorphism(rep_B, c2, upper2, ("mul", "add"))
    assert not r.holds and r.witness["op"] == "add"
    assert {str(T("".join(map(str, r.witness["x"])))), str(T("".join(map(str, r.witness["y"]))))} == {"22", "12"}
    assert check_homomorphism(lambda a: a, upper2, upper2).holds


def test_check_homomorphism_domain():
    c3 = semiring_from_transformations(3, "c")
    with pytest.raises(DomainError):
        check_homomorphism(lambda a: T("111"), c3, c3)


def test_check_injective():
    cm3 = semiring_from_transformations(3, "cminus")
    r = check_injective(rep_M, cm3)
    assert r.holds and r.details["distinct_images"] == 5
    two = FiniteSemiring([0, 1], max, min, "B2")
    assert not check_injective(lambda a: 0, two).holds
    assert check_injective(rep_S, semiring_from_transformations(4, "c")).details["distinct_images"] == 14


def brute_isomorphic(a, b, ops):
    n = len(a)
    tables = [(a.table(op), b.table(op)) for op in ops]
    for perm in itertools.permutations(range(n)):
        if all(perm[ta[x, y]] == tb[perm[x], perm[y]] for ta, tb in tables for x in range(n) for y in range(n)):
            return True
    return False


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("ops", [("add", "mul"), ("add",), ("mul",)])
@pytest.mark.parametrize("prune", [True, False])
def test_isomorphism_search_agrees_with_permutations(n, ops, prune):
    c = semiring_from_transformations(n, "c").reduct(ops)
    cm = semiring_from_transformations(n, "cminus").reduct(ops)
    r = check_isomorphism_exists(c, cm, prune=prune)
    assert r.holds == brute_isomorphic(c, cm, ops)
    if r.holds:
        pairs = {tuple(x): tuple(y) for x, y in r.details["bijection"]}
        assert len(set(pairs.values())) == len(c)


def test_isomorphism_examples():
    t = semiring_from_transformations
    assert not check_isomorphism_exists(t(2, "c"), t(2, "cminus"), prune=False).holds
    r = check_isomorphism_exists(t(3, "c").additive_reduct(), t(3, "cminus").additive_reduct(), prune=False)
    assert not r.holds and r.witness["reason"] == "exhausted"
    c3, cm3 = t(3, "c").multiplicative_reduct(), t(3, "cminus").multiplicative_reduct()
    assert check_isomorphism_exists(c3, cm3).holds
    assert check_homomorphism(bar, c3, cm3, ("mul",)).holds
    r = check_isomorphism_exists(t(3, "c"), t(2, "c"))
    assert not r.holds and r.witness["reason"] == "size mismatch"


@pytest.mark.parametrize("n", [2, 3, 4])
def test_semirings_not_isomorphic(n):
    t = semiring_from_transformations
    assert not check_isomorphism_exists(t(n, "c"), t(n, "cminus")).holds
    if n > 2:
        assert not check_isomorphism_exists(t(n, "c").additive_reduct(), t(n, "cminus").additive_reduct()).holds


def test_isomorphism_size_cap():
    big = semiring_from_transformations(6, "c", ops=("mul",))
    with pytest.raises(ResourceLimitError):
        check_isomorphism_exists(big, big)


# -- optimality -------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3])
def test_identities_hold_in_upper(n):
    upper = semiring_from_matrices(n, "upper")
    assert check_identity(paper_identity(1, n), upper).holds
    if n >= 2:
        assert check_identity(paper_identity(2, n), upper).holds


@pytest.mark.parametrize("n", [1, 2, 3])
def test_identity_one_fails_in_catalan_monoids(n):
    alpha = paper_witnesses(n)[0]
    for cls, witness in (("c", alpha), ("cminus", bar(alpha))):
        s = semiring_from_transformations(n + 2, cls, ops=("mul",))
        ident = paper_identity(1, n)
        r = check_identity(ident, s)
        assert not r.holds and recheck_identity_witness(ident, s, r)
        i = s.index(witness)
        assert eval_term(ident.lhs, {"x": i}, s) != eval_term(ident.rhs, {"x": i}, s)


@pytest.mark.parametrize("n", [2, 3])
def test_identity_two_fails_in_catalan_semiring(n):
    _, beta, gamma = paper_witnesses(n)
    s = semiring_from_transformations(n + 1, "c")
    ident = paper_identity(2, n)
    r = check_identity(ident, s)
    assert not r.holds and recheck_identity_witness(ident, s, r)
    env = {"x": s.index(beta), "y": s.index(gamma)}
    assert s.element(eval_term(ident.lhs, env, s))(1) == n
    assert s.element(eval_term(ident.rhs, env, s))(1) == n + 1


def closed_subsets(s):
    add_t, mul_t = s.table("add"), s.table("mul")
    n = len(s)
    for mask in range(1, 1 << n):
        members = [i for i in range(n) if mask >> i & 1]
        ok = all(mask >> int(add_t[i, j]) & 1 and mask >> int(mul_t[i, j]) & 1 for i in members for j in members)
        if ok:
            yield members


def test_identity_inherited_by_subsemirings():
    s = semiring_from_matrices(2, "upper")
    ident = paper_identity(2, 2)
    count = 0
    for members in closed_subsets(s):
        sub = s.subsemiring(members)
        assert check_identity(ident, sub).holds
        count += 1
    assert count > 8
