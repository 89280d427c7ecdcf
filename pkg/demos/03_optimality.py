"""Identities of upper triangular Boolean matrices, and where they break.

x^n = x^(n+1) and x^n y^n = x^(n+1) y^n + x^n y^(n+1) hold in upper(n);
they fail one size up in C_n, which shows the exponents are tight.
"""
from catalan_semiring.algebra_core import (
    check_identity,
    paper_identity,
    semiring_from_matrices,
    semiring_from_transformations,
)

for n in (2, 3):
    upper = semiring_from_matrices(n, "upper")
    for which in (1, 2):
        ident = paper_identity(which, n)
        r = check_identity(ident, upper)
        print(f"upper({n}) |= {ident}: {r.verdict} ({r.pairs_checked} assignments)")

for n in (1, 2, 3):
    s = semiring_from_transformations(n + 2, "c", ops=("mul",))
    r = check_identity(paper_identity(1, n), s)
    print(f"C_{n + 2} x^{n} = x^{n + 1}: {r.verdict}, witness {r.witness}")

for n in (2, 3):
    s = semiring_from_transformations(n + 1, "c")
    r = check_identity(paper_identity(2, n), s)
    print(f"C_{n + 1} mixed identity n={n}: {r.verdict}, witness {r.witness}")
