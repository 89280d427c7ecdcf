"""Represent C-_{n+1} by lower triangular Boolean n x n matrices.

Checks exhaustively that the map is an injective semiring homomorphism,
then shows its conjugated upper triangular form.
"""
from catalan_semiring.algebra_core import (
    check_homomorphism,
    check_injective,
    semiring_from_matrices,
    semiring_from_transformations,
)
from catalan_semiring.representations import rep_M, rep_M_conjugated

for a in semiring_from_transformations(3, "cminus").elements:
    print(a)
    print(rep_M(a).to_text(), end="\n\n")

for n in range(1, 5):
    src = semiring_from_transformations(n + 1, "cminus")
    for f, shape in ((rep_M, "lower"), (rep_M_conjugated, "upper")):
        hom = check_homomorphism(f, src, semiring_from_matrices(n, shape), ("add", "mul"))
        inj = check_injective(f, src)
        print(f"n={n} {f.__name__:17s} -> {shape}: homomorphism {hom.verdict}, injective {inj.verdict}")
