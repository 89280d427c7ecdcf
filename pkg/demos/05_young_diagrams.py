"""Young diagrams inside the staircase, read off from M(a).

Each element of C-_{n+1} gives a diagram whose rows fit under the
staircase (n, n-1, ..., 1); the counts are Catalan numbers.
"""
from catalan_semiring.chain_maps import enumerate_class
from catalan_semiring.representations import enumerate_staircase_partitions, matrix_to_partition, rep_M

n = 3
for a in enumerate_class(n + 1, "cminus"):
    p = matrix_to_partition(rep_M(a))
    print(f"{a}  ->  {str(p):10s}")
    print(p.diagram(n) or "(empty)", end="\n\n")

print("counts:", [len(enumerate_staircase_partitions(k)) for k in range(1, 9)])
