"""Enumerate O_n, C_n and C-_n and compare the sizes with the Catalan numbers.

Run: python3 demos/01_catalan_counts.py
"""
from math import comb

from catalan_semiring.chain_maps import enumerate_class, hasse_edges

for n in range(1, 7):
    c, cminus = enumerate_class(n, "c"), enumerate_class(n, "cminus")
    catalan = comb(2 * n, n) // (n + 1)
    print(f"n={n}: |C_n|={len(c):4d}  |C-_n|={len(cminus):4d}  Catalan={catalan}")

# O_3 sits between C_3 (above the identity) and C-_3 (below it).
o3 = enumerate_class(3, "o")
print("\nO_3 =", " ".join(map(str, o3)))
print("covering pairs:")
for i, j in hasse_edges(o3):
    print(f"  {o3[i]} < {o3[j]}")
