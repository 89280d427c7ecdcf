"""Negating and cropping S(a) gives P M(bar a) P.

Walks through the steps for a = 1244 and then checks every a in C_{n+1}.
"""
from catalan_semiring.chain_maps import bar, enumerate_class, parse_transformation
from catalan_semiring.representations import complement_pipeline, complement_steps, rep_M_conjugated

steps = complement_steps(parse_transformation("1244"))
for key, value in steps.items():
    text = value.to_text() if hasattr(value, "to_text") else str(value)
    print(f"{key}:\n{text}\n")

for n in range(1, 6):
    ok = all(complement_pipeline(a) == rep_M_conjugated(bar(a)) for a in enumerate_class(n + 1, "c"))
    print(f"n={n}: agreement on all of C_{n + 1}: {ok}")
