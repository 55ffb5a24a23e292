"""Downsets, ideals, and how every downset splits into maximal ideals.

On a finite carrier the ideals are exactly the principal downsets of the
equivalence classes, so the decomposition of a downset lists its maximal
elements up to equivalence.
"""
from idealforge.downsets import (
    enumerate_downsets,
    enumerate_ideals,
    ideal_decomposition,
    principal,
)
from idealforge.qo import validate

# the N shape: a <= c, b <= c, b <= d
n_shape = validate(
    ["a", "b", "c", "d"],
    [("a", "c"), ("b", "c"), ("b", "d")],
    close=True,
)

downs = enumerate_downsets(n_shape)
print("downsets:", len(downs))
for d in downs:
    parts = ideal_decomposition(d)
    tags = ["{" + ",".join(sorted(p.labels)) + "}" for p in parts]
    print("  {" + ",".join(sorted(d.labels)) + "}  =  " + " ∪ ".join(tags))

ideals = enumerate_ideals(n_shape)
print("ideals:", [sorted(i.labels) for i in ideals])

top = principal(n_shape, n_shape.index("c"))
print("principal at c:", sorted(top.labels))
