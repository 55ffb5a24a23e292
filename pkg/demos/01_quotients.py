"""Quasi-orders, their induced equivalence, and the quotient order.

A quasi-order may compare two distinct elements both ways; the quotient
collapses such pairs into one class and what remains is a partial order.
"""
import numpy as np

from idealforge.qo import FiniteQO, equiv_classes, hasse_dot, quotient, validate

# a <-> b is a two-way comparison, c sits above the pair
q = validate(
    ["a", "b", "c"],
    [("a", "b"), ("b", "a"), ("a", "c")],
    close=True,
)
print("carrier:", q.elements)
print("classes:", [[q.elements[i] for i in cls] for cls in equiv_classes(q)])

qm = quotient(q)
print("quotient carrier:", qm.classes.elements)
print("class of each element:", dict(zip(q.elements, qm.class_of)))

print()
print(hasse_dot(q))

# quotienting is idempotent: the quotient of a partial order is itself
again = quotient(qm.classes)
assert again.classes.n == qm.classes.n

# a table that is not transitive is rejected unless closure is requested
try:
    validate(["x", "y", "z"], [("x", "x"), ("y", "y"), ("z", "z"), ("x", "y"), ("y", "z")])
except Exception as e:
    print("rejected without closure:", e)

full = np.array([[1, 1, 1], [0, 1, 1], [0, 0, 1]], dtype=bool)
chain = FiniteQO(["x", "y", "z"], full)
print("closed 3-chain accepted with", int(chain.leq.sum()), "pairs")
