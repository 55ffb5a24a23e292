"""Finite quasi-orders carrying a compatible multiplication.

The axioms are checked up to the induced equivalence, never up to equality:
associativity, a left factor sitting below every product it starts,
monotonicity in both arguments, and neutrality of the unit.  Failures are
reported as data with a concrete counterexample, not raised.
"""
from __future__ import annotations

import numpy as np

from .downsets import downset_product, enumerate_ideals, unit_downset
from .errors import EmptyCarrierError, NoFactorizationError, UnknownLabelError
from .qo import FiniteQO, equiv_classes, from_json as qo_from_json, to_json as qo_to_json
from .report import CheckResult, Report


class MonoidalQO:
    """A finite quasi-order with a total multiplication table and a unit.

    The constructor checks only shape and range; whether the data actually
    satisfies the axioms is the job of check_axioms, so that broken tables
    can be represented, checked, and reported on.
    """

    __slots__ = ("order", "mult", "unit", "_mult_cache")

    def __init__(self, order: FiniteQO, mult, unit: int) -> None:
        if order.n == 0:
            raise EmptyCarrierError("a multiplicative structure needs a carrier")
        table = np.array(mult, dtype=np.int64)
        if table.shape != (order.n, order.n):
            raise ValueError(f"multiplication table must be {order.n}x{order.n}")
        if table.min() < 0 or table.max() >= order.n:
            raise ValueError("multiplication table entry out of carrier range")
        if not 0 <= unit < order.n:
            raise ValueError("unit out of carrier range")
        table.setflags(write=False)
        self.order = order
        self.mult = table
        self.unit = unit
        self._mult_cache: dict = {}

    @property
    def n(self) -> int:
        return self.order.n

    def mul(self, i: int, j: int) -> int:
        return int(self.mult[i, j])

    def label(self, i: int) -> str:
        return self.order.elements[i]

    def __repr__(self) -> str:
        return f"MonoidalQO({list(self.order.elements)!r}, unit={self.label(self.unit)!r})"


def monoid_from_json(obj: dict) -> MonoidalQO:
    """Read {"elements", "order", "close", "mult", "unit"}.

    Multiplication triples [a, b, c] mean a*b = c and may use labels or
    carrier indices; every pair must be covered exactly once.
    """
    order = qo_from_json(obj)
    n = order.n
    table = -np.ones((n, n), dtype=np.int64)

    def resolve(x) -> int:
        if isinstance(x, str):
            return order.index(x)
        i = int(x)
        if not 0 <= i < n:
            raise UnknownLabelError(f"index {i} out of range")
        return i

    for a, b, c in obj["mult"]:
        table[resolve(a), resolve(b)] = resolve(c)
    if (table < 0).any():
        i, j = np.argwhere(table < 0)[0]
        raise ValueError(
            f"multiplication table missing entry for "
            f"({order.elements[i]!r}, {order.elements[j]!r})"
        )
    return MonoidalQO(order, table, resolve(obj["unit"]))


def monoid_to_json(m: MonoidalQO) -> dict:
    out = qo_to_json(m.order)
    out["mult"] = [
        [m.label(i), m.label(j), m.label(m.mul(i, j))]
        for i in range(m.n)
        for j in range(m.n)
    ]
    out["unit"] = m.label(m.unit)
    return out


def _eq_table(m: MonoidalQO) -> np.ndarray:
    return m.order.leq & m.order.leq.T


def check_axioms(m: MonoidalQO) -> Report:
    """Associativity up to equivalence, weak increase (q below q*p),
    monotonicity in both arguments, and neutrality of the unit."""
    leq = m.order.leq
    eq = _eq_table(m)
    M = m.mult
    n = m.n
    checks: list[CheckResult] = []

    left = M[M, :]
    right = M[:, M.reshape(-1)].reshape(n, n, n)
    ok = eq[left, right]
    if ok.all():
        checks.append(CheckResult("associativity", True))
    else:
        i, j, k = (int(v) for v in np.argwhere(~ok)[0])
        checks.append(
            CheckResult(
                "associativity",
                False,
                {
                    "triple": [m.label(i), m.label(j), m.label(k)],
                    "left": m.label(int(left[i, j, k])),
                    "right": m.label(int(right[i, j, k])),
                },
            )
        )

    ok = leq[np.arange(n)[:, None], M]
    if ok.all():
        checks.append(CheckResult("weak-increase", True))
    else:
        i, j = (int(v) for v in np.argwhere(~ok)[0])
        checks.append(
            CheckResult(
                "weak-increase",
                False,
                {"pair": [m.label(i), m.label(j)], "product": m.label(m.mul(i, j))},
            )
        )

    mono = CheckResult("monotonicity", True)
    comparable = np.argwhere(leq)
    for i, i2 in comparable:
        prods = M[i, comparable[:, 0]]
        prods2 = M[i2, comparable[:, 1]]
        bad = ~leq[prods, prods2]
        if bad.any():
            j, j2 = (int(v) for v in comparable[int(np.flatnonzero(bad)[0])])
            mono = CheckResult(
                "monotonicity",
                False,
                {
                    "pairs": [[m.label(int(i)), m.label(int(i2))], [m.label(j), m.label(j2)]],
                    "products": [
                        m.label(m.mul(int(i), j)),
                        m.label(m.mul(int(i2), j2)),
                    ],
                },
            )
            break
    checks.append(mono)

    e = m.unit
    ok_unit = eq[M[e, :], np.arange(n)] & eq[M[:, e], np.arange(n)]
    if ok_unit.all():
        checks.append(CheckResult("unit-neutral", True))
    else:
        i = int(np.flatnonzero(~ok_unit)[0])
        checks.append(
            CheckResult(
                "unit-neutral",
                False,
                {
                    "element": m.label(i),
                    "left": m.label(m.mul(e, i)),
                    "right": m.label(m.mul(i, e)),
                },
            )
        )

    return Report("multiplicative-axioms", tuple(checks))


def check_plus_property(m: MonoidalQO) -> Report:
    """Witness splitting: whenever c is below a*b there are a' below a and
    b' below b with a'*b' equivalent to c."""
    leq = m.order.leq
    eq = _eq_table(m)
    M = m.mult
    n = m.n
    below = [np.flatnonzero(leq[:, a]) for a in range(n)]
    counterexample = None
    checked = 0
    for a in range(n):
        for b in range(n):
            reachable = np.zeros(n, dtype=bool)
            for aa in below[a]:
                reachable |= eq[M[aa, below[b]], :].any(axis=0)
            for c in np.flatnonzero(leq[:, M[a, b]]):
                checked += 1
                if not reachable[c]:
                    counterexample = {
                        "a": m.label(a),
                        "b": m.label(b),
                        "c": m.label(int(c)),
                        "product": m.label(m.mul(a, b)),
                    }
                    break
            if counterexample:
                break
        if counterexample:
            break
    return Report(
        "plus-property",
        (
            CheckResult(
                "witness-splitting",
                counterexample is None,
                counterexample,
                {"triples": checked},
            ),
        ),
    )


def primes(m: MonoidalQO) -> frozenset[int]:
    """Elements not equivalent to the unit that never split: whenever such a
    p is equivalent to a*b, it is equivalent to a or to b."""
    eq = _eq_table(m)
    M = m.mult
    n = m.n
    out = set()
    for p in range(n):
        if eq[p, m.unit]:
            continue
        good = True
        for a in range(n):
            if not good:
                break
            for b in range(n):
                if eq[p, M[a, b]] and not eq[p, a] and not eq[p, b]:
                    good = False
                    break
        if good:
            out.add(p)
    return frozenset(out)


def prime_factorization(m: MonoidalQO, q: int) -> list[int]:
    """A finite list of primes whose product is equivalent to q; empty exactly
    when q is equivalent to the unit.

    Splits at the least pair of strictly smaller factors and recurses; the
    choice is deterministic, so equal inputs give identical factor lists.
    Assumes the axioms hold; a non-prime that refuses to split strictly
    signals a violated precondition.
    """
    eq = _eq_table(m)
    leq = m.order.leq
    M = m.mult

    def strictly_below(a: int, b: int) -> bool:
        return bool(leq[a, b]) and not bool(leq[b, a])

    def go(x: int) -> list[int]:
        if eq[x, m.unit]:
            return []
        for a in range(m.n):
            for b in range(m.n):
                if eq[M[a, b], x] and strictly_below(a, x) and strictly_below(b, x):
                    return go(a) + go(b)
        # no strict split: x had better be prime
        for a in range(m.n):
            for b in range(m.n):
                if eq[M[a, b], x] and not eq[a, x] and not eq[b, x]:
                    raise NoFactorizationError(
                        f"{m.label(x)!r} splits as "
                        f"{m.label(a)!r}*{m.label(b)!r} but not strictly; "
                        "the multiplication axioms cannot hold"
                    )
        return [x]

    return go(q)


def check_prime_product_lemma(m: MonoidalQO, max_tuple: int = 3) -> Report:
    'A prime below a product of at most max_tuple factors is below some factor.'
    leq = m.order.leq
    M = m.mult
    ps = sorted(primes(m))
    counterexample = None
    checked = 0

    def tuples(length: int):
        if length == 0:
            yield ()
            return
        for head in range(m.n):
            for rest in tuples(length - 1):
                yield (head,) + rest

    for length in range(1, max_tuple + 1):
        for factors in tuples(length):
            prod = factors[0]
            for f in factors[1:]:
                prod = int(M[prod, f])
            for p in ps:
                if leq[p, prod]:
                    checked += 1
                    if not any(leq[p, f] for f in factors):
                        counterexample = {
                            "prime": m.label(p),
                            "factors": [m.label(f) for f in factors],
                            "product": m.label(prod),
                        }
                        break
            if counterexample:
                break
        if counterexample:
            break
    return Report(
        "prime-below-product",
        (
            CheckResult(
                "prime-lands-on-a-factor",
                counterexample is None,
                counterexample,
                {"instances": checked, "primes": len(ps)},
            ),
        ),
    )


def neutral_elements(m: MonoidalQO) -> list[int]:
    'Every element acting neutrally on both sides, up to equivalence.'
    eq = _eq_table(m)
    M = m.mult
    idx = np.arange(m.n)
    return [
        e
        for e in range(m.n)
        if eq[M[e, :], idx].all() and eq[M[:, e], idx].all()
    ]


def ideal_monoid(m: MonoidalQO) -> MonoidalQO:
    """The monoid of ideals of the carrier under the pointwise product and
    inclusion.  Element i is enumerate_ideals(m.order)[i]; labels list the
    members.  The unit is the down-closure of the unit element."""
    ideals = enumerate_ideals(m.order)
    index = {ideal.members: i for i, ideal in enumerate(ideals)}
    k = len(ideals)
    table = np.zeros((k, k), dtype=bool)
    for i in range(k):
        for j in range(k):
            table[i, j] = ideals[i].members <= ideals[j].members
    mult = np.zeros((k, k), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            prod = downset_product(ideals[i], ideals[j], m)
            mult[i, j] = index[prod.members]
    labels = tuple("{" + ",".join(ideal.labels) + "}" for ideal in ideals)
    unit = index[unit_downset(m).members]
    return MonoidalQO(FiniteQO(labels, table), mult, unit)


def ideal_monoid_basis(m: MonoidalQO):
    'The ideals backing ideal_monoid, in the same index order.'
    return enumerate_ideals(m.order)


__all__ = [
    "MonoidalQO",
    "check_axioms",
    "check_plus_property",
    "check_prime_product_lemma",
    "ideal_monoid",
    "ideal_monoid_basis",
    "monoid_from_json",
    "monoid_to_json",
    "neutral_elements",
    "primes",
    "prime_factorization",
    "equiv_classes",
]
