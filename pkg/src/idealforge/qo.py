"""Finite quasi-orders: validation, closure, quotients, and the elementary
order operations everything else builds on.

A quasi-order here is reflexive and transitive but not necessarily
antisymmetric, so distinct elements may compare both ways; the induced
equivalence and its quotient partial order are first-class citizens.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import (
    CombinatorialBlowupError,
    DuplicateLabelError,
    NotReflexiveError,
    NotTransitiveError,
    UnknownLabelError,
)


class FiniteQO:
    """A finite carrier with a reflexive-transitive comparison table.

    Parameters
    ----------
    elements : sequence of str
        Distinct labels, in carrier order.
    leq : array-like of bool, shape (n, n)
        leq[i, j] means element i is below element j.  The table is copied
        and frozen; instances are immutable and compare by identity.
    """

    __slots__ = ("elements", "leq", "_index", "_classes", "_hset_leq_cache")

    def __init__(self, elements: Iterable[str], leq) -> None:
        elements = tuple(elements)
        table = np.array(leq, dtype=bool)
        n = len(elements)
        if table.shape != (n, n):
            raise ValueError(f"comparison table must be {n}x{n}, got {table.shape}")
        if len(set(elements)) != n:
            raise DuplicateLabelError("element labels must be distinct")
        table.setflags(write=False)
        self.elements = elements
        self.leq = table
        self._index = {lab: i for i, lab in enumerate(elements)}
        self._classes: tuple[tuple[int, ...], ...] | None = None
        # memo for hereditary-set comparisons keyed on interned node pairs
        self._hset_leq_cache: dict = {}

    @property
    def n(self) -> int:
        return len(self.elements)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabelError(f"unknown element {label!r}") from None

    def le(self, i: int, j: int) -> bool:
        return bool(self.leq[i, j])

    def equiv(self, i: int, j: int) -> bool:
        'Mutual comparability: i and j sit in the same equivalence class.'
        return bool(self.leq[i, j] and self.leq[j, i])

    def __repr__(self) -> str:
        return f"FiniteQO({list(self.elements)!r}, {int(self.leq.sum())} pairs)"


def transitive_closure(table: np.ndarray) -> np.ndarray:
    'Reflexive-transitive closure of a boolean relation, by repeated squaring.'
    closed = table.copy()
    np.fill_diagonal(closed, True)
    while True:
        step = closed | (closed @ closed)
        if np.array_equal(step, closed):
            return step
        closed = step


def validate(elements: Iterable[str], order: Iterable[tuple[str, str]], close: bool = False) -> FiniteQO:
    """Build a FiniteQO from labels and comparable pairs.

    With close set, the reflexive-transitive closure of the pair list is
    taken; otherwise input that is not already reflexive and transitive is
    rejected with the specific axiom that failed.
    """
    elements = tuple(elements)
    if len(set(elements)) != len(elements):
        seen = set()
        for lab in elements:
            if lab in seen:
                raise DuplicateLabelError(f"duplicate element {lab!r}")
            seen.add(lab)
    index = {lab: i for i, lab in enumerate(elements)}
    n = len(elements)
    table = np.zeros((n, n), dtype=bool)
    for a, b in order:
        if a not in index:
            raise UnknownLabelError(f"unknown element {a!r} in order pair")
        if b not in index:
            raise UnknownLabelError(f"unknown element {b!r} in order pair")
        table[index[a], index[b]] = True
    if close:
        table = transitive_closure(table)
    else:
        for i in range(n):
            if not table[i, i]:
                raise NotReflexiveError(f"missing reflexive pair for {elements[i]!r}")
        reach = table | (table @ table)
        if not np.array_equal(reach, table):
            i, j = np.argwhere(reach & ~table)[0]
            raise NotTransitiveError(
                f"missing transitive pair ({elements[i]!r}, {elements[j]!r})"
            )
    return FiniteQO(elements, table)


def from_json(obj: dict) -> FiniteQO:
    'Read the {"elements": [...], "order": [[a,b],...], "close": bool} form.'
    return validate(obj["elements"], [tuple(p) for p in obj["order"]], bool(obj.get("close", False)))


def to_json(q: FiniteQO) -> dict:
    pairs = [
        [q.elements[i], q.elements[j]]
        for i in range(q.n)
        for j in range(q.n)
        if q.leq[i, j]
    ]
    return {"elements": list(q.elements), "order": pairs}


def equiv_classes(q: FiniteQO) -> tuple[tuple[int, ...], ...]:
    'Equivalence classes of mutual comparability, each sorted, ordered by least member.'
    if q._classes is None:
        assigned = [-1] * q.n
        classes: list[tuple[int, ...]] = []
        for i in range(q.n):
            if assigned[i] >= 0:
                continue
            members = tuple(j for j in range(i, q.n) if q.equiv(i, j))
            for j in members:
                assigned[j] = len(classes)
            classes.append(members)
        q._classes = tuple(classes)
    return q._classes


@dataclass(frozen=True, eq=False)
class QuotientMap:
    """The quotient of a quasi-order by its induced equivalence.

    class_of[i] is the class index of carrier element i; classes is the
    induced partial order on class representatives, labelled by joining the
    member labels with '='.
    """

    source: FiniteQO
    class_of: tuple[int, ...]
    classes: FiniteQO
    members: tuple[tuple[int, ...], ...]


def quotient(q: FiniteQO) -> QuotientMap:
    classes = equiv_classes(q)
    class_of = [0] * q.n
    for c, members in enumerate(classes):
        for i in members:
            class_of[i] = c
    k = len(classes)
    table = np.zeros((k, k), dtype=bool)
    for a in range(k):
        for b in range(k):
            table[a, b] = q.leq[classes[a][0], classes[b][0]]
    labels = tuple("=".join(q.elements[i] for i in members) for members in classes)
    return QuotientMap(q, tuple(class_of), FiniteQO(labels, table), classes)


def down_closure(q: FiniteQO, s: Iterable[int]) -> frozenset[int]:
    'Least downward-closed superset of s.'
    s = list(s)
    if not s:
        return frozenset()
    mask = q.leq[:, s].any(axis=1)
    return frozenset(np.flatnonzero(mask).tolist())


def up_closure(q: FiniteQO, s: Iterable[int]) -> frozenset[int]:
    s = list(s)
    if not s:
        return frozenset()
    mask = q.leq[s, :].any(axis=0)
    return frozenset(np.flatnonzero(mask).tolist())


def is_downward_closed(q: FiniteQO, s: frozenset[int]) -> bool:
    return down_closure(q, s) == s


def is_directed(q: FiniteQO, s: Iterable[int]) -> bool:
    """True iff s is nonempty and every pair from s has an upper bound in s.

    For a finite carrier this is equivalent to s containing an element above
    all of s, but the pairwise form is the definition and is what gets tested.
    """
    s = sorted(set(s))
    if not s:
        return False
    sub = q.leq[np.ix_(s, s)]
    for a in range(len(s)):
        for b in range(a, len(s)):
            if not (sub[a] & sub[b]).any():
                return False
    return True


def disjoint_union_with_star(q: FiniteQO) -> FiniteQO:
    """Extend the carrier with one fresh element comparable only to itself.

    The new element's label starts from a star glyph and gets primes appended
    until it is fresh; it always lands at the last index.
    """
    label = "⋆"
    while label in q._index:
        label += "'"
    n = q.n
    table = np.zeros((n + 1, n + 1), dtype=bool)
    table[:n, :n] = q.leq
    table[n, n] = True
    return FiniteQO(q.elements + (label,), table)


def all_downsets_of_poset(leq: np.ndarray, max_count: int | None = None) -> list[frozenset[int]]:
    """Every downward-closed subset (including the empty one) of a finite
    partial order, via a linear extension.

    Output-sensitive: the work is proportional to the number of downsets, so
    antichain-heavy orders are the only expensive case, bounded by max_count.
    """
    n = leq.shape[0]
    order = sorted(range(n), key=lambda i: (int(leq[:, i].sum()), i))
    downs: list[frozenset[int]] = [frozenset()]
    for x in order:
        preds = frozenset(j for j in range(n) if leq[j, x] and j != x)
        grown: list[frozenset[int]] = []
        for d in downs:
            grown.append(d)
            if preds <= d:
                grown.append(d | {x})
        if max_count is not None and len(grown) > max_count:
            raise CombinatorialBlowupError(
                f"more than {max_count} downward-closed subsets"
            )
        downs = grown
    return downs


def _canonical_relation_key(table: np.ndarray, extra: tuple[int, ...] = ()) -> bytes:
    """Least byte encoding of (table, extra-subset) over all permutations.

    Used to deduplicate small structures up to isomorphism; factorial cost,
    intended for carriers of at most ~6 elements.
    """
    n = table.shape[0]
    best = None
    for perm in itertools.permutations(range(n)):
        arr = table[np.ix_(perm, perm)]
        mask = bytes(1 if perm[i] in extra else 0 for i in range(n))
        key = arr.tobytes() + mask
        if best is None or key < best:
            best = key
    return best if best is not None else b""


def all_quasi_orders(n: int) -> list[FiniteQO]:
    """All quasi-orders on n labelled elements, deduplicated up to isomorphism.

    Enumerates every relation extending the diagonal, keeps the transitive
    ones.  Meant for exhaustive sweeps at n <= 4.
    """
    if n > 5:
        raise CombinatorialBlowupError("quasi-order enumeration is capped at n = 5")
    labels = tuple(chr(ord("a") + i) for i in range(n))
    off_diag = [(i, j) for i in range(n) for j in range(n) if i != j]
    seen: set[bytes] = set()
    out: list[FiniteQO] = []
    for bits in range(1 << len(off_diag)):
        table = np.eye(n, dtype=bool)
        for k, (i, j) in enumerate(off_diag):
            if bits >> k & 1:
                table[i, j] = True
        if not np.array_equal(table | (table @ table), table):
            continue
        key = _canonical_relation_key(table)
        if key in seen:
            continue
        seen.add(key)
        out.append(FiniteQO(labels, table))
    return out


def _quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def hasse_dot(q: FiniteQO, name: str = "quotient") -> str:
    """DOT rendering of the covering relation of the quotient of q.

    Edges go from the smaller class up to the covering class; equivalent
    elements are collapsed into a single node labelled with all members.
    """
    qm = quotient(q)
    c = qm.classes
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for lab in c.elements:
        lines.append(f"  {_quote(lab)};")
    strict = c.leq & ~c.leq.T
    for i in range(c.n):
        for j in range(c.n):
            if not strict[i, j]:
                continue
            if any(strict[i, k] and strict[k, j] for k in range(c.n)):
                continue
            lines.append(f"  {_quote(c.elements[i])} -> {_quote(c.elements[j])};")
    lines.append("}")
    return "\n".join(lines) + "\n"
