"""Iterated hierarchies of hereditary sets over a finite quasi-order.

The explicit side builds hereditary sets level by level in three flavors:
all nonempty sets, the upward-directed ones, and the directed downward-closed
ones, with each level quotiented to one canonical representative per
equivalence class.  The symbolic side builds the prime alphabet: one plain
letter per carrier class plus one idempotent letter per downward-closed set
of lower letters, ordered by compare_atoms.  The two sides are developed
independently and cross-checked by the verification sweeps; neither is
treated as the definition of the other.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .errors import CombinatorialBlowupError, EmptyCarrierError, LevelCapExceededError
from .higman import AtomAlphabet, HWord
from .monoid import MonoidalQO
from .qo import FiniteQO, all_downsets_of_poset, equiv_classes

_DEFAULT_MAX_MEMBERS = 20_000
# 2^k candidate subsets; past this the enumeration loop itself is the problem
_SUBSET_CAP = 20


def _resolve_max_members(max_members: int | None) -> int:
    if max_members is not None:
        return max_members
    env = os.environ.get("IDEALFORGE_MAX_MEMBERS")
    return int(env) if env else _DEFAULT_MAX_MEMBERS


class HSet:
    """A hereditary set over carrier urelements, hash-consed globally.

    Either an urelement (ur is a carrier index, children is None) or a
    finite nonempty set of HSets (children sorted by serial).  Structurally
    equal values are the same object, so identity works as equality and
    pairwise comparisons can be memoized on object pairs.  Build through
    ur_elem and hset, never directly.
    """

    __slots__ = ("ur", "children", "serial", "rank")

    def __init__(self, ur, children, serial, rank) -> None:
        self.ur = ur
        self.children = children
        self.serial = serial
        self.rank = rank

    def __repr__(self) -> str:
        return f"HSet({self.serial})"


_UR_POOL: dict[int, HSet] = {}
_SET_POOL: dict[frozenset[HSet], HSet] = {}


def ur_elem(i: int) -> HSet:
    'The urelement with carrier index i.'
    i = int(i)
    if i < 0:
        raise ValueError("urelement index must be a carrier index")
    node = _UR_POOL.get(i)
    if node is None:
        node = HSet(i, None, f"u{i}", -1)
        _UR_POOL[i] = node
    return node


def hset(children: Iterable[HSet]) -> HSet:
    'The set with the given members, deduplicated and canonically sorted.'
    key = frozenset(children)
    if not key:
        raise ValueError("hereditary sets are nonempty")
    node = _SET_POOL.get(key)
    if node is None:
        kids = tuple(sorted(key, key=lambda h: h.serial))
        serial = "{" + ",".join(c.serial for c in kids) + "}"
        node = HSet(None, kids, serial, 1 + max(c.rank for c in kids))
        _SET_POOL[key] = node
    return node


def lesssim_star(x: HSet, y: HSet, q: FiniteQO) -> bool:
    """The hereditary comparison over q, by the four-case recursion.

    Urelements compare through q's table; an urelement sits below a set when
    it sits below some member; a set sits below an urelement when every
    member does; sets compare by the for-all-exists rule on members.
    Memoized per carrier on interned pairs.
    """
    cache = q._hset_leq_cache
    key = (x, y)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if x.ur is not None:
        if y.ur is not None:
            out = bool(q.leq[x.ur, y.ur])
        else:
            out = any(lesssim_star(x, c, q) for c in y.children)
    elif y.ur is not None:
        out = all(lesssim_star(c, y, q) for c in x.children)
    else:
        out = all(
            any(lesssim_star(a, b, q) for b in y.children) for a in x.children
        )
    cache[key] = out
    return out


def sim_star(x: HSet, y: HSet, q: FiniteQO) -> bool:
    return lesssim_star(x, y, q) and lesssim_star(y, x, q)


def rank(x: HSet) -> int:
    'Hereditary height: -1 for urelements, 1 + max over members for sets.'
    return x.rank


def hset_mult(x: HSet, y: HSet, m: MonoidalQO) -> HSet:
    """Multiplication lifted to hereditary sets, memoized per monoid.

    Urelements multiply through the table; a set times a point multiplies
    every member by the point, and two sets multiply pairwise.
    """
    cache = m._mult_cache
    key = (x, y)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if x.ur is not None and y.ur is not None:
        out = ur_elem(m.mul(x.ur, y.ur))
    elif x.ur is not None:
        out = hset(hset_mult(x, c, m) for c in y.children)
    elif y.ur is not None:
        out = hset(hset_mult(c, y, m) for c in x.children)
    else:
        out = hset(
            hset_mult(a, b, m) for a in x.children for b in y.children
        )
    cache[key] = out
    return out


def is_hereditarily_directed(x: HSet, q: FiniteQO) -> bool:
    'Urelement, or a directed set of hereditarily directed members.'
    cache = q._hset_leq_cache
    key = ("dir", x)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if x.ur is not None:
        out = True
    else:
        out = all(is_hereditarily_directed(c, q) for c in x.children)
        if out:
            kids = x.children
            for a in kids:
                for b in kids:
                    if not any(
                        lesssim_star(a, c, q) and lesssim_star(b, c, q)
                        for c in kids
                    ):
                        out = False
                        break
                if not out:
                    break
    cache[key] = out
    return out


@dataclass(eq=False)
class HierLevel:
    """One stage of an iterated hierarchy: canonical representatives, one per
    equivalence class, with the full chain of earlier stages attached."""

    alpha: int
    kind: str
    base: FiniteQO
    members: tuple[HSet, ...]
    previous: "HierLevel | None"

    @property
    def cardinality(self) -> int:
        return len(self.members)

    def chain(self) -> Iterator["HierLevel"]:
        'Stages in increasing order of alpha, this one last.'
        if self.previous is not None:
            yield from self.previous.chain()
        yield self


def _canonical_reps(candidates: Iterable[HSet], q: FiniteQO) -> tuple[HSet, ...]:
    'One representative per class: the member with the least serial.'
    reps: list[HSet] = []
    for x in sorted(set(candidates), key=lambda h: h.serial):
        if not any(sim_star(x, r, q) for r in reps):
            reps.append(x)
    return tuple(reps)


_KINDS = ("vstar", "istar", "ihat")


def build_level(
    base: FiniteQO | MonoidalQO,
    alpha: int,
    kind: str = "ihat",
    level_cap: int = 3,
    max_members: int | None = None,
) -> HierLevel:
    """Iterate one of the three set-formation rules alpha times.

    vstar adjoins every nonempty subset of the previous stage, istar only the
    upward-directed ones, ihat only the directed downward-closed ones (on a
    finite stage those are the principal down-closures).  Every stage is
    quotiented to canonical representatives and keeps the urelements, so
    stages are cumulative.
    """
    q = base.order if isinstance(base, MonoidalQO) else base
    if kind not in _KINDS:
        raise ValueError(f"kind must be one of {_KINDS}, got {kind!r}")
    if alpha > level_cap:
        raise LevelCapExceededError(
            f"level {alpha} exceeds the cap of {level_cap}; raise level_cap "
            "explicitly if the growth is affordable"
        )
    if q.n == 0:
        raise EmptyCarrierError("no hierarchy over the empty carrier")
    bound = _resolve_max_members(max_members)

    members = _canonical_reps(
        (ur_elem(cls[0]) for cls in equiv_classes(q)), q
    )
    level = HierLevel(0, kind, q, members, None)
    for stage in range(1, alpha + 1):
        prev = level.members
        k = len(prev)
        new_sets: list[HSet] = []
        if kind == "ihat":
            for x in prev:
                closure = [y for y in prev if lesssim_star(y, x, q)]
                new_sets.append(hset(closure))
        else:
            if k > _SUBSET_CAP:
                raise CombinatorialBlowupError(
                    f"subset enumeration over {k} members"
                )
            up_bits = [0] * k
            for i in range(k):
                for j in range(k):
                    if lesssim_star(prev[i], prev[j], q):
                        up_bits[i] |= 1 << j
            for mask in range(1, 1 << k):
                chosen = [i for i in range(k) if mask >> i & 1]
                if kind == "istar" and not all(
                    up_bits[i] & up_bits[j] & mask
                    for i in chosen
                    for j in chosen
                ):
                    continue
                new_sets.append(hset(prev[i] for i in chosen))
                if len(new_sets) > bound:
                    raise CombinatorialBlowupError(
                        f"stage {stage} exceeds {bound} candidate members"
                    )
        candidates = list(prev) + new_sets
        if len(candidates) > bound:
            raise CombinatorialBlowupError(
                f"stage {stage} exceeds {bound} candidate members"
            )
        level = HierLevel(stage, kind, q, _canonical_reps(candidates, q), level)
    return level


def build_ihat_level(
    base: FiniteQO | MonoidalQO, alpha: int, **kwargs
) -> HierLevel:
    return build_level(base, alpha, "ihat", **kwargs)


def hat_mult(x: HSet, y: HSet, level: HierLevel, m: MonoidalQO) -> HSet | None:
    """The representative of x*y at the lowest stage holding one, or None.

    None is a value here, not an error: a truncated hierarchy need not be
    closed under products, and callers decide what absence means.
    """
    prod = hset_mult(x, y, m)
    for stage in level.chain():
        for member in stage.members:
            if sim_star(member, prod, level.base):
                return member
    return None


class Atom:
    """A symbolic prime letter: plain (one carrier class) or idempotent
    (a downward-closed set of lower letters).

    Hash-consed per base carrier; build through non_idem_atom and idem_atom.
    The level is the stage where the letter first appears: 0 for plain
    letters, one past the deepest payload letter otherwise.
    """

    __slots__ = ("base", "base_class", "downset", "level", "serial")

    def __init__(self, base, base_class, downset, level, serial) -> None:
        self.base = base
        self.base_class = base_class
        self.downset = downset
        self.level = level
        self.serial = serial

    @property
    def is_idem(self) -> bool:
        return self.downset is not None

    @property
    def downset_sorted(self) -> tuple["Atom", ...]:
        return tuple(sorted(self.downset, key=lambda a: a.serial))

    def __repr__(self) -> str:
        return f"Atom({self.serial})"


_ATOM_POOL: dict[tuple, Atom] = {}


def non_idem_atom(base: FiniteQO, class_rep: int) -> Atom:
    'The plain letter for the carrier class of class_rep.'
    key = (id(base), int(class_rep))
    atom = _ATOM_POOL.get(key)
    if atom is None:
        atom = Atom(base, int(class_rep), None, 0, base.elements[class_rep])
        _ATOM_POOL[key] = atom
    return atom


def idem_atom(base: FiniteQO, downset: Iterable[Atom]) -> Atom:
    'The idempotent letter over a downward-closed set of lower letters.'
    downset = frozenset(downset)
    if not downset:
        raise ValueError("idempotent letters carry a nonempty payload")
    for a in downset:
        if a.base is not base:
            raise ValueError("payload letters must share the base carrier")
    key = (id(base), downset)
    atom = _ATOM_POOL.get(key)
    if atom is None:
        kids = sorted(downset, key=lambda a: a.serial)
        serial = "*{" + ",".join(a.serial for a in kids) + "}"
        atom = Atom(base, None, downset, 1 + max(a.level for a in kids), serial)
        _ATOM_POOL[key] = atom
    return atom


def compare_atoms(x: Atom, y: Atom) -> bool:
    """The letter order: is x below y?

    Plain letters compare through the carrier; a plain letter sits below an
    idempotent one when it sits below some payload letter; idempotent letters
    compare payload-wise by for-all-exists; an idempotent letter is never
    below a plain one.  These rules are this package's own construction, and
    the oracle sweeps exist to hold them to account.
    """
    if x.base is not y.base:
        raise ValueError("letters over different carriers")
    if x.downset is None:
        if y.downset is None:
            return bool(x.base.leq[x.base_class, y.base_class])
        return any(compare_atoms(x, e) for e in y.downset)
    if y.downset is None:
        return False
    return all(
        any(compare_atoms(d, e) for e in y.downset) for d in x.downset
    )


@dataclass(eq=False)
class AtomSystem:
    """The symbolic prime alphabet of a carrier at one level.

    atoms are sorted by (level, serial); alphabet is the same carrier as a
    word alphabet, plain letters nonidem and idempotent letters idem;
    level_counts[k] is how many atoms exist at levels <= k.
    """

    base: FiniteQO
    alpha: int
    atoms: tuple[Atom, ...]
    alphabet: AtomAlphabet
    level_counts: tuple[int, ...]

    def atom_index(self, atom: Atom) -> int:
        return self.atoms.index(atom)

    def word(self, letters: Iterable[Atom | int]) -> HWord:
        'An alphabet word from atoms or atom indices.'
        idx = []
        for x in letters:
            idx.append(self.atoms.index(x) if isinstance(x, Atom) else int(x))
        return HWord(self.alphabet, idx)


def build_atoms(
    p: FiniteQO,
    alpha: int,
    level_cap: int = 3,
    max_members: int | None = None,
) -> AtomSystem:
    """Accumulate the prime alphabet over p up to the given level.

    Stage 0 holds one plain letter per carrier class.  Each later stage
    adjoins one idempotent letter per nonempty downward-closed subset of the
    letters built so far, under the compare_atoms order.  The final alphabet
    rejects construction if any idempotent letter lands below a plain one,
    which is how a corrupted comparison rule gets caught early.
    """
    if alpha > level_cap:
        raise LevelCapExceededError(
            f"level {alpha} exceeds the cap of {level_cap}"
        )
    if p.n == 0:
        raise EmptyCarrierError("no letters over the empty carrier")
    bound = _resolve_max_members(max_members)

    atoms: list[Atom] = [non_idem_atom(p, cls[0]) for cls in equiv_classes(p)]
    present = set(atoms)
    counts = [len(atoms)]
    for _ in range(1, alpha + 1):
        k = len(atoms)
        table = np.zeros((k, k), dtype=bool)
        for i in range(k):
            for j in range(k):
                table[i, j] = compare_atoms(atoms[i], atoms[j])
        for ds in all_downsets_of_poset(table, max_count=bound):
            if not ds:
                continue
            atom = idem_atom(p, (atoms[i] for i in ds))
            if atom not in present:
                present.add(atom)
                atoms.append(atom)
        if len(atoms) > bound:
            raise CombinatorialBlowupError(
                f"alphabet exceeds {bound} letters"
            )
        counts.append(len(atoms))

    atoms.sort(key=lambda a: (a.level, a.serial))
    k = len(atoms)
    table = np.zeros((k, k), dtype=bool)
    for i in range(k):
        for j in range(k):
            table[i, j] = compare_atoms(atoms[i], atoms[j])
    order = FiniteQO(tuple(a.serial for a in atoms), table)
    alphabet = AtomAlphabet(order, (i for i, a in enumerate(atoms) if a.is_idem))
    return AtomSystem(p, alpha, tuple(atoms), alphabet, tuple(counts))
