"""A translation of symbolic prime letters into hereditary sets over the
carrier extended by one fresh point.

Plain letters map to their carrier urelement.  Idempotent letters map to the
set of their payload's images together with the fresh point's urelement, so
star-ness is visible in the image as membership of the fresh point.  The
translation is expected to preserve and reflect the letter order; the package
re-proves that per run with verify_reflection rather than assuming it.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import hierarchy
from .hierarchy import (
    Atom,
    AtomSystem,
    HSet,
    build_atoms,
    hset,
    lesssim_star,
    ur_elem,
)
from .qo import FiniteQO, disjoint_union_with_star
from .report import CheckResult, Report


@dataclass(eq=False)
class ReflectionTable:
    """Images of every atom of a system, over the extended carrier.

    An entry of None is the undefined marker.  It can only arise by
    propagation from an undefined payload image, never at a plain letter,
    and verify_reflection asserts it is absent for finite carriers.
    """

    system: AtomSystem
    star_qo: FiniteQO
    star: int
    entries: dict[Atom, HSet | None]

    @property
    def alpha(self) -> int:
        return self.system.alpha

    def image(self, atom: Atom) -> HSet | None:
        return self.entries[atom]


def build_reflection(p: FiniteQO, alpha: int, level_cap: int = 3) -> ReflectionTable:
    'Build the atom system at the given level and translate every atom.'
    system = build_atoms(p, alpha, level_cap=level_cap)
    star_qo = disjoint_union_with_star(p)
    star = star_qo.n - 1
    entries: dict[Atom, HSet | None] = {}

    def image(a: Atom) -> HSet | None:
        if a in entries:
            return entries[a]
        if not a.is_idem:
            out: HSet | None = ur_elem(a.base_class)
        else:
            kids = [image(d) for d in a.downset_sorted]
            if any(k is None for k in kids):
                out = None
            else:
                out = hset([*kids, ur_elem(star)])
        entries[a] = out
        return out

    for a in system.atoms:
        image(a)
    return ReflectionTable(system, star_qo, star, entries)


def _urelements_of(x: HSet) -> set[int]:
    if x.ur is not None:
        return {x.ur}
    out: set[int] = set()
    for c in x.children:
        out |= _urelements_of(c)
    return out


def verify_reflection(table: ReflectionTable) -> Report:
    """Check the translation against the letter order, both directions.

    The letter side is consulted through the live comparison rule, not a
    frozen table, so a rule swapped in after the build is still what gets
    verified here.
    """
    system = table.system
    atoms = system.atoms
    sq = table.star_qo
    star_ur = ur_elem(table.star)

    undefined = [a.serial for a in atoms if table.entries[a] is None]
    defined = [a for a in atoms if table.entries[a] is not None]

    preserve_bad = None
    reflect_bad = None
    pairs = 0
    for x in defined:
        fx = table.entries[x]
        for y in defined:
            fy = table.entries[y]
            pairs += 1
            src = hierarchy.compare_atoms(x, y)
            dst = lesssim_star(fx, fy, sq)
            if src and not dst and preserve_bad is None:
                preserve_bad = {"x": x.serial, "y": y.serial}
            if dst and not src and reflect_bad is None:
                reflect_bad = {"x": x.serial, "y": y.serial}

    star_bad = None
    for a in defined:
        fa = table.entries[a]
        has_star = fa.children is not None and star_ur in fa.children
        if a.is_idem != has_star:
            star_bad = {"atom": a.serial, "image": fa.serial}
            break

    # A level-l letter should land exactly at rank l - 1, hence below alpha,
    # and mention no urelement outside the extended carrier.
    rank_bad = None
    for a in defined:
        fa = table.entries[a]
        if fa.rank != a.level - 1 or fa.rank >= table.alpha:
            rank_bad = {"atom": a.serial, "rank": fa.rank}
            break
        if any(u >= sq.n for u in _urelements_of(fa)):
            rank_bad = {"atom": a.serial, "urelements": sorted(_urelements_of(fa))}
            break

    return Report(
        "reflection",
        (
            CheckResult(
                "defined-everywhere",
                not undefined,
                undefined or None,
                {"atoms": len(atoms)},
            ),
            CheckResult("order-preserving", preserve_bad is None, preserve_bad, {"pairs": pairs}),
            CheckResult("order-reflecting", reflect_bad is None, reflect_bad),
            CheckResult("star-membership", star_bad is None, star_bad),
            CheckResult("image-bounds", rank_bad is None, rank_bad),
        ),
    )
