"""Brute-force ground truth over bounded-length sequences.

The semantic side here is deliberately primitive: sequences over the carrier
compare by a greedy classical embedding, symbolic letters denote explicit
sets of short sequences, and the theorem checks compare those sets bit by
bit.  None of it consults the word-embedding decision procedure or the
letter-order rules, so agreement between the two routes is evidence rather
than wiring.  The check_* drivers are the only places both routes meet.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import ScaleExceededError
from .higman import HWord, hword_primes_check, leq_H
from .hierarchy import Atom, AtomSystem, build_atoms
from .monoid import MonoidalQO
from .qo import FiniteQO
from .report import CheckResult, Report

_SEQ_UNIVERSE_CAP = 200_000


def all_sequences(p: FiniteQO, maxlen: int) -> tuple[tuple[int, ...], ...]:
    'Sequences of carrier indices, shortest first, lexicographic within a length.'
    out: list[tuple[int, ...]] = []
    frontier: list[tuple[int, ...]] = [()]
    for _ in range(maxlen + 1):
        out.extend(frontier)
        frontier = [s + (i,) for s in frontier for i in range(p.n)]
    return tuple(out)


def seq_label(p: FiniteQO, s: tuple[int, ...]) -> str:
    return ".".join(p.elements[i] for i in s) if s else "ε"


def higman_embed(s: tuple[int, ...], t: tuple[int, ...], p: FiniteQO) -> bool:
    """Classical subsequence embedding: s maps into t letterwise, in order.

    Greedy earliest match is complete here: skipping a usable position of t
    never helps a later letter of s.
    """
    leq = p.leq
    i = 0
    for j in range(len(t)):
        if i < len(s) and leq[s[i], t[j]]:
            i += 1
    return i == len(s)


@dataclass(eq=False)
class TruncatedSeqQO:
    'All sequences up to maxlen, quasi-ordered by classical embedding.'

    base: FiniteQO
    maxlen: int
    seqs: tuple[tuple[int, ...], ...]
    qo: FiniteQO

    def index(self, s: tuple[int, ...]) -> int:
        return self.seqs.index(s)


def truncated_seq_qo(p: FiniteQO, maxlen: int, max_universe: int = 20_000) -> TruncatedSeqQO:
    seqs = all_sequences(p, maxlen)
    if len(seqs) > max_universe:
        raise ScaleExceededError(
            f"{len(seqs)} sequences exceed the cap of {max_universe}"
        )
    n = len(seqs)
    table = np.zeros((n, n), dtype=bool)
    for i, s in enumerate(seqs):
        for j, t in enumerate(seqs):
            table[i, j] = higman_embed(s, t, p)
    labels = [seq_label(p, s) for s in seqs]
    return TruncatedSeqQO(p, maxlen, seqs, FiniteQO(labels, table))


def truncated_seq_monoid(
    p: FiniteQO, maxlen: int, max_universe: int = 2_000
) -> tuple[TruncatedSeqQO, MonoidalQO]:
    """Concatenation on the truncated universe, overflow absorbed by a top.

    The top sits above everything and is idempotent, which keeps the
    multiplicative axioms intact after truncation.
    """
    t = truncated_seq_qo(p, maxlen, max_universe)
    n = len(t.seqs)
    top = n
    order = np.zeros((n + 1, n + 1), dtype=bool)
    order[:n, :n] = t.qo.leq
    order[:, top] = True
    order[top, :top] = False
    order[top, top] = True
    index = {s: i for i, s in enumerate(t.seqs)}
    mult = np.full((n + 1, n + 1), top, dtype=np.int64)
    for i, a in enumerate(t.seqs):
        for j, b in enumerate(t.seqs):
            mult[i, j] = index.get(a + b, top)
    labels = [seq_label(p, s) for s in t.seqs] + ["⊤"]
    qo = FiniteQO(labels, order)
    return t, MonoidalQO(qo, mult, index[()])


class DenotationContext:
    """Explicit denotations over the sequence universe up to maxlen.

    Each denotation is an int bitmask over the universe.  A plain letter
    denotes the empty sequence plus every single letter below its class
    representative; a star letter denotes all finite concatenations of
    members of its payload's denotations, clipped to the universe.
    """

    __slots__ = ("base", "maxlen", "seqs", "index", "splits", "_atom_masks", "_word_masks")

    def __init__(self, p: FiniteQO, maxlen: int, max_universe: int = _SEQ_UNIVERSE_CAP):
        self.base = p
        self.maxlen = maxlen
        self.seqs = all_sequences(p, maxlen)
        if len(self.seqs) > max_universe:
            raise ScaleExceededError(
                f"{len(self.seqs)} sequences exceed the cap of {max_universe}"
            )
        self.index = {s: i for i, s in enumerate(self.seqs)}
        # splits[i] lists (prefix, suffix) index pairs over every cut of
        # seqs[i], the empty-prefix cut first.
        self.splits = tuple(
            tuple((self.index[s[:k]], self.index[s[k:]]) for k in range(len(s) + 1))
            for s in self.seqs
        )
        self._atom_masks: dict[Atom, int] = {}
        self._word_masks: dict[tuple[int, ...], int] = {}

    def universe_mask(self) -> int:
        return (1 << len(self.seqs)) - 1

    def members(self, mask: int) -> list[tuple[int, ...]]:
        return [s for i, s in enumerate(self.seqs) if mask >> i & 1]

    def atom_mask(self, atom: Atom) -> int:
        got = self._atom_masks.get(atom)
        if got is not None:
            return got
        if not atom.is_idem:
            out = 1 << self.index[()]
            for i in range(self.base.n):
                if self.base.leq[i, atom.base_class]:
                    out |= 1 << self.index[(i,)]
        else:
            inner = 0
            for d in atom.downset:
                inner |= self.atom_mask(d)
            out = self._star(inner)
        self._atom_masks[atom] = out
        return out

    def _star(self, mask: int) -> int:
        # Shortest-first order makes every strict suffix available before
        # the sequence that uses it.
        out = 1 << self.index[()]
        for i in range(len(self.seqs)):
            if not self.seqs[i]:
                continue
            for a, b in self.splits[i][1:]:
                if mask >> a & 1 and out >> b & 1:
                    out |= 1 << i
                    break
        return out

    def product(self, mx: int, my: int) -> int:
        out = 0
        for i in range(len(self.seqs)):
            for a, b in self.splits[i]:
                if mx >> a & 1 and my >> b & 1:
                    out |= 1 << i
                    break
        return out

    def word_mask(self, letters: tuple[Atom, ...]) -> int:
        got = self._word_masks.get(tuple(id(a) for a in letters))
        if got is not None:
            return got
        if not letters:
            out = 1 << self.index[()]
        else:
            out = self.product(self.word_mask(letters[:-1]), self.atom_mask(letters[-1]))
        self._word_masks[tuple(id(a) for a in letters)] = out
        return out


def _seq_in_atom(atom: Atom, s: tuple[int, ...], p: FiniteQO, memo: dict) -> bool:
    key = (id(atom), s)
    got = memo.get(key)
    if got is not None:
        return got
    if not atom.is_idem:
        out = len(s) == 0 or (len(s) == 1 and bool(p.leq[s[0], atom.base_class]))
    elif not s:
        out = True
    else:
        out = False
        for k in range(1, len(s) + 1):
            if not any(_seq_in_atom(d, s[:k], p, memo) for d in atom.downset):
                continue
            if _seq_in_atom(atom, s[k:], p, memo):
                out = True
                break
    memo[key] = out
    return out


def denote_member(system: AtomSystem, w: HWord, s) -> bool:
    """Decide membership of a carrier sequence in a symbolic word's denotation.

    Standalone block recursion, no precomputed universe: the sequence must
    split into consecutive blocks, one per letter of w, each block inside
    that letter's denotation.  Accepts the sequence as carrier indices or
    labels.
    """
    p = system.base
    seq = tuple(x if isinstance(x, int) else p.index(x) for x in s)
    letters = tuple(system.atoms[i] for i in w.letters)
    memo: dict = {}

    def blocks(li: int, pos: int) -> bool:
        key = ("b", li, pos)
        got = memo.get(key)
        if got is not None:
            return got
        if li == len(letters):
            out = pos == len(seq)
        else:
            out = any(
                _seq_in_atom(letters[li], seq[pos:cut], p, memo) and blocks(li + 1, cut)
                for cut in range(pos, len(seq) + 1)
            )
        memo[key] = out
        return out

    return blocks(0, 0)


def _atom_words(system: AtomSystem, max_word_len: int) -> list[tuple[int, ...]]:
    k = len(system.atoms)
    out: list[tuple[int, ...]] = []
    for length in range(max_word_len + 1):
        out.extend(itertools.product(range(k), repeat=length))
    return out


def check_containment_agreement(
    p: FiniteQO,
    alpha: int,
    maxlen: int = 4,
    max_word_len: int = 3,
    level_cap: int = 3,
) -> Report:
    """Pit the word-order decision against raw denotation containment.

    A word below another must denote a subset; a word not below must be
    refuted by a concrete short sequence.  Pairs where the refutation
    search is inconclusive at this universe size are flagged, not failed.
    """
    if alpha > 2 or maxlen > 5:
        raise ScaleExceededError("containment sweep is sized for alpha <= 2, maxlen <= 5")
    system = build_atoms(p, alpha, level_cap=level_cap)
    ctx = DenotationContext(p, maxlen)
    words = _atom_words(system, max_word_len)
    hwords = [system.word(t) for t in words]
    masks = [ctx.word_mask(tuple(system.atoms[i] for i in t)) for t in words]

    violation = None
    unresolved: list[dict] = []
    confirmed = refuted = 0
    for i, u in enumerate(hwords):
        for j, v in enumerate(hwords):
            sym = leq_H(u, v)
            contained = masks[i] & ~masks[j] == 0
            if sym and not contained:
                if violation is None:
                    bit = (masks[i] & ~masks[j]).bit_length() - 1
                    violation = {
                        "lhs": list(u.labels),
                        "rhs": list(v.labels),
                        "witness": seq_label(p, ctx.seqs[bit]),
                    }
            elif sym:
                confirmed += 1
            elif not contained:
                refuted += 1
            else:
                if len(unresolved) < 10:
                    unresolved.append({"lhs": list(u.labels), "rhs": list(v.labels)})
    stats = {
        "atoms": len(system.atoms),
        "words": len(words),
        "pairs": len(words) ** 2,
        "confirmed": confirmed,
        "refuted": refuted,
        "unresolved": len(unresolved),
    }
    return Report(
        "containment-agreement",
        (
            CheckResult("order-implies-containment", violation is None, violation, stats),
            CheckResult(
                "non-order-has-refuting-sequence",
                True,
                None,
                {"unresolved": len(unresolved), "flagged": unresolved},
            ),
        ),
    )


def check_two_forms(
    p: FiniteQO, maxlen: int = 4, max_word_len: int = 3, level_cap: int = 3
) -> Report:
    """Every level-1 prime ideal must denote a star set or a down set.

    Primality of word classes comes from the symbolic census; the shape of
    each denotation is then recomputed semantically, as all sequences spelled
    from the denoted single letters (star form) or the empty sequence plus
    those letters (down form).
    """
    if maxlen > 4:
        raise ScaleExceededError("two-forms sweep is sized for maxlen <= 4")
    system = build_atoms(p, 1, level_cap=level_cap)
    primes = hword_primes_check(system.alphabet, maxlen=max_word_len)
    ctx = DenotationContext(p, maxlen)

    single = [ctx.index[(i,)] for i in range(p.n)]
    shape_bad = None
    star_forms = down_forms = 0
    for atom in system.atoms:
        mask = ctx.atom_mask(atom)
        letters = {i for i in range(p.n) if mask >> single[i] & 1}
        down_mask = 1 << ctx.index[()]
        for i in letters:
            down_mask |= 1 << single[i]
        star_mask = 0
        for k, s in enumerate(ctx.seqs):
            if all(c in letters for c in s):
                star_mask |= 1 << k
        if mask == star_mask:
            star_forms += 1
        elif mask == down_mask:
            down_forms += 1
        elif shape_bad is None:
            shape_bad = {
                "atom": atom.serial,
                "letters": sorted(p.elements[i] for i in letters),
                "extra": [
                    seq_label(p, s)
                    for s in ctx.members(mask & ~star_mask & ~down_mask)
                ][:5],
            }
    census = dict(primes.check("primes-are-letter-classes").stats)
    census.update({"star_forms": star_forms, "down_forms": down_forms})
    return Report(
        "two-forms",
        (
            *primes.checks,
            CheckResult("prime-ideal-shapes", shape_bad is None, shape_bad, census),
        ),
    )


def _single_letters(atom: Atom, p: FiniteQO) -> int:
    'Bitmask of carrier letters whose one-letter sequence the atom denotes.'
    if not atom.is_idem:
        out = 0
        for i in range(p.n):
            if p.leq[i, atom.base_class]:
                out |= 1 << i
        return out
    out = 0
    for d in atom.downset:
        out |= _single_letters(d, p)
    return out


def _factor_list(letters: tuple[Atom, ...], p: FiniteQO) -> tuple[tuple[str, int], ...]:
    """A word's denotation as a product of letter-set factors.

    A plain letter contributes an optional-single-letter factor, a star
    letter contributes a star factor over its single letters; that is exact
    at every level, since starring a union of star-or-down pieces stars
    their single letters.  Adjacent factors a star absorbs are dropped.
    """
    out: list[tuple[str, int]] = []
    for a in letters:
        f = ("d" if not a.is_idem else "s", _single_letters(a, p))
        if out:
            prev = out[-1]
            if prev[0] == "s" and f[1] & ~prev[1] == 0:
                continue
            if f[0] == "s" and prev[1] & ~f[1] == 0:
                out.pop()
        out.append(f)
    return tuple(out)


def _step_table(factors: tuple[tuple[str, int], ...], n: int) -> list[list[int]]:
    """Greedy position automaton: from the earliest usable factor, a letter
    either loops on a star or moves past an optional letter; -1 is dead.
    Earliest-position determinism is sound because every factor is optional,
    so the reachable positions always form an upward interval.
    """
    k = len(factors)
    tbl = [[-1] * n for _ in range(k + 1)]
    for c in range(n):
        for m in range(k - 1, -1, -1):
            kind, letters = factors[m]
            if letters >> c & 1:
                tbl[m][c] = m if kind == "s" else m + 1
            else:
                tbl[m][c] = tbl[m + 1][c]
    return tbl


def _product_contained(
    fu: tuple[tuple[str, int], ...], fv: tuple[tuple[str, int], ...], n: int
) -> bool:
    'Exact inclusion of two factor-product languages, no length bound.'
    tu, tv = _step_table(fu, n), _step_table(fv, n)
    width = len(fv) + 2
    start = 0
    seen = {start}
    frontier = [(0, 0)]
    while frontier:
        nxt = []
        for mu, mv in frontier:
            for c in range(n):
                u2 = tu[mu][c]
                if u2 < 0:
                    continue
                v2 = tv[mv][c]
                if v2 < 0:
                    return False
                key = u2 * width + v2
                if key not in seen:
                    seen.add(key)
                    nxt.append((u2, v2))
        frontier = nxt
    return True


def check_xy_wz(
    p: FiniteQO, maxlen: int = 4, max_word_len: int = 2, level_cap: int = 3
) -> Report:
    """Containment of denotation products forces a factorwise containment.

    For all level-1 words x, y, w, z: if xy denotes a subset of wz then x
    denotes a subset of w or y a subset of z.  Both sides are decided
    exactly on the denoted languages; deciding the hypothesis only up to
    the length bound would manufacture false hypotheses right at the bound
    (all a-sequences up to length 4 fit below a four-fold product of single
    letters), so the bounded universe serves here as a consistency guard on
    the exact decision rather than as the decision itself.
    """
    if maxlen > 4:
        raise ScaleExceededError("product sweep is sized for maxlen <= 4")
    system = build_atoms(p, 1, level_cap=level_cap)
    ctx = DenotationContext(p, maxlen)
    words = _atom_words(system, max_word_len)
    atoms = [tuple(system.atoms[i] for i in t) for t in words]
    masks = [ctx.word_mask(t) for t in atoms]
    factors = [_factor_list(t, p) for t in atoms]
    k = len(words)
    n = p.n

    exact = [[_product_contained(factors[a], factors[b], n) for b in range(k)] for a in range(k)]
    guard_bad = None
    for a in range(k):
        for b in range(k):
            if exact[a][b] and masks[a] & ~masks[b] != 0:
                guard_bad = {"lhs": a, "rhs": b}
                break
        if guard_bad:
            break

    pair_factors = [[factors[a] + factors[b] for b in range(k)] for a in range(k)]
    pair_masks = [[ctx.product(masks[a], masks[b]) for b in range(k)] for a in range(k)]

    bad = None
    held = saturated = 0
    labels = [".".join(system.atoms[i].serial for i in t) or "ε" for t in words]
    for x in range(k):
        for y in range(k):
            pxy = pair_factors[x][y]
            mxy = pair_masks[x][y]
            row = exact[x]
            for w in range(k):
                xw = row[w]
                for z in range(k):
                    if mxy & ~pair_masks[w][z] != 0:
                        continue
                    if not _product_contained(pxy, pair_factors[w][z], n):
                        saturated += 1
                        continue
                    held += 1
                    if not (xw or exact[y][z]):
                        bad = {
                            "x": labels[x],
                            "y": labels[y],
                            "w": labels[w],
                            "z": labels[z],
                        }
                        break
                if bad:
                    break
            if bad:
                break
        if bad:
            break
    stats = {
        "words": k,
        "quadruples": k**4,
        "containments": held,
        "saturated_at_bound": saturated,
    }
    return Report(
        "product-containment",
        (
            CheckResult("factor-containment-forced", bad is None, bad, stats),
            CheckResult(
                "exact-implies-bounded", guard_bad is None, guard_bad, {"pairs": k * k}
            ),
        ),
    )
