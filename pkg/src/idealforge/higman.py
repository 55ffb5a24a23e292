"""Generalized word embeddings over an ordered alphabet with designated
idempotent letters.

A word embeds into another when a weakly increasing map matches every letter
to a letter above it, and only idempotent target letters may absorb more than
one source letter.  With no idempotent letters this is the classical sequence
embedding; with all letters idempotent it is domination of supports.  The
fast decision procedure is a small dynamic program; its ground truth is the
explicit search over all weakly increasing maps, and the two are swept against
each other exhaustively at small scale.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import AlphabetMismatchError, ScaleExceededError, TooLargeError
from .monoid import MonoidalQO, primes as monoid_primes
from .qo import FiniteQO, all_downsets_of_poset, all_quasi_orders, quotient
from .report import CheckResult, Report


class AtomAlphabet:
    """An ordered alphabet split into plain and idempotent letters.

    The plain part must be downward-closed: nothing idempotent may sit below
    a plain letter.  That is checked on construction.
    """

    __slots__ = ("order", "idem", "_dp_cache", "_leq_rows")

    def __init__(self, order: FiniteQO, idem: Iterable[int]) -> None:
        idem = frozenset(int(i) for i in idem)
        for i in idem:
            if not 0 <= i < order.n:
                raise ValueError(f"idempotent index {i} out of range")
        for i in idem:
            for j in range(order.n):
                if order.leq[i, j] and j not in idem:
                    raise ValueError(
                        f"idempotent letter {order.elements[i]!r} sits below "
                        f"plain letter {order.elements[j]!r}; the plain part "
                        "must be downward-closed"
                    )
        self.order = order
        self.idem = idem
        self._dp_cache: dict = {}
        self._leq_rows = tuple(tuple(bool(x) for x in row) for row in order.leq)

    @property
    def nonidem(self) -> frozenset[int]:
        return frozenset(range(self.order.n)) - self.idem

    def letter(self, label: str) -> int:
        return self.order.index(label)

    def __repr__(self) -> str:
        return (
            f"AtomAlphabet({list(self.order.elements)!r}, "
            f"idem={sorted(self.order.elements[i] for i in self.idem)!r})"
        )


class HWord:
    'A finite word of alphabet letters; the empty word is allowed.'

    __slots__ = ("alphabet", "letters")

    def __init__(self, alphabet: AtomAlphabet, letters: Iterable[int]) -> None:
        letters = tuple(int(i) for i in letters)
        for i in letters:
            if not 0 <= i < alphabet.order.n:
                raise ValueError(f"letter index {i} out of range")
        self.alphabet = alphabet
        self.letters = letters

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.alphabet.order.elements[i] for i in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, HWord)
            and self.alphabet is other.alphabet
            and self.letters == other.letters
        )

    def __hash__(self) -> int:
        return hash(self.letters)

    def __repr__(self) -> str:
        return f"HWord({'.'.join(self.labels) or 'ε'})"


def concat(u: HWord, v: HWord) -> HWord:
    if u.alphabet is not v.alphabet:
        raise AlphabetMismatchError("cannot concatenate words over different alphabets")
    return HWord(u.alphabet, u.letters + v.letters)


def _leq_letters(
    lu: tuple[int, ...],
    lv: tuple[int, ...],
    leq_rows: tuple,
    idem: frozenset[int],
) -> bool:
    """Embedding decision on raw letter tuples.

    ok[i][j]: the tail lu[i:] embeds using fresh target positions >= j.
    stay[i][j]: the same, except position j (known idempotent) was already
    used and may absorb more letters.  Both run right to left.
    """
    n, m = len(lu), len(lv)
    if n == 0:
        return True
    ok_next = [True] * (m + 1)
    stay_next = [True] * m
    for i in range(n - 1, -1, -1):
        row = leq_rows[lu[i]]
        ok_cur = [False] * (m + 1)
        stay_cur = [False] * m
        for j in range(m - 1, -1, -1):
            fits = row[lv[j]]
            if lv[j] in idem:
                hit = fits and stay_next[j]
            else:
                hit = fits and ok_next[j + 1]
            ok_cur[j] = hit or ok_cur[j + 1]
            stay_cur[j] = (fits and stay_next[j]) or ok_cur[j + 1]
        ok_next, stay_next = ok_cur, stay_cur
    return ok_next[0]


def leq_H(u: HWord, v: HWord) -> bool:
    """Generalized embedding of u into v, decided by dynamic programming.

    Verdicts are memoized per alphabet.  Agreement with the explicit witness
    search is a standing invariant of the test suite, not an assumption.
    """
    if u.alphabet is not v.alphabet:
        raise AlphabetMismatchError("cannot compare words over different alphabets")
    alpha = u.alphabet
    key = (u.letters, v.letters)
    cached = alpha._dp_cache.get(key)
    if cached is not None:
        return cached
    out = _leq_letters(u.letters, v.letters, alpha._leq_rows, alpha.idem)
    alpha._dp_cache[key] = out
    return out


@lru_cache(maxsize=None)
def _weakly_increasing_maps(n: int, m: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.combinations_with_replacement(range(m), n))


def leq_H_bruteforce(u: HWord, v: HWord, max_len: int = 8) -> bool:
    """Ground truth by explicit search over every weakly increasing map.

    A map witnesses the embedding when each letter lands below its target and
    any target hit more than once is idempotent.  Guarded against long words.
    """
    if u.alphabet is not v.alphabet:
        raise AlphabetMismatchError("cannot compare words over different alphabets")
    if len(u) > max_len or len(v) > max_len:
        raise TooLargeError(f"witness search is capped at length {max_len}")
    leq = u.alphabet._leq_rows
    idem = u.alphabet.idem
    lu, lv = u.letters, v.letters
    n, m = len(lu), len(lv)
    for f in _weakly_increasing_maps(n, m):
        good = True
        for i in range(n):
            if not leq[lu[i]][lv[f[i]]]:
                good = False
                break
            if i > 0 and f[i] == f[i - 1] and lv[f[i]] not in idem:
                good = False
                break
        if good:
            return True
    return False


def equiv_H(u: HWord, v: HWord) -> bool:
    return leq_H(u, v) and leq_H(v, u)


def word_is_idempotent(w: HWord) -> bool:
    'Does the word absorb its own square?'
    return equiv_H(concat(w, w), w)


def canonical_word(w: HWord) -> HWord:
    """Drop letters left to right while the word stays equivalent.

    The scan is deterministic, so equal inputs canonicalize identically; that
    equivalent words canonicalize to letterwise equivalent words is a tested
    property, not something callers may assume without running the suite.
    """
    letters = list(w.letters)
    i = 0
    while i < len(letters):
        shorter = HWord(w.alphabet, letters[:i] + letters[i + 1 :])
        if equiv_H(shorter, w):
            letters = list(shorter.letters)
        else:
            i += 1
    return HWord(w.alphabet, letters)


def all_words(alphabet: AtomAlphabet, maxlen: int) -> list[HWord]:
    'Every word up to maxlen, ordered by length then letter indices.'
    out = [HWord(alphabet, ())]
    frontier: list[tuple[int, ...]] = [()]
    for _ in range(maxlen):
        frontier = [
            w + (i,) for w in frontier for i in range(alphabet.order.n)
        ]
        out.extend(HWord(alphabet, w) for w in frontier)
    return out


def _word_classes(words: Sequence[HWord]) -> tuple[list[HWord], list[int]]:
    'Representatives (first in list order) and the class index of every word.'
    reps: list[HWord] = []
    cls: list[int] = []
    for w in words:
        for k, r in enumerate(reps):
            if equiv_H(w, r):
                cls.append(k)
                break
        else:
            cls.append(len(reps))
            reps.append(w)
    return reps, cls


def hword_primes_check(alphabet: AtomAlphabet, maxlen: int = 4) -> Report:
    """Exhaustively confirm which words are prime in the concatenation monoid.

    A word is prime when it is not equivalent to the empty word and every
    splitting into two factors leaves one factor equivalent to the whole.
    The claims checked: primes are exactly the words equivalent to a single
    letter, and the idempotent primes are exactly those equivalent to an
    idempotent letter.  Factor pairs range over class representatives of
    words up to maxlen; concatenation respects equivalence, so this covers
    every factorization whose factor classes reach down to that length.
    """
    if maxlen > 6:
        raise TooLargeError("prime scan is capped at words of length 6")
    words = all_words(alphabet, maxlen)
    reps, _ = _word_classes(words)
    letters = [HWord(alphabet, (i,)) for i in range(alphabet.order.n)]
    empty = HWord(alphabet, ())

    prime_bad = None
    idem_bad = None
    prime_classes = 0
    idem_prime_classes = 0
    for w in reps:
        claimed = any(equiv_H(w, l) for l in letters)
        actual = not equiv_H(w, empty)
        if actual:
            for a in reps:
                if not leq_H(a, w):
                    continue
                for b in reps:
                    if not leq_H(b, w):
                        continue
                    if equiv_H(concat(a, b), w) and not equiv_H(a, w) and not equiv_H(b, w):
                        actual = False
                        break
                if not actual:
                    break
        if claimed != actual and prime_bad is None:
            prime_bad = {"word": list(w.labels), "letter-class": claimed, "prime": actual}
        if actual:
            prime_classes += 1
            idem_claimed = any(
                equiv_H(w, letters[i]) for i in sorted(alphabet.idem)
            )
            idem_actual = word_is_idempotent(w)
            if idem_claimed != idem_actual and idem_bad is None:
                idem_bad = {
                    "word": list(w.labels),
                    "idem-letter-class": idem_claimed,
                    "idempotent": idem_actual,
                }
            if idem_actual:
                idem_prime_classes += 1

    stats = {
        "words": len(words),
        "classes": len(reps),
        "prime_classes": prime_classes,
        "idem_prime_classes": idem_prime_classes,
    }
    return Report(
        "word-primes",
        (
            CheckResult("primes-are-letter-classes", prime_bad is None, prime_bad, stats),
            CheckResult(
                "idempotent-primes-are-idempotent-letters", idem_bad is None, idem_bad
            ),
        ),
    )


def check_abstractly_higman(m: MonoidalQO, max_tuple: int = 3) -> Report:
    """Does comparison of prime products reduce to letterwise matching?

    Products of at most max_tuple primes on each side: the left product sits
    below the right one exactly when a weakly increasing map matches every
    left prime below its target and only idempotent targets absorb more than
    one.  Both directions are checked; a failure of either is reported with
    the offending tuples.
    """
    leq = m.order.leq
    M = m.mult
    ps = sorted(monoid_primes(m))
    if len(ps) ** max_tuple > 200_000:
        raise ScaleExceededError("too many prime tuples")
    idem = {p for p in ps if m.order.equiv(int(M[p, p]), p)}

    def prod(tup: tuple[int, ...]) -> int:
        acc = m.unit
        for x in tup:
            acc = int(M[acc, x])
        return acc

    tuples: list[tuple[int, ...]] = [()]
    for length in range(1, max_tuple + 1):
        tuples.extend(itertools.product(ps, repeat=length))
    prods = [prod(t) for t in tuples]

    bad = None
    checked = 0
    for a, ta in enumerate(tuples):
        for b, tb in enumerate(tuples):
            checked += 1
            ordered = bool(leq[prods[a], prods[b]])
            matched = False
            for f in _weakly_increasing_maps(len(ta), len(tb)):
                good = True
                for i in range(len(ta)):
                    if not leq[ta[i], tb[f[i]]]:
                        good = False
                        break
                    if i > 0 and f[i] == f[i - 1] and tb[f[i]] not in idem:
                        good = False
                        break
                if good:
                    matched = True
                    break
            if ordered != matched:
                bad = {
                    "left": [m.label(x) for x in ta],
                    "right": [m.label(x) for x in tb],
                    "products-ordered": ordered,
                    "letterwise-match": matched,
                }
                break
        if bad:
            break
    return Report(
        "prime-product-matching",
        (
            CheckResult(
                "products-compare-letterwise",
                bad is None,
                bad,
                {"prime_count": len(ps), "tuple_pairs": checked},
            ),
        ),
    )


_TOP = "⊤"


def bounded_word_monoid(
    alphabet: AtomAlphabet, maxlen: int, reduce: bool = False
) -> MonoidalQO:
    """All words up to maxlen plus an absorbing top, under concatenation.

    Products that overflow the length bound collapse to the top element,
    which sits above everything.  With reduce set, products are first
    shortened to canonical form, which keeps alphabets whose letters are all
    idempotent from overflowing at all.
    """
    words = all_words(alphabet, maxlen)
    k = len(words)
    index = {w.letters: i for i, w in enumerate(words)}
    labels = [".".join(w.labels) if w.letters else "ε" for w in words] + [_TOP]
    table = np.zeros((k + 1, k + 1), dtype=bool)
    for i, u in enumerate(words):
        for j, v in enumerate(words):
            table[i, j] = leq_H(u, v)
    table[:, k] = True
    table[k, :k] = False
    table[k, k] = True
    mult = np.full((k + 1, k + 1), k, dtype=np.int64)
    for i, u in enumerate(words):
        for j, v in enumerate(words):
            w = concat(u, v)
            if reduce:
                w = canonical_word(w)
            mult[i, j] = index.get(w.letters, k)
    order = FiniteQO(labels, table)
    return MonoidalQO(order, mult, index[()])


def upward_closed_subsets(q: FiniteQO) -> list[frozenset[int]]:
    'All upward-closed subsets, empty and full included.'
    qm = quotient(q)
    out = []
    for class_set in all_downsets_of_poset(qm.classes.leq):
        members = frozenset(
            i for c in range(qm.classes.n) if c not in class_set for i in qm.members[c]
        )
        out.append(members)
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def dp_agreement_sweep(
    max_atoms: int = 4,
    max_pair_len: int = 5,
    full_len: int = 5,
    full_atom_cap: int = 2,
) -> Report:
    """Sweep the decision procedure against the witness search.

    Covers every quasi-order on up to max_atoms letters, every upward-closed
    idempotent subset, both deduplicated up to isomorphism; within each
    alphabet, every word pair with combined length at most max_pair_len, and
    for alphabets of at most full_atom_cap letters additionally every pair
    with each side up to full_len.
    """
    from .qo import _canonical_relation_key

    disagreement = None
    systems = 0
    pairs = 0
    for n in range(1, max_atoms + 1):
        for q in all_quasi_orders(n):
            seen: set[bytes] = set()
            for idem in upward_closed_subsets(q):
                key = _canonical_relation_key(np.asarray(q.leq), tuple(idem))
                if key in seen:
                    continue
                seen.add(key)
                alphabet = AtomAlphabet(q, idem)
                systems += 1
                cap = max(max_pair_len, full_len if n <= full_atom_cap else 0)
                words = all_words(alphabet, cap)
                by_len: dict[int, list[HWord]] = {}
                for w in words:
                    by_len.setdefault(len(w), []).append(w)
                for a in sorted(by_len):
                    for b in sorted(by_len):
                        joint = a + b <= max_pair_len
                        full = n <= full_atom_cap and a <= full_len and b <= full_len
                        if not joint and not full:
                            continue
                        for u in by_len[a]:
                            for v in by_len[b]:
                                pairs += 1
                                fast = leq_H(u, v)
                                slow = leq_H_bruteforce(u, v)
                                if fast != slow and disagreement is None:
                                    disagreement = {
                                        "alphabet": list(q.elements),
                                        "idem": sorted(q.elements[i] for i in idem),
                                        "lhs": list(u.labels),
                                        "rhs": list(v.labels),
                                        "dp": fast,
                                        "witness-search": slow,
                                    }
            if disagreement:
                break
        if disagreement:
            break
    return Report(
        "embedding-dp-agreement",
        (
            CheckResult(
                "dp-matches-witness-search",
                disagreement is None,
                disagreement,
                {"systems": systems, "pairs": pairs},
            ),
        ),
    )
