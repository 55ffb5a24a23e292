import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from idealforge.errors import AlphabetMismatchError
from idealforge.higman import (
    AtomAlphabet,
    HWord,
    all_words,
    bounded_word_monoid,
    canonical_word,
    check_abstractly_higman,
    concat,
    dp_agreement_sweep,
    equiv_H,
    hword_primes_check,
    leq_H,
    leq_H_bruteforce,
    upward_closed_subsets,
    word_is_idempotent,
)
from idealforge.fixtures import capped_addition
from idealforge.monoid import check_axioms
from idealforge.qo import FiniteQO, validate


def classical(n):
    labels = [chr(ord("a") + i) for i in range(n)]
    return AtomAlphabet(FiniteQO(labels, np.eye(n, dtype=bool)), ())


def idem_top():
    q = validate(["a", "b", "t"], [("a", "t"), ("b", "t")], close=True)
    return AtomAlphabet(q, (q.index("t"),))


def test_idem_letters_must_sit_above_plain_ones():
    q = validate(["a", "b"], [("a", "b")], close=True)
    AtomAlphabet(q, (q.index("b"),))
    with pytest.raises(ValueError):
        AtomAlphabet(q, (q.index("a"),))


def test_classical_embedding_cases():
    al = classical(2)
    a, b = 0, 1
    assert leq_H(HWord(al, []), HWord(al, [a, b]))
    assert leq_H(HWord(al, [a, b]), HWord(al, [a, a, b]))
    assert not leq_H(HWord(al, [a, a]), HWord(al, [a]))
    assert not leq_H(HWord(al, [b, a]), HWord(al, [a, b]))
    assert not leq_H(HWord(al, [a]), HWord(al, []))


def test_idempotent_targets_absorb_repetition():
    al = idem_top()
    a, b, t = 0, 1, 2
    assert leq_H(HWord(al, [a, a]), HWord(al, [t]))
    assert leq_H(HWord(al, [a, b, a, b]), HWord(al, [t]))
    assert leq_H(HWord(al, [t, t]), HWord(al, [a, t]))
    assert leq_H(HWord(al, [t, t]), HWord(al, [t]))
    # plain letters still embed injectively
    assert not leq_H(HWord(al, [a, a]), HWord(al, [a]))
    # an idempotent letter never lands on plain targets
    assert not leq_H(HWord(al, [t]), HWord(al, [a, b, a, b]))
    # and the plain fragment keeps the classical letter order
    assert not leq_H(HWord(al, [b, a]), HWord(al, [a, b]))
    assert leq_H(HWord(al, [a, t, b]), HWord(al, [t, b]))


def test_concat_and_alphabet_mismatch():
    al = classical(2)
    u = HWord(al, [0])
    v = HWord(al, [1])
    assert concat(u, v).letters == (0, 1)
    with pytest.raises(AlphabetMismatchError):
        concat(u, HWord(classical(2), [0]))
    with pytest.raises(AlphabetMismatchError):
        leq_H(u, HWord(classical(2), [0]))


def test_word_equivalence_and_canonical_forms():
    al = idem_top()
    a, b, t = 0, 1, 2
    tt = HWord(al, [t, t])
    assert equiv_H(tt, HWord(al, [t]))
    assert canonical_word(tt).letters == (t,)
    assert canonical_word(HWord(al, [a, t, b])).letters == (t,)
    assert canonical_word(HWord(al, [a, b])).letters == (a, b)
    assert canonical_word(HWord(al, [])).letters == ()


def test_word_idempotence_classification():
    # over {a,b} < t idempotent, a word absorbs its square exactly when it is
    # empty or mentions t; over a plain alphabet only the empty word does
    al = idem_top()
    t = 2
    for w in all_words(al, 3):
        assert word_is_idempotent(w) == (len(w) == 0 or t in w.letters)
    plain = classical(2)
    for w in all_words(plain, 3):
        assert word_is_idempotent(w) == (len(w) == 0)


def test_words_sorted_shortlex():
    al = classical(2)
    words = all_words(al, 2)
    assert [w.letters for w in words] == [(), (0,), (1,), (0, 0), (0, 1), (1, 0), (1, 1)]


def test_dp_agrees_with_witness_search_smoke():
    report = dp_agreement_sweep(max_atoms=2, max_pair_len=4, full_len=4, full_atom_cap=2)
    assert report.passed
    assert report.checks[0].stats["pairs"] > 1000


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_order_axioms_hold_on_random_words(data):
    al = idem_top()
    letters = st.lists(st.integers(0, 2), max_size=4)
    u = HWord(al, data.draw(letters))
    v = HWord(al, data.draw(letters))
    w = HWord(al, data.draw(letters))
    assert leq_H(u, u)
    if leq_H(u, v) and leq_H(v, w):
        assert leq_H(u, w)
    # concatenation is monotone on both sides
    if leq_H(u, v):
        assert leq_H(concat(u, w), concat(v, w))
        assert leq_H(concat(w, u), concat(w, v))


def test_prime_words_are_letter_classes():
    for al in (classical(2), idem_top()):
        report = hword_primes_check(al, maxlen=3)
        assert report.passed
        assert report.check("primes-are-letter-classes").stats["prime_classes"] == len(
            {tuple(sorted(np.flatnonzero(al.order.leq[:, i] & al.order.leq[i, :]))) for i in range(al.order.n)}
        )


def idem_singleton():
    q = validate(["a"], [], close=True)
    return AtomAlphabet(q, (0,))


def test_bounded_word_monoid_satisfies_axioms():
    # over classical alphabets longer never embeds in shorter, so overflow is
    # monotone; over all-idempotent alphabets reduce keeps products bounded
    for al, maxlen, reduce in (
        (classical(1), 4, False),
        (classical(2), 3, False),
        (idem_singleton(), 3, True),
    ):
        m = bounded_word_monoid(al, maxlen, reduce=reduce)
        assert check_axioms(m).passed
    # with an idempotent letter around, t.t embeds in t, so a product can
    # overflow while a pointwise larger pair stays bounded: not monotone
    mixed = bounded_word_monoid(idem_top(), 2, reduce=False)
    assert not check_axioms(mixed).passed


def test_abstract_matching_against_capped_addition():
    report = check_abstractly_higman(capped_addition(4), max_tuple=3)
    assert report.passed
    assert report.checks[0].stats["prime_count"] == 1


def test_upward_closed_subsets(chain2):
    subs = upward_closed_subsets(chain2)
    assert subs == [frozenset(), frozenset({1}), frozenset({0, 1})]


def test_brute_force_cap():
    al = classical(2)
    long = HWord(al, [0] * 9)
    with pytest.raises(Exception):
        leq_H_bruteforce(long, long, max_len=8)
