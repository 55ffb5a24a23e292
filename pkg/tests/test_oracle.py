import itertools
import random

import pytest

from idealforge.downsets import enumerate_ideals
from idealforge.errors import ScaleExceededError
from idealforge.fixtures import capped_addition
from idealforge.hierarchy import build_atoms
from idealforge.higman import AtomAlphabet, HWord, leq_H
from idealforge.monoid import check_axioms, check_plus_property
from idealforge.oracle import (
    DenotationContext,
    _factor_list,
    _product_contained,
    _single_letters,
    all_sequences,
    check_containment_agreement,
    check_two_forms,
    check_xy_wz,
    denote_member,
    higman_embed,
    seq_label,
    truncated_seq_monoid,
    truncated_seq_qo,
)


def test_embedding_matches_word_order_on_plain_alphabets(a2, chain2):
    # two routes to the same relation: greedy subsequence matching on raw
    # index tuples, and the word-order procedure over a no-idempotent
    # alphabet wrapping the same carrier
    for p in (a2, chain2):
        alphabet = AtomAlphabet(p, ())
        seqs = all_sequences(p, 3)
        for s, t in itertools.product(seqs, repeat=2):
            assert higman_embed(s, t, p) == leq_H(
                HWord(alphabet, s), HWord(alphabet, t)
            )


def test_truncated_universe_shape(a2):
    t = truncated_seq_qo(a2, 3)
    assert len(t.seqs) == 1 + 2 + 4 + 8
    assert t.qo.n == 15
    assert t.seqs[t.index(())] == ()
    assert seq_label(a2, ()) == "ε"
    assert seq_label(a2, (0, 1)) == "a.b"
    leq = t.qo.leq
    assert leq[t.index((0,)), t.index((1, 0))]
    assert not leq[t.index((0, 0)), t.index((0,))]
    with pytest.raises(ScaleExceededError):
        truncated_seq_qo(a2, 3, max_universe=10)


def test_truncated_ideals_have_tops(chain2):
    t = truncated_seq_qo(chain2, 2)
    for ideal in enumerate_ideals(t.qo):
        members = sorted(ideal.members)
        assert any(
            all(t.qo.leq[x, m] for x in members) for m in members
        )


def test_truncated_monoid_keeps_the_laws(a2, singleton):
    _, m = truncated_seq_monoid(a2, 2)
    assert check_axioms(m).passed
    # overflow absorbs both factors, so splitting survives truncation
    _, sm = truncated_seq_monoid(singleton, 3)
    assert check_axioms(sm).passed
    assert check_plus_property(sm).passed


def test_denote_member_frozen_cases(a2):
    system = build_atoms(a2, 1)
    a, b, star_ab, star_a = (
        system.atoms[0],
        system.atoms[1],
        system.atoms[2],
        system.atoms[3],
    )
    w_a = system.word([a])
    assert denote_member(system, w_a, ())
    assert denote_member(system, w_a, (0,))
    assert not denote_member(system, w_a, (1,))
    assert not denote_member(system, w_a, (0, 0))

    w_star = system.word([star_ab])
    assert denote_member(system, w_star, (0, 1, 0))
    w_star_a = system.word([star_a])
    assert denote_member(system, w_star_a, (0, 0, 0))
    assert not denote_member(system, w_star_a, (0, 1))

    w_mixed = system.word([a, star_a])
    assert denote_member(system, w_mixed, ("a", "a", "a"))
    assert not denote_member(system, w_mixed, ("b",))
    # the plain block may be empty
    w_mixed2 = system.word([a, star_ab])
    assert denote_member(system, w_mixed2, ("b", "b"))


def test_block_recursion_agrees_with_mask_route(a2):
    system = build_atoms(a2, 1)
    ctx = DenotationContext(a2, 3)
    words = [()] + [(i,) for i in range(5)] + list(itertools.product(range(5), repeat=2))
    for t in words:
        letters = tuple(system.atoms[i] for i in t)
        mask = ctx.word_mask(letters)
        w = system.word(t)
        for k, s in enumerate(ctx.seqs):
            assert denote_member(system, w, s) == bool(mask >> k & 1)


def test_denotations_are_downward_closed(a2):
    system = build_atoms(a2, 1)
    ctx = DenotationContext(a2, 3)
    t = truncated_seq_qo(a2, 3)
    rng = random.Random(7)
    words = [tuple(rng.randrange(5) for _ in range(rng.randrange(3))) for _ in range(30)]
    for word in words:
        mask = ctx.word_mask(tuple(system.atoms[i] for i in word))
        for j in range(t.qo.n):
            if not mask >> j & 1:
                continue
            for i in range(t.qo.n):
                if t.qo.leq[i, j]:
                    assert mask >> i & 1


def test_two_forms_census(a2, singleton):
    report = check_two_forms(a2, maxlen=3)
    assert report.passed
    stats = report.check("prime-ideal-shapes").stats
    assert stats["prime_classes"] == 5
    assert stats["star_forms"] == 3
    assert stats["down_forms"] == 2
    small = check_two_forms(singleton, maxlen=3)
    assert small.passed
    sstats = small.check("prime-ideal-shapes").stats
    assert (sstats["star_forms"], sstats["down_forms"]) == (1, 1)
    with pytest.raises(ScaleExceededError):
        check_two_forms(a2, maxlen=5)


def test_containment_agreement_small(chain2):
    report = check_containment_agreement(chain2, 1, maxlen=3, max_word_len=2)
    assert report.passed
    stats = report.check("order-implies-containment").stats
    assert stats["unresolved"] == 0
    assert stats["confirmed"] + stats["refuted"] == stats["pairs"]
    with pytest.raises(ScaleExceededError):
        check_containment_agreement(chain2, 3)


def test_factor_lists_normalize(a2):
    system = build_atoms(a2, 1)
    a, star_ab, star_a = system.atoms[0], system.atoms[2], system.atoms[3]
    assert _single_letters(a, a2) == 0b01
    assert _single_letters(star_ab, a2) == 0b11
    assert _factor_list((star_a, star_a), a2) == (("s", 0b01),)
    # a star swallows an adjacent plain letter it covers, on either side
    assert _factor_list((a, star_a), a2) == (("s", 0b01),)
    assert _factor_list((star_a, a), a2) == (("s", 0b01),)
    assert _factor_list((a, star_ab, star_a), a2) == (("s", 0b11),)
    assert _factor_list((a, a), a2) == (("d", 0b01), ("d", 0b01))


def test_exact_product_containment(a2):
    system = build_atoms(a2, 1)
    a, b, star_ab, star_a = (
        system.atoms[0],
        system.atoms[1],
        system.atoms[2],
        system.atoms[3],
    )
    f = lambda *atoms: _factor_list(tuple(atoms), a2)
    assert _product_contained(f(star_a), f(star_ab), 2)
    assert not _product_contained(f(star_ab), f(star_a), 2)
    assert _product_contained(f(a, a), f(star_a), 2)
    # the unbounded star never fits inside a finite product of optionals
    assert not _product_contained(f(star_a), f(a, a), 2)
    assert _product_contained(f(a), f(a, b), 2)
    assert not _product_contained(f(a, b), f(b, a), 2)
    assert _product_contained(f(a, b), f(star_ab), 2)


def test_product_sweep_frozen(singleton):
    report = check_xy_wz(singleton)
    assert report.passed
    stats = report.check("factor-containment-forced").stats
    assert stats["containments"] == 2010
    assert stats["saturated_at_bound"] == 40
    assert report.check("exact-implies-bounded").passed
    with pytest.raises(ScaleExceededError):
        check_xy_wz(singleton, maxlen=5)
