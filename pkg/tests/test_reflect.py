import pytest

from idealforge import hierarchy
from idealforge.hierarchy import ur_elem
from idealforge.reflect import build_reflection, verify_reflection


def _by_serial(table, serial):
    for atom in table.system.atoms:
        if atom.serial == serial:
            return table.image(atom)
    raise KeyError(serial)


def test_frozen_images_over_two_incomparable_points(a2):
    table = build_reflection(a2, 1)
    assert table.star == 2
    assert table.star_qo.elements == ("a", "b", "⋆")
    assert _by_serial(table, "a") is ur_elem(0)
    assert _by_serial(table, "b") is ur_elem(1)
    assert _by_serial(table, "*{a}").serial == "{u0,u2}"
    assert _by_serial(table, "*{b}").serial == "{u1,u2}"
    assert _by_serial(table, "*{a,b}").serial == "{u0,u1,u2}"


def test_translation_verifies_on_small_carriers(
    singleton, chain2, a2, chain3, antichain3, two_cycle
):
    for q in (singleton, chain2, a2, chain3, antichain3, two_cycle):
        for alpha in (1, 2):
            table = build_reflection(q, alpha)
            assert all(v is not None for v in table.entries.values())
            report = verify_reflection(table)
            assert report.passed, (q.elements, alpha, report.to_json())
            n = len(table.system.atoms)
            assert report.check("order-preserving").stats["pairs"] == n * n


def test_images_encode_level_and_starness(a2):
    table = build_reflection(a2, 2)
    assert table.alpha == 2
    star_ur = ur_elem(table.star)
    for atom in table.system.atoms:
        fa = table.image(atom)
        assert fa.rank == atom.level - 1
        assert fa.rank < table.alpha
        if atom.is_idem:
            assert star_ur in fa.children
        else:
            assert fa.ur == atom.base_class


def test_corrupted_comparison_rule_is_reported(a2, monkeypatch):
    table = build_reflection(a2, 1)
    assert verify_reflection(table).passed

    honest = hierarchy.compare_atoms

    def skewed(x, y):
        if x.is_idem and not y.is_idem:
            return True
        return honest(x, y)

    # swapped in after the build: the letter side now claims idempotent
    # letters sit below plain ones, the set side disagrees
    monkeypatch.setattr(hierarchy, "compare_atoms", skewed)
    report = verify_reflection(table)
    assert not report.passed
    bad = report.check("order-preserving")
    assert not bad.passed
    assert bad.counterexample["x"].startswith("*")

    # swapped in before the build: the alphabet constructor refuses the
    # resulting letter order outright
    with pytest.raises(ValueError):
        build_reflection(a2, 1)
