import itertools

import numpy as np
import pytest

from idealforge.errors import (
    CombinatorialBlowupError,
    EmptyCarrierError,
    LevelCapExceededError,
)
from idealforge.fixtures import capped_addition, flat, idem_pair
from idealforge.hierarchy import (
    Atom,
    AtomSystem,
    build_atoms,
    build_ihat_level,
    build_level,
    compare_atoms,
    hat_mult,
    hset,
    hset_mult,
    idem_atom,
    is_hereditarily_directed,
    lesssim_star,
    non_idem_atom,
    rank,
    sim_star,
    ur_elem,
)
from idealforge.qo import FiniteQO, equiv_classes, validate


def test_interning_gives_identity():
    assert ur_elem(3) is ur_elem(3)
    a, b = ur_elem(0), ur_elem(1)
    assert hset([a, b]) is hset([b, a, b])
    nested = hset([hset([a]), b])
    assert nested is hset([b, hset([a])])
    assert rank(a) == -1
    assert rank(hset([a, b])) == 0
    assert rank(nested) == 1
    assert nested.serial == "{u1,{u0}}"


def test_construction_guards():
    with pytest.raises(ValueError):
        hset([])
    with pytest.raises(ValueError):
        ur_elem(-1)


def test_lesssim_frozen_cases(a2):
    u0, u1 = ur_elem(0), ur_elem(1)
    pair = hset([u0, u1])
    assert not lesssim_star(u0, u1, a2)
    assert lesssim_star(u0, pair, a2)
    # a set sits below a point only when every member does
    assert not lesssim_star(pair, u0, a2)
    # {{a,b}} and {{a},{b}} are inequivalent: the doubleton member has no
    # single-member bound on the right
    left = hset([pair])
    right = hset([hset([u0]), hset([u1])])
    assert lesssim_star(right, left, a2)
    assert not lesssim_star(left, right, a2)
    assert not sim_star(left, right, a2)


def test_lesssim_is_a_quasi_order(a2, chain2):
    for q in (a2, chain2):
        urs = [ur_elem(i) for i in range(q.n)]
        pool = list(urs)
        for r in range(1, len(urs) + 1):
            pool.extend(hset(c) for c in itertools.combinations(urs, r))
        pool.append(hset([hset([u]) for u in urs]))
        pool.append(hset([pool[-1], urs[0]]))
        for x in pool:
            assert lesssim_star(x, x, q)
        for x, y, z in itertools.product(pool, repeat=3):
            if lesssim_star(x, y, q) and lesssim_star(y, z, q):
                assert lesssim_star(x, z, q)
        # comparisons reduce to containment of induced lower cones
        for x, y in itertools.product(pool, repeat=2):
            cone_x = [z for z in pool if lesssim_star(z, x, q)]
            if lesssim_star(x, y, q):
                assert all(lesssim_star(z, y, q) for z in cone_x)


def test_hset_mult_laws_exhaustive():
    # every stage member of the small fixtures, all triples and pairs
    for m in (capped_addition(3), flat(2), idem_pair()):
        lev = build_level(m, 2, "vstar")
        members = lev.members
        q = m.order
        for x, y in itertools.product(members, repeat=2):
            xy = hset_mult(x, y, m)
            assert lesssim_star(x, xy, q)
            assert lesssim_star(y, xy, q)
        for x, y, z in itertools.product(members, repeat=3):
            lhs = hset_mult(hset_mult(x, y, m), z, m)
            rhs = hset_mult(x, hset_mult(y, z, m), m)
            assert sim_star(lhs, rhs, q)
        for x, xs, y, ys in itertools.product(members, repeat=4):
            if lesssim_star(x, xs, q) and lesssim_star(y, ys, q):
                assert lesssim_star(
                    hset_mult(x, y, m), hset_mult(xs, ys, m), q
                )


def test_unit_is_neutral_up_to_equivalence():
    m = flat(2)
    e = ur_elem(m.unit)
    lev = build_level(m, 2, "vstar")
    for x in lev.members:
        assert sim_star(hset_mult(x, e, m), x, m.order)
        assert sim_star(hset_mult(e, x, m), x, m.order)


def test_directed_members_stay_directed_under_mult():
    for m in (capped_addition(3), flat(2), idem_pair()):
        lev = build_level(m, 2, "istar")
        for x, y in itertools.product(lev.members, repeat=2):
            assert is_hereditarily_directed(hset_mult(x, y, m), m.order)


def test_frozen_cardinalities(a2, singleton, chain3):
    v = build_level(a2, 3, "vstar")
    assert [s.cardinality for s in v.chain()] == [2, 3, 4, 5]
    assert [m.serial for m in v.previous.members] == [
        "u0",
        "u1",
        "{u0,u1,{u0,u1}}",
        "{u0,u1}",
    ]
    for kind in ("istar", "ihat"):
        lev = build_level(a2, 3, kind)
        assert [s.cardinality for s in lev.chain()] == [2, 2, 2, 2]
    # every directed set over a finite carrier has a top, so the directed
    # stages never outgrow the carrier classes
    assert all(
        s.cardinality == 1 for s in build_level(singleton, 3, "istar").chain()
    )
    # over a chain every nonempty subset is directed
    iv = build_level(chain3, 2, "istar")
    vv = build_level(chain3, 2, "vstar")
    for si, sv in zip(iv.chain(), vv.chain()):
        assert si.members == sv.members


def test_flat_fixture_vstar_growth():
    assert [s.cardinality for s in build_level(flat(2), 2, "vstar").chain()] == [4, 5, 6]


def test_build_ihat_level_wrapper(a2):
    lev = build_ihat_level(a2, 1)
    assert lev.kind == "ihat"
    assert lev.cardinality == 2


def test_istar_members_have_principal_twins(a2, singleton, chain2, chain3, antichain3, two_cycle):
    for q in (singleton, chain2, a2, chain3, antichain3, two_cycle):
        istar = build_level(q, 2, "istar")
        ihat = build_level(q, 2, "ihat")
        for x in istar.members:
            assert any(sim_star(x, y, q) for y in ihat.members)


def test_hat_mult_finds_lowest_stage_or_nothing():
    m = capped_addition(2)
    ist = build_level(m, 1, "istar")
    got = hat_mult(ur_elem(1), ur_elem(1), ist, m)
    assert got is ur_elem(2)
    f = flat(2)
    pair = hset([ur_elem(1), ur_elem(2)])
    # the undirected pair has no class among the urelements
    assert hat_mult(pair, ur_elem(0), build_level(f, 0, "istar"), f) is None
    got = hat_mult(pair, ur_elem(0), build_level(f, 1, "vstar"), f)
    assert got is not None and got.serial == "{u0,u1,u2}"


def test_level_guards(a2, antichain3):
    with pytest.raises(LevelCapExceededError):
        build_level(a2, 4)
    with pytest.raises(EmptyCarrierError):
        build_level(FiniteQO((), np.zeros((0, 0), dtype=bool)), 1)
    with pytest.raises(ValueError):
        build_level(a2, 1, kind="all")
    with pytest.raises(CombinatorialBlowupError):
        build_level(antichain3, 3, "vstar", max_members=40)


def test_max_members_env_fallback(a2, antichain3, monkeypatch):
    monkeypatch.setenv("IDEALFORGE_MAX_MEMBERS", "40")
    with pytest.raises(CombinatorialBlowupError):
        build_level(antichain3, 3, "vstar")
    # an explicit argument wins over the environment
    build_level(a2, 2, "vstar", max_members=1000)


def test_atom_interning_and_validation(a2, chain2):
    p = non_idem_atom(a2, 0)
    assert p is non_idem_atom(a2, 0)
    assert p.level == 0 and not p.is_idem
    star = idem_atom(a2, [p])
    assert star is idem_atom(a2, [p])
    assert star.level == 1 and star.is_idem
    with pytest.raises(ValueError):
        idem_atom(a2, [])
    with pytest.raises(ValueError):
        idem_atom(chain2, [p])
    with pytest.raises(ValueError):
        compare_atoms(p, non_idem_atom(chain2, 0))


def test_atom_order_frozen(a2, singleton):
    sys1 = build_atoms(a2, 1)
    assert [a.serial for a in sys1.atoms] == ["a", "b", "*{a,b}", "*{a}", "*{b}"]
    assert sys1.level_counts == (2, 5)
    o = sys1.alphabet.order
    leq = lambda x, y: bool(o.leq[o.index(x), o.index(y)])
    assert leq("a", "*{a}")
    assert leq("*{a}", "*{a,b}")
    assert not leq("*{a,b}", "*{a}")
    assert not leq("*{a}", "a")
    assert not leq("a", "*{b}")
    assert sorted(sys1.alphabet.idem) == [2, 3, 4]

    ssys = build_atoms(singleton, 1)
    assert [a.serial for a in ssys.atoms] == ["a", "*{a}"]
    assert ssys.alphabet.order.leq.tolist() == [[True, True], [False, True]]


def test_atom_counts_grow_as_downsets(a2, antichain3):
    assert build_atoms(a2, 2).level_counts == (2, 5, 11)
    assert build_atoms(antichain3, 1).level_counts == (3, 10)
    assert build_atoms(antichain3, 2, max_members=100_000).level_counts == (3, 10, 43)


def test_atom_order_is_antisymmetric(a2):
    atoms = build_atoms(a2, 2).atoms
    for x, y in itertools.product(atoms, repeat=2):
        if compare_atoms(x, y) and compare_atoms(y, x):
            assert x is y


def test_plain_atoms_track_principal_classes(a2, chain2, chain3, antichain3, two_cycle):
    # one plain letter per carrier class, which is exactly the directed
    # downward-closed picture at any level
    for q in (a2, chain2, chain3, antichain3, two_cycle):
        for alpha in (1, 2):
            system = build_atoms(q, alpha, max_members=100_000)
            plain = [a for a in system.atoms if not a.is_idem]
            assert len(plain) == len(equiv_classes(q))
            assert len(plain) == build_level(q, alpha, "ihat").cardinality


def test_atom_system_helpers(a2):
    system = build_atoms(a2, 1)
    w = system.word([0, system.atoms[2]])
    assert w.labels == ("a", "*{a,b}")
    assert system.atom_index(system.atoms[2]) == 2


def test_atom_guards(a2):
    with pytest.raises(LevelCapExceededError):
        build_atoms(a2, 4)
    with pytest.raises(EmptyCarrierError):
        build_atoms(FiniteQO((), np.zeros((0, 0), dtype=bool)), 1)
    with pytest.raises(CombinatorialBlowupError):
        build_atoms(a2, 2, max_members=8)
