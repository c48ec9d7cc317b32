"""Group construction, subgroup lattice operations, quotients."""

import random

import pytest

from shaomega.errors import (
    ComplexityLimitExceeded,
    ElementOutOfRange,
    NonAssociativeTable,
    NotNormal,
    ValidationError,
)
from shaomega.groups import (
    abelian_group_structure,
    all_cyclic_subgroups,
    build_group,
    conjugate_subgroup,
    core,
    coset_action,
    cyclic_product_group,
    cyclic_subgroup,
    cyclic_subgroup_reps,
    direct_product,
    is_normal,
    normal_closure,
    quotient_group,
    subgroup_as_group,
    subgroup_closure,
    symmetric_group,
    table_group,
    trivial_subgroup,
    full_subgroup,
)
from shaomega.intlinalg import AbelianStructure


def brute_force_cyclic_classes(group):
    """Independent enumeration of conjugacy classes of cyclic subgroups."""
    subs = set()
    for g in group.elements():
        elems = {group.identity}
        x = g
        while x != group.identity:
            elems.add(x)
            x = group.mul(x, g)
        subs.add(tuple(sorted(elems)))
    classes = []
    remaining = set(subs)
    while remaining:
        s = remaining.pop()
        orbit = {
            tuple(sorted(group.conjugate(g, a) for a in s)) for g in group.elements()
        }
        remaining -= orbit
        classes.append(orbit)
    return classes


def test_klein_four():
    g = build_group([2, 2])
    assert g.order == 4
    assert all(g.element_order(a) in (1, 2) for a in g.elements())


def test_z3_squared():
    g = build_group([3, 3])
    assert g.order == 9
    assert g.exponent() == 3


def test_s3_cyclic_classes():
    g = symmetric_group(3)
    assert g.order == 6
    classes = brute_force_cyclic_classes(g)
    nontrivial = [c for c in classes if len(next(iter(c))) > 1]
    by_size = sorted(len(c) for c in nontrivial)
    # three conjugate order-2 subgroups, one order-3
    assert by_size == [1, 3]
    reps = cyclic_subgroup_reps(g)
    assert [r.order for r in reps] == [1, 2, 3]


def test_cyclic_reps_match_brute_force():
    for spec in ([2, 2], [4], [2, 4], ("S", 3), ("S", 4), [3, 3]):
        g = build_group(spec)
        reps = cyclic_subgroup_reps(g)
        classes = brute_force_cyclic_classes(g)
        assert len(reps) == len(classes)
        # the conjugates of the representatives cover every cyclic subgroup
        covered = set()
        for r in reps:
            for x in g.elements():
                covered.add(conjugate_subgroup(g, r, x).elements)
        assert covered == {s for c in classes for s in c}


def test_z4_reps():
    g = build_group([4])
    assert [r.order for r in cyclic_subgroup_reps(g)] == [1, 2, 4]


def test_subgroup_closure():
    g = symmetric_group(3)
    assert subgroup_closure(g, []).order == 1
    assert subgroup_closure(g, list(g.elements())).order == 6
    transposition = next(a for a in g.elements() if g.element_order(a) == 2)
    assert subgroup_closure(g, [transposition]).order == 2
    with pytest.raises(ElementOutOfRange):
        subgroup_closure(g, [17])


def test_closure_lagrange():
    rng = random.Random(3)
    for spec in ([2, 2, 2], [6], ("S", 4), [2, 4]):
        g = build_group(spec)
        for _ in range(10):
            gens = [rng.randrange(g.order) for _ in range(rng.randrange(3))]
            h = subgroup_closure(g, gens)
            assert g.order % h.order == 0


def test_normal_closure_and_core():
    g = symmetric_group(3)
    t = next(a for a in g.elements() if g.element_order(a) == 2)
    h = subgroup_closure(g, [t])
    assert normal_closure(g, h).order == 6
    assert core(g, h).order == 1
    a3 = subgroup_closure(g, [next(a for a in g.elements() if g.element_order(a) == 3)])
    assert is_normal(g, a3)
    assert normal_closure(g, a3).elements == a3.elements
    assert core(g, a3).elements == a3.elements
    # abelian: every subgroup is its own closure and core
    z8 = build_group([2, 2, 2])
    h = subgroup_closure(z8, [1, 2])
    assert normal_closure(z8, h).elements == h.elements
    assert core(z8, h).elements == h.elements


def test_quotient_group():
    g = build_group([4, 2])
    # kill the order-2 subgroup inside Z/4: quotient is Z/2 x Z/2
    two = cyclic_subgroup(g, 2 * 2)  # element (2,0)
    q = quotient_group(g, two)
    assert q.order == 4
    assert abelian_group_structure(q) == AbelianStructure((2, 2))

    s3 = symmetric_group(3)
    a3 = subgroup_closure(s3, [next(a for a in s3.elements() if s3.element_order(a) == 3)])
    q = quotient_group(s3, a3)
    assert q.order == 2

    assert quotient_group(g, trivial_subgroup(g)).order == g.order

    t = next(a for a in s3.elements() if s3.element_order(a) == 2)
    with pytest.raises(NotNormal):
        quotient_group(s3, subgroup_closure(s3, [t]))


def test_abelian_structure_of_group():
    assert abelian_group_structure(build_group([4, 2])) == AbelianStructure((2, 4))
    assert abelian_group_structure(build_group([2, 3])) == AbelianStructure((6,))
    assert abelian_group_structure(build_group([1])) == AbelianStructure(())


def test_coset_action_is_permutation_homomorphism():
    g = symmetric_group(3)
    t = next(a for a in g.elements() if g.element_order(a) == 2)
    h = subgroup_closure(g, [t])
    act = coset_action(g, h)
    assert act.degree == 3
    for x in g.elements():
        image = [act.act(x, c) for c in range(act.degree)]
        assert sorted(image) == list(range(act.degree))
    for x in g.elements():
        for y in g.elements():
            xy = g.mul(x, y)
            for c in range(act.degree):
                assert act.act(xy, c) == act.act(x, act.act(y, c))


def test_table_group_validation():
    # broken associativity: random garbage latin square
    bad = [[0, 1, 2], [1, 2, 0], [2, 1, 0]]
    with pytest.raises((NonAssociativeTable, ValidationError)):
        table_group(bad)
    z2 = table_group([[0, 1], [1, 0]])
    assert z2.identity == 0


def test_associativity_spot_check_order_le_64():
    for spec in ([2, 2, 2, 2], [8, 4], ("S", 4), [3, 3, 3]):
        g = build_group(spec)
        if g.order <= 64:
            g._check_associative()


def test_group_order_cap():
    with pytest.raises(ComplexityLimitExceeded):
        cyclic_product_group([11, 11])


def test_direct_product_and_subgroup_as_group():
    s3 = symmetric_group(3)
    z2 = build_group([2])
    g = direct_product(s3, z2)
    assert g.order == 12
    assert not g.is_abelian()
    h = subgroup_closure(g, [1])  # (e, 1)
    sg, elems = subgroup_as_group(g, h)
    assert sg.order == 2
    assert elems[0] == g.identity
