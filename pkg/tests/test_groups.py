import itertools
import math
import random

import pytest

from prodquot.errors import GroupSpecError, MalformedTypeError, SizeCapError
from prodquot.groups import (
    automorphisms,
    conjugacy_closure,
    cyclic_subgroup,
    element_order,
    is_generating,
    make_abelian,
    make_permutation_group,
    mask_of,
    members,
    parse_element,
    parse_group_spec,
    perm_from_cycles,
)
from prodquot.classify import abelian_types


def assert_group_axioms(G, check_assoc=True):
    n = G.order
    rng = range(n)
    for a in rng:
        assert G.table[0][a] == a and G.table[a][0] == a
        assert sorted(G.table[a]) == list(rng)
        assert sorted(G.table[b][a] for b in rng) == list(rng)
        assert G.table[a][G.inverses[a]] == 0
        assert n % G.orders[a] == 0
    if check_assoc:
        t = G.table
        for a in rng:
            ta = t[a]
            for b in rng:
                tab = ta[b]
                tb = t[b]
                for c in rng:
                    assert t[tab][c] == ta[tb[c]]


@pytest.mark.parametrize("factors", abelian_types(60))
def test_abelian_tables_are_groups(factors):
    G = make_abelian(factors)
    assert G.order == math.prod(factors)
    assert_group_axioms(G)


@pytest.mark.parametrize(
    "spec, order",
    [
        ("perm:5:(1 2 3),(3 4 5)", 60),
        ("perm:4:(1 2),(1 2 3 4)", 24),
        ("perm:6:(1 2 3 4),(2 4),(5 6)", 16),
    ],
)
def test_permutation_tables_are_groups(spec, order):
    G = parse_group_spec(spec)
    assert G.order == order
    assert_group_axioms(G)


def test_make_abelian_examples():
    assert make_abelian([]).order == 1
    G = make_abelian([5, 5])
    assert G.order == 25
    assert sum(1 for x in range(25) if G.orders[x] == 5) == 24
    H = make_abelian([2, 6])
    assert H.order == 12 and H.exponent() == 6


@pytest.mark.parametrize("bad", [[1], [0, 2], [2, 3], [4, 2]])
def test_make_abelian_rejects_malformed_types(bad):
    with pytest.raises(MalformedTypeError):
        make_abelian(bad)


def test_make_permutation_group_examples():
    S3 = make_permutation_group([(1, 2, 0), (1, 0, 2)])
    assert S3.order == 6
    A5 = make_permutation_group([perm_from_cycles(5, [[1, 2, 3]]), perm_from_cycles(5, [[3, 4, 5]])])
    assert A5.order == 60
    assert make_permutation_group([]).order == 1


def test_permutation_group_cap():
    with pytest.raises(SizeCapError):
        parse_group_spec("perm:5:(1 2 3),(3 4 5)", cap=30)


def test_permutation_ordering_is_deterministic():
    a = parse_group_spec("perm:5:(1 2 3),(3 4 5)")
    b = parse_group_spec("perm:5:(1 2 3),(3 4 5)")
    assert a.labels == b.labels and a.table == b.table
    assert a.labels[0] == "()"


@pytest.mark.parametrize("spec", ["xy:3", "perm:x:(1 2)", "perm:3:(1 2", "ab:2,a"])
def test_bad_group_specs(spec):
    with pytest.raises(GroupSpecError):
        parse_group_spec(spec)


def test_element_orders(a5):
    G = make_abelian([2, 6])
    assert element_order(G, 0) == 1
    assert element_order(G, parse_element(G, "(1,2)")) == 6
    assert element_order(a5, parse_element(a5, "(1 2)(3 4)")) == 2


def test_element_order_is_conjugation_invariant(a5):
    for x in range(a5.order):
        for g in range(a5.order):
            y = a5.mul(a5.mul(g, x), a5.inv(g))
            assert a5.orders[y] == a5.orders[x]


def test_cyclic_subgroups(a5, z5sq):
    assert cyclic_subgroup(z5sq, 0) == 1
    e1 = parse_element(z5sq, "(1,0)")
    assert len(members(cyclic_subgroup(z5sq, e1))) == 5
    c = parse_element(a5, "(1 2 3 4 5)")
    assert len(members(cyclic_subgroup(a5, c))) == 5


def conjugates_brute_force(G, x):
    return {G.mul(G.mul(g, x), G.inv(g)) for g in range(G.order)}


def test_conjugacy_closure_of_three_cycle(a5):
    x = parse_element(a5, "(1 2 3)")
    closure = members(conjugacy_closure(a5, mask_of([x])))
    assert set(closure) == conjugates_brute_force(a5, x)
    assert len(closure) == 20
    assert all(a5.orders[y] == 3 for y in closure)
    assert conjugacy_closure(a5, 1) == 1


def test_conjugacy_closure_trivial_in_abelian(z5sq):
    rng = random.Random(3)
    for _ in range(20):
        m = mask_of(rng.sample(range(25), 4))
        assert conjugacy_closure(z5sq, m) == m


def test_conjugacy_closure_idempotent_and_monotone(a5):
    rng = random.Random(5)
    for _ in range(30):
        small = mask_of(rng.sample(range(60), 2))
        big = small | mask_of(rng.sample(range(60), 3))
        c = conjugacy_closure(a5, small)
        assert conjugacy_closure(a5, c) == c
        assert c & ~conjugacy_closure(a5, big) == 0


def test_is_generating(a5):
    G = make_abelian([2, 2, 2])
    basis = [parse_element(G, v) for v in ("(1,0,0)", "(0,1,0)", "(0,0,1)")]
    assert is_generating(G, mask_of(basis))
    assert not is_generating(a5, mask_of([parse_element(a5, "(1 2 3 4 5)")]))
    ex1 = [parse_element(a5, c) for c in ("(1 2 3)", "(3 4 5)", "(4 3 2)", "(2 1 5)")]
    assert is_generating(a5, mask_of(ex1))


def brute_force_automorphism_count(G):
    """Count bijections fixing 0 that respect the table; feasible for order 8."""
    n = G.order
    count = 0
    for perm in itertools.permutations(range(1, n)):
        phi = (0,) + perm
        if all(phi[G.table[a][b]] == G.table[phi[a]][phi[b]] for a in range(n) for b in range(n)):
            count += 1
    return count


def assert_is_automorphism(G, phi, pairs=None):
    assert sorted(phi) == list(range(G.order))
    pairs = pairs or itertools.product(range(G.order), repeat=2)
    for a, b in pairs:
        assert phi[G.table[a][b]] == G.table[phi[a]][phi[b]]


def test_automorphism_counts():
    assert len(automorphisms(make_abelian([]))) == 1
    G8 = make_abelian([2, 2, 2])
    auts = automorphisms(G8)
    assert len(auts) == brute_force_automorphism_count(G8) == 168
    assert len(automorphisms(make_abelian([5, 5]))) == 480
    assert len(automorphisms(make_abelian([2, 4]))) == brute_force_automorphism_count(make_abelian([2, 4]))


@pytest.mark.parametrize("factors", [(2, 2, 2), (3, 3), (5, 5), (2, 4), (4, 4), (2, 2, 4)])
def test_automorphisms_are_bijective_homomorphisms(factors):
    G = make_abelian(factors)
    auts = automorphisms(G)
    assert auts == sorted(auts)
    assert len(set(auts)) == len(auts)
    for phi in auts:
        assert_is_automorphism(G, phi)


def test_a5_automorphisms_sampled(a5):
    auts = automorphisms(a5)
    assert len(auts) == 120
    rng = random.Random(11)
    for phi in rng.sample(auts, 10):
        pairs = [(rng.randrange(60), rng.randrange(60)) for _ in range(300)]
        assert_is_automorphism(a5, phi, pairs)


def test_automorphism_cap():
    with pytest.raises(SizeCapError):
        automorphisms(make_abelian([2, 2, 2, 2, 2, 2, 2]))
