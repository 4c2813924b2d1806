import random
from math import factorial

import pytest

from relkit.budget import BudgetExceeded
from relkit.group import (
    PermGroup,
    contains,
    elements,
    extend_fixed,
    naive_closure,
    random_order,
    right_coset_reps,
    setwise_stabilizer,
    symmetric_group,
    trivial_group,
)
from relkit.perm import Permutation, parse_cycles

from conftest import random_perm


def G(degree, *cycles):
    return PermGroup([parse_cycles(c, degree) for c in cycles], degree=degree)


M11 = G(11, "(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)")
M24 = G(24, "(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23)",
        "(3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)",
        "(1,24)(2,23)(3,12)(4,16)(5,18)(6,10)(7,20)(8,14)(9,21)(11,17)(13,22)(15,19)")


@pytest.mark.parametrize("group, order", [
    (M11, 7920),
    (M24, 244823040),
    (symmetric_group(9), factorial(9)),
    (G(7, "(1,4)(6,7)", "(1,3,2)(4,7,5)"), 168),
    (trivial_group(5), 1),
])
def test_known_orders(group, order):
    assert group.order == order


def test_random_groups_match_naive_closure(rng):
    for _ in range(40):
        n = rng.randint(2, 7)
        gens = [random_perm(n, rng) for _ in range(rng.randint(1, 3))]
        H = PermGroup(gens)
        elems = naive_closure(gens)
        assert H.order == len(elems)
        assert {g.images for g in elements(H)} == elems
        assert random_order(gens, seed=rng.randrange(10**6)) == H.order


def test_membership(rng):
    A5 = G(5, "(1,2,3)", "(1,2,3,4,5)")
    assert A5.order == 60
    for _ in range(50):
        g = random_perm(5, rng)
        assert contains(A5, g) == g.is_even()


def test_degree_mismatch():
    with pytest.raises(ValueError):
        PermGroup([parse_cycles("(1,2)", 3), parse_cycles("(1,2)", 4)])
    with pytest.raises(ValueError):
        contains(M11, parse_cycles("(1,2)", 4))


def test_orbits_and_transitivity():
    H = G(6, "(1,2,3)", "(4,5)")
    assert H.orbits() == [[0, 1, 2], [3, 4], [5]]
    assert not H.is_transitive()
    assert M11.is_transitive()


def test_extend_fixed():
    H = extend_fixed(M11, 2)
    assert H.degree == 13 and H.order == M11.order
    assert H.orbits()[-2:] == [[11], [12]]


def test_enumeration_budget():
    with pytest.raises(BudgetExceeded) as exc:
        list(elements(M24, budget=1000))
    assert "--enum-budget" in str(exc.value)


def test_right_coset_reps_partition_the_group():
    S4 = symmetric_group(4)
    V4 = G(4, "(1,2)(3,4)", "(1,3)(2,4)")
    reps = right_coset_reps(V4, S4)
    assert len(reps) == 6
    assert reps[0].is_identity()
    cosets = [frozenset((h * r).images for h in elements(V4)) for r in reps]
    assert len(set(cosets)) == 6
    assert frozenset().union(*cosets) == {g.images for g in elements(S4)}


def test_right_coset_reps_large_index():
    P = M11
    H = G(11, "(1,2,3,4,5,6,7,8,9,10,11)")
    reps = right_coset_reps(H, P)
    assert len(reps) == 720
    with pytest.raises(BudgetExceeded):
        right_coset_reps(H, P, budget=100)
    with pytest.raises(ValueError):
        right_coset_reps(P, H)


def test_setwise_stabilizer_methods_agree(rng):
    for _ in range(30):
        n = rng.randint(3, 8)
        H = PermGroup([random_perm(n, rng) for _ in range(2)])
        x = rng.randrange(1 << n)
        a = setwise_stabilizer(H, x)
        b = setwise_stabilizer(H, x, method="brute")
        assert a == b
        assert all(g.image_mask(x) == x for g in a.generators)


def test_subgroup_and_equality():
    A5 = G(5, "(1,2,3)", "(1,2,3,4,5)")
    assert A5.is_subgroup_of(symmetric_group(5))
    assert A5 == G(5, "(1,2,3)", "(3,4,5)")
    assert A5 != symmetric_group(5)
