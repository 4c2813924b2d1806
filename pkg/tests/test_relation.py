from math import factorial

import pytest

from relkit.budget import Budget, BudgetExceeded
from relkit.group import PermGroup, elements, symmetric_group
from relkit.perm import parse_cycles
from relkit.relation import (
    Relation,
    colored_automorphism_group,
    defines,
    invariance_group,
    is_defined_by,
    is_defined_in,
    orbit_relation,
)
from relkit.setorbits import to_mask

from conftest import random_perm


def G(degree, *cycles):
    return PermGroup([parse_cycles(c, degree) for c in cycles], degree=degree)


def random_relation(n, rng, edges=None):
    k = rng.randint(1, 8) if edges is None else edges
    return Relation(n, tuple(rng.randrange(1, 1 << n) for _ in range(k)))


def brute_aut(R):
    return sum(1 for g in elements(symmetric_group(R.degree)) if R.is_invariant_under(g))


def test_relation_normalizes_edges():
    R = Relation(4, (0b11, 0b1, 0b11, 0b110))
    assert R.edges == (0b1, 0b11, 0b110)
    assert R.arity == {1, 2}
    assert str(R) == "{[1], [1,2], [2,3]}"
    with pytest.raises(ValueError):
        Relation(3, (0b1000,))


def test_union_and_complement():
    R = Relation(3, (0b1,)).union(Relation(3, (0b10,)))
    assert len(R) == 2
    assert R.complemented().edges == (0b101, 0b110)
    with pytest.raises(ValueError):
        R.union(Relation(4, (1,)))


def test_whole_domain_edge_gives_symmetric_group():
    for n in (3, 7, 12):
        H = invariance_group(Relation(n, ((1 << n) - 1,)))
        assert H.order == factorial(n)


def test_fano_lines():
    lines = [(1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3)]
    R = Relation(7, tuple(to_mask(l, 7) for l in lines))
    assert invariance_group(R).order == 168
    assert invariance_group(R, engine="refine").order == 168


def test_engines_agree_with_brute_force(rng):
    for _ in range(30):
        n = rng.randint(2, 6)
        R = random_relation(n, rng)
        a = invariance_group(R, engine="scan")
        b = invariance_group(R, engine="refine")
        assert a == b
        assert a.order == brute_aut(R)
        assert all(R.is_invariant_under(g) for g in a.generators)


def test_complement_has_same_invariance_group(rng):
    for _ in range(20):
        R = random_relation(rng.randint(3, 9), rng)
        assert invariance_group(R) == invariance_group(R.complemented())


def test_colours_are_respected():
    # path 1-2-3 with the two edges coloured apart: only the identity
    edges = {0b011: 0, 0b110: 1}
    assert colored_automorphism_group(3, edges).order == 1
    assert colored_automorphism_group(3, {0b011: 0, 0b110: 0}).order == 2
    assert colored_automorphism_group(3, edges, engine="refine").order == 1


def test_engine_limits():
    R = Relation(10, (1,))
    with pytest.raises(BudgetExceeded, match="--max-degree-exact"):
        invariance_group(R, engine="scan")
    with pytest.raises(BudgetExceeded, match="--max-degree-exact"):
        invariance_group(Relation(20, (1,)), Budget(max_degree_exact=13))
    with pytest.raises(ValueError):
        invariance_group(R, engine="magic")


def test_search_node_budget():
    R = Relation(12, tuple(1 << i for i in range(12)))
    with pytest.raises(BudgetExceeded, match="--search-nodes"):
        invariance_group(R, Budget(search_nodes=3), engine="refine")


def test_orbit_relation_and_defined_by():
    C5 = G(5, "(1,2,3,4,5)")
    R = orbit_relation(C5, [0b11])
    assert len(R) == 5
    assert not is_defined_by(C5, [0b11])  # the pentagon has D5 symmetry
    D5 = G(5, "(1,2,3,4,5)", "(2,5)(3,4)")
    assert is_defined_by(D5, [0b11])
    with pytest.raises(ValueError):
        orbit_relation(C5, [])


def test_defined_in_agrees_with_coloured_defined_by(rng):
    checked = 0
    while checked < 40:
        n = rng.randint(3, 7)
        ctx = random_relation(n, rng, edges=rng.randint(1, 4))
        P = invariance_group(ctx)
        if P.order < 2 or P.order > 2000:
            continue
        elems = list(elements(P))
        H = PermGroup([rng.choice(elems) for _ in range(rng.randint(0, 2))], degree=n)
        seeds = [rng.randrange(1, 1 << n) for _ in range(rng.randint(1, 2))]
        assert is_defined_in(H, seeds, P) == is_defined_by(H, seeds, ctx)
        checked += 1


def test_defined_in_requires_subgroup():
    with pytest.raises(ValueError):
        is_defined_in(symmetric_group(4), [1], G(4, "(1,2)"))


def test_defines():
    PSL32 = G(7, "(1,4)(6,7)", "(1,3,2)(4,7,5)")
    lines = orbit_relation(PSL32, [next(o for o in range(1, 128)
                                        if bin(o).count("1") == 3
                                        and len(orbit_relation(PSL32, [o])) == 7)])
    assert defines(PSL32, lines)
    assert not defines(G(7, "(1,2,3,4,5,6,7)"), lines)
