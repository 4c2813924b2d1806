import random
from math import comb

import pytest

from relkit import _pykernels, kernels
from relkit.budget import BudgetExceeded
from relkit.group import PermGroup, elements, symmetric_group
from relkit.perm import Permutation, parse_cycles
from relkit.setorbits import (
    all_set_orbits,
    cardinality_counts,
    complement,
    find_regular_set,
    format_set,
    is_regular_set,
    is_set_transitive,
    orbit_table,
    points_of,
    regular_set_sizes,
    subset_orbit,
    to_mask,
)

from conftest import random_perm


def G(degree, *cycles):
    return PermGroup([parse_cycles(c, degree) for c in cycles], degree=degree)


def brute_orbits(H):
    elems = list(elements(H))
    seen, out = set(), []
    for x in range(1 << H.degree):
        if x not in seen:
            orb = {g.image_mask(x) for g in elems}
            seen |= orb
            out.append((min(orb), len(orb)))
    return sorted(out)


def test_mask_helpers():
    m = to_mask([1, 3, 5], 5)
    assert m == 0b10101
    assert points_of(m) == [1, 3, 5]
    assert format_set(m) == "[1,3,5]"
    assert complement(m, 5) == 0b01010
    with pytest.raises(ValueError):
        to_mask([6], 5)


def test_orbits_match_brute_force(rng):
    for _ in range(25):
        n = rng.randint(2, 8)
        H = PermGroup([random_perm(n, rng) for _ in range(rng.randint(1, 2))])
        got = sorted((o.representative, o.size) for o in all_set_orbits(H))
        assert got == brute_orbits(H)
        assert sum(o.size for o in all_set_orbits(H)) == 1 << n


def test_orbit_size_divides_order(rng):
    for _ in range(25):
        n = rng.randint(3, 9)
        H = PermGroup([random_perm(n, rng) for _ in range(2)])
        for o in all_set_orbits(H):
            assert H.order % o.size == 0


def test_complement_symmetry(rng):
    for _ in range(10):
        n = rng.randint(3, 10)
        H = PermGroup([random_perm(n, rng) for _ in range(2)])
        table = orbit_table(all_set_orbits(H))
        for k in range(n + 1):
            assert sorted(table[k]) == sorted(table[n - k])


def test_c5_table():
    C5 = G(5, "(1,2,3,4,5)")
    table = orbit_table(all_set_orbits(C5))
    assert table == {0: [1], 1: [5], 2: [5, 5], 3: [5, 5], 4: [5], 5: [1]}
    assert cardinality_counts(all_set_orbits(C5))[2] == 2


def test_subset_orbit():
    C5 = G(5, "(1,2,3,4,5)")
    assert subset_orbit(C5, 0b11) == sorted([0b11, 0b110, 0b1100, 0b11000, 0b10001])
    with pytest.raises(ValueError):
        subset_orbit(C5, 1 << 5)


def test_scan_budget():
    with pytest.raises(BudgetExceeded, match="--scan-budget"):
        all_set_orbits(symmetric_group(12), scan_budget=1000)


def test_regular_sets_against_brute_force(rng):
    for _ in range(20):
        n = rng.randint(3, 7)
        H = PermGroup([random_perm(n, rng) for _ in range(2)])
        if H.order > 720:
            continue
        elems = list(elements(H))
        expect = set()
        for x in range(1 << n):
            reg = sum(1 for g in elems if g.image_mask(x) == x) == 1
            assert is_regular_set(H, x) == reg
            if reg:
                expect.add(bin(x).count("1"))
        sizes, exhaustive = regular_set_sizes(H)
        assert exhaustive and sizes == expect


def test_regular_set_search_is_a_lower_bound():
    M11 = G(11, "(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)")
    exact, ex = regular_set_sizes(M11)
    assert ex
    found, ex2 = regular_set_sizes(M11, exhaustive_budget=0)
    assert not ex2 and found <= exact
    assert all(comb(11, k) >= M11.order for k in found)


def test_find_regular_set_returns_regular_sets():
    # AGL(1,13): x -> x+1 and x -> 2x on 0..12
    H = PermGroup([Permutation([(i + 1) % 13 for i in range(13)]),
                   Permutation([2 * i % 13 for i in range(13)])])
    assert H.order == 156
    rng = random.Random(1)
    x = find_regular_set(H, 5, rng)
    assert x is not None and bin(x).count("1") == 5 and is_regular_set(H, x)


def test_set_transitivity():
    assert is_set_transitive(symmetric_group(5))
    assert not is_set_transitive(G(5, "(1,2,3,4,5)"))
    assert is_set_transitive(G(5, "(1,2,3,4,5)", "(2,3,5,4)"))  # AGL(1,5)


def test_kernel_backends_agree(rng):
    for _ in range(20):
        n = rng.randint(1, 10)
        gens = [random_perm(n, rng).images for _ in range(2)]
        assert list(map(list, _pykernels.orbit_scan(n, gens))) == \
            list(map(list, kernels.orbit_scan(n, gens)))
        x = rng.randrange(1 << n)
        assert sorted(_pykernels.mask_orbit(gens, x)) == sorted(kernels.mask_orbit(gens, x))
        assert _pykernels.mask_image(gens[0], x) == kernels.mask_image(gens[0], x)
        edges = sorted({rng.randrange(1, 1 << n) for _ in range(5)})
        assert bytes(_pykernels.sym_scan(n, edges)) == bytes(kernels.sym_scan(n, edges))
