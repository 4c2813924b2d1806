"""Orbits of a permutation group on the power set of its domain.

Subsets are int bitmasks: bit ``i`` set iff point ``i`` (0-based) is in
the set.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Iterable

from . import kernels
from .budget import DEFAULT, BudgetExceeded
from .group import PermGroup, has_nontrivial_stabilizer, setwise_stabilizer

# orbit BFS decides regularity up to this group order; larger groups use
# the stabilizer backtrack instead
BFS_ORDER_LIMIT = 1 << 18


def to_mask(points: Iterable[int], degree: int) -> int:
    """Mask of 1-based points."""
    m = 0
    for p in points:
        if not 1 <= p <= degree:
            raise ValueError(f"point {p} outside 1..{degree}")
        m |= 1 << (p - 1)
    return m


def points_of(mask: int) -> list[int]:
    """1-based points of a mask, ascending."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def format_set(mask: int) -> str:
    return "[" + ",".join(map(str, points_of(mask))) + "]"


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def complement(mask: int, degree: int) -> int:
    return ((1 << degree) - 1) & ~mask


@dataclass(frozen=True, order=True)
class SetOrbit:
    representative: int  # smallest member
    size: int
    cardinality: int


def subset_orbit(G: PermGroup, x: int) -> list[int]:
    if x >> G.degree:
        raise ValueError("subset has points outside the domain")
    return sorted(kernels.mask_orbit(G.gen_images(), x))


def all_set_orbits(G: PermGroup, scan_budget: int | None = None) -> list[SetOrbit]:
    limit = DEFAULT.scan_budget if scan_budget is None else scan_budget
    total = 1 << G.degree
    if total > limit:
        raise BudgetExceeded("power-set scan", "--scan-budget", limit, total)
    reps, sizes = kernels.orbit_scan(G.degree, G.gen_images())
    return [SetOrbit(r, s, popcount(r)) for r, s in zip(reps, sizes)]


def orbit_table(orbits: list[SetOrbit]) -> dict[int, list[int]]:
    """Orbit sizes grouped by cardinality."""
    table: dict[int, list[int]] = {}
    for o in orbits:
        table.setdefault(o.cardinality, []).append(o.size)
    return dict(sorted(table.items()))


def is_regular_set(G: PermGroup, x: int) -> bool:
    """True iff the setwise stabilizer of ``x`` in ``G`` is trivial."""
    if x >> G.degree:
        raise ValueError("subset has points outside the domain")
    if G.order == 1:
        return True
    if G.order <= BFS_ORDER_LIMIT:
        orbit = kernels.mask_orbit(G.gen_images(), x, G.order)
        return len(orbit) == G.order
    return not has_nontrivial_stabilizer(G, x)


def regular_set_sizes(G: PermGroup, exhaustive_budget: int | None = None, *,
                      samples: int = 100_000, climb_steps: int = 2000,
                      seed: int = 0) -> tuple[frozenset[int], bool]:
    """Cardinalities of regular sets of ``G``.

    Returns ``(sizes, exhaustive)``. When the full scan is out of budget
    the answer comes from random sampling plus swap hill climbing and is
    only a subset of the truth.
    """
    limit = DEFAULT.regset_budget if exhaustive_budget is None else exhaustive_budget
    n = G.degree
    cost = (1 << n) * max(1, len(G.gen_images()))
    if cost <= limit and (1 << n) <= DEFAULT.scan_budget:
        sizes = {o.cardinality for o in all_set_orbits(G) if o.size == G.order}
        return frozenset(sizes), True
    found = set()
    rng = random.Random(seed)
    for k in range(0, n // 2 + 1):
        if comb(n, k) < G.order:
            continue
        x = find_regular_set(G, k, rng, samples=samples, climb_steps=climb_steps)
        if x is not None:
            found.add(k)
            found.add(n - k)
    return frozenset(found), False


def find_regular_set(G: PermGroup, k: int, rng: random.Random, *, samples: int = 100_000,
                     climb_steps: int = 2000) -> int | None:
    """A regular k-set found by sampling then hill climbing, or None."""
    n = G.degree
    pts = list(range(n))
    tries = min(samples, 2000)
    for _ in range(tries):
        x = _mask(rng.sample(pts, k))
        if is_regular_set(G, x):
            return x
    if k == 0 or k == n:
        return None
    x = _mask(rng.sample(pts, k))
    score = setwise_stabilizer(G, x).order
    for _ in range(climb_steps):
        if score == 1:
            return x
        inside = [p for p in pts if x >> p & 1]
        outside = [p for p in pts if not x >> p & 1]
        y = x ^ (1 << rng.choice(inside)) ^ (1 << rng.choice(outside))
        s = setwise_stabilizer(G, y).order
        if s <= score:
            x, score = y, s
    if score == 1:
        return x
    for _ in range(max(0, samples - tries)):
        x = _mask(rng.sample(pts, k))
        if is_regular_set(G, x):
            return x
    return None


def _mask(points) -> int:
    m = 0
    for p in points:
        m |= 1 << p
    return m


def is_set_transitive(G: PermGroup, scan_budget: int | None = None) -> bool:
    orbits = all_set_orbits(G, scan_budget)
    nonempty = sum(1 for o in orbits if o.representative != 0)
    return nonempty == G.degree


def cardinality_counts(orbits: list[SetOrbit]) -> Counter:
    return Counter(o.cardinality for o in orbits)
