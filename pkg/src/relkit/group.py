"""Permutation groups via a base and strong generating set.

The construction is the deterministic incremental Schreier-Sims
algorithm. New base points are always the smallest point moved by the
element that forces the extension, so the same generator list always
yields the same base.
"""

from __future__ import annotations

import random
from typing import Iterable, Iterator, Sequence

from .budget import DEFAULT, Budget, BudgetExceeded
from .perm import Permutation

Images = tuple  # internal permutation representation


def _mul(a: Images, b: Images) -> Images:
    return tuple(map(b.__getitem__, a))


def _inv(a: Images) -> Images:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def _first_moved(a: Images) -> int:
    for i, x in enumerate(a):
        if i != x:
            return i
    return -1


class _Level:
    __slots__ = ("point", "gens", "trans", "inv")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[Images] = []
        self.trans: dict[int, Images] = {}
        self.inv: dict[int, Images] = {}

    def rebuild(self, n: int) -> None:
        ident = tuple(range(n))
        trans = {self.point: ident}
        queue = [self.point]
        for beta in queue:
            u = trans[beta]
            for s in self.gens:
                gamma = s[beta]
                if gamma not in trans:
                    trans[gamma] = _mul(u, s)
                    queue.append(gamma)
        self.trans = trans
        self.inv = {}

    def inverse(self, beta: int) -> Images:
        v = self.inv.get(beta)
        if v is None:
            v = self.inv[beta] = _inv(self.trans[beta])
        return v


def _sift(levels: list[_Level], g: Images, start: int = 0) -> tuple[Images, int]:
    for j in range(start, len(levels)):
        lv = levels[j]
        beta = g[lv.point]
        if beta not in lv.trans:
            return g, j
        if beta != lv.point:
            g = _mul(g, lv.inverse(beta))
    return g, len(levels)


def _schreier_sims(n: int, gens: Sequence[Images], base_prefix: Sequence[int] = ()) -> list[_Level]:
    ident = tuple(range(n))
    gens = [g for g in gens if g != ident]
    levels: list[_Level] = [_Level(b) for b in base_prefix]
    base = [lv.point for lv in levels]
    for g in gens:
        if all(g[b] == b for b in base):
            p = _first_moved(g)
            base.append(p)
            levels.append(_Level(p))
    strong = list(gens)

    def refresh(i: int) -> None:
        prefix = base[:i]
        lv = levels[i]
        lv.gens = [s for s in strong if all(s[b] == b for b in prefix)]
        lv.rebuild(n)

    for i in range(len(levels)):
        refresh(i)

    i = len(levels) - 1
    while i >= 0:
        lv = levels[i]
        restart = False
        for beta in list(lv.trans):
            u = lv.trans[beta]
            for s in lv.gens:
                gamma = s[beta]
                sch = _mul(_mul(u, s), lv.inverse(gamma))
                if sch == ident:
                    continue
                h, j = _sift(levels, sch, i + 1)
                if j < len(levels) or h != ident:
                    if j == len(levels):
                        p = _first_moved(h)
                        base.append(p)
                        levels.append(_Level(p))
                    strong.append(h)
                    for l in range(i + 1, j + 1):
                        refresh(l)
                    i = j
                    restart = True
                    break
            if restart:
                break
        if not restart:
            i -= 1
    return levels


class PermGroup:
    """A permutation group with exact order and membership testing."""

    def __init__(self, generators: Iterable[Permutation], degree: int | None = None,
                 base_prefix: Sequence[int] = ()):
        gens = tuple(generators)
        if not gens and degree is None:
            raise ValueError("need at least one generator or an explicit degree")
        if degree is None:
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise ValueError(f"degree mismatch: {g.degree} vs {degree}")
        self.degree = degree
        self.generators = gens
        self._levels = _schreier_sims(degree, [g.images for g in gens], base_prefix)
        order = 1
        for lv in self._levels:
            order *= len(lv.trans)
        self.order = order

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(lv.point for lv in self._levels)

    @property
    def transversal_sizes(self) -> tuple[int, ...]:
        return tuple(len(lv.trans) for lv in self._levels)

    @property
    def strong_generators(self) -> tuple[Permutation, ...]:
        seen = {}
        for lv in self._levels:
            for s in lv.gens:
                seen.setdefault(s, None)
        return tuple(Permutation._trusted(s) for s in seen)

    def __len__(self) -> int:
        return self.order

    def __contains__(self, g: Permutation) -> bool:
        return contains(self, g)

    def __iter__(self) -> Iterator[Permutation]:
        return elements(self)

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators)
        return f"PermGroup(<{gens}>, degree={self.degree}, order={self.order})"

    def is_trivial(self) -> bool:
        return self.order == 1

    def gen_images(self) -> list[Images]:
        """Nonidentity generator image tuples (kernel input)."""
        ident = tuple(range(self.degree))
        return [g.images for g in self.generators if g.images != ident]

    def orbit(self, point: int) -> list[int]:
        out = [point]
        seen = {point}
        for p in out:
            for g in self.generators:
                q = g.images[p]
                if q not in seen:
                    seen.add(q)
                    out.append(q)
        return sorted(out)

    def orbits(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for p in range(self.degree):
            if p not in seen:
                o = self.orbit(p)
                seen.update(o)
                out.append(o)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def random_element(self, rng: random.Random) -> Permutation:
        g = tuple(range(self.degree))
        for lv in self._levels:
            beta = rng.choice(sorted(lv.trans))
            g = _mul(lv.trans[beta], g)
        return Permutation._trusted(g)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(contains(other, g) for g in self.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (self.degree == other.degree and self.order == other.order
                and self.is_subgroup_of(other))

    __hash__ = None  # type: ignore[assignment]


def build_group(gens: Sequence[Permutation]) -> PermGroup:
    if not gens:
        raise ValueError("need at least one generator")
    return PermGroup(gens)


def trivial_group(degree: int) -> PermGroup:
    return PermGroup((), degree=degree)


def symmetric_group(degree: int) -> PermGroup:
    if degree == 1:
        return trivial_group(1)
    cyc = Permutation(tuple(range(1, degree)) + (0,))
    swap = Permutation((1, 0) + tuple(range(2, degree)))
    return PermGroup([cyc, swap])


def extend_fixed(G: PermGroup, points: int = 1) -> PermGroup:
    """``G`` acting on ``points`` extra fixed points (the ``+`` construction)."""
    n = G.degree + points
    tail = tuple(range(G.degree, n))
    return PermGroup([Permutation._trusted(g.images + tail) for g in G.generators], degree=n)


def contains(G: PermGroup, g: Permutation) -> bool:
    if g.degree != G.degree:
        raise ValueError(f"degree mismatch: {g.degree} vs {G.degree}")
    h, j = _sift(G._levels, g.images)
    return j == len(G._levels) and h == tuple(range(G.degree))


def elements(G: PermGroup, budget: int | None = None) -> Iterator[Permutation]:
    """Every element once, lexicographic in the transversal indices.

    Element ``u_{k-1} ... u_1 u_0`` with the level-0 index varying slowest.
    """
    limit = DEFAULT.enum_budget if budget is None else budget
    if G.order > limit:
        raise BudgetExceeded("element enumeration", "--enum-budget", limit, G.order)
    n = G.degree
    levels = [[lv.trans[b] for b in sorted(lv.trans)] for lv in G._levels]
    k = len(levels)

    def rec(j: int, suffix: Images) -> Iterator[Images]:
        if j == k:
            yield suffix
            return
        for u in levels[j]:
            yield from rec(j + 1, _mul(u, suffix))

    for g in rec(0, tuple(range(n))):
        yield Permutation._trusted(g)


def right_coset_reps(G: PermGroup, P: PermGroup, budget: int | None = None) -> list[Permutation]:
    """One representative per right coset ``G r`` of ``G <= P``, identity first."""
    if not G.is_subgroup_of(P):
        raise ValueError("not a subgroup")
    index = P.order // G.order
    limit = DEFAULT.coset_budget if budget is None else budget
    if index > limit:
        raise BudgetExceeded("coset listing", "--coset-budget", limit, index)
    reps = [Permutation.identity(P.degree)]
    for r in reps:
        if len(reps) == index:
            break
        for p in P.generators:
            s = r * p
            if not any(contains(G, s * ~t) for t in reps):
                reps.append(s)
    return reps


def naive_closure(gens: Sequence[Permutation], limit: int = 100_000) -> set[Images]:
    """All products of the generators by BFS; an oracle for small groups."""
    n = gens[0].degree
    ident = tuple(range(n))
    seen = {ident}
    queue = [ident]
    imgs = [g.images for g in gens]
    for a in queue:
        for b in imgs:
            c = _mul(a, b)
            if c not in seen:
                seen.add(c)
                queue.append(c)
                if len(seen) > limit:
                    raise BudgetExceeded("naive closure", "limit", limit)
    return seen


def random_order(gens: Sequence[Permutation], seed: int = 0, base_prefix: Sequence[int] | None = None,
                 patience: int = 40) -> int:
    """Randomized Schreier-Sims order estimate (a lower bound, exact w.h.p.).

    Uses reversed point order as the default base so it shares no base
    with the deterministic construction; a cross-check only.
    """
    n = gens[0].degree
    rng = random.Random(seed)
    ident = tuple(range(n))
    if base_prefix is None:
        base_prefix = list(range(n - 1, -1, -1))
    levels = [_Level(b) for b in base_prefix]
    for lv in levels:
        lv.rebuild(n)
    gimgs = [g.images for g in gens if g.images != ident]
    if not gimgs:
        return 1
    # product replacement for random elements
    pool = list(gimgs) * max(1, 10 // len(gimgs) + 1)
    acc = ident
    for _ in range(50):
        i, j = rng.sample(range(len(pool)), 2)
        pool[i] = _mul(pool[i], pool[j])
        acc = _mul(acc, pool[i])
    quiet = 0
    while quiet < patience:
        i, j = rng.sample(range(len(pool)), 2)
        pool[i] = _mul(pool[i], pool[j])
        acc = _mul(acc, pool[i])
        h, lvl = _sift(levels, acc)
        if h == ident:
            quiet += 1
            continue
        quiet = 0
        # h fixes the base points before its drop-out level
        for l in range(min(lvl, len(levels) - 1) + 1):
            levels[l].gens.append(h)
            levels[l].rebuild(n)
    order = 1
    for lv in levels:
        order *= len(lv.trans)
    return order


# ---------------------------------------------------------------------------
# setwise stabilizer


def _mask_of(images: Images, mask: int) -> int:
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << images[i]
        mask >>= 1
        i += 1
    return out


def _stabilizer_search(G: PermGroup, x: int, first_only: bool = False):
    """Generators of ``G_x`` by a base-image backtrack down the stabilizer chain.

    Level ``j`` is processed after all deeper levels, so generators found
    so far generate the stabilizer of x inside ``G^(j+1)``; a point not
    yet reached by them needs a fresh search, and points in the current
    orbit of a failed point are skipped.
    """
    n = G.degree
    levels = G._levels
    k = len(levels)
    base = [lv.point for lv in levels]
    in_x = [bool(x >> b & 1) for b in base]
    trans_lists = [[(b, lv.trans[b]) for b in sorted(lv.trans)] for lv in levels]
    found: list[Images] = []

    def search(j: int, gamma: int) -> Images | None:
        start = levels[j].trans[gamma]
        stack = [(j + 1, start)]
        while stack:
            l, s = stack.pop()
            if l == k:
                if _mask_of(s, x) == x:
                    return s
                continue
            want = in_x[l]
            # reverse so the smallest transversal index is explored first
            for delta, u in reversed(trans_lists[l]):
                if bool(x >> s[delta] & 1) == want:
                    stack.append((l + 1, _mul(u, s)))
        return None

    def orbit_under(point: int, gens: list[Images]) -> set[int]:
        orb = {point}
        queue = [point]
        for p in queue:
            for g in gens:
                q = g[p]
                if q not in orb:
                    orb.add(q)
                    queue.append(q)
        return orb

    for j in range(k - 1, -1, -1):
        bj = base[j]
        reached = orbit_under(bj, found)
        failed: set[int] = set()
        for gamma, _ in trans_lists[j]:
            if gamma in reached or gamma in failed:
                continue
            if bool(x >> gamma & 1) != in_x[j]:
                failed |= orbit_under(gamma, found)
                continue
            g = search(j, gamma)
            if g is None:
                failed |= orbit_under(gamma, found)
                continue
            found.append(g)
            if first_only:
                return found
            reached = orbit_under(bj, found)
    return found


def setwise_stabilizer(G: PermGroup, x: int, method: str = "backtrack") -> PermGroup:
    """The stabilizer ``{g in G : x^g = x}`` of the subset mask ``x``."""
    full = (1 << G.degree) - 1
    if x & ~full:
        raise ValueError("subset has points outside the domain")
    if x == 0 or x == full:
        return G
    if method == "brute":
        gens = [g for g in elements(G) if g.image_mask(x) == x]
        return PermGroup(gens, degree=G.degree)
    if method != "backtrack":
        raise ValueError(f"unknown method {method!r}")
    found = _stabilizer_search(G, x)
    return PermGroup([Permutation._trusted(g) for g in found], degree=G.degree)


def has_nontrivial_stabilizer(G: PermGroup, x: int) -> bool:
    full = (1 << G.degree) - 1
    if G.order == 1:
        return False
    if x == 0 or x == full:
        return True
    return bool(_stabilizer_search(G, x, first_only=True))
