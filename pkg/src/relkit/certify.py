"""Decision procedures: relation-group status, orbit closure, the basic
lemma's first premise, subgroup lattices and conjugacy inside Sym(n)."""

from __future__ import annotations

from collections import Counter
from itertools import permutations
from dataclasses import dataclass, field
from typing import Sequence

from .budget import DEFAULT, Budget, BudgetExceeded
from .group import PermGroup, _inv, _mul, contains, elements
from .perm import Permutation
from .relation import (Relation, colored_automorphism_group, defines, invariance_group,
                       is_defined_by, orbit_relation)
from .setorbits import SetOrbit, all_set_orbits, is_regular_set, popcount, subset_orbit

RG = "RelationGroup"
NOT_RG = "NotRelationGroup"
UNKNOWN = "Unknown"


@dataclass
class RgVerdict:
    """Outcome of the relation-group decision.

    A negative verdict carries either ``certificate`` (one permutation
    outside G per union of nontrivial set-orbits, keyed by the union's
    orbit representatives) or ``universal``: a permutation outside G that
    preserves every set-orbit and hence every union at once.
    """

    status: str
    witness: tuple[int, ...] | None = None  # orbit representatives of a defining union
    certificate: list[tuple[tuple[int, ...], Permutation]] | None = None
    universal: Permutation | None = None
    reason: str = ""
    orbit_closed: bool | None = None
    unions_checked: int = 0

    @property
    def is_rg(self) -> bool:
        return self.status == RG


def _nontrivial_orbits(G: PermGroup, budget: Budget) -> list[SetOrbit]:
    full = (1 << G.degree) - 1
    orbits = [o for o in all_set_orbits(G, budget.scan_budget)
              if o.representative not in (0, full)]
    orbits.sort(key=lambda o: (o.cardinality, o.representative))
    return orbits


def decide_relation_group(G: PermGroup, budget: Budget = DEFAULT,
                          engine: str | None = None, *, shortcut: bool = True) -> RgVerdict:
    """Is ``G`` the invariance group of some relation?

    Every G-invariant relation is a union of set-orbits, so the unions are
    enumerated in binary-counter order (orbits ordered by cardinality, then
    representative). The first union whose invariance group is ``G`` is
    the witness; otherwise every union gets an extra permutation outside
    ``G`` that preserves it.

    The orbit closure is computed first: if it exceeds ``G`` one of its
    elements preserves all unions and settles the question at once.
    ``shortcut=False`` skips that step and always enumerates.
    """
    n = G.degree
    try:
        budget.check_degree(n, "relation-group decision")
        orbits = _nontrivial_orbits(G, budget)
    except BudgetExceeded as exc:
        return RgVerdict(UNKNOWN, reason=str(exc))
    k = len(orbits)
    total = 1 << k
    closed = None
    try:
        C = orbit_closure(G, budget, engine) if shortcut else None
    except BudgetExceeded:
        C = None
    if C is not None:
        closed = C.order == G.order
        if not closed:
            g = next(s for s in C.generators if not contains(G, s))
            return RgVerdict(NOT_RG, universal=g, orbit_closed=False)
    members = [subset_orbit(G, o.representative) for o in orbits]
    label = {m: i for i, ms in enumerate(members) for m in ms}
    # per extra permutation g: hits[i] = orbits met by the image of orbit i
    extras: list[tuple[tuple, list[int]]] = []
    certificate: list[tuple[tuple[int, ...], Permutation]] = []
    for idx in range(total):
        if idx >= budget.union_budget:
            return RgVerdict(UNKNOWN, orbit_closed=closed, unions_checked=idx,
                             reason=f"{total} orbit unions exceed --union-budget={budget.union_budget}")
        chosen = [i for i in range(k) if idx >> i & 1]
        hit = None
        for g, hits in extras:
            if all(hits[i] & ~idx == 0 for i in chosen):
                hit = g
                break
        if hit is None:
            edges = [m for i in chosen for m in members[i]]
            try:
                H = invariance_group(Relation(n, tuple(edges)), budget, engine)
            except BudgetExceeded as exc:
                return RgVerdict(UNKNOWN, reason=str(exc), orbit_closed=closed, unions_checked=idx)
            if H.order == G.order:
                reps = tuple(orbits[i].representative for i in chosen)
                return RgVerdict(RG, witness=reps, orbit_closed=closed, unions_checked=idx + 1)
            hit = next(s.images for s in H.strong_generators if not contains(G, s))
            hits = []
            for ms in members:
                b = 0
                for m in ms:
                    b |= 1 << label[_img(hit, m)]
                hits.append(b)
            extras.append((hit, hits))
        reps = tuple(orbits[i].representative for i in chosen)
        certificate.append((reps, Permutation._trusted(hit)))
    return RgVerdict(NOT_RG, certificate=certificate, orbit_closed=closed, unions_checked=total)


def _img(g: tuple, mask: int) -> int:
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << g[i]
        mask >>= 1
        i += 1
    return out


def verify_certificate(G: PermGroup, verdict: RgVerdict) -> bool:
    """Replay a verdict from scratch.

    The witness must define G. A universal permutation must lie outside G
    and fix every set-orbit. Otherwise each certificate entry must be a
    permutation outside G preserving its union, and the entries must
    cover every union of nontrivial set-orbits.
    """
    if verdict.status == RG:
        seeds = list(verdict.witness or ())
        R = orbit_relation(G, seeds) if seeds else Relation(G.degree, ())
        return defines(G, R)
    if verdict.status != NOT_RG:
        return False
    orbits = _nontrivial_orbits(G, DEFAULT)
    if verdict.universal is not None:
        g = verdict.universal
        if contains(G, g):
            return False
        return all(orbit_relation(G, [o.representative]).is_invariant_under(g) for o in orbits)
    # a union is preserved by g iff every chosen orbit lands inside the union;
    # per distinct g, record which orbits each orbit's image meets
    members = [subset_orbit(G, o.representative) for o in orbits]
    label = {m: i for i, ms in enumerate(members) for m in ms}
    position = {o.representative: i for i, o in enumerate(orbits)}
    hits_of: dict[Permutation, list[int] | None] = {}
    seen = set()
    for reps, g in verdict.certificate or ():
        if g not in hits_of:
            if contains(G, g):
                return False
            hits = []
            for ms in members:
                b = 0
                for m in ms:
                    b |= 1 << label[g.image_mask(m)]
                hits.append(b)
            hits_of[g] = hits
        hits = hits_of[g]
        try:
            idx = sum(1 << position[r] for r in reps)
        except KeyError:
            return False
        if any(hits[i] & ~idx for i in range(len(orbits)) if idx >> i & 1):
            return False
        seen.add(idx)
    return len(seen) == 1 << len(orbits)


def orbit_closure(G: PermGroup, budget: Budget = DEFAULT, engine: str | None = None) -> PermGroup:
    """The largest group with the same set-orbits as ``G``."""
    n = G.degree
    budget.check_degree(n, "orbit closure")
    colored: dict[int, int] = {}
    full = (1 << n) - 1
    for idx, o in enumerate(all_set_orbits(G, budget.scan_budget)):
        if o.representative in (0, full):
            continue
        for m in subset_orbit(G, o.representative):
            colored[m] = idx
    return colored_automorphism_group(n, colored, budget, engine)


def is_orbit_closed(G: PermGroup, budget: Budget = DEFAULT) -> bool:
    return orbit_closure(G, budget).order == G.order


def check_lemma31_i(H: PermGroup, seeds: Sequence[int], context: Relation | None, y: int,
                    budget: Budget = DEFAULT) -> bool:
    """First premise of the basic lemma: ``y`` regular in ``H``, the seeds
    (with ``context``) define ``H``, and ``|y|`` is not an arity of that
    relation."""
    if not is_regular_set(H, y):
        return False
    R = orbit_relation(H, list(seeds)).union(context)
    if popcount(y) in R.arity:
        return False
    return defines(H, R, budget)


# ---------------------------------------------------------------------------
# subgroups


def _closure(gens: list[tuple], index: dict, elems: list[tuple]) -> frozenset[int]:
    n = len(elems[0])
    ident = tuple(range(n))
    seen = {index[ident]}
    queue = [ident]
    for a in queue:
        for b in gens:
            c = _mul(a, b)
            i = index[c]
            if i not in seen:
                seen.add(i)
                queue.append(c)
    return frozenset(seen)


def enumerate_subgroups(G: PermGroup, max_order: int | None = None) -> list[PermGroup]:
    """Every subgroup of ``G`` (up to equality), smallest order first.

    Cyclic subgroups are closed under joins until nothing new appears;
    every subgroup is the join of its cyclic subgroups.
    """
    limit = DEFAULT.subgroup_order if max_order is None else max_order
    if G.order > limit:
        raise BudgetExceeded("subgroup enumeration", "--subgroup-order", limit, G.order)
    elems = [g.images for g in elements(G)]
    index = {g: i for i, g in enumerate(elems)}
    n = G.degree
    ident = tuple(range(n))
    groups: dict[frozenset[int], list[tuple]] = {frozenset([index[ident]]): []}
    cyclic: dict[frozenset[int], tuple] = {}
    for g in elems:
        if g == ident:
            continue
        S = _closure([g], index, elems)
        cyclic.setdefault(S, g)
    for S, g in cyclic.items():
        groups.setdefault(S, [g])
    frontier = list(cyclic)
    while frontier:
        nxt = []
        for A in frontier:
            for C, c in cyclic.items():
                if C <= A:
                    continue
                gens = groups[A] + [c]
                J = _closure(gens, index, elems)
                if J not in groups:
                    groups[J] = gens
                    nxt.append(J)
        frontier = nxt
    out = []
    for S, gens in sorted(groups.items(), key=lambda kv: (len(kv[0]), sorted(kv[0]))):
        sub = PermGroup([Permutation._trusted(g) for g in gens], degree=n)
        assert sub.order == len(S)
        out.append(sub)
    return out


# ---------------------------------------------------------------------------
# conjugacy in Sym(n)

CONJUGATE = "conjugate"
NOT_CONJUGATE = "not-conjugate"


@dataclass
class ConjugacyResult:
    status: str
    witness: Permutation | None = None
    reason: str = ""


def _cycle_type(g: tuple) -> tuple[int, ...]:
    return Permutation._trusted(g).cycle_type()


def _conjugacy_reps(elems: list[tuple], gens: list[tuple]) -> list[tuple]:
    seen: set[tuple] = set()
    reps = []
    invs = [_inv(h) for h in gens]
    for g in elems:
        if g in seen:
            continue
        reps.append(g)
        seen.add(g)
        queue = [g]
        for a in queue:
            for h, hi in zip(gens, invs):
                b = _mul(_mul(hi, a), h)
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
    return reps


def _solve_conjugator(n: int, gs: list[tuple], hs: list[tuple], counter: list[int],
                      limit: int) -> tuple | None:
    """A permutation c with c[g[x]] == h[c[x]] for all pairs, if one exists."""
    c = [-1] * n
    used = [False] * n

    def assign(x: int, y: int, trail: list[int]) -> bool:
        stack = [(x, y)]
        while stack:
            a, b = stack.pop()
            if c[a] >= 0:
                if c[a] != b:
                    return False
                continue
            if used[b]:
                return False
            c[a] = b
            used[b] = True
            trail.append(a)
            for g, h in zip(gs, hs):
                stack.append((g[a], h[b]))
        return True

    def undo(trail: list[int]) -> None:
        for a in trail:
            used[c[a]] = False
            c[a] = -1

    def rec() -> bool:
        counter[0] += 1
        if counter[0] > limit:
            raise BudgetExceeded("conjugacy search", "--search-nodes", limit)
        try:
            x = c.index(-1)
        except ValueError:
            return True
        for y in range(n):
            if used[y]:
                continue
            trail: list[int] = []
            if assign(x, y, trail) and rec():
                return True
            undo(trail)
        return False

    return tuple(c) if rec() else None


def _conjugator_search(G: PermGroup, H: PermGroup, budget: Budget, exact: bool) -> ConjugacyResult:
    n = G.degree
    gs = G.gen_images()
    if not gs:
        return ConjugacyResult(CONJUGATE, Permutation.identity(n))
    try:
        h_elems = [h.images for h in elements(H, budget.enum_budget)]
        g_elems = [g.images for g in elements(G, budget.enum_budget)] if exact else []
    except BudgetExceeded as exc:
        return ConjugacyResult(UNKNOWN, reason=str(exc))
    h_types = [_cycle_type(h) for h in h_elems]
    if exact and Counter(h_types) != Counter(_cycle_type(g) for g in g_elems):
        return ConjugacyResult(NOT_CONJUGATE, reason="cycle-type distributions differ")
    by_type: dict[tuple, list[tuple]] = {}
    for h, t in zip(h_elems, h_types):
        by_type.setdefault(t, []).append(h)
    g_types = [_cycle_type(g) for g in gs]
    first = [h for h in _conjugacy_reps(h_elems, H.gen_images()) if _cycle_type(h) == g_types[0]]
    # cycle types of consecutive products prune pairs early
    prod_types = [_cycle_type(_mul(gs[i - 1], gs[i])) for i in range(1, len(gs))]
    counter = [0]
    limit = budget.search_nodes

    def rec(i: int, chosen: list[tuple]) -> tuple | None:
        if i == len(gs):
            return _solve_conjugator(n, gs, chosen, counter, limit)
        pool = first if i == 0 else by_type.get(g_types[i], [])
        for h in pool:
            if i > 0 and _cycle_type(_mul(chosen[-1], h)) != prod_types[i - 1]:
                continue
            counter[0] += 1
            if counter[0] > limit:
                raise BudgetExceeded("conjugacy search", "--search-nodes", limit)
            c = rec(i + 1, chosen + [h])
            if c is not None:
                return c
        return None

    try:
        c = rec(0, [])
    except BudgetExceeded as exc:
        return ConjugacyResult(UNKNOWN, reason=str(exc))
    if c is None:
        return ConjugacyResult(NOT_CONJUGATE, reason="exhaustive search")
    cp = Permutation._trusted(c)
    cinv = Permutation._trusted(_inv(c))
    assert all(contains(H, cinv * g * cp) for g in G.generators)
    return ConjugacyResult(CONJUGATE, cp)


def conjugate_in_sym(G: PermGroup, H: PermGroup, budget: Budget = DEFAULT) -> ConjugacyResult:
    """Search for ``c`` in Sym(n) with ``c^-1 G c == H``.

    The images ``h_i = c^-1 g_i c`` of G's generators are chosen inside H
    (the first only up to H-conjugacy), pruned by cycle types; for each
    choice the conjugator is solved orbit by orbit.
    """
    if G.degree != H.degree or G.order != H.order:
        return ConjugacyResult(NOT_CONJUGATE, reason="degree or order differ")
    if sorted(map(len, G.orbits())) != sorted(map(len, H.orbits())):
        return ConjugacyResult(NOT_CONJUGATE, reason="orbit lengths differ")
    return _conjugator_search(G, H, budget, exact=True)


def conjugate_into(G: PermGroup, P: PermGroup, budget: Budget = DEFAULT) -> ConjugacyResult:
    """Search for ``c`` with ``c^-1 G c <= P``; same search as above without
    the order match."""
    if G.degree != P.degree or P.order % G.order:
        return ConjugacyResult(NOT_CONJUGATE, reason="order does not divide")
    if G.is_subgroup_of(P):
        return ConjugacyResult(CONJUGATE, Permutation.identity(G.degree))
    return _conjugator_search(G, P, budget, exact=False)


def brute_force_conjugator(G: PermGroup, H: PermGroup) -> Permutation | None:
    """Test oracle: scan all of Sym(n) (small n only)."""
    if G.order != H.order:
        return None
    for c in permutations(range(G.degree)):
        cp = Permutation._trusted(c)
        cinv = Permutation._trusted(_inv(c))
        if all(contains(H, cinv * g * cp) for g in G.generators):
            return cp
    return None
