"""Unordered relations (hypergraphs) and their invariance groups."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import kernels
from .budget import DEFAULT, Budget, BudgetExceeded
from .group import PermGroup, _mul, contains, right_coset_reps
from .perm import Permutation
from .setorbits import format_set, popcount, subset_orbit

SCAN_MAX_DEGREE = 9


def _edge_key(m: int) -> tuple[int, int]:
    return (popcount(m), m)


@dataclass(frozen=True)
class Relation:
    """A deduplicated family of subsets, ordered by (cardinality, mask)."""

    degree: int
    edges: tuple[int, ...]
    arity: frozenset[int] = field(init=False)

    def __post_init__(self):
        full = (1 << self.degree) - 1
        for e in self.edges:
            if e & ~full:
                raise ValueError(f"edge {e:#x} outside degree {self.degree}")
        edges = tuple(sorted(set(self.edges), key=_edge_key))
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "arity", frozenset(popcount(e) for e in edges))

    @classmethod
    def of(cls, degree: int, edges: Iterable[int]) -> "Relation":
        return cls(degree, tuple(edges))

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, mask: int) -> bool:
        return mask in set(self.edges)

    def union(self, other: "Relation | None") -> "Relation":
        if other is None:
            return self
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Relation(self.degree, self.edges + other.edges)

    def complemented(self) -> "Relation":
        full = (1 << self.degree) - 1
        return Relation(self.degree, tuple(full ^ e for e in self.edges))

    def is_invariant_under(self, g: Permutation) -> bool:
        es = set(self.edges)
        return all(g.image_mask(e) in es for e in self.edges)

    def __str__(self) -> str:
        return "{" + ", ".join(format_set(e) for e in self.edges) + "}"


def orbit_relation(G: PermGroup, seeds: Sequence[int]) -> Relation:
    """Union of the set-orbits of the seeds under ``G``."""
    if not seeds:
        raise ValueError("need at least one seed")
    edges: list[int] = []
    for s in seeds:
        edges.extend(subset_orbit(G, s))
    return Relation(G.degree, tuple(edges))


# ---------------------------------------------------------------------------
# invariance groups of edge-colored hypergraphs


def _group_from_elements(n: int, data: bytes) -> PermGroup:
    """A small generating set for a group packed as ``n`` bytes per element."""
    target = len(data) // n
    ident = tuple(range(n))
    group = PermGroup((), degree=n)
    if target <= 1:
        return group
    gens: list[Permutation] = []
    order = list(range(target))
    random.Random(0).shuffle(order)
    for idx in order:
        g = tuple(data[idx * n:(idx + 1) * n])
        if g == ident:
            continue
        p = Permutation._trusted(tuple(g))
        if contains(group, p):
            continue
        gens.append(p)
        group = PermGroup(gens)
        if group.order == target:
            break
    if group.order != target:
        raise AssertionError("scanned automorphisms do not form a group")
    return group


def _aut_scan(n: int, colored: Mapping[int, int]) -> PermGroup:
    edges = sorted(colored)
    colors = [colored[e] for e in edges]
    uncolored = len(set(colors)) <= 1
    data = kernels.sym_scan(n, edges, None if uncolored else colors)
    return _group_from_elements(n, data)


class _Refiner:
    """Equitable-style colour refinement for an edge-coloured hypergraph."""

    def __init__(self, n: int, colored: Mapping[int, int], budget: int):
        self.n = n
        self.edges = sorted(colored)
        self.ecol = [colored[e] for e in self.edges]
        self.colored = dict(colored)
        self.verts = []
        inc: list[list[int]] = [[] for _ in range(n)]
        for i, e in enumerate(self.edges):
            vs = tuple(v for v in range(n) if e >> v & 1)
            self.verts.append(vs)
            for v in vs:
                inc[v].append(i)
        self.inc = inc
        self.nodes = 0
        self.budget = budget

    def initial(self) -> list[int]:
        # per vertex: count of edges of each (colour, size) containing it
        sigs = []
        for v in range(self.n):
            cnt: dict[tuple[int, int], int] = {}
            for i in self.inc[v]:
                key = (self.ecol[i], len(self.verts[i]))
                cnt[key] = cnt.get(key, 0) + 1
            sigs.append(tuple(sorted(cnt.items())))
        distinct = sorted(set(sigs))
        ids = {s: k for k, s in enumerate(distinct)}
        return [ids[s] for s in sigs]

    def refine(self, colors: list[int]) -> tuple[list[int], int]:
        """Refine to a stable colouring; returns it with a trace hash."""
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded("invariance-group backtrack", "--search-nodes", self.budget)
        trace = []
        ncol = len(set(colors))
        verts, ecol, inc = self.verts, self.ecol, self.inc
        while True:
            esig = [(ecol[i], tuple(sorted([colors[v] for v in vs]))) for i, vs in enumerate(verts)]
            eids = {s: k for k, s in enumerate(sorted(set(esig)))}
            eid = [eids[s] for s in esig]
            vsig = [(colors[v], tuple(sorted([eid[i] for i in inc[v]]))) for v in range(self.n)]
            distinct = sorted(set(vsig))
            trace.append(hash((tuple(sorted(esig)), tuple(distinct), tuple(sorted(vsig)))))
            ids = {s: k for k, s in enumerate(distinct)}
            colors = [ids[s] for s in vsig]
            if len(distinct) == ncol:
                return colors, hash(tuple(trace))
            ncol = len(distinct)

    @staticmethod
    def individualize(colors: list[int], v: int) -> list[int]:
        out = list(colors)
        out[v] = max(colors) + 1
        return out

    def is_automorphism(self, g: tuple) -> bool:
        col = self.colored
        for e, c in zip(self.edges, self.ecol):
            y = 0
            m = e
            i = 0
            while m:
                if m & 1:
                    y |= 1 << g[i]
                m >>= 1
                i += 1
            if col.get(y) != c:
                return False
        return True


def _largest_cell_min(colors: list[int]) -> int:
    """Smallest vertex in the largest non-singleton cell, or -1 if discrete."""
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    best = None
    for c, vs in cells.items():
        if len(vs) > 1 and (best is None or len(vs) > len(best) or
                            (len(vs) == len(best) and vs[0] < best[0])):
            best = vs
    return -1 if best is None else best[0]


def _aut_refine(n: int, colored: Mapping[int, int], node_budget: int) -> PermGroup:
    R = _Refiner(n, colored, node_budget)
    left = []  # stable colourings along the left path
    traces = []
    base = []
    c, t = R.refine(R.initial())
    left.append(c)
    traces.append(t)
    while True:
        b = _largest_cell_min(c)
        if b < 0:
            break
        base.append(b)
        c, t = R.refine(R.individualize(c, b))
        left.append(c)
        traces.append(t)
    k = len(base)
    found: list[tuple] = []

    def leaf_map(rc: list[int]) -> tuple:
        pos = {col: v for v, col in enumerate(rc)}
        return tuple(pos[left[k][v]] for v in range(n))

    def search(level: int, rc: list[int]) -> tuple | None:
        # rc: right colouring matching left[level]
        if level == k:
            g = leaf_map(rc)
            return g if R.is_automorphism(g) else None
        want = left[level][base[level]]
        for q in range(n):
            if rc[q] != want:
                continue
            nc, t = R.refine(R.individualize(rc, q))
            if t != traces[level + 1]:
                continue
            g = search(level + 1, nc)
            if g is not None:
                return g
        return None

    def orbit_under(p: int) -> set[int]:
        orb = {p}
        queue = [p]
        for a in queue:
            for g in found:
                q = g[a]
                if q not in orb:
                    orb.add(q)
                    queue.append(q)
        return orb

    for j in range(k - 1, -1, -1):
        bj = base[j]
        reached = orbit_under(bj)
        failed: set[int] = set()
        cell = [v for v in range(n) if left[j][v] == left[j][bj]]
        for p in cell:
            if p in reached or p in failed:
                continue
            nc, t = R.refine(R.individualize(left[j], p))
            g = search(j + 1, nc) if t == traces[j + 1] else None
            if g is None:
                failed |= orbit_under(p)
            else:
                found.append(g)
                reached = orbit_under(bj)
    group = PermGroup([Permutation._trusted(g) for g in found], degree=n)
    return group


def colored_automorphism_group(n: int, colored: Mapping[int, int], budget: Budget = DEFAULT,
                               engine: str | None = None) -> PermGroup:
    """Permutations mapping every edge to an edge of the same colour."""
    if engine is None:
        engine = "scan" if n <= SCAN_MAX_DEGREE else "refine"
    if engine == "scan":
        if n > SCAN_MAX_DEGREE:
            raise BudgetExceeded("S_n scan", "--max-degree-exact", SCAN_MAX_DEGREE, n)
        return _aut_scan(n, colored)
    if engine == "refine":
        budget.check_degree(n, "invariance group")
        return _aut_refine(n, colored, budget.search_nodes)
    raise ValueError(f"unknown engine {engine!r}")


def invariance_group(R: Relation, budget: Budget = DEFAULT, engine: str | None = None) -> PermGroup:
    """The group of all permutations of the domain that map ``R`` onto itself."""
    return colored_automorphism_group(R.degree, {e: 0 for e in R.edges}, budget, engine)


def is_defined_by(G: PermGroup, seeds: Sequence[int], context: Relation | None = None,
                  budget: Budget = DEFAULT, engine: str | None = None) -> bool:
    """True iff ``G`` is the invariance group of the seed orbits plus ``context``.

    The two parts are coloured apart, so the result is 𝒢(x^G) ∩ 𝒢(context)
    and does not depend on which relation represents the context group.
    """
    R = orbit_relation(G, seeds)
    if context is None:
        H = invariance_group(R, budget, engine)
    else:
        if context.degree != G.degree:
            raise ValueError("degree mismatch")
        colored = {e: 1 for e in R.edges}
        for e in context.edges:
            colored[e] = colored.get(e, 0) | 2
        H = colored_automorphism_group(G.degree, colored, budget, engine)
    return H.order == G.order and G.is_subgroup_of(H)


def is_defined_in(G: PermGroup, seeds: Sequence[int], P: PermGroup, budget: Budget = DEFAULT) -> bool:
    """True iff the seed orbits cut ``P`` down to ``G``: 𝒢(x^G) ∩ P = G.

    This is what "defined in P" means for any relation R' with 𝒢(R') = P,
    with R' and the seed orbits kept apart by colour. The intersection
    is a union of right cosets of ``G``, so one representative per coset
    decides it and no invariance group is computed.
    """
    if not G.is_subgroup_of(P):
        raise ValueError("G is not a subgroup of P")
    edges = orbit_relation(G, seeds).edges
    family = set(edges)
    for r in right_coset_reps(G, P, budget.coset_budget)[1:]:
        if all(r.image_mask(e) in family for e in edges):
            return False
    return True


def defines(G: PermGroup, R: Relation, budget: Budget = DEFAULT, engine: str | None = None) -> bool:
    H = invariance_group(R, budget, engine)
    return H.order == G.order and G.is_subgroup_of(H)
