"""Replay catalog claims and report a verdict for each one.

Verdicts:

``confirmed``  recomputed and equal to the claim
``refuted``    recomputed and different; ``value`` holds what was computed
``unknown``    not decided within budget; ``reason`` names the flag to raise
``trusted``    out of scope by design (cited maximality, exhaustion at n >= 22,
               invariance-group equality at n >= 21)
"""

from __future__ import annotations

import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .budget import DEFAULT, Budget, BudgetExceeded
from .catalog import CatalogEntry, Claim, SetSpec
from .certify import (CONJUGATE, NOT_CONJUGATE, NOT_RG, RG, check_lemma31_i, conjugate_in_sym,
                      conjugate_into, decide_relation_group, enumerate_subgroups)
from .group import PermGroup, extend_fixed, setwise_stabilizer
from .perm import Permutation, print_cycles
from .relation import (Relation, defines, invariance_group, is_defined_by, is_defined_in,
                       orbit_relation)
from .setorbits import (all_set_orbits, find_regular_set, format_set, is_regular_set, popcount,
                        subset_orbit)

CONFIRMED = "confirmed"
REFUTED = "refuted"
UNKNOWN = "unknown"
TRUSTED = "trusted"
VERDICTS = (CONFIRMED, REFUTED, UNKNOWN, TRUSTED)

TRUSTED_EXHAUSTION_DEGREE = 22  # no-regular-set claims from here on
TRUSTED_AUT_DEGREE = 21  # invariance-group equality claims from here on

_AUT_KINDS = ("defined-by", "defined-in", "aut-of", "rg", "not-rg", "all-subgroups-rg")


@dataclass(frozen=True)
class ClaimReport:
    entry: str
    claim: str
    verdict: str
    value: str = ""
    reason: str = ""
    details: str = ""
    elapsed: float = 0.0

    FIELDS = ("entry", "claim", "verdict", "value", "reason", "details")

    def record(self, timings: bool = False) -> str:
        data = {k: getattr(self, k) for k in self.FIELDS}
        if timings:
            data["elapsed"] = round(self.elapsed, 3)
        return json.dumps(data, ensure_ascii=False)


class _Outcome(Exception):
    """Early exit from a claim handler with a finished verdict."""

    def __init__(self, verdict: str, value: str = "", reason: str = "", details: str = ""):
        super().__init__(reason)
        self.args4 = (verdict, value, reason, details)


def _masks(sets: Sequence[SetSpec], n: int) -> list[int]:
    try:
        return [s.mask(n) for s in sets]
    except ValueError as exc:
        raise _Outcome(REFUTED, value=str(exc), reason="set is not a subset of the domain")


def _sizes_text(sizes: Iterable[int]) -> str:
    return "{" + ",".join(map(str, sorted(sizes))) + "}"


def _conjugated(G: PermGroup, c: Permutation) -> PermGroup:
    if c.is_identity():
        return G
    ci = ~c
    return PermGroup([ci * g * c for g in G.generators], degree=G.degree)


class Verifier:
    """Claim checker over one catalog. Caches are per instance and never
    influence results, so any number of workers agree."""

    def __init__(self, entries: Sequence[CatalogEntry], budget: Budget = DEFAULT, seed: int = 0):
        self.entries = list(entries)
        self.by_id = {e.id: e for e in self.entries}
        self.budget = budget
        self.seed = seed
        self._groups: dict[str, PermGroup | None] = {}
        self._orbits: dict[str, list] = {}
        self._relations: dict[str, Relation | None] = {}
        self._resolving: set[str] = set()

    # -- lookups -----------------------------------------------------------

    def group(self, gid: str) -> PermGroup | None:
        if gid in self._groups:
            return self._groups[gid]
        base = gid.rstrip("+")
        extra = len(gid) - len(base)
        e = self.by_id.get(base)
        G = None
        if e is not None:
            src = self.by_id.get(e.same_as, e) if e.same_as else e
            if src.generators:
                G = PermGroup(src.permutations(), degree=e.degree)
                if extra:
                    G = extend_fixed(G, extra)
        self._groups[gid] = G
        return G

    def orbits(self, gid: str):
        if gid not in self._orbits:
            self._orbits[gid] = all_set_orbits(self.group(gid), self.budget.scan_budget)
        return self._orbits[gid]

    def regular_sizes(self, gid: str) -> tuple[frozenset[int], dict[int, int], bool]:
        """Regular-set sizes with a witness per size, and whether the
        answer is exhaustive."""
        G = self.group(gid)
        n = G.degree
        if (1 << n) * max(1, len(G.generators)) <= self.budget.regset_budget:
            wit: dict[int, int] = {}
            for o in self.orbits(gid):
                if o.size == G.order and o.cardinality not in wit:
                    wit[o.cardinality] = o.representative
            return frozenset(wit), wit, True
        return frozenset(), {}, False

    def search_regular(self, G: PermGroup, k: int, light: bool = False) -> int | None:
        """Randomized search; ``light`` is a short probe for sizes the claim
        says are impossible, where failure proves nothing anyway."""
        if comb(G.degree, k) < G.order:
            return None
        rng = random.Random(self.seed * 1000 + k)
        if light:
            return find_regular_set(G, k, rng, samples=200, climb_steps=40)
        return find_regular_set(G, k, rng, samples=4000, climb_steps=400)

    # -- defining relations --------------------------------------------------

    def defining_relation(self, gid: str) -> Relation | None:
        """A relation (plain union of set-orbits) whose invariance group is
        ``gid``, taken from the entry's own claims and verified."""
        if gid in self._relations:
            return self._relations[gid]
        if gid in self._resolving:
            return None
        top = not self._resolving
        self._resolving.add(gid)
        try:
            R = self._find_relation(gid)
        finally:
            self._resolving.discard(gid)
        # a nested answer may depend on the cycle guard, hence on call order
        if top:
            self._relations[gid] = R
        return R

    def _find_relation(self, gid: str) -> Relation | None:
        e = self.by_id.get(gid)
        G = self.group(gid)
        if e is None or G is None or G.degree > self.budget.max_degree_exact:
            return None
        for R in self._relation_candidates(e, G):
            try:
                if R is not None and defines(G, R, self.budget):
                    return R
            except BudgetExceeded:
                continue
        return None

    def _relation_candidates(self, e: CatalogEntry, G: PermGroup):
        n = e.degree
        for c in e.claims:
            try:
                if c.kind == "defined-by" and c.sets:
                    yield orbit_relation(G, [s.mask(n) for s in c.sets])
                elif c.kind == "aut-of":
                    yield self._aut_relation(c, n)
                elif c.kind == "defined-in" and c.sets:
                    ctx = self._context_for(G, c.target)
                    if ctx is not None:
                        yield orbit_relation(G, [s.mask(n) for s in c.sets]).union(ctx)
            except (ValueError, _Outcome):
                continue
        for c in e.claims:
            if c.kind in ("defined-by", "defined-in") and c.sizes is not None:
                ctx = None
                if c.kind == "defined-in":
                    ctx = self._context_for(G, c.target)
                    if ctx is None:
                        continue
                for o in self.orbits(e.id):
                    if 0 < o.cardinality < n:
                        yield orbit_relation(G, [o.representative]).union(ctx)

    def _context_for(self, G: PermGroup, target: str | None) -> Relation | None:
        """The target's defining relation, moved so that it is invariant
        under ``G`` when ``G`` lies in a conjugate of the target."""
        P = self.group(target) if target else None
        if P is None or P.degree != G.degree:
            return None
        R = self.defining_relation(target)
        if R is None:
            return None
        if G.is_subgroup_of(P):
            return R
        res = conjugate_into(G, P, self.budget)
        if res.status != CONJUGATE:
            return None
        ci = ~res.witness
        return Relation(R.degree, tuple(ci.image_mask(m) for m in R.edges))

    def _aut_relation(self, c: Claim, n: int) -> Relation:
        R = None
        for gid, sets in c.groups:
            H = self.group(gid)
            if H is None:
                raise _Outcome(UNKNOWN, reason=f"no generators for {gid}")
            if H.degree != n:
                raise _Outcome(UNKNOWN, reason=f"{gid} has degree {H.degree}, not {n}")
            R = orbit_relation(H, _masks(sets, n)).union(R)
        return R

    # -- entry point -----------------------------------------------------------

    def verify_entry(self, e: CatalogEntry, timings: bool = False) -> list[ClaimReport]:
        out = []
        for c in e.claims:
            t0 = time.perf_counter()
            verdict, value, reason, details = self.check(e, c)
            if verdict in (REFUTED, UNKNOWN):
                flagged = self._suspect_refs(e, c)
                if flagged:
                    note = "depends on suspect entry " + ", ".join(flagged)
                    reason = f"{reason}; {note}" if reason else note
            elapsed = time.perf_counter() - t0 if timings else 0.0
            out.append(ClaimReport(e.id, str(c), verdict, value, reason, details, elapsed))
        return out

    def _suspect_refs(self, e: CatalogEntry, c: Claim) -> list[str]:
        refs = [c.target] if c.target else []
        refs += [gid for gid, _ in c.groups]
        out = []
        for gid in refs:
            t = self.by_id.get(gid.rstrip("+"))
            if t is None or t.id == e.id or t.id in out:
                continue
            src = self.by_id.get(t.same_as, t) if t.same_as else t
            if t.suspect or src.suspect:
                out.append(t.id)
        return out

    def check(self, e: CatalogEntry, c: Claim) -> tuple[str, str, str, str]:
        """``(verdict, value, reason, details)`` for one claim."""
        try:
            return self._check(e, c)
        except _Outcome as o:
            return o.args4
        except BudgetExceeded as exc:
            return UNKNOWN, "", str(exc), ""

    def _check(self, e: CatalogEntry, c: Claim) -> tuple[str, str, str, str]:
        n = e.degree
        kind = c.kind
        if kind == "maximal-not-set-transitive":
            return TRUSTED, "", "maximality among groups that are not set-transitive is cited, not decided", ""
        if kind == "no-regular-set" and n >= TRUSTED_EXHAUSTION_DEGREE:
            return TRUSTED, "", self._exhaustion_reason(e), ""
        if kind in _AUT_KINDS and n >= TRUSTED_AUT_DEGREE:
            return TRUSTED, "", f"invariance-group equality at degree {n} is out of desk-scale scope", ""
        G = self.group(e.id)
        if G is None:
            return UNKNOWN, "", "no generators printed", ""
        handler = getattr(self, "_check_" + kind.replace("-", "_"))
        return handler(e, c, G)

    def _exhaustion_reason(self, e: CatalogEntry) -> str:
        reason = f"no-regular-set exhaustion at degree {e.degree} is cited, not recomputed"
        G = self.group(e.id)
        if G is not None and comb(e.degree, e.degree // 2) < G.order:
            reason += f"; the counting bound C({e.degree},{e.degree // 2}) < |G| also excludes regular sets"
        return reason

    # -- handlers, one per claim kind ----------------------------------------------

    def _check_order(self, e, c, G):
        if G.order == c.number:
            return CONFIRMED, "", "", ""
        return REFUTED, str(G.order), "computed order differs", ""

    def _check_subgroups(self, e, c, G):
        if G.order > self.budget.subgroup_order:
            raise BudgetExceeded("subgroup lattice", "--subgroup-order", self.budget.subgroup_order,
                                 G.order)
        count = len(enumerate_subgroups(G, self.budget.subgroup_order))
        if count == c.number:
            return CONFIRMED, "", "", ""
        return REFUTED, str(count), "subgroup count differs", ""

    def _check_orbit_size(self, e, c, G):
        (k,) = c.sizes.sizes
        sizes = sorted(o.size for o in self.orbits(e.id) if o.cardinality == k)
        hit = [o for o in self.orbits(e.id) if o.cardinality == k and o.size == c.number]
        if hit:
            return CONFIRMED, "", "", "x=" + format_set(hit[0].representative)
        return REFUTED, _sizes_text(sizes), f"orbit lengths on {k}-sets", ""

    def _check_regular_set(self, e, c, G):
        n = e.degree
        if c.sets:
            (x,) = _masks(c.sets, n)
            if is_regular_set(G, x):
                return CONFIRMED, "", "", ""
            stab = setwise_stabilizer(G, x).order
            return REFUTED, f"stabilizer order {stab}", "set is not regular", ""
        (k,) = c.sizes.sizes
        sizes, wit, exhaustive = self.regular_sizes(e.id)
        if exhaustive:
            if k in sizes:
                return CONFIRMED, "", "", "y=" + format_set(wit[k])
            return REFUTED, _sizes_text(sizes), "regular-set sizes (exhaustive)", ""
        y = self.search_regular(G, k)
        if y is not None:
            return CONFIRMED, "", "", "y=" + format_set(y)
        return UNKNOWN, "", f"no regular {k}-set found; exhaustion needs --regset-budget >= {(1 << n) * len(G.generators)}", ""

    def _check_regular_set_sizes(self, e, c, G):
        n = e.degree
        feasible = [k for k in range(n + 1) if comb(n, k) >= G.order]
        claimed = set(c.sizes.resolve(feasible))
        sizes, wit, exhaustive = self.regular_sizes(e.id)
        if exhaustive:
            if sizes == claimed:
                return CONFIRMED, "", "", ""
            return REFUTED, _sizes_text(sizes), "regular-set sizes (exhaustive)", ""
        found = {}
        for k in sorted(set(feasible) | claimed):
            if k in found or k > n - k and (n - k) in found:
                continue
            light = k not in claimed and n - k not in claimed
            y = self.search_regular(G, min(k, n - k), light)
            if y is not None:
                found[min(k, n - k)] = y
                found[max(k, n - k)] = ((1 << n) - 1) ^ y if k != n - k else y
        extra = sorted(set(found) - claimed)
        if extra:
            k = extra[0]
            return REFUTED, _sizes_text(found), f"regular {k}-set found", "y=" + format_set(found[k])
        need = f"--regset-budget >= {(1 << n) * len(G.generators)}"
        if claimed <= set(found):
            return TRUSTED, "", f"a regular set of every claimed size was found; absence at other sizes needs {need}", ""
        missing = sorted(claimed - set(found))
        return UNKNOWN, "", f"no regular set found of sizes {_sizes_text(missing)}; exhaustion needs {need}", ""

    def _check_no_regular_set(self, e, c, G):
        n = e.degree
        sizes, wit, exhaustive = self.regular_sizes(e.id)
        if exhaustive:
            if not sizes:
                return CONFIRMED, "", "", ""
            k = min(sizes)
            return REFUTED, _sizes_text(sizes), "regular sets exist", "y=" + format_set(wit[k])
        if comb(n, n // 2) < G.order:
            return CONFIRMED, "", "", f"counting bound C({n},{n // 2}) < |G|"
        return UNKNOWN, "", f"exhaustion needs --regset-budget >= {(1 << n) * len(G.generators)}", ""

    def _defining_search(self, G: PermGroup, gid: str, sizes: Sequence[int], test):
        """First set per size passing ``test``, skipping sets whose orbit is
        preserved by a permutation already known to lie outside ``G``."""
        found: dict[int, int] = {}
        extras: list[Permutation] = []
        orbs = self.orbits(gid) if gid else all_set_orbits(G, self.budget.scan_budget)
        for k in sizes:
            for o in orbs:
                if o.cardinality != k:
                    continue
                fam = subset_orbit(G, o.representative)
                fs = set(fam)
                if any(all(g.image_mask(m) in fs for m in fam) for g in extras):
                    continue
                ok, extra = test(o.representative)
                if ok:
                    found[k] = o.representative
                    break
                if extra is not None:
                    extras.append(extra)
        return found

    def _check_defined_by(self, e, c, G):
        n = e.degree
        self.budget.check_degree(n, "invariance group")
        if c.sets:
            seeds = _masks(c.sets, n)
            H = invariance_group(orbit_relation(G, seeds), self.budget)
            if H.order == G.order and G.is_subgroup_of(H):
                return CONFIRMED, "", "", "x=" + ";".join(format_set(s) for s in seeds)
            return REFUTED, f"invariance group of order {H.order}", "seeds do not define G", ""
        sizes = c.sizes.resolve(range(1, n))

        def test(x):
            H = invariance_group(orbit_relation(G, [x]), self.budget)
            if H.order == G.order:
                return True, None
            extra = next(h for h in H.generators if h not in G)
            return False, extra

        found = self._defining_search(G, e.id, sizes, test)
        return self._sizes_verdict(sizes, found, "defines G")

    @staticmethod
    def _sizes_verdict(sizes, found, what):
        missing = [k for k in sizes if k not in found]
        if missing:
            return REFUTED, _sizes_text(sorted(found)), f"no set of size {_sizes_text(missing)} {what}", ""
        return CONFIRMED, "", "", "; ".join(f"{k}:{format_set(found[k])}" for k in sizes)

    def _check_defined_in(self, e, c, G):
        n = e.degree
        P = self.group(c.target)
        if P is None:
            return UNKNOWN, "", f"no group {c.target} in the catalog", ""
        if P.degree != n:
            return UNKNOWN, "", f"{c.target} has degree {P.degree}", ""
        res = conjugate_into(G, P, self.budget)
        if res.status == NOT_CONJUGATE:
            return REFUTED, f"not contained in any conjugate of {c.target}", res.reason, ""
        if res.status != CONJUGATE:
            return UNKNOWN, "", res.reason, ""
        conj = res.witness
        Gc = _conjugated(G, conj)
        note = "" if conj.is_identity() else f" (conjugated by {print_cycles(conj)})"
        if c.sets:
            seeds = [conj.image_mask(m) for m in _masks(c.sets, n)]
            if is_defined_in(Gc, seeds, P, self.budget):
                return CONFIRMED, "", "", "x=" + ";".join(map(format_set, _masks(c.sets, n))) + note
            return REFUTED, "a larger subgroup of the target preserves the seed orbits", "", ""
        sizes = c.sizes.resolve(range(1, n))

        def test(x):
            return is_defined_in(Gc, [x], P, self.budget), None

        found = self._defining_search(Gc, "", sizes, test)
        ci = ~conj
        found = {k: ci.image_mask(x) for k, x in found.items()}
        verdict = self._sizes_verdict(sizes, found, f"defines G in {c.target}")
        if verdict[0] == CONFIRMED and note:
            verdict = (verdict[0], verdict[1], verdict[2], verdict[3] + note)
        return verdict

    def _check_aut_of(self, e, c, G):
        n = e.degree
        self.budget.check_degree(n, "invariance group")
        R = self._aut_relation(c, n)
        H = invariance_group(R, self.budget)
        if H.order == G.order and G.is_subgroup_of(H):
            return CONFIRMED, "", "", f"|R|={len(R)}"
        return REFUTED, f"invariance group of order {H.order}", "", ""

    def _check_conjugate(self, e, c, G):
        T = self.group(c.target)
        if T is None:
            return UNKNOWN, "", f"no group {c.target} in the catalog", ""
        if T.degree != G.degree:
            return REFUTED, f"degree {T.degree}", "degrees differ", ""
        res = conjugate_in_sym(G, T, self.budget)
        if res.status == CONJUGATE:
            return CONFIRMED, "", "", "c=" + print_cycles(res.witness)
        if res.status == NOT_CONJUGATE:
            return REFUTED, "not conjugate", res.reason, ""
        return UNKNOWN, "", res.reason, ""

    def _rg(self, G):
        v = decide_relation_group(G, self.budget)
        if v.status not in (RG, NOT_RG):
            raise _Outcome(UNKNOWN, reason=v.reason)
        return v

    def _check_rg(self, e, c, G):
        v = self._rg(G)
        if v.is_rg:
            return CONFIRMED, "", "", "x=" + ";".join(format_set(m) for m in v.witness)
        return REFUTED, "not RG", "", ""

    def _check_not_rg(self, e, c, G):
        v = self._rg(G)
        if not v.is_rg:
            cert = ("universal " + print_cycles(v.universal)) if v.universal is not None \
                else f"{len(v.certificate)} unions"
            return CONFIRMED, "", "", cert
        return REFUTED, "RG", "", "x=" + ";".join(format_set(m) for m in v.witness)

    def _check_all_subgroups_rg(self, e, c, G):
        for inst in self.lemma_instances(e):
            seeds, ctx, y = inst
            if check_lemma31_i(G, seeds, ctx, y, self.budget):
                R = orbit_relation(G, seeds).union(ctx)
                return CONFIRMED, "", "", f"basic lemma: y={format_set(y)}, arity {_sizes_text(R.arity)}"
        subs = enumerate_subgroups(G, self.budget.subgroup_order)
        for S in subs:
            v = decide_relation_group(S, self.budget)
            if v.status == NOT_RG:
                gens = " ".join(print_cycles(g) for g in S.generators)
                return REFUTED, f"subgroup of order {S.order} is not RG", "", gens
            if v.status != RG:
                return UNKNOWN, "", v.reason, ""
        return CONFIRMED, "", "", f"{len(subs)} subgroups decided"

    # -- basic lemma --------------------------------------------------------------

    def lemma_instances(self, e: CatalogEntry):
        """``(seeds, context, y)`` triples from the entry's own claims where
        ``y`` is a claimed regular set whose size is not an arity of the
        claimed defining relation."""
        G = self.group(e.id)
        n = e.degree
        if G is None or n > self.budget.max_degree_exact:
            return
        ys = self._claimed_regular_sets(e, G)
        if not ys:
            return
        for seeds, ctx in self._claimed_definitions(e, G):
            ar = orbit_relation(G, seeds).union(ctx).arity
            for y in ys:
                if popcount(y) not in ar:
                    yield seeds, ctx, y
                    break

    def _claimed_regular_sets(self, e, G) -> list[int]:
        n = e.degree
        out = []
        sizes, wit, exhaustive = set(), {}, False
        for c in e.claims:
            if c.kind == "regular-set" and c.sets:
                try:
                    out.append(c.sets[0].mask(n))
                except ValueError:
                    pass
            elif c.kind in ("regular-set", "regular-set-sizes"):
                if not exhaustive:
                    sizes, wit, exhaustive = self.regular_sizes(e.id)
                feasible = [k for k in range(n + 1) if comb(n, k) >= G.order]
                for k in c.sizes.resolve(feasible):
                    if k in wit:
                        out.append(wit[k])
        return out

    def _claimed_definitions(self, e, G):
        n = e.degree
        for c in e.claims:
            try:
                if c.kind == "defined-by" and c.sets:
                    yield [s.mask(n) for s in c.sets], None
                elif c.kind == "defined-in" and c.sets:
                    ctx = self._context_for(G, c.target)
                    if ctx is not None:
                        yield [s.mask(n) for s in c.sets], ctx
                elif c.kind == "aut-of":
                    own = [t for t in c.groups if t[0] == e.id]
                    rest = [t for t in c.groups if t[0] != e.id]
                    if own:
                        seeds = [s.mask(n) for s in own[0][1]]
                        ctx = None
                        for gid, sets in rest:
                            H = self.group(gid)
                            if H is None or H.degree != n:
                                raise ValueError(gid)
                            ctx = orbit_relation(H, [s.mask(n) for s in sets]).union(ctx)
                        yield seeds, ctx
            except (ValueError, _Outcome):
                continue


# ---------------------------------------------------------------------------
# catalog-wide runs

_worker: Verifier | None = None


def _init_worker(entries, budget, seed):
    global _worker
    _worker = Verifier(entries, budget, seed)


def _run_one(args):
    idx, timings = args
    return _worker.verify_entry(_worker.entries[idx], timings)


def worker_count() -> int:
    raw = os.environ.get("RELKIT_THREADS", "1").strip() or "1"
    n = int(raw)
    if n <= 0:
        n = os.cpu_count() or 1
    return n


def verify_catalog(entries: Sequence[CatalogEntry], selected: Sequence[str] | None = None,
                   budget: Budget = DEFAULT, workers: int | None = None,
                   timings: bool = False, seed: int = 0) -> list[ClaimReport]:
    """Reports for the selected entries (default all), in catalog order."""
    entries = list(entries)
    chosen = set(selected) if selected is not None else None
    idxs = [i for i, e in enumerate(entries) if chosen is None or e.id in chosen]
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(idxs) <= 1:
        _init_worker(entries, budget, seed)
        chunks = [_run_one((i, timings)) for i in idxs]
    else:
        # slow entries first would balance better, but map keeps catalog order
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker,
                                 initargs=(entries, budget, seed)) as pool:
            chunks = list(pool.map(_run_one, [(i, timings) for i in idxs], chunksize=1))
    return [r for chunk in chunks for r in chunk]


def counts(reports: Iterable[ClaimReport]) -> dict[str, int]:
    out = {v: 0 for v in VERDICTS}
    for r in reports:
        out[r.verdict] += 1
    return out


def format_text(reports: Sequence[ClaimReport], timings: bool = False) -> str:
    main = [r for r in reports if r.verdict != TRUSTED]
    trusted = [r for r in reports if r.verdict == TRUSTED]
    w_id = max((len(r.entry) for r in reports), default=0)
    w_claim = max((len(r.claim) for r in reports), default=0)

    def line(r: ClaimReport) -> str:
        parts = [r.entry.ljust(w_id), r.claim.ljust(w_claim), r.verdict.upper().ljust(9)]
        extra = []
        if r.value:
            extra.append(f"computed {r.value}")
        if r.reason:
            extra.append(r.reason)
        if r.details:
            extra.append(r.details)
        if timings:
            extra.append(f"{r.elapsed:.3f}s")
        return "  ".join(parts + ["; ".join(extra)]).rstrip()

    out = [line(r) for r in main]
    if trusted:
        out += ["", "TRUSTED (not recomputed)"]
        out += [line(r) for r in trusted]
    c = counts(reports)
    out += ["", "  ".join(f"{k} {c[k]}" for k in VERDICTS)]
    return "\n".join(out) + "\n"


def format_records(reports: Sequence[ClaimReport], timings: bool = False) -> str:
    return "".join(r.record(timings) + "\n" for r in reports)
