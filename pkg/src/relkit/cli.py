"""Command-line driver: ``relkit verify`` over a catalog plus ad-hoc
single-group queries.

Exit codes: 0 no refutation, 1 refutations present, 2 input error,
3 budget refusal.
"""

from __future__ import annotations

import argparse
import fnmatch
import sys
from pathlib import Path

from .budget import DEFAULT, Budget, BudgetExceeded
from .catalog import CatalogError, bundled_text, parse_catalog, parse_set
from .certify import decide_relation_group, orbit_closure
from .group import PermGroup
from .perm import CycleParseError, parse_cycles, print_cycles
from .relation import Relation, invariance_group, orbit_relation
from .report import REFUTED, format_records, format_text, verify_catalog
from .setorbits import all_set_orbits, format_set, orbit_table, regular_set_sizes

EXIT_OK, EXIT_REFUTED, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

_BUDGET_FLAGS = {
    "max_degree_exact": "--max-degree-exact",
    "scan_budget": "--scan-budget",
    "regset_budget": "--regset-budget",
    "enum_budget": "--enum-budget",
    "search_nodes": "--search-nodes",
    "union_budget": "--union-budget",
    "subgroup_order": "--subgroup-order",
    "coset_budget": "--coset-budget",
}


class InputError(ValueError):
    pass


def _add_budget(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("budgets")
    for field, flag in _BUDGET_FLAGS.items():
        g.add_argument(flag, dest=field, type=int, default=getattr(DEFAULT, field),
                       metavar="N", help=f"default {getattr(DEFAULT, field)}")


def _budget(args) -> Budget:
    return Budget(**{f: getattr(args, f) for f in _BUDGET_FLAGS})


def _degree_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            a, b = text.split("..")
            return int(a), int(b)
        return int(text), int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad degree range {text!r}") from None


def _group(args) -> PermGroup:
    try:
        gens = [parse_cycles(g, args.degree) for g in args.gens]
    except CycleParseError as exc:
        raise InputError(str(exc)) from None
    return PermGroup(gens, degree=args.degree)


def _sets(texts, degree: int) -> list[int]:
    out = []
    for t in texts:
        for part in t.split(";"):
            part = part.strip()
            if part:
                try:
                    out.append(parse_set(part).mask(degree))
                except ValueError as exc:
                    raise InputError(str(exc)) from None
    return out


# ---------------------------------------------------------------------------


def cmd_verify(args, out) -> int:
    if args.catalog:
        try:
            text = Path(args.catalog).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(str(exc)) from None
    else:
        text = bundled_text()
    entries = parse_catalog(text)
    lo, hi = args.degrees if args.degrees else (0, 10**9)
    chosen = [e.id for e in entries
              if lo <= e.degree <= hi
              and (not args.id or any(fnmatch.fnmatchcase(e.id, pat) for pat in args.id))]
    reports = verify_catalog(entries, chosen, _budget(args), workers=args.workers,
                             timings=args.timings)
    if args.format == "records":
        out.write(format_records(reports, args.timings))
    else:
        out.write(format_text(reports, args.timings))
    return EXIT_REFUTED if any(r.verdict == REFUTED for r in reports) else EXIT_OK


def cmd_orbits(args, out) -> int:
    G = _group(args)
    table = orbit_table(all_set_orbits(G, args.scan_budget))
    out.write(f"order {G.order}\n")
    for k, sizes in table.items():
        out.write(f"{k:>3}  {len(sizes):>6} orbits  sizes {' '.join(map(str, sorted(sizes)))}\n")
    return EXIT_OK


def cmd_regsets(args, out) -> int:
    G = _group(args)
    sizes, exhaustive = regular_set_sizes(G, args.regset_budget)
    kind = "exhaustive" if exhaustive else "search (lower bound)"
    out.write(f"order {G.order}\n")
    out.write(f"regular-set sizes {','.join(map(str, sorted(sizes))) or 'none'} ({kind})\n")
    return EXIT_OK


def cmd_aut(args, out) -> int:
    if args.gens:
        G = _group(args)
        seeds = _sets(args.seeds, args.degree)
        if not seeds:
            raise InputError("--gens needs --seeds")
        R = orbit_relation(G, seeds)
        if args.edges:
            R = R.union(Relation(args.degree, tuple(_sets(args.edges, args.degree))))
    else:
        R = Relation(args.degree, tuple(_sets(args.edges, args.degree)))
    H = invariance_group(R, _budget(args), args.engine)
    out.write(f"edges {len(R)}\norder {H.order}\n")
    for g in H.generators:
        out.write(f"gen {print_cycles(g)}\n")
    return EXIT_OK


def cmd_closure(args, out) -> int:
    G = _group(args)
    budget = _budget(args)
    C = orbit_closure(G, budget)
    out.write(f"order {G.order}\nclosure order {C.order}\n")
    out.write(f"orbit closed {'yes' if C.order == G.order else 'no'}\n")
    for g in C.generators:
        out.write(f"gen {print_cycles(g)}\n")
    return EXIT_OK


def cmd_rg(args, out) -> int:
    G = _group(args)
    v = decide_relation_group(G, _budget(args))
    out.write(f"order {G.order}\nstatus {v.status}\n")
    if v.witness is not None:
        out.write("witness " + ";".join(format_set(m) for m in v.witness) + "\n")
    if v.universal is not None:
        out.write(f"universal {print_cycles(v.universal)}\n")
    if v.certificate is not None:
        out.write(f"certificate {len(v.certificate)} unions\n")
    if v.reason:
        out.write(f"reason {v.reason}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="relkit", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="replay catalog claims")
    v.add_argument("catalog", nargs="?", help="catalog file (default: bundled)")
    v.add_argument("--degrees", type=_degree_range, metavar="A..B")
    v.add_argument("--id", action="append", metavar="GLOB", help="entry id pattern (repeatable)")
    v.add_argument("--format", choices=("text", "records"), default="text")
    v.add_argument("--timings", action="store_true", help="add elapsed seconds per claim")
    v.add_argument("--workers", type=int, default=None,
                   help="worker processes (default: RELKIT_THREADS, 0 = all cores)")
    _add_budget(v)
    v.set_defaults(func=cmd_verify)

    def group_cmd(name, func, helptext):
        q = sub.add_parser(name, help=helptext)
        q.add_argument("--gens", nargs="+", required=name != "aut", default=[], metavar="CYCLES")
        q.add_argument("--degree", type=int, required=True)
        _add_budget(q)
        q.set_defaults(func=func)
        return q

    group_cmd("orbits", cmd_orbits, "orbit table on subsets")
    group_cmd("regsets", cmd_regsets, "regular-set sizes")
    a = group_cmd("aut", cmd_aut, "invariance group of a relation")
    a.add_argument("--edges", nargs="+", default=[], metavar="SETS",
                   help="edges such as '[1,2];[2,3]'")
    a.add_argument("--seeds", nargs="+", default=[], metavar="SETS",
                   help="with --gens: take the union of the seed orbits")
    a.add_argument("--engine", choices=("scan", "refine"), default=None)
    group_cmd("closure", cmd_closure, "orbit closure")
    group_cmd("rg", cmd_rg, "decide whether the group is a relation group")
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if getattr(args, "command", None) == "aut" and not (args.edges or args.gens):
            raise InputError("aut needs --edges or --gens with --seeds")
        return args.func(args, out)
    except (InputError, CatalogError, ValueError) as exc:
        print(f"relkit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"relkit: budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
