"""Plain-text catalog of groups and the claims made about them.

A catalog is a sequence of stanzas::

    [entry]
    id = G_7_1
    degree = 7
    parent = PSL_3_2
    gen = (2,3,4,7)(5,6)
    gen = (2,5,3)(4,6,7)
    claim = order 24
    claim = defined-in PSL_3_2 size 3
    claim = no-regular-set
    note = transitive

Lines starting with ``#`` are comments. Claim arguments use 1-based sets
written ``[1,2,3]``, ``[5..10]`` or ``X-[1,2]`` (complement in the domain).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable

from .perm import CycleParseError, Permutation, parse_cycles

KEYS = ("id", "degree", "parent", "same-as", "gen", "claim", "suspect", "note")


class CatalogError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


# ---------------------------------------------------------------------------
# claim arguments


@dataclass(frozen=True)
class SetSpec:
    """A 1-based point set as written in the catalog.

    ``points`` may mention points outside the domain; such sets are kept
    verbatim and rejected at verification time.
    """

    points: tuple[int, ...]
    complement: bool = False

    def mask(self, degree: int) -> int:
        bad = [p for p in self.points if not 1 <= p <= degree]
        if bad:
            raise ValueError(f"point {bad[0]} outside 1..{degree}")
        m = 0
        for p in self.points:
            m |= 1 << (p - 1)
        return ((1 << degree) - 1) ^ m if self.complement else m

    def __str__(self) -> str:
        body = "[" + ",".join(map(str, self.points)) + "]"
        return "X-" + body if self.complement else body


@dataclass(frozen=True)
class SizeSpec:
    """``k``, ``a..b``, ``{a,b,...}`` or ``any``."""

    sizes: tuple[int, ...] | None  # None means any

    def resolve(self, feasible: Iterable[int]) -> tuple[int, ...]:
        return tuple(feasible) if self.sizes is None else self.sizes

    def __str__(self) -> str:
        if self.sizes is None:
            return "any"
        s = self.sizes
        if len(s) == 1:
            return str(s[0])
        if len(s) > 2 and s == tuple(range(s[0], s[-1] + 1)):
            return f"{s[0]}..{s[-1]}"
        return "{" + ",".join(map(str, s)) + "}"


_SET_RE = re.compile(r"(X-)?\[([^\]]*)\]")


def parse_set(text: str) -> SetSpec:
    text = text.strip()
    m = _SET_RE.fullmatch(text)
    if not m:
        raise ValueError(f"bad set {text!r}")
    body = m.group(2).replace(" ", "")
    points: list[int] = []
    if body:
        for part in body.split(","):
            if ".." in part:
                a, b = part.split("..")
                points.extend(range(int(a), int(b) + 1))
            else:
                points.append(int(part))
    return SetSpec(tuple(points), bool(m.group(1)))


def parse_sizes(text: str) -> SizeSpec:
    text = text.replace(" ", "")
    if text == "any":
        return SizeSpec(None)
    if text.startswith("{") and text.endswith("}"):
        vals = tuple(sorted({int(v) for v in text[1:-1].split(",")}))
        return SizeSpec(vals)
    if ".." in text:
        a, b = (int(v) for v in text.split(".."))
        if a > b:
            raise ValueError(f"empty range {text}")
        return SizeSpec(tuple(range(a, b + 1)))
    return SizeSpec((int(text),))


@dataclass(frozen=True)
class Claim:
    """One checkable statement. ``kind`` picks the verifier."""

    kind: str
    target: str | None = None  # entry id the claim refers to
    sets: tuple[SetSpec, ...] = ()
    sizes: SizeSpec | None = None
    number: int | None = None
    groups: tuple[tuple[str, tuple[SetSpec, ...]], ...] = ()  # aut-of terms
    line: int = field(default=0, compare=False)

    def __str__(self) -> str:
        k = self.kind
        if k in ("order", "subgroups"):
            return f"{k} {self.number}"
        if k == "orbit-size":
            return f"{k} {self.sizes} {self.number}"
        if k == "regular-set":
            return f"{k} size {self.sizes}" if self.sizes else f"{k} {self.sets[0]}"
        if k == "regular-set-sizes":
            return f"{k} {self.sizes}"
        if k == "defined-by":
            return f"{k} size {self.sizes}" if self.sizes else f"{k} " + ";".join(map(str, self.sets))
        if k == "defined-in":
            tail = f"size {self.sizes}" if self.sizes else ";".join(map(str, self.sets))
            return f"{k} {self.target} {tail}"
        if k == "aut-of":
            terms = ["{} {}".format(g, " ".join(map(str, ss))) for g, ss in self.groups]
            return f"{k} " + "; ".join(terms)
        if k == "conjugate":
            return f"{k} {self.target}"
        return k


_ID_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\+*")
SIMPLE_KINDS = ("no-regular-set", "rg", "not-rg", "all-subgroups-rg", "maximal-not-set-transitive")


def _split_sets(text: str) -> list[str]:
    """Set tokens in ``text`` separated by spaces or semicolons."""
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        if text[pos] in " ;":
            pos += 1
            continue
        m = _SET_RE.match(text, pos)
        if not m:
            raise ValueError(f"bad set list {text!r}")
        out.append(m.group(0))
        pos = m.end()
    if not out:
        raise ValueError("empty set list")
    return out


def parse_claim(text: str, line: int = 0) -> Claim:
    text = " ".join(text.split())
    kind, _, rest = text.partition(" ")
    try:
        if kind in SIMPLE_KINDS:
            if rest:
                raise ValueError(f"{kind} takes no arguments")
            return Claim(kind, line=line)
        if kind in ("order", "subgroups"):
            return Claim(kind, number=int(rest), line=line)
        if kind == "orbit-size":
            k, length = rest.split()
            return Claim(kind, sizes=parse_sizes(k), number=int(length), line=line)
        if kind in ("regular-set", "defined-by"):
            if rest.startswith("size "):
                return Claim(kind, sizes=parse_sizes(rest[5:]), line=line)
            sets = tuple(parse_set(s) for s in _split_sets(rest))
            if kind == "regular-set" and len(sets) != 1:
                raise ValueError("regular-set takes one set")
            return Claim(kind, sets=sets, line=line)
        if kind == "regular-set-sizes":
            return Claim(kind, sizes=parse_sizes(rest), line=line)
        if kind == "defined-in":
            target, _, tail = rest.partition(" ")
            if not _ID_RE.fullmatch(target):
                raise ValueError(f"bad id {target!r}")
            if tail.startswith("size "):
                return Claim(kind, target=target, sizes=parse_sizes(tail[5:]), line=line)
            return Claim(kind, target=target, sets=tuple(parse_set(s) for s in _split_sets(tail)),
                         line=line)
        if kind == "aut-of":
            terms = []
            for term in rest.split(";"):
                gid, _, sets = term.strip().partition(" ")
                if not _ID_RE.fullmatch(gid):
                    raise ValueError(f"bad id {gid!r}")
                terms.append((gid, tuple(parse_set(s) for s in _split_sets(sets))))
            return Claim(kind, groups=tuple(terms), line=line)
        if kind == "conjugate":
            if not _ID_RE.fullmatch(rest):
                raise ValueError(f"bad id {rest!r}")
            return Claim(kind, target=rest, line=line)
    except ValueError as exc:
        raise CatalogError(f"bad claim {text!r}: {exc}", line) from None
    raise CatalogError(f"unknown claim kind {kind!r}", line)


# ---------------------------------------------------------------------------
# entries


@dataclass
class CatalogEntry:
    id: str
    degree: int
    generators: list[str] = field(default_factory=list)
    claims: list[Claim] = field(default_factory=list)
    parent: str | None = None
    same_as: str | None = None
    suspect: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    line: int = 0

    def permutations(self) -> list[Permutation]:
        return [parse_cycles(g, self.degree) for g in self.generators]

    def to_text(self) -> str:
        out = ["[entry]", f"id = {self.id}", f"degree = {self.degree}"]
        if self.parent:
            out.append(f"parent = {self.parent}")
        if self.same_as:
            out.append(f"same-as = {self.same_as}")
        out += [f"gen = {g}" for g in self.generators]
        out += [f"claim = {c}" for c in self.claims]
        out += [f"suspect = {s}" for s in self.suspect]
        out += [f"note = {n}" for n in self.notes]
        return "\n".join(out) + "\n"


def parse_catalog(text: str) -> list[CatalogEntry]:
    entries: list[CatalogEntry] = []
    cur: dict | None = None

    def finish():
        if cur is None:
            return
        if "id" not in cur:
            raise CatalogError("stanza without id", cur["line"])
        if "degree" not in cur:
            raise CatalogError(f"entry {cur['id']} has no degree", cur["line"])
        e = CatalogEntry(cur["id"], cur["degree"], cur["gen"], cur["claim"], cur.get("parent"),
                         cur.get("same-as"), cur["suspect"], cur["note"], cur["line"])
        for g, ln in zip(e.generators, cur["gen_lines"]):
            try:
                parse_cycles(g, e.degree)
            except CycleParseError as exc:
                raise CatalogError(f"generator of {e.id}: {exc}", ln) from None
        entries.append(e)

    for ln, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        if s == "[entry]":
            finish()
            cur = {"line": ln, "gen": [], "gen_lines": [], "claim": [], "suspect": [], "note": []}
            continue
        if cur is None:
            raise CatalogError(f"text outside a stanza: {s!r}", ln)
        key, eq, value = s.partition("=")
        key, value = key.strip(), value.strip()
        if not eq:
            raise CatalogError(f"expected 'key = value', got {s!r}", ln)
        if key not in KEYS:
            raise CatalogError(f"unknown key {key!r}", ln)
        if key == "id":
            if "id" in cur or not _ID_RE.fullmatch(value) or value.endswith("+"):
                raise CatalogError(f"bad or repeated id {value!r}", ln)
            cur["id"] = value
        elif key == "degree":
            if "degree" in cur or not value.isdigit() or not 1 <= int(value) <= 32:
                raise CatalogError(f"bad degree {value!r}", ln)
            cur["degree"] = int(value)
        elif key in ("parent", "same-as"):
            if key in cur:
                raise CatalogError(f"repeated {key}", ln)
            cur[key] = value
        elif key == "gen":
            cur["gen"].append(" ".join(value.split()))
            cur["gen_lines"].append(ln)
        elif key == "claim":
            cur["claim"].append(parse_claim(value, ln))
        else:
            cur[key].append(value)
    finish()

    by_id: dict[str, CatalogEntry] = {}
    for e in entries:
        if e.id in by_id:
            raise CatalogError(f"duplicate id {e.id}", e.line)
        by_id[e.id] = e
    for e in entries:
        for key in ("parent", "same_as"):
            ref = getattr(e, key)
            if ref is None:
                continue
            if ref not in by_id:
                raise CatalogError(f"{e.id}: unknown {key.replace('_', '-')} {ref}", e.line)
            if by_id[ref].degree != e.degree:
                raise CatalogError(f"{e.id}: {key.replace('_', '-')} {ref} has another degree", e.line)
        if e.same_as and e.generators:
            raise CatalogError(f"{e.id}: same-as entries carry no generators", e.line)
    return entries


def format_catalog(entries: Iterable[CatalogEntry]) -> str:
    return "\n".join(e.to_text() for e in entries)


def bundled_text() -> str:
    return resources.files("relkit").joinpath("data/catalog.txt").read_text(encoding="utf-8")


def bundled_catalog() -> list[CatalogEntry]:
    return parse_catalog(bundled_text())
