"""Permutations of {0, ..., n-1} with 1-based cycle notation for I/O.

Products act on the right: ``(g * h)`` applies ``g`` first, so that
``i ^ (g*h) == (i ^ g) ^ h``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

MAX_DEGREE = 32


class CycleParseError(ValueError):
    """Malformed cycle string; ``offset`` is the 0-based character index."""

    def __init__(self, message: str, text: str, offset: int):
        super().__init__(f"{message} at offset {offset} in {text!r}")
        self.text = text
        self.offset = offset


class Permutation:
    """Immutable permutation given by its image table."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        n = len(images)
        if not 1 <= n <= MAX_DEGREE:
            raise ValueError(f"degree must be in 1..{MAX_DEGREE}, got {n}")
        if sorted(images) != list(range(n)):
            raise ValueError(f"not a permutation: {images}")
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "_hash", hash(images))

    @classmethod
    def _trusted(cls, images: tuple) -> "Permutation":
        # skips validation; callers guarantee a bijection
        p = object.__new__(cls)
        object.__setattr__(p, "images", images)
        object.__setattr__(p, "_hash", hash(images))
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __repr__(self) -> str:
        return f"Permutation.parse({print_cycles(self)!r}, {self.degree})"

    def __str__(self) -> str:
        return print_cycles(self)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 0-based, smallest point first, sorted by first point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Sorted cycle lengths including fixed points."""
        lengths = [len(c) for c in self.cycles()]
        fixed = self.degree - sum(lengths)
        return tuple(sorted(lengths + [1] * fixed))

    def order(self) -> int:
        from math import lcm

        return lcm(1, *(len(c) for c in self.cycles()))

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def image_mask(self, mask: int) -> int:
        out = 0
        imgs = self.images
        i = 0
        while mask:
            if mask & 1:
                out |= 1 << imgs[i]
            mask >>= 1
            i += 1
        return out

    @classmethod
    def parse(cls, text: str, degree: int) -> "Permutation":
        return parse_cycles(text, degree)


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse a product of disjoint cycles of 1-based points.

    >>> parse_cycles("(1,2,5)(3,4,6)", 6).images
    (1, 4, 3, 5, 0, 2)
    """
    if not 1 <= degree <= MAX_DEGREE:
        raise ValueError(f"degree must be in 1..{MAX_DEGREE}, got {degree}")
    images = list(range(degree))
    used = [False] * degree
    pos = 0
    n = len(text)

    def skip_ws(p):
        while p < n and text[p].isspace():
            p += 1
        return p

    pos = skip_ws(pos)
    while pos < n:
        if text[pos] != "(":
            raise CycleParseError("expected '('", text, pos)
        pos = skip_ws(pos + 1)
        cycle: list[int] = []
        if pos < n and text[pos] == ")":
            pos = skip_ws(pos + 1)
            continue
        while True:
            start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            if pos == start:
                raise CycleParseError("expected a point", text, start)
            point = int(text[start:pos])
            if not 1 <= point <= degree:
                raise CycleParseError(f"point {point} outside 1..{degree}", text, start)
            if used[point - 1]:
                raise CycleParseError(f"point {point} repeated", text, start)
            used[point - 1] = True
            cycle.append(point - 1)
            pos = skip_ws(pos)
            if pos >= n:
                raise CycleParseError("unterminated cycle", text, pos)
            if text[pos] == ",":
                pos = skip_ws(pos + 1)
                continue
            if text[pos] == ")":
                pos = skip_ws(pos + 1)
                break
            raise CycleParseError("expected ',' or ')'", text, pos)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            images[a] = b
    return Permutation._trusted(tuple(images))


def print_cycles(g: Permutation) -> str:
    """Canonical 1-based cycle string; ``"()"`` for the identity."""
    cycles = g.cycles()
    if not cycles:
        return "()"
    return "".join("(" + ",".join(str(i + 1) for i in c) + ")" for c in cycles)


def compose(g: Permutation, h: Permutation) -> Permutation:
    """The product ``gh``: apply ``g`` first, then ``h``."""
    if g.degree != h.degree:
        raise ValueError(f"degree mismatch: {g.degree} vs {h.degree}")
    return Permutation._trusted(tuple(map(h.images.__getitem__, g.images)))


def inverse(g: Permutation) -> Permutation:
    inv = [0] * g.degree
    for i, x in enumerate(g.images):
        inv[x] = i
    return Permutation._trusted(tuple(inv))


def from_cycles(cycles: Iterable[Iterable[int]], degree: int) -> Permutation:
    """Build from 0-based cycles (no overlap check beyond bijectivity)."""
    images = list(range(degree))
    for c in cycles:
        c = list(c)
        for a, b in zip(c, c[1:] + c[:1]):
            images[a] = b
    return Permutation(images)
