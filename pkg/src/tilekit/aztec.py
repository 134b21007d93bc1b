"""Aztec diamond regions, dominos, tilings and k-tilings.

Coordinates are centred: cell ``(a, b)`` is the unit square with lower-left
corner ``(a, b)``, and it lies in the rank-m diamond iff its centre satisfies
``|a + 1/2| + |b + 1/2| <= m``.  A cell is gray (shaded) iff ``a + b + m`` is
even.  Domino types, with gray meaning the shaded square:

    I   horizontal, gray on the right
    II  vertical, gray on top
    III horizontal, gray on the left
    IV  vertical, gray on the bottom
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

DEFAULT_ENUMERATION_CAP = 5

I, II, III, IV = 1, 2, 3, 4
TYPE_NAMES = {I: "I", II: "II", III: "III", IV: "IV"}


class Domino(NamedTuple):
    x: int
    y: int
    o: str  # "h" or "v"

    def cells(self) -> tuple:
        if self.o == "h":
            return ((self.x, self.y), (self.x + 1, self.y))
        return ((self.x, self.y), (self.x, self.y + 1))


def in_region(a: int, b: int, m: int) -> bool:
    return abs(2 * a + 1) + abs(2 * b + 1) <= 2 * m


def region_cells(m: int) -> list:
    return [(a, b) for b in range(-m, m) for a in range(-m, m) if in_region(a, b, m)]


def is_gray(a: int, b: int, m: int) -> bool:
    return (a + b + m) % 2 == 0


def slice_index(a: int, b: int, m: int) -> int:
    """Diagonal slice 0..2m holding the cell; even slices are gray."""
    return b - a + m


def domino_type(d: Domino, m: int) -> int:
    if d.o == "h":
        return I if is_gray(d.x + 1, d.y, m) else III
    return II if is_gray(d.x, d.y + 1, m) else IV


def domino_from_cells(c1, c2) -> Domino:
    (a1, b1), (a2, b2) = sorted((tuple(c1), tuple(c2)))
    if b1 == b2 and a2 == a1 + 1:
        return Domino(a1, b1, "h")
    if a1 == a2 and b2 == b1 + 1:
        return Domino(a1, b1, "v")
    raise ValueError(f"cells {c1}, {c2} are not adjacent")


@dataclass(frozen=True)
class Tiling:
    rank: int
    dominos: tuple  # sorted tuple of Domino
    _cells: dict = field(default=None, compare=False, hash=False, repr=False)

    @classmethod
    def make(cls, rank: int, dominos, validate: bool = True) -> "Tiling":
        t = cls(rank, tuple(sorted(Domino(int(d[0]), int(d[1]), d[2]) for d in dominos)))
        if validate:
            t.validate()
        return t

    def cell_map(self) -> dict:
        """cell -> covering domino."""
        if self._cells is None:
            cm = {}
            for d in self.dominos:
                for c in d.cells():
                    cm[c] = d
            object.__setattr__(self, "_cells", cm)
        return self._cells

    def validate(self) -> None:
        seen = set()
        for d in self.dominos:
            if d.o not in ("h", "v"):
                raise ValueError(f"bad orientation in {d}")
            for c in d.cells():
                if not in_region(c[0], c[1], self.rank):
                    raise ValueError(f"domino {d} leaves the region")
                if c in seen:
                    raise ValueError(f"cell {c} covered twice")
                seen.add(c)
        if len(seen) != 2 * self.rank * (self.rank + 1):
            raise ValueError("tiling does not cover the region")

    def types(self) -> dict:
        return {d: domino_type(d, self.rank) for d in self.dominos}

    def type_counts(self) -> tuple:
        counts = [0, 0, 0, 0]
        for d in self.dominos:
            counts[domino_type(d, self.rank) - 1] += 1
        return tuple(counts)


@dataclass(frozen=True)
class KTiling:
    rank: int
    layers: tuple  # Tiling per color, color 1 first

    @classmethod
    def make(cls, layers) -> "KTiling":
        layers = tuple(layers)
        if not layers:
            raise ValueError("a k-tiling needs at least one color")
        rank = layers[0].rank
        if any(t.rank != rank for t in layers):
            raise ValueError("layers have different ranks")
        return cls(rank, layers)

    @property
    def k(self) -> int:
        return len(self.layers)


def all_horizontal(m: int) -> Tiling:
    doms = []
    for b in range(-m, m):
        # row b spans a in [-w, w-1]
        w = m - b if b >= 0 else m + b + 1
        for a in range(-w, w, 2):
            doms.append(Domino(a, b, "h"))
    return Tiling.make(m, doms)


def all_vertical(m: int) -> Tiling:
    return reflect_diagonal(all_horizontal(m))


def flippable_blocks(t: Tiling) -> list:
    """Lower-left corners of 2x2 squares filled by two parallel dominos."""
    cm = t.cell_map()
    out = []
    for d in t.dominos:
        if d.o == "h":
            if cm.get((d.x, d.y + 1)) == Domino(d.x, d.y + 1, "h"):
                out.append((d.x, d.y))
        else:
            if cm.get((d.x + 1, d.y)) == Domino(d.x + 1, d.y, "v"):
                out.append((d.x, d.y))
    return sorted(out)


def apply_flip(t: Tiling, block) -> Tiling:
    a, b = block
    doms = set(t.dominos)
    hpair = {Domino(a, b, "h"), Domino(a, b + 1, "h")}
    vpair = {Domino(a, b, "v"), Domino(a + 1, b, "v")}
    if hpair <= doms:
        doms = (doms - hpair) | vpair
    elif vpair <= doms:
        doms = (doms - vpair) | hpair
    else:
        raise ValueError(f"block {block} is not flippable")
    return Tiling.make(t.rank, doms, validate=False)


def reflect_diagonal(t: Tiling) -> Tiling:
    """Reflect across y = x; swaps types I<->II and III<->IV."""
    doms = [Domino(d.y, d.x, "v" if d.o == "h" else "h") for d in t.dominos]
    return Tiling.make(t.rank, doms, validate=False)


def _bfs(m: int) -> Iterator[Tiling]:
    start = all_horizontal(m)
    seen = {start.dominos}
    queue = deque([start])
    while queue:
        t = queue.popleft()
        yield t
        for blk in flippable_blocks(t):
            n = apply_flip(t, blk)
            if n.dominos not in seen:
                seen.add(n.dominos)
                queue.append(n)


def enumerate_tilings(m: int, cap: int = DEFAULT_ENUMERATION_CAP) -> list:
    """All domino tilings of the rank-m diamond, in canonical sorted order."""
    if m < 1:
        raise ValueError("rank must be positive")
    if m > cap:
        raise ValueError(f"rank {m} exceeds the enumeration cap {cap}")
    return sorted(_bfs(m), key=lambda t: t.dominos)


def tiling_count(m: int) -> int:
    """Closed-form count 2^(m(m+1)/2), used as an oracle."""
    return 2 ** (m * (m + 1) // 2)
