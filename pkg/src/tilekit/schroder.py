"""Schröder-path view of Aztec diamond tilings.

Points are stored as (X, Y2) with Y2 = 2y, so every path vertex is an
integer pair.  Relative to the lower-left corner (x, y) of its domino:

    type I   E  step (x, y+1/2)   -> (x+2, y+1/2)
    type II  NE step (x, y+1/2)   -> (x+1, y+3/2)
    type IV  SE step (x, y+3/2)   -> (x+1, y+1/2)
    type III carries no path

Path i (1-based) of a rank-m tiling runs from (-m-1+i, -i+1/2) to
(m+1-i, -i+1/2).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import Poly
from .aztec import I, II, IV, Domino, Tiling, domino_type, is_gray, region_cells
from .encodings import monomial

E, NE, SE = "E", "NE", "SE"
STEP_DELTA = {E: (2, 0), NE: (1, 2), SE: (1, -2)}


def path_start(i: int, m: int) -> tuple:
    return (-m - 1 + i, -2 * i + 1)


def path_end(i: int, m: int) -> tuple:
    return (m + 1 - i, -2 * i + 1)


@dataclass(frozen=True)
class SchroderPathFamily:
    rank: int
    paths: tuple  # per path, a tuple of step names

    def points(self, i: int) -> list:
        """Vertices of path i (1-based) in (X, 2y) coordinates."""
        p = path_start(i, self.rank)
        out = [p]
        for s in self.paths[i - 1]:
            dx, dy = STEP_DELTA[s]
            p = (p[0] + dx, p[1] + dy)
            out.append(p)
        return out

    def heights(self, i: int) -> dict:
        """X -> 2y at every integer abscissa covered by path i."""
        pts = self.points(i)
        h = {pts[0][0]: pts[0][1]}
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x1 - x0 == 2:
                h[x0 + 1] = y0
            h[x1] = y1
        return h

    def to_json(self) -> list:
        return [list(p) for p in self.paths]


def _step_of(d: Domino, m: int):
    ty = domino_type(d, m)
    if ty == I:
        return E, (d.x, 2 * d.y + 1)
    if ty == II:
        return NE, (d.x, 2 * d.y + 1)
    if ty == IV:
        return SE, (d.x, 2 * d.y + 3)
    return None, None


def tiling_to_paths(t: Tiling) -> SchroderPathFamily:
    m = t.rank
    starts = {}
    for d in t.dominos:
        step, p = _step_of(d, m)
        if step is not None:
            starts[p] = step
    paths = []
    for i in range(1, m + 1):
        p, end = path_start(i, m), path_end(i, m)
        steps = []
        while p != end:
            s = starts.get(p)
            if s is None:
                raise ValueError(f"path {i} breaks at {p}")
            steps.append(s)
            dx, dy = STEP_DELTA[s]
            p = (p[0] + dx, p[1] + dy)
        paths.append(tuple(steps))
    return SchroderPathFamily(m, tuple(paths))


def paths_to_tiling(fam: SchroderPathFamily) -> Tiling:
    """Inverse of tiling_to_paths; uncovered cells are filled by type III."""
    m = fam.rank
    if len(fam.paths) != m:
        raise ValueError(f"expected {m} paths, got {len(fam.paths)}")
    doms = []
    for i in range(1, m + 1):
        pts = fam.points(i)
        if pts[-1] != path_end(i, m):
            raise ValueError(f"path {i} does not end at {path_end(i, m)}")
        for (x0, y0), s in zip(pts, fam.paths[i - 1]):
            if s == E:
                doms.append(Domino(x0, (y0 - 1) // 2, "h"))
            elif s == NE:
                doms.append(Domino(x0, (y0 - 1) // 2, "v"))
            elif s == SE:
                doms.append(Domino(x0, (y0 - 3) // 2, "v"))
            else:
                raise ValueError(f"unknown step {s!r}")
    covered = set()
    for d in doms:
        for c in d.cells():
            if c in covered:
                raise ValueError("paths intersect")
            covered.add(c)
    for a, b in region_cells(m):
        if (a, b) in covered or not is_gray(a, b, m):
            continue
        doms.append(Domino(a, b, "h"))
        covered.update({(a, b), (a + 1, b)})
    return Tiling.make(m, doms)


def path_xy_weight(fam: SchroderPathFamily) -> Poly:
    """Purple-gray xy-weight read from the steps.

    x_i counts SE steps starting on slice 2i-1, y_i counts NE steps whose
    domino's lower cell lies on slice 2i-1.
    """
    m = fam.rank
    xs, ys = [0] * m, [0] * m
    for i in range(1, m + 1):
        pts = fam.points(i)
        for (x0, y0), s in zip(pts, fam.paths[i - 1]):
            if s == SE:
                j = (y0 - 1) // 2 - x0 + m  # slice of the upper cell
                xs[(j + 1) // 2 - 1] += 1
            elif s == NE:
                j = (y0 - 1) // 2 - x0 + m  # slice of the lower cell
                ys[(j + 1) // 2 - 1] += 1
    return monomial(xs, ys)


def pair_path_interactions(blue: SchroderPathFamily, red: SchroderPathFamily) -> int:
    """Interactions between a smaller color (blue) and a larger one (red).

    Counted are shared NE steps, and shared vertices where the blue path was
    strictly higher one unit to the left (blue meets red from above).
    """
    n = 0
    bsteps, rsteps = _step_map(blue), _step_map(red)
    for p, s in bsteps.items():
        if s == NE and rsteps.get(p) == NE:
            n += 1
    bh = _all_heights(blue)
    rh = _all_heights(red)
    bverts = _vertices(blue)
    for p in _vertices(red) & bverts:
        x, y = p
        hb = [h[x - 1] for h in bh if x - 1 in h and h.get(x) == y]
        hr = [h[x - 1] for h in rh if x - 1 in h and h.get(x) == y]
        if hb and hr and hb[0] > hr[0]:
            n += 1
    return n


def _step_map(fam: SchroderPathFamily) -> dict:
    out = {}
    for i in range(1, fam.rank + 1):
        for p, s in zip(fam.points(i), fam.paths[i - 1]):
            out[p] = s
    return out


def _vertices(fam: SchroderPathFamily) -> set:
    out = set()
    for i in range(1, fam.rank + 1):
        out.update(fam.points(i))
    return out


def _all_heights(fam: SchroderPathFamily) -> list:
    return [fam.heights(i) for i in range(1, fam.rank + 1)]


def path_interactions(families: Sequence[SchroderPathFamily]) -> int:
    k = len(families)
    return sum(pair_path_interactions(families[a], families[b])
               for a in range(k) for b in range(a + 1, k))


def frozen_prefix(i: int, a: int, k: int, m: int) -> int:
    """Minimum number of leading E steps of path i of color a when t = 0."""
    if not (1 <= i <= m and 1 <= a <= k):
        raise ValueError("path index or color out of range")
    return min((k - 1) * i + 1 - a, m - i + 1)


def leading_e_steps(path: Sequence[str]) -> int:
    n = 0
    for s in path:
        if s != E:
            break
        n += 1
    return n


def ordering_holds(blue: SchroderPathFamily, red: SchroderPathFamily) -> bool:
    """Blue path i weakly below red path i and strictly above red path i+1."""
    m = blue.rank
    for i in range(1, m + 1):
        hb = blue.heights(i)
        hr = red.heights(i)
        if any(hb[x] > hr[x] for x in hb.keys() & hr.keys()):
            return False
        if i < m:
            hn = red.heights(i + 1)
            if any(hb[x] <= hn[x] for x in hb.keys() & hn.keys()):
                return False
    return True
