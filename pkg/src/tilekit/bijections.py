"""The t=0 path-shift bijection and the reflection involution.

At t = 0 the i-th path of color a starts with at least
min((k-1)i + 1 - a, m - i + 1) horizontal steps.  Removing
s = i(k-1) - a + 1 of them and sliding the rest down and left by s
lands it on path g = ik - a + 1 of an ordinary tiling; when g > m the
whole path is frozen and disappears.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .aztec import KTiling, Tiling, reflect_diagonal
from .encodings import PG, interactions
from .schroder import E, SchroderPathFamily, leading_e_steps, paths_to_tiling, tiling_to_paths


@dataclass(frozen=True)
class ShiftPlan:
    rank: int
    colors: int

    def shift(self, i: int, a: int) -> int:
        return i * (self.colors - 1) - a + 1

    def target(self, i: int, a: int) -> int:
        """Index of the 1-tiling path receiving path i of color a."""
        return i * self.colors - a + 1

    def source(self, g: int) -> tuple:
        """(i, a) mapped onto 1-tiling path g."""
        k = self.colors
        i = (g - 1) // k + 1
        a = i * k - g + 1
        return i, a


def t0_forward(kt: KTiling) -> Tiling:
    """Zero-interaction k-tiling -> ordinary tiling of the same rank."""
    if interactions(kt, PG) != 0:
        raise ValueError("t0_forward needs a k-tiling with no interactions")
    m, k = kt.rank, kt.k
    plan = ShiftPlan(m, k)
    fams = [tiling_to_paths(t) for t in kt.layers]
    out = [None] * m
    for a in range(1, k + 1):
        for i in range(1, m + 1):
            path = fams[a - 1].paths[i - 1]
            g = plan.target(i, a)
            if g > m:
                if any(s != E for s in path):
                    raise ValueError(f"path {i} of color {a} should be frozen")
                continue
            s = plan.shift(i, a)
            if leading_e_steps(path) < s:
                raise ValueError(f"path {i} of color {a} lacks its frozen prefix")
            out[g - 1] = path[s:]
    return paths_to_tiling(SchroderPathFamily(m, tuple(out)))


def t0_inverse(t: Tiling, k: int) -> KTiling:
    """Ordinary tiling -> zero-interaction k-tiling."""
    if k < 1:
        raise ValueError("k must be at least 1")
    m = t.rank
    plan = ShiftPlan(m, k)
    base = tiling_to_paths(t).paths
    layers = []
    for a in range(1, k + 1):
        paths = []
        for i in range(1, m + 1):
            g = plan.target(i, a)
            if g <= m:
                paths.append((E,) * plan.shift(i, a) + base[g - 1])
            else:
                paths.append((E,) * (m + 1 - i))
        layers.append(paths_to_tiling(SchroderPathFamily(m, tuple(paths))))
    return KTiling.make(layers)


def phi_involution(kt: KTiling) -> KTiling:
    """Reflect every color across y = x; complements the interaction count."""
    return KTiling.make([reflect_diagonal(t) for t in kt.layers])


def phi_interaction_total(m: int, k: int) -> int:
    return comb(k, 2) * comb(m + 1, 2)
