"""Purple-gray and white-pink encodings of domino tilings.

Slice ``j`` (0..2m) is the SW-NE diagonal of cells with ``b - a + m == j``;
even slices are gray, odd slices white.  Reading a slice from SW to NE gives a
Maya window:

* purple-gray: particles are dominos of type I and IV, cell content is
  ``b + 1/2`` (zero line at y = 0);
* white-pink: particles are dominos of type II and III, cell content is
  ``a + 1/2`` (zero line at x = 0).

Each slice is a window whose zero position is the number of its cells with
negative content, so every window reconstructs a partition.
"""

from __future__ import annotations

from collections import Counter
from enum import Enum
from itertools import product
from math import comb
from typing import Sequence

from .algebra import Poly
from .aztec import (I, II, III, IV, KTiling, Tiling, domino_from_cells,
                    domino_type, enumerate_tilings, in_region, is_gray)
from .partitions import bits_to_partition, fits, partition, partition_to_bits


class ModelKind(Enum):
    PURPLE_GRAY = "purple-gray"
    WHITE_PINK = "white-pink"

    @classmethod
    def parse(cls, s) -> "ModelKind":
        if isinstance(s, ModelKind):
            return s
        return cls(str(s).lower())


PG = ModelKind.PURPLE_GRAY
WP = ModelKind.WHITE_PINK

_PARTICLES = {PG: (I, IV), WP: (II, III)}


def slice_cells(m: int, j: int) -> list:
    """Cells of slice j ordered SW to NE."""
    cells = []
    for b in range(-m, m):
        a = b + m - j
        if in_region(a, b, m):
            cells.append((a, b))
    return cells


def _content_coord(cell, model: ModelKind) -> int:
    return cell[1] if model is PG else cell[0]


def _zero_position(m: int, j: int, model: ModelKind) -> int:
    return sum(1 for c in slice_cells(m, j) if _content_coord(c, model) < 0)


def slice_bits(t: Tiling, j: int, model: ModelKind) -> tuple:
    cm = t.cell_map()
    parts = _PARTICLES[model]
    return tuple(domino_type(cm[c], t.rank) in parts for c in slice_cells(t.rank, j))


def tiling_to_sequence(t: Tiling, model) -> list:
    """The 2m+1 partitions read off the slices of a single tiling."""
    model = ModelKind.parse(model)
    m = t.rank
    return [bits_to_partition(slice_bits(t, j, model), _zero_position(m, j, model))
            for j in range(2 * m + 1)]


def ktiling_to_sequence(kt: KTiling, model) -> list:
    """Sequence of 2m+1 partition k-tuples."""
    per_color = [tiling_to_sequence(t, model) for t in kt.layers]
    return [tuple(seq[j] for seq in per_color) for j in range(2 * kt.rank + 1)]


def check_sequence(seq: Sequence, m: int, model) -> None:
    """Raise ValueError unless seq is a valid single-color sequence."""
    from .partitions import co_interlaces, interlaces

    model = ModelKind.parse(model)
    if len(seq) != 2 * m + 1:
        raise ValueError(f"expected {2 * m + 1} partitions, got {len(seq)}")
    if seq[0] or seq[-1]:
        raise ValueError("sequence must start and end with the empty partition")
    for j in range(2 * m):
        lo, hi = (seq[j], seq[j + 1])
        if model is PG:
            ok = co_interlaces(hi, lo) if j % 2 == 0 else interlaces(lo, hi)
        else:
            ok = interlaces(hi, lo) if j % 2 == 0 else co_interlaces(lo, hi)
        if not ok:
            raise ValueError(f"interlacing violated between steps {j} and {j + 1}")


def sequence_to_tiling(seq: Sequence, m: int, model) -> Tiling:
    """Rebuild the unique tiling with the given slice partitions."""
    model = ModelKind.parse(model)
    seq = [partition(p) for p in seq]
    check_sequence(seq, m, model)
    status = {}
    for j, lam in enumerate(seq):
        cells = slice_cells(m, j)
        z = _zero_position(m, j, model)
        if not fits(lam, len(cells), z):
            raise ValueError(f"partition {lam} does not fit slice {j}")
        for c, bit in zip(cells, partition_to_bits(lam, len(cells), z)):
            status[c] = bit
    doms = []
    for j in range(2 * m):
        # cells pairing across slices j and j+1: particles or holes
        gray_low = j % 2 == 0
        pair_particles = gray_low == (model is PG)
        low = [c for c in slice_cells(m, j) if status[c] == pair_particles]
        high = [c for c in slice_cells(m, j + 1) if status[c] == pair_particles]
        if len(low) != len(high):
            raise ValueError(f"slices {j} and {j + 1} do not match up")
        for c1, c2 in zip(low, high):
            doms.append(domino_from_cells(c1, c2))
    return Tiling.make(m, doms)


def ktiling_from_sequence(seq: Sequence, m: int, model) -> KTiling:
    k = len(seq[0])
    return KTiling.make(sequence_to_tiling([step[c] for step in seq], m, model)
                        for c in range(k))


# ---------------------------------------------------------------- weights

def xy_exponents(t: Tiling, model) -> tuple:
    """(x exponents, y exponents), each of length m."""
    model = ModelKind.parse(model)
    m = t.rank
    xs, ys = [0] * m, [0] * m
    for d in t.dominos:
        ty = domino_type(d, m)
        c0, c1 = d.cells()
        if model is PG:
            # type IV: top square white; type II: bottom square white
            if ty == IV:
                j = c1[1] - c1[0] + m
                xs[(j + 1) // 2 - 1] += 1
            elif ty == II:
                j = c0[1] - c0[0] + m
                ys[(j + 1) // 2 - 1] += 1
        else:
            # type I: left square white; type III: right square white
            if ty == I:
                j = c0[1] - c0[0] + m
                xs[(j + 1) // 2 - 1] += 1
            elif ty == III:
                j = c1[1] - c1[0] + m
                ys[(j + 1) // 2 - 1] += 1
    return tuple(xs), tuple(ys)


def monomial(xs: Sequence[int], ys: Sequence[int], t_exp: int = 0) -> Poly:
    exps = {f"x{i + 1}": e for i, e in enumerate(xs)}
    exps.update({f"y{i + 1}": e for i, e in enumerate(ys)})
    exps["t"] = t_exp
    return Poly.monomial(exps)


def xy_weight(t: Tiling, model) -> Poly:
    xs, ys = xy_exponents(t, model)
    return monomial(xs, ys)


# ----------------------------------------------------------- interactions
#
# Purple-gray: every gray cell is covered by one domino of each color.  For
# colors a < b at a gray cell, with types (ta, tb), an interaction is counted
# when tb is I and ta is IV, or tb is II and ta is I, II or IV.
#
# White-pink: the same test at every gray cell after reflecting in y = x
# (I<->II, III<->IV): tb is II and ta is III, or tb is I and ta is II, I or III.
# Both rules reproduce the vertex-lattice weight configuration by configuration.

_PG_PAIRS = frozenset({(IV, I), (I, II), (II, II), (IV, II)})
_WP_PAIRS = frozenset({(III, II), (II, I), (I, I), (III, I)})


def _cell_types(t: Tiling) -> dict:
    m = t.rank
    return {c: domino_type(d, m) for c, d in t.cell_map().items()}


def pair_interactions(blue: Tiling, red: Tiling, model) -> int:
    """Interactions between a smaller color (blue) and a larger one (red)."""
    model = ModelKind.parse(model)
    m = blue.rank
    tb, tr = _cell_types(blue), _cell_types(red)
    pairs = _PG_PAIRS if model is PG else _WP_PAIRS
    n = 0
    for c, ta in tb.items():
        if is_gray(c[0], c[1], m) and (ta, tr[c]) in pairs:
            n += 1
    return n


def interactions(kt: KTiling, model) -> int:
    k = kt.k
    return sum(pair_interactions(kt.layers[a], kt.layers[b], model)
               for a in range(k) for b in range(a + 1, k))


def interaction_split(kt: KTiling, model) -> dict:
    k = kt.k
    return {(a + 1, b + 1): pair_interactions(kt.layers[a], kt.layers[b], model)
            for a in range(k) for b in range(a + 1, k)}


def max_interactions(m: int, k: int) -> int:
    return comb(k, 2) * comb(m + 1, 2)


def weight(kt: KTiling, model) -> Poly:
    model = ModelKind.parse(model)
    m = kt.rank
    xs, ys = [0] * m, [0] * m
    for layer in kt.layers:
        lx, ly = xy_exponents(layer, model)
        xs = [p + q for p, q in zip(xs, lx)]
        ys = [p + q for p, q in zip(ys, ly)]
    return monomial(xs, ys, interactions(kt, model))


# --------------------------------------------------- generating polynomials

class PairTable:
    """Per-tiling statistics and the pairwise interaction matrix for rank m.

    Interactions are additive over color pairs, so sums over k-tilings
    reduce to sums over index tuples into this table.
    """

    def __init__(self, m: int, model, cap: int | None = None):
        import numpy as np

        self.m = m
        self.model = ModelKind.parse(model)
        kwargs = {} if cap is None else {"cap": cap}
        self.tilings = enumerate_tilings(m, **kwargs)
        self.xy = [xy_exponents(t, self.model) for t in self.tilings]
        n = len(self.tilings)
        types = [_cell_types(t) for t in self.tilings]
        pairs = _PG_PAIRS if self.model is PG else _WP_PAIRS
        cells = [c for c in types[0] if is_gray(c[0], c[1], m)]
        codes = np.array([[types[i][c] for c in cells] for i in range(n)], dtype=np.int8)
        mat = np.zeros((n, n), dtype=np.int64)
        for ta, tb in pairs:
            A = (codes == ta).astype(np.int64)
            B = (codes == tb).astype(np.int64)
            mat += A @ B.T
        self.matrix = mat

    def tuple_interactions(self, idx: Sequence[int]) -> int:
        return int(sum(self.matrix[idx[a], idx[b]]
                       for a in range(len(idx)) for b in range(a + 1, len(idx))))


def _ktuples(n: int, k: int):
    return product(range(n), repeat=k)


def generating_polynomial(m: int, k: int, model, cap: int = 5) -> Poly:
    """Sum of weights over all k-tilings, by exhaustive enumeration."""
    if k < 1:
        raise ValueError("k must be at least 1")
    table = PairTable(m, model, cap=cap)
    counts: Counter = Counter()
    for idx in _ktuples(len(table.tilings), k):
        xs = tuple(sum(table.xy[i][0][r] for i in idx) for r in range(m))
        ys = tuple(sum(table.xy[i][1][r] for i in idx) for r in range(m))
        counts[(xs, ys, table.tuple_interactions(idx))] += 1
    out = Poly()
    for (xs, ys, n), c in counts.items():
        out = out + monomial(xs, ys, n) * c
    return out


def t_polynomial_all_ones(m: int, k: int, model, cap: int = 5) -> list:
    """Coefficients of the generating polynomial at x = y = 1, by t-degree."""
    import numpy as np

    if k < 1:
        raise ValueError("k must be at least 1")
    table = PairTable(m, model, cap=cap)
    mat = table.matrix
    n = len(table.tilings)
    # dynamic programme over colors: distribution of interaction counts
    # given the last color's tiling, extended one color at a time requires the
    # full tuple, so enumerate tuples of the first k-1 colors and vectorize the
    # last one.
    top = max_interactions(m, k)
    hist = np.zeros(top + 1, dtype=np.int64)
    if k == 1:
        hist[0] = n
        return [int(v) for v in hist]
    for idx in _ktuples(n, k - 1):
        base = table.tuple_interactions(idx)
        last = np.full(n, base, dtype=np.int64)
        for i in idx:
            last += mat[i, :]
        hist += np.bincount(last, minlength=top + 1)[: top + 1]
    return [int(v) for v in hist]


def product_formula(m: int, k: int) -> Poly:
    """prod_{l<k} prod_{1<=i<=j<=m} (1 + t^l x_i y_j)."""
    out = Poly.const(1)
    for ell in range(k):
        for i in range(1, m + 1):
            for j in range(i, m + 1):
                out = out * (Poly.const(1) + Poly.monomial({f"x{i}": 1, f"y{j}": 1, "t": ell}))
    return out


def cross_model_histogram(m: int, k: int, model, cap: int = 5) -> Counter:
    """Histogram of (interactions, x exponents, y exponents) over all k-tilings."""
    table = PairTable(m, model, cap=cap)
    hist: Counter = Counter()
    for idx in _ktuples(len(table.tilings), k):
        xs = tuple(sum(table.xy[i][0][r] for i in idx) for r in range(m))
        ys = tuple(sum(table.xy[i][1][r] for i in idx) for r in range(m))
        hist[(table.tuple_interactions(idx), xs, ys)] += 1
    return hist
