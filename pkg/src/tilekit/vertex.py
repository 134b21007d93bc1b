"""Colored vertex models: the L, L', M, M' and R' families.

A face carries four edge labels in {0,1}^k.  For a box they are read
(I bottom, J left, K top, L right) and paths run SW to NE; for a cross they
are (I bottom-left, J top-left, K top-right, L bottom-right) and paths run
left to right.

Two descriptions of every family are provided: the closed algebraic formula
and the product of one-color weights at shifted parameters.  They agree on
every face (checked exhaustively in the tests).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb
from typing import Sequence

from .algebra import Poly, pochhammer

FAMILIES = ("L", "L'", "M", "M'", "R'")
_ALIASES = {"Lp": "L'", "Mp": "M'", "Rp": "R'", "L'": "L'", "M'": "M'", "R'": "R'",
            "L": "L", "M": "M"}


def family_name(f: str) -> str:
    try:
        return _ALIASES[f]
    except KeyError:
        raise ValueError(f"unknown vertex family {f!r}") from None


def phi(a: Sequence[int], b: Sequence[int]) -> int:
    """sum_{i<j} a_i b_j."""
    total, acc = 0, 0
    for i in range(len(a) - 1, -1, -1):
        total += a[i] * acc
        acc += b[i]
    return total


def all_vectors(k: int):
    return list(product((0, 1), repeat=k))


def all_faces(k: int):
    vs = all_vectors(k)
    return product(vs, vs, vs, vs)


def _conserved(I, J, K, L) -> bool:
    return all(i + j == kk + ll for i, j, kk, ll in zip(I, J, K, L))


# ------------------------------------------------------------ algebraic

def weight_algebraic(family: str, k: int, face, x, t, y=None) -> Fraction:
    """Exact weight from the closed formula.

    ``x`` is the row parameter; ``y`` is needed for R' (whose parameter is
    the ratio y/x).
    """
    family = family_name(family)
    I, J, K, L = face
    if not all(len(v) == k for v in face):
        raise ValueError("edge labels must have length k")
    x, t = Fraction(x), Fraction(t)
    if not _conserved(I, J, K, L):
        return Fraction(0)
    if family == "L":
        if any(i + j == 2 for i, j in zip(I, J)):
            return Fraction(0)
        IJ = [i + j for i, j in zip(I, J)]
        return x ** sum(L) * t ** phi(L, IJ)
    if family == "L'":
        if any(kk < j for kk, j in zip(K, J)):
            return Fraction(0)
        KJ = [kk - j for kk, j in zip(K, J)]
        return x ** sum(L) * _tpow(t, phi(L, KJ))
    if family == "M":
        if x == 0 or t == 0 and k > 1:
            raise ZeroDivisionError("M needs x and t nonzero")
        xbar = 1 / (x * t ** (k - 1))
        return x ** k * t ** comb(k, 2) * weight_algebraic("L", k, face, xbar, t)
    if family == "M'":
        if x == 0:
            raise ZeroDivisionError("M' needs x nonzero")
        return x ** k * weight_algebraic("L'", k, face, 1 / x, t)
    # R'
    if y is None:
        raise ValueError("R' needs both x and y")
    y = Fraction(y)
    if y == 0:
        raise ZeroDivisionError("R' needs y nonzero")
    if any(i + j == 2 for i, j in zip(I, J)):
        return Fraction(0)
    r = x / y
    den = pochhammer(-r, t, sum(K) + sum(L))
    if den == 0:
        raise ZeroDivisionError("R' denominator vanishes")
    KL = [kk + ll for kk, ll in zip(K, L)]
    return r ** sum(L) / den * _tpow(t, phi(L, KL))


def _tpow(t: Fraction, e: int) -> Fraction:
    if e < 0 and t == 0:
        raise ZeroDivisionError("t = 0 raised to a negative power")
    return t ** e


# ------------------------------------------------------------ graphical

def _one_color(family: str, face1, z: Fraction) -> Fraction:
    i, j, kk, ll = face1
    key = (i, j, kk, ll)
    if family == "L":
        table = {(0, 0, 0, 0): 1, (1, 0, 0, 1): z, (0, 1, 0, 1): z,
                 (1, 0, 1, 0): 1, (0, 1, 1, 0): 1}
    elif family == "L'":
        table = {(1, 0, 1, 0): 1, (0, 1, 1, 0): 1, (1, 1, 1, 1): z,
                 (0, 0, 0, 0): 1, (1, 0, 0, 1): z}
    elif family == "M":
        table = {(0, 0, 0, 0): z, (1, 0, 0, 1): 1, (0, 1, 0, 1): 1,
                 (1, 0, 1, 0): z, (0, 1, 1, 0): z}
    elif family == "M'":
        table = {(1, 0, 1, 0): z, (0, 1, 1, 0): z, (1, 1, 1, 1): 1,
                 (0, 0, 0, 0): z, (1, 0, 0, 1): 1}
    else:  # R' with z = y/x
        if 1 + z == 0:
            raise ZeroDivisionError("R' one-color denominator vanishes")
        table = {(0, 1, 0, 1): 1 / (1 + z), (0, 1, 1, 0): z / (1 + z),
                 (1, 0, 0, 1): 1 / (1 + z), (1, 0, 1, 0): z / (1 + z),
                 (0, 0, 0, 0): 1}
    return Fraction(table.get(key, 0))


def graphical_counters(family: str, face) -> dict:
    """Per-color shift counters used by the one-color product description."""
    family = family_name(family)
    I, J, K, L = face
    k = len(I)
    cols = list(zip(I, J, K, L))
    present = [c[0] + c[1] >= 1 for c in cols]
    vertical = [c == (1, 0, 1, 0) for c in cols]
    exits_right = [c[3] == 1 for c in cols]
    exits_top = [c[2] == 1 for c in cols]

    def above(flags, i):
        return sum(1 for j in range(i + 1, k) if flags[j])

    out = {}
    for i in range(k):
        out[i] = {
            "delta": above(present, i),
            "delta_prime": above(vertical, i),
            "alpha": above([not e for e in exits_right], i),
            "beta": above(exits_top, i),
            "gamma": above(vertical, i),
            "epsilon_prime": above(present, i),
        }
    return out


def weight_graphical(family: str, k: int, face, x, t, y=None) -> Fraction:
    family = family_name(family)
    I, J, K, L = face
    if not all(len(v) == k for v in face):
        raise ValueError("edge labels must have length k")
    x, t = Fraction(x), Fraction(t)
    cnt = graphical_counters(family, face)
    out = Fraction(1)
    for i in range(k):
        f1 = (I[i], J[i], K[i], L[i])
        c = cnt[i]
        if family == "L":
            w = _one_color("L", f1, x * t ** c["delta"])
        elif family == "L'":
            w = _one_color("L'", f1, x * t ** c["delta_prime"])
        elif family == "M":
            w = _tpow(t, c["beta"]) * _one_color("M", f1, x * _tpow(t, c["alpha"] - c["beta"]))
        elif family == "M'":
            w = _tpow(t, c["gamma"]) * _one_color("M'", f1, x * _tpow(t, -c["gamma"]))
        else:
            if y is None:
                raise ValueError("R' needs both x and y")
            w = _one_color("R'", f1, Fraction(y) / (x * _tpow(t, c["epsilon_prime"])))
        if w == 0:
            return Fraction(0)
        out *= w
    return out


def weight_table(family: str, k: int, x, t, y=None, method: str = "algebraic") -> dict:
    """All nonzero face weights at a parameter point."""
    fn = weight_algebraic if method == "algebraic" else weight_graphical
    out = {}
    for face in all_faces(k):
        w = fn(family, k, face, x, t, y)
        if w:
            out[face] = w
    return out


# ------------------------------------------------------------ Yang-Baxter

YBE_TRIPLES = ("purple-gray", "white-pink")


def ybe_sides(k: int, triple: str, x, y, t, boundary) -> tuple:
    """Both sides of the Yang-Baxter equation for one boundary.

    purple-gray: the column holds M at xbar = 1/(x t^(k-1)) below L' at y;
    white-pink: L at x below M' at 1/y.  In both the cross is R' at y/x.
    ``boundary`` = (I1, J1, K1, I3, J3, K3): I1/J1 enter the cross on the
    left (bottom/top), K1 is the bottom of the column, K3 its top, and I3/J3
    leave on the right (top/bottom).
    """
    return _ybe_sides_from_tables(k, _ybe_tables(k, triple, x, y, t), boundary)


def _ybe_tables(k, triple, x, y, t):
    x, y, t = Fraction(x), Fraction(y), Fraction(t)
    if triple == "purple-gray":
        lower = weight_table("M", k, 1 / (x * t ** (k - 1)), t)
        upper = weight_table("L'", k, y, t)
    elif triple == "white-pink":
        lower = weight_table("L", k, x, t)
        upper = weight_table("M'", k, 1 / y, t)
    else:
        raise ValueError(f"unknown triple {triple!r}")
    cross = weight_table("R'", k, x, t, y)
    return lower, upper, cross


def _ybe_sides_from_tables(k, tabs, boundary):
    xrow, yrow, cross = tabs  # lower box, upper box, cross
    I1, J1, K1, I3, J3, K3 = boundary
    vs = all_vectors(k)
    lhs = Fraction(0)
    for a in vs:
        for b in vs:
            r = cross.get((I1, J1, a, b))
            if not r:
                continue
            for v in vs:
                w1 = xrow.get((K1, b, v, J3))
                if not w1:
                    continue
                w2 = yrow.get((v, a, K3, I3))
                if w2:
                    lhs += r * w1 * w2
    rhs = Fraction(0)
    for v in vs:
        for c in vs:
            w1 = yrow.get((K1, I1, v, c))
            if not w1:
                continue
            for d in vs:
                w2 = xrow.get((v, J1, K3, d))
                if not w2:
                    continue
                r = cross.get((c, d, I3, J3))
                if r:
                    rhs += w1 * w2 * r
    return lhs, rhs


def balanced_boundaries(k: int):
    """Boundaries whose per-color inflow equals outflow (others give 0 = 0)."""
    vs = all_vectors(k)
    for bd in product(vs, repeat=6):
        I1, J1, K1, I3, J3, K3 = bd
        if all(a + b + c == d + e + f for a, b, c, d, e, f in zip(I1, J1, K1, I3, J3, K3)):
            yield bd


def ybe_check(k: int, triple: str, x, y, t, boundaries=None) -> list:
    """Return the list of boundaries where the two sides differ."""
    tabs = _ybe_tables(k, triple, x, y, t)
    bad = []
    for bd in (balanced_boundaries(k) if boundaries is None else boundaries):
        lhs, rhs = _ybe_sides_from_tables(k, tabs, bd)
        if lhs != rhs:
            bad.append((bd, lhs, rhs))
    return bad


def ybe_grid(n: int = 6) -> list:
    """n^3 points (x, y, t) with distinct positive rational coordinates.

    At k = 1 both sides, once multiplied by the (y + x t^j) denominators of
    the cross, have degree at most 3 in each variable, so a 6-point grid per
    variable decides the identity.
    """
    vals = [Fraction(j + 2, j + 1) for j in range(n)]
    return list(product(vals, repeat=3))


def ybe_random_points(count: int, seed: int = 0, bound: int = 10**6) -> list:
    """Random positive rational points; a false identity survives one with
    probability at most degree / bound (Schwartz-Zippel)."""
    import random

    rng = random.Random(seed)
    return [tuple(Fraction(rng.randint(1, bound), rng.randint(1, bound)) for _ in range(3))
            for _ in range(count)]


def ybe_certify(k: int, triple: str, points) -> list:
    """Points (with the failing boundaries) where the identity breaks."""
    bds = list(balanced_boundaries(k))
    failures = []
    for x, y, t in points:
        bad = ybe_check(k, triple, x, y, t, bds)
        if bad:
            failures.append(((x, y, t), bad))
    return failures


# ------------------------------------------------------------ lattices

def face_exponents(family: str, k: int, face) -> tuple | None:
    """(row-parameter exponent, t exponent) of a box face, or None if zero.

    For the box families every weight is a monomial in the row parameter
    and t, which lets partition functions be assembled symbolically.
    """
    I, J, K, L = face
    if not _conserved(I, J, K, L):
        return None
    nL = sum(L)
    if family in ("L", "M"):
        if any(i + j == 2 for i, j in zip(I, J)):
            return None
        q = phi(L, [i + j for i, j in zip(I, J)])
        if family == "L":
            return nL, q
        return k - nL, comb(k, 2) - (k - 1) * nL + q
    if family in ("L'", "M'"):
        if any(kk < j for kk, j in zip(K, J)):
            return None
        q = phi(L, [kk - j for kk, j in zip(K, J)])
        return (nL, q) if family == "L'" else (k - nL, q)
    raise ValueError(f"{family} is not a box family")


@dataclass(frozen=True)
class RowSpec:
    family: str
    param: Poly  # monomial standing for the row variable
    left: tuple  # ColorVector entering on the left
    right: tuple  # ColorVector leaving on the right


@dataclass(frozen=True)
class LatticeSpec:
    k: int
    width: int
    rows: tuple  # RowSpec, bottom row first
    bottom: tuple  # per color: tuple of width bits
    top: tuple  # per color: tuple of width bits
    zero_markers: tuple  # zero position of each horizontal boundary, bottom first


def color_row(family: str, bottom: Sequence[int], top: Sequence[int], left: int, right: int):
    """Horizontal edge occupancies h[0..n] of one color in one row, or None.

    One-color rows are determined by their boundary: h[c+1] = h[c] + B[c] - T[c].
    """
    h = [left]
    for b, tp in zip(bottom, top):
        cur = h[-1]
        if family in ("L", "M") and b + cur == 2:
            return None
        if family in ("L'", "M'") and tp < cur:
            return None
        nxt = cur + b - tp
        if nxt not in (0, 1):
            return None
        h.append(nxt)
    if h[-1] != right:
        return None
    return h


def color_row_tops(family: str, bottom: Sequence[int], left: int, right: int) -> list:
    """All (top bits, horizontal edges) for one color given its bottom and sides."""
    out = []
    n = len(bottom)

    def rec(c, cur, tops, hs):
        if c == n:
            if cur == right:
                out.append((tuple(tops), tuple(hs)))
            return
        b = bottom[c]
        for tp in (0, 1):
            if family in ("L", "M") and b + cur == 2:
                return
            if family in ("L'", "M'") and tp < cur:
                continue
            nxt = cur + b - tp
            if nxt in (0, 1):
                rec(c + 1, nxt, tops + [tp], hs + [nxt])

    rec(0, left, [], [left])
    return out


def row_exponents(family: str, k: int, bottoms, tops, hs) -> tuple | None:
    """Total (param exponent, t exponent) of a row given every color's edges."""
    n = len(bottoms[0])
    px = qt = 0
    for c in range(n):
        I = tuple(bottoms[i][c] for i in range(k))
        J = tuple(hs[i][c] for i in range(k))
        K = tuple(tops[i][c] for i in range(k))
        L = tuple(hs[i][c + 1] for i in range(k))
        e = face_exponents(family, k, (I, J, K, L))
        if e is None:
            return None
        px += e[0]
        qt += e[1]
    return px, qt


def row_weight_config(row: RowSpec, k: int, bottoms, tops) -> Poly:
    """Weight of one row with given bottom and top labels (zero if invalid)."""
    hs = []
    for i in range(k):
        h = color_row(row.family, bottoms[i], tops[i], row.left[i], row.right[i])
        if h is None:
            return Poly()
        hs.append(h)
    e = row_exponents(row.family, k, bottoms, tops, hs)
    if e is None:
        return Poly()
    return row.param ** e[0] * Poly.monomial({"t": e[1]})


def configuration_weight(spec: LatticeSpec, states: Sequence) -> Poly:
    """Weight of the configuration with the given boundary states.

    ``states[j]`` is the k-tuple of bit tuples on horizontal boundary j.
    """
    if tuple(states[0]) != tuple(spec.bottom) or tuple(states[-1]) != tuple(spec.top):
        return Poly()
    out = Poly.const(1)
    for j, row in enumerate(spec.rows):
        w = row_weight_config(row, spec.k, states[j], states[j + 1])
        if w.is_zero():
            return w
        out = out * w
    return out


def lattice_partition_function(spec: LatticeSpec, specialize: dict | None = None) -> Poly:
    """Sum over all configurations by row transfer.

    State = k-tuple of occupation bit tuples on a horizontal boundary.
    ``specialize`` optionally assigns numbers to row variables before summing.
    """
    k = spec.k
    layer = {tuple(spec.bottom): Poly.const(1)}
    for row in spec.rows:
        param = row.param.substitute(specialize) if specialize else row.param
        nxt: dict = {}
        for state, acc in layer.items():
            options = [color_row_tops(row.family, state[i], row.left[i], row.right[i])
                       for i in range(k)]
            for combo in product(*options):
                tops = tuple(c[0] for c in combo)
                hs = [c[1] for c in combo]
                e = row_exponents(row.family, k, state, tops, hs)
                if e is None:
                    continue
                w = param ** e[0] * Poly.monomial({"t": e[1]})
                nxt[tops] = nxt.get(tops, Poly()) + acc * w
        layer = nxt
    return layer.get(tuple(spec.top), Poly())


def aztec_lattice_spec(m: int, k: int, model) -> LatticeSpec:
    """Row lattice whose configurations match k-tilings of the rank-m diamond.

    purple-gray: rows L'(x_i), M(y_i) alternating from the bottom, width 2m-1,
    colors enter at the bottom in columns 0..m-1, the M rows emit every color
    on the right.  white-pink: rows L(x_i), M'(y_i), colors enter at the
    bottom in columns 0..m-2, every color enters each M' row on the left, and
    every column is full at the top.
    """
    from .encodings import ModelKind

    model = ModelKind.parse(model)
    # width 2m - 1 holds every slice partition once m >= 2; rank 1 needs 2
    n = max(2 * m - 1, 2)
    zero = tuple([0] * k)
    full = tuple([1] * k)
    rows = []
    for i in range(1, m + 1):
        x = Poly.var(f"x{i}")
        y = Poly.var(f"y{i}")
        if model is ModelKind.PURPLE_GRAY:
            rows.append(RowSpec("L'", x, zero, zero))
            rows.append(RowSpec("M", y, zero, full))
        else:
            rows.append(RowSpec("L", x, zero, zero))
            rows.append(RowSpec("M'", y, full, zero))
    if model is ModelKind.PURPLE_GRAY:
        bottom = tuple(tuple(1 if c < m else 0 for c in range(n)) for _ in range(k))
        top = tuple(tuple([0] * n) for _ in range(k))
        markers = tuple(m - j // 2 for j in range(2 * m + 1))
    else:
        # rank 1 gets an extra frozen particle column on the left
        pad = 1 if m == 1 else 0
        bottom = tuple(tuple(1 if c < m - 1 + pad else 0 for c in range(n)) for _ in range(k))
        top = tuple(tuple([1] * n) for _ in range(k))
        markers = tuple(m - 1 + pad + j // 2 for j in range(2 * m + 1))
    return LatticeSpec(k, n, tuple(rows), bottom, top, markers)


def lattice_constant(m: int, k: int, model) -> Poly:
    """Normalising monomial relating lattice and tiling generating functions."""
    from .encodings import ModelKind

    model = ModelKind.parse(model)
    rho = {f"y{i}": k * (m - i) for i in range(1, m + 1)}
    if model is ModelKind.PURPLE_GRAY:
        rho["t"] = comb(m, 2) * comb(k, 2)
    else:
        for i in range(1, m + 1):
            rho[f"y{i}"] += k
    return Poly.monomial(rho)


def sequence_states(spec: LatticeSpec, seq) -> list:
    """Lattice boundary states for a sequence of partition k-tuples."""
    from .partitions import partition_to_bits

    return [tuple(tuple(int(b) for b in partition_to_bits(lam, spec.width, z)) for lam in step)
            for step, z in zip(seq, spec.zero_markers)]


def states_sequence(spec: LatticeSpec, states) -> list:
    from .partitions import bits_to_partition

    return [tuple(bits_to_partition(b, z) for b in st)
            for st, z in zip(states, spec.zero_markers)]


def enumerate_configurations(spec: LatticeSpec) -> list:
    """All valid configurations as lists of boundary states (small lattices)."""
    k = spec.k
    paths = [[tuple(spec.bottom)]]
    for row in spec.rows:
        nxt = []
        for p in paths:
            state = p[-1]
            options = [color_row_tops(row.family, state[i], row.left[i], row.right[i])
                       for i in range(k)]
            for combo in product(*options):
                tops = tuple(c[0] for c in combo)
                hs = [c[1] for c in combo]
                if row_exponents(row.family, k, state, tops, hs) is not None:
                    nxt.append(p + [tops])
        paths = nxt
    return [p for p in paths if p[-1] == tuple(spec.top)]


def row_weight(family: str, var, k: int, bottom, top, t=None, width: int | None = None,
               zero_position: int | None = None) -> Poly:
    """Weight of a single row between two partition k-tuples, sides empty.

    Both boundaries use the same window; by default it is just large enough
    for every partition involved.  ``var`` is a variable name or monomial;
    passing ``t`` substitutes it.  The result is zero unless the row's
    (co-)interlacing relation holds, and equals var^(|top|-|bottom|) at t=1
    for the L family.
    """
    from .partitions import fits, partition, partition_to_bits

    bottom = [partition(p) for p in bottom]
    top = [partition(p) for p in top]
    if len(bottom) != k or len(top) != k:
        raise ValueError("partition tuples must have length k")
    parts = bottom + top
    if zero_position is None:
        zero_position = max((len(p) for p in parts), default=0) + 1
    if width is None:
        width = zero_position + max((p[0] for p in parts if p), default=0) + 1
    for p in parts:
        if not fits(p, width, zero_position):
            raise ValueError(f"partition {p} does not fit the row window")
    param = Poly.var(var) if isinstance(var, str) else var
    empty = tuple([0] * k)
    row = RowSpec(family_name(family), param, empty, empty)
    bottoms = tuple(tuple(int(b) for b in partition_to_bits(lam, width, zero_position))
                    for lam in bottom)
    tops = tuple(tuple(int(b) for b in partition_to_bits(lam, width, zero_position))
                 for lam in top)
    w = row_weight_config(row, k, bottoms, tops)
    return w.substitute({"t": t}) if t is not None else w
