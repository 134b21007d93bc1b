"""Lozenge k-tilings of the a x b x c hexagon via the L vertex model.

A color is a chain of partitions emptyset = lam^0 <= ... <= lam^(a+c) = (b^a),
each step a horizontal strip (equivalently a SSYT of rectangular shape b^a
with entries <= a+c, or a plane partition in an a x b x c box).  Row r of
the lattice reads the Maya windows of lam^r and lam^(r+1) with width a+b and
zero position a; it is an L row with parameter q^r.

Each face (col, r) is a down-triangle of the triangular lattice, and its
path content decides the lozenge containing it:

    V  a path exits through the top   -> lozenge type 1 (merges upward)
    E  no path visits the face        -> lozenge type 2 (merges left)
    H  a path exits to the right      -> lozenge type 3 (merges right)

Faces with col + r <= a-2 or col + r >= a+b+c-1 are always V and lie outside
the hexagon.  Colors a < b interact at a face where a exits right and b
visits it; this is the t-exponent of the L lattice.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb, sqrt
from typing import Sequence

import numpy as np

from .algebra import Poly, univariate_divmod, var_id
from .partitions import bits_to_partition, partition, partition_to_bits
from .vertex import LatticeSpec, RowSpec, color_row, color_row_tops, lattice_partition_function

V, E, H = 1, 2, 3
TYPE_LETTER = {V: "V", E: "E", H: "H"}
DEFAULT_HEX_CAP = 200_000


@dataclass(frozen=True)
class HexRegion:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if min(self.a, self.b, self.c) < 0:
            raise ValueError("hexagon sides must be nonnegative")

    @property
    def rows(self) -> int:
        return self.a + self.c

    @property
    def width(self) -> int:
        return self.a + self.b

    def start_bits(self) -> tuple:
        return tuple(1 if i < self.a else 0 for i in range(self.width))

    def end_bits(self) -> tuple:
        return tuple(1 if i >= self.b else 0 for i in range(self.width))

    def frozen(self, col: int, r: int) -> bool:
        return col + r <= self.a - 2 or col + r >= self.a + self.b + self.c - 1

    def faces(self) -> list:
        """Non-frozen faces, one per lozenge."""
        return [(col, r) for r in range(self.rows) for col in range(self.width)
                if not self.frozen(col, r)]


def macmahon(a: int, b: int, c: int) -> int:
    """Plane partitions in an a x b x c box."""
    num = den = 1
    for i in range(1, a + 1):
        for j in range(1, b + 1):
            for k in range(1, c + 1):
                num *= i + j + k - 1
                den *= i + j + k - 2
    return num // den


@dataclass(frozen=True)
class LozengeTiling:
    """One color: the partition chain, with lozenges derived on demand."""

    region: HexRegion
    chain: tuple  # a+c+1 partitions

    def bits(self, r: int) -> tuple:
        return tuple(int(x) for x in partition_to_bits(self.chain[r], self.region.width,
                                                       self.region.a))

    def face_types(self) -> np.ndarray:
        """rows x width array of V/E/H codes (frozen faces included)."""
        reg = self.region
        out = np.zeros((reg.rows, reg.width), dtype=np.int8)
        for r in range(reg.rows):
            bot, top = self.bits(r), self.bits(r + 1)
            h = color_row("L", bot, top, 0, 0)
            if h is None:
                raise ValueError(f"row {r} is not a horizontal strip")
            for col in range(reg.width):
                out[r, col] = V if top[col] else (H if h[col + 1] else E)
        return out

    def lozenges(self) -> list:
        """(type, col, r) for every lozenge, sorted."""
        ft = self.face_types()
        return sorted((int(ft[r, col]), col, r) for col, r in self.region.faces())

    def type_counts(self) -> tuple:
        cnt = Counter(t for t, _, _ in self.lozenges())
        return cnt[V], cnt[E], cnt[H]

    def q_exponent(self) -> int:
        ft = self.face_types()
        return int(sum(r * int(np.sum(ft[r] == H)) for r in range(self.region.rows)))

    def positions(self) -> list:
        """Per path i, its column at every boundary r = 0..a+c."""
        reg = self.region
        cols = [[s for s, bit in enumerate(self.bits(r)) if bit] for r in range(reg.rows + 1)]
        return [[cols[r][i] for r in range(reg.rows + 1)] for i in range(reg.a)]


def tiling_from_chain(region: HexRegion, chain) -> LozengeTiling:
    chain = tuple(partition(p) for p in chain)
    if len(chain) != region.rows + 1:
        raise ValueError("chain length must be a+c+1")
    t = LozengeTiling(region, chain)
    if t.bits(0) != region.start_bits() or t.bits(region.rows) != region.end_bits():
        raise ValueError("chain must run from the empty partition to (b^a)")
    t.face_types()
    return t


def tiling_from_positions(region: HexRegion, pos) -> LozengeTiling:
    chain = []
    for r in range(region.rows + 1):
        bits = [0] * region.width
        for p in pos:
            if not 0 <= p[r] < region.width or bits[p[r]]:
                raise ValueError("paths leave the window or collide")
            bits[p[r]] = 1
        chain.append(bits_to_partition(bits, region.a))
    return tiling_from_chain(region, chain)


def tiling_from_face_types(region: HexRegion, ft) -> LozengeTiling:
    chain = [()]
    for r in range(region.rows):
        bits = [1 if ft[r][col] == V else 0 for col in range(region.width)]
        chain.append(bits_to_partition(bits, region.a))
    t = tiling_from_chain(region, chain)
    if not np.array_equal(t.face_types(), np.asarray(ft)):
        raise ValueError("face types do not describe a tiling")
    return t


def enumerate_lozenge(a: int, b: int, c: int, cap: int = DEFAULT_HEX_CAP) -> list:
    """All lozenge tilings of the a x b x c hexagon, as partition chains."""
    region = HexRegion(a, b, c)
    n = macmahon(a, b, c)
    if n > cap:
        raise ValueError(f"{n} tilings exceed the enumeration cap {cap}")
    end = region.end_bits()
    out = []

    def rec(r, state, chain):
        if r == region.rows:
            if state == end:
                out.append(LozengeTiling(region, tuple(chain)))
            return
        for tops, _ in color_row_tops("L", state, 0, 0):
            rec(r + 1, tops, chain + [bits_to_partition(tops, a)])

    rec(0, region.start_bits(), [()])
    return sorted(out, key=lambda t: t.chain)


# ----------------------------------------------------------- interactions

def _codes(t: LozengeTiling) -> np.ndarray:
    ft = t.face_types()
    return np.array([ft[r, col] for col, r in t.region.faces()], dtype=np.int8)


def pair_lozenge_interactions(lo: LozengeTiling, hi: LozengeTiling) -> int:
    """Faces where the smaller color exits right and the larger one visits."""
    a, b = _codes(lo), _codes(hi)
    return int(np.sum((a == H) & (b != E)))


def lozenge_interactions(kl: Sequence[LozengeTiling]) -> int:
    k = len(kl)
    return sum(pair_lozenge_interactions(kl[i], kl[j]) for i in range(k) for j in range(i + 1, k))


class HexPairTable:
    """Tilings of one hexagon with their pairwise interaction matrix."""

    def __init__(self, a: int, b: int, c: int, cap: int = DEFAULT_HEX_CAP):
        self.region = HexRegion(a, b, c)
        self.tilings = enumerate_lozenge(a, b, c, cap)
        codes = np.array([_codes(t) for t in self.tilings], dtype=np.int8)
        if codes.size == 0:
            codes = codes.reshape(len(self.tilings), 0)
        hmat = (codes == H).astype(np.int64)
        visit = (codes != E).astype(np.int64)
        self.matrix = hmat @ visit.T
        self.qexp = np.array([t.q_exponent() for t in self.tilings], dtype=np.int64)

    def tuple_interactions(self, idx) -> int:
        return int(sum(self.matrix[idx[i], idx[j]]
                       for i in range(len(idx)) for j in range(i + 1, len(idx))))


def hex_generating_polynomial(a: int, b: int, c: int, k: int, q=None,
                              cap: int = DEFAULT_HEX_CAP) -> Poly:
    """Sum over k-tuples of q^(sum of row-weighted right steps) t^(interactions).

    With ``q`` given (e.g. 1) the result is a polynomial in t alone.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    tab = HexPairTable(a, b, c, cap)
    n = len(tab.tilings)
    hist: Counter = Counter()
    if k == 1:
        for i in range(n):
            hist[(int(tab.qexp[i]), 0)] += 1
    else:
        from itertools import product

        for idx in product(range(n), repeat=k - 1):
            base = tab.tuple_interactions(idx)
            tvec = np.full(n, base, dtype=np.int64)
            qbase = int(sum(tab.qexp[i] for i in idx))
            for i in idx:
                tvec += tab.matrix[i, :]
            qvec = tab.qexp + qbase
            for (qe, te), cnt in Counter(zip(qvec.tolist(), tvec.tolist())).items():
                hist[(qe, te)] += cnt
    out = Poly()
    for (qe, te), cnt in hist.items():
        mono = {"t": te} if q is not None else {"q": qe, "t": te}
        coeff = Fraction(cnt) * (Fraction(q) ** qe if q is not None else 1)
        out = out + Poly.monomial(mono, coeff)
    return out


def hex_lattice_spec(a: int, b: int, c: int, k: int) -> LatticeSpec:
    region = HexRegion(a, b, c)
    zero = tuple([0] * k)
    rows = tuple(RowSpec("L", Poly.monomial({"q": r}), zero, zero) for r in range(region.rows))
    bottom = tuple(region.start_bits() for _ in range(k))
    top = tuple(region.end_bits() for _ in range(k))
    return LatticeSpec(k, region.width, rows, bottom, top, tuple([a] * (region.rows + 1)))


def hex_partition_function(a: int, b: int, c: int, k: int, q=None) -> Poly:
    """Generating polynomial by row transfer (no enumeration)."""
    spec = hex_lattice_spec(a, b, c, k)
    specialize = {"q": q} if q is not None else None
    return lattice_partition_function(spec, specialize)


def t_coefficients(p: Poly) -> list:
    return [Fraction(c) for c in p.univariate("t")]


# ------------------------------------------------------------ closed forms

def _q_ratio_product(pairs) -> Poly:
    """prod (1 - q^n) / (1 - q^d) as an exact polynomial in q."""
    num, den = [Fraction(1)], [Fraction(1)]
    for n, d in pairs:
        num = _mul_one_minus(num, n)
        den = _mul_one_minus(den, d)
    quo, rem = univariate_divmod(num, den)
    if any(rem):
        raise ArithmeticError("product is not a polynomial")
    return Poly.from_univariate(quo, "q")


def _mul_one_minus(coeffs, n):
    if n == 0:
        return [Fraction(0)] * len(coeffs)
    out = list(coeffs) + [Fraction(0)] * n
    for i, c in enumerate(coeffs):
        out[i + n] -= c
    return out


def closed_form_t1(a: int, b: int, c: int, k: int) -> Poly:
    """q^(k C(a,2) b) (prod_{i<=a, j<=b} (1-q^(c+i+j-1))/(1-q^(i+j-1)))^k."""
    base = _q_ratio_product([(c + i + j - 1, i + j - 1)
                             for i in range(1, a + 1) for j in range(1, b + 1)])
    return Poly.monomial({"q": k * comb(a, 2) * b}) * base ** k


def closed_form_t0(a: int, b: int, c: int, k: int, prefactor: str = "merged") -> Poly:
    """Constant term in t: the (ka) x b x (c-(k-1)a) hexagon.

    The zero-interaction class is carried bijectively onto 1-tilings of the
    merged hexagon with the same q-weight, so its prefactor is
    q^(C(ka,2) b).  ``prefactor="shared"`` uses q^(k C(a,2) b) instead, the
    prefactor of the t=1 and top-coefficient products; the two agree at q=1.
    """
    cc = c - (k - 1) * a
    if cc < 0:
        return Poly()
    base = _q_ratio_product([(cc + i + j - 1, i + j - 1)
                             for i in range(1, k * a + 1) for j in range(1, b + 1)])
    if prefactor == "merged":
        shift = comb(k * a, 2) * b
    elif prefactor == "shared":
        shift = k * comb(a, 2) * b
    else:
        raise ValueError(f"unknown prefactor {prefactor!r}")
    return Poly.monomial({"q": shift}) * base


def closed_form_top(a: int, b: int, c: int, k: int) -> Poly:
    """Coefficient of t^(C(k,2) ab): the a x (kb) x c hexagon, shifted."""
    base = _q_ratio_product([(c + i + j - 1, i + j - 1)
                             for i in range(1, a + 1) for j in range(1, k * b + 1)])
    return Poly.monomial({"q": k * comb(a, 2) * b}) * base


def t_coefficient(p: Poly, n: int) -> Poly:
    """Coefficient of t^n in a polynomial in q and t."""
    out = Poly()
    tid = var_id("t")
    for mono, coeff in p.terms.items():
        exps = dict(mono)
        if exps.get(tid, 0) == n:
            rest = {v: e for v, e in exps.items() if v != tid}
            out = out + Poly({tuple(sorted(rest.items())): coeff})
    return out


# ------------------------------------------------------------- bijections

def hex_flip_symmetry(kl: Sequence[LozengeTiling]) -> list:
    """Reflect a k-tiling of a x b x c into c x b x a and reverse colors.

    Face (col, r) goes to (a+b+c-2-col-r, r), swapping types E and H.  The
    interaction count changes by -C(k,2)(ab - bc).
    """
    reg = kl[0].region
    new = HexRegion(reg.c, reg.b, reg.a)
    swap = {V: V, E: H, H: E}
    out = []
    for t in reversed(kl):
        ft = t.face_types()
        nf = np.full((new.rows, new.width), V, dtype=np.int8)
        for col, r in reg.faces():
            nf[r, reg.a + reg.b + reg.c - 2 - col - r] = swap[int(ft[r, col])]
        out.append(tiling_from_face_types(new, nf))
    return out


def flip_shift(a: int, b: int, c: int, k: int) -> int:
    """interactions(flip(KL)) - interactions(KL) for an a x b x c k-tiling."""
    return -comb(k, 2) * (a * b - b * c)


def hex_t0_bijection(kl: Sequence[LozengeTiling]) -> LozengeTiling:
    """Zero-interaction k-tiling of a x b x c -> tiling of ka x b x (c-(k-1)a).

    Path i of color a' moves right by (k-1)(i-1) + (a'-1) columns and becomes
    path k(i-1) + a' of the merged tiling.
    """
    if lozenge_interactions(kl) != 0:
        raise ValueError("input has interactions")
    k = len(kl)
    reg = kl[0].region
    new = HexRegion(k * reg.a, reg.b, reg.c - (k - 1) * reg.a)
    if new.c < 0:
        raise ValueError("no zero-interaction tilings exist for this shape")
    merged = [None] * (k * reg.a)
    for ca, t in enumerate(kl, start=1):
        for i, p in enumerate(t.positions(), start=1):
            shift = (k - 1) * (i - 1) + (ca - 1)
            merged[k * (i - 1) + ca - 1] = [x + shift for x in p]
    return tiling_from_positions(new, merged)


def hex_t0_inverse(t: LozengeTiling, k: int, a: int) -> list:
    """Inverse of hex_t0_bijection for a tiling of ka x b x c'."""
    reg = t.region
    if reg.a != k * a:
        raise ValueError("tiling height does not match k*a")
    old = HexRegion(a, reg.b, reg.c + (k - 1) * a)
    pos = t.positions()
    out = []
    for ca in range(1, k + 1):
        paths = []
        for i in range(1, a + 1):
            shift = (k - 1) * (i - 1) + (ca - 1)
            paths.append([x - shift for x in pos[k * (i - 1) + ca - 1]])
        out.append(tiling_from_positions(old, paths))
    return out


def right_step_rows(t: LozengeTiling) -> list:
    """r[i][j]: row of the j-th rightward step of path i (weakly increasing)."""
    out = []
    for p in t.positions():
        rows = []
        for r in range(len(p) - 1):
            rows.extend([r] * (p[r + 1] - p[r]))
        out.append(rows)
    return out


def _from_right_steps(region: HexRegion, rsteps) -> LozengeTiling:
    pos = []
    for i, rows in enumerate(rsteps):
        if any(x > y for x, y in zip(rows, rows[1:])):
            raise ValueError("right-step rows must be weakly increasing")
        pos.append([i + sum(1 for x in rows if x < r) for r in range(region.rows + 1)])
    return tiling_from_positions(region, pos)


def hex_tinf_bijection(kl: Sequence[LozengeTiling]) -> LozengeTiling:
    """Max-interaction k-tiling of a x b x c -> tiling of a x kb x c."""
    k = len(kl)
    reg = kl[0].region
    per = [right_step_rows(t) for t in kl]
    merged = []
    for i in range(reg.a):
        rows = []
        for j in range(reg.b):
            for ca in range(k):
                rows.append(per[ca][i][j])
        if any(x > y for x, y in zip(rows, rows[1:])):
            raise ValueError("right-step ordering fails; input is not max-interaction")
        merged.append(rows)
    return _from_right_steps(HexRegion(reg.a, k * reg.b, reg.c), merged)


def hex_tinf_inverse(t: LozengeTiling, k: int) -> list:
    reg = t.region
    if reg.b % k:
        raise ValueError("width is not divisible by k")
    b = reg.b // k
    old = HexRegion(reg.a, b, reg.c)
    rs = right_step_rows(t)
    return [_from_right_steps(old, [[rows[j * k + ca] for j in range(b)] for rows in rs])
            for ca in range(k)]


# ---------------------------------------------------------------- geometry

SQRT3_2 = sqrt(3) / 2


def lozenge_polygon(ty: int, col: int, r: int) -> list:
    """Cartesian corners of the lozenge holding face (col, r)."""
    u, v = col, r
    if ty == V:
        pts = [(u + 1, v), (u + 1, v + 1), (u, v + 2), (u, v + 1)]
    elif ty == H:
        pts = [(u, v + 1), (u + 1, v), (u + 2, v), (u + 1, v + 1)]
    else:
        pts = [(u, v), (u + 1, v), (u + 1, v + 1), (u, v + 1)]
    return [(x + y / 2, y * SQRT3_2) for x, y in pts]


# ------------------------------------------------------------ reference rows

# Two-color generating polynomials at q = 1 for 1 <= a <= 3, b <= 2, c <= 3.
REFERENCE_TABLE = {
    (1, 1, 1): "3*t+1",
    (1, 1, 2): "6*t+3",
    (1, 1, 3): "10*t+6",
    (1, 2, 1): "5*t^2+3*t+1",
    (1, 2, 2): "15*t^2+15*t+6",
    (1, 2, 3): "35*t^2+45*t+20",
    (2, 1, 1): "6*t^2+3*t",
    (2, 1, 2): "20*t^2+15*t+1",
    (2, 1, 3): "50*t^2+45*t+5",
    (2, 2, 1): "t^2*(15*t^2+15*t+6)",
    (2, 2, 2): "105*t^4+175*t^3+104*t^2+15*t+1",
    (2, 2, 3): "490*t^4+1050*t^3+770*t^2+175*t+15",
    (3, 1, 1): "t^2*(10*t+6)",
    (3, 1, 2): "5*t*(10*t^2+9*t+1)",
    (3, 1, 3): "175*t^3+189*t^2+35*t+1",
    (3, 2, 1): "t^4*(35*t^2+45*t+20)",
    (3, 2, 2): "t^2*(490*t^4+1050*t^3+770*t^2+175*t+15)",
    (3, 2, 3): "4116*t^6+11340*t^5+10689*t^4+3850*t^3+594*t^2+35*t+1",
}


def table_row(a: int, b: int, c: int, k: int = 2) -> dict:
    """Compute one row and check it against the reference and the products."""
    from .algebra import parse_poly

    full = hex_generating_polynomial(a, b, c, k)
    at1 = full.substitute({"q": 1})
    top = comb(k, 2) * a * b
    checks = {
        "t0": t_coefficient(full, 0) == closed_form_t0(a, b, c, k),
        "top": t_coefficient(full, top) == closed_form_top(a, b, c, k),
        "sum": at1.evaluate({"t": 1}) == macmahon(a, b, c) ** k,
    }
    ref = REFERENCE_TABLE.get((a, b, c)) if k == 2 else None
    if ref is not None:
        checks["reference"] = at1 == parse_poly(ref)
    return {"shape": [a, b, c], "colors": k, "polynomial": at1.to_text(),
            "reference": ref, "checks": checks, "ok": all(checks.values())}
