"""Closed-form arctic curves and point classification.

A branch is an ellipse arc  L1(x,y)^2 + L2(x,y)^2 = R  cut out by linear
inequalities.  Coefficients live in Q(sqrt 3) (exact), so the hexagon
families need no floating point until classification.  Aztec curves use the
diamond |x| + |y| <= 1.  Hexagon curves use lattice units scaled so that the
height is 2*sqrt(3); the one-color 2a x 2a x 2a hexagon then has side 2 and
is centred at the origin, and each multi-color region is placed so its
curve touches the sides it should.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import atan2, cos, pi, sin, sqrt

import numpy as np

SQRT3 = sqrt(3)


@dataclass(frozen=True)
class QS3:
    """a + b*sqrt(3) with rational a, b."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    @staticmethod
    def of(v) -> "QS3":
        return v if isinstance(v, QS3) else QS3(Fraction(v), Fraction(0))

    def __add__(self, o):
        o = QS3.of(o)
        return QS3(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QS3(-self.a, -self.b)

    def __sub__(self, o):
        return self + (-QS3.of(o))

    def __rsub__(self, o):
        return QS3.of(o) - self

    def __mul__(self, o):
        o = QS3.of(o)
        return QS3(self.a * o.a + 3 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = QS3.of(o)
        n = o.a * o.a - 3 * o.b * o.b
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 3)")
        return self * QS3(o.a / n, -o.b / n)

    def __float__(self):
        return float(self.a) + float(self.b) * SQRT3

    def is_rational(self) -> bool:
        return self.b == 0

    def text(self) -> str:
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}*sqrt3"


R3 = QS3(Fraction(0), Fraction(1))


def _q(v) -> QS3:
    return QS3.of(v)


@dataclass(frozen=True)
class Linear:
    """cx*x + cy*y + c0."""

    cx: QS3
    cy: QS3
    c0: QS3

    @staticmethod
    def make(cx=0, cy=0, c0=0) -> "Linear":
        return Linear(_q(cx), _q(cy), _q(c0))

    def __call__(self, x: float, y: float):
        return float(self.cx) * x + float(self.cy) * y + float(self.c0)

    def scale(self, s) -> "Linear":
        s = _q(s)
        return Linear(self.cx * s, self.cy * s, self.c0 * s)


@dataclass(frozen=True)
class CurveBranch:
    name: str
    l1: Linear
    l2: Linear
    rhs: QS3
    constraints: tuple = field(default=())  # Linear forms required to be >= 0

    def value(self, x, y):
        """L1^2 + L2^2 - R (float or numpy)."""
        return self.l1(x, y) ** 2 + self.l2(x, y) ** 2 - float(self.rhs)

    def coefficients(self) -> dict:
        """Exact coefficients of L1^2 + L2^2 - R in x^2, xy, y^2, x, y, 1."""
        out = {k: QS3() for k in ("xx", "xy", "yy", "x", "y", "1")}
        for f in (self.l1, self.l2):
            out["xx"] += f.cx * f.cx
            out["xy"] += 2 * f.cx * f.cy
            out["yy"] += f.cy * f.cy
            out["x"] += 2 * f.cx * f.c0
            out["y"] += 2 * f.cy * f.c0
            out["1"] += f.c0 * f.c0
        out["1"] -= self.rhs
        return out

    def in_domain(self, x: float, y: float, tol: float = 1e-12) -> bool:
        return all(c(x, y) >= -tol for c in self.constraints)

    def _param(self):
        """Affine map theta -> (x, y) tracing the full ellipse."""
        a1, b1, c1 = float(self.l1.cx), float(self.l1.cy), float(self.l1.c0)
        a2, b2, c2 = float(self.l2.cx), float(self.l2.cy), float(self.l2.c0)
        det = a1 * b2 - a2 * b1
        r = sqrt(float(self.rhs))

        def point(theta):
            u, v = r * cos(theta) - c1, r * sin(theta) - c2
            return ((b2 * u - b1 * v) / det, (a1 * v - a2 * u) / det)

        def angle(x, y):
            return atan2(self.l2(x, y), self.l1(x, y))

        return point, angle

    def endpoints(self, tol: float = 1e-9) -> list:
        """Points where the arc meets the boundary of its domain."""
        point, _ = self._param()
        out = []
        for cons in self.constraints:
            for theta in _line_ellipse_angles(self, cons):
                x, y = point(theta)
                if self.in_domain(x, y, tol) and not any(
                        abs(x - p[0]) < 1e-9 and abs(y - p[1]) < 1e-9 for p in out):
                    out.append((x, y))
        return out

    def polyline(self, n: int = 400) -> list:
        """Points along the arc, ordered, including both endpoints."""
        point, angle = self._param()
        ends = self.endpoints()
        if len(ends) != 2:
            raise ValueError(f"branch {self.name} has {len(ends)} endpoints")
        t0, t1 = angle(*ends[0]), angle(*ends[1])
        span = (t1 - t0) % (2 * pi)
        mid = point(t0 + span / 2)
        if not self.in_domain(*mid, tol=1e-9):
            span -= 2 * pi
        return [point(t0 + span * i / n) for i in range(n + 1)]


def _line_ellipse_angles(branch: CurveBranch, line: Linear) -> list:
    """Angles theta where the parametrised ellipse meets line = 0."""
    point, _ = branch._param()
    # point(theta) is affine in (cos, sin), so line(point) = A cos + B sin + C
    p0 = np.array(point(0.0))
    p1 = np.array(point(pi / 2))
    p2 = np.array(point(pi))
    centre = (p0 + p2) / 2
    ucos = p0 - centre
    usin = p1 - centre
    A = float(line.cx) * ucos[0] + float(line.cy) * ucos[1]
    B = float(line.cx) * usin[0] + float(line.cy) * usin[1]
    C = line(*centre)
    rho = sqrt(A * A + B * B)
    if rho == 0 or abs(C) > rho * (1 + 1e-12):
        return []
    base = atan2(B, A)
    d = np.arccos(max(-1.0, min(1.0, -C / rho)))
    return [base + d, base - d]


@dataclass(frozen=True)
class CurveFamily:
    name: str
    branches: tuple
    region: tuple  # polygon vertices of the ambient region, counter-clockwise

    def closed_polyline(self, n: int = 400) -> np.ndarray:
        """Branches chained end to end into one closed loop."""
        pieces = [list(b.polyline(n)) for b in self.branches]
        loop = pieces.pop(0)
        while pieces:
            tail = np.array(loop[-1])
            best, flip, dist = None, False, None
            for idx, p in enumerate(pieces):
                for rev in (False, True):
                    q = p[-1] if rev else p[0]
                    d = float(np.hypot(*(np.array(q) - tail)))
                    if dist is None or d < dist:
                        best, flip, dist = idx, rev, d
            p = pieces.pop(best)
            loop.extend(reversed(p) if flip else p)
        return np.array(loop)

    def junction_gaps(self) -> list:
        """Distance from every branch endpoint to the nearest other endpoint."""
        ends = [(i, e) for i, b in enumerate(self.branches) for e in b.endpoints()]
        gaps = []
        for i, e in ends:
            others = [f for j, f in ends if j != i]
            gaps.append(min(float(np.hypot(e[0] - f[0], e[1] - f[1])) for f in others))
        return gaps


# --------------------------------------------------------------- Aztec

def _ge(cx=0, cy=0, c0=0) -> Linear:
    return Linear.make(cx, cy, c0)


DIAMOND = ((1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0))


def aztec_t0_curves(k: int) -> CurveFamily:
    """Frozen/disordered boundary of each color of a t=0 k-tiling."""
    if k < 1:
        raise ValueError("k must be at least 1")
    F = Fraction
    h = F(1, 2 * k)
    km1 = k - 1
    b1 = CurveBranch("top", _ge(1), _ge(0, 1), _q(F(1, 2)),
                     (_ge(1, 0, F(1, 2)), _ge(-1, 0, F(1, 2)), _ge(0, 1, F(-1, 2))))
    b2 = CurveBranch("bottom", _ge(1, km1), _ge(0, k), _q(F(1, 2)),
                     (_ge(1, 0, h), _ge(-1, 0, 1 - h), _ge(0, -1, -h)))
    # (2x + (k-1)(x+y-1)) / 2 and (2y + (k-1)(x+y-1)) / 2
    b3 = CurveBranch("right",
                     _ge(F(2 + km1, 2), F(km1, 2), F(-km1, 2)),
                     _ge(F(km1, 2), F(2 + km1, 2), F(-km1, 2)),
                     _q(F(1, 2)),
                     (_ge(0, 1, h), _ge(0, -1, F(1, 2)),
                      _ge(1, F(km1, k + 1), -F(k, k + 1))))
    # (2x + (k-1)(x+y-1)) / (2k) and (2y + (k-1)(3y-x-1)) / (2k)
    b4 = CurveBranch("left",
                     _ge(F(2 + km1, 2 * k), F(km1, 2 * k), F(-km1, 2 * k)),
                     _ge(F(-km1, 2 * k), F(2 + 3 * km1, 2 * k), F(-km1, 2 * k)),
                     _q(F(1, 2)),
                     (_ge(0, 1, h), _ge(0, -1, F(1, 2)),
                      _ge(-1, -F(km1, k + 1), -F(1, k + 1))))
    return CurveFamily(f"aztec-t0-k{k}", (b1, b2, b3, b4), DIAMOND)


def _swap_linear(f: Linear) -> Linear:
    return Linear(f.cy, f.cx, f.c0)


def swap_xy(fam: CurveFamily, name: str) -> CurveFamily:
    branches = tuple(CurveBranch(b.name, _swap_linear(b.l1), _swap_linear(b.l2), b.rhs,
                                 tuple(_swap_linear(c) for c in b.constraints))
                     for b in fam.branches)
    region = tuple((y, x) for x, y in reversed(fam.region))
    return CurveFamily(name, branches, region)


def aztec_tinf_curves(k: int) -> CurveFamily:
    """t -> infinity: the t = 0 family reflected in y = x."""
    return swap_xy(aztec_t0_curves(k), f"aztec-tinf-k{k}")


def circle_branch_coefficients() -> dict:
    """x^2 + y^2 - 1/2."""
    return {"xx": _q(1), "xy": _q(0), "yy": _q(1), "x": _q(0), "y": _q(0),
            "1": _q(Fraction(-1, 2))}


# -------------------------------------------------------------- hexagon

def _lin3(cx, cy_rat, cy_r3, c0, denom) -> Linear:
    """(cx*x + (cy_rat + cy_r3*sqrt3)*y + c0) / denom."""
    d = Fraction(denom)
    return Linear(_q(Fraction(cx) / d), QS3(Fraction(cy_rat) / d, Fraction(cy_r3) / d),
                  _q(Fraction(c0) / d))


def _yband(lo: QS3, hi: QS3) -> tuple:
    """lo <= y <= hi."""
    return (Linear(_q(0), _q(1), -lo), Linear(_q(0), _q(-1), hi))


_HALF_R3 = QS3(Fraction(0), Fraction(1, 2))
_Y = _lin3(0, 1, 0, 0, 1)


def hexagon_t0_curves() -> CurveFamily:
    """t = 0 boundary for 2-tilings of the a x 2a x 3a hexagon."""
    F = Fraction
    three = _q(3)
    br = [
        CurveBranch("1", _lin3(6, 0, -1, 6, 3), _Y, three,
                    (_ge(-1, 0, F(-3, 2)),) + _yband(-_HALF_R3, _HALF_R3)),
        CurveBranch("2", _lin3(1, 0, 0, 0, 1), _Y, three,
                    (_ge(-1, 0, 0),) + _yband(_HALF_R3, R3)),
        CurveBranch("3", _lin3(3, 0, -1, 3, 3), _Y, three,
                    (_ge(1, 0, 0),) + _yband(_HALF_R3, R3)),
        CurveBranch("4", _lin3(6, 0, -1, 0, 3), _Y, three,
                    (_ge(1, 0, F(-1, 2)),) + _yband(-_HALF_R3, _HALF_R3)),
        CurveBranch("5", _lin3(1, 0, 0, 1, 1), _Y, three,
                    (_ge(1, 0, 1),) + _yband(-R3, -_HALF_R3)),
        CurveBranch("6", _lin3(3, 0, -1, 0, 3), _Y, three,
                    (_ge(-1, 0, -1),) + _yband(-R3, -_HALF_R3)),
    ]
    return CurveFamily("hexagon-t0", tuple(br), hexagon_polygon(1, 2, 3, -2.0))


def hexagon_tinf_curves() -> CurveFamily:
    """t -> infinity boundary for 2-tilings of the 2a x a x 2a hexagon."""
    F = Fraction
    three = _q(3)
    br = [
        CurveBranch("1", _lin3(1, 0, 0, 0, 1), _Y, three,
                    (_ge(-1, 0, F(-3, 2)),) + _yband(-_HALF_R3, _HALF_R3)),
        CurveBranch("2", _lin3(6, 0, -1, 6, 3), _Y, three,
                    (_ge(-1, 0, F(-1, 2)),) + _yband(_HALF_R3, R3)),
        CurveBranch("3", _lin3(6, 0, 1, 0, 3), _Y, three,
                    (_ge(1, 0, F(1, 2)),) + _yband(_HALF_R3, R3)),
        CurveBranch("4", _lin3(1, 0, 0, 1, 1), _Y, three,
                    (_ge(1, 0, F(-1, 2)),) + _yband(-_HALF_R3, _HALF_R3)),
        CurveBranch("5", _lin3(6, 0, -1, 0, 3), _Y, three,
                    (_ge(1, 0, F(1, 2)),) + _yband(-R3, -_HALF_R3)),
        CurveBranch("6", _lin3(6, 0, 1, 6, 3), _Y, three,
                    (_ge(-1, 0, F(-1, 2)),) + _yband(-R3, -_HALF_R3)),
    ]
    return CurveFamily("hexagon-tinf", tuple(br), hexagon_polygon(2, 1, 2, -1.0))


def hexagon_polygon(a: int, b: int, c: int, x0: float) -> tuple:
    """Hexagon with sides b (bottom), c, a, b (top), c, a, counter-clockwise.

    Lengths are rescaled so the height is 2*sqrt(3) (y from -sqrt3 to sqrt3);
    the bottom-left corner sits at (x0, -sqrt3).
    """
    u = 4 / (a + c)
    a, b, c = a * u, b * u, c * u
    h = SQRT3 / 2
    pts = [(0.0, 0.0), (b, 0.0), (b + c / 2, c * h), (b + c / 2 - a / 2, (c + a) * h),
           (c / 2 - a / 2, (c + a) * h), (-a / 2, a * h)]
    return tuple((x + x0, y - SQRT3) for x, y in pts)


# ---------------------------------------------------------- classification

INSIDE, OUTSIDE, NEAR = "inside", "outside", "near"


def _points_in_polygon(px: np.ndarray, py: np.ndarray, poly: np.ndarray) -> np.ndarray:
    """Even-odd ray casting, vectorised over points."""
    inside = np.zeros(px.shape, dtype=bool)
    x0, y0 = poly[:-1, 0], poly[:-1, 1]
    x1, y1 = poly[1:, 0], poly[1:, 1]
    for a, b, c, d in zip(x0, y0, x1, y1):
        cond = (b > py) != (d > py)
        with np.errstate(divide="ignore", invalid="ignore"):
            xs = a + (py - b) * (c - a) / (d - b)
        inside ^= cond & (px < xs)
    return inside


def _distance_to_polyline(px: np.ndarray, py: np.ndarray, poly: np.ndarray) -> np.ndarray:
    best = np.full(px.shape, np.inf)
    for (a, b), (c, d) in zip(poly[:-1], poly[1:]):
        dx, dy = c - a, d - b
        L2 = dx * dx + dy * dy
        if L2 == 0:
            t = np.zeros_like(px)
        else:
            t = np.clip(((px - a) * dx + (py - b) * dy) / L2, 0.0, 1.0)
        qx, qy = a + t * dx, b + t * dy
        best = np.minimum(best, np.hypot(px - qx, py - qy))
    return best


class Classifier:
    """Inside/outside tests against a family's closed curve."""

    def __init__(self, family: CurveFamily, n: int = 400):
        self.family = family
        loop = family.closed_polyline(n)
        self.loop = np.vstack([loop, loop[:1]])

    def inside(self, px, py) -> np.ndarray:
        return _points_in_polygon(np.asarray(px, float), np.asarray(py, float), self.loop)

    def distance(self, px, py) -> np.ndarray:
        return _distance_to_polyline(np.asarray(px, float), np.asarray(py, float), self.loop)


def classify(point, family: CurveFamily, eps: float = 1e-9) -> str:
    c = Classifier(family)
    x, y = np.array([float(point[0])]), np.array([float(point[1])])
    if c.distance(x, y)[0] <= eps:
        return NEAR
    return INSIDE if c.inside(x, y)[0] else OUTSIDE


def family_to_json(family: CurveFamily, n: int = 200) -> dict:
    return {"name": family.name,
            "branches": [{"name": b.name, "points": [[round(x, 9), round(y, 9)]
                                                     for x, y in b.polyline(n)]}
                         for b in family.branches],
            "region": [list(p) for p in family.region]}
