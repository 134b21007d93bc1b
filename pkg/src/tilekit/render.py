"""Deterministic SVG rendering of tilings, paths, statistics and curves.

Elements are emitted in sorted order with fixed three-decimal precision, so
identical inputs give byte-identical documents.  The y axis points up as in
the checkerboard pictures (SVG y is flipped on output).
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from math import sqrt
from typing import Any

from .aztec import I, II, III, IV, KTiling, Tiling, domino_type
from .schroder import SchroderPathFamily

TYPE_FILL = {I: "#e66101", II: "#5e3c99", III: "#fdb863", IV: "#b2abd2"}
LOZENGE_FILL = {1: "#66c2a5", 2: "#fc8d62", 3: "#8da0cb"}
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
CURVE_STROKE = "#000000"
PAD = 10.0


def _f(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


@dataclass
class RenderSpec:
    artifact: Any  # Tiling, KTiling, SchroderPathFamily, CellStatistics or lozenge layers
    overlay: Any = None  # CurveFamily
    palette: tuple = PALETTE
    scale: float = 12.0
    legend: dict = field(default_factory=dict)
    color: int = 0  # which color a heat map shows

    def __post_init__(self):
        k = _colors(self.artifact)
        if len(self.palette) < k:
            raise ValueError(f"palette has {len(self.palette)} entries for {k} colors")
        if self.scale <= 0:
            raise ValueError("scale must be positive")


def _colors(obj) -> int:
    if isinstance(obj, KTiling):
        return obj.k
    if hasattr(obj, "colors"):
        return obj.colors
    if isinstance(obj, (list, tuple)):
        return len(obj)
    return 1


class _Canvas:
    def __init__(self, width: float, height: float, scale: float):
        self.scale = scale
        self.height = height
        self.root = ET.Element("svg", xmlns="http://www.w3.org/2000/svg",
                               width=_f(width + 2 * PAD), height=_f(height + 2 * PAD + 20),
                               viewBox=f"0 0 {_f(width + 2 * PAD)} {_f(height + 2 * PAD + 20)}")

    def group(self, name: str, **attrs) -> ET.Element:
        return ET.SubElement(self.root, "g", id=name, **attrs)

    def px(self, x: float, y: float) -> tuple:
        """Model units (origin at the lower left) to SVG pixels."""
        return PAD + x * self.scale, PAD + self.height - y * self.scale

    def path_d(self, pts, close: bool = False) -> str:
        out = []
        for i, (x, y) in enumerate(pts):
            X, Y = self.px(x, y)
            out.append(("M" if i == 0 else "L") + f"{_f(X)} {_f(Y)}")
        return "".join(out) + ("Z" if close else "")

    def legend(self, info: dict) -> None:
        g = self.group("legend", fill="#000000")
        g.set("font-family", "monospace")
        g.set("font-size", "10")
        text = " ".join(f"{k}={info[k]}" for k in sorted(info))
        el = ET.SubElement(g, "text", x=_f(PAD), y=_f(self.height + 2 * PAD + 10))
        el.text = text

    def tostring(self) -> str:
        ET.indent(self.root)
        return ET.tostring(self.root, encoding="unicode") + "\n"


def _aztec_canvas(m: int, scale: float) -> _Canvas:
    return _Canvas(2 * m * scale, 2 * m * scale, scale)


def _domino_rect(cv: _Canvas, m: int, d) -> dict:
    w, h = (2, 1) if d.o == "h" else (1, 2)
    X, Y = cv.px(d.x + m, d.y + m + h)
    return {"x": _f(X), "y": _f(Y), "width": _f(w * cv.scale), "height": _f(h * cv.scale)}


def _render_tiling(spec: RenderSpec, kt: KTiling) -> str:
    m = kt.rank
    cv = _aztec_canvas(m, spec.scale)
    for c, layer in enumerate(kt.layers):
        g = cv.group(f"color{c + 1}", stroke=spec.palette[c])
        g.set("stroke-width", "1")
        if kt.k > 1:
            g.set("fill-opacity", _f(1 / kt.k))
        for d in sorted(layer.dominos):
            el = ET.SubElement(g, "rect", **_domino_rect(cv, m, d))
            el.set("class", "domino")
            el.set("fill", TYPE_FILL[domino_type(d, m)])
    _overlay(cv, spec, m)
    cv.legend(spec.legend)
    return cv.tostring()


def _render_paths(spec: RenderSpec, fam: SchroderPathFamily) -> str:
    m = fam.rank
    cv = _aztec_canvas(m, spec.scale)
    g = cv.group("paths", fill="none", stroke=spec.palette[0])
    g.set("stroke-width", "2")
    for i in range(1, m + 1):
        pts = [(x + m, y2 / 2 + m) for x, y2 in fam.points(i)]
        el = ET.SubElement(g, "path", d=cv.path_d(pts))
        el.set("class", "path")
    cv.legend(spec.legend)
    return cv.tostring()


def _render_statistics(spec: RenderSpec, stats) -> str:
    m = stats.rank
    cv = _aztec_canvas(m, spec.scale)
    freq = stats.frequencies()[spec.color]
    g = cv.group("heatmap", stroke="none")
    for i in range(2 * m):
        for j in range(2 * m):
            a, b = i - m, j - m
            if abs(2 * a + 1) + abs(2 * b + 1) > 2 * m:
                continue
            # dark where one type dominates (frozen), light where mixed
            v = float(freq[i, j].max())
            level = int(round(255 * (1 - (v - 0.25) / 0.75)))
            X, Y = cv.px(i, j + 1)
            el = ET.SubElement(g, "rect", x=_f(X), y=_f(Y), width=_f(cv.scale),
                               height=_f(cv.scale))
            el.set("fill", f"#{level:02x}{level:02x}{level:02x}")
    _overlay(cv, spec, m)
    cv.legend(spec.legend)
    return cv.tostring()


def _overlay(cv: _Canvas, spec: RenderSpec, m: int) -> None:
    """Curves live in |x| + |y| <= 1; cell units are m times larger."""
    if spec.overlay is None:
        return
    g = cv.group("overlay", fill="none", stroke=CURVE_STROKE)
    g.set("stroke-width", "2")
    for br in spec.overlay.branches:
        pts = [(x * m + m, y * m + m) for x, y in br.polyline(200)]
        el = ET.SubElement(g, "path", d=cv.path_d(pts))
        el.set("class", "branch")
        el.set("data-branch", br.name)


def hex_to_curve(a: int, c: int, x0: float):
    """Lattice-plane point -> rescaled curve coordinates (height 2*sqrt 3)."""
    u = 4 / (a + c)

    def f(x, y):
        return (x - a) * u + x0, y * u - sqrt(3)

    return f


def _render_lozenges(spec: RenderSpec, layers) -> str:
    from .hexagon import lozenge_polygon

    reg = layers[0].region
    width = reg.a + reg.b + reg.c
    height = reg.rows * sqrt(3) / 2
    cv = _Canvas(width * spec.scale, height * spec.scale, spec.scale)
    for c, til in enumerate(layers):
        g = cv.group(f"color{c + 1}", stroke=spec.palette[c])
        g.set("stroke-width", "1")
        if len(layers) > 1:
            g.set("fill-opacity", _f(1 / len(layers)))
        for ty, col, r in til.lozenges():
            el = ET.SubElement(g, "path", d=cv.path_d(lozenge_polygon(ty, col, r), close=True))
            el.set("class", "lozenge")
            el.set("fill", LOZENGE_FILL[ty])
    if spec.overlay is not None:
        x0 = spec.overlay.region[0][0]
        u = (reg.a + reg.c) / 4
        g = cv.group("overlay", fill="none", stroke=CURVE_STROKE)
        g.set("stroke-width", "2")
        for br in spec.overlay.branches:
            pts = [((x - x0) * u + reg.a, (y + sqrt(3)) * u) for x, y in br.polyline(200)]
            el = ET.SubElement(g, "path", d=cv.path_d(pts))
            el.set("class", "branch")
            el.set("data-branch", br.name)
    cv.legend(spec.legend)
    return cv.tostring()


def render_svg(spec: RenderSpec) -> str:
    from .sampler import CellStatistics
    from .schema import is_lozenge

    art = spec.artifact
    if isinstance(art, Tiling):
        return _render_tiling(spec, KTiling.make([art]))
    if isinstance(art, KTiling):
        return _render_tiling(spec, art)
    if isinstance(art, SchroderPathFamily):
        return _render_paths(spec, art)
    if isinstance(art, CellStatistics):
        return _render_statistics(spec, art)
    if is_lozenge(art):
        return _render_lozenges(spec, list(art))
    raise TypeError(f"cannot render {type(art).__name__}")

