"""Ternary rendering of the conditioning simplex for a 3-element frame and a 2-element event.

A point q of M_A = {x, y, xy} with barycentric coordinates
(q(x), q(y), q(xy)) is drawn at (q(y) + q(xy)/2, q(xy) * sqrt(3)/2), so
m_x sits at (0, 0), m_y at (1, 0) and m_xy at (1/2, sqrt(3)/2).
Pseudo belief functions land outside the triangle.
"""

from __future__ import annotations

import csv
import io as _io
import math
from dataclasses import dataclass, field

import numpy as np

from .core import MassFunction, SignedMassFunction, as_event, restrict_mask
from .errors import WrongDimensions
from .lp import l1_condition, l2_condition, l2_condition_belief_space, linf_barycentre_belief_space, linf_condition

SQRT3_2 = math.sqrt(3.0) / 2.0
CSV_COLUMNS = ("label", "kind", "x", "y", "admissible")


@dataclass(frozen=True)
class ScenePoint:
    label: str
    kind: str
    x: float
    y: float
    admissible: bool


@dataclass(frozen=True)
class TernaryPlotScene:
    event_key: str
    generator_keys: tuple[str, str, str]
    points: tuple[ScenePoint, ...]
    polygons: dict = field(default_factory=dict)  # name -> tuple of point labels

    def point(self, label: str) -> ScenePoint:
        for p in self.points:
            if p.label == label:
                return p
        raise KeyError(label)

    def of_kind(self, kind: str) -> list[ScenePoint]:
        return [p for p in self.points if p.kind == kind]

    def to_csv(self) -> str:
        """Full-precision coordinates (repr round-trips floats exactly)."""
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for p in self.points:
            w.writerow((p.label, p.kind, repr(p.x), repr(p.y), "true" if p.admissible else "false"))
        return buf.getvalue()

    def to_svg(self, size: int = 480) -> str:
        return _render_svg(self, size)


def _xy(q: SignedMassFunction, gens) -> tuple[float, float]:
    b, c = q.values[gens[1]], q.values[gens[2]]
    return float(b + c / 2.0), float(c * SQRT3_2)


def ternary_scene(m: MassFunction, event, belief_space: bool = False) -> TernaryPlotScene:
    frame = m.frame
    if frame.n != 3:
        raise WrongDimensions(f"the ternary plot needs a 3-element frame, got {frame.n} elements")
    A = as_event(frame, event)
    if A.bit_count() != 2:
        raise WrongDimensions(f"the ternary plot needs a 2-element event, got {{{frame.key(A)}}}")
    gens = tuple(int(g) for g in np.flatnonzero(restrict_mask(frame, A)))
    keys = tuple(frame.key(g) for g in gens)
    pts: list[ScenePoint] = []
    polygons = {}

    def add(label, kind, q):
        x, y = _xy(q, gens)
        pts.append(ScenePoint(label, kind, x, y, q.is_admissible))
        return label

    corners = ((0.0, 0.0), (1.0, 0.0), (0.5, SQRT3_2))
    polygons["reference"] = tuple(f"M_A:{k}" for k in keys)
    for k, (x, y) in zip(keys, corners):
        pts.append(ScenePoint(f"M_A:{k}", "reference", x, y, True))

    l1 = l1_condition(m, A)
    polygons["l1"] = tuple(add(f"L1:{frame.key(b)}", "l1-vertex", v) for b, v in zip(l1.keys, l1.vertices))
    add("L1:centroid", "l1-centroid", l1.barycenter)

    linf = linf_condition(m, A)
    polygons["linf"] = tuple(add(f"Linf:{frame.key(b)}", "linf-vertex", v) for b, v in zip(linf.keys, linf.vertices))
    add("Linf:centroid", "linf-centroid", linf.barycenter)

    add("L2", "l2-point", l2_condition(m, A))
    if belief_space:
        add("L2-belief", "belief-space", l2_condition_belief_space(m, A))
        add("Linf-bary-belief", "belief-space", linf_barycentre_belief_space(m, A))
    return TernaryPlotScene(frame.key(A), keys, tuple(pts), polygons)


_STYLE = {
    "reference": ("none", "#000000"),
    "l1": ("#d62728", "#d62728"),
    "linf": ("none", "#2ca02c"),
}
_MARK = {
    "l1-vertex": "#d62728",
    "linf-vertex": "#2ca02c",
    "l2-point": "#d62728",
    "belief-space": "#e377c2",
}


def _render_svg(scene: TernaryPlotScene, size: int) -> str:
    pad = 0.35 * size
    xs = [p.x for p in scene.points]
    ys = [p.y for p in scene.points]
    lo_x, hi_x = min(xs + [0.0]), max(xs + [1.0])
    lo_y, hi_y = min(ys + [0.0]), max(ys + [SQRT3_2])
    scale = size / max(hi_x - lo_x, hi_y - lo_y)
    width = int(round((hi_x - lo_x) * scale + 2 * pad))
    height = int(round((hi_y - lo_y) * scale + 2 * pad))

    def to_px(x, y):
        return pad + (x - lo_x) * scale, height - pad - (y - lo_y) * scale

    by_label = {p.label: p for p in scene.points}
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for name in ("reference", "linf", "l1"):
        labels = scene.polygons.get(name, ())
        if len(labels) < 2:
            continue
        fill, stroke = _STYLE[name]
        coords = " ".join("{:.2f},{:.2f}".format(*to_px(by_label[l].x, by_label[l].y)) for l in labels)
        opacity = ' fill-opacity="0.35"' if fill != "none" else ""
        out.append(f'<polygon points="{coords}" fill="{fill}"{opacity} stroke="{stroke}" stroke-width="2"/>')
    for p in scene.points:
        px, py = to_px(p.x, p.y)
        if p.kind == "reference":
            out.append(f'<text x="{px:.2f}" y="{py + 18:.2f}" font-size="14" text-anchor="middle">m_{{{p.label[4:]}}}</text>')
            continue
        color = _MARK.get(p.kind)
        if color is None:
            continue
        if p.kind in ("l2-point", "belief-space"):
            out.append(f'<rect x="{px - 5:.2f}" y="{py - 5:.2f}" width="10" height="10" fill="{color}"/>')
        else:
            out.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="4" fill="{color}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
