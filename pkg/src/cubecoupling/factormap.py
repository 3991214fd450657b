"""SVG factor maps: labeled scatter on a square background grid.

The grid step ``d`` is written in a corner of every map so that maps drawn
at different scales can be compared. Output is a pure function of the input
(no timestamps, no randomness).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence
from xml.sax.saxutils import escape

import numpy as np

from .errors import EmptyScores

STYLES = ("open", "filled", "arrow", "label")


@dataclass
class Layer:
    """One set of points drawn on a map.

    ``style`` is ``open`` (hollow circles), ``filled``, ``arrow`` (vectors
    from the origin) or ``label`` (text only). When ``groups`` is given,
    each point is joined to its group barycenter (a star) and only the
    barycenters are labeled.
    """

    scores: np.ndarray
    labels: Sequence[str]
    style: str = "open"
    groups: Optional[Sequence[str]] = None
    label_fill: str = "white"


def nice_step(span: float, target: int = 5) -> float:
    """A 1-2-5 step giving roughly ``target`` grid cells over ``span``."""
    if not span > 0 or not math.isfinite(span):
        return 1.0
    raw = span / target
    mag = 10.0 ** math.floor(math.log10(raw))
    for m in (1.0, 2.0, 5.0, 10.0):
        if raw <= m * mag * (1 + 1e-12):
            return m * mag
    return 10.0 * mag


def _fmt_d(d: float) -> str:
    return f"{d:.6g}"


def _validate(layer: Layer, axes):
    s = np.asarray(layer.scores, dtype=float)
    if s.ndim != 2 or s.shape[0] == 0:
        raise EmptyScores("no points to draw")
    if s.shape[1] <= max(axes):
        raise EmptyScores(f"scores have {s.shape[1]} axes, map needs axis {max(axes) + 1}")
    if len(layer.labels) != s.shape[0]:
        raise ValueError(f"{len(layer.labels)} labels for {s.shape[0]} points")
    if layer.style not in STYLES:
        raise ValueError(f"unknown style {layer.style!r}")
    if not np.all(np.isfinite(s[:, list(axes)])):
        raise ValueError("scores contain non-finite values")
    return s[:, list(axes)]


def _group_centers(xy, groups):
    order = {}
    for gname in groups:
        order.setdefault(str(gname), len(order))
    idx = np.array([order[str(gname)] for gname in groups])
    centers = np.zeros((len(order), 2))
    for k in range(len(order)):
        centers[k] = xy[idx == k].mean(axis=0)
    return list(order), idx, centers


def _panel(layers, axes, size, title):
    """SVG fragment for one map drawn in a ``size`` x ``size`` box."""
    prepared = []
    pts = []
    for layer in layers:
        xy = _validate(layer, axes)
        centers = None
        if layer.groups is not None:
            if len(layer.groups) != xy.shape[0]:
                raise ValueError("one group label per point required")
            centers = _group_centers(xy, layer.groups)
            pts.append(centers[2])
        prepared.append((layer, xy, centers))
        pts.append(xy)
    allpts = np.vstack(pts + [np.zeros((1, 2))])
    lo = allpts.min(axis=0)
    hi = allpts.max(axis=0)
    span = float(max(hi - lo))
    d = nice_step(span if span > 0 else 1.0)
    lo = np.floor(lo / d) * d - d
    hi = np.ceil(hi / d) * d + d
    extent = float(max(hi - lo))
    margin = 10.0
    top = 24.0 if title else margin
    scale = (size - margin - top) / extent
    # square frame whose corners stay on grid multiples
    lo = lo - np.floor((extent - (hi - lo)) / (2 * d) + 1e-9) * d

    def px(x, y):
        return margin + (x - lo[0]) * scale, top + (lo[1] + extent - y) * scale

    out = []
    if title:
        out.append(f'<text class="title" x="{size / 2:.2f}" y="16" text-anchor="middle">{escape(title)}</text>')
    out.append('<g class="grid" stroke="#d0d0d0" stroke-width="0.5">')
    n_lines = int(round(extent / d))
    for i in range(n_lines + 1):
        v = lo[0] + i * d
        x0, y0 = px(v, lo[1])
        x1, y1 = px(v, lo[1] + extent)
        out.append(f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x1:.2f}" y2="{y1:.2f}"/>')
        v = lo[1] + i * d
        x0, y0 = px(lo[0], v)
        x1, y1 = px(lo[0] + extent, v)
        out.append(f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x1:.2f}" y2="{y1:.2f}"/>')
    out.append("</g>")
    ox, oy = px(0.0, 0.0)
    out.append(f'<g class="origin" stroke="#808080" stroke-width="0.8">')
    out.append(f'<line x1="{margin:.2f}" y1="{oy:.2f}" x2="{size - margin:.2f}" y2="{oy:.2f}"/>')
    out.append(f'<line x1="{ox:.2f}" y1="{top:.2f}" x2="{ox:.2f}" y2="{size - margin:.2f}"/>')
    out.append("</g>")
    out.append(
        f'<text class="scale" x="{size - margin - 4:.2f}" y="{top + 14:.2f}" text-anchor="end" '
        f'font-size="11">d = {_fmt_d(d)}</text>'
    )
    for layer, xy, centers in prepared:
        fill = "black" if layer.style == "filled" else "white"
        if centers is not None:
            names, idx, cxy = centers
            for (x, y), k in zip(xy, idx):
                a = px(x, y)
                b = px(*cxy[k])
                out.append(
                    f'<line class="star" x1="{a[0]:.2f}" y1="{a[1]:.2f}" x2="{b[0]:.2f}" y2="{b[1]:.2f}" '
                    'stroke="black" stroke-width="0.6"/>'
                )
        for (x, y), lab in zip(xy, layer.labels):
            a = px(x, y)
            if layer.style == "arrow":
                out.append(
                    f'<line class="arrow" x1="{ox:.2f}" y1="{oy:.2f}" x2="{a[0]:.2f}" y2="{a[1]:.2f}" '
                    'stroke="black" stroke-width="0.8" marker-end="url(#arrowhead)"/>'
                )
            elif layer.style in ("open", "filled"):
                out.append(
                    f'<circle class="point" cx="{a[0]:.2f}" cy="{a[1]:.2f}" r="3" fill="{fill}" '
                    'stroke="black" stroke-width="0.8"/>'
                )
            if centers is None:
                out.append(
                    f'<text class="label" x="{a[0] + 4:.2f}" y="{a[1] - 4:.2f}" font-size="10">{escape(str(lab))}</text>'
                )
        if centers is not None:
            names, _, cxy = centers
            for name, (x, y) in zip(names, cxy):
                a = px(x, y)
                w = 7 + 6 * len(name)
                out.append(
                    f'<g class="barycenter"><rect x="{a[0] - w / 2:.2f}" y="{a[1] - 7:.2f}" width="{w:.2f}" '
                    f'height="14" fill="{layer.label_fill}" stroke="black" stroke-width="0.6"/>'
                    f'<text x="{a[0]:.2f}" y="{a[1] + 4:.2f}" text-anchor="middle" font-size="10">'
                    f"{escape(name)}</text></g>"
                )
    return out, d


_DEFS = (
    '<defs><marker id="arrowhead" markerWidth="6" markerHeight="6" refX="5" refY="3" orient="auto">'
    '<path d="M0,0 L6,3 L0,6 z"/></marker></defs>'
)


def _document(width, height, body):
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="Helvetica, Arial, sans-serif">'
    )
    return "\n".join([head, _DEFS, f'<rect width="{width}" height="{height}" fill="white"/>', *body, "</svg>"]) + "\n"


def render_map(layers: Sequence[Layer], axes=(0, 1), title: Optional[str] = None, size: int = 420) -> str:
    body, _ = _panel(layers, axes, size, title)
    return _document(size, size, body)


def render_panels(panels, axes=(0, 1), ncols: int = 2, size: int = 320) -> str:
    """Several maps side by side; ``panels`` is a list of (title, layers)."""
    panels = list(panels)
    if not panels:
        raise EmptyScores("no panels to draw")
    nrows = math.ceil(len(panels) / ncols)
    body = []
    for i, (title, layers) in enumerate(panels):
        r, c = divmod(i, ncols)
        frag, _ = _panel(layers, axes, size, title)
        body.append(f'<g class="panel" transform="translate({c * size},{r * size})">')
        body.extend(frag)
        body.append("</g>")
    return _document(ncols * size, nrows * size, body)


def emit_factor_map(
    scores,
    labels,
    *,
    arrows: bool = False,
    groups=None,
    filled: bool = False,
    title: Optional[str] = None,
    axes=(0, 1),
) -> str:
    """Single-layer factor map; see :func:`render_map` for several layers."""
    style = "arrow" if arrows else ("filled" if filled else "open")
    return render_map([Layer(np.asarray(scores, dtype=float), list(labels), style, groups)], axes, title)
