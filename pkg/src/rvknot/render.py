"""Deterministic SVG chord diagrams.

Each link component is a circle with its site passes spaced evenly around
it in traversal order.  A site met twice is drawn as a chord between its two
passes (a straight line between circles when the passes lie on different
components).  Markers: crossings leave a gap at the under-pass end, standard
nodes get a filled square, special nodes a square crossed by a bar along the
indicator, virtual crossings a small open circle where the two chords they
separate meet.
"""

from __future__ import annotations

import math

from .core import Diagram, natural_policy, traverse_components

RADIUS = 100.0
MARGIN = 40.0
GAP = 10.0


def _fmt(x: float) -> str:
    s = f"{x:.2f}"
    return "0.00" if s == "-0.00" else s


def _segment_intersection(p1, p2, p3, p4):
    d = (p2[0] - p1[0]) * (p4[1] - p3[1]) - (p2[1] - p1[1]) * (p4[0] - p3[0])
    if abs(d) < 1e-12:
        return None
    t = ((p3[0] - p1[0]) * (p4[1] - p3[1]) - (p3[1] - p1[1]) * (p4[0] - p3[0])) / d
    u = ((p3[0] - p1[0]) * (p2[1] - p1[1]) - (p3[1] - p1[1]) * (p2[0] - p1[0])) / d
    if 0 <= t <= 1 and 0 <= u <= 1:
        return (p1[0] + t * (p2[0] - p1[0]), p1[1] + t * (p2[1] - p1[1]))
    return None


def render_chord_svg(diagram: Diagram, title: str | None = None) -> str:
    walks = traverse_components(diagram, natural_policy(diagram))
    n_circles = len(walks) + diagram.free_loops
    width = max(1, n_circles) * (2 * RADIUS + MARGIN) + MARGIN
    height = 2 * RADIUS + 2 * MARGIN + (20 if title else 0)
    top = MARGIN + (20 if title else 0)
    sites = diagram.site_map

    points: dict[int, list[tuple[float, float, bool]]] = {}
    preceding: dict[int, list[int | None]] = {}
    centers = []
    for k in range(n_circles):
        centers.append((MARGIN + RADIUS + k * (2 * RADIUS + MARGIN), top + RADIUS))
    for k, walk in enumerate(walks):
        cx, cy = centers[k]
        drawn = [p for p in walk.passes if not sites[p.site].is_virtual]
        m = max(1, len(drawn))
        last = drawn[-1].site if drawn else None
        i = 0
        for p in walk.passes:
            s = sites[p.site]
            if s.is_virtual:
                preceding.setdefault(p.site, []).append(last)
                continue
            ang = math.pi / 2 - 2 * math.pi * i / m
            x, y = cx + RADIUS * math.cos(ang), cy - RADIUS * math.sin(ang)
            under = s.is_crossing and p.in_port % 2 != int(s.over[0]) % 2
            points.setdefault(p.site, []).append((x, y, under))
            last = p.site
            i += 1

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{_fmt(MARGIN)}" y="20" font-family="monospace" font-size="14">'
                   f'{_escape(title)}</text>')
    for cx, cy in centers:
        out.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(RADIUS)}" '
                   f'fill="none" stroke="black" stroke-width="2"/>')

    chord_ends = {}
    for sid in sorted(points):
        pts = points[sid]
        if len(pts) != 2:
            continue
        (x1, y1, u1), (x2, y2, u2) = pts
        chord_ends[sid] = ((x1, y1), (x2, y2))
        s = sites[sid]
        a, b = (x1, y1), (x2, y2)
        length = math.hypot(x2 - x1, y2 - y1) or 1.0
        if s.is_crossing:
            # pull the under-pass end back from the circle
            if u1:
                a = (x1 + GAP * (x2 - x1) / length, y1 + GAP * (y2 - y1) / length)
            if u2:
                b = (x2 - GAP * (x2 - x1) / length, y2 - GAP * (y2 - y1) / length)
        out.append(f'<line class="chord {s.kind}" data-site="{sid}" x1="{_fmt(a[0])}" '
                   f'y1="{_fmt(a[1])}" x2="{_fmt(b[0])}" y2="{_fmt(b[1])}" '
                   f'stroke="black" stroke-width="1.5"/>')
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        if s.is_node:
            out.append(f'<rect class="marker {"special" if s.is_special else "standard"}" '
                       f'x="{_fmt(mx - 5)}" y="{_fmt(my - 5)}" width="10" height="10" '
                       f'fill="{"white" if s.is_special else "black"}" stroke="black"/>')
            if s.is_special:
                out.append(f'<line class="indicator" x1="{_fmt(mx - 7)}" y1="{_fmt(my)}" '
                           f'x2="{_fmt(mx + 7)}" y2="{_fmt(my)}" stroke="black" stroke-width="2"/>')
        out.append(f'<text x="{_fmt(x1)}" y="{_fmt(y1 - 6)}" font-family="monospace" '
                   f'font-size="11" text-anchor="middle">{sid}</text>')

    for v in diagram.virtual_ids():
        where = None
        pre = preceding.get(v, [])
        if len(pre) == 2 and pre[0] in chord_ends and pre[1] in chord_ends and pre[0] != pre[1]:
            where = _segment_intersection(*chord_ends[pre[0]], *chord_ends[pre[1]])
        if where is None and len(pre) == 2 and pre[0] in chord_ends and pre[1] in chord_ends:
            (a, b), (c, d) = chord_ends[pre[0]], chord_ends[pre[1]]
            where = ((a[0] + b[0] + c[0] + d[0]) / 4, (a[1] + b[1] + c[1] + d[1]) / 4)
        if where is None:
            where = centers[0] if centers else (MARGIN, MARGIN)
        out.append(f'<circle class="marker virtual" data-site="{v}" cx="{_fmt(where[0])}" '
                   f'cy="{_fmt(where[1])}" r="4" fill="white" stroke="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
