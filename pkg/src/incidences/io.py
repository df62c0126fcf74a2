"""JSON, CSV and SVG serialization of configurations, patterns and matching graphs."""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any

from .configurations import Configuration, MatchingGraph
from .errors import DomainError
from .patterns import Pattern
from .projective import ProjLine, ProjPoint


def config_to_dict(c: Configuration) -> dict[str, Any]:
    kind, m = c.scalar_kind
    d: dict[str, Any] = {
        "scalar_kind": kind,
        "points": [p.to_strings() for p in c.points],
        "lines": [L.to_strings() for L in c.lines],
        "incidences": sorted([i, j] for i, j in c.incidences),
        "provenance": c.provenance,
    }
    if m is not None:
        d["m"] = m
    if c.point_labels is not None:
        d["point_labels"] = list(c.point_labels)
    if c.line_labels is not None:
        d["line_labels"] = list(c.line_labels)
    return d


def config_from_dict(d: dict[str, Any]) -> Configuration:
    try:
        points = [ProjPoint.parse(row) for row in d["points"]]
        lines = [ProjLine.parse(row) for row in d.get("lines", [])]
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed configuration JSON: {exc}") from None
    inc = d.get("incidences")
    return Configuration(
        points, lines, None if inc is None else [tuple(x) for x in inc], d.get("provenance", ""),
        d.get("point_labels"), d.get("line_labels"),
    )


def pattern_to_dict(p: Pattern) -> dict[str, Any]:
    return {
        "name": p.name,
        "point_vertices": list(p.point_vertices),
        "line_vertices": list(p.line_vertices),
        "edges": sorted([p.point_vertices[i], p.line_vertices[j]] for i, j in p.edges),
    }


def pattern_from_dict(d: dict[str, Any]) -> Pattern:
    try:
        return Pattern.from_labels(d.get("name", "pattern"), d["point_vertices"], d["line_vertices"],
                                   [tuple(e) for e in d["edges"]], bool(d.get("allow_isolated", False)))
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed pattern JSON: {exc}") from None


def dump(obj: Configuration | Pattern, path: str | Path | None = None) -> str:
    d = config_to_dict(obj) if isinstance(obj, Configuration) else pattern_to_dict(obj)
    text = json.dumps(d, indent=1, sort_keys=True) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


def load(path: str | Path) -> Configuration | Pattern:
    """Read either JSON schema; patterns are recognised by their ``point_vertices`` key."""
    try:
        d = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(d, dict):
        raise DomainError(f"{path}: expected a JSON object")
    return pattern_from_dict(d) if "point_vertices" in d else config_from_dict(d)


def degree_csv(c: Configuration) -> str:
    """Rows ``kind,index,label,degree`` for every line (points on it) and every point (lines through it)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kind", "index", "label", "degree"])
    for j, d in enumerate(c.line_degrees()):
        w.writerow(["line", j, c.line_label(j), d])
    for i, d in enumerate(c.point_degrees()):
        w.writerow(["point", i, c.point_label(i), d])
    return buf.getvalue()


def _clip(L: ProjLine, box: tuple[float, float, float, float]):
    """Segment of the line inside the box, or None."""
    a, b, c = (float(t) for t in L.coords)
    x0, y0, x1, y1 = box
    hits = []
    if abs(b) > 1e-12:
        for x in (x0, x1):
            y = -(a * x + c) / b
            if y0 - 1e-9 <= y <= y1 + 1e-9:
                hits.append((x, y))
    if abs(a) > 1e-12:
        for y in (y0, y1):
            x = -(b * y + c) / a
            if x0 - 1e-9 <= x <= x1 + 1e-9:
                hits.append((x, y))
    if len(hits) < 2:
        return None
    hits.sort()
    return hits[0], hits[-1]


def to_svg(c: Configuration, graph: MatchingGraph | None = None, size: int = 600) -> str:
    """Static drawing: finite points as dots, lines clipped to the padded bounding box, matching edges bold."""
    finite = [tuple(float(t) for t in p.xy()) for p in c.points if not p.at_infinity]
    frame = finite or [(0.0, 0.0)]
    xs, ys = [p[0] for p in frame], [p[1] for p in frame]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
    pad = 0.1 * span
    box = (min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad)
    scale = size / max(box[2] - box[0], box[3] - box[1])

    def tr(x: float, y: float) -> tuple[float, float]:
        return (x - box[0]) * scale, size - (y - box[1]) * scale

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
           f'<rect width="{size}" height="{size}" fill="white"/>']
    for L in c.lines:
        seg = _clip(L, box)
        if seg is None:
            continue
        (ax, ay), (bx, by) = tr(*seg[0]), tr(*seg[1])
        out.append(f'<line x1="{ax:.2f}" y1="{ay:.2f}" x2="{bx:.2f}" y2="{by:.2f}" stroke="#999" stroke-width="0.6"/>')
    if graph is not None:
        for u, v, _ in graph.edges:
            if c.points[u].at_infinity or c.points[v].at_infinity:
                continue
            (ax, ay), (bx, by) = tr(*map(float, c.points[u].xy())), tr(*map(float, c.points[v].xy()))
            out.append(f'<line x1="{ax:.2f}" y1="{ay:.2f}" x2="{bx:.2f}" y2="{by:.2f}" stroke="#c00" stroke-width="2"/>')
    for x, y in finite:
        px, py = tr(x, y)
        out.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="3" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
