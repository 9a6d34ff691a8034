"""JSON interchange format for drawings.

A document looks like::

    {"points": [{"x": 0, "y": 0, "color": "black"}, ...],
     "edges": "complete_bipartite"}

``edges`` is either the literal ``"complete_bipartite"`` or a list of
``[i, j]`` index pairs.  Only integers appear anywhere in the format.
"""

from __future__ import annotations

import json

from .drawing import Color, ColoredDrawing, GraphSpec
from .errors import DocumentError, GraphError

COMPLETE_BIPARTITE = "complete_bipartite"


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def to_document(d: ColoredDrawing) -> dict:
    points = [{"x": p.x, "y": p.y, "color": c.value} for p, c in zip(d.points, d.colors)]
    if d.is_complete_bipartite():
        edges = COMPLETE_BIPARTITE
    else:
        edges = [[a, b] for a, b in d.graph.edges]
    return {"points": points, "edges": edges}


def _int(value, field):
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"expected an integer, got {value!r}", field)
    return value


def from_document(obj) -> ColoredDrawing:
    """Build a drawing from a parsed document.

    Structural problems raise :class:`DocumentError` naming the field;
    a non-generic configuration raises ``GenericityError``.
    """
    if not isinstance(obj, dict):
        raise DocumentError("document must be a JSON object", "$")
    unknown = sorted(set(obj) - {"points", "edges"})
    if unknown:
        raise DocumentError(f"unknown keys {unknown}", unknown[0])
    if "points" not in obj:
        raise DocumentError("missing required key", "points")
    raw_points = obj["points"]
    if not isinstance(raw_points, list):
        raise DocumentError("expected a list", "points")
    pts, colors = [], []
    for k, entry in enumerate(raw_points):
        where = f"points[{k}]"
        if not isinstance(entry, dict):
            raise DocumentError("expected an object with x, y, color", where)
        for key in ("x", "y", "color"):
            if key not in entry:
                raise DocumentError("missing required key", f"{where}.{key}")
        extra = sorted(set(entry) - {"x", "y", "color"})
        if extra:
            raise DocumentError(f"unknown keys {extra}", f"{where}.{extra[0]}")
        x = _int(entry["x"], f"{where}.x")
        y = _int(entry["y"], f"{where}.y")
        if entry["color"] not in ("black", "white"):
            raise DocumentError(f"color must be \"black\" or \"white\", got {entry['color']!r}",
                                f"{where}.color")
        pts.append((x, y))
        colors.append(Color(entry["color"]))
    edges = obj.get("edges", COMPLETE_BIPARTITE)
    if edges == COMPLETE_BIPARTITE:
        graph = GraphSpec.complete_bipartite(colors)
    elif isinstance(edges, list):
        pairs = []
        for k, e in enumerate(edges):
            if not isinstance(e, list) or len(e) != 2:
                raise DocumentError("expected a pair [i, j]", f"edges[{k}]")
            pairs.append((_int(e[0], f"edges[{k}][0]"), _int(e[1], f"edges[{k}][1]")))
        try:
            graph = GraphSpec(len(pts), pairs)
        except GraphError as exc:
            raise DocumentError(str(exc), "edges") from exc
    else:
        raise DocumentError(f"expected \"{COMPLETE_BIPARTITE}\" or a list of pairs", "edges")
    try:
        return ColoredDrawing(pts, colors, graph)
    except TypeError as exc:
        raise DocumentError(str(exc), "points") from exc


def loads(text: str) -> ColoredDrawing:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    return from_document(obj)
