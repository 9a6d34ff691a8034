"""Colored rectilinear drawings and their Orchard crossing number.

The crossing number of a drawing sums, over the edges ``(s, t)`` of the graph,
the number of lines spanned by two *other* configuration points that separate
``s`` from ``t``.  The lines come from every pair of points, edge or not.

Two evaluators are provided.  :func:`crossing_number` follows that definition
edge by edge.  :func:`crossing_number_by_quadruples` regroups the same events
by the four points involved (the two edge endpoints plus the two points
spanning the line) and serves as an independent oracle.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .errors import GenericityError, GraphError
from .geometry import Configuration, Point, _cross, _sign, separator_count, validate_generic


class Color(enum.Enum):
    BLACK = "black"
    WHITE = "white"

    @property
    def other(self) -> "Color":
        return Color.WHITE if self is Color.BLACK else Color.BLACK

    @classmethod
    def parse(cls, value) -> "Color":
        if isinstance(value, Color):
            return value
        if isinstance(value, str):
            key = value.strip().lower()
            if key in ("b", "black"):
                return cls.BLACK
            if key in ("w", "white"):
                return cls.WHITE
        raise ValueError(f"unknown color {value!r}")


Edge = tuple[int, int]


@dataclass(frozen=True)
class GraphSpec:
    """Vertex count plus a sorted tuple of edges ``(i, j)`` with ``i < j``."""

    m: int
    edges: tuple[Edge, ...]

    def __init__(self, m: int, edges: Iterable[Sequence[int]]):
        if m < 0:
            raise GraphError(f"vertex count must be nonnegative, got {m}")
        normalized = []
        for e in edges:
            if len(e) != 2:
                raise GraphError(f"edge {e!r} must have two endpoints")
            a, b = int(e[0]), int(e[1])
            if not (0 <= a < m and 0 <= b < m):
                raise GraphError(f"edge ({a}, {b}) references a vertex outside 0..{m - 1}")
            if a == b:
                raise GraphError(f"self-loop at vertex {a}")
            normalized.append((min(a, b), max(a, b)))
        if len(set(normalized)) != len(normalized):
            dup = sorted({e for e in normalized if normalized.count(e) > 1})
            raise GraphError(f"duplicate edges: {dup}")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "edges", tuple(sorted(normalized)))

    @classmethod
    def complete(cls, m: int) -> "GraphSpec":
        return cls(m, combinations(range(m), 2))

    @classmethod
    def complete_bipartite(cls, colors: Sequence[Color]) -> "GraphSpec":
        colors = [Color.parse(c) for c in colors]
        return cls(len(colors), [(i, j) for i, j in combinations(range(len(colors)), 2)
                                 if colors[i] is not colors[j]])

    def has_edge(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edge_set

    @property
    def edge_set(self) -> frozenset:
        cached = self.__dict__.get("_edge_set")
        if cached is None:
            cached = frozenset(self.edges)
            object.__setattr__(self, "_edge_set", cached)
        return cached

    def with_edge(self, a: int, b: int) -> "GraphSpec":
        return GraphSpec(self.m, list(self.edges) + [(a, b)])


@dataclass(frozen=True)
class ColoredDrawing:
    """A generic configuration, a coloring and a graph on the same vertex indices.

    Construction rejects non-generic configurations with a
    :class:`~orchard.errors.GenericityError` listing every violation.
    """

    config: Configuration
    colors: tuple[Color, ...]
    graph: GraphSpec

    def __init__(self, config, colors: Sequence, graph: GraphSpec | None = None):
        if not isinstance(config, Configuration):
            config = Configuration(config)
        colors = tuple(Color.parse(c) for c in colors)
        if len(colors) != len(config):
            raise GraphError(f"{len(colors)} colors for {len(config)} points")
        if graph is None:
            graph = GraphSpec.complete_bipartite(colors)
        if graph.m != len(config):
            raise GraphError(f"graph has {graph.m} vertices, configuration has {len(config)}")
        violations = validate_generic(config)
        if violations:
            raise GenericityError(violations)
        object.__setattr__(self, "config", config)
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "graph", graph)

    @classmethod
    def complete_bipartite(cls, points, colors) -> "ColoredDrawing":
        colors = [Color.parse(c) for c in colors]
        return cls(points, colors, GraphSpec.complete_bipartite(colors))

    @property
    def points(self) -> tuple[Point, ...]:
        return self.config.points

    def __len__(self) -> int:
        return len(self.config)

    def count(self, color: Color) -> int:
        return sum(1 for c in self.colors if c is color)

    def is_complete_bipartite(self) -> bool:
        return self.graph == GraphSpec.complete_bipartite(self.colors)

    def balanced_size(self) -> int:
        """Return ``n`` if this is a drawing of K_{n,n}; raise GraphError otherwise."""
        nb, nw = self.count(Color.BLACK), self.count(Color.WHITE)
        if nb != nw:
            raise GraphError(f"unbalanced coloring: {nb} black, {nw} white")
        if not self.is_complete_bipartite():
            raise GraphError("edge set is not the complete bipartite graph of the coloring")
        return nb

    def swap_colors(self) -> "ColoredDrawing":
        return ColoredDrawing(self.config, [c.other for c in self.colors], self.graph)

    def with_graph(self, graph: GraphSpec) -> "ColoredDrawing":
        return ColoredDrawing(self.config, self.colors, graph)


def crossing_number(d: ColoredDrawing) -> int:
    return sum(separator_count(d.config, s, t) for s, t in d.graph.edges)


def _split_events(pts, graph: GraphSpec, pair, other) -> int:
    """1 if ``pair`` is an edge separated by the line through ``other``, else 0."""
    a, b = pair
    if not graph.has_edge(a, b):
        return 0
    u, v = other
    ca = _cross(pts[u], pts[v], pts[a])
    cb = _cross(pts[u], pts[v], pts[b])
    return 1 if (ca > 0) != (cb > 0) else 0


def quadruple_contribution(d: ColoredDrawing, i: int, j: int, k: int, l: int) -> int:
    """Share of the crossing number owned by the 4-subset ``{i, j, k, l}``.

    For each of the three splits into two pairs, each pair that is an edge
    scores 1 when the line through the other pair separates it.  A split can
    score 2 when both pairs are edges that separate each other.
    """
    quad = (i, j, k, l)
    m = len(d)
    for q in quad:
        if not 0 <= q < m:
            raise IndexError(f"vertex index {q} out of range 0..{m - 1}")
    if len(set(quad)) != 4:
        raise ValueError(f"quadruple indices must be distinct, got {quad}")
    pts = d.points
    total = 0
    for p1, p2 in (((i, j), (k, l)), ((i, k), (j, l)), ((i, l), (j, k))):
        total += _split_events(pts, d.graph, p1, p2)
        total += _split_events(pts, d.graph, p2, p1)
    return total


def crossing_number_by_quadruples(d: ColoredDrawing) -> int:
    return sum(quadruple_contribution(d, *q) for q in combinations(range(len(d)), 4))


class QuadrupleType(NamedTuple):
    kind: int
    contribution: int


_CONTRIBUTION = {1: 0, 2: 0, 3: 1, 4: 2}


def convex_cyclic_order(points: Sequence[Point]) -> tuple[int, int, int, int] | None:
    """Cyclic hull order of four points, or None if they are not in convex position."""
    if len(points) != 4:
        raise ValueError("need exactly four points")
    for order in ((0, 1, 2, 3), (0, 1, 3, 2), (0, 2, 1, 3)):
        if is_convex_cycle([points[o] for o in order]):
            return order
    return None


def is_convex_cycle(cycle: Sequence[Point]) -> bool:
    """True iff every consecutive triple of the closed cycle turns the same nonzero way."""
    k = len(cycle)
    signs = {_sign(_cross(cycle[t], cycle[(t + 1) % k], cycle[(t + 2) % k])) for t in range(k)}
    return len(signs) == 1 and 0 not in signs


def classify_convex_quadruple(colors: Sequence, points: Sequence[Point] | None = None) -> QuadrupleType:
    """Classify a convex quadruple of a complete bipartite drawing by its cyclic colors.

    Types: 1 monochromatic, 2 alternating, 3 three-and-one, 4 two consecutive
    blacks then two consecutive whites.  When ``points`` is given (in the same
    cyclic order as ``colors``) convex position is verified first and a
    non-convex cycle raises ``ValueError``.
    """
    cs = [Color.parse(c) for c in colors]
    if len(cs) != 4:
        raise ValueError("need exactly four colors")
    if points is not None and not is_convex_cycle(points):
        raise ValueError("points are not a convex quadruple in the given cyclic order")
    blacks = sum(1 for c in cs if c is Color.BLACK)
    if blacks in (0, 4):
        kind = 1
    elif blacks in (1, 3):
        kind = 3
    elif cs[0] is cs[2]:
        kind = 2
    else:
        kind = 4
    return QuadrupleType(kind, _CONTRIBUTION[kind])
