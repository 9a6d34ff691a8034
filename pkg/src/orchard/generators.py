"""Sources of drawings: the optimal convex drawing, random placements, grid enumeration."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb, isqrt
from typing import Iterator

from .drawing import Color, ColoredDrawing, GraphSpec
from .errors import BudgetExceededError, CoordinateOverflowError, RetryBudgetExhausted
from .geometry import MAX_COORD, Point, _cross, validate_generic

DEFAULT_ENUMERATION_BUDGET = 2_000_000
DEFAULT_RETRIES = 10_000


def _alternating_colors(m: int) -> list[Color]:
    return [Color.BLACK if k % 2 == 0 else Color.WHITE for k in range(m)]


def convex_alternating(n: int) -> ColoredDrawing:
    """K_{n,n} on the parabola points ``(k, k^2)``, ``k = 0..2n-1``, colored B, W, B, W, ...

    Points on a parabola are in strictly convex position and their hull order
    is the order by ``x``, so consecutive indices are hull neighbours and the
    coloring alternates around the whole cycle.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if (2 * n - 1) ** 2 > MAX_COORD:
        raise CoordinateOverflowError(f"n={n} exceeds the parabola construction limit "
                                      f"n <= {(isqrt(MAX_COORD) + 1) // 2}")
    pts = [Point(k, k * k) for k in range(2 * n)]
    return ColoredDrawing.complete_bipartite(pts, _alternating_colors(2 * n))


def random_generic(n_black: int, n_white: int, coordinate_range: int, seed: int,
                   *, max_retries: int = DEFAULT_RETRIES, graph: GraphSpec | None = None) -> ColoredDrawing:
    """Random generic drawing with coordinates drawn uniformly from ``range(coordinate_range)``.

    Points are placed one at a time; a candidate that coincides with an earlier
    point or is collinear with two of them is redrawn.  The first ``n_black``
    points are black.  A range of roughly ``4 * m`` for ``m`` points is ample;
    much tighter ranges may exhaust ``max_retries`` candidates per point.
    """
    m = n_black + n_white
    if n_black < 0 or n_white < 0:
        raise ValueError("color counts must be nonnegative")
    if coordinate_range < 1 or coordinate_range - 1 > MAX_COORD:
        raise ValueError(f"coordinate_range must lie in 1..{MAX_COORD + 1}")
    rng = random.Random(seed)
    pts = _place_generic(rng, m, lambda: (rng.randrange(coordinate_range), rng.randrange(coordinate_range)),
                         max_retries)
    colors = [Color.BLACK] * n_black + [Color.WHITE] * n_white
    if graph is None:
        graph = GraphSpec.complete_bipartite(colors)
    return ColoredDrawing(pts, colors, graph)


def _place_generic(rng, m, draw, max_retries) -> list[Point]:
    pts: list[Point] = []
    for k in range(m):
        for _ in range(max_retries):
            p = Point(*draw())
            if fits_generic(pts, p):
                pts.append(p)
                break
        else:
            raise RetryBudgetExhausted(f"could not place point {k} generically after {max_retries} tries")
    return pts


def fits_generic(pts, p, skip: int = -1) -> bool:
    """True iff adding ``p`` to ``pts`` (ignoring index ``skip``) keeps them generic."""
    others = [q for k, q in enumerate(pts) if k != skip]
    if p in others:
        return False
    for a, b in combinations(others, 2):
        if _cross(a, b, p) == 0:
            return False
    return True


@dataclass(frozen=True)
class GridSpec:
    width: int
    height: int

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError(f"grid dimensions must be positive, got {self.width}x{self.height}")
        if self.width - 1 > MAX_COORD or self.height - 1 > MAX_COORD:
            raise CoordinateOverflowError("grid exceeds the coordinate bound")

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        w, _, h = text.lower().partition("x")
        return cls(int(w), int(h))

    def points(self) -> list[Point]:
        return [Point(x, y) for x in range(self.width) for y in range(self.height)]

    def __str__(self) -> str:
        return f"{self.width}x{self.height}"


def enumeration_size(grid: GridSpec, n: int) -> int:
    """Upper bound on the number of drawings :func:`enumerate_colored_configs` may yield."""
    return comb(grid.width * grid.height, 2 * n) * comb(2 * n - 1, n - 1)


def enumerate_colored_configs(grid: GridSpec, n: int,
                              budget: int = DEFAULT_ENUMERATION_BUDGET) -> Iterator[ColoredDrawing]:
    """Every generic K_{n,n} drawing on the grid, one per class of color-preserving relabelings.

    Point sets are enumerated as sorted 2n-subsets of the grid; for each
    generic one, the black class is an n-subset containing the first point.
    Fixing that point's color also quotients out the global black/white
    exchange, which leaves the crossing number of K_{n,n} unchanged.  The
    bound ``C(|grid|, 2n) * C(2n-1, n-1)`` is checked against ``budget``
    before anything is yielded.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    size = enumeration_size(grid, n)
    if size > budget:
        raise BudgetExceededError(size, budget)
    grid_points = grid.points()
    m = 2 * n
    for subset in combinations(grid_points, m):
        if validate_generic(subset):
            continue
        for rest in combinations(range(1, m), n - 1):
            blacks = {0, *rest}
            colors = [Color.BLACK if k in blacks else Color.WHITE for k in range(m)]
            yield ColoredDrawing.complete_bipartite(subset, colors)


def enumerate_generic_point_sets(grid: GridSpec, m: int,
                                 budget: int = DEFAULT_ENUMERATION_BUDGET) -> Iterator[tuple[Point, ...]]:
    """Generic m-subsets of the grid in lexicographic order."""
    size = comb(grid.width * grid.height, m)
    if size > budget:
        raise BudgetExceededError(size, budget)
    for subset in combinations(grid.points(), m):
        if not validate_generic(subset):
            yield subset
