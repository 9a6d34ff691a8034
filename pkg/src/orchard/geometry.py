"""Exact integer predicates on planar point configurations.

All arithmetic is on Python integers, so nothing here can lose precision.
Coordinates are nevertheless capped at ``MAX_COORD`` so that the same
determinants also fit a signed 64-bit word; the vectorised evaluator in
:mod:`orchard.search` relies on that.  With ``|x|, |y| <= 2**30 - 1`` every
coordinate difference is below ``2**31`` in magnitude, each product below
``2**62``, and the cross product below ``2**63``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple, Optional

from .errors import CoordinateOverflowError, DegenerateInputError, GenericityError

MAX_COORD = 2**30 - 1


class Point(NamedTuple):
    x: int
    y: int


Violation = tuple[int, int, Optional[int]]


def check_point(p: Point) -> Point:
    """Return ``p`` as a Point, rejecting non-integers and out-of-range values."""
    x, y = p
    if isinstance(x, bool) or isinstance(y, bool) or not isinstance(x, int) or not isinstance(y, int):
        raise TypeError(f"coordinates must be integers, got {p!r}")
    if abs(x) > MAX_COORD or abs(y) > MAX_COORD:
        raise CoordinateOverflowError(f"point {tuple(p)} exceeds |coordinate| <= {MAX_COORD}")
    return Point(x, y)


def _cross(p, q, r) -> int:
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def orientation(p: Point, q: Point, r: Point) -> int:
    """Sign of ``(q - p) x (r - p)``: +1 counterclockwise, -1 clockwise, 0 collinear."""
    return _sign(_cross(check_point(p), check_point(q), check_point(r)))


@dataclass(frozen=True)
class Configuration:
    """An ordered tuple of integer points; index ``i`` is vertex ``i``.

    Construction only enforces the coordinate bound.  Genericity is checked by
    :func:`validate_generic` or :meth:`require_generic`, since callers often
    need the list of violations rather than an exception.
    """

    points: tuple[Point, ...]

    def __init__(self, points: Iterable):
        object.__setattr__(self, "points", tuple(check_point(p) for p in points))

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def __iter__(self):
        return iter(self.points)

    def require_generic(self) -> "Configuration":
        violations = validate_generic(self)
        if violations:
            raise GenericityError(violations)
        return self


def validate_generic(config: Configuration | Iterable) -> list[Violation]:
    """List every coincident pair and collinear triple of ``config``.

    Coincident pairs come first as ``(i, j, None)``; triples containing a
    coincident pair are not repeated as collinear.  An empty list means the
    configuration is generic.
    """
    pts = config.points if isinstance(config, Configuration) else tuple(config)
    m = len(pts)
    violations: list[Violation] = []
    coincident = set()
    for i, j in combinations(range(m), 2):
        if pts[i] == pts[j]:
            violations.append((i, j, None))
            coincident.add((i, j))
    for i, j, k in combinations(range(m), 3):
        if (i, j) in coincident or (i, k) in coincident or (j, k) in coincident:
            continue
        if _cross(pts[i], pts[j], pts[k]) == 0:
            violations.append((i, j, k))
    return violations


def separates(u: Point, v: Point, p: Point, q: Point) -> bool:
    """True iff the line through ``u`` and ``v`` strictly separates ``p`` from ``q``."""
    if u == v:
        raise DegenerateInputError(f"line through coincident points {tuple(u)}")
    op = orientation(u, v, p)
    oq = orientation(u, v, q)
    if op == 0 or oq == 0:
        raise DegenerateInputError(
            f"point on the line through {tuple(u)} and {tuple(v)}: "
            f"p={tuple(p)} ({op}), q={tuple(q)} ({oq})"
        )
    return op != oq


def separator_count(config: Configuration, p_idx: int, q_idx: int) -> int:
    """Number of lines through two points of ``config``, other than the
    points ``p_idx`` and ``q_idx``, that separate those two points."""
    if p_idx == q_idx:
        raise ValueError("separator_count needs two distinct vertices")
    pts = config.points
    p, q = pts[p_idx], pts[q_idx]
    rest = [pts[k] for k in range(len(pts)) if k != p_idx and k != q_idx]
    count = 0
    for u, v in combinations(rest, 2):
        op = _cross(u, v, p)
        oq = _cross(u, v, q)
        if op == 0 or oq == 0:
            raise DegenerateInputError(f"degenerate line through {tuple(u)} and {tuple(v)}")
        if (op > 0) != (oq > 0):
            count += 1
    return count
