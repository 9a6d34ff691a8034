"""Minimise or maximise the crossing number over drawings of a fixed graph.

Two strategies:

``exhaustive``
    Every generic placement on a small integer grid.  The optimum is exact for
    grid-restricted drawings only, so it certifies an upper bound on OCN (or a
    lower bound on MOCN) of the unrestricted problem.  For K_{n,n} the
    closed form 4n*C(n,3) closes the gap when the grid optimum matches it.

``anneal``
    Seeded simulated annealing on integer coordinates inside ``[0, box]^2``.
    Each step moves one uniformly chosen point by an offset in
    ``[-radius, radius]^2``; the temperature is ``t0 * cooling**step``.
    Restarts are independent; the best of them is reported.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import comb, factorial
from typing import Optional

import numpy as np

from .analysis import formula_ocn_knn
from .drawing import Color, ColoredDrawing, GraphSpec, crossing_number
from .errors import BudgetExceededError, InvariantViolation
from .generators import (GridSpec, enumerate_colored_configs, enumerate_generic_point_sets,
                         fits_generic, random_generic)
from .geometry import MAX_COORD, Point

MINIMIZE, MAXIMIZE = "minimize", "maximize"
EXHAUSTIVE, ANNEAL = "exhaustive", "anneal"
EXHAUSTIVE_PROOF, HEURISTIC_BEST = "exhaustive-proof", "heuristic-best"

DEFAULT_COOLING = 0.995
DEFAULT_RADIUS = 3
DEFAULT_RESTARTS = 4
PROPOSAL_RETRIES = 64


class FastEvaluator:
    """Vectorised crossing number for a fixed graph, exact in int64.

    For every line ``u < v`` and every point ``w`` the orientation sign of
    ``w`` is computed at once; an edge ``(a, b)`` is separated by the line iff
    the signs at ``a`` and ``b`` multiply to -1.  Lines through an edge
    endpoint give sign 0 there and drop out automatically.
    """

    def __init__(self, graph: GraphSpec):
        self.m = graph.m
        edges = np.array(graph.edges, dtype=np.intp).reshape(-1, 2)
        self._a = edges[:, 0]
        self._b = edges[:, 1]
        lines = np.array(list(combinations(range(self.m), 2)), dtype=np.intp).reshape(-1, 2)
        self._u = lines[:, 0]
        self._v = lines[:, 1]

    def __call__(self, coords) -> int:
        if self.m < 4 or len(self._a) == 0:
            return 0
        c = np.asarray(coords, dtype=np.int64)
        base = c[self._u]
        direction = c[self._v] - base
        rel = c[None, :, :] - base[:, None, :]
        cross = direction[:, 0, None] * rel[:, :, 1] - direction[:, 1, None] * rel[:, :, 0]
        s = np.sign(cross)
        return int(np.count_nonzero(s[:, self._a] * s[:, self._b] < 0))


@dataclass(frozen=True)
class SearchTask:
    """What to optimise and how.

    ``family`` is ``"knn"`` (``size`` = n), ``"complete"`` (``size`` = m) or
    ``"explicit"`` (``graph`` and ``colors`` given).  ``budget`` caps the
    number of anneal steps per task (split across restarts) or the
    enumeration size for the exhaustive strategy.  Anneal defaults:
    ``t0 = 0.05 * (4n*C(n,3) + 1)`` for K_{n,n} and ``0.05 * (|E| + 1)``
    otherwise, ``cooling = 0.995``, ``radius = 3``, ``box = 5m`` (i.e. 10n
    for K_{n,n}), 4 restarts.
    """

    family: str
    size: int = 0
    objective: str = MINIMIZE
    strategy: str = ANNEAL
    seed: int = 0
    budget: int = 200_000
    grid: Optional[GridSpec] = None
    t0: Optional[float] = None
    cooling: float = DEFAULT_COOLING
    radius: int = DEFAULT_RADIUS
    box: Optional[int] = None
    restarts: int = DEFAULT_RESTARTS
    workers: int = 1
    graph: Optional[GraphSpec] = None
    colors: Optional[tuple] = None

    def __post_init__(self):
        if self.family not in ("knn", "complete", "explicit"):
            raise ValueError(f"unknown graph family {self.family!r}")
        if self.objective not in (MINIMIZE, MAXIMIZE):
            raise ValueError(f"objective must be {MINIMIZE!r} or {MAXIMIZE!r}")
        if self.strategy not in (EXHAUSTIVE, ANNEAL):
            raise ValueError(f"strategy must be {EXHAUSTIVE!r} or {ANNEAL!r}")
        if self.budget <= 0:
            raise ValueError("budget must be positive")
        if not 0 < self.cooling < 1:
            raise ValueError("cooling factor must lie in (0, 1)")
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")
        if self.restarts < 1 or self.workers < 1:
            raise ValueError("restarts and workers must be positive")
        if self.t0 is not None and self.t0 < 0:
            raise ValueError("initial temperature must be nonnegative")
        if self.family == "explicit":
            if self.graph is None:
                raise ValueError("explicit family needs a graph")
            if self.colors is not None and len(self.colors) != self.graph.m:
                raise ValueError("colors must match the graph's vertex count")
        elif self.size < 1:
            raise ValueError("graph size must be positive")
        if self.strategy == EXHAUSTIVE and self.grid is None:
            raise ValueError("exhaustive strategy needs a grid")
        if self.box is not None and not 0 < self.box <= MAX_COORD:
            raise ValueError(f"box must lie in 1..{MAX_COORD}")

    def resolved_graph(self) -> tuple[GraphSpec, tuple[Color, ...]]:
        if self.family == "knn":
            colors = (Color.BLACK,) * self.size + (Color.WHITE,) * self.size
            return GraphSpec.complete_bipartite(colors), colors
        if self.family == "complete":
            return GraphSpec.complete(self.size), (Color.BLACK,) * self.size
        colors = self.colors if self.colors is not None else (Color.BLACK,) * self.graph.m
        return self.graph, tuple(Color.parse(c) for c in colors)

    def lower_bound(self) -> Optional[int]:
        """Proven minimum for K_{n,n}; results below it signal a bug."""
        if self.family == "knn" and self.objective == MINIMIZE:
            return formula_ocn_knn(self.size)
        return None

    def initial_temperature(self, graph: GraphSpec) -> float:
        if self.t0 is not None:
            return float(self.t0)
        scale = formula_ocn_knn(self.size) if self.family == "knn" else len(graph.edges)
        return 0.05 * (scale + 1)

    def resolved_box(self, m: int) -> int:
        return self.box if self.box is not None else max(5 * m, 4)


@dataclass
class SearchResult:
    best: ColoredDrawing
    value: int
    evaluations: int
    certificate: str
    objective: str
    trace: list = field(default_factory=list)
    restart_values: list = field(default_factory=list)

    def __post_init__(self):
        again = crossing_number(self.best)
        if again != self.value:
            raise InvariantViolation(f"search reported {self.value}, re-evaluation gives {again}")

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "objective": self.objective,
            "certificate": self.certificate,
            "evaluations": self.evaluations,
            "trace": [list(step) for step in self.trace],
            "restart_values": list(self.restart_values),
        }


def _better(objective: str, a: int, b: int) -> bool:
    return a < b if objective == MINIMIZE else a > b


def _guard(task: SearchTask, value: int, coords, bound: Optional[int] = None) -> None:
    if bound is None:
        bound = task.lower_bound()
    if bound is not None and value < bound:
        raise InvariantViolation(
            f"K_{{{task.size},{task.size}}} drawing with crossing number {value} below the proven "
            f"minimum {bound}: {[tuple(p) for p in coords]}")


# --- exhaustive ------------------------------------------------------------------


def _exhaustive_drawings(task: SearchTask, graph: GraphSpec, colors):
    grid = task.grid
    budget = task.budget
    if task.family == "knn":
        # blacks first, so every drawing shares the task's graph and coloring
        for d in enumerate_colored_configs(grid, task.size, budget):
            pts = [p for p, c in zip(d.points, d.colors) if c is Color.BLACK]
            pts += [p for p, c in zip(d.points, d.colors) if c is Color.WHITE]
            yield ColoredDrawing(pts, colors, graph)
        return
    m = graph.m
    if task.family == "complete":
        for pts in enumerate_generic_point_sets(grid, m, budget):
            yield ColoredDrawing(pts, colors, graph)
        return
    size = comb(grid.width * grid.height, m) * factorial(m)
    if size > budget:
        raise BudgetExceededError(size, budget)
    for pts in enumerate_generic_point_sets(grid, m, budget):
        for perm in permutations(pts):
            yield ColoredDrawing(perm, colors, graph)


def exhaustive_search(task: SearchTask) -> SearchResult:
    graph, colors = task.resolved_graph()
    evaluate = FastEvaluator(graph)
    best = None
    best_value = None
    evaluations = 0
    trace = []
    for d in _exhaustive_drawings(task, graph, colors):
        value = evaluate(d.points)
        evaluations += 1
        _guard(task, value, d.points)
        if best is None or _better(task.objective, value, best_value):
            best, best_value = d, value
            trace.append((evaluations, value))
    if best is None:
        raise ValueError(f"no generic placement of {graph.m} points on a {task.grid} grid")
    return SearchResult(best, best_value, evaluations, EXHAUSTIVE_PROOF, task.objective, trace, [best_value])


# --- annealing -------------------------------------------------------------------


@dataclass(frozen=True)
class AnnealStep:
    coords: tuple
    value: int
    proposed: bool
    accepted: bool


def propose(coords, rng: random.Random, radius: int, box: int):
    """Move one uniformly chosen point; None when no valid move was found.

    Offsets are drawn from ``[-radius, radius]^2``.  A zero offset, a position
    outside ``[0, box]^2`` or a non-generic result is rejected and redrawn up
    to ``PROPOSAL_RETRIES`` times.
    """
    m = len(coords)
    k = rng.randrange(m)
    x, y = coords[k]
    for _ in range(PROPOSAL_RETRIES):
        dx = rng.randint(-radius, radius)
        dy = rng.randint(-radius, radius)
        if dx == 0 and dy == 0:
            continue
        p = Point(x + dx, y + dy)
        if not (0 <= p.x <= box and 0 <= p.y <= box):
            continue
        if fits_generic(coords, p, skip=k):
            return coords[:k] + (p,) + coords[k + 1:]
    return None


def anneal_step(coords, value: int, temperature: float, rng: random.Random, evaluate,
                *, radius: int = DEFAULT_RADIUS, box: int, objective: str = MINIMIZE) -> AnnealStep:
    """One Metropolis step: propose, evaluate, accept with ``exp(-worsening / T)``.

    At ``temperature == 0`` only non-worsening moves are accepted.
    """
    candidate = propose(coords, rng, radius, box)
    if candidate is None:
        return AnnealStep(coords, value, False, False)
    new_value = evaluate(candidate)
    worsening = new_value - value if objective == MINIMIZE else value - new_value
    if worsening <= 0:
        accept = True
    elif temperature <= 0:
        accept = False
    else:
        accept = rng.random() < math.exp(-worsening / temperature)
    if accept:
        return AnnealStep(candidate, new_value, True, True)
    return AnnealStep(coords, value, True, False)


def _restart_seed(seed: int, r: int) -> str:
    return f"orchard-anneal:{seed}:{r}"


def _run_restart(task: SearchTask, r: int, steps: int):
    graph, colors = task.resolved_graph()
    evaluate = FastEvaluator(graph)
    m = graph.m
    box = task.resolved_box(m)
    rng = random.Random(_restart_seed(task.seed, r))
    start = random_generic(m, 0, box + 1, rng.getrandbits(63), graph=GraphSpec(m, ()))
    coords = tuple(start.points)
    value = evaluate(coords)
    evaluations = 1
    bound = task.lower_bound()
    _guard(task, value, coords, bound)
    best_coords, best_value = coords, value
    trace = [(r, evaluations, value)]
    t0 = task.initial_temperature(graph)
    temperature = t0
    for _ in range(steps):
        step = anneal_step(coords, value, temperature, rng, evaluate,
                           radius=task.radius, box=box, objective=task.objective)
        temperature *= task.cooling
        if not step.proposed:
            continue
        evaluations += 1
        if step.accepted:
            coords, value = step.coords, step.value
            _guard(task, value, coords, bound)
            if _better(task.objective, value, best_value):
                best_coords, best_value = coords, value
                trace.append((r, evaluations, value))
    return best_coords, best_value, evaluations, trace


def anneal_search(task: SearchTask) -> SearchResult:
    graph, colors = task.resolved_graph()
    per = [task.budget // task.restarts + (1 if r < task.budget % task.restarts else 0)
           for r in range(task.restarts)]
    if task.workers > 1:
        with ProcessPoolExecutor(max_workers=task.workers) as pool:
            runs = list(pool.map(_run_restart, [task] * task.restarts, range(task.restarts), per))
    else:
        runs = [_run_restart(task, r, steps) for r, steps in enumerate(per)]
    best_r = 0
    for r in range(1, len(runs)):
        if _better(task.objective, runs[r][1], runs[best_r][1]):
            best_r = r
    coords, value = runs[best_r][0], runs[best_r][1]
    drawing = ColoredDrawing(coords, colors, graph)
    trace = [step for run in runs for step in run[3]]
    evaluations = sum(run[2] for run in runs)
    return SearchResult(drawing, value, evaluations, HEURISTIC_BEST, task.objective, trace,
                        [run[1] for run in runs])


def search(task: SearchTask) -> SearchResult:
    if task.strategy == EXHAUSTIVE:
        return exhaustive_search(task)
    return anneal_search(task)


__all__ = [
    "ANNEAL", "EXHAUSTIVE", "EXHAUSTIVE_PROOF", "HEURISTIC_BEST", "MAXIMIZE", "MINIMIZE",
    "AnnealStep", "FastEvaluator", "SearchResult", "SearchTask",
    "anneal_search", "anneal_step", "exhaustive_search", "propose", "search",
]
