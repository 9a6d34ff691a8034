from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from orchard import Color, GridSpec, convex_alternating, crossing_number, enumerate_colored_configs, random_generic
from orchard.drawing import is_convex_cycle
from orchard.errors import BudgetExceededError, CoordinateOverflowError, RetryBudgetExhausted
from orchard.generators import enumerate_generic_point_sets, enumeration_size


@pytest.mark.parametrize("n", range(1, 9))
def test_convex_alternating_structure(n):
    d = convex_alternating(n)
    assert len(d) == 2 * n and d.count(Color.BLACK) == n
    assert oracles.is_generic(d.points)
    if n >= 2:
        assert is_convex_cycle(d.points)
    assert all(d.colors[k] is not d.colors[(k + 1) % (2 * n)] for k in range(2 * n))
    assert d.is_complete_bipartite()


def test_convex_alternating_small_values():
    one = convex_alternating(1)
    assert len(one.graph.edges) == 1 and crossing_number(one) == 0
    assert crossing_number(convex_alternating(6)) == 480


def test_convex_alternating_limits():
    with pytest.raises(ValueError):
        convex_alternating(0)
    with pytest.raises(CoordinateOverflowError):
        convex_alternating(20_000)


def test_random_generic_examples():
    d = random_generic(3, 3, 100, 42)
    assert oracles.is_generic(d.points)
    assert [c.value for c in d.colors] == ["black"] * 3 + ["white"] * 3
    assert d == random_generic(3, 3, 100, 42)
    single = random_generic(0, 1, 5, 9)
    assert single.colors == (Color.WHITE,) and crossing_number(single) == 0


@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 2**63))
def test_random_generic_deterministic_and_in_range(nb, nw, seed):
    span = 4 * (nb + nw) + 4
    d = random_generic(nb, nw, span, seed)
    assert d == random_generic(nb, nw, span, seed)
    assert all(0 <= p.x < span and 0 <= p.y < span for p in d.points)
    assert oracles.is_generic(d.points)


def test_random_generic_gives_up():
    # A 2x2 box holds at most four generic points.
    with pytest.raises(RetryBudgetExhausted):
        random_generic(5, 0, 2, 0, max_retries=200)


def test_grid_spec_parse():
    g = GridSpec.parse("4x3")
    assert (g.width, g.height, str(g)) == (4, 3, "4x3")
    assert len(g.points()) == 12
    for bad in ("0x3", "ax3", "4"):
        with pytest.raises(ValueError):
            GridSpec.parse(bad)


def _classes(drawings):
    out = []
    for d in drawings:
        blacks = frozenset(p for p, c in zip(d.points, d.colors) if c is Color.BLACK)
        whites = frozenset(p for p, c in zip(d.points, d.colors) if c is Color.WHITE)
        out.append(frozenset([blacks, whites]))
    return out


@pytest.mark.parametrize("grid, n, expected", [("3x3", 1, 36), ("2x2", 2, 3), ("3x3", 2, None), ("4x3", 2, None)])
def test_enumeration_matches_reference(grid, n, expected):
    spec = GridSpec.parse(grid)
    got = _classes(enumerate_colored_configs(spec, n))
    reference = oracles.reference_colored_classes(spec.points(), n)
    assert len(got) == len(set(got)), "a class was yielded twice"
    assert set(got) == reference
    if expected is not None:
        assert len(got) == expected


def test_enumeration_on_4x4_is_generic():
    drawings = list(enumerate_colored_configs(GridSpec(4, 4), 2))
    assert drawings
    assert all(oracles.is_generic(d.points) and d.is_complete_bipartite() for d in drawings)


def test_enumeration_budget():
    with pytest.raises(BudgetExceededError) as info:
        next(enumerate_colored_configs(GridSpec(5, 5), 3, budget=1000))
    assert info.value.size == enumeration_size(GridSpec(5, 5), 3)


def test_generic_point_sets():
    sets = list(enumerate_generic_point_sets(GridSpec(3, 3), 4))
    expected = [s for s in combinations(GridSpec(3, 3).points(), 4) if oracles.is_generic(s)]
    assert sets == expected
