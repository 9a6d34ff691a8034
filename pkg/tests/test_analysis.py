from itertools import combinations
from math import comb

import pytest
from conftest import knn_drawings
from hypothesis import given
from hypothesis import strategies as st

import oracles
from orchard import (ColoredDrawing, LineClass, abc_decomposition, c_coefficient_bw, c_coefficient_same,
                     check_identities, classify_lines, convex_alternating, crossing_number, formula_ocn_knn,
                     observation_violations, random_generic, type_tables, vertex_profiles)
from orchard.analysis import FAIL, PASS, VACUOUS, profiles_from_sequences
from orchard.errors import GraphError


def _names(d):
    return ["black" if c.value == "black" else "white" for c in d.colors]


def _reference_tables(d, cls):
    """y and x rebuilt from raw halfplane counts, following the documented conventions."""
    pts, colors = d.points, _names(d)
    n = colors.count("black")
    if cls is LineClass.BW:
        N = (n - 1) // 2
        y = [0] * (N + 1)
        x = [[0] * (N + 1) for _ in range(N + 1)]
    else:
        N = (n - 2) // 2
        y = [0] * (N + 1)
        x = [[0] * (n + 1) for _ in range(N + 1)]
    for u, v in combinations(range(len(pts)), 2):
        bl, wl, br, wr = oracles.halfplane_counts(pts, colors, u, v)
        pair = {colors[u], colors[v]}
        if cls is LineClass.BW and len(pair) == 2:
            tb, tw = min(bl, br), min(wl, wr)
            y[tb] += 1
            y[tw] += 1
            x[tb][tw] += 1
            if tb != tw:
                x[tw][tb] += 1
        elif cls is not LineClass.BW and pair == {cls.color.value}:
            own = (wl, wr) if cls is LineClass.WHITE_WHITE else (bl, br)
            other = (bl, br) if cls is LineClass.WHITE_WHITE else (wl, wr)
            i = min(own)
            j = min(other[k] for k in (0, 1) if own[k] == i)
            y[i] += 2
            x[i][j] += 2
    return y, x


def test_formula_examples():
    assert [formula_ocn_knn(n) for n in range(1, 9)] == [0, 0, 12, 64, 200, 480, 980, 1792]
    assert all(formula_ocn_knn(n) == oracles.ocn_formula(n) for n in range(1, 50))
    with pytest.raises(ValueError):
        formula_ocn_knn(0)


def test_classify_lines_against_oracle():
    d = convex_alternating(3)
    records = classify_lines(d)
    assert len(records) == comb(6, 2)
    colors = _names(d)
    for r in records:
        bl, wl, br, wr = oracles.halfplane_counts(d.points, colors, r.u, r.v)
        assert tuple(r.side_counts) == (bl, wl, br, wr)
        assert sum(r.side_counts) == len(d) - 2
        assert r.separated_bw_pairs == bl * wr + wl * br
        if r.line_class is LineClass.BW:
            assert r.normalized_type[0] <= r.normalized_type[1]


def test_line_classes():
    d = convex_alternating(2)
    classes = [r.line_class for r in classify_lines(d)]
    assert classes.count(LineClass.BW) == 4
    assert classes.count(LineClass.WHITE_WHITE) == classes.count(LineClass.BLACK_BLACK) == 1
    assert LineClass.WHITE_WHITE.color.value == "white" and LineClass.BW.color is None


@pytest.mark.parametrize("n", range(1, 6))
def test_abc_tight_on_convex_drawing(n):
    d = convex_alternating(n)
    dec = abc_decomposition(d)
    assert (dec.A, dec.B, dec.C) == (2 * n * comb(n, 3), n * comb(n, 3), n * comb(n, 3))
    assert (dec.A, dec.B, dec.C) == oracles.abc(d.points, _names(d))


@given(knn_drawings(max_n=4))
def test_abc_sums_to_crossing_number(d):
    dec = abc_decomposition(d)
    assert dec.total == dec.A + dec.B + dec.C == crossing_number(d)
    assert (dec.A, dec.B, dec.C) == oracles.abc(d.points, _names(d))


@given(knn_drawings(min_n=2, max_n=5))
def test_type_tables_against_reference(d):
    for cls in LineClass:
        t = type_tables(d, cls)
        y, x = _reference_tables(d, cls)
        assert list(t.y) == y
        assert [list(r) for r in t.x] == x
        assert t.y_from_x() == t.y


def test_bw_endvertex_sum_small():
    assert sum(type_tables(convex_alternating(2), LineClass.BW).y) == 8


def test_convex_profiles():
    for n in range(2, 7):
        d = convex_alternating(n)
        bw = vertex_profiles(d, LineClass.BW)
        assert len(bw.registry) == 1 and bw.p == {(0, 1): 2 * n}
        for cls in (LineClass.WHITE_WHITE, LineClass.BLACK_BLACK):
            same = vertex_profiles(d, cls)
            assert len(same.registry) == 1 and same.p == {(0, 1): n}
            assert len(same.registry[0]) == n - 1


def test_profile_tally_example():
    prof = profiles_from_sequences(LineClass.BW, 5, [(0, [0, 1, 2, 1, 0]), (1, [2, 1, 0, 0, 1]), (2, [1, 1, 2, 2, 1])])
    assert prof.registry == ((0, 0, 1, 1, 2), (1, 1, 1, 2, 2))
    assert prof.p == {(0, 1): 2, (1, 2): 1}
    assert prof.z == {(0, 1, 0): 2, (0, 1, 1): 2, (0, 1, 2): 1, (1, 2, 1): 3, (1, 2, 2): 2}
    assert prof.halving_type() == 2


def test_halving_type():
    assert profiles_from_sequences(LineClass.BW, 4, []).halving_type() is None
    assert profiles_from_sequences(LineClass.WHITE_WHITE, 6, []).halving_type() == 2
    assert profiles_from_sequences(LineClass.WHITE_WHITE, 5, []).halving_type() is None


def _bw_expansion(s, n):
    N = (n - 1) // 2
    return s * (n - s - 1) * (n - sum(2 for _ in range(s, N + 1))) - 2 * sum(i * (n - i - 1) for i in range(0, s))


def _same_expansion(s, n, N):
    g = [n * (1 + 2 * i) - 2 * (i + 1) ** 2 for i in range(s + 1)]
    return g[s] * ((n - 1) - sum(2 for _ in range(s, N + 1))) - 2 * sum(g[i] for i in range(0, s))


def test_c_coefficient_bw_examples():
    assert all(c_coefficient_bw(0, n) == 0 for n in range(1, 40))
    assert c_coefficient_bw(1, 5) == _bw_expansion(1, 5) == 3
    with pytest.raises(ValueError):
        c_coefficient_bw(3, 5)
    with pytest.raises(ValueError):
        c_coefficient_bw(-1, 5)


def test_c_coefficient_same_examples():
    for n in range(3, 12):
        assert c_coefficient_same(1, n) == _same_expansion(1, n, (n - 2) // 2)
        assert c_coefficient_same(1, n, cap="bw") == _same_expansion(1, n, (n - 1) // 2)
    with pytest.raises(ValueError):
        c_coefficient_same(0, 7)
    with pytest.raises(ValueError):
        c_coefficient_same(1, 7, cap="other")
    # The wider cap turns the coefficient negative for odd n.
    assert c_coefficient_same(1, 3, cap="bw") == -2


@given(st.integers(1, 300).flatmap(lambda n: st.tuples(st.integers(0, (n - 1) // 2), st.just(n))))
def test_c_coefficient_bw_nonnegative_and_expanded(sn):
    s, n = sn
    value = c_coefficient_bw(s, n)
    assert value >= 0
    assert value == _bw_expansion(s, n)


@given(st.integers(3, 300).flatmap(lambda n: st.tuples(st.integers(1, (n - 1) // 2), st.just(n))))
def test_c_coefficient_same_nonnegative_and_expanded(sn):
    s, n = sn
    value = c_coefficient_same(s, n)
    assert value >= 0
    assert value == _same_expansion(s, n, (n - 2) // 2)


def test_observation():
    assert all(observation_violations(n) == [] for n in range(1, 120))


def test_identities_on_convex_drawing():
    report = check_identities(convex_alternating(4))
    assert report.ok
    assert report.failures(include_nonfatal=True) == []
    assert report.to_dict()["all_pass"] is True


def test_identities_on_random_k33():
    for seed in range(100):
        report = check_identities(random_generic(3, 3, 100, seed))
        assert report.ok, [c.name for c in report.failures()]
        assert report.by_name("bw.profile_multiplicity").status == PASS


@given(knn_drawings(min_n=2, max_n=5))
def test_identities_hold(d):
    report = check_identities(d)
    assert report.ok, [c.to_dict() for c in report.failures()]


def test_single_pair_is_vacuous():
    report = check_identities(convex_alternating(1))
    assert report.ok
    assert report.by_name("bw.tables").status == VACUOUS


def test_unbalanced_rejected():
    d = random_generic(2, 3, 40, 1)
    assert crossing_number(d) >= 0
    with pytest.raises(GraphError):
        classify_lines(d)


def test_per_class_bound_counterexample():
    # Three blacks inside a white triangle: no line through two whites splits a
    # black from a white, so B = 0 although n*C(n,3) = 3.
    d = ColoredDrawing.complete_bipartite([(0, 0), (40, 0), (0, 40), (5, 7), (13, 6), (8, 15)], "wwwbbb")
    dec = abc_decomposition(d)
    assert (dec.A, dec.B, dec.C) == (18, 0, 6) == oracles.abc(d.points, _names(d))
    report = check_identities(d)
    assert report.by_name("white_white.lower_bound").status == FAIL
    assert not report.by_name("white_white.lower_bound").fatal
    assert report.by_name("total.lower_bound").status == PASS
    assert report.ok
