"""Tests for series normalization, the rejection battery and grid reduction."""

import pytest

from weightedhyp.search import SearchConfig, collect_search
from weightedhyp.series import (
    GridFamily,
    LineSeries,
    consolidate,
    detect_pattern,
    grid_is_dead,
    line_in_grid,
    normalize_line,
    ordered_line,
    reduce_grid,
    reduce_grid_proportional,
    run_battery,
    scan_line,
    test_almost_identical as almost_identical_check,
    test_parity as parity_check,
    test_point_hyperbola as point_hyperbola_check,
    test_proportional_ambient as proportional_ambient_check,
    test_proportional_strata as proportional_strata_check,
    test_wf_codim2 as wf_codim2_check,
    _hyperbola_max,
    _semigroup_member,
)
from weightedhyp.solver import Family
from weightedhyp.verify import is_good, is_quasismooth, is_wellformed
from weightedhyp.weights import from_tuple


def test_line_series_validation():
    with pytest.raises(ValueError):
        LineSeries((1, 1, 3), (1, 0, 2))  # growth row must sum correctly
    with pytest.raises(ValueError):
        LineSeries((1, 0, 1), (1, 1, 2))  # base outside positive quadrant


def test_normalize_line_slides_to_quadrant_boundary():
    ln = LineSeries((3, 5, 2, 9, 19), (1, 2, 0, 3, 6))
    assert normalize_line(ln) == LineSeries((3, 1, 1, 2, 7), (3, 2, 1, 0, 6))


def test_ordered_line_slides_backward():
    # The first member sorted non-increasing sits below the given base.
    ln = LineSeries((3, 5, 2, 9, 19), (1, 2, 0, 3, 6))
    assert ordered_line(ln) == LineSeries((6, 3, 2, 2, 13), (3, 2, 1, 0, 6))


def test_ordered_line_slides_forward():
    # Base (2,1,1,3) is unordered; the direction lifts the tail entry.
    ln = LineSeries((2, 1, 1, 3, 7), (1, 1, 1, 1, 4))
    out = ordered_line(ln)
    assert out.k == (1, 1, 1, 1, 4)
    m = out.u
    assert all(m[i] >= m[i + 1] for i in range(2))


def test_ordered_line_idempotent():
    for ln in (
        LineSeries((3, 2, 2, 1, 6), (1, 1, 0, 0, 2)),
        LineSeries((10, 8, 4, 4, 24), (3, 2, 1, 0, 6)),
        LineSeries((3, 5, 2, 9, 19), (1, 2, 0, 3, 6)),
    ):
        once = ordered_line(ln)
        assert ordered_line(once) == once
        s = once.s
        assert all(once.u[i] >= once.u[i + 1] for i in range(s - 1))


def test_line_in_grid_absorbs_reduced_line():
    grid = GridFamily((2, 2, 2, 2, 6), ((1, 1, 0, 0, 2), (1, 1, 1, 0, 3)))
    inside = LineSeries((2, 2, 2, 2, 6), (1, 1, 1, 0, 3))
    outside = LineSeries((3, 2, 2, 1, 6), (1, 1, 0, 0, 2))
    assert line_in_grid(inside, grid)
    assert not line_in_grid(outside, grid)


# ---------------------------------------------------------------------------
# Battery tests.


def test_parity_kills_both_classes():
    # Even class has s-1 even weights, odd class too: no member well formed.
    ln = LineSeries((2, 2, 2, 1, 7), (2, 2, 2, 2, 8))
    assert parity_check(ln) == ("parity", frozenset())
    assert parity_check(LineSeries((3, 2, 2, 1, 6), (1, 1, 0, 0, 2))) is None


def test_almost_identical_shared_all_but_one():
    ln = LineSeries((2, 1, 1, 1, 5), (1, 1, 1, 1, 4))
    assert almost_identical_check(ln) == ("almost-identical", frozenset({0}))


def test_almost_identical_shared_all_but_two():
    # (1 + lam) must divide |d - e| = 2.
    ln = LineSeries((4, 2, 1, 1, 8), (1, 3, 1, 1, 6))
    assert almost_identical_check(ln) == ("almost-identical", frozenset({0, 1}))


def test_proportional_ambient_fires_on_scaled_triple():
    ln = LineSeries((6, 4, 2, 1, 13), (3, 2, 1, 1, 7))
    assert proportional_ambient_check(ln) == ("proportional-ambient", frozenset({0}))
    assert proportional_ambient_check(LineSeries((5, 4, 3, 3, 13), (2, 1, 1, 0, 4))) is None


def test_wf_codim2_bound():
    # Pair (4,2)/(2,1) scales 2:1, so (2+lam) | |q*d - p*e| = 4 bounds lam.
    ln = LineSeries((4, 2, 3, 3, 16), (2, 1, 2, 1, 6))
    assert wf_codim2_check(ln) == ("wf-codim2", frozenset({0, 1, 2}))


def test_hyperbola_max_values():
    assert _hyperbola_max(14, 8, 2, 1) == 0  # 8 - 2/(2+lam)
    assert _hyperbola_max(12, 8, 2, 1) == 2  # 8 - 4/(2+lam)
    assert _hyperbola_max(11, 6, 2, 1) == -1  # 6 - 1/(2+lam): never integral
    assert _hyperbola_max(8, 4, 2, 1) is None  # constant 4


def test_point_hyperbola_known_bound():
    ln = LineSeries((20, 9, 4, 4, 4, 40), (15, 7, 3, 3, 2, 30))
    name, cands = point_hyperbola_check(ln)
    assert name == "point-hyperbola"
    assert max(cands) == 16
    # The three good members below the bound, and quasismooth-but-not-wf
    # exactly at it.
    assert [lam for lam in sorted(cands) if is_good(from_tuple(ln.member(lam)))] == [1, 3, 13]
    top = from_tuple(ln.member(16))
    assert is_quasismooth(top) and not is_wellformed(top)


def test_semigroup_member():
    assert _semigroup_member(7, (3, 4))
    assert not _semigroup_member(5, (3, 4))
    assert not _semigroup_member(3, (2, 4))
    assert _semigroup_member(6, (4, 6))
    assert _semigroup_member(0, (5,))


def test_proportional_strata_truncates_starved_stratum():
    # Pair weights (2+lam, 2+lam): one eternal tangent only, and both the
    # inside monomial and the proportional pair (6,3)/(4,2) stop at lam=0.
    ln = LineSeries((6, 3, 2, 2, 2, 14), (4, 2, 1, 1, 0, 8))
    assert proportional_strata_check(ln) == ("proportional-strata", frozenset({0}))


def test_proportional_strata_spares_eternal_inside():
    # Triple (2,2,2)/(1,1,1): (2+lam)*6 = 12+6*lam = d+lam*e for every lam.
    ln = LineSeries((5, 2, 2, 2, 2, 12), (3, 1, 1, 1, 0, 6))
    assert proportional_strata_check(ln) is None


def test_battery_candidates_cover_scanned_good_members():
    # Soundness: every good member of a truncated line sits in candidates.
    lines = [
        LineSeries((6, 3, 2, 2, 2, 14), (4, 2, 1, 1, 0, 8)),
        LineSeries((4, 2, 3, 3, 16), (2, 1, 2, 1, 6)),
        LineSeries((20, 9, 4, 4, 4, 40), (15, 7, 3, 3, 2, 30)),
    ]
    for ln in lines:
        res = run_battery(ln)
        assert res is not None
        good = scan_line(ln, max(res.candidates, default=0) + 25)
        assert set(good) <= set(res.candidates)


# ---------------------------------------------------------------------------
# Grid reduction.


def test_grid_is_dead_on_scaled_columns():
    grid = GridFamily((4, 2, 2, 1, 9), ((2, 1, 1, 0, 4), (2, 1, 1, 1, 5)))
    assert grid_is_dead(grid)


def test_reduce_grid_duplicate_pair():
    # Columns 0,1 stay equal: w(c) = 2+c1+c2 must divide d(c) = 6+2c1+3c2,
    # forcing c1 = 0.
    grid = GridFamily((2, 2, 2, 2, 6), ((1, 1, 0, 0, 2), (1, 1, 1, 0, 3)))
    lines, grids, points = reduce_grid(grid)
    assert lines == [LineSeries((2, 2, 2, 2, 6), (1, 1, 1, 0, 3))]
    assert grids == [] and points == []


def test_reduce_grid_codim2_ray():
    # Columns {0,1,2} scale the ray (3,2,1): F(c) = 1+c1+c2 divides
    # d(c) = 7F - c2, forcing c2 = 0.
    grid = GridFamily((3, 2, 1, 1, 1, 7), ((3, 2, 1, 1, 0, 7), (3, 2, 1, 0, 0, 6)))
    lines, grids, points = reduce_grid(grid)
    assert lines == [LineSeries((3, 2, 1, 1, 1, 7), (3, 2, 1, 1, 0, 7))]
    assert grids == [] and points == []
    # ... and the residual line dies by ambient proportionality.
    assert run_battery(lines[0]).candidates == (0,)


def test_reduce_grid_proportional_keeps_base():
    # Columns (3,2,1) primitive on a ray: any positive coefficient breaks
    # ambient well-formedness, only the base survives.
    grid = GridFamily((3, 2, 1, 1, 7), ((3, 2, 1, 1, 7), (3, 2, 1, 0, 6)))
    assert reduce_grid_proportional(grid) == ([], [], [(3, 2, 1, 1, 7)])


def test_detect_pattern():
    assert detect_pattern([], 20) == ("empty",)
    assert detect_pattern(list(range(0, 20, 2)), 20) == ("mod", 2, (0,))
    assert detect_pattern(list(range(20)), 20) == ("mod", 1, (0,))
    assert detect_pattern([0, 1, 4], 20) == ("irregular",)


def test_scan_line_full_series():
    ln = LineSeries((3, 2, 2, 1, 6), (1, 1, 0, 0, 2))
    good = scan_line(ln, 30)
    assert good == list(range(30))
    assert detect_pattern(good, 30) == ("mod", 1, (0,))


# ---------------------------------------------------------------------------
# Consolidation end to end on the smallest surface row.


def test_consolidate_surface_minus2_row():
    _, families = collect_search(SearchConfig(4, -2))
    cons = consolidate(families)
    survivors = [ln for ln in cons.lines if run_battery(ln) is None]
    assert [(ln.u, ln.k) for ln in survivors] == [
        ((3, 2, 2, 1, 6), (1, 1, 0, 0, 2)),
        ((4, 3, 3, 1, 9), (1, 1, 0, 0, 2)),
        ((4, 4, 3, 3, 12), (1, 1, 1, 0, 3)),
        ((5, 4, 3, 3, 13), (2, 1, 1, 0, 4)),
        ((6, 4, 4, 4, 16), (2, 1, 1, 0, 4)),
        ((6, 5, 3, 3, 15), (3, 2, 1, 0, 6)),
        ((9, 5, 3, 3, 18), (3, 2, 1, 0, 6)),
        ((10, 8, 4, 4, 24), (3, 2, 1, 0, 6)),
    ]
    assert cons.grids == (
        GridFamily((1, 1, 1, 1, 2), ((1, 1, 0, 0, 2), (1, 0, 0, 0, 1))),
    )
