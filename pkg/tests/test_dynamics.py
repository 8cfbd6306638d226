import math
import random
from fractions import Fraction

import pytest

from hurwitzdeg import (
    BoundValue,
    ModelViolationError,
    RootValue,
    compare_roots,
    degree_bounds,
    format_significant,
    integer_nth_root,
    inverse_table,
    iterate_counts,
    iterated_dynamics,
    polynomiality_index,
    single_valued_band,
    single_valued_conditions,
)
from hurwitzdeg.core import BranchingData
from hurwitzdeg.dynamics import (
    INTERMEDIATE,
    NO_PERIODIC_CRITICAL,
    TOPOLOGICAL_POLYNOMIAL,
    map_cycles,
    polynomiality_from_maps,
)

from corpus import portrait_corpus


# ---------------------------------------------------------------------------
# exact root values


def test_root_reduction():
    assert RootValue(8, 3) == RootValue(2, 1)
    assert RootValue(4, 2) == RootValue(2)
    assert RootValue(16, 4) == RootValue(2)
    assert RootValue(8, 6) == RootValue(2, 2)
    assert RootValue(1, 5) == RootValue(1)
    assert RootValue(1, 5).is_one
    r = RootValue(12, 2)
    assert (r.radicand, r.index) == (12, 2)


def test_root_comparisons():
    assert RootValue(6, 2) > RootValue(2, 1)
    assert RootValue(2, 1) < RootValue(6, 2)
    assert RootValue(9, 2) == RootValue(3, 1)
    assert compare_roots(RootValue(2), RootValue(3)) == -1
    assert compare_roots(RootValue(3), RootValue(3)) == 0
    assert compare_roots(RootValue(5, 2), RootValue(2)) == 1


def test_root_arithmetic():
    assert RootValue(2, 2) * RootValue(2, 2) == RootValue(2)
    assert RootValue(2) * RootValue(3) == RootValue(6)
    assert RootValue(2, 2) ** 2 == RootValue(2)
    assert RootValue(5) ** 0 == RootValue(1)
    assert 2 * RootValue(3, 2) == RootValue(12, 2)


def test_root_argument_errors():
    with pytest.raises(ValueError):
        RootValue(0)
    with pytest.raises(ValueError):
        RootValue(2, 0)
    with pytest.raises(ValueError):
        RootValue(2) ** -1
    with pytest.raises(TypeError):
        RootValue(2) < 1.5


def test_root_order_is_total_and_multiplicative():
    rng = random.Random(20260825)
    vals = [RootValue(rng.randrange(1, 40), rng.randrange(1, 5)) for _ in range(30)]
    for x in vals:
        for y in vals:
            assert (x < y) + (y < x) + (x == y) == 1
            assert math.isclose(float(x * y), float(x) * float(y), rel_tol=1e-9)
            if x < y:
                for z in vals:
                    if y < z:
                        assert x < z
            # order respects multiplication
            z = vals[0]
            if x < y:
                assert x * z < y * z


def test_integer_nth_root():
    assert integer_nth_root(0, 3) == 0
    assert integer_nth_root(1, 9) == 1
    assert integer_nth_root(26, 3) == 2
    assert integer_nth_root(27, 3) == 3
    assert integer_nth_root(10**30, 5) == 10**6
    rng = random.Random(6)
    for _ in range(200):
        n = rng.randrange(0, 10**24)
        k = rng.randrange(1, 9)
        r = integer_nth_root(n, k)
        assert r**k <= n < (r + 1) ** k
    with pytest.raises(ValueError):
        integer_nth_root(-1, 2)
    with pytest.raises(ValueError):
        integer_nth_root(4, 0)


def test_format_significant():
    assert format_significant(0.0) == "0"
    assert format_significant(math.log(2)) == "0.693147180560"
    assert format_significant(2 * math.log(2)) == "1.38629436112"
    assert format_significant(math.log(2) / 2) == "0.346573590280"


# ---------------------------------------------------------------------------
# portrait cycle analysis


def test_rabbit_polynomiality(rabbit):
    report = polynomiality_index(rabbit)
    assert report.index == RootValue(2)
    assert report.classification == TOPOLOGICAL_POLYNOMIAL
    assert report.ell0 == 1
    sets = {frozenset(c.points) for c in report.cycles}
    assert sets == {frozenset({"inf"}), frozenset({"z0", "c1", "c2"})}


def test_preperiodic_polynomiality(preperiodic):
    report = polynomiality_index(preperiodic)
    assert report.index == RootValue(2)
    assert report.ell0 == 1
    assert report.classification == TOPOLOGICAL_POLYNOMIAL


def test_identity_polynomiality(identity_portrait):
    report = polynomiality_index(identity_portrait)
    assert report.index.is_one
    assert report.classification == NO_PERIODIC_CRITICAL
    assert report.ell0 is None


def test_intermediate_classification():
    points = ("a", "b", "c", "e")
    point_map = {"a": "b", "b": "a", "c": "e", "e": "c"}
    ram = {"a": 2, "b": 2, "c": 1, "e": 1}
    report = polynomiality_from_maps(points, point_map, ram, degree=4)
    assert report.index == RootValue(2)
    assert report.classification == INTERMEDIATE
    assert report.ell0 is None


def test_ell0_is_minimal_full_cycle_length():
    points = ("p", "q", "r")
    point_map = {"p": "p", "q": "r", "r": "q"}
    ram = {"p": 3, "q": 3, "r": 3}
    report = polynomiality_from_maps(points, point_map, ram, degree=3)
    assert report.ell0 == 1


def test_map_cycles_skips_tails(preperiodic):
    cycs = map_cycles(preperiodic.source_points, preperiodic.point_map)
    assert cycs == [("inf",), ("u", "v")]


def test_non_portrait_rejected():
    data = BranchingData(
        source_points=("m1",),
        target_points=("t1", "t2", "t3"),
        degree=3,
        point_map={"m1": "t3"},
        ram={"m1": 3},
        branching={"t1": (2, 1), "t2": (2, 1), "t3": (3,)},
    )
    with pytest.raises(ValueError):
        polynomiality_index(data)
    with pytest.raises(ValueError):
        single_valued_conditions(data)


def test_iterated_dynamics(rabbit):
    map2, ram2 = iterated_dynamics(rabbit.source_points, rabbit.point_map, rabbit.ram, 2)
    assert map2 == {"inf": "inf", "z0": "c2", "c1": "z0", "c2": "c1"}
    assert ram2 == {"inf": 4, "z0": 2, "c1": 1, "c2": 2}
    with pytest.raises(ValueError):
        iterated_dynamics(rabbit.source_points, rabbit.point_map, rabbit.ram, 0)


def test_index_of_iterate_is_index_power():
    for data in portrait_corpus()[:12]:
        base = polynomiality_from_maps(
            data.source_points, data.point_map, data.ram, data.degree
        )
        for n in (2, 3):
            map_n, ram_n = iterated_dynamics(
                data.source_points, data.point_map, data.ram, n
            )
            lifted = polynomiality_from_maps(
                data.source_points, map_n, ram_n, data.degree**n
            )
            assert lifted.index == base.index**n


# ---------------------------------------------------------------------------
# bound tables


def test_bound_value_laws():
    root = RootValue(2)
    assert BoundValue(4, root, -1) == BoundValue(2, root, 0)
    assert BoundValue(1, root, 1) < BoundValue(3, root, 0)
    assert BoundValue(4, root, -1).as_fraction() == Fraction(2)
    assert BoundValue(3, root, -1).as_fraction() == Fraction(3, 2)
    assert BoundValue(1, RootValue(2, 2), 1).as_fraction() is None
    assert BoundValue(1, RootValue(2, 2), 1).render() == "2^(1/2)"
    assert BoundValue(3, RootValue(2, 2), 1).render() == "3*2^(1/2)"
    assert BoundValue(3, root, -1).render() == "3/2"
    assert BoundValue(0, root, 2).log_float() == float("-inf")
    assert math.isclose(BoundValue(3, root, 1).log_float(), math.log(6))
    with pytest.raises(ValueError):
        BoundValue(1, RootValue(2), 0) < BoundValue(1, RootValue(3), 0)


def _render_rows(table):
    return [(row.k, row.lower.render(), row.upper.render(), row.pinned) for row in table.rows]


def test_bounds_with_unknown_top():
    table = degree_bounds(4, None, RootValue(2), 5)
    assert _render_rows(table) == [
        (0, "4", "4", True),
        (1, "2", "2", False),
        (2, "1", "1", False),
    ]
    assert table.strict_decrease


def test_bounds_known_top_pins_both_ends(rabbit):
    table = degree_bounds(2, 1, RootValue(2), 4)
    assert _render_rows(table) == [(0, "2", "2", True), (1, "1", "1", True)]


def test_bounds_interval_when_chain_is_slack():
    table = degree_bounds(6, 1, RootValue(2), 5)
    assert _render_rows(table) == [
        (0, "6", "6", True),
        (1, "2", "3", False),
        (2, "1", "1", True),
    ]
    for row in table.rows:
        assert row.lower <= row.upper


def test_bounds_contradiction_raises():
    with pytest.raises(ModelViolationError):
        degree_bounds(2, 2, RootValue(2), 4)


def test_bounds_argument_errors():
    with pytest.raises(ValueError):
        degree_bounds(2, 1, RootValue(2), 3)
    with pytest.raises(ValueError):
        degree_bounds(0, 1, RootValue(2), 4)


def test_inverse_table_reverses_rows():
    table = degree_bounds(2, 1, RootValue(2), 4)
    inv = inverse_table(table)
    assert _render_rows(inv) == [(0, "1", "1", True), (1, "2", "2", True)]
    assert inv.theta0 == 1 and inv.theta_top == 2
    back = inverse_table(inv)
    assert _render_rows(back) == _render_rows(table)
    assert back.theta0 == table.theta0 and back.theta_top == table.theta_top


def test_iterate_counts():
    assert iterate_counts(2, 1, 3) == [(1, 2, 1), (2, 4, 1), (3, 8, 1)]
    assert iterate_counts(3, 2, 2) == [(1, 3, 2), (2, 9, 4)]
    with pytest.raises(ValueError):
        iterate_counts(2, 1, 0)


# ---------------------------------------------------------------------------
# single-valued inverse


def test_conditions_hold_for_rabbit(rabbit):
    rep = single_valued_conditions(rabbit)
    assert rep.holds and rep.kc1 and rep.kc2
    assert rep.ell0 == 1
    assert rep.critical_count == 2


def test_conditions_hold_for_preperiodic(preperiodic):
    rep = single_valued_conditions(preperiodic)
    assert rep.holds
    assert rep.ell0 == 1
    assert rep.critical_count == 2


def test_conditions_fail_without_full_ramification(identity_portrait):
    rep = single_valued_conditions(identity_portrait)
    assert not rep.kc1 and not rep.holds
    assert rep.ell0 is None


def test_conditions_fail_with_stray_critical_point():
    data = BranchingData(
        source_points=("p0", "p1", "p2", "p3"),
        target_points=("p0", "p1", "p2", "p3"),
        degree=3,
        point_map={"p0": "p0", "p1": "p1", "p2": "p1", "p3": "p2"},
        ram={"p0": 3, "p1": 2, "p2": 1, "p3": 2},
        branching={"p0": (3,), "p1": (2, 1), "p2": (2, 1), "p3": (1, 1, 1)},
    )
    rep = single_valued_conditions(data)
    assert rep.kc1 and rep.ell0 == 1
    assert not rep.kc2 and not rep.holds
    assert rep.critical_count == 3


def test_band_rows_and_lyapunov():
    band = single_valued_band(2, 5, 2)
    assert [(r.k, r.lower, r.upper) for r in band.rows] == [
        (0, Fraction(0), Fraction(0)),
        (1, Fraction(1, 2), Fraction(1)),
        (2, Fraction(1), Fraction(2)),
    ]
    assert band.lyapunov_lower == Fraction(1, 4)
    for row in band.rows:
        assert row.lower <= row.upper


def test_band_csv_lines():
    band = single_valued_band(2, 4, 1)
    assert band.csv_lines() == [
        "# d=2 ell0=1 nP=4",
        "k,lower_log,upper_log",
        "0,0,0",
        "1,0.693147180560,0.693147180560",
    ]
    assert band.lyapunov_lower == Fraction(1, 2)


def test_band_argument_errors():
    with pytest.raises(ValueError):
        single_valued_band(1, 4, 1)
    with pytest.raises(ValueError):
        single_valued_band(2, 3, 1)
    with pytest.raises(ValueError):
        single_valued_band(2, 4, 0)
