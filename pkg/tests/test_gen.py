import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chartkit.chart import validate_chart
from chartkit.embedding import edge_of
from chartkit.errors import StructureError
from chartkit.features import (counting_report, enumerate_cycles,
                               mid_set_residual, w_sets)
from chartkit.gen import forced_hair_signs, random_component, random_disk
from chartkit.tangles import fundamental_info

from oracles import incidence_census


def hist(xs):
    return {k: n for k, n in enumerate(xs) if n}


def boundary_cycle(chart, wall):
    cycles, truncated = enumerate_cycles(chart, 2)
    assert not truncated
    return next(c for c in cycles if {edge_of(d) for d in c.walk} == set(wall))


def test_forced_hair_signs_pins_phase():
    assert forced_hair_signs(("-", "+", "-")) == ("+", "+", "-")
    assert forced_hair_signs(("+", "-", "+")) == ("-", "-", "+")
    with pytest.raises(StructureError):
        forced_hair_signs(("+", "+", "+"))
    with pytest.raises(StructureError):
        forced_hair_signs(("-", "-", "-"))


def test_component_census_matches_plan_and_recount():
    for seed in range(120):
        chart, plan = random_component(seed)
        info = fundamental_info(chart, 1)
        recount = incidence_census(chart, 1)
        assert info["d"] == plan["d"] == recount["d"], seed
        assert info["p"] == plan["p"] == recount["p"], seed
        assert info["q"] == 0, seed
        assert info["h"] == plan["h"] == recount["h"], seed
        assert hist(info["x"]) == plan["x"] == recount["x"], seed
        assert hist(info["y"]) == plan["y"] == recount["y"], seed
        assert [r["name"] for r in info["identities"]
                if r["residual"] != 0] == [], seed


def test_component_low_attachment_identity_from_recount():
    # the generalized identity recomputed from raw incidence counts alone
    for seed in range(120):
        chart, _plan = random_component(seed)
        r = incidence_census(chart, 1)
        x, y = r["x"], r["y"]
        lhs = 2 * x.get(0, 0) + x.get(1, 0) + 2 * y.get(0, 0) + y.get(1, 0)
        big = sum((k - 2) * n for k, n in list(x.items()) + list(y.items())
                  if k >= 3)
        assert lhs == 2 + big, seed
        assert r["d"] + r["p"] - r["h"] == 1, seed


def test_disk_counts_match_plan():
    for seed in range(60):
        chart, plan = random_disk(seed)
        rep = counting_report(chart, boundary_cycle(chart, plan["wall"]))
        got = (rep["V"], rep["E"], rep["F"], rep["w_o"])
        assert got == (plan["V"], plan["E"], plan["F"], plan["w_o"]), seed
        assert [i["verdict"] for i in rep["identities"]] == ["holds"] * 2, seed


def test_disk_mid_identity_and_partition_laws():
    for seed in range(60):
        chart, plan = random_disk(seed)
        cyc = boundary_cycle(chart, plan["wall"])
        res = mid_set_residual(chart, cyc)
        assert res["applicable"] and res["residual"] == 0, seed
        sets = w_sets(chart, cyc)
        assert sorted(sets["w_i"] + sets["w_o"]) == sets["on_cycle"], seed
        assert set(sets["w_i_mid"]) <= set(sets["w_i"]), seed
        assert set(sets["w_o_mid"]) <= set(sets["w_o"]), seed
        assert len(sets["w_o"]) == plan["w_o"], seed


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_any_component_satisfies_count_identities(seed):
    chart, _plan = random_component(seed)
    assert validate_chart(chart) == []
    info = fundamental_info(chart, 1)
    assert all(r["residual"] == 0 for r in info["identities"])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_any_disk_satisfies_count_identities(seed):
    chart, plan = random_disk(seed)
    assert validate_chart(chart) == []
    cyc = boundary_cycle(chart, plan["wall"])
    rep = counting_report(chart, cyc)
    assert all(i["residual"] == 0 for i in rep["identities"])
    assert mid_set_residual(chart, cyc)["residual"] == 0
