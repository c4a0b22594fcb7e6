import pytest

from chartkit.errors import GeometryError, PreconditionError
from chartkit.features import (bigons, color_classify_region,
                               consecutive_triplets, counting_report,
                               cycle_region, edge_classes, enumerate_cycles,
                               free_edges, hoop_is_simple, hoop_strands,
                               label_subgraph, mid_excess_verdict,
                               mid_set_residual, simple_hoops, strands,
                               w_sets)
from chartkit.fixtures import fixture


def cycles_of(chart, label):
    cycles, truncated = enumerate_cycles(chart, label)
    assert not truncated
    return cycles


def the_cycle(chart, label):
    cycles = cycles_of(chart, label)
    assert len(cycles) == 1
    return cycles[0]


def test_star_classes_and_negatives():
    chart = fixture("star")
    classes = edge_classes(chart)
    assert set(classes.values()) == {"terminal"}
    assert consecutive_triplets(chart) == []
    assert cycles_of(chart, 1) == [] and cycles_of(chart, 2) == []
    assert bigons(chart) == []


def test_free_and_hoop_classes():
    chart = fixture("free")
    assert edge_classes(chart) == {"f": "free"}
    assert free_edges(chart) == ["f"]

    chart = fixture("hoop")
    assert edge_classes(chart) == {"h": "hoop-member"}
    assert simple_hoops(chart) == ["h.a"]
    cycles = cycles_of(chart, 1)
    assert len(cycles) == 1 and cycles[0].kind == "hoop"
    with pytest.raises(PreconditionError, match="boundary-not-all-white"):
        counting_report(chart, cycles[0])


def test_w2_strands():
    chart = fixture("w2")
    classes = edge_classes(chart)
    assert classes["e1"] == "internal-edge-member"
    assert sum(1 for c in classes.values() if c == "terminal") == 10
    trips = consecutive_triplets(chart)
    assert trips and not all(t["admissible"] for t in trips)
    assert ["gp1", "e1", "gp2"] in [t["edges"] for t in trips]


def test_loop_cycle():
    chart = fixture("loop1")
    classes = edge_classes(chart)
    assert classes["l"] == "loop"
    cyc = the_cycle(chart, 1)
    assert cyc.whites == ("w",)
    sets = w_sets(chart, cyc)
    assert sets["w_o"] == ["w"] and sets["w_i"] == []
    assert sets["w_o_mid"] == [] and sets["w_i_mid"] == []
    res = mid_set_residual(chart, cyc)
    assert res["residual"] == 0 and res["applicable"]
    region = cycle_region(chart, cyc)
    assert region.inside_edges == {"k1"}


def test_ring_fixture():
    chart = fixture("rings")
    classes = edge_classes(chart)
    assert set(classes.values()) == {"ring-member"}
    for label in (1, 3):
        cyc = the_cycle(chart, label)
        assert cyc.kind == "ring" and cyc.whites == ()


def test_cross_strand_is_other():
    chart = fixture("xstrand")
    classes = edge_classes(chart)
    assert classes["c1"] == "other" and classes["c2"] == "other"
    assert classes["b1"] == "ring-member"


def test_lens_cycle_sets():
    chart = fixture("lens")
    cyc = the_cycle(chart, 1)
    assert set(cyc.strands) == {"a", "b"}
    region = cycle_region(chart, cyc)
    assert region.inside_edges == {"c"}
    sets = w_sets(chart, cyc, region)
    assert sets["w_o"] == ["u1", "u2"] and sets["w_i"] == []
    assert sets["w_o_mid"] == ["u1", "u2"] and sets["w_i_mid"] == []
    assert sets["interior"] == []
    assert sets["mid_in_disk"] == {2: ["u1", "u2"]}

    res = mid_set_residual(chart, cyc, sets)
    assert res["lhs"] == 2 and res["rhs"] == 2 and res["residual"] == 0

    verdict = mid_excess_verdict(chart, cyc, sets)
    assert verdict["qualifies"] and verdict["surplus_holds"] and verdict["floor_holds"]

    report = counting_report(chart, cyc, region)
    assert (report["V"], report["E"], report["F"], report["w_o"]) == (2, 2, 1, 2)
    assert all(item["residual"] == 0 for item in report["identities"])


def test_lens_bigons():
    chart = fixture("lens")
    found = {tuple(b["edges"]) for b in bigons(chart)}
    # the chord blocks the (a, b) pair but forms a clean lens with each arc
    assert found == {("a", "c"), ("b", "c")}


def test_cycle9_sets():
    chart = fixture("cycle9")
    cyc = the_cycle(chart, 1)
    assert len(cyc.whites) == 9
    sets = w_sets(chart, cyc)
    assert sets["w_o_mid"] == ["v2", "v3", "v4"]
    assert sets["w_i"] == ["v9"] and sets["w_i_mid"] == ["v9"]
    assert len(sets["w_o"]) == 8
    assert sets["mid_in_disk"][2] == ["v2", "v3", "v4"]

    res = mid_set_residual(chart, cyc, sets)
    assert res["lhs"] == 3 and res["rhs"] == 3 and res["residual"] == 0

    verdict = mid_excess_verdict(chart, cyc, sets)
    assert verdict["qualifies"]
    assert verdict["surplus_holds"] and verdict["floor_holds"]

    with pytest.raises(PreconditionError, match="m-black-inside"):
        counting_report(chart, cyc)


def test_viol_cycle_breaks_bounds():
    chart = fixture("viol-cycle")
    cyc = the_cycle(chart, 1)
    sets = w_sets(chart, cyc)
    assert sets["w_o_mid"] == ["mo"] and sets["w_i_mid"] == ["mi"]
    res = mid_set_residual(chart, cyc, sets)
    assert res["residual"] == 0
    verdict = mid_excess_verdict(chart, cyc, sets)
    assert verdict["qualifies"]
    assert not verdict["surplus_holds"] and not verdict["floor_holds"]


def test_line3_structure():
    chart = fixture("line3")
    classes = edge_classes(chart)
    assert classes["e1"] == "internal-edge-member"
    assert classes["e0"] == "terminal" and classes["e3"] == "terminal"
    assert cycles_of(chart, 1) == []


def test_triplet_admissibility():
    step = fixture("triplet-step")
    trips = consecutive_triplets(step)
    assert len(trips) == 4 and all(t["admissible"] for t in trips)
    assert ["e1", "e2", "e3"] in [t["edges"] for t in trips]

    echo = fixture("triplet-echo")
    trips = consecutive_triplets(echo)
    assert len(trips) == 4 and not any(t["admissible"] for t in trips)


def test_hoop_sides():
    chart = fixture("hoop")
    hp = hoop_strands(chart)[0]
    assert hoop_is_simple(chart, hp)


def test_label_subgraph_census():
    ch = fixture("empty")
    sub = label_subgraph(ch, 1)
    assert sub["edges"] == [] and sub["components"] == []
    with pytest.raises(PreconditionError):
        label_subgraph(ch, 2)

    ch = fixture("free")
    sub = label_subgraph(ch, 1)
    assert len(sub["components"]) == 1 and sub["cycles"] == []

    ch = fixture("xstrand")
    one = label_subgraph(ch, 1)
    assert one["edges"] == ["c1", "c2"] and "x" in one["vertices"]
    assert label_subgraph(ch, 2)["edges"] == []
    three = label_subgraph(ch, 3)
    assert three["edges"] == ["b1"] and three["vertices"] == ["x"]
    assert [c.kind for c in three["cycles"]] == ["ring"]
    assert three["maximal"] == [True]

    ch = fixture("duocycle")
    sub = label_subgraph(ch, 1)
    assert len(sub["components"]) == 1
    assert [len(c.whites) for c in sub["cycles"]] == [4]
    assert sub["maximal"] == [True]


def test_color_classify_region():
    ch = fixture("duocycle")
    cyc = the_cycle(ch, 1)
    rep = color_classify_region(ch, cycle_region(ch, cyc), 1)
    assert rep["two_color"] and rep["three_color"] and rep["secondary"] == 2
    assert rep["crossings"] == [] and rep["labels"] == [2]

    ch = fixture("rings")
    cycles, _ = enumerate_cycles(ch, 1)
    reg = cycle_region(ch, cycles[0])
    rep = color_classify_region(ch, reg, 1)
    assert not rep["two_color"] and not rep["three_color"]
    assert rep["crossings"]
    with pytest.raises(GeometryError):
        color_classify_region(ch, reg, 3)
