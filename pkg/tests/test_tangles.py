import pytest

from chartkit.chart import region_bounded_by
from chartkit.embedding import edge_of
from chartkit.errors import PreconditionError
from chartkit.features import enumerate_cycles
from chartkit.fixtures import fixture
from chartkit.tangles import (TauComplexity, bead_chain,
                              boundary_condition_check, boundary_profile,
                              classify_plain_disk, detect_reducible_tree,
                              detect_suspicious_cycles, extract_tangle,
                              fundamental_info, induced_tangle_from_component,
                              induced_tangle_from_cycle, is_small_component,
                              label_range, m_components, ns_tangle_search,
                              reducible_tree_conditions,
                              suspicious_cycle_guarantee, tangle_around, tau,
                              verify_io_structure)

BEADS_CHAIN = {"q1a", "q1b", "e1nw", "e1ne", "e1se", "e1sw", "wt1", "wb1",
               "pm", "e2nw", "e2ne", "e2se", "e2sw", "wt2", "wb2", "q2a",
               "q2b"}


def grove_tangle():
    chart = fixture("grove")
    region = region_bounded_by(chart, ["wall1:+", "wall2:-"])
    return chart, extract_tangle(chart, region)


def beads_tangle():
    chart = fixture("beads")
    return chart, tangle_around(chart, BEADS_CHAIN)


def cycle_with_edges(chart, label, edges):
    cycles, truncated = enumerate_cycles(chart, label)
    assert not truncated
    match = [c for c in cycles if {edge_of(d) for d in c.walk} == set(edges)]
    assert len(match) == 1
    return match[0]


def test_lens_region_tangle():
    chart = fixture("lens")
    region = region_bounded_by(chart, ["a:-", "b:+"])
    t = extract_tangle(chart, region)
    assert t.edges == frozenset(("a", "b", "c"))
    assert tau(chart, t) == TauComplexity(2, 0, 6)
    assert boundary_profile(chart, t) == {1: 2, 2: 4}
    # all six pokes are terminal edges, which an admissible disk may not cross
    assert not t.flags["admissible"]
    poked = {w["elements"][0] for w in t.flags["admissibility_problems"]}
    assert poked == {"ka", "kb", "kd", "ke", "m3", "m4"}
    assert t.flags["two_color"] and t.flags["color_pair"] == (1, 2)
    assert t.flags["ns_labels"] == []


def test_free_edge_tangle_not_admissible():
    chart = fixture("free")
    t = tangle_around(chart, ["f"])
    assert tau(chart, t) == TauComplexity(0, 0, 0)
    assert not t.flags["admissible"]
    assert any("free" in w["explanation"]
               for w in t.flags["admissibility_problems"])


def test_tau_ordering_and_nesting():
    assert TauComplexity(0, 0, 1) < TauComplexity(0, 1, 0) < TauComplexity(1, 0, 0)
    chart, big = grove_tangle()
    lobe = tangle_around(chart, ["c4"])
    assert lobe.edges == frozenset(("c4", "kf41"))   # engulfed the inside hair
    assert tau(chart, lobe) < tau(chart, big)
    assert tau(chart, big) == TauComplexity(17, 0, 2)


def test_grove_tangle_flags():
    chart, t = grove_tangle()
    assert t.flags["admissible"]
    assert t.flags["two_color"] and t.flags["color_pair"] == (1, 2)
    assert boundary_profile(chart, t) == {1: 2}
    # one label carries both pokes and no other label meets the boundary
    assert t.flags["ns_labels"] == [1]
    assert t.flags["io_labels"] == [1]
    assert t.flags["simple_io_labels"] == []


def test_grove_disk_tree_census():
    chart, t = grove_tangle()
    fi = fundamental_info(chart, 1, t=t)
    assert (fi["d"], fi["p"], fi["q"]) == (6, 5, 2)
    assert (fi["h"], fi["s"], fi["t"]) == (12, 9, 3)
    assert fi["x"][:6] == [0, 3, 1, 1, 1, 0] and not any(fi["x"][6:])
    assert fi["y"][:5] == [0, 2, 2, 1, 0] and not any(fi["y"][5:])
    assert fi["d"] + fi["p"] + fi["q"] - fi["h"] == 1
    assert all(rec["residual"] == 0 for rec in fi["identities"])
    # sparse trees (one attachment) exist, so the reduced-shape evidence fails
    assert fi["reduced_evidence"] == {"no_sparse_tree": False,
                                      "disk_balance": False}
    assert sorted(len(d["attachments"]) for d in fi["disks"]) == [1, 1, 1, 2, 3, 4]
    interior = sorted(len(tr["attachments"]) for tr in fi["trees"]
                      if not tr["boundary"])
    boundary = sorted(len(tr["attachments"]) for tr in fi["trees"]
                      if tr["boundary"])
    assert interior == [1, 1, 2, 2, 3] and boundary == [1, 2]


def test_bare_cycle_census():
    chart = fixture("duocycle")
    fi = fundamental_info(chart, 1)
    assert (fi["d"], fi["p"], fi["q"], fi["h"]) == (1, 0, 0, 0)
    assert fi["x"] == [1, 0] and fi["y"] == [0, 0]
    assert all(rec["residual"] == 0 for rec in fi["identities"])
    assert fi["reduced_evidence"] == {"no_sparse_tree": True,
                                      "disk_balance": True}


def test_census_requires_white():
    chart = fixture("rings")
    with pytest.raises(PreconditionError):
        fundamental_info(chart, 1)


def test_grove_chain_claim_violations():
    chart, t = grove_tangle()
    res = bead_chain(chart, t, 1)
    assert not res["holds"] and res["chain"] is None
    assert (res["d"], res["p"], res["q"]) == (6, 5, 2)
    assert res["d_equals_p_plus_1"]   # numerically true, yet the claims fail
    texts = sorted(w["explanation"] for w in res["witnesses"])
    assert sum(s.startswith("disk") for s in texts) == 5
    assert sum("interior tree" in s for s in texts) == 3
    assert sum("boundary tree" in s for s in texts) == 1
    assert all(w["kind"] == "ns-tangle" for w in res["witnesses"])


def test_beads_tangle_flags():
    chart, t = beads_tangle()
    # engulfing pulls in the four chords inside the square disks
    assert t.edges - BEADS_CHAIN == {"ki1a", "ki1b", "ki2a", "ki2b"}
    assert tau(chart, t) == TauComplexity(10, 0, 24)
    assert t.flags["admissible"]
    assert boundary_profile(chart, t) == {1: 2, 2: 22}
    assert t.flags["ns_labels"] == []
    assert t.flags["simple_io_labels"] == [1]


def test_beads_chain_structure():
    chart, t = beads_tangle()
    res = bead_chain(chart, t, 1)
    assert res["holds"] and res["witnesses"] == []
    assert (res["d"], res["p"], res["q"]) == (2, 1, 2)
    assert res["d_equals_p_plus_1"]
    order = [kind for kind, _ in res["chain"]["order"]]
    assert order == ["tree", "disk", "tree", "disk", "tree"]
    arcs = [sorted(a["edges"]) for a in res["chain"]["arcs"]]
    assert arcs == [["q1a"], ["pm"], ["q2a"]]


def test_beads_io_split():
    chart, t = beads_tangle()
    res = verify_io_structure(chart, t)
    assert res["label"] == 1
    assert res["verdict"] == "simple IO-tangle" and res["holds"]
    assert {v for v, _ in res["split"]} == {"u1", "u2"}
    assert len(res["l_in"]) == len(res["l_out"]) == 11
    assert all(rec["inward"] for rec in res["l_in"])
    assert not any(rec["inward"] for rec in res["l_out"])
    assert all(rec["label"] == 2 for rec in res["l_in"] + res["l_out"])


def test_grove_io_not_simple():
    chart, t = grove_tangle()
    res = verify_io_structure(chart, t, 1)
    assert res["verdict"] == "IO-tangle" and not res["holds"]
    assert res["witnesses"]
    assert all("terminal" in w["explanation"] for w in res["witnesses"])


def test_io_preconditions():
    chart = fixture("lens")
    region = region_bounded_by(chart, ["a:-", "b:+"])
    t = extract_tangle(chart, region)
    with pytest.raises(PreconditionError):
        verify_io_structure(chart, t, 1)   # not admissible
    free = fixture("free")
    with pytest.raises(PreconditionError):
        verify_io_structure(free, tangle_around(free, ["f"]))


def test_induced_from_cycle_swallows_hairs():
    chart = fixture("grove")
    loop = cycle_with_edges(chart, 1, ["c4"])
    t = induced_tangle_from_cycle(chart, loop)
    assert t.edges == frozenset(("c4", "kf41", "kf42", "kf43"))
    assert t.swallowed == ("kf42", "kf43")
    # after swallowing, the boundary meets no terminal edge and every poked
    # edge ends on the cycle
    assert t.rim == (("f4", "p3:+"),)
    assert boundary_profile(chart, t) == {1: 1}
    assert set(t.flags["ns_labels"]) == {1, 2}


def test_induced_from_component():
    chart = fixture("grove")
    comps = m_components(chart, 2)
    star = [c for c in comps if set(c["edges"]) == {"ka11", "ka12", "ka13"}][0]
    assert star["pokes"] == []
    assert is_small_component(chart, 2, star)
    t = induced_tangle_from_component(chart, star["edges"])
    # same-label boundary count matches the component's own: zero
    assert boundary_profile(chart, t).get(2, 0) == 0
    assert t.flags["ns_labels"] == [1]


def test_wall_cluster_not_small():
    chart, t = grove_tangle()
    comps = m_components(chart, 2, t)
    assert len(comps) == 16
    wall = [c for c in comps if "wall1" in c["edges"]][0]
    assert sorted(wall["edges"]) == ["s2wa", "s2wb", "wall1", "wall2"]
    assert not is_small_component(chart, 2, wall, t)


def test_reducible_tree_detection():
    flags = detect_reducible_tree(fixture("star"), 1)
    assert [sorted(w["elements"]) for w in flags] == [["t0", "t2", "t4"]]
    flags = detect_reducible_tree(fixture("line3"), 1)
    assert len(flags) == 1 and "e0" in flags[0]["elements"]
    assert detect_reducible_tree(fixture("free"), 1) == []
    assert detect_reducible_tree(fixture("cycle9"), 1) == []   # has a cycle
    # two degree-one whites disqualify a tree
    conds = reducible_tree_conditions(fixture("w2"), ["e1"])
    assert not conds["ok"]
    assert any("loose" in f for f in conds["failures"])


def test_suspicious_cycle_detection():
    assert [sorted(w["elements"]) for w in
            detect_suspicious_cycles(fixture("duocycle"), 1)] == [["c1", "c2", "c3", "c4"]]
    got = [sorted(w["elements"]) for w in
           detect_suspicious_cycles(fixture("grove"), 1)]
    assert got == [["c4"], ["c5"], ["c6"]]   # the square/triangle keep >1 loose edge
    assert detect_suspicious_cycles(fixture("line3"), 1) == []
    assert detect_suspicious_cycles(fixture("hoop"), 1) == []


def test_suspicious_cycle_guarantee():
    chart = fixture("grove")
    # a small white-bearing component of label 1 exists and so do suspicious
    # label-1 cycles: the guarantee holds
    assert suspicious_cycle_guarantee(chart, 1)["holds"] is True
    # label 2 has seventeen qualifying hair stars but no label-2 cycle at all
    res = suspicious_cycle_guarantee(chart, 2)
    assert res["applicable"] and res["holds"] is False
    assert len(res["qualifying"]) == 17
    assert suspicious_cycle_guarantee(fixture("empty"), 1)["holds"] is None


def test_search_is_quiet_on_whiteless_charts():
    for name in ("empty", "free", "hoop", "rings"):
        res = ns_tangle_search(fixture(name))
        assert res["witnesses"] == [] and not res["truncated"]


def test_search_finds_witnesses():
    res = ns_tangle_search(fixture("grove"))
    assert res["witnesses"] and not res["truncated"]
    taus = [w["tau"] for w in res["witnesses"]]
    assert taus == sorted(taus)
    assert taus[0] == (1, 0, 1)
    assert all(w["kind"] == "ns-tangle" for w in res["witnesses"])
    labels = {w["label"] for w in res["witnesses"]}
    assert labels == {1, 2}


def test_search_truncation_marker():
    res = ns_tangle_search(fixture("grove"), face_budget=2, cap=10)
    assert res["truncated"]


def test_absorbing_poked_terminal_shrinks_tau():
    chart = fixture("beads")
    hairs = [f"h{i}.ku_j1" for i in range(1, 6)]
    part = tangle_around(chart, hairs[:4])
    full = tangle_around(chart, hairs)
    assert 2 in part.flags["ns_labels"] and 2 in full.flags["ns_labels"]
    assert tau(chart, full) == TauComplexity(1, 0, 1)
    assert tau(chart, part) == TauComplexity(1, 0, 2)
    assert tau(chart, full) < tau(chart, part)


def test_boundary_label_window():
    lens = fixture("lens")
    t = extract_tangle(lens, region_bounded_by(lens, ["a:-", "b:+"]))
    res = boundary_condition_check(lens, t)
    assert res == {"applicable": True, "window": (1, 2), "holds": True,
                   "witnesses": []}
    chart, big = grove_tangle()
    res = boundary_condition_check(chart, big)
    # label-2 content escapes the all-label-1 boundary window
    assert res["applicable"] and not res["holds"]
    assert res["witnesses"]
    assert all(w["kind"] == "ns-tangle" for w in res["witnesses"])


def test_label_range():
    chart = fixture("grove")
    assert label_range(chart, edges=["c4"]) == (1, 1)
    assert label_range(chart, edges=["c4", "ka11"]) == (1, 2)
    rings = fixture("rings")
    assert label_range(rings, vertices=["x1"]) == (1, 3)
    with pytest.raises(PreconditionError):
        label_range(chart)


def test_plain_disk_classification():
    chart = fixture("grove")
    square = cycle_with_edges(chart, 1, ["c11", "c12", "c13", "c14"])
    res = classify_plain_disk(chart, square)
    assert res["label"] == 1 and res["secondary"] == 2
    assert res["three_color"] and res["two_color"]
    assert res["uniform_boundary"] and res["consistent"]
    ring = cycle_with_edges(fixture("xstrand"), 3, ["b1"])
    with pytest.raises(PreconditionError):
        classify_plain_disk(fixture("xstrand"), ring)
