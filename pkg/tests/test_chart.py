import json

import pytest

from chartkit.chart import (canonical_key, chart_to_doc, is_middle_at,
                            label_middle, middle_darts, parse_chart,
                            region_bounded_by, serialize_chart, validate_chart)
from chartkit.errors import GeometryError, StructureError


def star_doc():
    """One white vertex with six terminal edges, three in then three out."""
    vertices = [{"id": "w", "kind": "white"}]
    edges = []
    rotation = {}
    wdarts = []
    for i in range(6):
        b = f"b{i}"
        t = f"t{i}"
        vertices.append({"id": b, "kind": "black"})
        label = 1 if i % 2 == 0 else 2
        if i < 3:
            edges.append({"id": t, "label": label, "tail_vertex": b,
                          "head_vertex": "w"})
            wdarts.append(t + ":+")
            rotation[b] = [t + ":-"]
        else:
            edges.append({"id": t, "label": label, "tail_vertex": "w",
                          "head_vertex": b})
            wdarts.append(t + ":-")
            rotation[b] = [t + ":+"]
    rotation["w"] = wdarts
    return {"n": 3, "vertices": vertices, "edges": edges,
            "rotation": rotation, "outer_face": "t0:-"}


def crossing_doc():
    vertices = [{"id": "x", "kind": "crossing"}] + [
        {"id": f"c{i}", "kind": "black"} for i in range(1, 5)]
    edges = [
        {"id": "e1", "label": 1, "tail_vertex": "c1", "head_vertex": "x"},
        {"id": "e2", "label": 3, "tail_vertex": "c2", "head_vertex": "x"},
        {"id": "e3", "label": 1, "tail_vertex": "x", "head_vertex": "c3"},
        {"id": "e4", "label": 3, "tail_vertex": "x", "head_vertex": "c4"},
    ]
    rotation = {"x": ["e1:+", "e2:+", "e3:-", "e4:-"],
                "c1": ["e1:-"], "c2": ["e2:-"], "c3": ["e3:+"], "c4": ["e4:+"]}
    return {"n": 4, "vertices": vertices, "edges": edges, "rotation": rotation}


def hoop_with_free_doc():
    return {
        "n": 2,
        "vertices": [{"id": "b1", "kind": "black"}, {"id": "b2", "kind": "black"}],
        "edges": [{"id": "h", "label": 1, "closed": True},
                  {"id": "f", "label": 1, "tail_vertex": "b1", "head_vertex": "b2"}],
        "rotation": {"b1": ["f:-"], "b2": ["f:+"]},
        "placement": {"h.p1": {"in": "outer", "outer": "h.a:+"},
                      "b1": {"in": "h.a:-", "outer": None}},
    }


def test_star_is_valid():
    chart = parse_chart(star_doc())
    assert validate_chart(chart) == []
    assert len(chart.emb.faces) == 1


def test_star_middles():
    chart = parse_chart(star_doc())
    mid = middle_darts(chart, "w")
    assert mid == {"in": "t1:+", "out": "t4:-"}
    assert label_middle(chart, "w", 2) == "t1:+"
    assert label_middle(chart, "w", 1) == "t4:-"
    assert is_middle_at(chart, "t1:+")
    assert not is_middle_at(chart, "t0:+")


def test_middles_follow_rotation_shift():
    # rotate the inward run one slot: in-run at slots 1,2,3
    doc = star_doc()
    doc["edges"][0]["tail_vertex"] = "w"   # t0 now outward
    doc["edges"][0]["head_vertex"] = "b0"
    doc["edges"][3]["tail_vertex"] = "b3"  # t3 now inward
    doc["edges"][3]["head_vertex"] = "w"
    doc["rotation"]["w"] = ["t0:-", "t1:+", "t2:+", "t3:+", "t4:-", "t5:-"]
    doc["rotation"]["b0"] = ["t0:+"]
    doc["rotation"]["b3"] = ["t3:-"]
    chart = parse_chart(doc)
    assert validate_chart(chart) == []
    assert middle_darts(chart, "w") == {"in": "t2:+", "out": "t5:-"}


def test_crossing_valid_and_violations():
    chart = parse_chart(crossing_doc())
    assert validate_chart(chart) == []

    doc = crossing_doc()
    doc["edges"][1]["label"] = 2  # |1-2| < 2
    rules = {v["rule"] for v in validate_chart(parse_chart(doc))}
    assert "crossing-labels" in rules

    doc = crossing_doc()  # break flow-through: e3 also inward
    doc["edges"][2] = {"id": "e3", "label": 1, "tail_vertex": "c3",
                       "head_vertex": "x"}
    doc["rotation"]["x"] = ["e1:+", "e2:+", "e3:+", "e4:-"]
    doc["rotation"]["c3"] = ["e3:-"]
    rules = {v["rule"] for v in validate_chart(parse_chart(doc))}
    assert "crossing-orientation" in rules


def test_white_violations():
    doc = star_doc()
    doc["edges"][1]["label"] = 1  # two adjacent 1s
    rules = {v["rule"] for v in validate_chart(parse_chart(doc))}
    assert rules == {"white-labels"}

    doc = star_doc()  # orientations alternate instead of running
    for i, rec in enumerate(doc["edges"]):
        b, t = f"b{i}", f"t{i}"
        if i % 2 == 0:
            rec["tail_vertex"], rec["head_vertex"] = b, "w"
            doc["rotation"][b] = [t + ":-"]
        else:
            rec["tail_vertex"], rec["head_vertex"] = "w", b
            doc["rotation"][b] = [t + ":+"]
    doc["rotation"]["w"] = ["t0:+", "t1:-", "t2:+", "t3:-", "t4:+", "t5:-"]
    rules = {v["rule"] for v in validate_chart(parse_chart(doc))}
    assert rules == {"white-orientation"}


def test_label_range_violation():
    doc = star_doc()
    doc["n"] = 2
    rules = [v["rule"] for v in validate_chart(parse_chart(doc))]
    assert rules.count("label-range") == 3  # the three label-2 edges


def test_degree_violation():
    doc = crossing_doc()
    doc["vertices"][0]["kind"] = "white"
    rules = {v["rule"] for v in validate_chart(parse_chart(doc))}
    assert rules == {"degree"}


def test_parse_rejections():
    with pytest.raises(StructureError):
        parse_chart({"n": 2, "vertices": [], "edges": [], "rotation": {},
                     "mystery": 1})
    with pytest.raises(StructureError):
        parse_chart({"n": 2, "vertices": [], "edges": []})
    doc = star_doc()
    doc["vertices"].append({"id": "w", "kind": "black"})
    with pytest.raises(StructureError):
        parse_chart(doc)
    doc = hoop_with_free_doc()
    doc["rotation"]["h.p1"] = ["h.a:-", "h.b:+"]
    with pytest.raises(StructureError):
        parse_chart(doc)
    doc = hoop_with_free_doc()
    doc["outer_face"] = "f:-"
    with pytest.raises(StructureError):
        parse_chart(doc)  # outer_face and placement together
    doc = hoop_with_free_doc()
    doc["placement"]["nosuch"] = {"in": "outer", "outer": None}
    with pytest.raises(StructureError):
        parse_chart(doc)


def test_closed_edge_expansion_is_hidden():
    chart = parse_chart(hoop_with_free_doc())
    assert chart.closed_edges == {"h": 1}
    assert chart.vertex_kind["h.p1"] == "phantom"
    assert validate_chart(chart) == []
    doc = chart_to_doc(chart)
    ids = {rec["id"] for rec in doc["edges"]}
    assert ids == {"h", "f"}
    assert {rec["id"] for rec in doc["vertices"]} == {"b1", "b2"}
    assert "h.p1" not in doc["rotation"]


def test_round_trip_bytes_stable():
    for doc in (star_doc(), crossing_doc(), hoop_with_free_doc()):
        text = serialize_chart(parse_chart(doc))
        again = serialize_chart(parse_chart(text))
        assert text == again
        assert text.endswith("\n")
        json.loads(text)


def test_region_inside_hoop():
    chart = parse_chart(hoop_with_free_doc())
    region = region_bounded_by(chart, ["h.a:-", "h.b:-"])
    assert region.inside_edges == {"f"}
    assert region.interior_vertices == {"b1", "b2"}
    assert region.contains_edge("f")
    assert not region.contains_edge("h.a")
    assert region.contains_edge("h.a", closed=True)
    assert region.interior_whites() == []

    # the bounded side comes from the placement, not the walk direction
    region2 = region_bounded_by(chart, ["h.a:+", "h.b:+"])
    assert region2.inside_edges == {"f"}


def test_region_walk_errors():
    chart = parse_chart(hoop_with_free_doc())
    with pytest.raises(GeometryError):
        region_bounded_by(chart, ["h.a:-", "h.b:+"])  # does not chain
    with pytest.raises(GeometryError):
        region_bounded_by(chart, ["f:-"])  # open


def rename_ids(doc, vmap, emap):
    out = {"n": doc["n"], "vertices": [], "edges": [], "rotation": {}}
    for rec in doc["vertices"]:
        out["vertices"].append({"id": vmap[rec["id"]], "kind": rec["kind"]})
    for rec in doc["edges"]:
        out["edges"].append({"id": emap[rec["id"]], "label": rec["label"],
                             "tail_vertex": vmap[rec["tail_vertex"]],
                             "head_vertex": vmap[rec["head_vertex"]]})
    for v, darts in doc["rotation"].items():
        out["rotation"][vmap[v]] = [
            emap[d.rsplit(":", 1)[0]] + ":" + d[-1] for d in darts]
    if "outer_face" in doc:
        d = doc["outer_face"]
        out["outer_face"] = emap[d.rsplit(":", 1)[0]] + ":" + d[-1]
    return out


def test_canonical_key_ignores_names():
    doc = star_doc()
    vmap = {"w": "center"} | {f"b{i}": f"leaf{i}" for i in range(6)}
    emap = {f"t{i}": f"spoke{i}" for i in range(6)}
    k1 = canonical_key(parse_chart(doc))
    k2 = canonical_key(parse_chart(rename_ids(doc, vmap, emap)))
    assert k1 == k2
    # a cyclic shift of a rotation list is the same embedding
    other = star_doc()
    other["rotation"]["w"] = other["rotation"]["w"][1:] + other["rotation"]["w"][:1]
    assert canonical_key(parse_chart(other)) == k1
