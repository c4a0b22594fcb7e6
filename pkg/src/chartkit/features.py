"""Strand structure, cycles, side sets and the counting identities.

A strand is a maximal run of equal-label edges connected through degree-2
and degree-4 pass-through vertices; whites and blacks end strands.  Cycles
are closed circuits of strands through whites (or closed strands).  For a
cycle with its bounded disk we classify the spare label-m dart of each
boundary white by side and by mid-ness, and evaluate the counting
identities that constrain them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chart import (Chart, Region, is_middle_at, label_middle, middle_darts,
                    region_bounded_by)
from .embedding import UnionFind, dart, edge_of, is_head, mate
from .errors import GeometryError, PreconditionError

PASS_THROUGH = ("crossing", "phantom")


def is_passthrough(chart, v):
    return chart.vertex_kind[v] in PASS_THROUGH


def passthrough_exit(chart, d):
    """d sits at a crossing or phantom; the dart its strand continues on."""
    v = chart.vertex_of(d)
    darts = chart.rotation[v]
    return darts[(darts.index(d) + len(darts) // 2) % len(darts)]


@dataclass(frozen=True)
class Strand:
    sid: str
    label: int
    edges: tuple
    closed: bool
    walk: tuple      # traversal darts, each at the vertex it leaves
    ends: tuple      # darts at the two end vertices; () when closed
    crossings: tuple
    kind: str        # hoop ring internal loop terminal free black-strand


def _walk_open(chart, d0):
    walk = [d0]
    while True:
        far = chart.vertex_of(mate(walk[-1]))
        if not is_passthrough(chart, far):
            return walk, mate(walk[-1])
        walk.append(passthrough_exit(chart, mate(walk[-1])))


def _walk_closed(chart, d0):
    walk = [d0]
    while True:
        exit_d = passthrough_exit(chart, mate(walk[-1]))
        if exit_d == d0:
            return walk
        walk.append(exit_d)


def _classify(chart, closed, ends, edges, crossings):
    if closed:
        return "ring" if crossings else "hoop"
    kinds = {chart.vertex_kind[chart.vertex_of(d)] for d in ends}
    if kinds == {"white"}:
        if chart.vertex_of(ends[0]) == chart.vertex_of(ends[1]):
            return "loop"
        return "internal"
    if "white" in kinds:
        return "terminal" if len(edges) == 1 else "black-strand"
    return "free" if len(edges) == 1 else "black-strand"


def strands(chart: Chart):
    # heavy scans (tangle searches) reclassify one immutable chart many times
    cached = getattr(chart, "_strand_cache", None)
    if cached is not None:
        return cached
    out = []
    seen = set()
    for v in sorted(chart.rotation):
        if is_passthrough(chart, v):
            continue
        for d in chart.rotation[v]:
            if edge_of(d) in seen:
                continue
            walk, end2 = _walk_open(chart, d)
            edges = tuple(sorted(edge_of(x) for x in walk))
            seen.update(edges)
            crossings = tuple(sorted(
                chart.vertex_of(x) for x in walk[1:]
                if chart.vertex_kind[chart.vertex_of(x)] == "crossing"))
            ends = (d, end2)
            out.append(Strand(min(edges), chart.edge_label[edges[0]], edges,
                              False, tuple(walk), ends, crossings,
                              _classify(chart, False, ends, edges, crossings)))
    for e in sorted(chart.edge_label):
        if e in seen:
            continue
        walk = _walk_closed(chart, dart(e, "-"))
        edges = tuple(sorted(edge_of(x) for x in walk))
        seen.update(edges)
        crossings = tuple(sorted(
            chart.vertex_of(x) for x in walk
            if chart.vertex_kind[chart.vertex_of(x)] == "crossing"))
        out.append(Strand(min(edges), chart.edge_label[e], edges, True,
                          tuple(walk), (), crossings,
                          _classify(chart, True, (), edges, crossings)))
    out.sort(key=lambda s: s.sid)
    chart._strand_cache = out
    return out


def strand_walk_from(strand: Strand, end_dart: str):
    """Traversal darts of an open strand starting at the given end."""
    if end_dart == strand.walk[0]:
        return list(strand.walk)
    if end_dart != strand.ends[1]:
        raise GeometryError(f"{end_dart} is not an end of strand {strand.sid}")
    return [mate(d) for d in reversed(strand.walk)]


_KIND_TO_CLASS = {
    "hoop": "hoop-member", "ring": "ring-member",
    "internal": "internal-edge-member", "loop": "loop",
    "terminal": "terminal", "free": "free", "black-strand": "other",
}


def edge_classes(chart: Chart, strand_list=None):
    """Per-edge classification, with closed-edge halves folded back to the
    user-visible id."""
    strand_list = strands(chart) if strand_list is None else strand_list
    raw = {}
    for st in strand_list:
        for e in st.edges:
            raw[e] = _KIND_TO_CLASS[st.kind]
    out = {}
    for e, cls in raw.items():
        base = e[:-2]
        if e[-2:] in (".a", ".b") and base in chart.closed_edges:
            out[base] = cls
        else:
            out[e] = cls
    return out


def free_edges(chart: Chart, strand_list=None):
    strand_list = strands(chart) if strand_list is None else strand_list
    return [st.sid for st in strand_list if st.kind == "free"]


def hoop_strands(chart: Chart, strand_list=None):
    strand_list = strands(chart) if strand_list is None else strand_list
    return [st for st in strand_list if st.kind == "hoop"]


def hoop_is_simple(chart: Chart, st: Strand) -> bool:
    """A closed vertex-free edge is simple when one of its sides contains
    no white vertex at all."""
    region = region_bounded_by(chart, list(st.walk))
    inside = set(region.interior_whites())
    return not inside or len(inside) == len(chart.whites())


def simple_hoops(chart: Chart, strand_list=None):
    return [st.sid for st in hoop_strands(chart, strand_list)
            if hoop_is_simple(chart, st)]


# -- cycles --------------------------------------------------------------------

@dataclass(frozen=True)
class Cycle:
    label: int
    kind: str        # white-cycle | ring | hoop
    whites: tuple    # in walk order; empty for ring and hoop
    strands: tuple
    walk: tuple      # traversal darts around the whole circuit


def cycle_region(chart: Chart, cycle: Cycle) -> Region:
    return region_bounded_by(chart, list(cycle.walk))


def enumerate_cycles(chart: Chart, label=None, limit=500):
    """All simple closed circuits of strands, per label.  Returns
    (cycles, truncated)."""
    sts = strands(chart)
    labels = sorted({st.label for st in sts}) if label is None else [label]
    cycles, truncated = [], False

    for m in labels:
        for st in sts:
            if st.label != m or st.kind not in ("ring", "hoop"):
                continue
            cycles.append(Cycle(m, st.kind, (), (st.sid,), st.walk))
        for st in sts:
            if st.label == m and st.kind == "loop":
                w = chart.vertex_of(st.ends[0])
                cycles.append(Cycle(m, "white-cycle", (w,), (st.sid,), st.walk))

        links = [st for st in sts if st.label == m and st.kind == "internal"]
        by_white = {}
        for st in links:
            for end in st.ends:
                by_white.setdefault(chart.vertex_of(end), []).append(st)
        found = set()

        def extend(start, v, path_strands, path_whites, walk):
            nonlocal truncated
            if len(cycles) >= limit:
                truncated = True
                return
            for st in by_white.get(v, ()):
                if st.sid in path_strands:
                    continue
                end = st.ends[0] if chart.vertex_of(st.ends[0]) == v else st.ends[1]
                far = chart.vertex_of(st.ends[1] if end is st.ends[0] else st.ends[0])
                seg = strand_walk_from(st, end)
                if far == start:
                    key = frozenset(path_strands | {st.sid})
                    if key not in found:
                        found.add(key)
                        cycles.append(Cycle(m, "white-cycle",
                                            tuple(path_whites),
                                            tuple(sorted(path_strands | {st.sid})),
                                            tuple(walk + seg)))
                    continue
                if far in path_whites or far < start:
                    continue
                extend(start, far, path_strands | {st.sid},
                       path_whites + [far], walk + seg)

        for w0 in sorted(by_white):
            extend(w0, w0, frozenset(), [w0], [])
    return cycles, truncated


# -- side sets around a cycle ----------------------------------------------------

def cycle_darts_at(chart: Chart, cycle: Cycle, w: str):
    """(departure, arrival) darts of the cycle at boundary white w."""
    dep = arr = None
    n = len(cycle.walk)
    for i, d in enumerate(cycle.walk):
        if chart.vertex_of(d) == w:
            dep = d
            arr = mate(cycle.walk[(i - 1) % n])
    if dep is None:
        raise GeometryError(f"{w} is not on the cycle")
    return dep, arr


def spare_dart(chart: Chart, cycle: Cycle, w: str):
    """The label-m dart at w not used by the cycle."""
    dep, arr = cycle_darts_at(chart, cycle, w)
    m_darts = [d for d in chart.rotation[w]
               if chart.edge_label[edge_of(d)] == cycle.label]
    rest = [d for d in m_darts if d not in (dep, arr)]
    if len(rest) != 1:
        raise GeometryError(f"cycle does not use two label darts at {w}")
    return rest[0]


def label_subgraph(chart: Chart, m: int, region: Region = None):
    """The subgraph carried by one label: its vertices, edges, connected
    components and cycles.  Each cycle is flagged maximal when no other
    cycle of the label bounds a strictly larger disk around it.  With a
    region, each component also lists its vertices on the region's wall."""
    if not 1 <= m <= chart.n - 1:
        raise PreconditionError(f"label {m} out of range 1..{chart.n - 1}")
    edges = sorted(e for e, l in chart.edge_label.items() if l == m)
    uf = UnionFind()
    for e in edges:
        uf.union(*chart.endpoints[e])
    groups = {}
    for e in edges:
        groups.setdefault(uf.find(chart.endpoints[e][0]), []).append(e)
    components = []
    for root in sorted(groups, key=lambda r: min(groups[r])):
        es = sorted(groups[root])
        vs = sorted({v for e in es for v in chart.endpoints[e]})
        comp = {"vertices": vs, "edges": es}
        if region is not None:
            comp["boundary_vertices"] = sorted(
                set(vs) & set(region.walk_vertices))
        components.append(comp)
    cycles, truncated = enumerate_cycles(chart, m)
    disks = [cycle_region(chart, c).inside_classes for c in cycles]
    maximal = [not any(disks[i] < disks[j] for j in range(len(disks)) if j != i)
               for i in range(len(disks))]
    return {"label": m, "vertices": sorted(uf.parent), "edges": edges,
            "components": components, "cycles": cycles, "maximal": maximal,
            "truncated": truncated}


def w_sets(chart: Chart, cycle: Cycle, region: Region = None):
    """Side classification of the cycle's whites and the mid sets of the
    bounded disk."""
    region = cycle_region(chart, cycle) if region is None else region
    m = cycle.label
    on_cycle = sorted(set(cycle.whites))
    interior = region.interior_whites()
    spare, w_i, w_o, w_i_mid, w_o_mid = {}, [], [], [], []
    for w in on_cycle:
        third = spare_dart(chart, cycle, w)
        spare[w] = third
        inside = region.contains_edge(edge_of(third))
        mid = is_middle_at(chart, third)
        (w_i if inside else w_o).append(w)
        if mid and inside:
            w_i_mid.append(w)
        if mid and not inside:
            w_o_mid.append(w)

    mid_in_disk = {}
    for k in (m - 1, m + 1):
        if not 1 <= k <= chart.n - 1:
            continue
        members = []
        for w in on_cycle + interior:
            labels = {chart.edge_label[edge_of(d)] for d in chart.rotation[w]}
            if k not in labels:
                continue
            if region.contains_edge(edge_of(label_middle(chart, w, k))):
                members.append(w)
        mid_in_disk[k] = members

    return {
        "label": m,
        "on_cycle": on_cycle,
        "interior": interior,
        "spare": spare,
        "w_i": w_i,
        "w_o": w_o,
        "w_i_mid": w_i_mid,
        "w_o_mid": w_o_mid,
        "mid_in_disk": mid_in_disk,
    }


def mid_set_residual(chart: Chart, cycle: Cycle, sets=None):
    """Counting identity tying the disk's mid sets to the boundary side
    classification.  Residual 0 whenever every interior white carries a
    label adjacent to the cycle's."""
    sets = w_sets(chart, cycle) if sets is None else sets
    lhs = sum(len(v) for v in sets["mid_in_disk"].values())
    rhs = (len(sets["interior"]) + len(sets["w_o_mid"])
           + len(sets["w_i"]) - len(sets["w_i_mid"]))
    applicable = True
    for w in sets["interior"]:
        labels = {chart.edge_label[edge_of(d)] for d in chart.rotation[w]}
        if not labels & {cycle.label - 1, cycle.label + 1}:
            applicable = False
    return {"label": cycle.label, "lhs": lhs, "rhs": rhs,
            "residual": lhs - rhs, "applicable": applicable}


def mid_excess_verdict(chart: Chart, cycle: Cycle, sets=None,
                       strand_list=None):
    """The two bounds on spare-mid darts of a disk boundary in a reduced
    chart: outward mids exceed inward mids by two, and number at least
    two.  qualifies reports whether the disk meets the structural
    hypotheses (the chart being reduced is the caller's business)."""
    sets = w_sets(chart, cycle) if sets is None else sets
    strand_list = strands(chart) if strand_list is None else strand_list
    disqualifiers = []
    if cycle.kind != "white-cycle":
        disqualifiers.append("boundary-not-all-white")
    if free_edges(chart, strand_list):
        disqualifiers.append("chart-has-free-edge")
    if simple_hoops(chart, strand_list):
        disqualifiers.append("chart-has-simple-hoop")
    m = cycle.label
    if any(lbl not in (m - 1, m, m + 1) for lbl in chart.edge_label.values()):
        disqualifiers.append("chart-not-3-color")
    if not _m_graph_connected_in_disk(chart, cycle):
        disqualifiers.append("m-graph-disconnected")
    wi, wo = len(sets["w_i_mid"]), len(sets["w_o_mid"])
    return {
        "label": m,
        "w_i_mid": wi,
        "w_o_mid": wo,
        "surplus_holds": wi + 2 <= wo,
        "floor_holds": wo >= 2,
        "qualifies": not disqualifiers,
        "disqualifiers": disqualifiers,
    }


def _m_graph_in_disk(chart, cycle, region=None):
    region = cycle_region(chart, cycle) if region is None else region
    m = cycle.label
    edges = set(region.wall_set)
    edges.update(e for e in region.inside_edges if chart.edge_label[e] == m)
    return edges, region


def _m_graph_connected_in_disk(chart, cycle, region=None):
    edges, _region = _m_graph_in_disk(chart, cycle, region)
    if not edges:
        return True
    start = next(iter(edges))
    todo = [start]
    seen = {start}
    incident = {}
    for e in edges:
        for v in chart.endpoints[e]:
            incident.setdefault(v, []).append(e)
    while todo:
        e = todo.pop()
        for v in chart.endpoints[e]:
            for nxt in incident[v]:
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
    return len(seen) == len(edges)


def color_classify_region(chart: Chart, region: Region, m: int) -> dict:
    """Colour verdicts for a disk whose wall lives on one label.

    Narrow: the interior content stays on the wall label and one fixed
    neighbour.  Wide: it stays within one label either side.  Both exclude
    crossings in the closed disk; a disk with no interior content is
    narrow vacuously, with no secondary label to report."""
    for e in region.wall_edges:
        if chart.edge_label[e] != m:
            raise GeometryError(f"wall edge {e} is not of label {m}")
    labels = sorted({chart.edge_label[e] for e in region.inside_edges})
    crossings = sorted(v for v in region.closure_vertices
                       if chart.vertex_kind[v] == "crossing")
    three = not crossings and all(l in (m - 1, m, m + 1) for l in labels)
    two, secondary = False, None
    if not crossings:
        extra = [l for l in labels if l != m]
        if not extra:
            two = True
        elif len(extra) == 1 and extra[0] in (m - 1, m + 1):
            two, secondary = True, extra[0]
    return {
        "label": m,
        "labels": labels,
        "crossings": crossings,
        "whites": region.interior_whites(),
        "blacks": sorted(v for v in region.interior_vertices
                         if chart.vertex_kind[v] == "black"),
        "two_color": two,
        "secondary": secondary,
        "three_color": three,
    }


def counting_report(chart: Chart, cycle: Cycle, region: Region = None):
    """Vertex / edge / face counts of the label-m graph inside the disk and
    the two exact relations they satisfy.  Raises PreconditionError naming
    the first violated hypothesis."""
    region = cycle_region(chart, cycle) if region is None else region
    m = cycle.label
    walk_vertices = [chart.vertex_of(d) for d in cycle.walk]
    if (cycle.kind != "white-cycle"
            or any(chart.vertex_kind[v] != "white" for v in walk_vertices)):
        raise PreconditionError("boundary-not-all-white")
    for e in sorted(region.wall_set | region.inside_edges):
        if chart.edge_label[e] not in (m - 1, m, m + 1):
            raise PreconditionError(f"disk-not-3-color: edge {e} has label "
                                    f"{chart.edge_label[e]}")
    m_inside = [e for e in region.inside_edges if chart.edge_label[e] == m]
    for e in sorted(m_inside):
        if any(chart.vertex_kind[v] == "black" for v in chart.endpoints[e]):
            raise PreconditionError(f"m-black-inside: edge {e}")
    if not _m_graph_connected_in_disk(chart, cycle, region):
        raise PreconditionError("m-graph-disconnected")

    sets = w_sets(chart, cycle, region)
    v_count = len(sets["on_cycle"]) + len(sets["interior"])
    e_count = len(region.wall_set) + len(m_inside)
    f_count = _merged_domains(chart, region, m)
    w_o = len(sets["w_o"])
    r1 = 2 * e_count - (3 * v_count - w_o)
    r2 = 2 * f_count - (2 + v_count - w_o)
    return {
        "label": m,
        "V": v_count,
        "E": e_count,
        "F": f_count,
        "w_o": w_o,
        "identities": [
            {"name": "edge-count", "lhs": 2 * e_count,
             "rhs": 3 * v_count - w_o, "residual": r1,
             "verdict": "holds" if r1 == 0 else "violated"},
            {"name": "face-count", "lhs": 2 * f_count,
             "rhs": 2 + v_count - w_o, "residual": r2,
             "verdict": "holds" if r2 == 0 else "violated"},
        ],
    }


def _merged_domains(chart, region, m):
    """Faces of the disk merged across inside edges of other labels: the
    complementary domains of the label-m graph within the disk."""
    parent = {c: c for c in region.inside_classes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in region.inside_edges:
        if chart.edge_label[e] == m:
            continue
        a = find(chart.global_face(dart(e, "-")))
        b = find(chart.global_face(dart(e, "+")))
        if a != b:
            parent[a] = b
    return len({find(c) for c in region.inside_classes})


# -- bigons and corner windows ---------------------------------------------------

def _between_component(chart: Chart, e1: str, e2: str):
    """Faces of the bounded complement component rimmed by both edges, or
    None when the pair does not cut one out."""
    uf = UnionFind()
    uf.add(chart.outer_class)
    for c in chart.face_class.values():
        uf.add(c)
    for e in chart.edge_label:
        if e in (e1, e2):
            continue
        uf.union(chart.global_face(dart(e, "-")),
                 chart.global_face(dart(e, "+")))
    comps = {}
    for c in list(uf.parent):
        comps.setdefault(uf.find(c), set()).add(c)
    outer_root = uf.find(chart.outer_class)
    for root, classes in comps.items():
        if root == outer_root:
            continue
        rim = {e for e in (e1, e2)
               if chart.global_face(dart(e, "-")) in classes
               or chart.global_face(dart(e, "+")) in classes}
        if rim == {e1, e2}:
            return classes
    return None


def bigons(chart: Chart):
    """Pairs of distinct edges on the same two white endpoints (possibly
    one doubled endpoint) whose bounded side contains no other edge
    touching those whites."""
    by_pair = {}
    for e, (t, h) in chart.endpoints.items():
        if chart.vertex_kind[t] == "white" and chart.vertex_kind[h] == "white":
            by_pair.setdefault(frozenset((t, h)), []).append(e)
    out = []
    for pair, edges in sorted(by_pair.items(), key=lambda kv: sorted(kv[0])):
        whites = set(pair)
        for i in range(len(edges)):
            for j in range(i + 1, len(edges)):
                e1, e2 = edges[i], edges[j]
                classes = _between_component(chart, e1, e2)
                if classes is None:
                    continue
                touching = [
                    e for e in chart.edge_label
                    if e not in (e1, e2)
                    and chart.global_face(dart(e, "-")) in classes
                    and whites & set(chart.endpoints[e])]
                if not touching:
                    out.append({"edges": sorted((e1, e2)),
                                "whites": sorted(pair),
                                "faces": sorted(classes),
                                "labels": sorted((chart.edge_label[e1],
                                                  chart.edge_label[e2]))})
    return out


def consecutive_triplets(chart: Chart):
    """Corner windows black-terminal, white-white edge, third edge, read
    along face walks in both directions.  admissible is False when the far
    edge repeats the terminal's label."""
    found = {}
    for orbit in chart.emb.faces:
        k = len(orbit)
        for i in range(k):
            a, b, c = orbit[i], orbit[(i + 1) % k], orbit[(i + 2) % k]
            va, vb, vc = (chart.vertex_of(a), chart.vertex_of(b),
                          chart.vertex_of(c))
            ea, eb, ec = edge_of(a), edge_of(b), edge_of(c)
            if len({ea, eb, ec}) != 3:
                continue
            if (chart.vertex_kind[va] == "black"
                    and chart.vertex_kind[vb] == "white"
                    and chart.vertex_kind[vc] == "white"):
                found[(ea, eb, ec)] = True
            if (chart.vertex_kind[chart.vertex_of(mate(c))] == "black"
                    and chart.vertex_kind[vc] == "white"
                    and chart.vertex_kind[vb] == "white"):
                found[(ec, eb, ea)] = True
    out = []
    for e1, e2, e3 in sorted(found):
        l1, l3 = chart.edge_label[e1], chart.edge_label[e3]
        out.append({"edges": [e1, e2, e3],
                    "labels": [l1, chart.edge_label[e2], l3],
                    "admissible": l3 != l1})
    return out
