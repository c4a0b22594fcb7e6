"""Disk cut-outs of a chart and their boundary structure.

A tangle is carried by a set of content edges together with every face
they enclose; the disk itself is a thin regular neighborhood of that
content.  The boundary then stays clear of vertices and meets each poking
edge transversely, one point per germ, so all boundary data reduces to a
cyclic list of pokes: (vertex, dart) pairs read off while walking around
the outside of the content.  A poke flows inward exactly when its dart is
the edge's head.

On top of the cut-out sit the census operations: the disk/tree
decomposition of one label's subgraph with its counting identities, the
obstruction detectors (reducible trees, suspicious cycles, tangles whose
boundary meets every other label at most once), one-way boundary
verification for two-point boundaries, and the bead-chain extraction.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import NamedTuple

from .chart import Chart, Region, region_bounded_by
from .embedding import UnionFind, dart, edge_of, is_head, mate
from .errors import GeometryError, PreconditionError
from .features import (Cycle, color_classify_region, cycle_region,
                       enumerate_cycles, hoop_is_simple, strands)


def _witness(kind, elements, explanation):
    return {"kind": kind, "elements": sorted(elements),
            "explanation": explanation}


# -- content geometry ------------------------------------------------------------

def _components(chart, edges, cut=frozenset()):
    """Connected components of an edge set, linking through shared vertices
    outside `cut`.  Returns sorted edge lists, smallest id first."""
    uf = UnionFind()
    by_vertex = {}
    for e in edges:
        uf.add(e)
        for v in chart.endpoints[e]:
            if v not in cut:
                by_vertex.setdefault(v, []).append(e)
    for group in by_vertex.values():
        for other in group[1:]:
            uf.union(group[0], other)
    comps = {}
    for e in edges:
        comps.setdefault(uf.find(e), []).append(e)
    return sorted((sorted(es) for es in comps.values()), key=lambda es: es[0])


def _filled_classes(chart, edges):
    """Global face classes separated from the outer face by the edge set."""
    uf = UnionFind()
    uf.add(chart.outer_class)
    for c in chart.face_class.values():
        uf.add(c)
    for e in chart.edge_label:
        if e not in edges:
            uf.union(chart.global_face(dart(e, "-")),
                     chart.global_face(dart(e, "+")))
    outer = uf.find(chart.outer_class)
    return frozenset(c for c in list(uf.parent) if uf.find(c) != outer)


def _engulf(chart, edges):
    """Close an edge set under face filling: every edge lying in a face the
    set encloses becomes content too."""
    edges = set(edges)
    while True:
        filled = _filled_classes(chart, edges)
        inner = {e for e in chart.edge_label
                 if e not in edges
                 and chart.global_face(dart(e, "-")) in filled}
        if not inner:
            return frozenset(edges), filled
        edges |= inner


def _rim_walk(chart, content, filled):
    """Pokes in cyclic order around the outside of the content.

    Walks the boundary of the content subgraph: travel a content edge, then
    spin counterclockwise at the far vertex to the next content dart,
    emitting every skipped dart as a poke.  Corners of the walk all face
    unfilled territory, so the orbit adjacent to an unfilled face is the
    rim."""
    sig = chart.emb.sigma
    emb = chart.emb

    def faces_out(d):
        return chart.face_class[emb.corner_face(d)] not in filled

    starts = sorted(d for e in content for d in (dart(e, "-"), dart(e, "+"))
                    if faces_out(mate(d)))
    if not starts:
        return ()
    pokes = []
    d = starts[0]
    while True:
        x = sig[mate(d)]
        while edge_of(x) not in content:
            pokes.append((chart.vertex_of(x), x))
            x = sig[x]
        d = x
        if d == starts[0]:
            return tuple(pokes)


# -- the tangle record -----------------------------------------------------------

@dataclass(frozen=True)
class Tangle:
    """Content edges, filled faces, swallowed terminal edges, and the cyclic
    poke list of the rim.  flags carries the evaluated predicates."""
    edges: frozenset
    vertices: tuple
    faces: frozenset
    rim: tuple
    swallowed: tuple
    flags: dict = field(compare=False)


class TauComplexity(NamedTuple):
    whites: int
    crossings: int
    boundary_points: int


def _finish(chart, edges, swallowed=()):
    edges = frozenset(edges)
    if not edges:
        raise GeometryError("tangle content is empty")
    filled = _filled_classes(chart, edges)
    verts = tuple(sorted({v for e in edges for v in chart.endpoints[e]}))
    rim = _rim_walk(chart, edges, filled)
    t = Tangle(edges, verts, filled, rim, tuple(sorted(swallowed)), {})
    t.flags.update(tangle_flags(chart, t))
    return t


def extract_tangle(chart: Chart, region: Region) -> Tangle:
    """The tangle whose disk is the region, slightly fattened: wall and
    interior become content, edges leaving wall vertices become pokes."""
    return _finish(chart, set(region.wall_set) | set(region.inside_edges))


def tangle_around(chart: Chart, edges) -> Tangle:
    """The tangle over a thin neighborhood of a connected edge set, with
    every enclosed face filled in."""
    edges = set(edges)
    for e in edges:
        if e not in chart.edge_label:
            raise GeometryError(f"unknown edge {e}")
    if len(_components(chart, edges)) != 1:
        raise GeometryError("edge set is not connected")
    content, _filled = _engulf(chart, edges)
    return _finish(chart, content)


def _terminal(chart, e):
    a, b = chart.endpoints[e]
    return {chart.vertex_kind[a], chart.vertex_kind[b]} == {"white", "black"}


def induced_tangle_from_cycle(chart: Chart, cycle: Cycle) -> Tangle:
    """Disk of the cycle plus every terminal edge touching it, swallowed so
    that the boundary crosses no terminal edge."""
    region = cycle_region(chart, cycle)
    content = set(region.wall_set) | set(region.inside_edges)
    touched = set(region.closure_vertices)
    swallow = {e for e in chart.edge_label
               if e not in content and _terminal(chart, e)
               and touched & set(chart.endpoints[e])}
    return _finish(chart, content | swallow, swallow)


def induced_tangle_from_component(chart: Chart, edges,
                                  region: Region = None) -> Tangle:
    """Neighborhood of a connected one-label subgraph with its enclosed
    disks absorbed.  With a region, the subgraph must live inside it."""
    edges = set(edges)
    labels = {chart.edge_label[e] for e in edges}
    if len(labels) != 1:
        raise GeometryError(f"component spans labels {sorted(labels)}")
    if region is not None:
        for e in sorted(edges):
            if not (e in region.wall_set or e in region.inside_edges):
                raise GeometryError(f"edge {e} is outside the region")
    return tangle_around(chart, edges)


def tau(chart: Chart, t: Tangle) -> TauComplexity:
    kinds = Counter(chart.vertex_kind[v] for v in t.vertices)
    return TauComplexity(kinds["white"], kinds["crossing"], len(t.rim))


def boundary_profile(chart: Chart, t: Tangle) -> dict:
    """Boundary crossing counts per label."""
    prof = Counter(chart.edge_label[edge_of(d)] for _v, d in t.rim)
    return {lbl: prof[lbl] for lbl in sorted(prof)}


# -- flags ------------------------------------------------------------------------

def _touched_labels(chart, t):
    """Labels the closed disk meets: content edges plus poke germs."""
    labels = {chart.edge_label[e] for e in t.edges}
    labels.update(chart.edge_label[edge_of(d)] for _v, d in t.rim)
    return labels


def _color_pair(n, labels):
    if not labels:
        return None
    lo, hi = min(labels), max(labels)
    if hi - lo == 1:
        return (lo, hi)
    if lo == hi:
        if lo + 1 <= n - 1:
            return (lo, lo + 1)
        if lo - 1 >= 1:
            return (lo - 1, lo)
    return None


def _crossing_census(chart, t):
    counts = Counter()
    for v in t.vertices:
        if chart.vertex_kind[v] != "crossing":
            continue
        for lbl in {chart.edge_label[edge_of(d)] for d in chart.rotation[v]}:
            counts[lbl] += 1
    return counts


def _strand_cut_scan(chart, t, st):
    """Condition on a strand crossing the boundary: every piece of it inside
    the disk must reach one of the strand's end whites."""
    problems = []
    edges = [edge_of(d) for d in st.walk]
    verts = [chart.vertex_of(st.walk[0])]
    verts += [chart.vertex_of(mate(d)) for d in st.walk]
    inside = [e in t.edges for e in edges]
    k = len(edges)
    i = 0
    while i < k:
        if not inside[i]:
            i += 1
            continue
        j = i
        while j + 1 < k and inside[j + 1]:
            j += 1
        if i > 0 and j < k - 1:
            problems.append(_witness(
                "io-violation", edges[i:j + 1],
                f"piece of strand {st.sid} inside the disk touches no white"))
        i = j + 1
    tv = set(t.vertices)
    for i in range(1, k):
        if verts[i] in tv and not inside[i - 1] and not inside[i]:
            problems.append(_witness(
                "io-violation", [verts[i]],
                f"strand {st.sid} clips the disk at crossing {verts[i]} only"))
    return problems


def _admissible_scan(chart, t, sts, by_edge):
    problems = []
    for st in sts:
        if set(st.edges) <= t.edges:
            if st.kind == "free":
                problems.append(_witness("io-violation", [st.sid],
                                         "free edge inside the disk"))
            elif st.kind == "hoop" and hoop_is_simple(chart, st):
                problems.append(_witness("io-violation", [st.sid],
                                         "simple hoop inside the disk"))
    poked = sorted({by_edge[edge_of(d)].sid for _v, d in t.rim})
    for st in sts:
        if st.sid not in poked:
            continue
        if st.kind not in ("internal", "loop"):
            problems.append(_witness(
                "io-violation", [st.sid],
                f"boundary crosses a {st.kind} strand"))
            continue
        problems.extend(_strand_cut_scan(chart, t, st))
    return problems


def _io_scan(chart, t, m, by_edge):
    """Two-point boundary check for one label: the two label-m crossings cut
    the rim into an all-inward arc and an all-outward arc."""
    idx = [i for i, (_v, d) in enumerate(t.rim)
           if chart.edge_label[edge_of(d)] == m]
    if len(idx) != 2:
        return None
    extra = sorted(_touched_labels(chart, t) - {m})
    reasons = []
    if len(extra) > 1 or (extra and abs(extra[0] - m) != 1):
        reasons.append(f"disk touches labels {extra + [m]}, not a label pair")
    for _v, d in t.rim:
        kind = by_edge[edge_of(d)].kind
        if kind in ("terminal", "free"):
            reasons.append(f"boundary crosses {kind} edge {edge_of(d)}")
    a, b = idx
    arcs = [t.rim[a + 1:b], t.rim[b + 1:] + t.rim[:a]]
    recs = [[{"vertex": v, "dart": d,
              "label": chart.edge_label[edge_of(d)],
              "inward": is_head(d)} for v, d in arc] for arc in arcs]
    votes = [{r["inward"] for r in rec} for rec in recs]
    if any(len(v) > 1 for v in votes) or votes[0] == votes[1] != set():
        l_in, l_out = recs
        reasons.append("a boundary arc mixes inward and outward crossings"
                       if any(len(v) > 1 for v in votes) else
                       "both boundary arcs flow the same way")
    elif True in votes[0] or False in votes[1]:
        l_in, l_out = recs
    else:
        l_out, l_in = recs
    simple = all(chart.edge_label[e] == m
                 for e in t.edges if _terminal(chart, e))
    return {"label": m, "split": (t.rim[a], t.rim[b]),
            "l_in": l_in, "l_out": l_out,
            "holds": not reasons, "reasons": reasons, "simple": simple}


def tangle_flags(chart: Chart, t: Tangle) -> dict:
    sts = strands(chart)
    by_edge = {e: st for st in sts for e in st.edges}
    labels = sorted({chart.edge_label[e] for e in t.edges})
    whites = [v for v in t.vertices if chart.vertex_kind[v] == "white"]
    problems = _admissible_scan(chart, t, sts, by_edge)
    profile = boundary_profile(chart, t)
    heavy = [l for l, c in profile.items() if c >= 2]
    crossings_per_label = _crossing_census(chart, t)
    ns = []
    if whites and all(c <= 1 for c in crossings_per_label.values()):
        ns = [m for m in (heavy or labels)
              if all(l == m for l in heavy)]
    io, simple = [], []
    for m in labels:
        rep = _io_scan(chart, t, m, by_edge)
        if rep is not None and rep["holds"]:
            io.append(m)
            if rep["simple"]:
                simple.append(m)
    touched = sorted(_touched_labels(chart, t))
    pair = _color_pair(chart.n, touched)
    return {"labels": labels,
            "touched_labels": touched,
            "admissible": not problems,
            "admissibility_problems": problems,
            "two_color": pair is not None,
            "color_pair": pair,
            "ns_labels": ns,
            "io_labels": io,
            "simple_io_labels": simple}


# -- one-way boundary verdict ------------------------------------------------------

def verify_io_structure(chart: Chart, t: Tangle, m: int = None) -> dict:
    """Full verdict for an admissible two-label tangle whose boundary meets
    the primary label exactly twice and whose content carries a cycle of
    that label: the two crossing points must cut the boundary into a purely
    inward arc and a purely outward arc, and every terminal edge inside must
    carry the primary label."""
    profile = boundary_profile(chart, t)
    if m is None:
        twos = [lbl for lbl, c in profile.items() if c == 2]
        if len(twos) != 1:
            raise PreconditionError(
                f"primary label is ambiguous: two-point labels {twos}")
        m = twos[0]
    if profile.get(m) != 2:
        raise PreconditionError(
            f"boundary meets label {m} {profile.get(m, 0)} times, wants 2")
    if not t.flags["admissible"]:
        raise PreconditionError("tangle is not admissible")
    extra = sorted(_touched_labels(chart, t) - {m})
    if len(extra) > 1 or (extra and abs(extra[0] - m) != 1):
        raise PreconditionError(f"disk touches labels {extra} beyond the pair")
    cycles, _ = enumerate_cycles(chart, m)
    if not any({edge_of(d) for d in c.walk} <= t.edges for c in cycles):
        raise PreconditionError(f"content carries no cycle of label {m}")

    sts = strands(chart)
    by_edge = {e: st for st in sts for e in st.edges}
    rep = _io_scan(chart, t, m, by_edge)
    witnesses = []
    for name, want in (("l_in", True), ("l_out", False)):
        for r in rep[name]:
            if r["inward"] != want:
                witnesses.append(_witness(
                    "io-violation", [edge_of(r["dart"])],
                    f"boundary crossing at {r['vertex']} flows "
                    f"{'inward' if r['inward'] else 'outward'} on the "
                    f"{'inward' if want else 'outward'} arc"))
    for e in sorted(t.edges):
        if _terminal(chart, e) and chart.edge_label[e] != m:
            witnesses.append(_witness(
                "io-violation", [e],
                f"terminal edge of label {chart.edge_label[e]} inside a "
                f"label-{m} disk"))
    if witnesses:
        verdict = "not an IO-tangle" if any(
            "arc" in w["explanation"] for w in witnesses) else "IO-tangle"
    else:
        verdict = "simple IO-tangle"
    return {"label": m, "verdict": verdict, "holds": not witnesses,
            "split": rep["split"], "l_in": rep["l_in"], "l_out": rep["l_out"],
            "witnesses": witnesses}


# -- one-label census: disks, trees, identities -------------------------------------

def m_content(chart: Chart, m: int, t: Tangle = None):
    if t is None:
        return sorted(e for e, l in chart.edge_label.items() if l == m)
    return sorted(e for e in t.edges if chart.edge_label[e] == m)


def m_components(chart: Chart, m: int, t: Tangle = None):
    """Connected pieces of one label's content, each with its boundary
    pokes."""
    comps = _components(chart, m_content(chart, m, t))
    out = []
    for es in comps:
        vs = sorted({v for e in es for v in chart.endpoints[e]})
        pokes = []
        if t is not None:
            vset = set(vs)
            pokes = [(v, d) for v, d in t.rim
                     if chart.edge_label[edge_of(d)] == m and v in vset]
        out.append({"edges": es, "vertices": vs, "pokes": pokes})
    return out


def is_small_component(chart: Chart, m: int, comp, t: Tangle = None) -> bool:
    """No other piece of the label's content sits in a face the component
    encloses."""
    filled = _filled_classes(chart, set(comp["edges"]))
    for e in m_content(chart, m, t):
        if e in comp["edges"]:
            continue
        if chart.global_face(dart(e, "-")) in filled:
            return False
    return True


def _component_cycles(chart, m, comp_edges):
    cycles, truncated = enumerate_cycles(chart, m)
    mine = [c for c in cycles if {edge_of(d) for d in c.walk} <= comp_edges]
    return mine, truncated


def fundamental_info(chart: Chart, m: int, edges=None, t: Tangle = None):
    """Disk/tree decomposition of one connected component of a label's
    content, with the counting identities.

    The disks are bounded by the maximal cycles; each keeps its terminal
    whiskers.  What remains splits into trees, attached to the disks at
    white vertices; trees reaching the boundary are counted separately.
    The histograms record how many attachment points each disk and each
    interior tree carries."""
    comps = m_components(chart, m, t)
    if edges is not None:
        wanted = set(edges)
        match = [c for c in comps if set(c["edges"]) == wanted]
        if not match:
            raise PreconditionError(
                "edges are not a connected component of the label's content")
        comp = match[0]
    else:
        withwhite = [c for c in comps
                     if any(chart.vertex_kind[v] == "white"
                            for v in c["vertices"])]
        if len(withwhite) != 1:
            raise PreconditionError(
                f"label {m} has {len(withwhite)} components with a white "
                "vertex; pass one explicitly")
        comp = withwhite[0]
    comp_edges = set(comp["edges"])
    if not any(chart.vertex_kind[v] == "white" for v in comp["vertices"]):
        raise PreconditionError("component has no white vertex")

    cycles, truncated = _component_cycles(chart, m, comp_edges)
    if truncated:
        raise GeometryError("cycle enumeration truncated")
    regions = [cycle_region(chart, c) for c in cycles]
    maximal = [not any(regions[i].inside_classes < regions[j].inside_classes
                       for j in range(len(cycles)) if j != i)
               for i in range(len(cycles))]

    disks = []
    claimed = set()      # component edges absorbed by disks and whiskers
    hub_of = {}          # attachment vertex -> disk index
    for c, region, keep in zip(cycles, regions, maximal):
        if not keep:
            continue
        own = set(region.wall_set)
        own |= {e for e in region.inside_edges if e in comp_edges}
        touched = set(region.closure_vertices)
        whiskers = sorted(e for e in comp_edges
                          if e not in own and _terminal(chart, e)
                          and touched & set(chart.endpoints[e]))
        own |= set(whiskers)
        i = len(disks)
        for e in own:
            for v in chart.endpoints[e]:
                hub_of.setdefault(v, i)
        claimed |= own
        disks.append({"cycle": c, "edges": sorted(own),
                      "whiskers": whiskers, "attachments": []})

    rest = comp_edges - claimed
    hubs = set(hub_of)
    trees = []
    poke_vertices = {v for v, _d in comp["pokes"]}
    for es in _components(chart, rest, cut=hubs):
        vs = {v for e in es for v in chart.endpoints[e]}
        att = sorted(vs & hubs)
        trees.append({"edges": es, "attachments": att,
                      "boundary": bool(vs & poke_vertices)})
        for v in att:
            disks[hub_of[v]]["attachments"].append(v)
    for rec in disks:
        rec["attachments"].sort()

    d = len(disks)
    p_trees = [tr for tr in trees if not tr["boundary"]]
    q_trees = [tr for tr in trees if tr["boundary"]]
    p, q = len(p_trees), len(q_trees)
    h = sum(len(tr["attachments"]) for tr in trees)
    s = sum(len(tr["attachments"]) for tr in p_trees)
    tcount = sum(len(tr["attachments"]) for tr in q_trees)
    x = [0] * (h + 2)
    y = [0] * (h + 2)
    for rec in disks:
        x[len(rec["attachments"])] += 1
    for tr in p_trees:
        y[len(tr["attachments"])] += 1

    def ident(name, lhs, rhs):
        return {"name": name, "lhs": lhs, "rhs": rhs, "residual": lhs - rhs}

    gen_rhs = 2 - 2 * q + tcount + sum(
        (k - 2) * (x[k] + y[k]) for k in range(3, len(x)))
    identities = [
        ident("disk-count", sum(x), d),
        ident("tree-count", sum(y), p),
        ident("disk-attachments", sum(k * x[k] for k in range(len(x))), h),
        ident("tree-attachments", sum(k * y[k] for k in range(len(y))), s),
        ident("attachment-split", h, s + tcount),
        ident("euler", d + p + q - h, 1),
        ident("low-attachment", 2 * x[0] + x[1] + 2 * y[0] + y[1], gen_rhs),
    ]
    return {"label": m, "component": sorted(comp_edges),
            "pokes": comp["pokes"], "disks": disks, "trees": trees,
            "d": d, "p": p, "q": q, "h": h, "s": s, "t": tcount,
            "x": x, "y": y, "identities": identities,
            "reduced_evidence": {
                "no_sparse_tree": y[0] == 0 and y[1] == 0,
                "disk_balance": 2 * x[0] + x[1] == gen_rhs,
            }}


# -- obstruction detectors -----------------------------------------------------------

def reducible_tree_conditions(chart: Chart, edges):
    """Checks whether an explicit subgraph is a one-label tree whose every
    crossing passes through, whose whites branch fully with at most one
    loose one.  Returns ok plus the failures."""
    edges = sorted(set(edges))
    if not edges:
        return {"ok": False, "failures": ["empty"], "special": None}
    failures = []
    labels = sorted({chart.edge_label[e] for e in edges})
    if len(labels) > 1:
        failures.append(f"labels {labels} are mixed")
    deg = Counter()
    for e in edges:
        a, b = chart.endpoints[e]
        deg[a] += 1
        deg[b] += 1
    if len(_components(chart, edges)) != 1:
        failures.append("not connected")
    elif len(edges) != len(deg) - 1:
        failures.append("contains a cycle")
    whites = sorted(v for v in deg if chart.vertex_kind[v] == "white")
    if not whites:
        failures.append("no white vertex")
    for v in sorted(deg):
        if chart.vertex_kind[v] in ("crossing", "phantom") and deg[v] != 2:
            failures.append(f"crossing {v} has degree {deg[v]}")
    special = [v for v in whites if deg[v] == 1]
    if len(whites) == 1:
        if deg[whites[0]] != 3:
            failures.append(f"lone white {whites[0]} has degree "
                            f"{deg[whites[0]]}")
    elif whites:
        for v in whites:
            if deg[v] not in (1, 3):
                failures.append(f"white {v} has degree {deg[v]}")
        if len(special) > 1:
            failures.append(f"two loose whites {special[:2]}")
    return {"ok": not failures, "failures": failures,
            "special": special[0] if len(special) == 1 else None}


def detect_reducible_tree(chart: Chart, m: int, t: Tangle = None):
    """Witnesses for every component of the label's content that is such a
    tree.  Non-empty output on a reduced chart is a contradiction."""
    out = []
    for comp in m_components(chart, m, t):
        rec = reducible_tree_conditions(chart, comp["edges"])
        if rec["ok"]:
            out.append(_witness(
                "reducible-tree", comp["edges"],
                f"label-{m} component is a tree with a white vertex"
                + (f" (loose white {rec['special']})" if rec["special"]
                   else "")))
    return out


def suspicious_cycle_records(chart: Chart, m: int, t: Tangle = None):
    """Each white cycle of the label with at most one non-terminal spare
    edge on its outside, whose disk keeps the label's content connected."""
    content = set(m_content(chart, m, t))
    cycles, truncated = enumerate_cycles(chart, m)
    if truncated:
        raise GeometryError("cycle enumeration truncated")
    out = []
    for c in cycles:
        if c.kind != "white-cycle":
            continue
        cedges = {edge_of(d) for d in c.walk}
        if not cedges <= content:
            continue
        region = cycle_region(chart, c)
        loose = []
        for w in c.whites:
            spare = _spare_edge(chart, c, w)
            if spare is None or region.contains_edge(spare):
                continue
            if not _terminal(chart, spare):
                loose.append(spare)
        if len(loose) > 1:
            continue
        inside_m = set(region.wall_set)
        inside_m |= {e for e in region.inside_edges
                     if chart.edge_label[e] == m}
        if len(_components(chart, inside_m)) != 1:
            continue
        color = color_classify_region(chart, region, m)
        out.append({"cycle": c, "edges": sorted(cedges),
                    "loose_outside": sorted(loose),
                    "two_color_disk": color["two_color"],
                    "secondary": color["secondary"]})
    return out


def _spare_edge(chart, c, w):
    used = Counter()
    n = len(c.walk)
    for i, d in enumerate(c.walk):
        if chart.vertex_of(d) == w:
            used[edge_of(d)] += 1
            used[edge_of(c.walk[(i - 1) % n])] += 1
    rest = [edge_of(d) for d in chart.rotation[w]
            if chart.edge_label[edge_of(d)] == c.label and not used[edge_of(d)]]
    return rest[0] if rest else None


def detect_suspicious_cycles(chart: Chart, m: int, t: Tangle = None):
    """Witnesses: suspicious cycles bounding a disk on the label pair, which
    a reduced chart cannot contain."""
    out = []
    for rec in suspicious_cycle_records(chart, m, t):
        if rec["two_color_disk"]:
            out.append(_witness(
                "suspicious-cycle", rec["edges"],
                f"label-{m} cycle with outside edges terminal except "
                f"{rec['loose_outside'] or 'none'} bounds a two-label disk"))
    return out


def suspicious_cycle_guarantee(chart: Chart, m: int, t: Tangle = None):
    """For a small component touching the boundary at most once and carrying
    a white vertex, a suspicious cycle must appear somewhere in the disk;
    reports each qualifying component and whether one was found."""
    found = suspicious_cycle_records(chart, m, t)
    checks = []
    for comp in m_components(chart, m, t):
        if not any(chart.vertex_kind[v] == "white" for v in comp["vertices"]):
            continue
        if len(comp["pokes"]) > 1:
            continue
        if not is_small_component(chart, m, comp, t):
            continue
        checks.append({"component": comp["edges"],
                       "pokes": len(comp["pokes"])})
    return {"label": m, "applicable": bool(checks), "qualifying": checks,
            "suspicious": [r["edges"] for r in found],
            "holds": bool(found) if checks else None}


# -- search for single-point-boundary tangles ----------------------------------------

def _face_adjacency(chart):
    adj = {}
    for e in chart.edge_label:
        a = chart.global_face(dart(e, "-"))
        b = chart.global_face(dart(e, "+"))
        if a != b:
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
    return adj


def _connected_subsets(items, adj, max_size, cap):
    """Connected subsets up to max_size, each yielded once; returns
    (subsets, truncated)."""
    items = sorted(items)
    out, seen = [], set()
    truncated = False

    def grow(current, frontier, floor):
        nonlocal truncated
        if len(out) >= cap:
            truncated = True
            return
        for nxt in sorted(frontier):
            if nxt < floor:
                continue
            cand = current | {nxt}
            key = frozenset(cand)
            if key in seen:
                continue
            seen.add(key)
            out.append(key)
            if len(cand) < max_size:
                grow(cand, (frontier | adj.get(nxt, set())) - cand, floor)
            if truncated:
                return

    for start in items:
        if truncated:
            break
        key = frozenset((start,))
        if key not in seen:
            seen.add(key)
            out.append(key)
        grow({start}, set(adj.get(start, ())) - {start}, start)
    return out, truncated


def region_from_faces(chart: Chart, classes) -> Region:
    """Region over a face-class set whose boundary is one simple cycle;
    GeometryError otherwise."""
    classes = set(classes)
    border = []
    for e in sorted(chart.edge_label):
        a = chart.global_face(dart(e, "-")) in classes
        b = chart.global_face(dart(e, "+")) in classes
        if a != b:
            border.append(e)
    if not border:
        raise GeometryError("face set has no boundary")
    nxt = {}
    for e in border:
        for v in chart.endpoints[e]:
            nxt.setdefault(v, []).append(e)
    if any(len(es) != 2 for es in nxt.values()):
        raise GeometryError("face set boundary branches")
    walk = []
    e, u = border[0], chart.endpoints[border[0]][0]
    while True:
        walk.append(chart.dart_at(e, u))
        u = chart.other_end(e, u)
        es = list(nxt[u])
        es.remove(e)   # multiset: a loop edge lists its vertex twice
        e = es[0]
        if e == border[0] and u == chart.endpoints[border[0]][0]:
            break
        if len(walk) > len(border):
            raise GeometryError("face set boundary is not a single cycle")
    region = region_bounded_by(chart, walk)
    if region.inside_classes != classes:
        raise GeometryError("face set is not the bounded side of its boundary")
    return region


def ns_tangle_search(chart: Chart, face_budget=12, edge_budget=4, cap=20000):
    """Scan candidate disks, face-set ones and thin neighborhoods of small
    edge sets, for tangles whose boundary meets every label but one at most
    once while holding a white vertex and no doubled crossing label.
    Returns witnesses ordered by complexity, with a truncation marker when
    a budget cut the scan short."""
    classes = sorted(chart.global_faces() - {chart.outer_class})
    subsets, trunc_faces = _connected_subsets(
        classes, _face_adjacency(chart), face_budget, cap)
    found = {}
    scanned = 0

    def record(t):
        for m in t.flags["ns_labels"]:
            key = (m, t.edges)
            if key not in found:
                found[key] = (tau(chart, t), m, t)

    for sub in subsets:
        try:
            region = region_from_faces(chart, sub)
        except GeometryError:
            continue
        scanned += 1
        record(extract_tangle(chart, region))

    edge_adj = {}
    for v in chart.rotation:
        es = sorted({edge_of(d) for d in chart.rotation[v]})
        for e in es:
            edge_adj.setdefault(e, set()).update(x for x in es if x != e)
    esubsets, trunc_edges = _connected_subsets(
        sorted(chart.edge_label), edge_adj, edge_budget, cap)
    for sub in esubsets:
        scanned += 1
        record(tangle_around(chart, sub))

    ordered = sorted(found.values(),
                     key=lambda rec: (rec[0], rec[1], sorted(rec[2].edges)))
    witnesses = [dict(_witness(
        "ns-tangle", rec[2].edges,
        f"disk boundary meets every label but {rec[1]} at most once, "
        f"holds a white vertex and no doubled crossing label"),
        label=rec[1], tau=tuple(rec[0])) for rec in ordered]
    return {"witnesses": witnesses, "scanned": scanned,
            "truncated": trunc_faces or trunc_edges}


# -- bead chains ----------------------------------------------------------------------

def bead_chain(chart: Chart, t: Tangle, m: int = None):
    """For an admissible two-label tangle with a two-point boundary and a
    cycle inside: the label's content must be a chain, disks threaded on
    trees, ending in the two boundary trees.  Violations are reported, each
    one the seed of a smaller single-point-boundary disk."""
    profile = boundary_profile(chart, t)
    if m is None:
        twos = [lbl for lbl, c in profile.items() if c == 2]
        if len(twos) != 1:
            raise PreconditionError(
                f"primary label is ambiguous: two-point labels {twos}")
        m = twos[0]
    if profile.get(m) != 2:
        raise PreconditionError(
            f"boundary meets label {m} {profile.get(m, 0)} times, wants 2")
    if not t.flags["admissible"]:
        raise PreconditionError("tangle is not admissible")
    comps = m_components(chart, m, t)
    witnesses = []
    if len(comps) != 1:
        witnesses.append(_witness(
            "ns-tangle",
            [e for c in comps for e in c["edges"]],
            f"label-{m} content splits into {len(comps)} pieces; one "
            "touches the boundary at most once"))
        comps = [max(comps, key=lambda c: len(c["pokes"]))]
    fi = fundamental_info(chart, m, edges=comps[0]["edges"], t=t)
    if fi["d"] < 1:
        raise PreconditionError(f"content carries no cycle of label {m}")

    tree_of = {}
    for j, tr in enumerate(fi["trees"]):
        for v in tr["attachments"]:
            tree_of[v] = j
    for i, rec in enumerate(fi["disks"]):
        met = sorted({tree_of[v] for v in rec["attachments"]})
        if len(met) != 2:
            witnesses.append(_witness(
                "ns-tangle", rec["edges"],
                f"disk {i} meets {len(met)} trees, wants 2"))
    for j, tr in enumerate(fi["trees"]):
        hubs = {_disk_of(fi, v) for v in tr["attachments"]}
        if tr["boundary"]:
            if len(hubs) != 1:
                witnesses.append(_witness(
                    "ns-tangle", tr["edges"],
                    f"boundary tree meets {len(hubs)} disks, wants 1"))
        elif len(hubs) != 2:
            witnesses.append(_witness(
                "ns-tangle", tr["edges"],
                f"interior tree meets {len(hubs)} disks, wants 2"))
    if fi["q"] != 2:
        witnesses.append(_witness(
            "ns-tangle", comps[0]["edges"],
            f"{fi['q']} boundary trees, wants 2"))
    holds = not witnesses and fi["d"] == fi["p"] + 1
    chain = _thread_chain(chart, fi) if holds else None
    return {"label": m, "holds": holds,
            "d": fi["d"], "p": fi["p"], "q": fi["q"],
            "d_equals_p_plus_1": fi["d"] == fi["p"] + 1,
            "info": fi, "chain": chain, "witnesses": witnesses}


def _disk_of(fi, v):
    for i, rec in enumerate(fi["disks"]):
        if v in rec["attachments"]:
            return i
    raise GeometryError(f"{v} is not an attachment vertex")


def _tree_path(chart, edges, u, v):
    """Edge path between two vertices of a tree."""
    if u == v:
        return []
    adj = {}
    for e in edges:
        a, b = chart.endpoints[e]
        adj.setdefault(a, []).append((e, b))
        adj.setdefault(b, []).append((e, a))
    prev = {u: None}
    queue = [u]
    while queue:
        x = queue.pop(0)
        for e, ynext in adj.get(x, ()):
            if ynext not in prev:
                prev[ynext] = (e, x)
                queue.append(ynext)
    path = []
    x = v
    while prev[x] is not None:
        e, x = prev[x]
        path.append(e)
    return path[::-1]


def _thread_chain(chart, fi):
    """Alternating tree/disk order with the junction vertices and the arc
    each tree contributes."""
    tree_disks = []
    for tr in fi["trees"]:
        tree_disks.append(sorted({_disk_of(fi, v) for v in tr["attachments"]}))
    start = next(j for j, tr in enumerate(fi["trees"]) if tr["boundary"])
    order = [("tree", start)]
    seen_t, seen_d = {start}, set()
    cur_disk = tree_disks[start][0]
    while True:
        order.append(("disk", cur_disk))
        seen_d.add(cur_disk)
        nxt = [j for j, ds in enumerate(tree_disks)
               if cur_disk in ds and j not in seen_t]
        if not nxt:
            break
        j = nxt[0]
        order.append(("tree", j))
        seen_t.add(j)
        far = [i for i in tree_disks[j] if i != cur_disk]
        if not far:
            break
        cur_disk = far[0]
    arcs = []
    for kind, j in order:
        if kind != "tree":
            continue
        tr = fi["trees"][j]
        att = tr["attachments"]
        if tr["boundary"]:
            v0 = next(v for v, _d in fi["pokes"]
                      if v in {vv for e in tr["edges"]
                               for vv in chart.endpoints[e]})
            ends = (v0, att[0]) if att else (v0, v0)
        else:
            ends = (att[0], att[1])
        arcs.append({"tree": j, "ends": ends,
                     "edges": _tree_path(chart, tr["edges"], *ends)})
    return {"order": order, "arcs": arcs}


# -- label windows ---------------------------------------------------------------------

def label_range(chart: Chart, edges=(), vertices=()):
    """Smallest and largest label met by the given edges and vertex stars."""
    labels = set()
    for e in edges:
        labels.add(chart.edge_label[e])
    for v in vertices:
        labels.update(chart.edge_label[edge_of(d)]
                      for d in chart.rotation[v])
    if not labels:
        raise PreconditionError("the queried set carries no label")
    return (min(labels), max(labels))


def boundary_label_range(chart: Chart, t: Tangle):
    labels = {chart.edge_label[edge_of(d)] for _v, d in t.rim}
    if not labels:
        raise PreconditionError("the boundary crosses no edge")
    return (min(labels), max(labels))


def boundary_condition_check(chart: Chart, t: Tangle):
    """For a crossing-free disk without free edges or simple hoops: interior
    labels must stay inside the boundary's label window.  An escaping
    component seeds a single-point-boundary disk, reported as a witness."""
    sts = strands(chart)
    disq = []
    if any(chart.vertex_kind[v] == "crossing" for v in t.vertices):
        disq.append("disk contains a crossing")
    for st in sts:
        if set(st.edges) <= t.edges:
            if st.kind == "free":
                disq.append(f"free edge {st.sid} inside")
            elif st.kind == "hoop" and hoop_is_simple(chart, st):
                disq.append(f"simple hoop {st.sid} inside")
    if disq:
        return {"applicable": False, "reasons": disq, "holds": None,
                "witnesses": []}
    a, b = boundary_label_range(chart, t)
    witnesses = []
    for lbl in sorted({chart.edge_label[e] for e in t.edges}):
        if a <= lbl <= b:
            continue
        for comp in m_components(chart, lbl, t):
            witnesses.append(_witness(
                "ns-tangle", comp["edges"],
                f"label {lbl} lives inside a disk whose boundary only "
                f"meets labels {a}..{b}"))
    return {"applicable": True, "window": (a, b),
            "holds": not witnesses, "witnesses": witnesses}


def classify_plain_disk(chart: Chart, cycle: Cycle):
    """Colour dichotomy for a cycle disk without crossings, free edges or
    simple hoops: on a reduced chart the content stays within one label of
    the boundary, and collapses to a single neighbour when every boundary
    white leans that way."""
    region = cycle_region(chart, cycle)
    m = cycle.label
    sts = strands(chart)
    for v in region.closure_vertices:
        if chart.vertex_kind[v] == "crossing":
            raise PreconditionError(f"disk contains crossing {v}")
    for st in sts:
        inside = all(region.contains_edge(e) for e in st.edges)
        if inside and st.kind == "free":
            raise PreconditionError(f"disk contains free edge {st.sid}")
        if inside and st.kind == "hoop" and hoop_is_simple(chart, st):
            raise PreconditionError(f"disk contains simple hoop {st.sid}")
    color = color_classify_region(chart, region, m)
    leans = set()
    for w in cycle.whites:
        others = {chart.edge_label[edge_of(d)]
                  for d in chart.rotation[w]} - {m}
        leans.update(others)
    uniform = len(leans) == 1
    expected_two = uniform and (not color["labels"]
                                or set(color["labels"]) <= {m} | leans)
    return {"label": m,
            "three_color": color["three_color"],
            "two_color": color["two_color"],
            "secondary": color["secondary"],
            "boundary_lean": sorted(leans),
            "uniform_boundary": uniform,
            "consistent": color["three_color"]
            and (color["two_color"] if uniform else True),
            "expected_two_color": expected_two}
