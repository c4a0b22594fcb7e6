"""Pseudo paths: runs of same-label edges with end arcs and a chosen side.

A pseudo path walks v1 -e1- v2 ... v_s along edges of one label, enters v1
along an end arc and leaves v_s along another, and fixes a side (left or
right of the direction of travel) where its side disk lies.  Every verdict
in this module reduces to reading the darts that open into the side gap at
each station: the rotation interval between the arriving and departing
darts on the chosen side.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chart import Chart, is_middle_at
from .embedding import edge_of, is_head, mate
from .errors import ClassificationError, GeometryError
from .features import Cycle, cycle_darts_at, cycle_region, spare_dart, w_sets


@dataclass(frozen=True)
class PseudoPath:
    """traversal[i] is the dart of the i-th spine edge at the vertex it
    leaves; end_darts hold the entry and exit arcs at the first and last
    vertex.  A path with no spine edges sits at a single vertex between
    its two end arcs."""
    label: int
    end_darts: tuple
    traversal: tuple
    side: str


def pseudo_path(chart: Chart, end0: str, traversal, end1: str,
                side: str = "right") -> PseudoPath:
    if side not in ("left", "right"):
        raise GeometryError(f"side must be left or right, not {side!r}")
    traversal = tuple(traversal)
    label = chart.edge_label[edge_of(end0)]
    for d in (end0, end1) + traversal:
        if chart.edge_label[edge_of(d)] != label:
            raise GeometryError(f"dart {d} is not of label {label}")

    if traversal:
        if chart.vertex_of(traversal[0]) != chart.vertex_of(end0):
            raise GeometryError("entry arc misses the first vertex")
        for t, u in zip(traversal, traversal[1:]):
            if chart.vertex_of(u) != chart.vertex_of(mate(t)):
                raise GeometryError("spine edges do not chain")
        if chart.vertex_of(end1) != chart.vertex_of(mate(traversal[-1])):
            raise GeometryError("exit arc misses the last vertex")
        if end0 == traversal[0] or end1 == mate(traversal[-1]):
            raise GeometryError("end arc runs along a spine edge")
        spine = [edge_of(t) for t in traversal]
        if len(set(spine)) != len(spine):
            raise GeometryError("spine edge repeated")
        if edge_of(end0) in spine or edge_of(end1) in spine:
            raise GeometryError("end arc edge used as a spine edge")
    else:
        if chart.vertex_of(end0) != chart.vertex_of(end1):
            raise GeometryError("edgeless path needs both arcs at one vertex")
        if end0 == end1:
            raise GeometryError("entry and exit arcs coincide")

    p = PseudoPath(label, (end0, end1), traversal, side)
    vs = path_vertices(chart, p)
    if len(set(vs)) != len(vs):
        raise GeometryError("path visits a vertex twice")
    return p


def path_vertices(chart: Chart, p: PseudoPath):
    if not p.traversal:
        return (chart.vertex_of(p.end_darts[0]),)
    vs = [chart.vertex_of(t) for t in p.traversal]
    vs.append(chart.vertex_of(mate(p.traversal[-1])))
    return tuple(vs)


def stations(chart: Chart, p: PseudoPath):
    """(vertex, arriving dart, departing dart) along the path."""
    vs = path_vertices(chart, p)
    out = []
    for i, v in enumerate(vs):
        back = p.end_darts[0] if i == 0 else mate(p.traversal[i - 1])
        dep = p.end_darts[1] if i == len(vs) - 1 else p.traversal[i]
        out.append((v, back, dep))
    return out


def side_gap(chart: Chart, v: str, back: str, dep: str, side: str):
    """Darts strictly between back and dep on the given side of travel.

    The rotation is counterclockwise, so the right-hand gap runs from back
    to dep and the left-hand gap from dep to back."""
    rot = chart.rotation[v]
    i, j = (rot.index(back), rot.index(dep))
    if side == "left":
        i, j = j, i
    gap, k = [], (i + 1) % len(rot)
    while k != j:
        gap.append(rot[k])
        k = (k + 1) % len(rot)
    return gap


def side_arcs(chart: Chart, p: PseudoPath):
    """[(vertex, side-gap darts)] at every station."""
    return [(v, side_gap(chart, v, back, dep, p.side))
            for v, back, dep in stations(chart, p)]


def flip_side(p: PseudoPath) -> PseudoPath:
    other = "left" if p.side == "right" else "right"
    return PseudoPath(p.label, p.end_darts, p.traversal, other)


def reverse_path(p: PseudoPath) -> PseudoPath:
    """Same curve walked backwards; the physical side disk is unchanged,
    so the side flag flips with the direction."""
    trav = tuple(mate(t) for t in reversed(p.traversal))
    other = "left" if p.side == "right" else "right"
    return PseudoPath(p.label, (p.end_darts[1], p.end_darts[0]), trav, other)


# -- basic classes of paths ----------------------------------------------------

def all_white(chart: Chart, p: PseudoPath) -> bool:
    return all(chart.vertex_kind[v] == "white" for v in path_vertices(chart, p))


def is_admissible(chart: Chart, p: PseudoPath) -> bool:
    """Both ends are white and no dart of the path's own label opens into
    the side gap there, so the side disk can be pushed off the ends."""
    sts = stations(chart, p)
    for v, back, dep in (sts[0], sts[-1]):
        if chart.vertex_kind[v] != "white":
            return False
        gap = side_gap(chart, v, back, dep, p.side)
        if any(chart.edge_label[edge_of(d)] == p.label for d in gap):
            return False
    return True


def secondary_label(chart: Chart, p: PseudoPath):
    """The single neighbouring label shared by every vertex, or None.
    Crossings never qualify: their other label is more than one away."""
    k = None
    for v in path_vertices(chart, p):
        if chart.vertex_kind[v] != "white":
            return None
        other = {chart.edge_label[edge_of(d)] for d in chart.rotation[v]}
        other.discard(p.label)
        if len(other) != 1:
            return None
        (kv,) = other
        if k is None:
            k = kv
        elif k != kv:
            return None
    return k


def is_dichromatic(chart: Chart, p: PseudoPath) -> bool:
    return secondary_label(chart, p) is not None


def is_one_side(chart: Chart, p: PseudoPath) -> bool:
    """Every vertex is white and no side gap contains the path's label.
    At a white that forces each gap down to the single dart between the
    two spine darts."""
    if not all_white(chart, p):
        return False
    for _v, gap in side_arcs(chart, p):
        if any(chart.edge_label[edge_of(d)] == p.label for d in gap):
            return False
    return True


def io_type(chart: Chart, p: PseudoPath):
    """"inward" or "outward" when every vertex is white and every dart in
    every side gap points the same way; None otherwise."""
    if not all_white(chart, p):
        return None
    flags = []
    for _v, gap in side_arcs(chart, p):
        flags.extend(is_head(d) for d in gap)
    if flags and all(flags):
        return "inward"
    if flags and not any(flags):
        return "outward"
    return None


def classify_pseudo_path(chart: Chart, p: PseudoPath) -> dict:
    """All the per-path flags in one record."""
    k = secondary_label(chart, p)
    io = io_type(chart, p)
    return {"admissible": is_admissible(chart, p),
            "one_side": is_one_side(chart, p),
            "dichromatic": k is not None,
            "secondary": k,
            "inward": io == "inward",
            "outward": io == "outward"}


def side_faces(chart: Chart, p: PseudoPath):
    """Global face classes of the corners opening into the side gaps: the
    footprint of the path's side disk."""
    emb = chart.emb
    out = set()
    for v, back, dep in stations(chart, p):
        lead = back if p.side == "right" else dep
        for d in (lead, *side_gap(chart, v, back, dep, p.side)):
            out.add(chart.face_class[emb.corner_face(d)])
    return frozenset(out)


# -- flow and one-way reports ----------------------------------------------------

def flow_report(chart: Chart, p: PseudoPath) -> dict:
    """Orientation propagation along the spine.

    Applies to a one-side path none of whose side arcs is middle: no
    station can then reverse the flow, so every spine edge arrives with
    the sense the entry arc brought in and the exit arc leaves on the
    opposite sense.  This holds for purely local reasons, on any valid
    chart."""
    side_mid = [is_middle_at(chart, d)
                for _v, gap in side_arcs(chart, p) for d in gap]
    applicable = is_one_side(chart, p) and not any(side_mid)
    if not applicable:
        return {"applicable": False, "holds": None}
    entry_in = is_head(p.end_darts[0])
    spine_in = [is_head(mate(t)) for t in p.traversal]
    exit_in = is_head(p.end_darts[1])
    holds = all(f == entry_in for f in spine_in) and exit_in != entry_in
    return {"applicable": True, "holds": holds,
            "entry_inward": entry_in, "exit_inward": exit_in,
            "spine_inward": spine_in}


def io_report(chart: Chart, p: PseudoPath) -> dict:
    """One-way verdict with witnesses for each failure spot.

    On a reduced chart an admissible dichromatic one-side path whose side
    arcs are never middle must run one-way.  Where two consecutive side
    arcs point opposite ways, two splices along them and along the
    flanking spine edges would cancel the two whites between, so the pair
    is reported as an io-violation witness."""
    arcs = side_arcs(chart, p)
    io = io_type(chart, p)
    side_mid = any(is_middle_at(chart, d) for _v, gap in arcs for d in gap)
    applicable = (is_admissible(chart, p) and is_one_side(chart, p)
                  and is_dichromatic(chart, p) and not side_mid)
    witnesses = []
    if io is None and all_white(chart, p):
        seq = [(v, d) for v, gap in arcs for d in gap]
        for i, ((v1, d1), (v2, d2)) in enumerate(zip(seq, seq[1:])):
            if is_head(d1) == is_head(d2):
                continue
            elems = [v1, v2, edge_of(d1), edge_of(d2)]
            if i < len(p.traversal):
                elems.append(edge_of(p.traversal[i]))
            witnesses.append({
                "kind": "io-violation",
                "elements": elems,
                "explanation": (
                    f"side arcs at {v1} and {v2} point opposite ways across "
                    "one spine edge; splicing them and the flanking arcs "
                    "would cancel both whites, so a reduced chart cannot "
                    "contain this"),
            })
    return {"applicable": applicable, "io": io,
            "holds": (io is not None) if applicable else None,
            "witnesses": witnesses}


def double_middle_report(chart: Chart, p: PseudoPath) -> dict:
    """Audit for a one-side path whose end arcs are both middle.

    On a reduced chart such a path must have at least three vertices and
    hide a middle side arc at some interior station; a short or clean run
    would cancel whites the same way an io violation does."""
    sts = stations(chart, p)
    both_mid = (chart.vertex_kind[sts[0][0]] == "white"
                and chart.vertex_kind[sts[-1][0]] == "white"
                and is_middle_at(chart, p.end_darts[0])
                and is_middle_at(chart, p.end_darts[1]))
    applicable = both_mid and is_one_side(chart, p) and is_dichromatic(chart, p)
    if not applicable:
        return {"applicable": False, "holds": None}
    arcs = side_arcs(chart, p)
    mid_at = [v for v, gap in arcs[1:-1]
              if any(is_middle_at(chart, d) for d in gap)]
    s = len(sts)
    holds = s >= 3 and bool(mid_at)
    witnesses = []
    if not holds:
        witnesses.append({
            "kind": "io-violation",
            "elements": [v for v, _b, _d in sts],
            "explanation": ("both end arcs are middle but the run is too "
                            "short or has no middle side arc inside; a "
                            "reduced chart cannot contain this"),
        })
    return {"applicable": True, "holds": holds, "length": s,
            "interior_middle": bool(mid_at), "middle_stations": mid_at,
            "witnesses": witnesses}


def propagate_orientation(chart: Chart, p: PseudoPath) -> dict:
    """One-way audit for a dichromatic one-side path, split by where the
    middle arcs sit.

    With no middle arc anywhere the flow chain applies verbatim; with a
    middle end arc but clean interior side arcs the one-way verdict still
    stands; with both end arcs middle the run must be long and hide a
    middle side arc inside.  Any other middle pattern is out of scope and
    raises.  Failed verdicts carry witnesses: each marks a spot a reduced
    chart cannot contain."""
    if not is_one_side(chart, p):
        raise ClassificationError("path is not one-side")
    if not is_dichromatic(chart, p):
        raise ClassificationError("path is not dichromatic")
    arcs = side_arcs(chart, p)
    side_mid = [any(is_middle_at(chart, d) for d in gap) for _v, gap in arcs]
    end_mid = (is_middle_at(chart, p.end_darts[0]),
               is_middle_at(chart, p.end_darts[1]))
    if all(end_mid):
        rep = double_middle_report(chart, p)
        rep["case"] = "double-middle"
        return rep
    if not any(side_mid):
        flow = flow_report(chart, p)
        rep = io_report(chart, p)
        return {"case": "clean-run", "applicable": True,
                "io": rep["io"], "holds": rep["holds"],
                "flow": flow, "witnesses": rep["witnesses"]}
    if any(end_mid) and not any(side_mid[1:-1]):
        io = io_type(chart, p)
        rep = io_report(chart, p)
        return {"case": "end-middle", "applicable": True,
                "io": io, "holds": io is not None,
                "witnesses": rep["witnesses"]}
    raise ClassificationError(
        "no orientation rule applies: a side arc is middle at an interior "
        "station and the end arcs are not both middle")


# -- paths cut out of a cycle ----------------------------------------------------

def path_decomposition(chart: Chart, cycle: Cycle, cuts):
    """Cut the cycle's circuit at the given boundary whites.

    Returns one segment per cut white in walk order, each as
    (start white, traversal darts, end white).  At least two cut whites
    are required so every segment is a genuine arc."""
    cuts = set(cuts)
    missing = cuts - set(cycle.whites)
    if missing:
        raise GeometryError(f"not on the cycle: {sorted(missing)}")
    if len(cuts) < 2:
        raise GeometryError("need at least two cut whites")
    walk = list(cycle.walk)
    idx = [i for i, d in enumerate(walk) if chart.vertex_of(d) in cuts]
    segs = []
    for a, b in zip(idx, idx[1:] + [idx[0] + len(walk)]):
        darts = tuple(walk[i % len(walk)] for i in range(a, b))
        segs.append((chart.vertex_of(darts[0]), darts,
                     chart.vertex_of(mate(darts[-1]))))
    return segs


def extended_path(chart: Chart, cycle: Cycle, seg) -> PseudoPath:
    """Extend a boundary arc by the spare darts at its end whites.

    The side is the one facing away from the cycle: at the start white it
    is the gap between the spare and the departure that skips the other
    cycle dart."""
    v0, darts, v1 = seg
    e0 = spare_dart(chart, cycle, v0)
    e1 = spare_dart(chart, cycle, v1)
    _dep, arr = cycle_darts_at(chart, cycle, v0)
    side = "left" if arr in side_gap(chart, v0, e0, darts[0], "right") else "right"
    return pseudo_path(chart, e0, darts, e1, side)


def extended_paths(chart: Chart, cycle: Cycle, cuts=None, sets=None):
    if cuts is None:
        sets = sets or w_sets(chart, cycle)
        cuts = sets["w_o"]
    return [extended_path(chart, cycle, seg)
            for seg in path_decomposition(chart, cycle, cuts)]


def _mid_split_counts(chart: Chart, seg, mids, in_mid):
    """Split the arc at its outward-middle whites and count inward-middle
    whites strictly inside each piece.  On a reduced chart the first and
    last counts are 0 and every interior count is 1."""
    counts, cur = [], 0
    for d in seg[1][1:]:
        v = chart.vertex_of(d)
        if v in mids:
            counts.append(cur)
            cur = 0
        elif v in in_mid:
            cur += 1
    counts.append(cur)
    return counts


def verify_boundary_paths(chart: Chart, cycle: Cycle, region=None, sets=None) -> dict:
    """Boundary-arc audit for a cycle with outward-middle whites.

    Cut the cycle at its plain outward whites (spare dart outside and not
    middle).  On a reduced chart, whenever the outward-middle whites all
    lie on at most two of the resulting arcs, each of those two arcs must
    carry at least one of them, and each of the two arcs extended by its
    end spares must run one-way."""
    region = region or cycle_region(chart, cycle)
    sets = sets or w_sets(chart, cycle, region)
    mids = set(sets["w_o_mid"])
    plain = sorted(set(sets["w_o"]) - mids)
    report = {"check": "boundary-io-paths", "label": cycle.label,
              "plain": plain, "applicable": False, "reason": None,
              "holds": None, "witnesses": []}
    if not mids:
        report["reason"] = "no outward middle whites"
        return report
    report["applicable"] = True
    if len(plain) < 2:
        report["holds"] = False
        report["reason"] = "fewer than two plain outward whites"
        report["witnesses"].append({
            "kind": "io-violation",
            "elements": sorted(sets["w_o"]),
            "explanation": ("outward whites are almost all middle; a "
                            "reduced chart keeps at least two plain ones "
                            "on such a cycle"),
        })
        return report

    segs = path_decomposition(chart, cycle, plain)
    seg_mids = []
    for seg in segs:
        inner = {chart.vertex_of(d) for d in seg[1]} & mids
        if inner:
            seg_mids.append((seg, sorted(inner)))
    report["mid_arcs"] = [[s[0], *m, s[2]] for s, m in seg_mids]
    if len(seg_mids) > 2:
        report["applicable"] = False
        report["reason"] = "outward middle whites spread over more than two arcs"
        return report
    if len(seg_mids) == 1:
        report["holds"] = False
        report["reason"] = "all outward middle whites on a single arc"
        report["witnesses"].append({
            "kind": "io-violation",
            "elements": seg_mids[0][1],
            "explanation": ("every outward middle white sits on one arc "
                            "between plain whites; a reduced chart spreads "
                            "them over two"),
        })
        return report

    in_mid = set(sets["w_i_mid"])
    ios = []
    for seg, inner in seg_mids:
        ext = extended_path(chart, cycle, seg)
        ios.append({"arc": [seg[0], seg[2]], "mids": inner,
                    "io": io_type(chart, ext),
                    "mid_splits": _mid_split_counts(chart, seg, set(inner), in_mid)})
    report["arcs"] = ios
    bad = [a for a in ios if a["io"] is None]
    for a in bad:
        report["witnesses"].append({
            "kind": "io-violation",
            "elements": a["arc"] + a["mids"],
            "explanation": ("the extended arc through these whites does "
                            "not run one-way"),
        })
    report["holds"] = not bad
    report["reason"] = None if not bad else "extended arc not one-way"
    return report


# -- joining one-way paths -------------------------------------------------------

def io_compose(chart: Chart, p1: PseudoPath, p2: PseudoPath):
    """Join two one-way paths that overlap at a single white.

    Two shapes are accepted: the exit arc of the first runs inside the
    first spine edge of the second while the second enters from inside the
    last spine edge of the first (a shared interior white), or both share
    one end arc that is middle at the joint (a split at a source or sink).
    Returns (joined path, "I" or "II"); the joint keeps the common side and
    stays one-way."""
    if p1.label != p2.label or p1.side != p2.side:
        raise ClassificationError("paths disagree on label or side")
    if io_type(chart, p1) is None or io_type(chart, p2) is None:
        raise ClassificationError("both paths must run one-way")
    last_back = mate(p1.traversal[-1]) if p1.traversal else p1.end_darts[0]
    first_dep = p2.traversal[0] if p2.traversal else p2.end_darts[1]
    if p1.end_darts[1] == first_dep and p2.end_darts[0] == last_back:
        kind = "I"
    elif p1.end_darts[1] == p2.end_darts[0] and is_middle_at(chart, p1.end_darts[1]):
        kind = "II"
    else:
        raise ClassificationError("paths do not meet at a joinable white")
    joined = pseudo_path(chart, p1.end_darts[0],
                         p1.traversal + p2.traversal,
                         p2.end_darts[1], p1.side)
    if io_type(chart, joined) is None:
        raise GeometryError("joined path lost its one-way sense")
    return joined, kind


def fold_compose(chart: Chart, paths):
    """Left fold of io_compose over a sequence of paths."""
    if not paths:
        raise ClassificationError("nothing to join")
    acc = paths[0]
    kinds = []
    for p in paths[1:]:
        acc, kind = io_compose(chart, acc, p)
        kinds.append(kind)
    return acc, kinds


# -- bridges and piers -----------------------------------------------------------

def _third_m_dart(chart: Chart, v: str, label: int, used):
    rest = [d for d in chart.rotation[v]
            if chart.edge_label[edge_of(d)] == label and d not in used]
    if len(rest) != 1:
        raise GeometryError(f"no single spare label-{label} dart at {v}")
    return rest[0]


def _is_terminal_edge(chart: Chart, eid: str) -> bool:
    tail, head = chart.endpoints[eid]
    kinds = {chart.vertex_kind[tail], chart.vertex_kind[head]}
    return kinds == {"white", "black"}


def is_bridge(chart: Chart, p: PseudoPath):
    """(ok, why).  A bridge has at least one spine edge, runs through
    whites, is admissible, enters and leaves along non-middle spine edges,
    and every interior vertex carries a terminal edge of the path label."""
    if not p.traversal:
        return False, "no spine edge"
    if not all_white(chart, p):
        return False, "vertex is not white"
    if not is_admissible(chart, p):
        return False, "not admissible on this side"
    if is_middle_at(chart, p.traversal[0]):
        return False, "first spine edge is middle at the start"
    if is_middle_at(chart, mate(p.traversal[-1])):
        return False, "last spine edge is middle at the end"
    for v, back, dep in stations(chart, p)[1:-1]:
        spare = _third_m_dart(chart, v, p.label, (back, dep))
        if not _is_terminal_edge(chart, edge_of(spare)):
            return False, f"no terminal edge of label {p.label} at {v}"
    return True, None


def co_bridge(chart: Chart, p: PseudoPath) -> PseudoPath:
    """Same spine with both end arcs swapped for the spare darts, on the
    other side."""
    sts = stations(chart, p)
    v0, back0, dep0 = sts[0]
    vs, backs, deps = sts[-1]
    e0 = _third_m_dart(chart, v0, p.label, (back0, dep0))
    e1 = _third_m_dart(chart, vs, p.label, (backs, deps))
    other = "left" if p.side == "right" else "right"
    return pseudo_path(chart, e0, p.traversal, e1, other)


def bridge_report(chart: Chart, p: PseudoPath) -> dict:
    """A dichromatic bridge and its co-bridge run one-way in opposite
    senses; this holds on any valid chart."""
    ok, why = is_bridge(chart, p)
    if not ok:
        return {"applicable": False, "reason": why, "holds": None}
    if not is_dichromatic(chart, p):
        return {"applicable": False, "reason": "not dichromatic", "holds": None}
    co = co_bridge(chart, p)
    io, co_io = io_type(chart, p), io_type(chart, co)
    return {"applicable": True, "io": io, "co_io": co_io,
            "holds": {io, co_io} == {"inward", "outward"}}


def is_pier(chart: Chart, p: PseudoPath):
    """(ok, why).  A pier runs through whites, enters along a non-middle
    spine edge (for a single-vertex pier: the shared exit arc is not
    middle), and every later vertex carries a terminal edge of the path
    label away from the exit arc."""
    if not all_white(chart, p):
        return False, "vertex is not white"
    if not p.traversal:
        if is_middle_at(chart, p.end_darts[1]):
            return False, "exit arc is middle at the only vertex"
        return True, None
    if is_middle_at(chart, p.traversal[0]):
        return False, "first spine edge is middle at the start"
    for v, back, dep in stations(chart, p)[1:]:
        spare = _third_m_dart(chart, v, p.label, (back, dep))
        if not _is_terminal_edge(chart, edge_of(spare)):
            return False, f"no terminal edge of label {p.label} at {v}"
    return True, None


def co_pier(chart: Chart, p: PseudoPath) -> PseudoPath:
    """Same spine and exit arc with the entry arc swapped for the spare
    dart, on the other side."""
    v0, back0, dep0 = stations(chart, p)[0]
    e0 = _third_m_dart(chart, v0, p.label, (back0, dep0))
    other = "left" if p.side == "right" else "right"
    return pseudo_path(chart, e0, p.traversal, p.end_darts[1], other)


def pier_report(chart: Chart, p: PseudoPath) -> dict:
    """A dichromatic pier and its co-pier run one-way in opposite senses,
    each taken on the side disk away from the other's entry arc."""
    ok, why = is_pier(chart, p)
    if not ok:
        return {"applicable": False, "reason": why, "holds": None}
    if not is_dichromatic(chart, p):
        return {"applicable": False, "reason": "not dichromatic", "holds": None}
    v0, back0, dep0 = stations(chart, p)[0]
    spare = _third_m_dart(chart, v0, p.label, (back0, dep0))
    if spare in side_gap(chart, v0, back0, dep0, p.side):
        return {"applicable": False,
                "reason": "side disk covers the spare entry arc",
                "holds": None}
    co = co_pier(chart, p)
    io, co_io = io_type(chart, p), io_type(chart, co)
    return {"applicable": True, "io": io, "co_io": co_io,
            "holds": {io, co_io} == {"inward", "outward"}}


def detect_bridge_pier(chart: Chart, p: PseudoPath):
    """Bridge or pier record for the path, or None.  A path meeting both
    definitions is reported as a bridge."""
    for kind, test, partner in (("bridge", is_bridge, co_bridge),
                                ("pier", is_pier, co_pier)):
        ok, _why = test(chart, p)
        if ok:
            k = secondary_label(chart, p)
            return {"kind": kind, "path": p, "co": partner(chart, p),
                    "dichromatic": k is not None, "secondary": k}
    return None
