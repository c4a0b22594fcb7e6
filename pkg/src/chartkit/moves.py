"""Validated local rewrites and the reduction search built on them.

Every rewrite copies the chart data, performs dictionary surgery, rebuilds,
and re-runs the structural checks; a site that cannot be rewritten cleanly
raises MoveError instead of returning a broken chart.  Face designations
(which side of each component faces out) are carried across the rewrite
whenever their anchoring darts survive.
"""

import heapq
from itertools import combinations
from typing import NamedTuple

from .chart import (Chart, add_closed_edge, build_chart, canonical_key,
                    is_middle_at, validate_chart)
from .embedding import dart, edge_of, is_head, mate
from .errors import (ClassificationError, EmbeddingError, GeometryError,
                     MoveError, StructureError)
from .features import (bigons, consecutive_triplets, free_edges,
                       hoop_is_simple, strands)
from .tangles import tangle_around

MOVE_NAMES = ("CI-general", "CI-M1", "CI-M2", "CI-M3", "CI-M4",
              "CI-R2", "CI-R3", "CI-R4", "C-II", "C-III")

_ENGINE_ONLY = ("CI-M4", "CI-R3", "CI-R4")


class MoveInstance(NamedTuple):
    move: str
    site: tuple
    parameters: dict


class Complexity(NamedTuple):
    kind: str
    values: tuple


_KINDS = ("c", "w", "cw")


def complexity(chart: Chart, kind: str = "c") -> Complexity:
    """Lexicographic reduction target.  The crossing-led and white-led kinds
    track (lead count, other count, -free edges, -bigons); the combined kind
    adds both vertex counts together.  Counts are taken fresh every call."""
    if kind not in _KINDS:
        raise ClassificationError(f"unknown complexity kind {kind!r}")
    c = len(chart.crossings())
    w = len(chart.whites())
    f = len(free_edges(chart))
    b = len(bigons(chart))
    if kind == "c":
        return Complexity(kind, (c, w, -f, -b))
    if kind == "w":
        return Complexity(kind, (w, c, -f, -b))
    return Complexity(kind, (c + w, -f, -b))


def edge_total(chart: Chart) -> int:
    # closed edges are stored as two half-arcs but count once
    return len(chart.edge_label) - len(chart.closed_edges)


# -- rebuild plumbing --------------------------------------------------------------

def _rebuild(chart, vk, el, ep, rot, closed, hints=None):
    """Reassemble surgery output, carrying face designations over.

    Old placement rows survive when their darts do; a component left without
    a row is anchored to a surviving dart of the old outer face when it holds
    one, otherwise the builder default applies."""
    probe = build_chart(chart.n, vk, el, ep, rot, closed, None)
    alive = set(probe.emb.dart_vertex)
    old_rows = sorted(chart.placement.items())
    old_outer = sorted(d for d in chart.emb.dart_vertex if d in alive
                       and chart.global_face(d) == chart.outer_class)
    placement = {}
    for i, key in enumerate(probe.emb.component_key):
        comp = set(probe.emb.components[i])
        here = {d for v in comp for d in probe.rotation[v]}
        one_face = len({probe.emb.face_of[d] for d in here}) == 1
        rows = [(okey != key, okey, cont, outer)
                for okey, (cont, outer) in old_rows
                if okey in comp
                and (cont == "outer" or cont in alive)
                and (outer is None or outer in here)]
        if rows:
            rows.sort()
            placement[key] = (rows[0][2], None if one_face else rows[0][3])
            continue
        anchor = [d for d in old_outer if d in here]
        if anchor:
            placement[key] = ("outer", None if one_face else anchor[0])
    if hints:
        placement.update(hints)
    return build_chart(chart.n, vk, el, ep, rot, closed, placement)


def _finish(chart, vk, el, ep, rot, closed, hints=None):
    try:
        new = _rebuild(chart, vk, el, ep, rot, closed, hints)
    except (StructureError, EmbeddingError) as exc:
        raise MoveError(f"rewrite does not embed: {exc}") from None
    bad = validate_chart(new)
    if bad:
        raise MoveError("rewrite breaks chart conditions: "
                        f"{bad[0]['rule']} at {bad[0]['element']}")
    return new


def _far(ep, d):
    e = edge_of(d)
    return ep[e][0] if is_head(d) else ep[e][1]


def _substitute(rot, v, old, new):
    rot[v][rot[v].index(old)] = new


def _splice(el, ep, rot, a, b, gone):
    """Fuse the two strand ends a and b across a vanishing junction.  The
    surviving edge keeps a's id and a's far endpoint; returns its id."""
    ea, eb = edge_of(a), edge_of(b)
    if ea == eb:
        raise MoveError(f"splice at {a} would close the strand on itself")
    if el[ea] != el[eb]:
        raise MoveError(f"splice joins labels {el[ea]} and {el[eb]}")
    if is_head(a) == is_head(b):
        raise MoveError(f"splice of {a} and {b} fights the orientations")
    fa, fb = _far(ep, a), _far(ep, b)
    if fa in gone or fb in gone:
        raise MoveError("strand folds back into the vanishing spot")
    if is_head(a):
        # strand runs in through a's edge and out through b's
        ep[ea] = (ep[ea][0], ep[eb][1])
        _substitute(rot, fb, dart(eb, "+"), dart(ea, "+"))
    else:
        ep[ea] = (ep[eb][0], ep[ea][1])
        _substitute(rot, fb, dart(eb, "-"), dart(ea, "-"))
    del el[eb], ep[eb]
    return ea


def _heal_loop(chart, vk, el, ep, rot, closed, e, junction):
    """An edge with both ends on the vanishing junction survives it as a
    closed vertex-free edge.  Returns the placement hint for the new hoop."""
    for key, (cont, outer) in chart.placement.items():
        for d in (cont, outer):
            if d not in (None, "outer") and edge_of(d) == e:
                raise MoveError("loop carries nested content; relocate it first")
    label = el[e]
    del el[e], ep[e]
    hid = e
    while hid in closed or f"{hid}.a" in el or f"{hid}.p1" in vk:
        hid += "h"
    add_closed_edge(vk, el, ep, rot, closed, hid, label)
    return {f"{hid}.p1": ("outer", dart(f"{hid}.a", "-"))}


# -- hoop birth and death (CI-M1) -----------------------------------------------

def _hoop_empty_side(chart, hid):
    ds = {dart(hid + s, sign) for s in (".a", ".b") for sign in "-+"}
    members = {}
    for d in chart.emb.dart_vertex:
        members.setdefault(chart.global_face(d), set()).add(d)
    return any(cls != chart.outer_class and group <= ds
               for cls, group in members.items())


def _apply_m1(chart, inst):
    variant = inst.parameters.get("variant", "remove")
    vk, el, ep, rot, closed, _pl = chart.copy_data()
    if variant == "remove":
        (hid,) = inst.site
        if hid not in closed:
            raise MoveError(f"{hid} is not a closed edge")
        if not _hoop_empty_side(chart, hid):
            raise MoveError(f"hoop {hid} does not bound an empty disk")
        for s in (".a", ".b"):
            del el[hid + s], ep[hid + s]
        for s in (".p1", ".p2"):
            del vk[hid + s], rot[hid + s]
        del closed[hid]
        return _finish(chart, vk, el, ep, rot, closed)
    if variant != "create":
        raise MoveError(f"unknown CI-M1 variant {variant!r}")
    label = inst.parameters.get("label")
    if not isinstance(label, int) or not 1 <= label <= chart.n - 1:
        raise MoveError(f"hoop label {label!r} outside 1..{chart.n - 1}")
    container = inst.parameters.get("container", "outer")
    if container != "outer" and container not in chart.emb.dart_vertex:
        raise MoveError(f"container dart {container} does not exist")
    hid = inst.parameters.get("id", "h0")
    while hid in closed or f"{hid}.a" in el or f"{hid}.p1" in vk:
        hid += "h"
    add_closed_edge(vk, el, ep, rot, closed, hid, label)
    hint = {f"{hid}.p1": (container, dart(f"{hid}.a", "-"))}
    return _finish(chart, vk, el, ep, rot, closed, hint)


# -- arc recombination (CI-M2) ----------------------------------------------------

def _expansion_arcs(chart):
    return {f"{E}{s}" for E in chart.closed_edges for s in (".a", ".b")}


def _m2_corridor(chart, e, f):
    for de, df in ((dart(e, "+"), dart(f, "-")), (dart(e, "-"), dart(f, "+"))):
        if chart.global_face(de) == chart.global_face(df):
            return de, df
    return None


def _apply_m2(chart, inst):
    e, f = inst.site
    vk, el, ep, rot, closed, _pl = chart.copy_data()
    if e not in el or f not in el:
        raise MoveError(f"unknown edge in site ({e}, {f})")
    if e == f:
        raise MoveError("recombination needs two distinct arcs")
    if el[e] != el[f]:
        raise MoveError(f"labels {el[e]} and {el[f]} differ")
    if {e, f} & _expansion_arcs(chart):
        raise MoveError("closed-edge halves do not recombine; reroute the hoop")
    pair = inst.parameters.get("darts")
    if pair is not None:
        de, df = pair
        if {edge_of(de), edge_of(df)} != {e, f} or is_head(de) == is_head(df):
            raise MoveError("corridor darts do not certify a coherent pairing")
        if chart.global_face(de) != chart.global_face(df):
            raise MoveError("corridor sides lie on different faces")
    elif _m2_corridor(chart, e, f) is None:
        raise MoveError(f"{e} and {f} do not flank a common corridor coherently")
    # swap the two head ends through the corridor
    te, he = ep[e]
    tf, hf = ep[f]
    if he == hf:
        slots = rot[he]
        i, j = slots.index(dart(e, "+")), slots.index(dart(f, "+"))
        slots[i], slots[j] = slots[j], slots[i]
    else:
        _substitute(rot, he, dart(e, "+"), dart(f, "+"))
        _substitute(rot, hf, dart(f, "+"), dart(e, "+"))
    ep[e] = (te, hf)
    ep[f] = (tf, he)
    return _finish(chart, vk, el, ep, rot, closed)


# -- white pair birth and death (CI-M3) ---------------------------------------------

def _run_start(slots, joiners):
    js = set(joiners)
    hits = [i for i, d in enumerate(slots) if edge_of(d) in js]
    if len(hits) != 3:
        return None
    for i in hits:
        if (all(edge_of(slots[(i + k) % 6]) in js for k in range(3))
                and edge_of(slots[(i - 1) % 6]) not in js):
            return i
    return None


def _empty_lens(chart, e1, e2):
    return any(len(orbit) == 2
               and {edge_of(orbit[0]), edge_of(orbit[1])} == {e1, e2}
               for orbit in chart.emb.faces)


def _apply_m3_del(chart, inst):
    u, v = inst.site
    vk, el, ep, rot, closed, _pl = chart.copy_data()
    if u == v or vk.get(u) != "white" or vk.get(v) != "white":
        raise MoveError("site needs two distinct white vertices")
    joiners = sorted(e for e, ends in ep.items() if set(ends) == {u, v})
    if len(joiners) != 3:
        raise MoveError(f"{u} and {v} share {len(joiners)} edges, need exactly 3")
    iu, iv = _run_start(rot[u], joiners), _run_start(rot[v], joiners)
    if iu is None or iv is None:
        raise MoveError("joining edges are not consecutive at both ends")
    ju = [edge_of(rot[u][(iu + k) % 6]) for k in range(3)]
    jv = [edge_of(rot[v][(iv + k) % 6]) for k in range(3)]
    if jv != ju[::-1]:
        raise MoveError("joining edges twist between the two vertices")
    if not (_empty_lens(chart, ju[0], ju[1]) and _empty_lens(chart, ju[1], ju[2])):
        raise MoveError("joining edges do not cobound empty slivers")
    rest_u = [rot[u][(iu + 3 + k) % 6] for k in range(3)]
    rest_v = [rot[v][(iv + 3 + k) % 6] for k in range(3)]
    gone = {u, v}
    for a, b in zip(rest_u, rest_v[::-1]):
        _splice(el, ep, rot, a, b, gone)
    for e in joiners:
        del el[e], ep[e]
    del vk[u], vk[v], rot[u], rot[v]
    return _finish(chart, vk, el, ep, rot, closed)


def _fresh(base, taken):
    name = base
    while name in taken:
        name += "x"
    taken.add(name)
    return name


def _apply_m3_add(chart, inst):
    s1, s2, s3 = inst.parameters.get("strands", inst.site)
    vk, el, ep, rot, closed, _pl = chart.copy_data()
    for s in (s1, s2, s3):
        if s not in el:
            raise MoveError(f"unknown edge {s}")
    if len({s1, s2, s3}) != 3:
        raise MoveError("three distinct strands are needed")
    if {s1, s2, s3} & _expansion_arcs(chart):
        raise MoveError("closed-edge halves cannot be pinched")
    if el[s1] != el[s3] or abs(el[s1] - el[s2]) != 1:
        raise MoveError(f"stack labels {el[s1]},{el[s2]},{el[s3]} do not alternate")
    c12 = _m2_corridor(chart, s1, s2)
    if c12 is None:
        raise MoveError(f"{s1} and {s2} do not run side by side coherently")
    d2flip = dart(s2, "-" if is_head(c12[1]) else "+")
    d3 = dart(s3, "-" if is_head(d2flip) else "+")
    if chart.global_face(d2flip) != chart.global_face(d3):
        raise MoveError(f"{s2} and {s3} do not run side by side coherently")

    taken = set(vk) | set(el)
    u = _fresh("w.u", taken)
    v = _fresh("w.v", taken)
    rights = [_fresh(f"{s}.r", taken) for s in (s1, s2, s3)]
    joins = [_fresh(f"{u}.j{k}", taken) for k in range(3)]
    a, b = el[s1], el[s2]

    vk[u] = "white"
    vk[v] = "white"
    for jid, lbl in zip(joins, (b, a, b)):
        el[jid] = lbl
        ep[jid] = (u, v)
    for s, rid in zip((s1, s2, s3), rights):
        tail, head = ep[s]
        el[rid] = el[s]
        ep[s] = (tail, u)
        ep[rid] = (v, head)
        _substitute(rot, head, dart(s, "+"), dart(rid, "+"))
    rot[u] = ([dart(j, "-") for j in joins]
              + [dart(s, "+") for s in (s1, s2, s3)])
    rot[v] = ([dart(j, "+") for j in reversed(joins)]
              + [dart(r, "-") for r in reversed(rights)])
    return _finish(chart, vk, el, ep, rot, closed)


def _apply_m3(chart, inst):
    if inst.parameters.get("variant", "annihilate") == "create":
        return _apply_m3_add(chart, inst)
    return _apply_m3_del(chart, inst)


# -- crossing pair death (CI-R2) ----------------------------------------------------

def _r2_mids(chart, x1, x2):
    for orbit in chart.emb.faces:
        if len(orbit) != 2:
            continue
        da, db = orbit
        if {chart.vertex_of(da), chart.vertex_of(db)} != {x1, x2}:
            continue
        ea, eb = edge_of(da), edge_of(db)
        if (ea != eb and set(chart.endpoints[ea]) == {x1, x2}
                and set(chart.endpoints[eb]) == {x1, x2}):
            return tuple(sorted((ea, eb)))
    return None


def _apply_r2(chart, inst):
    x1, x2 = inst.site
    vk, el, ep, rot, closed, _pl = chart.copy_data()
    for x in (x1, x2):
        if vk.get(x) != "crossing":
            raise MoveError(f"{x} is not a crossing")
    mids = inst.parameters.get("mids") or _r2_mids(chart, x1, x2)
    if mids is None:
        raise MoveError(f"no empty lens between {x1} and {x2}")
    hints = {}
    gone = {x1, x2}
    for m in mids:
        if set(ep.get(m, ())) != {x1, x2}:
            raise MoveError(f"{m} does not span the two crossings")
        d1 = dart(m, "+" if ep[m][1] == x1 else "-")
        d2 = mate(d1)
        c1 = rot[x1][(rot[x1].index(d1) + 2) % 4]
        c2 = rot[x2][(rot[x2].index(d2) + 2) % 4]
        if edge_of(c1) == m or edge_of(c2) == m:
            raise MoveError("lens strand doubles back through the lens")
        merged = _splice(el, ep, rot, c1, d1, set())
        if merged == edge_of(c2):
            hints.update(_heal_loop(chart, vk, el, ep, rot, closed, merged, x2))
        else:
            d2n = dart(merged, "+" if is_head(d2) else "-")
            _splice(el, ep, rot, c2, d2n, gone)
    for x in (x1, x2):
        del vk[x], rot[x]
    return _finish(chart, vk, el, ep, rot, closed, hints or None)


# -- black vertex through a crossing (C-II) -----------------------------------------

def _apply_c2(chart, inst):
    eid, x = inst.site
    vk, el, ep, rot, closed, _pl = chart.copy_data()
    if vk.get(x) != "crossing":
        raise MoveError(f"{x} is not a crossing")
    ends = ep.get(eid)
    if ends is None or x not in ends:
        raise MoveError(f"edge {eid} does not reach {x}")
    bv = ends[0] if ends[1] == x else ends[1]
    if vk.get(bv) != "black":
        raise MoveError(f"edge {eid} carries no black vertex")
    d = dart(eid, "+" if ends[1] == x else "-")
    slots = rot[x]
    i = slots.index(d)
    cont, t1, t2 = slots[(i + 2) % 4], slots[(i + 1) % 4], slots[(i + 3) % 4]
    hints = None
    if edge_of(t1) == edge_of(t2):
        hints = _heal_loop(chart, vk, el, ep, rot, closed, edge_of(t1), x)
    else:
        _splice(el, ep, rot, t1, t2, {x})
    _splice(el, ep, rot, d, cont, {x})
    del vk[x], rot[x]
    return _finish(chart, vk, el, ep, rot, closed, hints)


# -- black vertex absorbs a white (C-III) -------------------------------------------

def _apply_c3(chart, inst):
    eid, w = inst.site
    vk, el, ep, rot, closed, _pl = chart.copy_data()
    if vk.get(w) != "white":
        raise MoveError(f"{w} is not a white vertex")
    ends = ep.get(eid)
    if ends is None or w not in ends:
        raise MoveError(f"edge {eid} does not reach {w}")
    bv = ends[0] if ends[1] == w else ends[1]
    if vk.get(bv) != "black":
        raise MoveError(f"edge {eid} is not terminal")
    dw = dart(eid, "+" if ends[1] == w else "-")
    if is_middle_at(chart, dw):
        raise MoveError(f"{eid} carries the middle arc of its fan at {w}")
    slots = rot[w]
    i = slots.index(dw)
    # the black slides straight through: antipodal edge keeps it as its end
    far = slots[(i + 3) % 6]
    efar = edge_of(far)
    ep[efar] = tuple(bv if p == w else p for p in ep[efar])
    rot[bv] = [far]
    gone = {w, bv}
    _splice(el, ep, rot, slots[(i + 2) % 6], slots[(i + 4) % 6], gone)
    _splice(el, ep, rot, slots[(i + 1) % 6], slots[(i + 5) % 6], gone)
    del el[eid], ep[eid], vk[w], rot[w]
    return _finish(chart, vk, el, ep, rot, closed)


# -- pocket replacement (CI-general) -------------------------------------------------

def _frag_field(frag, name):
    value = frag.get(name)
    if not isinstance(value, dict) and name != "legs":
        raise MoveError(f"fragment is missing its {name} table")
    if name == "legs" and not isinstance(value, (list, tuple)):
        raise MoveError("fragment is missing its leg list")
    return value


def _apply_general(chart, inst):
    frag = inst.parameters.get("fragment")
    if not isinstance(frag, dict):
        raise MoveError("general replacement needs a fragment description")
    pocket = list(inst.parameters.get("pocket", inst.site))
    try:
        t = tangle_around(chart, pocket)
    except GeometryError as exc:
        raise MoveError(f"pocket is not replaceable: {exc}") from None
    held = [v for v in t.vertices if chart.vertex_kind[v] == "black"]
    if held:
        raise MoveError(f"pocket holds black vertices {held[:3]}")
    rim = list(t.rim)
    if not rim:
        raise MoveError("pocket has no boundary; rebuild the component instead")
    rim_edges = [edge_of(d) for _v, d in rim]
    if len(set(rim_edges)) != len(rim_edges):
        raise MoveError("an edge crosses the pocket boundary twice")

    fvk = _frag_field(frag, "vertices")
    fel = _frag_field(frag, "edges")
    fep = _frag_field(frag, "endpoints")
    frot = _frag_field(frag, "rotation")
    legs = list(_frag_field(frag, "legs"))
    if any(kind not in ("white", "crossing") for kind in fvk.values()):
        raise MoveError("fragment may hold only white and crossing vertices")
    if len(legs) != len(rim):
        raise MoveError(f"fragment offers {len(legs)} legs for {len(rim)} cuts")

    vk, el, ep, rot, closed, _pl = chart.copy_data()
    survivors = set(el) - set(t.edges)
    if (set(fvk) & set(vk)) or (set(fel) & survivors):
        raise MoveError("fragment ids collide with the remaining chart")

    # labels must agree cut by cut and arrows must flow through each junction
    host = [(chart.edge_label[edge_of(d)], is_head(d)) for _v, d in rim]
    fleg = [(fel.get(edge_of(d)), is_head(d)) for d in legs]
    if any(lbl is None for lbl, _s in fleg):
        raise MoveError("a leg references an edge the fragment does not define")
    n = len(rim)
    offset = next((r for r in range(n)
                   if all(host[i][0] == fleg[(i + r) % n][0]
                          and host[i][1] != fleg[(i + r) % n][1]
                          for i in range(n))), None)
    if offset is None:
        raise MoveError("fragment boundary trace does not match the pocket rim")

    for v in t.vertices:
        del vk[v], rot[v]
    for e in t.edges:
        del el[e], ep[e]
    for E in [E for E in closed if f"{E}.a" in t.edges]:
        del closed[E]
    vk.update(fvk)
    for v, ds in frot.items():
        rot[v] = list(ds)
    leg_count = {}
    for d in legs:
        leg_count[edge_of(d)] = leg_count.get(edge_of(d), 0) + 1
    for e, lbl in fel.items():
        if e not in leg_count:
            el[e] = lbl
            ep[e] = tuple(fep[e])

    spanning = {}
    for i in range(n):
        _v, hd = rim[i]
        he = edge_of(hd)
        leg = legs[(i + offset) % n]
        fe = edge_of(leg)
        if leg_count[fe] == 2:
            spanning.setdefault(fe, []).append((hd, he))
            continue
        fends = fep[fe]
        inner = fends[0] if is_head(leg) else fends[1]
        if is_head(hd):
            ep[he] = (ep[he][0], inner)
            _substitute(rot, inner, dart(fe, "+"), dart(he, "+"))
        else:
            ep[he] = (inner, ep[he][1])
            _substitute(rot, inner, dart(fe, "-"), dart(he, "-"))
    for fe, sides in spanning.items():
        if len(sides) != 2:
            raise MoveError(f"leg edge {fe} crosses the rim once, not twice")
        (hd_in, he_in), (hd_out, he_out) = sorted(sides, key=lambda s: not is_head(s[0]))
        if is_head(hd_in) == is_head(hd_out):
            raise MoveError(f"through strand {fe} fights the orientations")
        ep[he_in] = (ep[he_in][0], ep[he_out][1])
        _substitute(rot, ep[he_out][1], dart(he_out, "+"), dart(he_in, "+"))
        del el[he_out], ep[he_out]
    return _finish(chart, vk, el, ep, rot, closed)


# -- dispatch ------------------------------------------------------------------------

_HANDLERS = {"CI-M1": _apply_m1, "CI-M2": _apply_m2, "CI-M3": _apply_m3,
             "CI-R2": _apply_r2, "C-II": _apply_c2, "C-III": _apply_c3,
             "CI-general": _apply_general}


def apply_move(chart: Chart, inst: MoveInstance) -> Chart:
    """Apply one rewrite and return the rebuilt chart; the input chart is
    never mutated.  Raises MoveError when the site does not support the move
    or the result would break a structural condition."""
    if inst.move in _ENGINE_ONLY:
        raise MoveError(f"{inst.move} is expressed through CI-general"
                        " pocket replacement")
    handler = _HANDLERS.get(inst.move)
    if handler is None:
        raise MoveError(f"unknown move {inst.move!r}")
    return handler(chart, inst)


# -- site enumeration ----------------------------------------------------------------

def _m2_sites(chart):
    # recombination sites are listed only where they can make progress:
    # both arcs must touch a white vertex.  Other coherent pairs stay
    # applyable through an explicit instance.
    touch = {e for e, (t, h) in chart.endpoints.items()
             if chart.vertex_kind[t] == "white" or chart.vertex_kind[h] == "white"}
    touch -= _expansion_arcs(chart)
    by_class = {}
    for e in touch:
        for s in "-+":
            d = dart(e, s)
            by_class.setdefault(chart.global_face(d), []).append(d)
    out, seen = [], set()
    for _cls, ds in sorted(by_class.items()):
        for de, df in combinations(sorted(ds), 2):
            ee, ef = edge_of(de), edge_of(df)
            if (ee == ef or is_head(de) == is_head(df)
                    or chart.edge_label[ee] != chart.edge_label[ef]):
                continue
            key = tuple(sorted((ee, ef)))
            if key not in seen:
                seen.add(key)
                out.append(MoveInstance("CI-M2", key, {"darts": sorted((de, df))}))
    return out


def _m3_sites(chart):
    pairs = {}
    for e, (t, h) in chart.endpoints.items():
        if (t != h and chart.vertex_kind[t] == "white"
                and chart.vertex_kind[h] == "white"):
            pairs.setdefault(tuple(sorted((t, h))), []).append(e)
    return [MoveInstance("CI-M3", pair, {})
            for pair, es in sorted(pairs.items()) if len(es) == 3]


def _r2_sites(chart):
    out, seen = [], set()
    for orbit in chart.emb.faces:
        if len(orbit) != 2:
            continue
        va, vb = chart.vertex_of(orbit[0]), chart.vertex_of(orbit[1])
        if (va == vb or chart.vertex_kind[va] != "crossing"
                or chart.vertex_kind[vb] != "crossing"):
            continue
        site = tuple(sorted((va, vb)))
        mids = tuple(sorted((edge_of(orbit[0]), edge_of(orbit[1]))))
        if mids[0] != mids[1] and (site, mids) not in seen:
            seen.add((site, mids))
            out.append(MoveInstance("CI-R2", site, {"mids": list(mids)}))
    return sorted(out, key=lambda i: (i.site, i.parameters["mids"]))


def _c2_sites(chart):
    out = []
    for e in sorted(chart.edge_label):
        t, h = chart.endpoints[e]
        kinds = (chart.vertex_kind[t], chart.vertex_kind[h])
        if kinds == ("black", "crossing"):
            out.append(MoveInstance("C-II", (e, h), {}))
        elif kinds == ("crossing", "black"):
            out.append(MoveInstance("C-II", (e, t), {}))
    return out


def _c3_sites(chart):
    out = []
    for e in sorted(chart.edge_label):
        t, h = chart.endpoints[e]
        for bv, w, s in ((t, h, "+"), (h, t, "-")):
            if (chart.vertex_kind[bv] == "black"
                    and chart.vertex_kind[w] == "white"
                    and not is_middle_at(chart, dart(e, s))):
                out.append(MoveInstance("C-III", (e, w), {}))
    return out


def applicable_moves(chart: Chart):
    """Rewrite instances available right now: hoop removals, lens and white
    pair annihilations, black-vertex slides, and progress-bearing arc
    recombinations.  Creation-type instances are never enumerated; they are
    applied explicitly."""
    out = [MoveInstance("CI-M1", (hid,), {"variant": "remove"})
           for hid in sorted(chart.closed_edges) if _hoop_empty_side(chart, hid)]
    out.extend(_m2_sites(chart))
    # splice-based sites carry orientation side conditions; keep only the
    # ones whose surgery actually goes through
    for inst in _r2_sites(chart) + _m3_sites(chart) + _c2_sites(chart) + _c3_sites(chart):
        try:
            apply_move(chart, inst)
        except MoveError:
            continue
        out.append(inst)
    return sorted(out, key=lambda i: (i.move, i.site))


# -- periphery -----------------------------------------------------------------------

def normalize_periphery(chart: Chart) -> Chart:
    """Re-anchor every free edge and every simple hoop directly on the outer
    face; whatever was placed inside a relocated hoop rides along.  The chart
    structure, and so its complexity, is untouched."""
    keys = []
    for st in strands(chart):
        if st.kind == "free" or (st.kind == "hoop" and hoop_is_simple(chart, st)):
            keys.append(min(v for e in st.edges for v in chart.endpoints[e]))
    vk, el, ep, rot, closed, placement = chart.copy_data()
    changed = False
    for key in keys:
        cont, outer = placement[key]
        if cont != "outer":
            placement[key] = ("outer", outer)
            changed = True
    if not changed:
        return chart
    return build_chart(chart.n, vk, el, ep, rot, closed, placement)


def main_edges(chart: Chart):
    """Edges that stay once the periphery is stripped: everything except
    free edges and simple hoops."""
    skip = set()
    for st in strands(chart):
        if st.kind == "free" or (st.kind == "hoop" and hoop_is_simple(chart, st)):
            skip.update(st.edges)
    return sorted(e for e in chart.edge_label if e not in skip)


# -- reduction search ----------------------------------------------------------------

def bounded_search(chart: Chart, kind: str = "w", budget: int = 256):
    """Best-first descent through non-worsening rewrites.

    budget caps how many states get expanded.  Returns (best, trace,
    certificate) where the trace holds one record per applied move with the
    complexity before and after, and the certificate reports whether any
    strictly better chart was reached."""
    if budget <= 0:
        raise MoveError("search budget must be positive")
    start = complexity(chart, kind).values
    key0 = canonical_key(chart)
    memo = {key0: (chart, [])}
    frontier = [(start, 0, key0)]
    seen = {key0}
    best = (start, 0, key0)
    expanded = 0
    while frontier and expanded < budget:
        vals, depth, key = heapq.heappop(frontier)
        cur, trace = memo[key]
        expanded += 1
        for inst in applicable_moves(cur):
            try:
                child = apply_move(cur, inst)
            except MoveError:
                continue
            ck = canonical_key(child)
            if ck in seen:
                continue
            cv = complexity(child, kind).values
            if cv > vals:
                continue
            seen.add(ck)
            rec = {"move": inst.move, "site": list(inst.site),
                   "pre_complexity": list(vals), "post_complexity": list(cv)}
            memo[ck] = (child, trace + [rec])
            entry = (cv, depth + 1, ck)
            heapq.heappush(frontier, entry)
            if entry < best:
                best = entry
    final, trace = memo[best[2]]
    improved = best[0] < start
    certificate = {"kind": kind, "budget": budget, "expanded": expanded,
                   "initial": list(start), "final": list(best[0]),
                   "improved": improved,
                   "reason": ("complexity decreased" if improved
                              else "no improvement found within budget")}
    return final, trace, certificate


# -- minimality witnesses --------------------------------------------------------------

_WITNESS_KIND = {"C-III": "non-middle-terminal",
                 "C-II": "black-edge-at-crossing",
                 "CI-R2": "crossing-lens",
                 "CI-M3": "white-pair-triple"}


def obstruction_witnesses(chart: Chart):
    """Configurations certifying the chart is not complexity-minimal, each
    naming the reducing rewrite it licenses.  Neutral removals (bare hoops,
    free edges) leave the complexity tuple alone and are not reported."""
    out = []
    for inst in applicable_moves(chart):
        kind = _WITNESS_KIND.get(inst.move)
        if kind:
            out.append({"kind": kind, "elements": list(inst.site),
                        "moves": [inst.move]})
    for trip in consecutive_triplets(chart):
        if not trip["admissible"]:
            out.append({"kind": "non-admissible-triplet",
                        "elements": list(trip["edges"]),
                        "moves": ["CI-M2", "C-III"]})
    return sorted(out, key=lambda w: (w["kind"], w["elements"]))
