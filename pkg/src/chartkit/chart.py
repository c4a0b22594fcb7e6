"""Chart data model, JSON round-trip, structural validation, regions.

A chart is an oriented labeled plane graph with vertex kinds black (degree
one), crossing (degree four) and white (degree six), drawn in a disk.  Closed
curves without vertices ("closed edges") are stored internally with two
phantom degree-two vertices so that the rotation machinery never sees an
empty cycle; the serializer contracts them back.

JSON format (keys fixed, unknown keys rejected):

    {"n": 4,
     "vertices": [{"id": "w1", "kind": "white"}, ...],
     "edges":    [{"id": "e1", "label": 2, "tail_vertex": "w1",
                   "head_vertex": "w2"},
                  {"id": "h1", "label": 1, "closed": true}, ...],
     "rotation": {"w1": ["e1:-", ...], ...},
     "outer_face": "e1:-",              # optional, single component
     "placement": {"w1": {"in": "outer", "outer": "e1:-"}}}   # optional

"placement" keys are component keys (smallest vertex id in the component).
"in" is "outer" or a dart of another component whose face contains this
component; "outer" is a dart whose face walk is the component's outward face
(null allowed when the component has one face).
"""

from __future__ import annotations

import json

from .embedding import Embedding, dart, edge_of, is_head, mate, resolve_global_faces
from .errors import GeometryError, StructureError

VERTEX_KINDS = ("black", "crossing", "white", "phantom")
_DEGREE = {"black": 1, "crossing": 4, "white": 6, "phantom": 2}


class Chart:
    """Immutable in-memory chart.  Build with `build_chart` or `parse_chart`."""

    def __init__(self, n, vertex_kind, edge_label, endpoints, rotation,
                 closed_edges, placement):
        self.n = n
        self.vertex_kind = vertex_kind
        self.edge_label = edge_label
        self.endpoints = endpoints
        self.rotation = rotation
        self.closed_edges = closed_edges
        self.placement = placement
        self._emb = None
        self._global = None

    # -- derived structure, computed lazily ---------------------------------

    @property
    def emb(self) -> Embedding:
        if self._emb is None:
            self._emb = Embedding(self.rotation, self.endpoints)
        return self._emb

    def _resolve_global(self):
        if self._global is None:
            self._global = resolve_global_faces(self.emb, self.placement)
        return self._global

    @property
    def face_class(self):
        return self._resolve_global()[0]

    @property
    def outer_class(self):
        return self._resolve_global()[1]

    def global_face(self, d: str):
        """Global plane face on the clockwise side of dart d."""
        return self.face_class[self.emb.face_of[d]]

    def global_faces(self):
        classes = set(self.face_class.values())
        classes.add(self.outer_class)
        return classes

    # -- small accessors -----------------------------------------------------

    def vertices_of_kind(self, kind):
        return [v for v, k in sorted(self.vertex_kind.items()) if k == kind]

    def whites(self):
        return self.vertices_of_kind("white")

    def crossings(self):
        return self.vertices_of_kind("crossing")

    def blacks(self):
        return self.vertices_of_kind("black")

    def degree(self, v):
        return len(self.rotation[v])

    def dart_at(self, eid, v):
        """The dart of edge eid at vertex v; loops give the tail dart."""
        tail, head = self.endpoints[eid]
        if v == tail:
            return dart(eid, "-")
        if v == head:
            return dart(eid, "+")
        raise StructureError(f"edge {eid} is not incident to {v}")

    def vertex_of(self, d):
        return self.emb.dart_vertex[d]

    def other_end(self, eid, v):
        tail, head = self.endpoints[eid]
        return head if v == tail else tail

    def copy_data(self):
        """Deep-enough copies of the mutable fields, for building rewrites."""
        return (dict(self.vertex_kind), dict(self.edge_label),
                dict(self.endpoints), {v: list(ds) for v, ds in self.rotation.items()},
                dict(self.closed_edges), dict(self.placement))


# -- construction ------------------------------------------------------------

def build_chart(n, vertex_kind, edge_label, endpoints, rotation,
                closed_edges=None, placement=None) -> Chart:
    """Assemble a Chart, filling in default placement; raises StructureError
    or EmbeddingError on malformed wiring.  Semantic conditions (degrees,
    label alternation, orientation runs) are reported by validate_chart."""
    closed_edges = dict(closed_edges or {})
    for name in list(vertex_kind) + list(edge_label):
        if ":" in name:
            raise StructureError(f"id {name!r} contains ':'")
    for eid, (tail, head) in endpoints.items():
        if tail not in vertex_kind or head not in vertex_kind:
            raise StructureError(f"edge {eid} references missing vertex")
    chart = Chart(n, dict(vertex_kind), dict(edge_label), dict(endpoints),
                  {v: list(ds) for v, ds in rotation.items()},
                  closed_edges, {})
    emb = chart.emb
    placement = dict(placement or {})
    stray = set(placement) - set(emb.component_key)
    if stray:
        raise StructureError(f"placement keys {sorted(stray)} name no component")
    full = {}
    for i, key in enumerate(emb.component_key):
        if key in placement:
            full[key] = placement[key]
        else:
            local = {emb.face_of[d] for v in emb.components[i] for d in emb.rotation[v]}
            anchor = None
            if len(local) > 1:
                anchor = min(min(emb.faces[f]) for f in local)
            full[key] = ("outer", anchor)
    chart.placement = full
    chart._resolve_global()
    return chart


def add_closed_edge(vertex_kind, edge_label, endpoints, rotation, closed_edges,
                    eid, label):
    """Expand one closed (vertex-free) edge into two phantoms and two arcs."""
    p1, p2 = eid + ".p1", eid + ".p2"
    a, b = eid + ".a", eid + ".b"
    vertex_kind[p1] = "phantom"
    vertex_kind[p2] = "phantom"
    edge_label[a] = label
    edge_label[b] = label
    endpoints[a] = (p1, p2)
    endpoints[b] = (p2, p1)
    rotation[p1] = [dart(a, "-"), dart(b, "+")]
    rotation[p2] = [dart(a, "+"), dart(b, "-")]
    closed_edges[eid] = label


# -- JSON parse / serialize ---------------------------------------------------

_CHART_KEYS = {"n", "vertices", "edges", "rotation", "outer_face", "placement"}


def parse_chart(doc) -> Chart:
    if isinstance(doc, (str, bytes)):
        doc = json.loads(doc)
    if not isinstance(doc, dict):
        raise StructureError("chart document must be a JSON object")
    unknown = set(doc) - _CHART_KEYS
    if unknown:
        raise StructureError(f"unknown chart keys: {sorted(unknown)}")
    for key in ("n", "vertices", "edges", "rotation"):
        if key not in doc:
            raise StructureError(f"missing chart key {key!r}")
    n = doc["n"]
    if not isinstance(n, int) or n < 1:
        raise StructureError("n must be a positive integer")

    vertex_kind, edge_label, endpoints, rotation, closed = {}, {}, {}, {}, {}
    for rec in doc["vertices"]:
        if set(rec) != {"id", "kind"}:
            raise StructureError(f"vertex record keys must be id/kind: {rec}")
        vid, kind = rec["id"], rec["kind"]
        if kind not in ("black", "crossing", "white"):
            raise StructureError(f"vertex {vid}: unknown kind {kind!r}")
        if vid in vertex_kind:
            raise StructureError(f"duplicate vertex id {vid}")
        vertex_kind[vid] = kind

    for rec in doc["edges"]:
        eid = rec.get("id")
        if eid is None or eid in edge_label or eid in closed:
            raise StructureError(f"bad or duplicate edge id in {rec}")
        if rec.get("closed") is True:
            if set(rec) != {"id", "label", "closed"}:
                raise StructureError(f"closed edge record keys: {rec}")
            add_closed_edge(vertex_kind, edge_label, endpoints, rotation,
                            closed, eid, rec["label"])
        else:
            if set(rec) != {"id", "label", "tail_vertex", "head_vertex"}:
                raise StructureError(f"edge record keys: {rec}")
            edge_label[eid] = rec["label"]
            endpoints[eid] = (rec["tail_vertex"], rec["head_vertex"])

    for vid, darts in doc["rotation"].items():
        if vid not in vertex_kind:
            raise StructureError(f"rotation lists unknown vertex {vid}")
        if vertex_kind[vid] == "phantom":
            raise StructureError(f"rotation must not list phantom {vid}")
        rotation[vid] = list(darts)

    for vid, kind in vertex_kind.items():
        if kind != "phantom" and vid not in rotation:
            raise StructureError(f"vertex {vid} missing from rotation")

    placement = {}
    if "placement" in doc:
        for key, rec in doc["placement"].items():
            if set(rec) != {"in", "outer"}:
                raise StructureError(f"placement record keys: {rec}")
            placement[key] = (rec["in"], rec["outer"])
    if "outer_face" in doc:
        if "placement" in doc:
            raise StructureError("give either outer_face or placement, not both")
        if not vertex_kind:
            raise StructureError("outer_face given for an empty chart")
        anchor = doc["outer_face"]
        placement[min(vertex_kind)] = ("outer", anchor)

    return build_chart(n, vertex_kind, edge_label, endpoints, rotation,
                       closed, placement)


def chart_to_doc(chart: Chart) -> dict:
    hidden_vertices = set()
    hidden_edges = set()
    for eid in chart.closed_edges:
        hidden_vertices.update((eid + ".p1", eid + ".p2"))
        hidden_edges.update((eid + ".a", eid + ".b"))

    doc = {"n": chart.n}
    doc["vertices"] = [{"id": v, "kind": k}
                       for v, k in sorted(chart.vertex_kind.items())
                       if v not in hidden_vertices]
    edges = []
    for eid in sorted(chart.edge_label):
        if eid in hidden_edges:
            continue
        tail, head = chart.endpoints[eid]
        edges.append({"id": eid, "label": chart.edge_label[eid],
                      "tail_vertex": tail, "head_vertex": head})
    for eid in sorted(chart.closed_edges):
        edges.append({"id": eid, "label": chart.closed_edges[eid], "closed": True})
    edges.sort(key=lambda r: r["id"])
    doc["edges"] = edges
    doc["rotation"] = {v: list(chart.rotation[v]) for v in sorted(chart.rotation)
                       if v not in hidden_vertices}
    doc["placement"] = {key: {"in": cont, "outer": outer}
                        for key, (cont, outer) in sorted(chart.placement.items())}
    return doc


def serialize_chart(chart: Chart) -> str:
    return json.dumps(chart_to_doc(chart), sort_keys=True, separators=(",", ":")) + "\n"


def canonical_key(chart: Chart) -> str:
    """Deterministic encoding used to deduplicate search states: equal keys
    imply equal charts.  Connected charts are keyed by a rooted breadth-first
    renumbering, minimized over root darts on the outward face, so the key
    does not depend on id names or rotation list phase.  For several
    components the per-component keys are sorted and the placement (with
    original ids) is appended."""
    emb = chart.emb
    if not chart.rotation:
        return "empty:%d" % chart.n

    comp_keys = []
    for i, key in enumerate(emb.component_key):
        _container, outer_dart = chart.placement[key]
        if outer_dart is None:
            local = {emb.face_of[d] for v in emb.components[i]
                     for d in emb.rotation[v]}
            face = next(iter(local))
        else:
            face = emb.face_of[outer_dart]
        roots = emb.faces[face]
        sigs = {d: _dart_sig(chart, d) for d in roots}
        low = min(sigs.values())
        enc = min(_encode_from(chart, d)
                  for d in sorted(roots) if sigs[d] == low)
        comp_keys.append(enc)

    if len(comp_keys) == 1:
        return "%d|%s" % (chart.n, comp_keys[0])
    raw = sorted((k, (chart.placement[k][0], chart.placement[k][1]))
                 for k in chart.placement)
    return "%d|%s|%s" % (chart.n, sorted(comp_keys), raw)


def _dart_sig(chart, d):
    v = chart.vertex_of(d)
    w = chart.vertex_of(mate(d))
    e = edge_of(d)
    return (chart.vertex_kind[v], len(chart.rotation[v]),
            chart.edge_label[e], is_head(d),
            chart.vertex_kind[w], len(chart.rotation[w]))


def _encode_from(chart, d0):
    """Breadth-first encoding of d0's component, rotation lists read from the
    arrival dart, so equal encodings mean isomorphic rooted embeddings."""
    rot = chart.rotation
    v0 = chart.vertex_of(d0)
    vmap = {v0: 0}
    emap = {}
    queue = [(v0, d0)]
    rows = []
    qi = 0
    while qi < len(queue):
        v, anchor = queue[qi]
        qi += 1
        darts = rot[v]
        i0 = darts.index(anchor)
        row = []
        for j in range(len(darts)):
            d = darts[(i0 + j) % len(darts)]
            e = edge_of(d)
            if e not in emap:
                emap[e] = len(emap)
            w = chart.vertex_of(mate(d))
            if w not in vmap:
                vmap[w] = len(vmap)
                queue.append((w, mate(d)))
            row.append((emap[e], 1 if is_head(d) else 0,
                        chart.edge_label[e], vmap[w]))
        rows.append((chart.vertex_kind[v], tuple(row)))
    return repr(rows)


# -- validation ----------------------------------------------------------------

def validate_chart(chart: Chart):
    """Check the local chart conditions; returns a list of violation records
    (empty when the chart is valid).  Wiring errors raise during build, so
    everything here is about kinds, labels, degrees and orientation runs."""
    out = []

    def bad(rule, element, detail):
        out.append({"rule": rule, "element": element, "detail": detail})

    for eid, lbl in sorted(chart.edge_label.items()):
        if not isinstance(lbl, int) or not (1 <= lbl <= chart.n - 1):
            bad("label-range", eid, f"label {lbl} outside 1..{chart.n - 1}")

    for v, kind in sorted(chart.vertex_kind.items()):
        darts = chart.rotation[v]
        if len(darts) != _DEGREE[kind]:
            bad("degree", v, f"{kind} vertex has degree {len(darts)}, wants {_DEGREE[kind]}")
            continue
        labels = [chart.edge_label[edge_of(d)] for d in darts]
        inward = [is_head(d) for d in darts]
        if kind == "white":
            a, b = labels[0], labels[1]
            if abs(a - b) != 1:
                bad("white-labels", v, f"adjacent labels {a},{b} not consecutive")
                continue
            if labels != [a, b, a, b, a, b]:
                bad("white-labels", v, f"labels {labels} do not alternate")
                continue
            if sum(inward) != 3 or not _is_cyclic_run(inward):
                bad("white-orientation", v,
                    f"orientations {_pattern(inward)} are not three consecutive"
                    " inward then three outward")
        elif kind == "crossing":
            if labels[0] != labels[2] or labels[1] != labels[3]:
                bad("crossing-labels", v, f"diagonal labels differ: {labels}")
            elif abs(labels[0] - labels[1]) < 2:
                bad("crossing-labels", v,
                    f"labels {labels[0]},{labels[1]} too close to cross")
            if inward[0] == inward[2] or inward[1] == inward[3]:
                bad("crossing-orientation", v,
                    f"{_pattern(inward)}: each strand must flow through")
        elif kind == "phantom":
            if labels[0] != labels[1]:
                bad("phantom", v, "closed edge halves disagree on label")
            if inward[0] == inward[1]:
                bad("phantom", v, "closed edge does not flow through")
    return out


def _is_cyclic_run(flags):
    """True iff the true entries form one cyclic block."""
    k = len(flags)
    changes = sum(flags[i] != flags[(i + 1) % k] for i in range(k))
    return changes == 2


def _pattern(inward):
    return "".join("+" if f else "-" for f in inward)


# -- middle arcs ----------------------------------------------------------------

def middle_darts(chart: Chart, v: str):
    """For a valid white vertex: the central dart of the inward run and of the
    outward run, as {"in": dart, "out": dart}.  The two are antipodal in the
    rotation and carry the vertex's two labels, one each."""
    darts = chart.rotation[v]
    inward = [is_head(d) for d in darts]
    start = next(i for i in range(6)
                 if inward[i] and not inward[(i - 1) % 6])
    return {"in": darts[(start + 1) % 6], "out": darts[(start + 4) % 6]}


def middle_table(chart: Chart):
    return {v: middle_darts(chart, v) for v in chart.whites()}


def label_middle(chart: Chart, v: str, label: int) -> str:
    """The middle dart of the given label at white vertex v."""
    mid = middle_darts(chart, v)
    for d in (mid["in"], mid["out"]):
        if chart.edge_label[edge_of(d)] == label:
            return d
    raise GeometryError(f"white {v} has no darts of label {label}")


def is_middle_at(chart: Chart, d: str) -> bool:
    """Is dart d the middle arc of its label at its (white) vertex?"""
    v = chart.vertex_of(d)
    mid = middle_darts(chart, v)
    return d in (mid["in"], mid["out"])


# -- regions --------------------------------------------------------------------

class Region:
    """The bounded side of a simple closed walk, as a set of global faces.

    walk: list of darts d1..dk, each at the vertex the walk leaves through
    that edge; consecutive edges share the intermediate vertex.
    """

    def __init__(self, chart: Chart, walk):
        self.chart = chart
        self.walk = list(walk)
        if not self.walk:
            raise GeometryError("empty walk")
        verts = [chart.vertex_of(d) for d in self.walk]
        for i, d in enumerate(self.walk):
            far = chart.vertex_of(mate(d))
            if far != verts[(i + 1) % len(verts)]:
                raise GeometryError(f"walk breaks between {d} and the next dart")
        self.wall_edges = [edge_of(d) for d in self.walk]
        if len(set(self.wall_edges)) != len(self.wall_edges):
            raise GeometryError("walk repeats an edge")
        if len(set(verts)) != len(verts):
            raise GeometryError("walk repeats a vertex")
        self.walk_vertices = verts
        self.wall_set = set(self.wall_edges)
        self.inside_classes = _inside_classes(chart, self.wall_set)
        if not self.inside_classes:
            raise GeometryError("walk does not separate the plane")
        self.inside_edges = {
            e for e in chart.edge_label
            if e not in self.wall_set
            and chart.global_face(dart(e, "-")) in self.inside_classes}
        boundary = set(self.walk_vertices)
        incident = {v for e in self.inside_edges for v in chart.endpoints[e]}
        self.interior_vertices = incident - boundary
        self.closure_vertices = incident | boundary

    def contains_edge(self, e, closed=False):
        if e in self.wall_set:
            return bool(closed)
        return e in self.inside_edges

    def dart_points_inside(self, d):
        """For a non-wall dart at a walk vertex: does its edge hang inside?"""
        return edge_of(d) in self.inside_edges

    def interior_whites(self):
        return [v for v in sorted(self.interior_vertices)
                if self.chart.vertex_kind[v] == "white"]


def _inside_classes(chart: Chart, wall_set):
    adj = {}
    for e in chart.edge_label:
        if e in wall_set:
            continue
        a = chart.global_face(dart(e, "-"))
        b = chart.global_face(dart(e, "+"))
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    all_classes = set(chart.face_class.values())
    all_classes.add(chart.outer_class)
    seen = {chart.outer_class}
    stack = [chart.outer_class]
    while stack:
        c = stack.pop()
        for nxt in adj.get(c, ()):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return all_classes - seen


def region_bounded_by(chart: Chart, walk) -> Region:
    return Region(chart, walk)
