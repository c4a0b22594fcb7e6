"""Rotation-system (combinatorial map) engine.

A dart is the string "<edge>:+" or "<edge>:-".  The "+" dart lives at the
edge's head vertex (the arrow points into that vertex), the "-" dart at the
tail.  Each vertex carries a counterclockwise cyclic list of its darts; face
walks are orbits of phi = sigma o alpha where alpha swaps the two darts of an
edge and sigma steps counterclockwise around a vertex.

Conventions used throughout the package:

* orbit(d) is the face on the clockwise side of dart d, i.e. the corner
  between sigma^-1(d) and d belongs to orbit(d); the corner between d and
  sigma(d) belongs to orbit(sigma(d)).
* traversing an edge away from vertex(d) (in face-walk direction), the face
  on the traversal's one fixed side is orbit(d).  Tests pin the geometry.
"""

from __future__ import annotations

from .errors import EmbeddingError, StructureError


def dart(edge_id: str, sign: str) -> str:
    return edge_id + ":" + sign


def edge_of(d: str) -> str:
    return d.rsplit(":", 1)[0]


def sign_of(d: str) -> str:
    return d[-1]


def is_head(d: str) -> bool:
    return d.endswith("+")


def mate(d: str) -> str:
    """The other dart of the same edge (the alpha involution)."""
    e, s = d.rsplit(":", 1)
    return e + (":-" if s == "+" else ":+")


class UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x

    def find(self, x):
        self.add(x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


class Embedding:
    """Faces, components and corner structure of a rotation system.

    rotation: vertex id -> ccw list of darts.
    endpoints: edge id -> (tail vertex, head vertex).

    Every component must individually satisfy V - E + F = 2 (sphere),
    otherwise EmbeddingError is raised.
    """

    def __init__(self, rotation: dict, endpoints: dict):
        self.rotation = rotation
        self.endpoints = endpoints
        self.dart_vertex = {}
        for eid, (tail, head) in endpoints.items():
            self.dart_vertex[dart(eid, "-")] = tail
            self.dart_vertex[dart(eid, "+")] = head

        seen = {}
        self.sigma = {}
        self.sigma_inv = {}
        for v, darts in rotation.items():
            for d in darts:
                if d in seen:
                    raise StructureError(f"dart {d} listed twice (at {seen[d]} and {v})")
                seen[d] = v
                if d not in self.dart_vertex:
                    raise StructureError(f"dart {d} does not match any declared edge end")
                if self.dart_vertex[d] != v:
                    raise StructureError(
                        f"dart {d} belongs to vertex {self.dart_vertex[d]} but is listed at {v}")
            k = len(darts)
            for i, d in enumerate(darts):
                self.sigma[d] = darts[(i + 1) % k]
                self.sigma_inv[darts[(i + 1) % k]] = d
        for d in self.dart_vertex:
            if d not in seen:
                raise StructureError(f"dart {d} missing from the rotation of {self.dart_vertex[d]}")

        self._build_faces()
        self._build_components()
        self._check_genus()

    # -- faces -------------------------------------------------------------

    def phi(self, d: str) -> str:
        return self.sigma[mate(d)]

    def _build_faces(self):
        self.faces = []
        self.face_of = {}
        visited = set()
        for d0 in sorted(self.sigma):
            if d0 in visited:
                continue
            orbit = []
            d = d0
            while True:
                orbit.append(d)
                visited.add(d)
                d = self.phi(d)
                if d == d0:
                    break
            idx = len(self.faces)
            self.faces.append(tuple(orbit))
            for d in orbit:
                self.face_of[d] = idx

    def corner_face(self, d: str) -> int:
        """Face of the corner between d and sigma(d), going ccw."""
        return self.face_of[self.sigma[d]]

    def edge_sides(self, eid: str):
        """The (cw-of-minus, cw-of-plus) face pair flanking an edge."""
        return self.face_of[dart(eid, "-")], self.face_of[dart(eid, "+")]

    # -- components ---------------------------------------------------------

    def _build_components(self):
        uf = UnionFind()
        for v in self.rotation:
            uf.add(v)
        for eid, (tail, head) in self.endpoints.items():
            uf.union(tail, head)
        groups = {}
        for v in self.rotation:
            groups.setdefault(uf.find(v), set()).add(v)
        comps = sorted(groups.values(), key=lambda g: min(g))
        self.components = comps
        self.component_of = {}
        for i, g in enumerate(comps):
            for v in g:
                self.component_of[v] = i
        self.component_key = [min(g) for g in comps]

    def component_of_dart(self, d: str) -> int:
        return self.component_of[self.dart_vertex[d]]

    def _check_genus(self):
        nv = [0] * len(self.components)
        ne = [0] * len(self.components)
        nf = [0] * len(self.components)
        for v in self.rotation:
            nv[self.component_of[v]] += 1
        for eid, (tail, _head) in self.endpoints.items():
            ne[self.component_of[tail]] += 1
        for orbit in self.faces:
            nf[self.component_of_dart(orbit[0])] += 1
        for i, key in enumerate(self.component_key):
            # isolated vertices are rejected upstream, so nf > 0 here
            if nv[i] - ne[i] + nf[i] != 2:
                raise EmbeddingError(
                    f"component {key}: V-E+F = {nv[i]}-{ne[i]}+{nf[i]} != 2, not planar")


def resolve_global_faces(emb: Embedding, placement: dict):
    """Merge per-component face orbits into global plane faces.

    placement maps component key -> (container, outer_dart) where container is
    "outer" or a dart of another component, and outer_dart designates the
    component's outward local face (None allowed when the component has a
    single face).  Returns (face_class, outer_class): face_class maps local
    face index -> representative int, outer_class is the representative of the
    unbounded face.  The virtual index -1 stands for the empty plane.

    Raises EmbeddingError on missing/cyclic/inconsistent placement data.
    """
    uf = UnionFind()
    uf.add(-1)
    for i in range(len(emb.faces)):
        uf.add(i)

    key_to_idx = {k: i for i, k in enumerate(emb.component_key)}
    deps = {}
    for i, key in enumerate(emb.component_key):
        if key not in placement:
            raise EmbeddingError(f"component {key} has no placement")
        container, outer_dart = placement[key]
        if outer_dart is None:
            local = {emb.face_of[d] for v in emb.components[i] for d in emb.rotation[v]}
            if len(local) != 1:
                raise EmbeddingError(
                    f"component {key} has {len(local)} faces; outer dart required")
            outer = next(iter(local))
        else:
            if outer_dart not in emb.dart_vertex or emb.component_of_dart(outer_dart) != i:
                raise EmbeddingError(f"outer dart {outer_dart!r} is not in component {key}")
            outer = emb.face_of[outer_dart]
        if container == "outer":
            uf.union(-1, outer)
            deps[i] = None
        else:
            if container not in emb.dart_vertex:
                raise EmbeddingError(f"container dart {container!r} of {key} does not exist")
            host = emb.component_of_dart(container)
            if host == i:
                raise EmbeddingError(f"component {key} placed inside itself")
            uf.union(emb.face_of[container], outer)
            deps[i] = host

    # placement dependencies must form a forest rooted at "outer"
    for i in range(len(emb.component_key)):
        seen = set()
        j = i
        while j is not None:
            if j in seen:
                raise EmbeddingError(
                    f"cyclic placement through component {emb.component_key[i]}")
            seen.add(j)
            j = deps[j]

    face_class = {i: uf.find(i) for i in range(len(emb.faces))}
    return face_class, uf.find(-1)
