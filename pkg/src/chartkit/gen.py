"""Seeded random chart generators.

Each generator returns (chart, plan): a validated chart plus the structural
counts fixed while building it, so census code can be checked against
numbers obtained without running the census.

random_component grows one connected label-1 component: vertex-disjoint
cycles strung together by trees, every junction a single bridging edge and
every label-2 edge a terminal hair.  The cycle/tree incidence structure is
itself a tree, which pins the whole attachment bookkeeping at build time.

random_disk grows one white boundary cycle of label 2 plus a non-crossing
label-2 forest spreading inward from a chosen subset of boundary whites.
Interior whites always carry three internal edges, so the closed disk never
holds a terminal edge of the wall label.
"""

from __future__ import annotations

import random
from collections import Counter

from .errors import StructureError
from .fixtures import Builder

# The three same-label darts at even slots pin the white's phase (the three
# consecutive inward slots); the odd slots then have no freedom left.
_PHASE = {
    ("+", "+", "-"): ("+", "-", "-"),
    ("-", "+", "-"): ("+", "+", "-"),
    ("-", "+", "+"): ("-", "+", "-"),
    ("-", "-", "+"): ("-", "+", "+"),
    ("+", "-", "+"): ("-", "-", "+"),
    ("+", "-", "-"): ("+", "-", "+"),
}

_FLIP = {"+": "-", "-": "+"}


def forced_hair_signs(m_signs):
    """Directions of the odd-slot darts once the even-slot ones are fixed."""
    try:
        return _PHASE[tuple(m_signs)]
    except KeyError:
        raise StructureError(
            f"even-slot darts must not all point one way: {m_signs}"
        ) from None


def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _assemble(n, triple, hair_label, outer_white, labels):
    """Interleave the forced hairs between the even-slot darts and build.

    triple maps each white to its three [edge, sign] entries in rotation
    order; the outer face is taken at the last hair of outer_white, which
    for every white shape used here lies outside all bounded cycles.
    """
    b = Builder(n)
    rows = {}
    for w, entries in triple.items():
        ks = forced_hair_signs(tuple(s for _e, s in entries))
        row = []
        for ix, (e, s) in enumerate(entries):
            h = f"k.{w}.{ix}"
            labels[h] = hair_label(w)
            row.append(f"{e}:{s}")
            row.append(f"{h}:{ks[ix]}")
        rows[w] = row
        b.white(w, row)
    b.outer(rows[outer_white][5])
    return b.build(labels)


def random_component(seed):
    """One connected label-1 component assembled from a random unit tree.

    Returns (chart, plan).  The plan holds d, p, h and the two attachment
    histograms (sparse dicts) the chart was built to realize; q is always 0
    since the chart is taken whole, with no surrounding tangle.
    """
    rng = _rng(seed)
    disks, trees = [], []
    if rng.random() < 0.08:
        trees.append({"disks": []})
    else:
        disks.append({"trees": []})
        for _ in range(rng.randint(0, 6)):
            if trees and rng.random() < 0.45:
                tr = rng.randrange(len(trees))
                disks.append({"trees": [tr]})
                trees[tr]["disks"].append(len(disks) - 1)
            else:
                dk = rng.randrange(len(disks))
                trees.append({"disks": [dk]})
                disks[dk]["trees"].append(len(trees) - 1)

    triple = {}   # white -> [[edge, sign], ...] for rotation slots 0, 2, 4
    ends = {}     # edge -> [(white, slot index)] among white slots
    labels = {}

    def slot(w, ix, e):
        triple[w][ix][0] = e
        ends.setdefault(e, []).append((w, ix))

    open_ports = {}
    for i, dk in enumerate(disks):
        a = len(dk["trees"])
        c = max(a, 1) + (rng.randint(1, 3) if rng.random() < 0.55 else 0)
        whites = [f"d{i}w{j}" for j in range(c)]
        dk["whites"] = whites
        if c == 1:
            e = f"d{i}e0"
            labels[e] = 1
            triple[whites[0]] = [[e, "-"], [e, "+"], [None, None]]
            ends[e] = [(whites[0], 0), (whites[0], 1)]
        else:
            for j, w in enumerate(whites):
                triple[w] = [[f"d{i}e{(j - 1) % c}", "+"],
                             [f"d{i}e{j}", "-"], [None, None]]
            for j in range(c):
                e = f"d{i}e{j}"
                labels[e] = 1
                ends[e] = [(whites[j], 1), (whites[(j + 1) % c], 0)]
        open_ports[i] = [whites[j] for j in rng.sample(range(c), a)]

    for j, tr in enumerate(trees):
        a = len(tr["disks"])
        if a == 2 and rng.random() < 0.4:
            # a bare bridging edge between two disk whites
            e = f"c{j}"
            labels[e] = 1
            for i in tr["disks"]:
                ports = open_ports[i]
                slot(ports.pop(rng.randrange(len(ports))), 2, e)
            tr["whites"] = []
            continue
        wn = max(1, a - 2) + rng.randint(0, 2)
        whites = [f"t{j}w{k}" for k in range(wn)]
        tr["whites"] = whites
        free = []
        for k, w in enumerate(whites):
            triple[w] = [[None, None], [None, None], [None, None]]
            if k:
                pu, pi = free.pop(rng.randrange(len(free)))
                e = f"t{j}i{k}"
                labels[e] = 1
                slot(pu, pi, e)
                slot(w, 0, e)
                free += [(w, 1), (w, 2)]
            else:
                free += [(w, 0), (w, 1), (w, 2)]
        for i in tr["disks"]:
            e = f"c{j}.{i}"
            labels[e] = 1
            su, si = free.pop(rng.randrange(len(free)))
            slot(su, si, e)
            ports = open_ports[i]
            slot(ports.pop(rng.randrange(len(ports))), 2, e)
        for su, si in free:
            e = f"h.{su}.{si}"
            labels[e] = 1
            slot(su, si, e)

    for i, dk in enumerate(disks):
        for j, w in enumerate(dk["whites"]):
            if triple[w][2][0] is None:
                e = f"d{i}s{j}"
                labels[e] = 1
                slot(w, 2, e)

    def orient(w):
        # fix the still-unsigned darts; the last one breaks uniformity
        entries = triple[w]
        todo = [ix for ix, (_e, s) in enumerate(entries) if s is None]
        for pos, ix in enumerate(todo):
            done = {s for _e, s in entries if s is not None}
            if pos == len(todo) - 1 and len(done) == 1:
                s = _FLIP[done.pop()]
            else:
                s = rng.choice("+-")
            entries[ix][1] = s
            for u, ui in ends[entries[ix][0]]:
                if (u, ui) != (w, ix):
                    triple[u][ui][1] = _FLIP[s]

    for tr in trees:
        for w in tr["whites"]:
            orient(w)
    for dk in disks:
        for w in dk["whites"]:
            orient(w)

    outer_w = disks[0]["whites"][0] if disks else trees[0]["whites"][0]
    chart = _assemble(3, triple, lambda w: 2, outer_w, labels)
    plan = {"m": 1, "d": len(disks), "p": len(trees),
            "h": sum(len(tr["disks"]) for tr in trees),
            "x": dict(Counter(len(dk["trees"]) for dk in disks)),
            "y": dict(Counter(len(tr["disks"]) for tr in trees))}
    return chart, plan


def random_disk(seed):
    """A single label-2 boundary cycle with a non-crossing inward forest.

    Returns (chart, plan).  The plan holds the wall edges plus the vertex,
    edge, domain and outward-white counts realized inside the disk.
    """
    rng = _rng(seed)
    c = rng.randint(1, 8)
    k_in = rng.randint(2, c) if c >= 2 and rng.random() < 0.75 else 0
    inward = set(rng.sample(range(c), k_in))

    triple, ends, labels = {}, {}, {}
    boundary = [f"v{j}" for j in range(c)]
    if c == 1:
        labels["w0"] = 2
        triple["v0"] = [["w0", "-"], ["w0", "+"], [None, None]]
        ends["w0"] = [("v0", 0), ("v0", 1)]
    else:
        for j, v in enumerate(boundary):
            ein, eout = f"w{(j - 1) % c}", f"w{j}"
            labels[eout] = 2
            if j in inward:
                triple[v] = [[ein, "+"], [None, None], [eout, "-"]]
            else:
                triple[v] = [[ein, "+"], [eout, "-"], [None, None]]

    nedge = 0

    def join(a, b, sa):
        nonlocal nedge
        e = f"q{nedge}"
        nedge += 1
        labels[e] = 2
        (wa, ia), (wb, ib) = a, b
        triple[wa][ia] = [e, sa]
        triple[wb][ib] = [e, _FLIP[sa]]
        ends[e] = [a, b]

    # grow the inside laminarly: only cyclically adjacent dangling slots
    # ever get connected, so the forest cannot cross itself
    pending = [(boundary[j], 1) for j in sorted(inward)]
    interior, ops = [], 0
    while pending:
        p = len(pending)
        if p == 2:
            op = "chord"
        elif p == 3:
            op = rng.choice(["fork", "cap"]) if ops < 8 else "cap"
        elif ops >= 8:
            op = "chord" if p % 2 == 0 else "cap"
        else:
            op = rng.choice(["chord", "fork"] + (["cap"] if p >= 5 else []))
        ops += 1
        i = rng.randrange(p)
        pending = pending[i:] + pending[:i]
        if op == "chord":
            join(pending[0], pending[1], rng.choice("+-"))
            pending = pending[2:]
            continue
        u = f"u{len(interior)}"
        interior.append(u)
        triple[u] = [[None, None], [None, None], [None, None]]
        s = rng.choice("+-")
        # the new white sees the consumed slots in reversed cyclic order
        if op == "fork":
            join((u, 0), pending[1], s)
            join((u, 1), pending[0], _FLIP[s])
            pending = [(u, 2)] + pending[2:]
        else:
            join((u, 0), pending[2], s)
            join((u, 1), pending[1], _FLIP[s])
            join((u, 2), pending[0], rng.choice("+-"))
            pending = pending[3:]

    for j, v in enumerate(boundary):
        if triple[v][2][0] is None:
            e = f"s{j}"
            labels[e] = 2
            triple[v][2] = [e, rng.choice("+-")]
            ends[e] = [(v, 2)]

    pair = {w: rng.choice([1, 3]) for w in boundary + interior}
    chart = _assemble(4, triple, pair.__getitem__, boundary[0], labels)
    plan = {"m": 2, "wall": [f"w{j}" for j in range(c)] if c >= 2 else ["w0"],
            "V": c + len(interior), "E": c + nedge,
            "F": nedge - len(interior) + 1, "w_o": c - k_in,
            "interior": len(interior)}
    return chart, plan
