import pytest

from chartkit.embedding import (Embedding, dart, edge_of, is_head, mate,
                                resolve_global_faces)
from chartkit.errors import EmbeddingError, StructureError


def segment():
    # one edge a: u -> v
    rot = {"u": ["a:-"], "v": ["a:+"]}
    ends = {"a": ("u", "v")}
    return Embedding(rot, ends)


def theta():
    # two vertices joined by three parallel edges a, b, c (all u -> v).
    # At u the ccw order is a,b,c; at v it is reversed, as drawn in the plane.
    rot = {"u": ["a:-", "b:-", "c:-"], "v": ["c:+", "b:+", "a:+"]}
    ends = {"a": ("u", "v"), "b": ("u", "v"), "c": ("u", "v")}
    return Embedding(rot, ends)


def test_dart_helpers():
    d = dart("e1", "+")
    assert d == "e1:+"
    assert edge_of(d) == "e1"
    assert is_head(d) and not is_head(mate(d))
    assert mate(mate(d)) == d
    assert edge_of("a.b:weird:-") == "a.b:weird"


def test_single_edge_has_one_face():
    emb = segment()
    assert len(emb.faces) == 1
    assert set(emb.faces[0]) == {"a:-", "a:+"}


def test_theta_faces_and_corner_convention():
    emb = theta()
    assert len(emb.faces) == 3
    # Euler check: 2 - 3 + 3 = 2
    # face on the cw side of a:- is the orbit of a:-; phi(a:-) = sigma(a:+)
    face_a = emb.faces[emb.face_of["a:-"]]
    assert set(face_a) == {"a:-", "c:+"}
    assert set(emb.faces[emb.face_of["b:-"]]) == {"b:-", "a:+"}
    assert set(emb.faces[emb.face_of["c:-"]]) == {"c:-", "b:+"}
    # corner between a:- and its ccw successor b:- belongs to b:-'s orbit
    assert emb.corner_face("a:-") == emb.face_of["b:-"]


def test_rotation_errors():
    with pytest.raises(StructureError):
        Embedding({"u": ["a:-", "a:-"], "v": ["a:+"]}, {"a": ("u", "v")})
    with pytest.raises(StructureError):
        Embedding({"u": ["a:+"], "v": ["a:-"]}, {"a": ("u", "v")})  # swapped ends
    with pytest.raises(StructureError):
        Embedding({"u": ["a:-"]}, {"a": ("u", "v")})  # v missing entirely
    with pytest.raises(StructureError):
        Embedding({"u": ["a:-"], "v": []}, {"a": ("u", "v")})  # dangling a:+


def test_nonplanar_rotation_rejected():
    # K4 with an odd rotation twist has genus 1: V-E+F = 4-6+2 = 0
    rot = {
        "1": ["a:-", "b:-", "c:-"],
        "2": ["a:+", "d:-", "e:-"],
        "3": ["b:+", "e:+", "f:-"],
        "4": ["c:+", "d:+", "f:+"],
    }
    ends = {"a": ("1", "2"), "b": ("1", "3"), "c": ("1", "4"),
            "d": ("2", "4"), "e": ("2", "3"), "f": ("3", "4")}
    with pytest.raises(EmbeddingError):
        Embedding(rot, ends)
    # rotations read off a straight-line drawing (1 inside triangle 2-3-4)
    rot = {
        "1": ["b:-", "c:-", "a:-"],
        "2": ["e:-", "a:+", "d:-"],
        "3": ["f:-", "b:+", "e:+"],
        "4": ["d:+", "c:+", "f:+"],
    }
    emb = Embedding(rot, ends)
    assert len(emb.faces) == 4
    assert set(emb.faces[emb.face_of["e:-"]]) == {"e:-", "f:-", "d:+"}


def two_segments():
    rot = {"u": ["a:-"], "v": ["a:+"], "x": ["b:-"], "y": ["b:+"]}
    ends = {"a": ("u", "v"), "b": ("x", "y")}
    return Embedding(rot, ends)


def test_components():
    emb = two_segments()
    assert emb.component_key == ["u", "x"]
    assert emb.component_of["y"] == 1


def test_global_faces_side_by_side():
    emb = two_segments()
    fc, outer = resolve_global_faces(
        emb, {"u": ("outer", None), "x": ("outer", None)})
    assert fc[emb.face_of["a:-"]] == outer
    assert fc[emb.face_of["b:-"]] == outer


def test_global_faces_nested():
    # theta with a segment floating inside the a/b bigon
    rot = {"u": ["a:-", "b:-", "c:-"], "v": ["c:+", "b:+", "a:+"],
           "x": ["s:-"], "y": ["s:+"]}
    ends = {"a": ("u", "v"), "b": ("u", "v"), "c": ("u", "v"),
            "s": ("x", "y")}
    emb = Embedding(rot, ends)
    fc, outer = resolve_global_faces(
        emb, {"u": ("outer", "c:-"), "x": ("a:-", None)})
    assert fc[emb.face_of["c:-"]] == outer
    assert fc[emb.face_of["s:-"]] == fc[emb.face_of["a:-"]]
    assert fc[emb.face_of["a:-"]] != outer

    with pytest.raises(EmbeddingError):
        resolve_global_faces(emb, {"u": ("outer", "c:-")})
    with pytest.raises(EmbeddingError):
        resolve_global_faces(emb, {"u": ("outer", None), "x": ("a:-", None)})
    with pytest.raises(EmbeddingError):
        resolve_global_faces(emb, {"u": ("s:-", "c:-"), "x": ("a:-", None)})
