import json

import numpy as np
import pytest

from optinterp.constructions import catalog
from optinterp.errors import DimensionMismatch, DomainError
from optinterp.geometry import Ball, Cube, PointCloud, VertexPolytope
from optinterp.serialize import body_from_dict, body_to_dict, dumps, load_body, load_simplex, simplex_from_dict, simplex_to_dict


def test_simplex_round_trip(tmp_path):
    s = catalog("golden_triangle")
    d = json.loads(dumps(s))
    assert d["n"] == 2
    np.testing.assert_array_equal(simplex_from_dict(d).vertices, s.vertices)
    p = tmp_path / "s.json"
    p.write_text(dumps(s))
    np.testing.assert_array_equal(load_simplex(p).vertices, s.vertices)


def test_body_formats(tmp_path):
    assert body_to_dict(Cube(3)) == {"body": "cube", "n": 3}
    b = body_from_dict({"body": "ball", "n": 2, "center": [0.5, 0.25], "radius": 2})
    assert isinstance(b, Ball) and b.radius == 2.0
    np.testing.assert_array_equal(b.center, [0.5, 0.25])
    assert body_to_dict(b) == {"body": "ball", "n": 2, "center": [0.5, 0.25], "radius": 2.0}
    poly = body_from_dict({"n": 2, "vertices": [[0, 0], [1, 0], [0, 1]]})
    assert isinstance(poly, VertexPolytope)
    cloud = body_from_dict(body_to_dict(PointCloud([[0, 1], [2, 3]])))
    assert isinstance(cloud, PointCloud)
    p = tmp_path / "b.json"
    p.write_text(dumps(Cube(4)))
    assert load_body(p) == Cube(4)


def test_bad_documents():
    with pytest.raises(DimensionMismatch):
        simplex_from_dict({"n": 3, "vertices": [[0, 0], [1, 0], [0, 1]]})
    with pytest.raises(DomainError):
        simplex_from_dict({"n": 2})
    with pytest.raises(DomainError):
        body_from_dict({"body": "torus", "n": 2})


def test_floats_round_trip_exactly():
    v = np.random.default_rng(0).random((4, 3))
    from optinterp.geometry import Simplex

    back = simplex_from_dict(json.loads(dumps(Simplex(v))))
    assert np.array_equal(back.vertices, v)
    assert simplex_to_dict(back)["vertices"] == v.tolist()
