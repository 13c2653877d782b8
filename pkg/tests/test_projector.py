import math

import numpy as np
import pytest
from scipy.optimize import linprog

from conftest import random_simplex_in_cube
from optinterp.constructions import catalog, regular_simplex_in_ball
from optinterp.errors import EmptyVertexSet, SimplexNotInBody, TooManySignVectors
from optinterp.geometry import Ball, Cube, PointCloud, Simplex, VertexPolytope, axial_diameter, cube_vertices
from optinterp.projector import (
    Projector,
    absorption,
    alpha,
    circumscribed_check,
    maxvol_norm_bound_check,
    norm,
    norm_over_ball,
    norm_over_vertex_set,
    sandwich_check,
    xi,
)

CORNER = Simplex([[0, 0], [1, 0], [0, 1]])
GOLDEN = 2 * math.sqrt(5) / 5 + 1


def brute_norm(s, pts):
    lam = np.hstack([pts, np.ones((len(pts), 1))]) @ np.linalg.inv(
        np.hstack([s.vertices, np.ones((s.n + 1, 1))])
    )
    return np.abs(lam).sum(axis=1).max()


def test_corner_triangle_norm_and_witness():
    rep = norm_over_vertex_set(CORNER, cube_vertices(2))
    assert rep.value == pytest.approx(3)
    np.testing.assert_array_equal(rep.witness_point, [1, 1])
    np.testing.assert_array_equal(rep.witness_signs, [-1, 1, 1])


def test_catalog_norms():
    assert norm(catalog("golden_triangle"), Cube(2)).value == pytest.approx(GOLDEN, abs=1e-12)
    assert norm(catalog("S_prime_3"), Cube(3)).value == pytest.approx(2, abs=1e-12)
    assert norm(catalog("S_doubleprime_3"), Cube(3)).value == pytest.approx(2, abs=1e-12)
    assert norm(catalog("hadamard_7"), Cube(7)).value == pytest.approx(2.5, abs=1e-12)


def test_cube_norm_matches_flat_enumeration(rng):
    for n in (1, 2, 5, 9, 17):
        s = random_simplex_in_cube(rng, n, min_det=1e-6)
        rep = norm(s, Cube(n))
        assert rep.value == pytest.approx(brute_norm(s, cube_vertices(n)), rel=1e-12)
        assert float(rep.witness_signs @ Projector.from_simplex(s).system(rep.witness_point)) == pytest.approx(rep.value)


def test_empty_vertex_set():
    with pytest.raises(EmptyVertexSet):
        norm_over_vertex_set(CORNER, np.zeros((0, 2)))


def test_ball_norm_examples():
    assert norm(regular_simplex_in_ball(3), Ball(3)).value == pytest.approx(2, abs=1e-12)
    assert norm(regular_simplex_in_ball(2), Ball(2)).value == pytest.approx(5 / 3, abs=1e-12)
    s = random_simplex_in_cube(np.random.default_rng(1), 3)
    tiny = Ball(3, s.centroid(), 1e-9)
    assert norm(s, tiny).value == pytest.approx(1.0, abs=1e-6)


def test_ball_norm_against_sampling(rng):
    ball = Ball(3, [0.1, -0.2, 0.3], 1.3)
    s = Simplex(ball.center + 0.5 * rng.normal(size=(4, 3)))
    rep = norm_over_ball(s, ball)
    d = rng.normal(size=(200000, 3))
    pts = ball.center + ball.radius * d / np.linalg.norm(d, axis=1, keepdims=True)
    sampled = brute_norm(s, pts)
    assert sampled <= rep.value + 1e-12
    assert sampled == pytest.approx(rep.value, rel=1e-3)
    assert np.linalg.norm(rep.witness_point - ball.center) == pytest.approx(ball.radius)
    lam = Projector.from_simplex(s).system(rep.witness_point)
    assert float(np.abs(lam).sum()) == pytest.approx(rep.value, abs=1e-9)


def test_ball_norm_cap():
    with pytest.raises(TooManySignVectors):
        norm_over_ball(regular_simplex_in_ball(26), Ball(26))


def test_norm_is_one_on_its_own_simplex():
    s = Simplex([[0, 0], [2, 0], [0, 3]])
    assert norm(s, VertexPolytope(s.vertices)).value == pytest.approx(1.0)
    assert xi(VertexPolytope(s.vertices), s) == 1.0
    assert alpha(VertexPolytope(s.vertices), s) == pytest.approx(1.0)
    assert circumscribed_check(VertexPolytope(s.vertices), s)


def test_point_cloud_norm():
    pts = [[0, 0], [1, 0], [0, 1], [1, 1], [0.5, 0.5]]
    assert norm(CORNER, PointCloud(pts)).value == pytest.approx(3)


def test_invariance_under_translation_and_permutation(rng):
    s = random_simplex_in_cube(rng, 3)
    base = norm(s, Cube(3)).value
    assert norm(Simplex(s.vertices[[2, 0, 3, 1]]), Cube(3)).value == pytest.approx(base, rel=1e-12)
    shift = np.array([5.0, -1.0, 2.0])
    poly = VertexPolytope(cube_vertices(3) + shift)
    assert norm(Simplex(s.vertices + shift), poly).value == pytest.approx(base, rel=1e-9)
    assert xi(poly, Simplex(s.vertices + shift)) == pytest.approx(xi(Cube(3), s), rel=1e-9)


def test_absorption_examples():
    assert xi(Cube(2), CORNER) == pytest.approx(4)
    assert alpha(Cube(2), CORNER) == pytest.approx(2)
    assert not circumscribed_check(Cube(2), CORNER)
    assert alpha(Cube(3), catalog("S_prime_3")) == pytest.approx(3)
    assert xi(Cube(3), catalog("S_prime_3")) == pytest.approx(3)
    for n in range(1, 11):
        rep = absorption(Ball(n), regular_simplex_in_ball(n))
        assert rep.xi == pytest.approx(n, abs=1e-9)
        assert rep.circumscribed


def test_alpha_equals_inverse_axial_diameters(rng):
    for n in range(1, 7):
        for _ in range(5):
            s = random_simplex_in_cube(rng, n)
            rep = absorption(Cube(n), s)
            assert rep.alpha <= rep.xi + 1e-9
            inv = sum(1 / axial_diameter(s, i) for i in range(n))
            assert rep.alpha == pytest.approx(inv, abs=1e-9)


def test_xi_requires_nodes_in_body():
    with pytest.raises(SimplexNotInBody):
        xi(Cube(2), Simplex([[0, 0], [2, 0], [0, 1]]))


def test_sandwich_examples():
    assert sandwich_check(3, 4, 2)
    assert sandwich_check(2.5, 7, 7)
    assert sandwich_check(1, 1, 5)
    assert not sandwich_check(3, 4.5, 2)


def test_sandwich_on_random_simplices(rng):
    for n in range(2, 6):
        for _ in range(100):
            s = random_simplex_in_cube(rng, n)
            assert sandwich_check(norm(s, Cube(n)).value, xi(Cube(n), s), n)


def test_maxvol_norm_bound():
    assert maxvol_norm_bound_check(Cube(3))
    assert maxvol_norm_bound_check(Cube(1))
    for n in range(1, 11):
        chk = maxvol_norm_bound_check(Ball(n))
        assert chk and chk.xi == pytest.approx(n)


def _best_linear(f_vals, pts):
    """Uniform best linear approximation error on a finite grid, by LP."""
    m, n = pts.shape
    # variables: a (n), c, t ; minimise t
    A = np.hstack([pts, np.ones((m, 1))])
    A_ub = np.vstack([np.hstack([A, -np.ones((m, 1))]), np.hstack([-A, -np.ones((m, 1))])])
    b_ub = np.concatenate([f_vals, -f_vals])
    res = linprog(np.r_[np.zeros(n + 1), 1.0], A_ub=A_ub, b_ub=b_ub, bounds=[(None, None)] * (n + 2))
    return res.fun


def test_lebesgue_inequality_spot_check():
    s = catalog("golden_triangle")
    g = np.linspace(0, 1, 41)
    pts = np.vstack([np.array(np.meshgrid(g, g)).reshape(2, -1).T, s.vertices])
    f = lambda x: (x**2).sum(axis=-1)  # noqa: E731
    lam = Projector.from_simplex(s).system(pts)
    err = np.abs(f(pts) - lam @ f(s.vertices)).max()
    p = norm(s, Cube(2)).value
    assert err <= (1 + p) * _best_linear(f(pts), pts) + 1e-12
