from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial import ConvexHull

from hullwalk.geometry import (
    DegenerateError,
    IllConditionedError,
    PointSet,
    count_faces,
    is_face,
    is_vertex,
    orthocomplement_basis,
    origin_in_hull,
    phase_one,
)

SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])


def gaussian_path(rng, n, d):
    return np.vstack([np.zeros((1, d)), np.cumsum(rng.standard_normal((n, d)), axis=0)])


# -- origin in hull ---------------------------------------------------------------


def test_origin_in_hull_one_dimensional():
    assert origin_in_hull(PointSet([[1.0], [-1.0]]))
    assert not origin_in_hull(PointSet([[1.0], [2.0]]))
    assert not origin_in_hull(PointSet([[3.0, -1.0]]))
    assert not origin_in_hull(np.array([[1.0]]))


def test_origin_in_hull_planar():
    tri = np.array([[1.0, 0.0], [-1.0, 1.0], [-1.0, -1.0]])
    assert origin_in_hull(tri)
    assert not origin_in_hull(tri + [3.0, 0.0])
    # origin on an edge counts as inside
    assert origin_in_hull(np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0]]))


def test_origin_in_hull_rejects_nonpositive_eps():
    with pytest.raises(ValueError):
        origin_in_hull(SQUARE, eps=0.0)


def test_origin_in_hull_gray_zone():
    # origin 1e-7 (relative) away from a segment endpoint: too close to call
    with pytest.raises(IllConditionedError):
        origin_in_hull(np.array([[1e-7, 0.0], [1.0, 0.0]]))


@pytest.mark.parametrize("d", [2, 3, 4])
def test_origin_in_hull_matches_qhull(d):
    rng = np.random.default_rng(100 + d)
    for _ in range(150):
        pts = rng.standard_normal((d + 4, d)) + rng.normal(scale=0.8, size=d)
        hull = ConvexHull(pts)
        inside = bool(np.all(hull.equations[:, -1] <= 0))
        assert origin_in_hull(pts) == inside


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_origin_in_hull_invariant_under_permutation_and_rotation(seed):
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((6, 3)) + rng.normal(scale=0.7, size=3)
    q, _ = np.linalg.qr(rng.standard_normal((3, 3)))
    base = origin_in_hull(pts)
    assert origin_in_hull(pts[rng.permutation(6)]) == base
    assert origin_in_hull(pts @ q.T) == base


def test_phase_one_reports():
    rep = phase_one([[1.0, 1.0]], [1.0])
    assert rep.feasible and rep.margin is not None
    rep = phase_one([[1.0, 1.0]], [-1.0])
    assert not rep.feasible and rep.margin is None and rep.residual > 0


# -- vertices and faces -------------------------------------------------------------


def test_is_vertex_examples():
    assert all(is_vertex(i, SQUARE) for i in range(4))
    with_center = np.vstack([SQUARE, [[0.5, 0.5]]])
    assert not is_vertex(4, with_center)
    collinear = np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]])
    assert not is_vertex(1, collinear)
    assert is_vertex(0, collinear)
    with pytest.raises(IndexError):
        is_vertex(5, SQUARE)


def test_is_face_examples():
    tri = np.array([[0.0, 0.0], [2.0, 0.0], [0.0, 2.0]])
    for pair in combinations(range(3), 2):
        assert is_face(tri, pair)
    inner = np.vstack([tri, [[0.5, 0.5]]])
    assert not is_face(inner, (0, 3))
    assert not is_face(inner, (3,))
    line = np.array([[0.3], [2.0], [-1.0], [1.1]])
    assert is_face(line, (1,))
    assert not is_face(line, (3,))


def test_is_face_degenerate_selection_is_an_error():
    pts = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [2.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    with pytest.raises(DegenerateError):
        is_face(pts, (0, 1, 2))


def test_is_face_argument_checks():
    with pytest.raises(ValueError):
        is_face(SQUARE, (0, 1, 2))
    with pytest.raises(ValueError):
        is_face(SQUARE, (0, 0))
    with pytest.raises(ValueError):
        is_face(SQUARE, (0, 9))


@pytest.mark.parametrize("d", [2, 3])
def test_facets_and_vertices_match_qhull(d):
    rng = np.random.default_rng(7 * d)
    for _ in range(25):
        pts = gaussian_path(rng, 7, d)
        hull = ConvexHull(pts)
        verts = set(hull.vertices.tolist())
        facets = {tuple(sorted(s)) for s in hull.simplices.tolist()}
        for i in range(len(pts)):
            assert is_vertex(i, pts) == (i in verts)
            assert is_face(pts, (i,)) == (i in verts)
        for s in combinations(range(len(pts)), d):
            assert is_face(pts, s) == (s in facets)
        if d == 3:
            edges = {tuple(sorted(e)) for f in facets for e in combinations(f, 2)}
            for e in combinations(range(len(pts)), 2):
                assert is_face(pts, e) == (e in edges)


def test_count_faces_examples():
    assert count_faces(SQUARE + 0.1, 0) == 4
    assert count_faces(SQUARE + 0.1, 1) == 4
    rng = np.random.default_rng(1)
    assert count_faces(rng.standard_normal((9, 1)), 0) == 2
    with pytest.raises(ValueError):
        count_faces(rng.standard_normal((60, 3)), 2, max_subsets=1000)


def test_planar_paths_are_polygons():
    rng = np.random.default_rng(3)
    for n in range(2, 11):
        pts = gaussian_path(rng, n, 2)
        f0, f1 = count_faces(pts, 0), count_faces(pts, 1)
        assert f0 == f1 >= 3


def test_euler_relation_and_simpliciality():
    rng = np.random.default_rng(4)
    for _ in range(20):
        pts = gaussian_path(rng, 6, 3)
        f = [count_faces(pts, k) for k in range(3)]
        assert f[0] - f[1] + f[2] == 2
        for tri in combinations(range(7), 3):
            if is_face(pts, tri):
                assert all(is_face(pts, e) for e in combinations(tri, 2))
                assert all(is_face(pts, (v,)) for v in tri)


# -- orthogonal complements ---------------------------------------------------------


def test_orthocomplement_examples():
    B = orthocomplement_basis([[1.0, 0.0, 0.0]])
    assert B.shape == (2, 3)
    assert np.allclose(B @ B.T, np.eye(2), atol=1e-12)
    assert np.allclose(B[:, 0], 0.0, atol=1e-12)
    B = orthocomplement_basis([[1.0, 1.0]])
    assert np.allclose(np.abs(B), [[1 / np.sqrt(2), 1 / np.sqrt(2)]])
    assert B[0, 0] * B[0, 1] < 0
    assert np.array_equal(orthocomplement_basis([], 3), np.eye(3))


def test_orthocomplement_rank_deficiency():
    with pytest.raises(DegenerateError):
        orthocomplement_basis([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0]])


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6), st.data())
def test_orthocomplement_properties(dim, data):
    r = data.draw(st.integers(0, dim))
    seed = data.draw(st.integers(0, 2**32 - 1))
    V = np.random.default_rng(seed).standard_normal((r, dim))
    B = orthocomplement_basis(V, dim)
    assert B.shape == (dim - r, dim)
    assert np.allclose(B @ B.T, np.eye(dim - r), atol=1e-10)
    if r:
        assert np.allclose(V @ B.T, 0.0, atol=1e-9)


def test_pointset_validation():
    ps = PointSet([1.0, 2.0, 3.0])
    assert ps.dim == 1 and len(ps) == 3
    assert ps.scale == 3.0
    with pytest.raises(ValueError):
        PointSet(np.zeros((0, 2)))
