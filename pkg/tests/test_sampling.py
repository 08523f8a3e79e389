import numpy as np
import pytest

from hullwalk.sampling import (
    SHIFTED,
    BridgeSpec,
    JointSpec,
    WalkSpec,
    chunk_streams,
    joint_increment_matrix,
    make_rng,
    sample_bridge,
    sample_joint,
    sample_nonsymmetric_walk,
    sample_walk,
)


def test_walk_shape_and_start():
    ps = sample_walk(WalkSpec(1, 3), 0)
    assert ps.points.shape == (2, 3)
    assert np.array_equal(ps.points[0], np.zeros(3))


def test_walk_is_deterministic():
    a = sample_walk(WalkSpec(12, 2), 42).points
    b = sample_walk(WalkSpec(12, 2), 42).points
    assert a.tobytes() == b.tobytes()
    assert not np.array_equal(a, sample_walk(WalkSpec(12, 2), 43).points)


def test_bridge_endpoints_are_exactly_zero():
    rng = make_rng(5)
    for m in (2, 3, 7, 30):
        pts = sample_bridge(BridgeSpec(m, 3), rng).points
        assert pts.shape == (m + 1, 3)
        assert np.all(pts[0] == 0.0) and np.all(pts[-1] == 0.0)


def test_short_bridge_is_out_and_back():
    pts = sample_bridge(BridgeSpec(2, 1), 8).points[:, 0]
    assert pts[0] == pts[2] == 0.0 and pts[1] != 0.0


def test_spec_validation():
    with pytest.raises(ValueError):
        WalkSpec(0, 2)
    with pytest.raises(ValueError):
        WalkSpec(3, 2, law="cauchy")
    with pytest.raises(ValueError):
        WalkSpec(3, 2, law=SHIFTED, noise=0.0)
    with pytest.raises(ValueError):
        WalkSpec(3, 2, law=SHIFTED, shift=(1.0,))
    with pytest.raises(ValueError):
        BridgeSpec(1, 2)
    with pytest.raises(ValueError):
        JointSpec(1)
    with pytest.raises(ValueError):
        JointSpec(1, (2,), (1,))


def test_joint_sampling():
    spec = JointSpec(2, (2, 3), (4,))
    paths = sample_joint(spec, 1)
    assert [len(p) for p in paths] == [3, 4, 5]
    assert sum(len(p) for p in paths) == spec.n_points
    A = joint_increment_matrix(paths)
    assert A.shape == (2, 9)
    assert np.allclose(A[:, 5:].sum(axis=1), 0.0)
    one = sample_joint(JointSpec(1, (2,)), 3)
    assert len(one) == 1 and len(one[0]) == 3


def test_shifted_walk_mean():
    n, t, N = 4, 0.5, 100_000
    rng = make_rng(17)
    ends = np.array([sample_nonsymmetric_walk(n, 2, t, rng).points[-1] for _ in range(N)])
    se = t * np.sqrt(n / N)
    assert np.all(np.abs(ends.mean(axis=0) - n) < 4 * se)


def test_small_noise_walk_hugs_the_diagonal():
    pts = sample_nonsymmetric_walk(5, 3, 1e-9, 2).points
    assert np.allclose(pts, np.outer(np.arange(6), np.ones(3)), atol=1e-6)


def test_chunk_streams_cover_samples_and_are_stable():
    chunks = list(chunk_streams(9, 2500, 1000))
    assert [(s, c) for s, c, _ in chunks] == [(0, 1000), (1000, 1000), (2000, 500)]
    again = list(chunk_streams(9, 2500, 1000))
    for (_, _, a), (_, _, b) in zip(chunks, again):
        assert make_rng(a).random() == make_rng(b).random()
    assert make_rng(chunks[0][2]).random() != make_rng(chunks[1][2]).random()
