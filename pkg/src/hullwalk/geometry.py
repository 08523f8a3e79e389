"""Floating-point convex-hull predicates.

Membership of the origin in a convex hull is decided by a small dense
phase-1 simplex (Bland's rule).  Face detection does not build a hull: the
candidate simplex is projected away along its own affine hull and the face
question becomes "is the shared projected point a vertex".
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Sequence

import numpy as np

__all__ = [
    "DEFAULT_EPS",
    "GRAY_ZONE",
    "GeometryError",
    "IllConditionedError",
    "DegenerateError",
    "PointSet",
    "LPReport",
    "phase_one",
    "origin_in_hull",
    "is_vertex",
    "is_face",
    "count_faces",
    "orthocomplement_basis",
]

DEFAULT_EPS = 1e-9
# Residuals in (eps, GRAY_ZONE] are too close to call.
GRAY_ZONE = 1e-6
_PIVOT_TOL = 1e-12
_RANK_TOL = 1e-10


class GeometryError(ArithmeticError):
    """Base class for inputs the predicates refuse to decide."""


class IllConditionedError(GeometryError):
    """Near-tie or LP iteration cap exceeded."""


class DegenerateError(GeometryError):
    """Rank deficiency: the selected points do not span a k-simplex."""


@dataclass(frozen=True)
class PointSet:
    """Ordered list of points in R^dim, stored as an (m, dim) float array."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] == 0 or pts.shape[1] == 0:
            raise ValueError("PointSet needs a nonempty (m, dim) array")
        object.__setattr__(self, "points", pts)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self):
        return self.points.shape[0]

    def __getitem__(self, i):
        return self.points[i]

    @property
    def scale(self) -> float:
        return float(np.max(np.linalg.norm(self.points, axis=1)))


@dataclass(frozen=True)
class LPReport:
    feasible: bool
    margin: float | None  # tol - residual, only when feasible
    iterations: int
    residual: float = 0.0


def phase_one(
    A, b, tol: float = DEFAULT_EPS, max_iter: int | None = None, penalized: Sequence[int] = ()
) -> LPReport:
    """Search for x >= 0 with A x = b by minimizing the sum of artificials.

    Columns listed in ``penalized`` carry unit cost as well, which lets a
    caller pair each artificial with a surplus column so the optimum is an
    L1 residual.  Dense tableau, Bland's smallest-index rule for both the
    entering column and ties in the ratio test.  Stops early once the
    objective drops to ``tol``.  Raises ``IllConditionedError`` past
    ``max_iter`` pivots.
    """
    A = np.array(A, dtype=float, ndmin=2)
    b = np.array(b, dtype=float).ravel()
    rows, cols = A.shape
    neg = b < 0
    A[neg] *= -1.0
    b[neg] *= -1.0

    T = np.zeros((rows + 1, cols + rows + 1))
    T[:rows, :cols] = A
    T[:rows, cols : cols + rows] = np.eye(rows)
    T[:rows, -1] = b
    T[rows, :cols] = -A.sum(axis=0)
    T[rows, list(penalized)] += 1.0
    T[rows, -1] = -b.sum()
    basis = list(range(cols, cols + rows))
    if max_iter is None:
        max_iter = 50 * (rows + cols)

    it = 0
    while True:
        w = -T[rows, -1]
        if w <= tol:
            return LPReport(True, tol - max(w, 0.0), it, max(w, 0.0))
        candidates = np.flatnonzero(T[rows, :-1] < -_PIVOT_TOL)
        if candidates.size == 0:
            return LPReport(False, None, it, float(w))
        if it >= max_iter:
            raise IllConditionedError(f"phase-1 simplex exceeded {max_iter} pivots")
        j = candidates[0]
        col = T[:rows, j]
        ok = np.flatnonzero(col > _PIVOT_TOL)
        ratios = T[ok, -1] / col[ok]
        best = ratios.min()
        ties = ok[ratios <= best + 1e-15]
        r = min(ties, key=lambda i: basis[i])
        T[r] /= T[r, j]
        piv = T[r]
        factors = T[:, j].copy()
        factors[r] = 0.0
        T -= np.outer(factors, piv)
        basis[r] = j
        it += 1


def _decide(residual: float, eps: float, gray: float) -> bool:
    if residual <= eps:
        return True
    if residual <= gray:
        raise IllConditionedError(f"hull-membership residual {residual:.3e} is a near tie")
    return False


def origin_in_hull(
    ps, eps: float = DEFAULT_EPS, scale: float | None = None, gray: float = GRAY_ZONE
) -> bool:
    """Is 0 within L1 distance ``eps * scale`` of the convex hull?

    ``scale`` defaults to the largest point norm.  Distances in
    ``(eps, gray] * scale`` raise ``IllConditionedError``.  One-dimensional
    input is decided by min/max; everything else goes through ``phase_one``
    with the residual split into paired artificial and surplus columns.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    P = ps.points if isinstance(ps, PointSet) else np.asarray(ps, dtype=float)
    if P.ndim == 1:
        P = P[:, None]
    if P.shape[0] == 0:
        return False
    if scale is None:
        scale = float(np.max(np.linalg.norm(P, axis=1)))
    if scale == 0.0:
        return True
    Q = P / scale
    if Q.shape[1] == 1:
        lo, hi = Q[:, 0].min(), Q[:, 0].max()
        return _decide(max(lo, -hi, 0.0), eps, gray)
    m, dim = Q.shape
    A = np.zeros((dim + 1, m + dim))
    A[:dim, :m] = Q.T
    A[:dim, m:] = -np.eye(dim)
    A[dim, :m] = 1.0
    b = np.zeros(dim + 1)
    b[-1] = 1.0
    rep = phase_one(A, b, tol=eps, penalized=range(m, m + dim))
    return _decide(rep.residual, eps, gray) if not rep.feasible else True


def is_vertex(idx: int, ps, eps: float = DEFAULT_EPS) -> bool:
    """Is point ``idx`` a vertex of the convex hull of ``ps``?"""
    P = ps.points if isinstance(ps, PointSet) else np.asarray(ps, dtype=float)
    if P.ndim == 1:
        P = P[:, None]
    if not 0 <= idx < P.shape[0]:
        raise IndexError(f"point index {idx} out of range")
    others = np.delete(P, idx, axis=0) - P[idx]
    if others.shape[0] == 0:
        return True
    return not origin_in_hull(others, eps)


def orthocomplement_basis(vectors, dim: int | None = None) -> np.ndarray:
    """Orthonormal basis (rows) of the orthogonal complement of span(vectors).

    Modified Gram-Schmidt with one re-orthogonalization pass.  Raises
    ``DegenerateError`` if ``vectors`` are numerically dependent.
    """
    V = np.asarray(vectors, dtype=float)
    if V.size == 0:
        if dim is None:
            raise ValueError("dim required for an empty span")
        return np.eye(dim)
    V = np.atleast_2d(V)
    dim = V.shape[1] if dim is None else dim
    if V.shape[1] != dim:
        raise ValueError("vector length does not match dim")

    basis: list[np.ndarray] = []

    def orth(v):
        for _ in range(2):
            for q in basis:
                v = v - (q @ v) * q
        return v

    for v in V:
        size = np.linalg.norm(v)
        u = orth(v.copy())
        nu = np.linalg.norm(u)
        if size == 0.0 or nu <= _RANK_TOL * size:
            raise DegenerateError("spanning vectors are linearly dependent")
        basis.append(u / nu)

    span_rank = len(basis)
    eye = np.eye(dim)
    while len(basis) < dim:
        residuals = [orth(e.copy()) for e in eye]
        norms = [np.linalg.norm(r) for r in residuals]
        i = int(np.argmax(norms))
        basis.append(residuals[i] / norms[i])
    return np.array(basis[span_rank:]).reshape(dim - span_rank, dim)


def is_face(ps, indices: Sequence[int], eps: float = DEFAULT_EPS) -> bool:
    """Is Conv(points[indices]) a k-face of Conv(points), k = len(indices)-1?

    Projects every point onto the orthogonal complement of the affine hull
    of the selected points; the face condition is that the common image of
    the selected points is a vertex of the projected hull.
    """
    P = ps.points if isinstance(ps, PointSet) else np.asarray(ps, dtype=float)
    if P.ndim == 1:
        P = P[:, None]
    idx = tuple(int(i) for i in indices)
    m, dim = P.shape
    k = len(idx) - 1
    if k < 0 or k >= dim:
        raise ValueError(f"need 1 <= len(indices) <= dim={dim}")
    if len(set(idx)) != len(idx) or min(idx) < 0 or max(idx) >= m:
        raise ValueError(f"invalid indices {idx} for {m} points")
    if k == 0:
        return is_vertex(idx[0], P, eps)
    base = P[idx[0]]
    comp = orthocomplement_basis(P[list(idx[1:])] - base, dim)
    mask = np.ones(m, dtype=bool)
    mask[list(idx)] = False
    rel = P[mask] - base
    if rel.shape[0] == 0:
        return True
    scale = float(np.max(np.linalg.norm(rel, axis=1)))
    return not origin_in_hull(rel @ comp.T, eps, scale=scale)


def count_faces(ps, k: int, eps: float = DEFAULT_EPS, max_subsets: int = 10**6) -> int:
    """Number of (k+1)-subsets of the points spanning a k-face of the hull."""
    P = ps.points if isinstance(ps, PointSet) else np.asarray(ps, dtype=float)
    if P.ndim == 1:
        P = P[:, None]
    m = P.shape[0]
    if comb(m, k + 1) > max_subsets:
        raise ValueError(f"C({m}, {k + 1}) subsets exceeds the cap {max_subsets}")
    return sum(is_face(P, s, eps) for s in combinations(range(m), k + 1))
