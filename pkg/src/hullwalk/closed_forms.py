"""Distribution-free closed forms for convex hulls of random walks and bridges.

Every value is an exact ``fractions.Fraction``.  Several quantities have two
independent evaluation routes (Stirling-number formula vs. summing face
probabilities over all index tuples); both are exposed so they can be
checked against each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial, prod
from typing import Sequence

from .combinatorics import (
    alternating_tail,
    b_poly,
    bridge_face_poly,
    hat_c,
    joint_absorption_poly,
    stirling_first,
    stirling_second,
    walk_face_poly,
)

__all__ = [
    "FaceQuery",
    "BIGSUM_MAX_N",
    "expected_faces_walk",
    "expected_faces_walk_bigsum",
    "face_prob_walk",
    "face_prob_walk_maxdim",
    "arcsine",
    "vertex_prob_walk",
    "face_prob_bridge",
    "face_prob_bridge_maxdim",
    "vertex_prob_bridge",
    "expected_faces_bridge",
    "shift_avg_face_prob",
    "absorption_prob",
    "non_absorption_prob",
    "group_order",
    "total_expected_faces",
    "asymptotic_expected_faces",
]

BIGSUM_MAX_N = 20


@dataclass(frozen=True)
class FaceQuery:
    """A face question: length ``n``, dimension ``d``, face dimension ``k``."""

    n: int
    d: int
    k: int
    indices: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be >= 1")
        if not 0 <= self.k < self.d:
            raise ValueError(f"face dimension k={self.k} must satisfy 0 <= k < d={self.d}")
        if self.indices is not None:
            idx = tuple(self.indices)
            if len(idx) != self.k + 1:
                raise ValueError("need exactly k+1 indices")
            if any(b <= a for a, b in zip(idx, idx[1:])):
                raise ValueError("indices must be strictly increasing")
            object.__setattr__(self, "indices", idx)


def _check_ndk(n: int, d: int, k: int) -> None:
    if d < 1:
        raise ValueError("d must be >= 1")
    if not 0 <= k < d:
        raise ValueError(f"need 0 <= k < d, got k={k}, d={d}")
    if n < d:
        raise ValueError(f"need n >= d, got n={n}, d={d}")


def expected_faces_walk(n: int, d: int, k: int) -> Fraction:
    """E f_k(C_n) for an exchangeable walk in general position.

    (2 k! / n!) * sum_l c(n+1, d-2l) S(d-2l, k+1).
    """
    _check_ndk(n, d, k)
    total = sum(
        stirling_first(n + 1, d - 2 * l) * stirling_second(d - 2 * l, k + 1)
        for l in range(d // 2 + 1)
    )
    return Fraction(2 * factorial(k) * total, factorial(n))


def _walk_denominator(n: int, idx: tuple[int, ...]) -> int:
    gaps = [b - a for a, b in zip(idx, idx[1:])]
    return (
        2 ** (idx[0] + n - idx[-1])
        * factorial(idx[0])
        * factorial(n - idx[-1])
        * prod(factorial(g) for g in gaps)
    )


def face_prob_walk(n: int, d: int, indices: Sequence[int]) -> Fraction:
    """P[Conv(S_i1, ..., S_ik+1) is a k-face of C_n] for a symmetric walk."""
    idx = tuple(indices)
    k = len(idx) - 1
    if d < 1 or k >= d:
        raise ValueError(f"need 1 <= len(indices) <= d, got {len(idx)} indices in d={d}")
    if len(idx) == n + 1:
        raise ValueError("all n+1 points selected: their hull is not a proper face")
    poly = walk_face_poly(n, idx)
    return Fraction(2 * alternating_tail(poly, d - k - 1), _walk_denominator(n, idx))


def _double_factorial_ratio(m: int) -> Fraction:
    # (2m-1)!! / (2m)!! == C(2m, m) / 4^m
    return Fraction(comb(2 * m, m), 4**m)


def face_prob_walk_maxdim(n: int, indices: Sequence[int]) -> Fraction:
    """Facet probability via the double-factorial product formula.

    Independent of ``face_prob_walk``; valid when ``len(indices) == d``.
    """
    idx = tuple(indices)
    gaps = [b - a for a, b in zip(idx, idx[1:])]
    out = 2 * _double_factorial_ratio(idx[0]) * _double_factorial_ratio(n - idx[-1])
    for g in gaps:
        out /= g
    return out


def arcsine(n: int, i: int) -> Fraction:
    """Discrete arcsine law: P[max of a symmetric 1-d walk sits at step i]."""
    if not 0 <= i <= n:
        raise ValueError("need 0 <= i <= n")
    return Fraction(comb(2 * i, i) * comb(2 * n - 2 * i, n - i), 4**n)


def vertex_prob_walk(n: int, d: int, i: int) -> Fraction:
    """P[S_i is a vertex of C_n] for a symmetric walk."""
    if not 0 <= i <= n:
        raise ValueError("need 0 <= i <= n")
    if d < 1:
        raise ValueError("d must be >= 1")
    if n == 0:
        return Fraction(1)
    poly = b_poly(i) * b_poly(n - i)
    return Fraction(
        alternating_tail(poly, d - 1), 2 ** (n - 1) * factorial(i) * factorial(n - i)
    )


def _bridge_denominator(n: int, idx: tuple[int, ...]) -> int:
    ext = idx + (n + idx[0],)
    return prod(factorial(b - a) for a, b in zip(ext, ext[1:]))


def face_prob_bridge(n: int, d: int, indices: Sequence[int]) -> Fraction:
    """P[Conv(S_i1, ..., S_ik+1) is a k-face] for an exchangeable bridge."""
    idx = tuple(indices)
    k = len(idx) - 1
    if d < 1 or k >= d:
        raise ValueError(f"need 1 <= len(indices) <= d, got {len(idx)} indices in d={d}")
    if len(idx) == n:
        raise ValueError("all n points selected: their hull is not a proper face")
    poly = bridge_face_poly(n, idx)
    return Fraction(2 * alternating_tail(poly, d - k - 1), _bridge_denominator(n, idx))


def face_prob_bridge_maxdim(n: int, indices: Sequence[int]) -> Fraction:
    """2 / prod of cyclic gaps; the facet case of ``face_prob_bridge``."""
    idx = tuple(indices)
    ext = idx + (n + idx[0],)
    return Fraction(2, prod(b - a for a, b in zip(ext, ext[1:])))


def vertex_prob_bridge(n: int, d: int) -> Fraction:
    """P[S_i is a vertex] for a bridge of length n; the same for every i."""
    if n < 2:
        raise ValueError("bridge length must be >= 2")
    if d < 1:
        raise ValueError("d must be >= 1")
    total = sum(stirling_first(n, d - 2 * l) for l in range(d // 2 + 1))
    return Fraction(2 * total, factorial(n))


def _bigsum_guard(n: int) -> None:
    if n > BIGSUM_MAX_N:
        raise ValueError(
            f"tuple enumeration capped at n <= {BIGSUM_MAX_N}, got n={n}"
        )


def expected_faces_walk_bigsum(n: int, d: int, k: int) -> Fraction:
    """E f_k(C_n) as the sum of face probabilities over all index tuples."""
    _check_ndk(n, d, k)
    _bigsum_guard(n)
    return sum(
        (face_prob_walk(n, d, idx) for idx in combinations(range(n + 1), k + 1)),
        Fraction(0),
    )


def expected_faces_bridge(n: int, d: int, k: int) -> Fraction:
    """E f_k for a bridge of length n, summed over index tuples in [0, n)."""
    if d < 1 or not 0 <= k < d:
        raise ValueError(f"need 0 <= k < d, got k={k}, d={d}")
    if n < 2:
        raise ValueError("bridge length must be >= 2")
    _bigsum_guard(n)
    return sum(
        (face_prob_bridge(n, d, idx) for idx in combinations(range(n), k + 1)),
        Fraction(0),
    )


def shift_avg_face_prob(n: int, d: int, lags: Sequence[int]) -> Fraction:
    """Shift-averaged face probability of an exchangeable (not necessarily
    symmetric) walk with lag pattern ``lags``.

    Equals the face probability of a bridge of length n+1 at indices
    ``(0, *lags)``.
    """
    lags = tuple(int(l) for l in lags)
    if lags and (lags[0] < 1 or lags[-1] > n):
        raise ValueError(f"lags must lie in [1, {n}], got {lags}")
    return face_prob_bridge(n + 1, d, (0,) + lags)


def group_order(walk_lengths: Sequence[int], bridge_lengths: Sequence[int]) -> int:
    """|B_n1 x ... x A_(m1-1) x ...| = prod 2^n n! * prod m!."""
    return prod(2**n * factorial(n) for n in walk_lengths) * prod(
        factorial(m) for m in bridge_lengths
    )


def absorption_prob(
    d: int, walk_lengths: Sequence[int], bridge_lengths: Sequence[int] = ()
) -> Fraction:
    """P[0 in the joint hull] of independent-block walks and bridges."""
    if d < 1:
        raise ValueError("d must be >= 1")
    poly = joint_absorption_poly(walk_lengths, bridge_lengths)
    upper = sum(poly.coeff(j) for j in range(d + 1, poly.degree + 1, 2))
    return Fraction(2 * upper, group_order(walk_lengths, bridge_lengths))


def non_absorption_prob(
    d: int, walk_lengths: Sequence[int], bridge_lengths: Sequence[int] = ()
) -> Fraction:
    """P[0 not in the joint hull]."""
    if d < 1:
        raise ValueError("d must be >= 1")
    poly = joint_absorption_poly(walk_lengths, bridge_lengths)
    return Fraction(
        2 * alternating_tail(poly, d - 1), group_order(walk_lengths, bridge_lengths)
    )


def total_expected_faces(n: int, d: int) -> Fraction:
    """Expected number of faces of C_n summed over all dimensions 0..d-1."""
    _check_ndk(n, d, 0)
    total = sum(
        stirling_first(n + 1, d - 2 * l) * hat_c(d - 2 * l)
        for l in range(d // 2 + 1)
        if d - 2 * l >= 1
    )
    return Fraction(2 * total, factorial(n))


def asymptotic_expected_faces(n: int, d: int, k: int) -> float:
    """Leading-order growth (2 k!/(d-1)!) S(d, k+1) (log n)^(d-1)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if not 0 <= k < d:
        raise ValueError("need 0 <= k < d")
    const = 2 * factorial(k) * stirling_second(d, k + 1) / factorial(d - 1)
    return const * math.log(n) ** (d - 1)
