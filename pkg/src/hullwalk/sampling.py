"""Seeded random walks, bridges and joint collections.

Streams: every random draw comes from a ``numpy.random.Generator`` built on
PCG64.  A master seed is split with ``SeedSequence(master, spawn_key=(c,))``
into one stream per chunk ``c`` of consecutive sample indices, so results
depend on (spec, master seed, chunk size) and never on how chunks are
scheduled across workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

import numpy as np

from .geometry import PointSet

__all__ = [
    "SYMMETRIC",
    "SHIFTED",
    "WalkSpec",
    "BridgeSpec",
    "JointSpec",
    "make_rng",
    "chunk_streams",
    "sample_walk",
    "sample_bridge",
    "sample_joint",
    "sample_nonsymmetric_walk",
    "joint_increment_matrix",
]

SYMMETRIC = "symmetric-gaussian"
SHIFTED = "shifted-gaussian"

SeedLike = Union[int, np.random.SeedSequence, np.random.Generator, None]


@dataclass(frozen=True)
class WalkSpec:
    """n-step walk in R^d.

    ``law`` is ``"symmetric-gaussian"`` (i.i.d. standard normal increments)
    or ``"shifted-gaussian"`` (increments ``shift + noise * N(0, I)``; the
    shift defaults to the all-ones vector).
    """

    n: int
    d: int
    law: str = SYMMETRIC
    shift: tuple[float, ...] | None = None
    noise: float = 1.0

    def __post_init__(self):
        if self.n < 1 or self.d < 1:
            raise ValueError("need n >= 1 and d >= 1")
        if self.law not in (SYMMETRIC, SHIFTED):
            raise ValueError(f"unknown law {self.law!r}")
        if self.law == SHIFTED:
            if self.noise <= 0:
                raise ValueError("noise scale must be positive")
            shift = (1.0,) * self.d if self.shift is None else tuple(map(float, self.shift))
            if len(shift) != self.d:
                raise ValueError("shift vector must have length d")
            object.__setattr__(self, "shift", shift)

    @property
    def symmetric(self) -> bool:
        return self.law == SYMMETRIC


@dataclass(frozen=True)
class BridgeSpec:
    m: int
    d: int

    def __post_init__(self):
        if self.m < 2 or self.d < 1:
            raise ValueError("need m >= 2 and d >= 1")


@dataclass(frozen=True)
class JointSpec:
    """Independent symmetric walks (lengths ``walks``) and bridges (``bridges``)."""

    d: int
    walks: tuple[int, ...] = field(default=())
    bridges: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "walks", tuple(int(n) for n in self.walks))
        object.__setattr__(self, "bridges", tuple(int(m) for m in self.bridges))
        if self.d < 1:
            raise ValueError("d must be >= 1")
        if not self.walks and not self.bridges:
            raise ValueError("need at least one walk or bridge")
        if any(n < 1 for n in self.walks):
            raise ValueError("walk lengths must be >= 1")
        if any(m < 2 for m in self.bridges):
            raise ValueError("bridge lengths must be >= 2")

    @property
    def n_points(self) -> int:
        return sum(n + 1 for n in self.walks) + sum(m + 1 for m in self.bridges)


def make_rng(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.PCG64(seed))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def chunk_streams(
    master_seed: int, n_samples: int, chunk: int
) -> Iterator[tuple[int, int, np.random.SeedSequence]]:
    """Yield (first sample index, count, seed sequence) per chunk."""
    for c, start in enumerate(range(0, n_samples, chunk)):
        count = min(chunk, n_samples - start)
        yield start, count, np.random.SeedSequence(master_seed, spawn_key=(c,))


def _path(increments: np.ndarray) -> np.ndarray:
    d = increments.shape[1]
    return np.vstack([np.zeros((1, d)), np.cumsum(increments, axis=0)])


def sample_walk(spec: WalkSpec, seed: SeedLike = None) -> PointSet:
    """n+1 points S_0 = 0, S_1, ..., S_n."""
    rng = make_rng(seed)
    z = rng.standard_normal((spec.n, spec.d))
    if spec.law == SHIFTED:
        z = np.asarray(spec.shift) + spec.noise * z
    return PointSet(_path(z))


def sample_bridge(spec: BridgeSpec, seed: SeedLike = None) -> PointSet:
    """m+1 points with S_0 = S_m = 0 exactly.

    Increments are centered i.i.d. Gaussians, which keeps them exchangeable;
    the final point is pinned to zero to absorb rounding in the cumsum.
    """
    rng = make_rng(seed)
    z = rng.standard_normal((spec.m, spec.d))
    z -= z.mean(axis=0)
    pts = _path(z)
    pts[-1] = 0.0
    return PointSet(pts)


def sample_joint(spec: JointSpec, seed: SeedLike = None) -> list[PointSet]:
    """Walk paths first, then bridge paths, each drawn independently."""
    rng = make_rng(seed)
    out = [sample_walk(WalkSpec(n, spec.d), rng) for n in spec.walks]
    out += [sample_bridge(BridgeSpec(m, spec.d), rng) for m in spec.bridges]
    return out


def sample_nonsymmetric_walk(n: int, d: int, t: float, seed: SeedLike = None) -> PointSet:
    """Walk with increments 1 + t * N(0, I): exchangeable but not symmetric."""
    return sample_walk(WalkSpec(n, d, SHIFTED, noise=t), seed)


def joint_increment_matrix(paths: list[PointSet]) -> np.ndarray:
    """d x n matrix whose columns are the increments of all paths in order."""
    return np.hstack([np.diff(p.points, axis=0).T for p in paths])
