"""Monte Carlo estimators checked against the exact closed forms.

Samples are processed in fixed-size chunks, each with its own seed stream
(see ``sampling``).  A sample on which a geometric predicate refuses to
decide is discarded and replaced by the next draw from the same stream; the
number of discards is reported with the estimate.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

import numpy as np

from .geometry import (
    DEFAULT_EPS,
    GeometryError,
    count_faces,
    is_face,
    origin_in_hull,
)
from .sampling import (
    SHIFTED,
    SYMMETRIC,
    BridgeSpec,
    JointSpec,
    WalkSpec,
    chunk_streams,
    make_rng,
    sample_bridge,
    sample_joint,
    sample_walk,
)

__all__ = [
    "CHUNK_SIZE",
    "Z_THRESHOLD",
    "RERUN_SALT",
    "Estimate",
    "ComparisonReport",
    "compare",
    "compare_with_rerun",
    "run_kernel",
    "FaceProbKernel",
    "FaceCountKernel",
    "FaceVectorKernel",
    "AbsorptionKernel",
    "ShiftAverageKernel",
    "estimate_face_prob",
    "estimate_expected_faces",
    "estimate_absorption",
    "estimate_shift_average",
    "sample_face_vectors",
]

CHUNK_SIZE = 1000
Z_THRESHOLD = 3.0
RERUN_SALT = 0x9E3779B9
MAX_DISCARD_RATE = 1e-3

Model = Union[WalkSpec, BridgeSpec]


@dataclass(frozen=True)
class Estimate:
    p_hat: float
    stderr: float
    n_samples: int
    n_discarded: int
    seed: int

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class ComparisonReport:
    exact: Fraction
    estimate: Estimate
    z: float
    passed: bool
    threshold: float = Z_THRESHOLD

    def to_dict(self):
        return {
            "exact": f"{self.exact.numerator}/{self.exact.denominator}",
            "exact_decimal": float(self.exact),
            **self.estimate.to_dict(),
            "z": None if math.isnan(self.z) else self.z,
            "threshold": self.threshold,
            "pass": self.passed,
        }


def compare(
    exact, est: Estimate, threshold: float = Z_THRESHOLD, binary: bool = True
) -> ComparisonReport:
    """z-score of ``est`` against the exact value.

    When the sample standard error is zero (all samples agree) and the
    target is a probability, the binomial standard error under the exact
    value is used instead.
    """
    exact = Fraction(exact)
    x = float(exact)
    diff = est.p_hat - x
    se = est.stderr
    if se == 0.0 and binary:
        se = math.sqrt(x * (1 - x) / est.n_samples)
    if se > 0.0:
        z = diff / se
    else:
        z = 0.0 if abs(diff) <= 1e-12 else math.copysign(math.inf, diff)
    return ComparisonReport(exact, est, z, abs(z) < threshold, threshold)


def compare_with_rerun(
    exact,
    estimator: Callable[[int], Estimate],
    seed: int,
    threshold: float = Z_THRESHOLD,
    binary: bool = True,
) -> ComparisonReport:
    """Compare, and on failure re-run once with a fresh seed; the re-run decides."""
    rep = compare(exact, estimator(seed), threshold, binary)
    if rep.passed:
        return rep
    return compare(exact, estimator(seed ^ RERUN_SALT), threshold, binary)


# -- kernels: picklable callables mapping a Generator to one sample value ---


def _model_points(model: Model, rng) -> np.ndarray:
    if isinstance(model, BridgeSpec):
        # S_m coincides with S_0; the hull is spanned by S_0..S_{m-1}.
        return sample_bridge(model, rng).points[:-1]
    return sample_walk(model, rng).points


def _model_len(model: Model) -> int:
    return model.m if isinstance(model, BridgeSpec) else model.n + 1


@dataclass(frozen=True)
class FaceProbKernel:
    model: Model
    indices: tuple[int, ...]
    eps: float = DEFAULT_EPS
    binary = True

    def __post_init__(self):
        idx = tuple(sorted(int(i) for i in self.indices))
        if not idx or idx[0] < 0 or idx[-1] >= _model_len(self.model):
            raise ValueError(f"indices {idx} out of range for {self.model}")
        if len(idx) > self.model.d:
            raise ValueError("at most d indices")
        object.__setattr__(self, "indices", idx)

    def __call__(self, rng) -> float:
        return float(is_face(_model_points(self.model, rng), self.indices, self.eps))


@dataclass(frozen=True)
class FaceCountKernel:
    model: Model
    k: int
    eps: float = DEFAULT_EPS
    binary = False

    def __call__(self, rng) -> float:
        return float(count_faces(_model_points(self.model, rng), self.k, self.eps))


@dataclass(frozen=True)
class FaceVectorKernel:
    """Full f-vector (f_0, ..., f_{d-1}) of one sample."""

    model: Model
    eps: float = DEFAULT_EPS

    def __call__(self, rng) -> np.ndarray:
        pts = _model_points(self.model, rng)
        return np.array([count_faces(pts, k, self.eps) for k in range(self.model.d)])


@dataclass(frozen=True)
class AbsorptionKernel:
    spec: JointSpec
    eps: float = DEFAULT_EPS
    binary = True

    def __call__(self, rng) -> float:
        paths = sample_joint(self.spec, rng)
        n_walks = len(self.spec.walks)
        # Walks contribute S_1..S_n, bridges R_1..R_{m-1}; the origin is excluded.
        blocks = [p.points[1:] for p in paths[:n_walks]]
        blocks += [p.points[1:-1] for p in paths[n_walks:]]
        return float(origin_in_hull(np.vstack(blocks), self.eps))


@dataclass(frozen=True)
class ShiftAverageKernel:
    """Per-sample average of face indicators over shifted index patterns."""

    walk: WalkSpec
    lags: tuple[int, ...]
    mode: str = "cyclic"
    eps: float = DEFAULT_EPS
    binary = False

    def __post_init__(self):
        lags = tuple(int(l) for l in self.lags)
        n = self.walk.n
        if any(b <= a for a, b in zip(lags, lags[1:])):
            raise ValueError("lags must be strictly increasing")
        if lags and (lags[0] < 1 or lags[-1] > n):
            raise ValueError(f"lags must lie in [1, {n}]")
        if len(lags) + 1 > self.walk.d:
            raise ValueError("need len(lags) + 1 <= d")
        if self.mode not in ("cyclic", "windowed"):
            raise ValueError("mode must be 'cyclic' or 'windowed'")
        object.__setattr__(self, "lags", lags)

    def patterns(self) -> list[tuple[int, ...]]:
        n = self.walk.n
        if self.mode == "cyclic":
            return [
                tuple(sorted((i + l) % (n + 1) for l in (0,) + self.lags))
                for i in range(n + 1)
            ]
        last = self.lags[-1] if self.lags else 0
        return [tuple(i + l for l in (0,) + self.lags) for i in range(n - last + 1)]

    def __call__(self, rng) -> float:
        pts = sample_walk(self.walk, rng).points
        pats = self.patterns()
        return sum(is_face(pts, p, self.eps) for p in pats) / len(pats)


# -- runner ------------------------------------------------------------------


def _run_chunk(args):
    kernel, seedseq, count = args
    rng = make_rng(seedseq)
    values = []
    discarded = 0
    while len(values) < count:
        try:
            values.append(kernel(rng))
        except GeometryError:
            discarded += 1
            if discarded > count:
                raise RuntimeError("more discarded than accepted samples in a chunk")
    return np.asarray(values, dtype=float), discarded


def run_kernel(kernel, samples: int, seed: int, workers: int = 1, chunk: int = CHUNK_SIZE):
    """Evaluate ``kernel`` on ``samples`` draws; returns (values, n_discarded).

    Values are concatenated in sample-index order, so the output does not
    depend on ``workers``.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    tasks = [(kernel, ss, count) for _, count, ss in chunk_streams(seed, samples, chunk)]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_chunk, tasks))
    else:
        results = [_run_chunk(t) for t in tasks]
    values = np.concatenate([r[0] for r in results])
    discarded = sum(r[1] for r in results)
    return values, discarded


def _estimate(kernel, samples, seed, workers) -> Estimate:
    values, discarded = run_kernel(kernel, samples, seed, workers)
    n = values.shape[0]
    p = float(values.mean())
    if getattr(kernel, "binary", False):
        se = math.sqrt(max(p * (1 - p), 0.0) / n)
    else:
        se = float(values.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return Estimate(p, se, n, int(discarded), int(seed))


def estimate_face_prob(
    model: Model,
    indices: Sequence[int],
    samples: int,
    seed: int,
    eps: float = DEFAULT_EPS,
    workers: int = 1,
) -> Estimate:
    """Fraction of sampled paths on which the indexed simplex is a face.

    For a bridge of length m the hull is spanned by S_0..S_{m-1} and indices
    must lie in [0, m).
    """
    return _estimate(FaceProbKernel(model, tuple(indices), eps), samples, seed, workers)


def estimate_expected_faces(
    model: Model, k: int, samples: int, seed: int, eps: float = DEFAULT_EPS, workers: int = 1
) -> Estimate:
    """Mean number of k-faces per sample."""
    if not 0 <= k < model.d:
        raise ValueError("need 0 <= k < d")
    return _estimate(FaceCountKernel(model, k, eps), samples, seed, workers)


def estimate_absorption(
    spec: JointSpec, samples: int, seed: int, eps: float = DEFAULT_EPS, workers: int = 1
) -> Estimate:
    """Fraction of samples whose joint hull contains the origin."""
    return _estimate(AbsorptionKernel(spec, eps), samples, seed, workers)


def estimate_shift_average(
    n: int,
    d: int,
    lags: Sequence[int],
    samples: int,
    seed: int,
    mode: str = "cyclic",
    law: str = SYMMETRIC,
    noise: float = 1.0,
    eps: float = DEFAULT_EPS,
    workers: int = 1,
) -> Estimate:
    """Shift-averaged face frequency.

    ``cyclic`` averages over all n+1 starting points with indices wrapped
    modulo n+1; ``windowed`` averages over the n+1-l_k unwrapped windows.
    ``law="shifted-gaussian"`` gives the non-symmetric walk 1 + noise*N(0, I).
    """
    walk = WalkSpec(n, d, law, noise=noise) if law == SHIFTED else WalkSpec(n, d, law)
    return _estimate(ShiftAverageKernel(walk, tuple(lags), mode, eps), samples, seed, workers)


def sample_face_vectors(
    model: Model, samples: int, seed: int, eps: float = DEFAULT_EPS
) -> tuple[np.ndarray, int]:
    """(samples, d) array of per-sample f-vectors, plus the discard count."""
    kernel = FaceVectorKernel(model, eps)
    rows = []
    discarded = 0
    for _, count, ss in chunk_streams(seed, samples, CHUNK_SIZE):
        rng = make_rng(ss)
        got = 0
        while got < count:
            try:
                rows.append(kernel(rng))
                got += 1
            except GeometryError:
                discarded += 1
    return np.array(rows), discarded
