"""Reflection arrangements of product type B_n1 x ... x A_(m1-1) x ...

Characteristic polynomials two ways (closed product and Whitney's subset
sum), region counts, and a brute-force count of the Weyl chambers met by a
linear subspace, one LP per group element.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from math import factorial, gcd, prod
from typing import Iterator, Sequence

import numpy as np

from .combinatorics import IntPolynomial, poly_eval, poly_mul
from .geometry import DEFAULT_EPS, GRAY_ZONE, DegenerateError, IllConditionedError, phase_one
from .sampling import JointSpec, joint_increment_matrix, make_rng, sample_joint

__all__ = [
    "ArrangementSpec",
    "GroupElement",
    "Hyperplane",
    "SubspaceBasis",
    "ChamberCount",
    "reflection_hyperplanes",
    "char_poly_product",
    "char_poly_whitney",
    "zaslavsky_regions",
    "predicted_intersect_count",
    "enumerate_group",
    "chamber_intersect_report",
    "chamber_intersect_count",
    "kernel_intersection_basis",
    "random_kernel_subspace",
]

log = logging.getLogger(__name__)

WHITNEY_MAX_HYPERPLANES = 22
GROUP_CAP = 10**6
ILL_CONDITIONED_FRACTION = 1e-3


@dataclass(frozen=True)
class ArrangementSpec:
    """Type-B blocks of sizes ``b_blocks`` followed by type-A blocks on
    ``a_blocks`` coordinates each (A_(m-1) acts on R^m)."""

    b_blocks: tuple[int, ...] = field(default=())
    a_blocks: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "b_blocks", tuple(int(n) for n in self.b_blocks))
        object.__setattr__(self, "a_blocks", tuple(int(m) for m in self.a_blocks))
        if not self.b_blocks and not self.a_blocks:
            raise ValueError("need at least one block")
        if any(n < 1 for n in self.b_blocks):
            raise ValueError("B-block sizes must be >= 1")
        if any(m < 2 for m in self.a_blocks):
            raise ValueError("A-block sizes must be >= 2")

    @property
    def n(self) -> int:
        return sum(self.b_blocks) + sum(self.a_blocks)

    @property
    def r(self) -> int:
        return len(self.a_blocks)

    @property
    def order(self) -> int:
        return prod(2**n * factorial(n) for n in self.b_blocks) * prod(
            factorial(m) for m in self.a_blocks
        )

    def offsets(self):
        """[(kind, start, size)] for every block in coordinate order."""
        out, pos = [], 0
        for n in self.b_blocks:
            out.append(("B", pos, n))
            pos += n
        for m in self.a_blocks:
            out.append(("A", pos, m))
            pos += m
        return out

    def __str__(self):
        parts = [f"B{n}" for n in self.b_blocks] + [f"A{m - 1}" for m in self.a_blocks]
        return " x ".join(parts)


@dataclass(frozen=True)
class GroupElement:
    """One element of the product group.

    ``b_parts[i] = (sigma, eps)`` acts on block i by e_k -> eps_k e_sigma(k);
    ``a_parts[j] = theta`` permutes block j's coordinates.
    """

    b_parts: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    a_parts: tuple[tuple[int, ...], ...]

    def inverse_apply(self, x: np.ndarray, spec: ArrangementSpec) -> np.ndarray:
        """g^{-1} applied along the last axis of ``x``."""
        x = np.asarray(x, dtype=float)
        out = np.empty_like(x)
        blocks = spec.offsets()
        parts = [("B", p) for p in self.b_parts] + [("A", p) for p in self.a_parts]
        for (kind, start, size), (_, part) in zip(blocks, parts):
            if kind == "B":
                sigma, eps = part
                src = start + np.asarray(sigma)
                out[..., start : start + size] = x[..., src] * np.asarray(eps, dtype=float)
            else:
                src = start + np.asarray(part)
                out[..., start : start + size] = x[..., src]
        return out


class Hyperplane:
    """Linear hyperplane {x : normal . x = 0}, normal stored primitive with a
    positive leading entry."""

    __slots__ = ("normal",)

    def __init__(self, normal: Sequence[int]):
        v = [int(a) for a in normal]
        g = 0
        for a in v:
            g = gcd(g, a)
        if g == 0:
            raise ValueError("normal must be nonzero")
        lead = next(a for a in v if a != 0)
        s = g if lead > 0 else -g
        self.normal = tuple(a // s for a in v)

    def __eq__(self, other):
        return isinstance(other, Hyperplane) and self.normal == other.normal

    def __hash__(self):
        return hash(self.normal)

    def __repr__(self):
        return f"Hyperplane({self.normal})"


@dataclass(frozen=True)
class SubspaceBasis:
    """Orthonormal rows spanning a subspace of R^n."""

    vectors: np.ndarray

    def __post_init__(self):
        V = np.atleast_2d(np.asarray(self.vectors, dtype=float))
        if not np.allclose(V @ V.T, np.eye(V.shape[0]), atol=1e-10):
            raise ValueError("basis vectors are not orthonormal")
        object.__setattr__(self, "vectors", V)

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    @property
    def ambient(self) -> int:
        return self.vectors.shape[1]


def _unit(n, i):
    v = [0] * n
    v[i] = 1
    return v


def reflection_hyperplanes(spec: ArrangementSpec) -> list[Hyperplane]:
    out = []
    n = spec.n
    for kind, start, size in spec.offsets():
        coords = range(start, start + size)
        for i, j in combinations(coords, 2):
            v = _unit(n, i)
            v[j] = -1
            out.append(Hyperplane(v))
            if kind == "B":
                w = _unit(n, i)
                w[j] = 1
                out.append(Hyperplane(w))
        if kind == "B":
            out.extend(Hyperplane(_unit(n, k)) for k in coords)
    return out


def char_poly_product(spec: ArrangementSpec) -> IntPolynomial:
    """prod (t-1)(t-3)...(t-(2n-1)) * prod t(t-1)...(t-(m-1))."""
    out = IntPolynomial.one()
    for n in spec.b_blocks:
        for a in range(1, 2 * n, 2):
            out = poly_mul(out, (-a, 1))
    for m in spec.a_blocks:
        for a in range(m):
            out = poly_mul(out, (-a, 1))
    return out


def _reduce(v: list[int], basis: list[tuple[int, list[int]]]) -> list[int]:
    for p, b in basis:
        if v[p]:
            bp, vp = b[p], v[p]
            v = [bp * x - vp * y for x, y in zip(v, b)]
            g = 0
            for a in v:
                g = gcd(g, a)
            if g > 1:
                v = [a // g for a in v]
    return v


def char_poly_whitney(
    hyperplanes: Sequence[Hyperplane], n: int | None = None,
    max_hyperplanes: int = WHITNEY_MAX_HYPERPLANES,
) -> IntPolynomial:
    """sum over subsets B of (-1)^|B| t^(n - rank B), rank by exact elimination.

    Subsets are walked depth-first so each step adds one normal to an
    already reduced basis.
    """
    hyperplanes = list(hyperplanes)
    if n is None:
        if not hyperplanes:
            raise ValueError("ambient dimension needed for an empty arrangement")
        n = len(hyperplanes[0].normal)
    if len(hyperplanes) > max_hyperplanes:
        raise ValueError(f"{len(hyperplanes)} hyperplanes exceeds the cap {max_hyperplanes}")
    normals = [list(h.normal) for h in hyperplanes]
    coeffs = [0] * (n + 1)
    total = len(normals)

    def walk(start, basis, sign):
        coeffs[n - len(basis)] += sign
        for i in range(start, total):
            v = _reduce(normals[i], basis)
            piv = next((j for j, a in enumerate(v) if a), None)
            walk(i + 1, basis if piv is None else basis + [(piv, v)], -sign)

    walk(0, [], 1)
    return IntPolynomial(coeffs)


def zaslavsky_regions(chi: IntPolynomial, n: int) -> int:
    """Number of regions, (-1)^n chi(-1)."""
    val = poly_eval(chi, -1)
    return int((-1) ** n * val)


def predicted_intersect_count(chi: IntPolynomial, n: int, codim: int) -> int:
    """Regions met by a generic subspace of codimension ``codim``.

    With chi(t) = sum (-1)^(n-k) a_k t^k this is 2 (a_{codim+1} + a_{codim+3} + ...).
    """
    if not 1 <= codim <= n - 1:
        raise ValueError(f"need 1 <= codim <= n-1, got codim={codim}, n={n}")
    a = [(-1) ** (n - k) * chi.coeff(k) for k in range(n + 1)]
    return 2 * sum(a[k] for k in range(codim + 1, n + 1, 2))


def enumerate_group(spec: ArrangementSpec, cap: int = GROUP_CAP) -> Iterator[GroupElement]:
    """Every element once.

    Order: blocks vary like an odometer (last block fastest); within a
    B-block the sign vector (in ``product((1, -1))`` order) is the outer key
    and the permutation (lexicographic) the inner one.
    """
    if spec.order > cap:
        raise ValueError(f"|G| = {spec.order} exceeds the cap {cap}")
    b_choices = [
        [(sigma, eps) for eps in product((1, -1), repeat=n) for sigma in permutations(range(n))]
        for n in spec.b_blocks
    ]
    a_choices = [list(permutations(range(m))) for m in spec.a_blocks]
    nb = len(b_choices)
    for combo in product(*b_choices, *a_choices):
        yield GroupElement(tuple(combo[:nb]), tuple(combo[nb:]))


def _chamber_constraints(spec: ArrangementSpec):
    """Rows D with D x >= 0 on the closed fundamental chamber, and the
    normalizing functional (strictly positive on the chamber within L)."""
    n = spec.n
    rows = []
    ell = np.zeros(n)
    for kind, start, size in spec.offsets():
        if kind == "B":
            rows.append(np.eye(n)[start])
            ell[start : start + size] = 1.0
        else:
            ell[start] -= 1.0
            ell[start + size - 1] += 1.0
        for k in range(start, start + size - 1):
            row = np.zeros(n)
            row[k + 1], row[k] = 1.0, -1.0
            rows.append(row)
    return np.array(rows), ell


@dataclass(frozen=True)
class ChamberCount:
    count: int
    ill_conditioned: int
    order: int


def _shard_count(args):
    spec, W0, eps, elements = args
    D, ell = _chamber_constraints(spec)
    q = W0.shape[0]
    n_ineq = D.shape[0]
    b = np.zeros(n_ineq + 1)
    b[-1] = 1.0
    A = np.zeros((n_ineq + 1, 2 * q + n_ineq))
    A[:n_ineq, 2 * q :] = -np.eye(n_ineq)
    hits = ill = 0
    for g in elements:
        W = g.inverse_apply(W0, spec)  # rows g^{-1} v_i
        M = D @ W.T
        lw = ell @ W.T
        A[:n_ineq, :q] = M
        A[:n_ineq, q : 2 * q] = -M
        A[n_ineq, :q] = lw
        A[n_ineq, q : 2 * q] = -lw
        try:
            rep = phase_one(A, b, tol=eps)
            if not rep.feasible and rep.residual <= GRAY_ZONE:
                raise IllConditionedError("near-tie in chamber LP")
        except IllConditionedError:
            ill += 1
            log.warning("ill-conditioned chamber LP for %s", g)
            continue
        hits += rep.feasible
    return hits, ill


def chamber_intersect_report(
    spec: ArrangementSpec, V, eps: float = DEFAULT_EPS, cap: int = GROUP_CAP, workers: int = 1
) -> ChamberCount:
    """Count g with V meeting g * closed chamber outside the origin.

    For each g, look for c with x = V^T c in g * C: i.e. D g^{-1} x >= 0 and
    ell . g^{-1} x = 1, a phase-1 feasibility problem in (c+, c-, slack).
    With ``workers > 1`` the group is cut into contiguous shards whose
    counts are summed.
    """
    basis = V if isinstance(V, SubspaceBasis) else SubspaceBasis(V)
    if basis.ambient != spec.n:
        raise ValueError("subspace lives in the wrong ambient dimension")
    elements = list(enumerate_group(spec, cap))
    if workers > 1 and len(elements) > 1:
        size = -(-len(elements) // workers)
        tasks = [
            (spec, basis.vectors, eps, elements[i : i + size])
            for i in range(0, len(elements), size)
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_shard_count, tasks))
    else:
        parts = [_shard_count((spec, basis.vectors, eps, elements))]
    hits = sum(h for h, _ in parts)
    ill = sum(i for _, i in parts)
    if ill > ILL_CONDITIONED_FRACTION * spec.order:
        raise IllConditionedError(f"{ill} of {spec.order} chamber LPs ill-conditioned")
    return ChamberCount(hits, ill, spec.order)


def chamber_intersect_count(
    spec: ArrangementSpec, V, eps: float = DEFAULT_EPS, workers: int = 1
) -> int:
    return chamber_intersect_report(spec, V, eps, workers=workers).count


def kernel_intersection_basis(A, spec: ArrangementSpec) -> SubspaceBasis:
    """Orthonormal basis of Ker(A) intersected with the sum-zero subspace L.

    ``A`` is d x n with columns ordered as the blocks of ``spec``.  The
    result has dimension n - d - r; anything else means a degenerate sample.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    d, n = A.shape
    if n != spec.n:
        raise ValueError(f"A has {n} columns, arrangement lives in R^{spec.n}")
    rows = [A]
    for kind, start, size in spec.offsets():
        if kind == "A":
            ind = np.zeros((1, n))
            ind[0, start : start + size] = 1.0
            rows.append(ind)
    S = np.vstack(rows)
    rank = d + spec.r
    if rank >= n:
        raise ValueError(f"codimension {rank} leaves no subspace in R^{n}")
    _, s, Vt = np.linalg.svd(S)
    if s[rank - 1] <= 1e-10 * s[0]:
        raise DegenerateError("increment matrix is rank deficient")
    return SubspaceBasis(Vt[rank:])


def random_kernel_subspace(spec: ArrangementSpec, d: int, seed=None) -> SubspaceBasis:
    """Ker(A) cap L for A built from a sampled Gaussian joint configuration.

    B-blocks become symmetric walks and A-blocks centered bridges.
    """
    rng = make_rng(seed)
    paths = sample_joint(JointSpec(d, spec.b_blocks, spec.a_blocks), rng)
    return kernel_intersection_basis(joint_increment_matrix(paths), spec)
