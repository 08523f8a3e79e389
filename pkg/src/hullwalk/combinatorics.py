"""Exact integer combinatorics.

Stirling numbers of both kinds, their type-B analogues, dense integer
polynomials, and the coefficient families that feed the closed-form face
and absorption probabilities.  Everything here is exact; no floats.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence

__all__ = [
    "IntPolynomial",
    "poly_mul",
    "poly_eval",
    "stirling_first",
    "stirling_second",
    "rising_factorial_poly",
    "shifted_rising_poly",
    "b_poly",
    "walk_face_poly",
    "bridge_face_poly",
    "joint_absorption_poly",
    "hat_c",
    "ordered_bell",
    "alternating_tail",
    "corrupted_stirling_first",
]


class IntPolynomial:
    """Dense polynomial with arbitrary-precision integer coefficients.

    ``coeffs[j]`` is the coefficient of ``t**j``.  Trailing zeros are
    stripped, so the zero polynomial has ``coeffs == ()`` and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def one(cls) -> IntPolynomial:
        return cls((1,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, j: int) -> int:
        """Coefficient of ``t**j``; zero outside ``0..degree``."""
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (list, tuple)):
            return self.coeffs == IntPolynomial(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __mul__(self, other):
        if isinstance(other, IntPolynomial):
            return poly_mul(self, other)
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        return NotImplemented

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self.coeff(j) + other.coeff(j) for j in range(n))

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __call__(self, t):
        return poly_eval(self, t)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[j]
            if c == 0:
                continue
            mono = "" if j == 0 else ("t" if j == 1 else f"t^{j}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' + mono if mono else ''}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _as_poly(a) -> IntPolynomial:
    return a if isinstance(a, IntPolynomial) else IntPolynomial(a)


def poly_mul(a, b) -> IntPolynomial:
    """Schoolbook convolution of two integer polynomials."""
    a = _as_poly(a).coeffs
    b = _as_poly(b).coeffs
    if not a or not b:
        return IntPolynomial()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return IntPolynomial(out)


def poly_eval(a, t):
    """Horner evaluation; exact for ``int`` and ``Fraction`` arguments."""
    a = _as_poly(a).coeffs
    if isinstance(t, float):
        acc = 0.0
    else:
        t = Fraction(t)
        acc = Fraction(0)
    for c in reversed(a):
        acc = acc * t + c
    return acc


def _product(factors: Iterable[IntPolynomial]) -> IntPolynomial:
    out = IntPolynomial.one()
    for f in factors:
        out = poly_mul(out, f)
    return out


# -- Stirling tables --------------------------------------------------------
#
# Tables are triangular and grown row by row, truncated to a column width so
# that c(2001, 2) does not force a 2001-wide row.  The lock keeps growth
# consistent when called from threads.


class _TriangularTable:
    def __init__(self, step):
        # step(prev_row, n, m) -> entry of row n at column m
        self._step = step
        self._rows: list[list[int]] = [[1]]
        self._width = 0
        self._lock = threading.Lock()

    def _rebuild(self, width: int) -> None:
        rows = [[1] + [0] * width]
        for n in range(1, len(self._rows)):
            prev = rows[-1]
            rows.append([self._step(prev, n, m) for m in range(width + 1)])
        self._rows = rows
        self._width = width

    def get(self, n: int, m: int) -> int:
        if n < 0 or m < 0 or m > n:
            return 0
        with self._lock:
            if m > self._width:
                self._rebuild(max(m, 2 * self._width, 8))
            while len(self._rows) <= n:
                prev = self._rows[-1]
                k = len(self._rows)
                self._rows.append(
                    [self._step(prev, k, j) for j in range(self._width + 1)]
                )
            return self._rows[n][m]


def _s1_step(prev, n, m):
    left = prev[m - 1] if m >= 1 else 0
    return left + (n - 1) * prev[m]


def _s2_step(prev, n, m):
    left = prev[m - 1] if m >= 1 else 0
    return left + m * prev[m]


_S1 = _TriangularTable(_s1_step)
_S2 = _TriangularTable(_s2_step)
_S1_OVERRIDES: dict[tuple[int, int], int] = {}


def stirling_first(n: int, m: int) -> int:
    """Signless Stirling number of the first kind c(n, m).

    Counts permutations of ``n`` letters with exactly ``m`` cycles.  Returns 0
    for ``m`` outside ``0..n`` and for negative ``n``.
    """
    if _S1_OVERRIDES:
        hit = _S1_OVERRIDES.get((n, m))
        if hit is not None:
            return hit
    return _S1.get(n, m)


def stirling_second(n: int, m: int) -> int:
    """Stirling number of the second kind S(n, m); 0 out of range."""
    return _S2.get(n, m)


@contextmanager
def corrupted_stirling_first(n: int, m: int, value: int):
    """Temporarily replace one value of c(n, m).

    Testing hook for the identity battery: a corrupted table entry must be
    caught as a failed exact identity.
    """
    _S1_OVERRIDES[(n, m)] = value
    try:
        yield
    finally:
        _S1_OVERRIDES.pop((n, m), None)


# -- polynomial families ----------------------------------------------------


@lru_cache(maxsize=None)
def shifted_rising_poly(length: int) -> IntPolynomial:
    """(t+1)(t+2)...(t+length-1); the constant 1 when ``length <= 1``.

    This is the factor contributed by a bridge segment of ``length`` steps,
    i.e. the rising factorial of that length divided by ``t``.
    """
    out = IntPolynomial.one()
    for a in range(1, length):
        out = poly_mul(out, (a, 1))
    return out


@lru_cache(maxsize=None)
def rising_factorial_poly(n: int) -> IntPolynomial:
    """Coefficients of t(t+1)...(t+n-1); the constant 1 for ``n == 0``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return IntPolynomial.one()
    return poly_mul((0, 1), shifted_rising_poly(n))


@lru_cache(maxsize=None)
def b_poly(n: int) -> IntPolynomial:
    """(t+1)(t+3)...(t+2n-1), whose coefficients are B(n, 0..n)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = IntPolynomial.one()
    for a in range(1, 2 * n, 2):
        out = poly_mul(out, (a, 1))
    return out


def _check_indices(indices: Sequence[int], lo: int, hi: int, what: str):
    idx = tuple(int(i) for i in indices)
    if not idx:
        raise ValueError(f"{what}: at least one index required")
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise ValueError(f"{what}: indices must be strictly increasing, got {idx}")
    if idx[0] < lo or idx[-1] > hi:
        raise ValueError(f"{what}: indices must lie in [{lo}, {hi}], got {idx}")
    return idx


def walk_face_poly(n: int, indices: Sequence[int]) -> IntPolynomial:
    """Generating polynomial of the walk face coefficients P(j).

    The two boundary walk pieces (lengths ``i_1`` and ``n - i_{k+1}``)
    contribute type-B factors, every inner gap contributes
    ``(t+1)...(t+gap-1)``.
    """
    idx = _check_indices(indices, 0, n, "walk_face_poly")
    factors = [b_poly(idx[0]), b_poly(n - idx[-1])]
    factors += [shifted_rising_poly(b - a) for a, b in zip(idx, idx[1:])]
    return _product(factors)


def bridge_face_poly(n: int, indices: Sequence[int]) -> IntPolynomial:
    """Generating polynomial of the bridge face coefficients Q(j).

    Gaps are taken cyclically, the last one wrapping from ``i_{k+1}`` to
    ``n + i_1``.
    """
    idx = _check_indices(indices, 0, n - 1, "bridge_face_poly")
    ext = idx + (n + idx[0],)
    return _product(shifted_rising_poly(b - a) for a, b in zip(ext, ext[1:]))


def joint_absorption_poly(
    walk_lengths: Sequence[int], bridge_lengths: Sequence[int]
) -> IntPolynomial:
    """Product of B-factors over walks and shifted rising factors over bridges."""
    walk_lengths = list(walk_lengths)
    bridge_lengths = list(bridge_lengths)
    if not walk_lengths and not bridge_lengths:
        raise ValueError("need at least one walk or bridge")
    if any(n < 1 for n in walk_lengths):
        raise ValueError("walk lengths must be >= 1")
    if any(m < 2 for m in bridge_lengths):
        raise ValueError("bridge lengths must be >= 2")
    return _product(
        [b_poly(n) for n in walk_lengths]
        + [shifted_rising_poly(m) for m in bridge_lengths]
    )


def alternating_tail(poly: IntPolynomial, start: int) -> int:
    """poly(start) + poly(start-2) + ... + poly(start mod 2).

    Coefficients at negative indices count as zero; ``start < 0`` gives 0.
    """
    return sum(poly.coeff(j) for j in range(start, -1, -2))


def hat_c(N: int) -> int:
    """sum_{k=1}^{N} (k-1)! S(N, k)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return sum(factorial(k - 1) * stirling_second(N, k) for k in range(1, N + 1))


def ordered_bell(N: int) -> int:
    """Ordered Bell (Fubini) number: sum_k k! S(N, k)."""
    if N < 0:
        raise ValueError("N must be >= 0")
    return sum(factorial(k) * stirling_second(N, k) for k in range(0, N + 1))
