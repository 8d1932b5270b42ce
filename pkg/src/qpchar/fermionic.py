"""Closed fermionic sum for the character, with certified truncation.

The exponent of each summand is a positive definite quadratic form in the
dual-charge-type entries plus a nonnegative linear part.  A rational lower
bound ``lam`` on its smallest eigenvalue is certified by an exact LDL^T
factorization of ``Q - lam*I``, so every dual-charge-type of exponent at most
N lies in the ball ``|D|^2 <= N / lam``.  Inside that ball the sum is walked
Fincke-Pohst style using the exact factorization of ``Q`` itself, which only
skips points whose exponent provably exceeds N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .affine import WeightSpec
from .errors import UnsoundTruncation
from .qseries import TruncatedSeries, UniSeries, checked, pochhammer_inverse
from .quasiparticle import DualChargeType, cross_term_dual, minimal_energy

# absolute slack for the floating-point pruning inside the certified ball;
# exponents are exact integers, rounding error is many orders smaller
_PRUNE_SLACK = 1e-7


@dataclass(frozen=True)
class QuadraticForm:
    """Exponent form on the flattened dual-charge-type vector (color 1 first)."""

    sizes: tuple[int, ...]
    matrix: tuple[tuple[Fraction, ...], ...]
    linear: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.linear)

    def split(self, x) -> DualChargeType:
        out, pos = [], 0
        for size in self.sizes:
            out.append(tuple(x[pos:pos + size]))
            pos += size
        return tuple(out)

    def evaluate(self, x) -> Fraction:
        quad = sum(
            self.matrix[a][b] * x[a] * x[b]
            for a in range(self.dim) for b in range(self.dim)
            if x[a] and x[b]
        )
        return quad + sum(l * v for l, v in zip(self.linear, x))


def build_quadratic_form(weight: WeightSpec, convention: str = "min") -> QuadraticForm:
    sizes = weight.k_alpha
    offsets = [sum(sizes[:i]) for i in range(len(sizes))]
    dim = sum(sizes)
    Q = [[Fraction(0)] * dim for _ in range(dim)]
    for a in range(dim):
        Q[a][a] = Fraction(1)
    half = Fraction(1, 2)
    # read off the bilinear cross term one pair of unit vectors at a time
    for i in range(2, weight.algebra.rank + 1):
        for t in range(sizes[i - 2]):
            for s in range(sizes[i - 1]):
                unit = [tuple(0 for _ in range(size)) for size in sizes]
                unit[i - 2] = tuple(int(u == t) for u in range(sizes[i - 2]))
                unit[i - 1] = tuple(int(u == s) for u in range(sizes[i - 1]))
                c = cross_term_dual(weight, tuple(unit), i, convention)
                if c:
                    a, b = offsets[i - 2] + t, offsets[i - 1] + s
                    Q[a][b] -= c * half
                    Q[b][a] -= c * half
    linear = [0] * dim
    if weight.kj:
        base = offsets[weight.j - 1]
        for t in range(weight.threshold, sizes[weight.j - 1]):
            linear[base + t] = 1
    return QuadraticForm(tuple(sizes), tuple(tuple(row) for row in Q), tuple(linear))


def ldl_pivots(matrix, semidefinite: bool = False) -> list[Fraction] | None:
    """Exact LDL^T pivots of a symmetric rational matrix.

    Returns None unless every pivot is positive; with ``semidefinite`` a zero
    pivot is accepted when the rest of its column vanishes.
    """
    A = [list(map(Fraction, row)) for row in matrix]
    n = len(A)
    pivots = []
    for k in range(n):
        d = A[k][k]
        if d == 0 and semidefinite and not any(A[i][k] for i in range(k + 1, n)):
            pivots.append(d)
            continue
        if d <= 0:
            return None
        pivots.append(d)
        for i in range(k + 1, n):
            if A[i][k]:
                f = A[i][k] / d
                for j in range(k + 1, n):
                    if A[k][j]:
                        A[i][j] -= f * A[k][j]
    return pivots


def check_positive_definite(qf: QuadraticForm) -> Fraction:
    """Certified positive lower bound on the smallest eigenvalue of the quadratic part."""
    if qf.dim == 0:
        return Fraction(1)
    numeric = float(np.linalg.eigvalsh(np.array(qf.matrix, dtype=float)).min())
    if not numeric > 0:
        raise UnsoundTruncation(f"quadratic form is not positive definite (min eigenvalue {numeric:.3g})")
    # Q - lam*I positive semidefinite certifies lam <= smallest eigenvalue
    candidates = [Fraction(numeric).limit_denominator(10**6)]
    lam = Fraction(math.floor(numeric * (1 - 1e-9) * 2**30), 2**30)
    while lam > 0 and len(candidates) < 40:
        candidates.append(lam)
        lam /= 2
    for lam in candidates:
        if lam <= 0:
            continue
        shifted = [[v - (lam if a == b else 0) for b, v in enumerate(row)] for a, row in enumerate(qf.matrix)]
        if ldl_pivots(shifted, semidefinite=True) is not None:
            return lam
    raise UnsoundTruncation("could not certify positive definiteness")


def _upper_factor(qf: QuadraticForm):
    """Q = U^T diag(d) U with U unit upper triangular, as floats for pruning."""
    n = qf.dim
    A = [list(row) for row in qf.matrix]
    d = [Fraction(0)] * n
    U = [[Fraction(0)] * n for _ in range(n)]
    for k in range(n):
        d[k] = A[k][k]
        if d[k] <= 0:
            raise UnsoundTruncation("quadratic form is not positive definite")
        U[k][k] = Fraction(1)
        for j in range(k + 1, n):
            U[k][j] = A[k][j] / d[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] -= A[i][k] * A[k][j] / d[k]
    return [float(x) for x in d], [[float(x) for x in row] for row in U]


def iter_dual_charge_types(weight: WeightSpec, N: int, radius_sq: Fraction, qf: QuadraticForm):
    """Yield flattened dual-charge-types with |D|^2 <= radius_sq whose quadratic part may be <= N.

    Variables are fixed from the last one backwards; the partial sum of
    ``d_k * (x_k + sum_{j>k} U_kj x_j)^2`` never exceeds the full form.
    """
    n = qf.dim
    if n == 0:
        yield ()
        return
    d, U = _upper_factor(qf)
    # position -> previous variable within the same color (must be >= it)
    same_color_next = [False] * n
    pos = 0
    for size in qf.sizes:
        for t in range(size - 1):
            same_color_next[pos + t] = True
        pos += size
    x = [0] * n
    limit = N + _PRUNE_SLACK

    def rec(k: int, partial: float, norm_sq: int):
        if k < 0:
            yield tuple(x)
            return
        c = sum(U[k][j] * x[j] for j in range(k + 1, n) if x[j])
        room = limit - partial
        half_width = math.sqrt(max(room, 0.0) / d[k])
        lo = max(x[k + 1] if same_color_next[k] else 0, math.ceil(-c - half_width))
        hi = math.floor(-c + half_width)
        for v in range(lo, hi + 1):
            nsq = norm_sq + v * v
            if nsq > radius_sq:
                break
            val = partial + d[k] * (v + c) ** 2
            if val > limit:
                continue
            x[k] = v
            yield from rec(k - 1, val, nsq)
        x[k] = 0

    yield from rec(n - 1, 0.0, 0)


@lru_cache(maxsize=4096)
def _denominator_series(diffs: tuple[int, ...], N: int) -> UniSeries:
    acc = UniSeries(N, (1,) + (0,) * N)
    for r in diffs:
        if r:
            acc = acc * pochhammer_inverse(r, N)
    return acc


def summand(weight: WeightSpec, dual: DualChargeType, N: int, convention: str = "min"):
    """(E_min, color-type, denominator expansion truncated at N - E_min) or None if E_min > N."""
    energy = minimal_energy(weight, dual, convention)
    if energy > N:
        return None
    diffs = []
    for d in dual:
        padded = tuple(d) + (0,)
        diffs.extend(padded[t] - padded[t + 1] for t in range(len(d)))
    series = _denominator_series(tuple(sorted(x for x in diffs if x)), N - energy)
    return energy, tuple(sum(d) for d in dual), series


def fermionic_character(
    weight: WeightSpec,
    N: int,
    convention: str = "min",
    radius_factor: int = 1,
    region: str | None = None,
) -> TruncatedSeries:
    """Evaluate the fermionic sum up to q^N.

    ``radius_factor`` enlarges the certified ball; results must not change.
    ``region`` picks the form whose certificate bounds the summation
    (defaults to ``convention``).  Passing ``region="min"`` with
    ``convention="literal"`` evaluates the literal exponent over the region
    certified for the min-form exponent, which is how the diagnostic runs
    when the literal form is only semidefinite.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    qf = build_quadratic_form(weight, region or convention)
    lam = check_positive_definite(qf)
    radius_sq = Fraction(N) / lam * radius_factor
    terms: dict = {}
    for flat in iter_dual_charge_types(weight, N, radius_sq, qf):
        dual = qf.split(flat)
        item = summand(weight, dual, N, convention)
        if item is None:
            continue
        energy, ctype, series = item
        for e, c in enumerate(series.coeffs):
            if c:
                key = (energy + e, ctype)
                terms[key] = checked(terms.get(key, 0) + c)
    return TruncatedSeries(N, weight.algebra.rank, terms)


def certified_radius_sq(weight: WeightSpec, N: int, convention: str = "min") -> Fraction:
    return Fraction(N) / check_positive_definite(build_quadratic_form(weight, convention))
