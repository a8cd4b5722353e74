"""Periodic points ``A^N x = x`` built from an arbitrary seed of length N."""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Mapping, Sequence

from .exactnum import Scalar, abs_enclosure, abs_sq, format_scalar, trisum
from .seqspace import ClosedFormSequence, DecayCert, FiniteSequence, NormValue, distance, norm_finite
from .shiftop import ShiftOperator

__all__ = [
    "PeriodicPoint",
    "make_periodic",
    "verify_periodicity",
    "periodic_approximation",
    "density_bound",
    "periodic_to_json",
]


class PeriodicPoint:
    """The sequence with ``x_k = seed_k`` (k <= N) and
    ``x_{k+N} = w**-T(k, k+N-1) * x_k``.

    ``overrides`` replaces individual entries after construction; it exists to
    build deliberately broken points for negative tests.
    """

    def __init__(self, op: ShiftOperator, seed: Sequence, overrides: Mapping[int, Scalar] | None = None):
        if len(seed) == 0:
            raise ValueError("periodic seed must be nonempty")
        self.op = op
        self.seed = tuple(op.check_scalar(v) for v in seed)
        self.N = len(self.seed)
        self.overrides = {k: op.check_scalar(v) for k, v in (overrides or {}).items()}
        self._memo: list[Scalar] = list(self.seed)
        self._lock = threading.Lock()
        c2 = max(abs_sq(v) * op.weight_abs_sq ** trisum(1, i - 1) for i, v in enumerate(self.seed, start=1))
        self.cert = DecayCert(c2, 1, 1)

    def _entry(self, k: int) -> Scalar:
        with self._lock:
            memo = self._memo
            while len(memo) < k:
                j = len(memo) + 1 - self.N
                memo.append(self.op.wpow(-trisum(j, j + self.N - 1)) * memo[j - 1])
            return memo[k - 1]

    def entry(self, k: int) -> Scalar:
        if k < 1:
            raise IndexError("sequences are indexed from 1")
        if k in self.overrides:
            return self.overrides[k]
        return self._entry(k)

    __getitem__ = entry

    def prefix(self, K: int) -> list[Scalar]:
        return [self.entry(k) for k in range(1, K + 1)]

    def as_sequence(self) -> ClosedFormSequence:
        return ClosedFormSequence(self.entry, self.cert, self.op.weight_abs_sq)


def make_periodic(op: ShiftOperator, seed: Sequence) -> PeriodicPoint:
    return PeriodicPoint(op, seed)


def verify_periodicity(p: PeriodicPoint, K: int) -> bool:
    """Exact check of ``w**T(k, k+N-1) * x_{k+N} == x_k`` for ``k <= K``."""
    if K < 1:
        raise ValueError("K must be >= 1")
    N, op = p.N, p.op
    return all(op.wpow(trisum(k, k + N - 1)) * p.entry(k + N) == p.entry(k) for k in range(1, K + 1))


def density_bound(op: ShiftOperator, y_norm_hi: Fraction, N: int) -> Fraction:
    """Lower end of ``||y|| |w|**-N / (1 - |w|**-N)`` (exact when ``|w|`` is rational)."""
    a = abs_enclosure(op.w)[1]
    r = a ** -N
    return y_norm_hi * r / (1 - r)


def periodic_approximation(
    op: ShiftOperator, y: FiniteSequence, N: int, K: int | None = None
) -> tuple[PeriodicPoint, NormValue, Fraction]:
    """Periodic point of period ``N`` agreeing with ``y`` on its support,
    its certified distance from ``y``, and the geometric distance bound."""
    if y.is_zero():
        raise ValueError("target must be nonzero")
    if N < y.support:
        raise ValueError(f"period {N} shorter than the target support {y.support}")
    p = make_periodic(op, list(y.entries) + [0] * (N - y.support))
    dist = distance(y, p.as_sequence(), op.space, K if K is not None else 2 * N + 4)
    ynorm = norm_finite(y, op.space)
    return p, dist, density_bound(op, ynorm.hi, N)


def periodic_to_json(p: PeriodicPoint, K: int, verified: bool) -> dict:
    return {
        "N": p.N,
        "seed": [format_scalar(v) for v in p.seed],
        "entries_prefix": [format_scalar(v) for v in p.prefix(K)],
        "verified_upto": K if verified else None,
    }
