"""Eigenvectors of the weighted shift for arbitrary scalars.

Solving ``w**k x_{k+1} = lam x_k`` from ``x_1 = 1`` gives

    x_k = lam**(k-1) / w**T(1, k-1)          (0**0 = 1)

and every other solution is a multiple of it.  The sequence decays
superexponentially, so it lies in every l_p and in c_0.  Grid probes over
many ``lam`` are reported as finite evidence only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .exactnum import ComplexRational, Scalar, abs_sq, format_scalar, scalar_pow, trisum
from .seqspace import DEFAULT_MAX_INDEX, ClosedFormSequence, DecayCert, Space
from .shiftop import FieldMismatchError, ShiftOperator, Verdict, in_domain

__all__ = [
    "EigenPair",
    "eigenvector",
    "eigen_residual_check",
    "decay_index",
    "eigen_membership",
    "eigenspace_dimension_check",
    "SpectrumCell",
    "spectrum_probe",
    "spectrum_to_json",
    "spectrum_csv_rows",
]


@dataclass(frozen=True)
class EigenPair:
    op: ShiftOperator
    lam: Scalar
    vector: ClosedFormSequence


def eigenvector(op: ShiftOperator, lam) -> EigenPair:
    lam = op.check_scalar(lam)

    def term(k: int) -> Scalar:
        return scalar_pow(lam, k - 1) / op.wpow(trisum(1, k - 1))

    cert = DecayCert(1, abs_sq(lam), 1)
    return EigenPair(op, lam, ClosedFormSequence(term, cert, op.weight_abs_sq))


def eigen_residual_check(ep: EigenPair, K: int) -> bool:
    """Exact check of ``w**k x_{k+1} == lam x_k`` for ``1 <= k <= K``."""
    if K < 1:
        raise ValueError("K must be >= 1")
    op, x = ep.op, ep.vector
    return all(op.wpow(k) * x[k + 1] == ep.lam * x[k] for k in range(1, K + 1))


def decay_index(op: ShiftOperator, lam) -> int:
    """Least ``k`` with ``|lam| / |w|**(k/2) <= 1/2``.

    Squared twice to stay rational: ``16 |lam|**4 <= |w|**(2k)``.
    """
    l2 = abs_sq(lam)
    w2 = op.weight_abs_sq
    k, r = 1, w2
    while 16 * l2 * l2 > r:
        k += 1
        r *= w2
    return k


def eigen_membership(ep: EigenPair, sp: Space | None = None, K: int = 8) -> tuple[Verdict, int]:
    """Certify ``vector in D(A)`` and return the decay index ``k0``.

    From ``k0`` on, ``|x_k| <= (1/2)**(k-1)``; this is checked exactly on
    ``k0 <= k <= max(K, k0)`` and then membership of the vector and of its
    image is certified through the decay certificate.
    """
    op = ep.op if sp is None else ShiftOperator(ep.op.w, sp, ep.op.field)
    k0 = decay_index(op, ep.lam)
    for k in range(k0, max(K, k0) + 1):
        if abs_sq(ep.vector[k]) * 4 ** (k - 1) > 1:
            return Verdict("unknown", k, "decay bound violated"), k0
    return in_domain(op, 1, ep.vector, K), k0


def eigenspace_dimension_check(op: ShiftOperator, lam, K: int) -> bool:
    """Replay the recursion ``x_{k+1} = lam x_k / w**k`` from ``x_1 = 0`` and ``x_1 = 1``.

    The first must vanish identically and the second must reproduce the
    closed-form eigenvector, so every solution is ``x_1`` times it.
    """
    if K < 2:
        raise ValueError("K must be >= 2")
    lam = op.check_scalar(lam)
    closed = eigenvector(op, lam).vector
    zero, one = Fraction(0), Fraction(1)
    for k in range(1, K):
        if zero != 0 or one != closed[k]:
            return False
        wk = op.wpow(k)
        zero = lam * zero / wk
        one = lam * one / wk
    return zero == 0 and one == closed[K]


@dataclass(frozen=True)
class SpectrumCell:
    lam: Scalar
    residual_ok: bool = False
    membership_k0: int | None = None
    membership_ok: bool = False
    dim_ok: bool = False
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and self.residual_ok and self.membership_ok and self.dim_ok


def _probe_one(op: ShiftOperator, lam, K: int, max_index: int) -> SpectrumCell:
    try:
        ep = eigenvector(op, lam)
        residual = eigen_residual_check(ep, K)
        verdict, k0 = eigen_membership(ep, K=min(K, max_index))
        dim = eigenspace_dimension_check(op, lam, K)
    except (FieldMismatchError, ValueError) as exc:
        return SpectrumCell(lam, error=str(exc))
    return SpectrumCell(lam, residual, k0, verdict.certified, dim)


def spectrum_probe(op: ShiftOperator, grid: Iterable, K: int, max_index: int = DEFAULT_MAX_INDEX) -> list[SpectrumCell]:
    """Run every eigen check for each ``lam`` in ``grid``; failures stay per cell."""
    return [_probe_one(op, lam, K, max_index) for lam in grid]


def spectrum_to_json(op: ShiftOperator, K: int, cells: list[SpectrumCell]) -> dict:
    return {
        "w": format_scalar(op.w),
        "space": str(op.space),
        "K": K,
        "cells": [
            {
                "lambda": format_scalar(c.lam) if not isinstance(c.lam, str) else c.lam,
                "residual_ok": c.residual_ok,
                "membership_k0": c.membership_k0,
                "dim_ok": c.dim_ok,
                **({"error": c.error} if c.error else {}),
            }
            for c in cells
        ],
    }


def spectrum_csv_rows(cells: list[SpectrumCell]) -> list[list]:
    rows = []
    for c in cells:
        re_, im_ = (c.lam.re, c.lam.im) if isinstance(c.lam, ComplexRational) else (c.lam, 0)
        rows.append([format_scalar(Fraction(re_)), format_scalar(Fraction(im_)), c.membership_k0, c.passed])
    return rows
