"""The weighted backward shift ``A x = (w**k x_{k+1})_k`` and its right inverse.

Powers are evaluated through their closed forms

    (A^n x)_k     = w**T(k, k+n-1) * x_{k+n}
    (B^n x)_{k+n} = w**-T(k, k+n-1) * x_k,   first n entries zero

with ``T`` the triangular sum; iterated single steps are kept only as a
cross-check in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactnum import Scalar, abs_sq, as_scalar, format_scalar, is_real, scalar_pow, trisum
from .seqspace import (
    DEFAULT_MAX_INDEX,
    C0,
    CertificateError,
    ClosedFormSequence,
    DecayCert,
    FiniteSequence,
    Space,
    norm_closed_form,
)

__all__ = [
    "REAL",
    "COMPLEX",
    "WeightError",
    "FieldMismatchError",
    "ShiftOperator",
    "Verdict",
    "apply_A",
    "apply_A_pow",
    "apply_B",
    "apply_B_pow",
    "apply_A_closed",
    "in_domain",
    "right_inverse_check",
    "unboundedness_witness",
]

REAL = "real"
COMPLEX = "complex"


class WeightError(ValueError):
    pass


class FieldMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class ShiftOperator:
    """``A`` on ``space`` with weight ``w`` over the real or complex field."""

    w: Scalar
    space: Space = C0()
    field: str = REAL

    def __post_init__(self):
        object.__setattr__(self, "w", as_scalar(self.w))
        if self.field not in (REAL, COMPLEX):
            raise ValueError(f"field must be {REAL!r} or {COMPLEX!r}")
        if self.field == REAL and not is_real(self.w):
            raise FieldMismatchError(f"complex weight {format_scalar(self.w)} on a real space")
        if abs_sq(self.w) <= 1:
            raise WeightError("weight must satisfy |w|>1")

    @property
    def weight_abs_sq(self) -> Fraction:
        return abs_sq(self.w)

    def check_scalar(self, s: Scalar) -> Scalar:
        s = as_scalar(s)
        if self.field == REAL and not is_real(s):
            raise FieldMismatchError(f"complex scalar {format_scalar(s)} on a real space")
        return s

    def wpow(self, e: int) -> Scalar:
        return _cached_pow(self.w, e)


@lru_cache(maxsize=4096)
def _cached_pow(w: Scalar, e: int) -> Scalar:
    if e < 0:
        return 1 / _cached_pow(w, -e)
    return scalar_pow(w, e)


def apply_A(op: ShiftOperator, x: FiniteSequence) -> FiniteSequence:
    return FiniteSequence(op.wpow(k) * x[k + 1] for k in range(1, x.support))


def apply_A_pow(op: ShiftOperator, n: int, x: FiniteSequence) -> FiniteSequence:
    if n < 0:
        raise ValueError("operator power must be nonnegative")
    if n == 0:
        return x
    return FiniteSequence(
        op.wpow(trisum(k, k + n - 1)) * x[k + n] for k in range(1, x.support - n + 1)
    )


def apply_B(op: ShiftOperator, x: FiniteSequence) -> FiniteSequence:
    return apply_B_pow(op, 1, x)


def apply_B_pow(op: ShiftOperator, n: int, x: FiniteSequence) -> FiniteSequence:
    if n < 0:
        raise ValueError("operator power must be nonnegative")
    if n == 0 or x.is_zero():
        return x
    shifted = [op.wpow(-trisum(k, k + n - 1)) * x[k] for k in range(1, x.support + 1)]
    return FiniteSequence([0] * n + shifted)


def apply_A_closed(op: ShiftOperator, n: int, x: ClosedFormSequence) -> ClosedFormSequence:
    """``A^n`` on a closed-form sequence, carrying its certificate along.

    Since ``T(1, k+n-1) = T(1, k-1) + T(k, k+n-1)`` the weight growth cancels:
    the image satisfies the same certificate shape with ``C' = C beta**n``.
    """
    if x.weight_abs_sq != op.weight_abs_sq:
        raise ValueError("certificate issued for a different weight")
    if n == 0:
        return x
    term = x.term

    def image(k: int) -> Scalar:
        return op.wpow(trisum(k, k + n - 1)) * term(k + n)

    c = x.cert
    cert = DecayCert(c.C2 * c.beta2 ** n, c.beta2, max(1, c.start - n))
    return ClosedFormSequence(image, cert, x.weight_abs_sq)


@dataclass(frozen=True)
class Verdict:
    """``status`` is ``"yes"`` (membership proven) or ``"unknown"``; never ``"no"``."""

    status: str
    failing_index: int | None = None
    reason: str = ""

    @property
    def certified(self) -> bool:
        return self.status == "yes"


def in_domain(op: ShiftOperator, n: int, x, K: int = 8, max_index: int = DEFAULT_MAX_INDEX) -> Verdict:
    """Try to certify ``x`` in the maximal domain of ``A^n``."""
    if isinstance(x, FiniteSequence):
        return Verdict("yes")
    try:
        norm_closed_form(x, op.space, K, max_index=max_index)
        norm_closed_form(apply_A_closed(op, n, x), op.space, K, max_index=max_index)
    except CertificateError as exc:
        return Verdict("unknown", exc.index, str(exc))
    return Verdict("yes")


def right_inverse_check(op: ShiftOperator, n: int, x: FiniteSequence) -> bool:
    return apply_A_pow(op, n, apply_B_pow(op, n, x)) == x


def unboundedness_witness(op: ShiftOperator, bound) -> tuple[int, Fraction]:
    """Least ``k`` with ``||A e_{k+1}|| = |w|**k > bound``, and ``|w|**(2k)``."""
    bound = Fraction(bound)
    if bound <= 0:
        raise ValueError("bound must be positive")
    w2 = op.weight_abs_sq
    b2 = bound * bound
    k, r = 1, w2
    while r <= b2:
        k += 1
        r *= w2
    return k, r
