"""Sequence spaces l_p (1 <= p < oo) and c_0 with exactly certified norms.

Two kinds of vectors live here:

* :class:`FiniteSequence` - an eventually-zero sequence stored as its
  trimmed prefix (an element of c_00).
* :class:`ClosedFormSequence` - an infinite sequence given by an exact term
  rule together with a :class:`DecayCert` of the shape

      |x_k| <= C * beta**(k-1) * |w|**(-T(1, k-1))      (k >= start)

  where ``T`` is :func:`~rolewicz.exactnum.trisum` and ``w`` the ambient
  operator weight.  ``C`` and ``beta`` are stored squared so the certificate
  stays rational.

Norms are returned as :class:`NormValue`: an exact rational when the norm is
rational, otherwise an exact power of the norm plus a rational enclosure, or
just an enclosure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

from .exactnum import (
    Scalar,
    abs_sq,
    as_scalar,
    format_scalar,
    is_real,
    root_enclosure,
    trisum,
)

__all__ = [
    "Lp",
    "C0",
    "Space",
    "parse_space",
    "FiniteSequence",
    "DecayCert",
    "ClosedFormSequence",
    "NormValue",
    "CertificateError",
    "norm_finite",
    "norm_closed_form",
    "distance",
    "cert_scale",
    "sequence_to_json",
]

DEFAULT_REL_BITS = 64
DEFAULT_MAX_INDEX = 10_000
_GUARD_BITS = 16


class CertificateError(ValueError):
    """A decay certificate failed to dominate or was violated at ``index``."""

    def __init__(self, message: str, index: int):
        super().__init__(f"{message} (index {index})")
        self.index = index


@dataclass(frozen=True)
class Lp:
    p: Fraction

    def __post_init__(self):
        object.__setattr__(self, "p", Fraction(self.p))
        if self.p < 1:
            raise ValueError("l_p requires p >= 1")

    def __str__(self):
        return f"lp({format_scalar(self.p)})"


@dataclass(frozen=True)
class C0:
    def __str__(self):
        return "c0"


Space = Union[Lp, C0]


def parse_space(name: str, p=None) -> Space:
    name = name.lower()
    if name == "c0":
        return C0()
    if name in ("lp", "l_p"):
        return Lp(Fraction(p if p is not None else 2))
    raise ValueError(f"unknown space {name!r}; expected 'lp' or 'c0'")


class FiniteSequence:
    """Eventually-zero sequence; ``x[k]`` is 1-based and 0 beyond the support."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable = ()):
        vals = [as_scalar(v) for v in entries]
        while vals and not vals[-1]:
            vals.pop()
        object.__setattr__(self, "entries", tuple(vals))

    def __setattr__(self, name, value):
        raise AttributeError("FiniteSequence is immutable")

    @classmethod
    def unit(cls, k: int) -> FiniteSequence:
        """The standard basis vector e_k."""
        return cls([0] * (k - 1) + [1])

    @property
    def support(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def __getitem__(self, k: int) -> Scalar:
        if k < 1:
            raise IndexError("sequences are indexed from 1")
        if k > len(self.entries):
            return Fraction(0)
        return self.entries[k - 1]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __add__(self, other):
        if not isinstance(other, FiniteSequence):
            return NotImplemented
        n = max(self.support, other.support)
        return FiniteSequence(self[k] + other[k] for k in range(1, n + 1))

    def __sub__(self, other):
        if not isinstance(other, FiniteSequence):
            return NotImplemented
        n = max(self.support, other.support)
        return FiniteSequence(self[k] - other[k] for k in range(1, n + 1))

    def __neg__(self):
        return FiniteSequence(-v for v in self.entries)

    def __rmul__(self, c):
        c = as_scalar(c)
        return FiniteSequence(c * v for v in self.entries)

    def __eq__(self, other):
        if not isinstance(other, FiniteSequence):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        inner = ", ".join(format_scalar(v) for v in self.entries)
        return f"FiniteSequence([{inner}])"


@dataclass(frozen=True)
class DecayCert:
    """Certificate ``|x_k| <= C * beta**(k-1) * |w|**(-T(1,k-1))`` for ``k >= start``."""

    C2: Fraction
    beta2: Fraction
    start: int = 1

    def __post_init__(self):
        object.__setattr__(self, "C2", Fraction(self.C2))
        object.__setattr__(self, "beta2", Fraction(self.beta2))
        if self.C2 < 0 or self.beta2 < 0:
            raise ValueError("certificate constants must be nonnegative")
        if self.start < 1:
            raise ValueError("certificate start index must be >= 1")

    def bound_sq(self, k: int, weight_abs_sq: Fraction) -> Fraction:
        """Squared bound on ``|x_k|``."""
        return self.C2 * self.beta2 ** (k - 1) / Fraction(weight_abs_sq) ** trisum(1, k - 1)

    def to_json(self) -> dict:
        return {"C2": format_scalar(self.C2), "beta2": format_scalar(self.beta2), "start": self.start}


def cert_scale(c: DecayCert, factor_abs_sq) -> DecayCert:
    """Certificate for ``f * x`` given one for ``x`` and ``|f|**2``."""
    factor_abs_sq = Fraction(factor_abs_sq)
    if factor_abs_sq < 0:
        raise ValueError("squared scale factor must be nonnegative")
    return DecayCert(c.C2 * factor_abs_sq, c.beta2, c.start)


@dataclass(frozen=True)
class ClosedFormSequence:
    term: Callable[[int], Scalar]
    cert: DecayCert
    weight_abs_sq: Fraction

    def __post_init__(self):
        object.__setattr__(self, "weight_abs_sq", Fraction(self.weight_abs_sq))

    @classmethod
    def from_finite(cls, x: FiniteSequence, weight_abs_sq) -> ClosedFormSequence:
        # zero beyond the support: C = 0 from support+1 on
        return cls(x.__getitem__, DecayCert(0, 0, x.support + 1), weight_abs_sq)

    def __getitem__(self, k: int) -> Scalar:
        return self.term(k)

    def prefix(self, K: int) -> list[Scalar]:
        return [self.term(k) for k in range(1, K + 1)]

    def head(self, K: int) -> FiniteSequence:
        return FiniteSequence(self.prefix(K))

    def first_violation(self, lo: int, hi: int) -> int | None:
        """Smallest ``k`` in ``[max(lo, start), hi]`` where the certificate fails."""
        for k in range(max(lo, self.cert.start), hi + 1):
            if abs_sq(self.term(k)) > self.cert.bound_sq(k, self.weight_abs_sq):
                return k
        return None


@dataclass(frozen=True)
class NormValue:
    """A norm as exact value, exact power, or certified enclosure.

    ``kind`` is ``"exact"`` (``lo == hi`` is the norm), ``"power"``
    (``power == norm**order`` exactly, ``[lo, hi]`` encloses the norm) or
    ``"enclosure"`` (only ``[lo, hi]`` is known).
    """

    kind: str
    lo: Fraction
    hi: Fraction
    power: Fraction | None = None
    order: Fraction | None = None

    @property
    def value(self) -> Fraction:
        if self.kind != "exact":
            raise ValueError(f"norm is not rational-exact (kind {self.kind!r})")
        return self.lo

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def sq_hi(self) -> Fraction:
        """Upper bound on the squared norm; exact when the norm is known exactly."""
        if self.power is not None and self.order == 2:
            return self.power
        return self.hi * self.hi

    def contains(self, v) -> bool:
        return self.lo <= v <= self.hi

    def to_json(self) -> dict:
        d = {"kind": self.kind, "lo": format_scalar(self.lo), "hi": format_scalar(self.hi)}
        if self.power is not None:
            d["power"] = format_scalar(self.power)
            d["order"] = format_scalar(self.order)
        return d


def _pow_enclosure(q: Fraction, p: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Enclosure of ``q**(p/2)`` for rational ``q >= 0`` (``q`` a squared modulus)."""
    a, b = p.numerator, p.denominator
    return root_enclosure(q ** a, 2 * b, bits)


def _norm_from_power(s_lo: Fraction, s_hi: Fraction, p: Fraction, exact: bool, bits: int) -> NormValue:
    a, b = p.numerator, p.denominator
    if exact:
        lo, hi = root_enclosure(s_lo ** b, a, bits)
        if lo == hi:
            return NormValue("exact", lo, hi, s_lo, p)
        return NormValue("power", lo, hi, s_lo, p)
    lo = root_enclosure(s_lo ** b, a, bits)[0]
    hi = root_enclosure(s_hi ** b, a, bits)[1]
    return NormValue("enclosure", lo, hi)


def _lp_power_sum(entries: Sequence[Scalar], p: Fraction, bits: int) -> tuple[Fraction, Fraction, bool]:
    """Enclosure ``(lo, hi, exact)`` of ``sum |x_k|**p``."""
    s_lo = s_hi = Fraction(0)
    exact = True
    for v in entries:
        if not v:
            continue
        q = abs_sq(v)
        if p.denominator == 1 and p.numerator % 2 == 0:
            t = q ** (p.numerator // 2)
            s_lo += t
            s_hi += t
            continue
        if p.denominator == 1 and is_real(v):
            t = abs(as_scalar(v)) ** p.numerator
            s_lo += t
            s_hi += t
            continue
        lo, hi = _pow_enclosure(q, p, bits)
        if lo != hi:
            exact = False
        s_lo += lo
        s_hi += hi
    return s_lo, s_hi, exact


def _bits_for(n: int, rel_bits: int) -> int:
    return rel_bits + _GUARD_BITS + max(1, n).bit_length()


def norm_finite(x: FiniteSequence, sp: Space, rel_bits: int = DEFAULT_REL_BITS) -> NormValue:
    """Norm of an eventually-zero sequence.

    >>> norm_finite(FiniteSequence([3, 4]), Lp(2)).value
    Fraction(5, 1)
    """
    if x.is_zero():
        return NormValue("exact", Fraction(0), Fraction(0), Fraction(0), Fraction(2) if isinstance(sp, C0) else sp.p)
    bits = _bits_for(x.support, rel_bits)
    if isinstance(sp, C0):
        s2 = max(abs_sq(v) for v in x.entries)
        return _norm_from_power(s2, s2, Fraction(2), True, bits)
    s_lo, s_hi, exact = _lp_power_sum(x.entries, sp.p, bits)
    return _norm_from_power(s_lo, s_hi, sp.p, exact, bits)


def _tail_start(x: ClosedFormSequence, K: int, max_index: int) -> int:
    # bound(k+1)/bound(k) = beta * |w|**-k, so from k0 on with 4*beta2 <= w2**k0
    # the bounds are dominated by a ratio-1/2 geometric series
    k0 = max(K + 1, x.cert.start, 1)
    w2 = x.weight_abs_sq
    if w2 <= 1:
        raise ValueError("weight must satisfy |w|>1")
    while 4 * x.cert.beta2 > w2 ** k0:
        k0 += 1
        if k0 > max_index:
            raise CertificateError("certificate too weak to dominate the tail", k0)
    return k0


def norm_closed_form(
    x: ClosedFormSequence,
    sp: Space,
    K: int,
    rel_bits: int = DEFAULT_REL_BITS,
    max_index: int = DEFAULT_MAX_INDEX,
) -> NormValue:
    """Certified enclosure of the norm of an infinite closed-form sequence.

    The first ``k0 - 1 >= K`` terms are summed exactly; the remainder is
    bounded through the certificate by a geometric series of ratio 1/2.
    The certificate itself is checked on every summed term and at ``k0``;
    a violation raises :class:`CertificateError` naming the index.
    """
    k0 = _tail_start(x, K, max_index)
    bad = x.first_violation(1, k0)
    if bad is not None:
        raise CertificateError("term exceeds its decay certificate", bad)
    head = x.head(k0 - 1)
    b0_sq = x.cert.bound_sq(k0, x.weight_abs_sq)
    if b0_sq == 0:
        return norm_finite(head, sp, rel_bits)

    bits = _bits_for(k0, rel_bits)
    if isinstance(sp, C0):
        head_norm = norm_finite(head, sp, rel_bits)
        b0_hi = root_enclosure(b0_sq, 2, bits)[1]
        return NormValue("enclosure", head_norm.lo, max(head_norm.hi, b0_hi))
    p = sp.p
    s_lo, s_hi, _ = _lp_power_sum(head.entries, p, bits)
    # sum_{j>=0} 2**(-p j) = 2**p / (2**p - 1) for integer p, else <= 2
    geo = Fraction(2 ** p.numerator, 2 ** p.numerator - 1) if p.denominator == 1 else Fraction(2)
    tail_hi = geo * _pow_enclosure(b0_sq, p, bits)[1]
    return _norm_from_power(s_lo, s_hi + tail_hi, p, False, bits)


def _as_closed(x, weight_abs_sq) -> ClosedFormSequence:
    if isinstance(x, ClosedFormSequence):
        return x
    return ClosedFormSequence.from_finite(x, weight_abs_sq)


def _sum_c2(a: Fraction, b: Fraction) -> Fraction:
    # (C1 + C2)**2 <= 2 (C1**2 + C2**2); exact when either vanishes
    if a == 0 or b == 0:
        return a + b
    return 2 * (a + b)


def distance(x, y, sp: Space, K: int, rel_bits: int = DEFAULT_REL_BITS) -> NormValue:
    """Certified ``||x - y||`` for finite or closed-form operands."""
    if isinstance(x, FiniteSequence) and isinstance(y, FiniteSequence):
        return norm_finite(x - y, sp, rel_bits)
    if x is y or x == y:
        # same term rule: the certificate tail would only add slack
        return norm_finite(FiniteSequence(), sp, rel_bits)
    w2 = x.weight_abs_sq if isinstance(x, ClosedFormSequence) else y.weight_abs_sq
    cx, cy = _as_closed(x, w2), _as_closed(y, w2)
    if cx.weight_abs_sq != cy.weight_abs_sq:
        raise ValueError("operands are certified against different weights")
    cert = DecayCert(
        _sum_c2(cx.cert.C2, cy.cert.C2),
        max(cx.cert.beta2, cy.cert.beta2),
        max(cx.cert.start, cy.cert.start),
    )
    tx, ty = cx.term, cy.term
    diff = ClosedFormSequence(lambda k: tx(k) - ty(k), cert, w2)
    return norm_closed_form(diff, sp, K, rel_bits)


def sequence_to_json(x, K: int = 10) -> dict:
    if isinstance(x, FiniteSequence):
        return {"kind": "finite", "entries": [format_scalar(v) for v in x.entries]}
    return {
        "kind": "closed-form",
        "first": [format_scalar(v) for v in x.prefix(K)],
        "cert": x.cert.to_json(),
    }
