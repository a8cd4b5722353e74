"""Construction of a hypercyclic vector for the weighted shift.

The targets ``y^(1), y^(2), ...`` run through every nonzero eventually-zero
sequence with rational (or complex-rational) entries.  Each target is pushed
far out by ``B^{n_m}`` and the vector is ``x = sum_m B^{n_m} y^(m)``.  The
shift amounts ``n_m`` are chosen so that, for every earlier index ``j``,

    n_m - n_j >= max(m, k_j)
    |w| ** T(1, n_m - n_j) >= |w| ** m * ||y^(m)||

where ``k_j`` is the last nonzero index of ``y^(j)``.  Then ``A^{n_k} x`` is
within ``|w|**-(k+1) / (1 - 1/|w|)`` of ``y^(k)``.  Only finite partial sums
are ever formed; the omitted tail is bounded by a geometric series.
"""

from __future__ import annotations

import itertools
import json
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .exactnum import (
    ComplexRational,
    abs_enclosure,
    format_scalar,
    parse_scalar,
    scalar_key,
    trisum,
)
from .seqspace import FiniteSequence, NormValue, norm_finite
from .shiftop import COMPLEX, REAL, ShiftOperator, apply_A_pow, apply_B_pow

__all__ = [
    "DenseTargetStream",
    "ScheduleEntry",
    "HypercyclicSchedule",
    "HypercyclicPartialSum",
    "enumerate_Y",
    "compute_k",
    "extend_schedule",
    "build_schedule",
    "check_schedule",
    "partial_hypercyclic_vector",
    "orbit_approach_error",
    "geometric_tail",
    "schedule_to_json",
    "schedule_from_json",
]


def _rationals_of_height(h: int) -> list[Fraction]:
    """All reduced p/q with |p| + q == h (q >= 1), including 0 for h == 1."""
    if h == 1:
        return [Fraction(0)]
    out = []
    for q in range(1, h):
        p = h - q
        if Fraction(p, q).denominator == q:
            out.append(Fraction(p, q))
            out.append(Fraction(-p, q))
    return out


def _entries_of_complexity(c: int, complex_field: bool) -> list:
    if not complex_field:
        return _rationals_of_height(c)
    out = []
    for hr in range(1, c):
        for re in _rationals_of_height(hr):
            for im in _rationals_of_height(c - hr):
                out.append(re if im == 0 else ComplexRational(re, im))
    return out


def _min_entry_complexity(complex_field: bool) -> int:
    return 2 if complex_field else 1


def _level(c: int, complex_field: bool) -> list[FiniteSequence]:
    """All canonical nonzero sequences with total complexity ``c``, sorted.

    Complexity is ``support + sum of entry heights``; an entry's height is
    ``|num| + den`` (summed over real and imaginary parts in the complex case).
    """
    lo = _min_entry_complexity(complex_field)
    found = []
    for s in range(1, c + 1):
        budget = c - s
        if budget < s * lo:
            break

        def rec(prefix, remaining, slots):
            if slots == 1:
                for v in _entries_of_complexity(remaining, complex_field):
                    if v:
                        found.append(FiniteSequence(prefix + [v]))
                return
            for h in range(lo, remaining - (slots - 1) * lo + 1):
                for v in _entries_of_complexity(h, complex_field):
                    rec(prefix + [v], remaining - h, slots - 1)

        rec([], budget, s)
    found.sort(key=lambda y: (y.support, tuple(scalar_key(v, complex_field) for v in y.entries)))
    return found


class DenseTargetStream:
    """Deterministic enumeration of the countable dense set of targets."""

    def __init__(self, field: str = REAL):
        if field not in (REAL, COMPLEX):
            raise ValueError(f"field must be {REAL!r} or {COMPLEX!r}")
        self.field = field
        self._cache: list[FiniteSequence] = []
        self._next_level = 1
        self._lock = threading.Lock()

    def __getitem__(self, m: int) -> FiniteSequence:
        """The ``m``-th target, 1-based."""
        if m < 1:
            raise IndexError("targets are indexed from 1")
        with self._lock:
            while len(self._cache) < m:
                self._cache.extend(_level(self._next_level, self.field == COMPLEX))
                self._next_level += 1
            return self._cache[m - 1]

    def __iter__(self) -> Iterator[FiniteSequence]:
        for m in itertools.count(1):
            yield self[m]

    def take(self, count: int) -> list[FiniteSequence]:
        return [self[m] for m in range(1, count + 1)]


_STREAMS = {REAL: DenseTargetStream(REAL), COMPLEX: DenseTargetStream(COMPLEX)}


def enumerate_Y(field: str, m: int) -> FiniteSequence:
    return _STREAMS[field][m]


def compute_k(y: FiniteSequence) -> int:
    if y.is_zero():
        raise ValueError("the zero sequence has no last nonzero index")
    return y.support


@dataclass(frozen=True)
class ScheduleEntry:
    y: FiniteSequence
    k: int
    n: int
    norm_hi: Fraction
    norm_sq_hi: Fraction


@dataclass(frozen=True)
class HypercyclicSchedule:
    entries: tuple[ScheduleEntry, ...] = ()

    @property
    def M(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> tuple[int, ...]:
        return tuple(e.n for e in self.entries)

    def __getitem__(self, m: int) -> ScheduleEntry:
        """1-based access."""
        return self.entries[m - 1]


def _conditions_hold(w2: Fraction, prev: tuple[ScheduleEntry, ...], m: int, n: int, norm_sq_hi: Fraction) -> bool:
    for e in prev:
        d = n - e.n
        if d < max(m, e.k):
            return False
        # |w|**T(1,d) >= |w|**m ||y||, squared on both sides
        if w2 ** trisum(1, d) < w2 ** m * norm_sq_hi:
            return False
    return True


def extend_schedule(op: ShiftOperator, s: HypercyclicSchedule, targets: Iterable[FiniteSequence]) -> HypercyclicSchedule:
    """Append one entry per target, each with the least admissible shift."""
    w2 = op.weight_abs_sq
    entries = list(s.entries)
    for y in targets:
        k = compute_k(y)
        norm = norm_finite(y, op.space)
        sq_hi = norm.sq_hi()
        m = len(entries) + 1
        if m == 1:
            n = 1
        else:
            prev = tuple(entries)
            n = entries[-1].n + 1
            while not _conditions_hold(w2, prev, m, n, sq_hi):
                n += 1
        entries.append(ScheduleEntry(y, k, n, norm.hi, sq_hi))
    return HypercyclicSchedule(tuple(entries))


def build_schedule(op: ShiftOperator, M: int, targets: Iterable[FiniteSequence] | None = None) -> HypercyclicSchedule:
    if targets is None:
        targets = _STREAMS[op.field].take(M)
    return extend_schedule(op, HypercyclicSchedule(), list(targets)[:M])


def check_schedule(op: ShiftOperator, s: HypercyclicSchedule) -> bool:
    """Re-verify the shift conditions for every pair ``j < m``."""
    if s.M and s[1].n != 1:
        return False
    w2 = op.weight_abs_sq
    for m in range(2, s.M + 1):
        e = s[m]
        if e.n <= s[m - 1].n or e.k != compute_k(e.y):
            return False
        if not _conditions_hold(w2, s.entries[: m - 1], m, e.n, e.norm_sq_hi):
            return False
    return True


def geometric_tail(op: ShiftOperator, first: int) -> Fraction:
    """Upper bound on ``sum_{m >= first} |w|**-m = |w|**-first / (1 - 1/|w|)``."""
    a = abs_enclosure(op.w)[0]
    return a ** -first / (1 - 1 / a)


def geometric_tail_lower(op: ShiftOperator, first: int) -> Fraction:
    a = abs_enclosure(op.w)[1]
    return a ** -first / (1 - 1 / a)


@dataclass(frozen=True)
class HypercyclicPartialSum:
    schedule: HypercyclicSchedule
    x_M: FiniteSequence
    tail_bound_hi: Fraction

    @property
    def M(self) -> int:
        return self.schedule.M


def partial_hypercyclic_vector(op: ShiftOperator, s: HypercyclicSchedule) -> HypercyclicPartialSum:
    x = FiniteSequence()
    for e in s.entries:
        x = x + apply_B_pow(op, e.n, e.y)
    return HypercyclicPartialSum(s, x, geometric_tail(op, s.M + 1))


def orbit_approach_error(op: ShiftOperator, hps: HypercyclicPartialSum, k: int) -> tuple[NormValue, Fraction]:
    """``(||y^(k) - A^{n_k} x_M||, bound)``.

    ``bound`` is a rational lower bound of ``|w|**-(k+1) / (1 - 1/|w|)`` (exact
    for rational ``|w|``) plus the certified truncation ``sum_{m>M} |w|**-m``.
    """
    if not 1 <= k <= hps.M:
        raise ValueError(f"k={k} outside the partial sum depth 1..{hps.M}")
    e = hps.schedule[k]
    err = norm_finite(e.y - apply_A_pow(op, e.n, hps.x_M), op.space)
    return err, geometric_tail_lower(op, k + 1) + hps.tail_bound_hi


def schedule_to_json(s: HypercyclicSchedule) -> list[dict]:
    return [
        {
            "m": m,
            "y": [format_scalar(v) for v in e.y.entries],
            "k": e.k,
            "n": e.n,
            "norm_hi": format_scalar(e.norm_hi),
        }
        for m, e in enumerate(s.entries, start=1)
    ]


def schedule_from_json(op: ShiftOperator, data) -> HypercyclicSchedule:
    """Replay a serialized schedule, recomputing norms in ``op.space``."""
    if isinstance(data, str):
        data = json.loads(data)
    entries = []
    for row in data:
        y = FiniteSequence(parse_scalar(t) for t in row["y"])
        norm = norm_finite(y, op.space)
        entries.append(ScheduleEntry(y, int(row["k"]), int(row["n"]), norm.hi, norm.sq_hi()))
    return HypercyclicSchedule(tuple(entries))
