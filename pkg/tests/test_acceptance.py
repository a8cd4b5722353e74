"""Acceptance criteria, one test per criterion.

Each test checks the library against an oracle written here from first
principles: single-step recursions instead of closed-form powers, plain
Fraction sums instead of the norm machinery.  Runtime budgets are asserted
alongside correctness.
"""

import os
import random
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from rolewicz.exactnum import ComplexRational, abs_sq
from rolewicz.hyperengine import (
    build_schedule,
    check_schedule,
    enumerate_Y,
    orbit_approach_error,
    partial_hypercyclic_vector,
)
from rolewicz.periodic import make_periodic, periodic_approximation, verify_periodicity
from rolewicz.seqspace import C0, FiniteSequence, Lp, norm_finite
from rolewicz.shiftop import (
    COMPLEX,
    REAL,
    ShiftOperator,
    apply_A,
    apply_A_pow,
    apply_B_pow,
    right_inverse_check,
    unboundedness_witness,
)
from rolewicz.spectral import (
    decay_index,
    eigen_membership,
    eigen_residual_check,
    eigenspace_dimension_check,
    eigenvector,
)

SPACES = [Lp(1), Lp(2), Lp(3), C0()]


@contextmanager
def budget(seconds):
    t0 = time.perf_counter()
    yield
    elapsed = time.perf_counter() - t0
    assert elapsed < seconds, f"took {elapsed:.2f}s, budget {seconds}s"


# ---------------------------------------------------------------- oracles

def step_A(w, xs):
    """One application of A to a plain list: (A x)_k = w**k x_{k+1}."""
    return [w ** k * xs[k] for k in range(1, len(xs))]


def step_B(w, xs):
    """One application of B: (B x)_1 = 0, (B x)_{k+1} = x_k / w**k."""
    return [Fraction(0)] + [v / w ** k for k, v in enumerate(xs, start=1)]


def iterate(f, w, xs, n):
    for _ in range(n):
        xs = f(w, xs)
    return xs


def trimmed(xs):
    xs = list(xs)
    while xs and xs[-1] == 0:
        xs.pop()
    return xs


def power_sum(xs, p):
    """sum |x_k|**p for integer p, kept rational via |x|**2 when p is even."""
    if p % 2 == 0:
        return sum(abs_sq(v) ** (p // 2) for v in xs)
    assert all(isinstance(v, Fraction) for v in xs)
    return sum(abs(v) ** p for v in xs)


def norm_at_most(xs, sp, r: Fraction) -> bool:
    """Exact test of ||xs|| <= r in sp, for real rational data."""
    if isinstance(sp, C0):
        return all(abs_sq(v) <= r * r for v in xs)
    return power_sum(xs, sp.p) <= r ** sp.p


def norm_of(xs, sp):
    """Exact norm when it is rational (p = 1 or c0); None otherwise."""
    if isinstance(sp, C0):
        return max((abs(v) for v in xs), default=Fraction(0))
    if sp.p == 1:
        return sum(abs(v) for v in xs)
    return None


def random_sequence(rng, max_support, complex_field=False):
    def q():
        return Fraction(rng.randint(-20, 20), rng.randint(1, 12))

    s = rng.randint(0, max_support)
    if not complex_field:
        return FiniteSequence(q() for _ in range(s))
    return FiniteSequence(
        (lambda a, b: a if b == 0 else ComplexRational(a, b))(q(), q()) for _ in range(s)
    )


CORPUS_OPS = [
    ShiftOperator(2),
    ShiftOperator(Fraction(3, 2)),
    ShiftOperator(ComplexRational(1, 1), field=COMPLEX),
]


def corpus(op, seed):
    rng = random.Random(seed)
    return [random_sequence(rng, 12, op.field == COMPLEX) for _ in range(100)]


# ---------------------------------------------------------------- criteria

@pytest.mark.parametrize("op", CORPUS_OPS, ids=["w=2", "w=3/2", "w=1+i"])
def test_c01_right_inverse_law(op):
    xs = corpus(op, 101)
    with budget(1):
        for n in range(0, 9):
            for x in xs:
                assert right_inverse_check(op, n, x)
                assert apply_A_pow(op, n, apply_B_pow(op, n, x)) == x


@pytest.mark.parametrize("op", CORPUS_OPS, ids=["w=2", "w=3/2", "w=1+i"])
def test_c02_power_formula_matches_iteration(op):
    xs = corpus(op, 202)
    with budget(1):
        for n in range(0, 9):
            for x in xs:
                it = x
                for _ in range(n):
                    it = apply_A(op, it)
                assert apply_A_pow(op, n, x) == it
    for n in range(0, 9):
        for x in xs[:25]:
            assert list(apply_A_pow(op, n, x).entries) == trimmed(iterate(step_A, op.w, list(x.entries), n))
            assert list(apply_B_pow(op, n, x).entries) == trimmed(iterate(step_B, op.w, list(x.entries), n))


def brute_schedule(w2, data):
    """Least shifts meeting both conditions, from the unreduced inequalities.

    ``data`` lists ``(k_m, ||y_m||**2)``.  For j < m the shift ``d = n_m - n_j``
    must satisfy d >= max(m, k_j) and |w|**(1+2+...+d) >= |w|**m ||y_m||.
    """
    ns = []
    for m, (_, ysq) in enumerate(data, start=1):
        n = 1 if m == 1 else ns[-1] + 1
        while m > 1:
            ok = True
            for j in range(1, m):
                d = n - ns[j - 1]
                if d < max(m, data[j - 1][0]):
                    ok = False
                    break
                growth = Fraction(1)
                for i in range(1, d + 1):
                    growth *= w2 ** i
                if growth < w2 ** m * ysq:
                    ok = False
                    break
            if ok:
                break
            n += 1
        ns.append(n)
    return ns


@pytest.mark.parametrize("sp", SPACES, ids=str)
def test_c03_schedule_validity(sp):
    op = ShiftOperator(2, sp)
    with budget(1):
        s = build_schedule(op, 8)
        assert check_schedule(op, s)
        data = [(e.k, e.norm_sq_hi) for e in s.entries]
        assert list(s.n) == brute_schedule(op.weight_abs_sq, data)
        for m in range(2, 9):
            for j in range(1, m):
                d = s[m].n - s[j].n
                assert d >= max(m, s[j].k)
        assert brute_schedule(Fraction(4), [(1, 1), (1, 1), (2, 1)]) == [1, 3, 6]
        targets = [FiniteSequence([1]), FiniteSequence([-1]), FiniteSequence([0, 1])]
        assert build_schedule(op, 3, targets).n == (1, 3, 6)


@pytest.mark.parametrize("sp", SPACES, ids=str)
def test_c04_series_and_tail_bounds(sp):
    op = ShiftOperator(2, sp)
    with budget(5):
        s = build_schedule(op, 8)
        for m in range(1, 9):
            y = list(s[m].y.entries)
            r = Fraction(1, 2 ** m)
            if m >= 2:
                assert norm_at_most(iterate(step_B, op.w, y, s[m].n), sp, r)
                assert norm_finite(apply_B_pow(op, s[m].n, s[m].y), sp).hi <= r
            for k in range(1, m):
                shift = s[m].n - s[k].n
                assert norm_at_most(iterate(step_B, op.w, y, shift), sp, r)
                assert norm_finite(apply_B_pow(op, shift, s[m].y), sp).hi <= r


@pytest.mark.parametrize("sp", SPACES, ids=str)
def test_c05_orbit_approach(sp):
    op = ShiftOperator(2, sp)
    M = 8
    with budget(10):
        s = build_schedule(op, M)
        hps = partial_hypercyclic_vector(op, s)
        xM = [Fraction(0)] * (s[M].n + s[M].k)
        for e in s.entries:
            for i, v in enumerate(iterate(step_B, op.w, list(e.y.entries), e.n)):
                xM[i] += v
        assert list(hps.x_M.entries) == trimmed(xM)
        truncation = Fraction(1, 2 ** M)
        for k in range(1, 7):
            bound = Fraction(1, 2 ** (k + 1)) / (1 - Fraction(1, 2)) + truncation
            err, lib_bound = orbit_approach_error(op, hps, k)
            assert lib_bound == bound
            assert err.hi <= bound
            orbit = iterate(step_A, op.w, xM, s[k].n)
            y = list(s[k].y.entries)
            diff = [(y[i] if i < len(y) else 0) - (orbit[i] if i < len(orbit) else 0)
                    for i in range(max(len(y), len(orbit)))]
            assert norm_at_most(diff, sp, bound)
            exact = norm_of(diff, sp)
            if exact is not None:
                assert err.lo <= exact <= err.hi


@pytest.mark.parametrize("w", [Fraction(2), Fraction(3, 2)], ids=["w=2", "w=3/2"])
def test_c06_periodicity(w):
    op = ShiftOperator(w)
    rng = random.Random(606)
    K = 200
    with budget(2):
        for _ in range(20):
            N = rng.randint(1, 6)
            seed = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(N)]
            p = make_periodic(op, seed)
            assert verify_periodicity(p, K)
            prefix = p.prefix(K + N)
            assert prefix[:N] == seed
            assert iterate(step_A, w, prefix, N) == prefix[:K]


@pytest.mark.parametrize("sp", [Lp(1), Lp(2), C0()], ids=str)
def test_c07_periodic_density_bound(sp):
    op = ShiftOperator(2, sp)
    with budget(5):
        for m in range(1, 11):
            y = enumerate_Y(REAL, m)
            bounds, dists = [], []
            for N in range(y.support, y.support + 9):
                _, dist, bound = periodic_approximation(op, y, N)
                r = Fraction(1, 2 ** N)
                ynorm_hi = norm_finite(y, sp).hi
                assert bound == ynorm_hi * r / (1 - r)
                assert dist.hi <= bound
                bounds.append(bound)
                dists.append(dist.hi)
            assert all(a > b for a, b in zip(bounds, bounds[1:]))
            assert all(a > b for a, b in zip(dists, dists[1:]))


def brute_decay_index(lam, w):
    """Least k with |lam| / |w|**(k/2) <= 1/2, squared twice to stay rational."""
    k = 1
    while (4 * abs_sq(lam)) ** 2 > abs_sq(w) ** k:
        k += 1
    return k


def test_c08_eigen_suite():
    op = ShiftOperator(2, Lp(2), COMPLEX)
    K = 64
    grid = [a if b == 0 else ComplexRational(a, b) for a in range(-2, 3) for b in range(-2, 3)]
    assert len(grid) == 25
    with budget(5):
        for lam in grid:
            ep = eigenvector(op, lam)
            assert eigen_residual_check(ep, K)
            xs = ep.vector.prefix(K + 1)
            assert xs[0] == 1
            for k in range(1, K + 1):
                assert op.w ** k * xs[k] == lam * xs[k - 1]
            k0 = decay_index(op, lam)
            assert k0 == brute_decay_index(lam, op.w)
            verdict, mk0 = eigen_membership(ep, K=K)
            assert verdict.certified and mk0 == k0
            assert eigenspace_dimension_check(op, lam, K)
        zero = eigenvector(op, 0).vector.prefix(K)
        assert zero == [1] + [0] * (K - 1)


def test_c09_unboundedness_witness():
    with budget(0.1):
        k, ratio_sq = unboundedness_witness(ShiftOperator(2), 10 ** 6)
        assert (k, ratio_sq) == (20, Fraction(2 ** 40))
        rng = random.Random(909)
        for _ in range(10):
            w = rng.choice([Fraction(2), Fraction(3, 2), Fraction(-5, 3)])
            bound = Fraction(rng.randint(1, 10 ** 9), rng.randint(1, 1000))
            op = ShiftOperator(w)
            k, ratio_sq = unboundedness_witness(op, bound)
            assert ratio_sq == (w * w) ** k
            assert abs(w) ** k > bound >= abs(w) ** (k - 1) or k == 1
            # ||A e_{k+1}|| = |w|**k in every space
            assert norm_finite(apply_A(op, FiniteSequence.unit(k + 1)), op.space).hi == abs(w) ** k


CLI_RUNS = [
    ["operator", "--w", "2", "--apply", "A", "--x", "0,1", "--format", "json"],
    ["hypercyclic", "--w", "2", "--space", "lp", "--p", "1", "--terms", "5", "--format", "csv"],
    ["periodic", "--w", "2", "--seed", "1", "--period", "1", "--verify-upto", "50", "--format", "json"],
    ["eigen", "--w", "2", "--lambda", "1+1i", "--entries", "16", "--format", "json"],
    ["spectrum", "--w", "2", "--grid-re", "-2..2", "--grid-im", "-2..2", "--step", "1", "--K", "64",
     "--format", "csv"],
]


def _cli(argv, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    return subprocess.run([sys.executable, "-m", "rolewicz", *argv], capture_output=True, env=env, check=False)


def test_c10_cli_determinism_and_exit_codes():
    with budget(5):
        for argv in CLI_RUNS:
            first, second = _cli(argv, 1), _cli(argv, 2)
            assert first.returncode == 0, first.stderr
            assert first.stdout == second.stdout
            assert first.stdout
        broken = _cli(["periodic", "--w", "2", "--seed", "1,2", "--verify-upto", "20", "--perturb", "5"], 0)
        assert broken.returncode == 2
        bad = _cli(["hypercyclic", "--w", "1"], 0)
        assert bad.returncode == 1
        assert b"weight must satisfy |w|>1" in bad.stderr
