import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rolewicz.exactnum import ComplexRational, abs_sq, trisum
from rolewicz.seqspace import C0, ClosedFormSequence, FiniteSequence, Lp
from rolewicz.shiftop import COMPLEX, REAL, FieldMismatchError, ShiftOperator
from rolewicz.spectral import (
    EigenPair,
    decay_index,
    eigen_membership,
    eigen_residual_check,
    eigenspace_dimension_check,
    eigenvector,
    spectrum_csv_rows,
    spectrum_probe,
    spectrum_to_json,
)
from strategies import complex_rationals, rationals

W2 = ShiftOperator(2, Lp(2))
W2C = ShiftOperator(2, Lp(2), COMPLEX)
W32 = ShiftOperator(Fraction(3, 2), Lp(1))
WI = ShiftOperator(ComplexRational(1, 1), C0(), COMPLEX)


def brute_k0(lam, w):
    # least k with |lam| / |w|**(k/2) <= 1/2, decided with floats far from ties
    # and confirmed exactly: 4|lam|^2 <= |w|^k  <=>  16|lam|^4 <= (|w|^2)^k
    k = 1
    while 16 * abs_sq(lam) ** 2 > abs_sq(w) ** k:
        k += 1
    return k


def test_eigenvector_examples():
    e0 = eigenvector(W2, 0).vector
    assert e0.prefix(5) == [1, 0, 0, 0, 0]
    e2 = eigenvector(W2, 2).vector
    assert e2.prefix(4) == [1, 1, Fraction(1, 2), Fraction(1, 8)]
    assert all(e2[k] == Fraction(2) ** (((k - 1) * (2 - k)) // 2) for k in range(1, 40))
    ec = eigenvector(W2C, ComplexRational(1, 1)).vector
    assert ec[2] == ComplexRational(Fraction(1, 2), Fraction(1, 2))
    assert ec[3] == ComplexRational(0, Fraction(1, 4))


def test_field_mismatch():
    with pytest.raises(FieldMismatchError):
        eigenvector(W2, ComplexRational(0, 1))


def test_residual_examples():
    assert eigen_residual_check(eigenvector(W2, 3), 100)
    assert eigen_residual_check(eigenvector(W2, 0), 100)
    ep = eigenvector(W2, 3)
    t = ep.vector.term
    mutated = ClosedFormSequence(lambda k: 2 * t(k) if k == 5 else t(k), ep.vector.cert, ep.vector.weight_abs_sq)
    bad = EigenPair(W2, ep.lam, mutated)
    assert not eigen_residual_check(bad, 100)
    assert not eigen_residual_check(bad, 5)
    assert eigen_residual_check(bad, 3)


def test_residual_random_lambdas():
    rng = random.Random(7)
    ops = [W2C, ShiftOperator(Fraction(3, 2), Lp(2), COMPLEX), WI]
    for _ in range(50):
        lam = ComplexRational(Fraction(rng.randint(-10, 10), rng.randint(1, 10)), Fraction(rng.randint(-10, 10), rng.randint(1, 10)))
        for op in ops:
            assert eigen_residual_check(eigenvector(op, lam), 100)


@pytest.mark.parametrize("lam,k0", [(1, 2), (0, 1), (16, 10)])
def test_membership_examples(lam, k0):
    verdict, got = eigen_membership(eigenvector(W2, lam))
    assert got == k0 == brute_k0(Fraction(lam), Fraction(2))
    assert verdict.certified


@given(lam=complex_rationals)
@settings(max_examples=40)
def test_decay_from_k0(lam):
    ep = eigenvector(W2C, lam)
    k0 = decay_index(W2C, lam)
    assert k0 == brute_k0(lam, 2)
    for k in range(k0, k0 + 40):
        assert abs_sq(ep.vector[k]) <= Fraction(1, 4) ** (k - 1)
    if k0 > 1:
        # k0 is least: the ratio test fails one step earlier
        assert 16 * abs_sq(lam) ** 2 > 4 ** (k0 - 1)


@pytest.mark.parametrize("sp", [Lp(1), Lp(2), Lp(Fraction(5, 2)), C0()])
def test_membership_every_space(sp):
    for lam in (0, Fraction(1, 3), -7, ComplexRational(2, 2)):
        verdict, _ = eigen_membership(eigenvector(W2C, lam), sp)
        assert verdict.certified


@pytest.mark.parametrize("op,lam", [(W2, 5), (W2, 0), (ShiftOperator(Fraction(3, 2)), Fraction(-7, 3)), (WI, ComplexRational(1, -2))])
def test_dimension_check(op, lam):
    assert eigenspace_dimension_check(op, lam, 60)


@given(lam=complex_rationals, c=complex_rationals)
@settings(max_examples=30)
def test_scaled_eigenvector_still_solves(lam, c):
    ep = eigenvector(W2C, lam)
    t = ep.vector.term
    scaled = EigenPair(W2C, lam, ClosedFormSequence(lambda k: c * t(k), ep.vector.cert, 4))
    assert ep.vector[1] == 1
    assert eigen_residual_check(scaled, 40)


@given(lam=complex_rationals, mu=complex_rationals)
@settings(max_examples=40)
def test_distinct_eigenvalues_independent(lam, mu):
    if lam == mu:
        return
    x, y = eigenvector(W2C, lam).vector, eigenvector(W2C, mu).vector
    det = x[1] * y[2] - x[2] * y[1]
    assert det == (mu - lam) / 2
    assert det != 0


@given(lam=rationals)
@settings(max_examples=30)
def test_real_space_real_lambdas(lam):
    ep = eigenvector(W2, lam)
    assert eigen_residual_check(ep, 50)
    assert eigen_membership(ep)[0].certified


@pytest.mark.parametrize("op", [W2, W32, WI])
def test_lambda_equal_w(op):
    v = eigenvector(op, op.w).vector
    for k in range(2, 40):
        assert v[k] == op.wpow(-trisum(1, k - 2))


def test_spectrum_probe_grid():
    grid = [a if b == 0 else ComplexRational(a, b) for a in range(-2, 3) for b in range(-2, 3)]
    cells = spectrum_probe(W2C, grid, 64)
    assert len(cells) == 25 and all(c.passed for c in cells)
    assert all(c.membership_k0 == brute_k0(c.lam, 2) for c in cells)
    assert spectrum_probe(W2C, [0], 8)[0].passed


def test_spectrum_probe_isolates_errors():
    cells = spectrum_probe(W2, [1, ComplexRational(0, 1), 2], 16)
    assert cells[0].passed and cells[2].passed
    assert not cells[1].passed and "complex" in cells[1].error


def test_spectrum_report_formats():
    cells = spectrum_probe(W2C, [ComplexRational(Fraction(1, 2), Fraction(1, 2))], 8)
    d = spectrum_to_json(W2C, 8, cells)
    assert d["cells"][0] == {"lambda": "1/2+1/2i", "residual_ok": True, "membership_k0": 1, "dim_ok": True}
    assert spectrum_csv_rows(cells) == [["1/2", "1/2", 1, True]]
