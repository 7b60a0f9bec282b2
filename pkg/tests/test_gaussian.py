"""Covariance construction, reductions and symplectic spectra."""

from __future__ import annotations

import math

import numpy as np
import pytest

from contangle import formulas
from contangle.gaussian import (
    CovarianceMatrix,
    SqueezingParams,
    build_pure_symmetric_cm,
    partial_trace,
    purity,
    solve_standard_form,
    symplectic_eigenvalues,
    symplectic_form,
)


def test_squeezing_params_fills_mean():
    sq = SqueezingParams(r_m=0.53103527049225236343, r_p=0.3)
    assert sq.r_bar == pytest.approx(0.41551763524612618171, rel=1e-15)


def test_squeezing_params_mean_only():
    sq = SqueezingParams(r_bar=0.8)
    assert not sq.is_explicit
    assert sq.r_bar == 0.8


def test_squeezing_params_rejects_inconsistent_triple():
    with pytest.raises(ValueError):
        SqueezingParams(r_m=0.5, r_p=0.5, r_bar=0.7)


def test_squeezing_params_rejects_half_pairs_and_negatives():
    with pytest.raises(ValueError):
        SqueezingParams(r_m=0.5)
    with pytest.raises(ValueError):
        SqueezingParams()
    with pytest.raises(ValueError):
        SqueezingParams(r_bar=-0.1)


def test_covariance_wrapper_validates():
    with pytest.raises(ValueError):
        CovarianceMatrix(np.zeros((3, 3)))  # odd dimension
    bad = np.eye(4)
    bad[0, 1] = 0.5  # asymmetric
    with pytest.raises(ValueError):
        CovarianceMatrix(bad)
    with pytest.raises(ValueError):
        CovarianceMatrix(np.full((2, 2), np.nan))


def test_covariance_wrapper_is_read_only():
    cm = CovarianceMatrix(np.eye(4))
    with pytest.raises(ValueError):
        cm.data[0, 0] = 2.0


def test_symplectic_form_squares_to_minus_identity():
    omega = symplectic_form(3)
    assert np.array_equal(omega @ omega, -np.eye(6))


def test_vacuum_construction_is_exact():
    cm = build_pure_symmetric_cm(4, SqueezingParams(r_m=0.0, r_p=0.0))
    assert np.array_equal(cm.data, np.eye(8))


def test_construction_needs_explicit_pair():
    with pytest.raises(ValueError):
        build_pure_symmetric_cm(3, SqueezingParams(r_bar=0.5))


def test_built_state_is_pure_and_physical():
    sq = solve_standard_form(0.8, 5)
    cm = build_pure_symmetric_cm(5, sq)
    nu = symplectic_eigenvalues(cm)
    assert nu == pytest.approx(np.ones(5), abs=1e-10)
    assert purity(cm) == pytest.approx(1.0, rel=1e-10)


def test_standard_form_balances_local_block():
    # standard form means each mode sees equal x and p variances
    sq = solve_standard_form(0.65, 6)
    cm = build_pure_symmetric_cm(6, sq)
    single = partial_trace(cm, [2])
    assert single.data[0, 0] == pytest.approx(single.data[1, 1], rel=1e-12)


def test_standard_form_closed_form_agreement():
    # independent closed form of the balance condition: expanding
    #   sinh(2 (2 r_bar - r_p)) == (n-1) sinh(2 r_p)
    # by the angle-difference identity gives
    #   tanh(2 r_p) == sinh(4 r_bar) / (n - 1 + cosh(4 r_bar))
    # which exponentiates to the numerically tame
    #   r_p = (1/4) ln((n - 1 + e^{4 r_bar}) / (n - 1 + e^{-4 r_bar}))
    for n in (2, 3, 5, 12, 100):
        for r_bar in (0.05, 0.41551763524612618171, 1.0, 2.0, 3.0):
            expected = 0.25 * math.log(
                (n - 1 + math.exp(4 * r_bar)) / (n - 1 + math.exp(-4 * r_bar))
            )
            sq = solve_standard_form(r_bar, n)
            assert sq.r_p == pytest.approx(expected, rel=1e-12, abs=1e-15)
            # and the defining relation itself
            assert math.sinh(2 * sq.r_m) == pytest.approx(
                (n - 1) * math.sinh(2 * sq.r_p), rel=1e-10
            )


def test_standard_form_frozen_cases():
    assert solve_standard_form(0.7, 2).r_p == pytest.approx(0.7, abs=1e-13)
    sq = solve_standard_form(0.41551763524612618171, 3)
    assert sq.r_p == pytest.approx(0.3, abs=1e-13)
    assert sq.r_m == pytest.approx(0.53103527049225236343, abs=1e-13)
    assert solve_standard_form(2.0, 12).r_p == pytest.approx(
        1.40143938207, abs=1e-10
    )
    zero = solve_standard_form(0.0, 7)
    assert (zero.r_m, zero.r_p) == (0.0, 0.0)


def test_reduced_determinant_matches_closed_form():
    sq = solve_standard_form(0.5, 3)
    cm = build_pure_symmetric_cm(3, sq)
    single = partial_trace(cm, [0])
    det = float(np.linalg.det(single.data))
    # (5 + 4 cosh 2) / 9
    assert det == pytest.approx(2.2276425293705029, rel=1e-12)
    assert det == pytest.approx(formulas.det_reduced(1, 3, 0.5), rel=1e-12)


def test_reductions_do_not_depend_on_the_split():
    # the same mean squeezing, balanced or not, gives the same reduced
    # determinants: only r_bar = (r_m + r_p)/2 matters
    r_bar = 0.8
    balanced = build_pure_symmetric_cm(5, solve_standard_form(r_bar, 5))
    lopsided = build_pure_symmetric_cm(5, SqueezingParams(r_m=1.2, r_p=0.4))
    for keep in range(1, 5):
        da = np.linalg.det(partial_trace(balanced, range(keep)).data)
        db = np.linalg.det(partial_trace(lopsided, range(keep)).data)
        assert da == pytest.approx(db, rel=1e-12)
        assert da == pytest.approx(formulas.det_reduced(keep, 5, r_bar), rel=1e-12)


def test_partial_trace_is_permutation_invariant():
    cm = build_pure_symmetric_cm(6, solve_standard_form(0.9, 6))
    a = partial_trace(cm, [0, 1])
    b = partial_trace(cm, [3, 5])
    assert np.array_equal(a.data, b.data)


def test_partial_trace_validation():
    cm = build_pure_symmetric_cm(3, solve_standard_form(0.4, 3))
    with pytest.raises(ValueError):
        partial_trace(cm, [])
    with pytest.raises(ValueError):
        partial_trace(cm, [0, 0])
    with pytest.raises(ValueError):
        partial_trace(cm, [3])


def test_thermal_reduction_spectrum():
    # a single kept mode of the symmetric state is thermal, so its one
    # symplectic eigenvalue is the square root of its determinant
    cm = build_pure_symmetric_cm(3, solve_standard_form(0.5, 3))
    single = partial_trace(cm, [1])
    nu = symplectic_eigenvalues(single)
    assert nu.shape == (1,)
    assert nu[0] == pytest.approx(1.4925289040318458338, rel=1e-12)


def test_two_mode_squeezed_spectrum():
    # textbook check: the reduced two-mode block of a larger symmetric
    # state has symplectic eigenvalues {sqrt(det) , 1} only when pure;
    # here both eigenvalues must be >= 1 and reproduce the determinant
    cm = build_pure_symmetric_cm(4, solve_standard_form(0.7, 4))
    pair = partial_trace(cm, [0, 1])
    nu = symplectic_eigenvalues(pair)
    assert np.all(nu >= 1.0 - 1e-12)
    assert nu[0] * nu[1] == pytest.approx(
        math.sqrt(np.linalg.det(pair.data)), rel=1e-10
    )


def test_symplectic_eigenvalues_reject_non_positive():
    with pytest.raises(ArithmeticError):
        symplectic_eigenvalues(CovarianceMatrix(-np.eye(2)))


def test_purity_of_reduction():
    cm = build_pure_symmetric_cm(3, solve_standard_form(0.5, 3))
    single = partial_trace(cm, [0])
    assert purity(single) == pytest.approx(0.67000377500137389039, rel=1e-12)
