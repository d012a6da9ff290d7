import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from penning_cs.trap import (
    InstabilityError,
    TrapParams,
    build_lambda,
    characteristic_polynomial,
    frequencies,
    validate,
)

from conftest import stable_params


def charpoly_by_interpolation(lam):
    """Fit det(L - x I) through 7 sample points; independent of eigen-solvers."""
    xs = np.linspace(-1.5, 1.5, 7)
    dets = [np.linalg.det(lam - x * np.eye(6)) for x in xs]
    return np.polyfit(xs, dets, 6)


@pytest.mark.parametrize(
    "b, v, stable, reason",
    [
        (1.0, -0.5, True, None),
        (1.0, 0.0, False, "v_nonnegative"),
        (0.5, -0.3, False, "radial"),
        (1.0, -1.0, False, "radial"),  # degenerate edge b^2 + v = 0
        (0.0, -0.5, False, "b_nonpositive"),
        (-1.0, -0.5, False, "b_nonpositive"),
        (0.1, 0.5, False, "v_nonnegative"),
        (math.nan, -0.5, False, "non_finite"),
        (1.0, -math.inf, False, "non_finite"),
    ],
)
def test_validate(b, v, stable, reason):
    verdict = validate(TrapParams(b, v))
    assert verdict.stable is stable
    assert verdict.reason == reason


@given(st.floats(-5, 5), st.floats(-5, 5))
def test_validate_matches_inequalities(b, v):
    verdict = validate(TrapParams(b, v))
    assert verdict.stable == (b > 0 and v < 0 and b * b + v > 0)
    assert validate(TrapParams(b, v)) == verdict


def test_unstable_params_raise():
    with pytest.raises(InstabilityError) as info:
        build_lambda(TrapParams(0.5, -0.3))
    assert info.value.verdict.reason == "radial"
    with pytest.raises(InstabilityError):
        frequencies(TrapParams(1.0, 0.0))


def test_lambda_entries_at_reference():
    lam = build_lambda(TrapParams(1.0, -0.5))
    expected = np.array(
        [
            [0, -1, 0, 1, 0, 0],
            [1, 0, 0, 0, 1, 0],
            [0, 0, 0, 0, 0, 1],
            [-0.5, 0, 0, 0, -1, 0],
            [0, -0.5, 0, 1, 0, 0],
            [0, 0, -1.0, 0, 0, 0],
        ]
    )
    np.testing.assert_array_equal(lam, expected)
    assert lam[3, 0] == -0.5 and lam[5, 2] == -1.0


def test_charpoly_reference():
    # 4b^2 = 4, -v(8b^2 + 3v) = 0.5 * 6.5 = 3.25, -2v^3 = 0.25
    params = TrapParams(1.0, -0.5)
    np.testing.assert_allclose(characteristic_polynomial(params), [1, 0, 4, 0, 3.25, 0, 0.25])
    np.testing.assert_allclose(
        charpoly_by_interpolation(build_lambda(params)), [1, 0, 4, 0, 3.25, 0, 0.25], atol=1e-10
    )


@given(stable_params())
def test_charpoly_matches_determinant(params):
    lam = build_lambda(params)
    analytic = characteristic_polynomial(params)
    fitted = np.poly(lam).real
    scale = np.maximum(np.abs(analytic), 1.0)
    assert np.all(np.abs(fitted - analytic) <= 1e-10 * scale)


@given(stable_params())
def test_lambda_is_traceless(params):
    assert np.trace(build_lambda(params)) == 0.0


def test_frequencies_reference():
    w = frequencies(TrapParams(1.0, -0.5))
    assert w.omega1 == pytest.approx(1.0 + math.sqrt(0.5), abs=1e-12)
    assert w.omega2 == pytest.approx(1.0 - math.sqrt(0.5), abs=1e-12)
    assert w.omega3 == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(w.as_array(), [1.70710678, 0.29289322, 1.0], atol=1e-8)


def test_magnetron_vanishes_at_boundary():
    omegas = [frequencies(TrapParams(1.0, -eps)).omega2 for eps in (1e-2, 1e-5, 1e-9)]
    assert omegas[0] > omegas[1] > omegas[2] > 0
    assert omegas[2] == pytest.approx(0.5e-9, rel=1e-6)


@given(stable_params(b_min=0.05, b_max=20.0))
def test_frequency_identities(params):
    w = frequencies(params)
    assert w.omega1 > w.omega2 > 0 and w.omega3 > 0
    assert w.omega1 + w.omega2 == pytest.approx(2 * params.b, rel=1e-12)
    assert w.omega1 * w.omega2 == pytest.approx(-params.v, rel=1e-12)


def test_product_identity_near_edge():
    params = TrapParams(1.0, -1e-10)
    w = frequencies(params)
    assert w.omega1 * w.omega2 == pytest.approx(1e-10, rel=1e-12)


@given(stable_params())
def test_generic_eigenvalues_are_plus_minus_i_omega(params):
    w = frequencies(params).as_array()
    generic = np.sort(np.linalg.eigvals(build_lambda(params)).imag)
    expected = np.sort(np.concatenate([w, -w]))
    np.testing.assert_allclose(generic, expected, atol=1e-10)
    assert np.abs(np.linalg.eigvals(build_lambda(params)).real).max() < 1e-10
