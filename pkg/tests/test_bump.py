import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from clickbound.bump import (AxisBump, SpectralTransforms, chi_axis,
                             phi_kernel, theta, transform_A, transform_CS)
from clickbound.exceptions import ValidationError

finite_s = st.floats(min_value=-10, max_value=10,
                     allow_nan=False, allow_infinity=False)


# --- transition function -------------------------------------------------

def test_phi_kernel_values():
    assert phi_kernel(1.0) == pytest.approx(np.exp(-1), rel=1e-12)
    assert phi_kernel(-1.0) == 0.0
    assert phi_kernel(0.0) == 0.0


def test_theta_values():
    assert theta(0.5) == pytest.approx(0.5, abs=1e-15)
    assert theta(0.0) == 0.0
    assert theta(1.0) == 1.0
    assert theta(-3.0) == 0.0
    assert theta(5.0) == 1.0


def test_theta_partition_of_unity():
    s = np.linspace(-1.0, 2.0, 100)
    np.testing.assert_allclose(theta(s) + theta(1.0 - s), 1.0, atol=1e-12)


@given(s=finite_s, d=st.floats(min_value=1e-6, max_value=1.0))
@settings(max_examples=100, deadline=None)
def test_theta_monotone_and_bounded(s, d):
    a, b = theta(s), theta(s + d)
    assert 0.0 <= a <= 1.0
    assert b >= a


# --- axis profiles -------------------------------------------------------

def test_longitudinal_profile_unit_collar():
    bump = AxisBump("longitudinal", 1.0)
    assert bump.support() == (-2.0, 0.0)
    assert bump.plateau() == (-1.5, -0.5)
    assert chi_axis(-1.0, bump) == 1.0
    assert chi_axis(-0.25, bump) == pytest.approx(theta(0.5), abs=1e-15)
    assert chi_axis(0.0, bump) == 0.0
    assert chi_axis(-2.0, bump) == 0.0
    assert chi_axis(0.5, bump) == 0.0


def test_transverse_profile_unit_collar():
    bump = AxisBump("transverse", 1.0)
    assert bump.support() == (-1.0, 1.0)
    assert bump.plateau() == (-0.5, 0.5)
    assert chi_axis(1.0, bump) == 0.0
    assert chi_axis(-1.0, bump) == 0.0
    assert chi_axis(0.3, bump) == 1.0


@given(x=finite_s, d=st.floats(min_value=0.1, max_value=2.0),
       kind=st.sampled_from(["longitudinal", "transverse"]))
@settings(max_examples=100, deadline=None)
def test_chi_axis_range_and_support(x, d, kind):
    bump = AxisBump(kind, d)
    v = chi_axis(x, bump)
    assert 0.0 <= v <= 1.0
    lo, hi = bump.support()
    if x <= lo or x >= hi:
        assert v == 0.0
    plo, phi = bump.plateau()
    if plo <= x <= phi:
        assert v == 1.0


def test_bad_bump_rejected():
    with pytest.raises(ValidationError):
        AxisBump("diagonal", 1.0)
    with pytest.raises(ValidationError):
        AxisBump("transverse", 0.0)


# --- spectral transforms -------------------------------------------------

def _quad_oracle(bump, k=0.0, mod=None):
    lo, hi = bump.support()
    def f(x):
        v = chi_axis(x, bump)
        if mod is not None:
            v *= mod(x)
        return v * np.cos(k * x)
    val, err = quad(f, lo, hi, limit=400, epsabs=1e-12)
    return val


def test_transform_zero_frequency_values():
    oracle_a = _quad_oracle(AxisBump("transverse", 1.0))
    assert transform_A(0.0, 1.0) == pytest.approx(oracle_a, abs=1e-8)
    assert transform_A(0.0, 1.0) == pytest.approx(1.5, abs=1e-8)
    c, s = transform_CS(0.0, 1.0, 0.0, 0.0)
    oracle_c = _quad_oracle(AxisBump("longitudinal", 1.0))
    assert c.real == pytest.approx(oracle_c, abs=1e-8)
    assert c.real == pytest.approx(1.5, abs=1e-8)
    assert abs(c.imag) < 1e-10


def test_transform_superpolynomial_decay():
    # The smooth window's transform falls off roughly like exp(-c sqrt(k));
    # spot-check a few decades of decay (the direct quadrature bottoms out
    # near 1e-9 absolute, so do not push the threshold further).
    a0 = transform_A(0.0, 1.0)
    assert abs(transform_A(50.0, 1.0)) < 2e-4 * a0
    assert abs(transform_A(100.0, 1.0)) < 1e-5 * a0
    assert abs(transform_A(200.0, 1.0)) < 1e-8 * a0


def test_sine_transform_vanishes_without_modulation():
    for k in (0.0, 1.3, -7.7):
        _, s = transform_CS(k, 1.0, 0.0, 0.0)
        assert abs(s) < 1e-12


def test_direct_transform_symmetries(rng):
    for k in rng.uniform(-30, 30, size=10):
        assert transform_A(k, 1.0) == pytest.approx(transform_A(-k, 1.0),
                                                    abs=1e-10)
        c1, s1 = transform_CS(k, 1.0, 10.0, np.pi / 2)
        c2, s2 = transform_CS(-k, 1.0, 10.0, np.pi / 2)
        assert c2 == pytest.approx(np.conj(c1), abs=1e-10)
        assert s2 == pytest.approx(np.conj(s1), abs=1e-10)


def test_cached_transform_symmetries(transforms_dphi10, rng):
    tr = transforms_dphi10
    k = rng.uniform(-tr.kcut_long, tr.kcut_long, size=50)
    np.testing.assert_allclose(tr.A(k), tr.A(-k), atol=1e-12)
    np.testing.assert_allclose(tr.C(-k), np.conj(tr.C(k)), atol=1e-12)
    np.testing.assert_allclose(tr.S(-k), np.conj(tr.S(k)), atol=1e-12)


def test_cache_matches_direct_quadrature(transforms_dphi10):
    assert transforms_dphi10.verify(tol=1e-7) < 1e-7


def test_cache_cutoff_is_exact_zero(transforms_dphi10):
    tr = transforms_dphi10
    k = tr.kcut_long + 5.0
    assert tr.C(k) == 0.0
    assert tr.S(-k) == 0.0
    assert tr.A(tr.kcut_trans + 5.0) == 0.0


def test_parseval_identity():
    # int |A(k)|^2 dk / (2 pi) = int chi(x)^2 dx
    bump = AxisBump("transverse", 1.0)
    rhs, _ = quad(lambda x: chi_axis(x, bump) ** 2, -1.0, 1.0,
                  limit=200, epsabs=1e-12)
    tr = SpectralTransforms(1.0, 1.0, 0.0, 0.0)
    k = np.linspace(0.0, tr.kcut_trans, 200001)
    lhs = 2.0 * np.trapezoid(np.asarray(tr.A(k)) ** 2, k) / (2.0 * np.pi)
    assert lhs == pytest.approx(rhs, rel=1e-6)


def test_invalid_transform_inputs():
    with pytest.raises(ValidationError):
        SpectralTransforms(0.0, 1.0, 10.0, 0.0)
    with pytest.raises(ValidationError):
        SpectralTransforms(1.0, 1.0, np.inf, 0.0)
