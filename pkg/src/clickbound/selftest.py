"""Reduced-resolution invariant checks of every module, run by the CLI.

Each check is cheap (the whole suite aims at well under a minute) and
exercises an invariant that the full test suite verifies at production
resolution.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad

from .bound import minimize_bound
from .bump import SpectralTransforms, theta, transform_A
from .errfun import error_of_zeta, gauss_weight, norm_factor
from .params import DimensionlessConfig, to_dimensionless, PhysicalSetup
from .wightman import KGridSpec, WightmanCurve, get_evaluator


def _check_theta_partition():
    s = np.linspace(-0.5, 1.5, 100)
    worst = float(np.max(np.abs(theta(s) + theta(1.0 - s) - 1.0)))
    assert worst <= 1e-12, f"partition of unity off by {worst:g}"


def _check_gauss_normalization():
    for zeta in (0.1, 1.0, 10.0):
        val, _ = quad(gauss_weight, -np.inf, np.inf, args=(zeta,))
        assert abs(val - 1.0) <= 1e-8, f"zeta={zeta}: mass {val!r}"


def _check_norm_factor():
    assert abs(norm_factor(math.pi ** 2) - math.exp(0.5)) < 1e-12
    assert abs(norm_factor(math.pi ** 2 / 2.0) - math.e) < 1e-12
    assert norm_factor(1e9) < 1.0 + 1e-8
    assert math.isinf(norm_factor(1e-8))


def _check_transform_plateau():
    assert abs(transform_A(0.0, 1.0) - 1.5) < 1e-8


def _reduced_setup():
    cfg = DimensionlessConfig(N=10, delta_phi=1, a=1)
    tr = SpectralTransforms(1.0, 1.0, cfg.delta_phi, cfg.arg_alpha0,
                            grid_step=0.04)
    return cfg, tr


def _check_wightman_symmetries():
    cfg, tr = _reduced_setup()
    tr.verify(tol=1e-6)
    ev = get_evaluator(cfg, KGridSpec(safety=1.0), tr)
    w0 = ev(0.0)
    assert w0.real > 0, f"W2(0) = {w0!r}"
    assert abs(w0.imag) <= 1e-6 * w0.real, f"Im W2(0) = {w0.imag:g}"
    for eta in (0.5, 1.0, 5.0):
        herm = abs(ev(eta) - np.conj(ev(-eta)))
        assert herm <= 1e-6 * w0.real, f"eta={eta}: hermiticity {herm:g}"


def _degenerate_curve():
    cfg = DimensionlessConfig(N=10, delta_phi=1, a=1)
    etas = np.linspace(0.0, 64.0, 200)
    vals = np.full(len(etas), 0.1 + 0.0j)
    return WightmanCurve(cfg, etas, vals, np.zeros(len(etas)))


def _check_error_degenerate():
    curve = _degenerate_curve()
    e = error_of_zeta(1.0, curve)
    assert e <= 1e-6, f"degenerate curve error {e:g}"


def _check_bound_edges():
    curve = _degenerate_curve()
    r0 = minimize_bound(0.0, curve)
    assert r0.pmax == 0.0 and r0.informative
    r1 = minimize_bound(1.0, curve)
    assert r1.pmax >= 1.0 and not r1.informative


def _check_params_roundtrip():
    setup = PhysicalSetup(l=0.5, L=0.5, tau=0.5, k0=10.0, alpha0_sq=10.0,
                          V_coh=0.1)
    cfg = to_dimensionless(setup)
    assert abs(cfg.delta_phi - 10.0) < 1e-12
    assert abs(cfg.a - 1.0) < 1e-12
    assert abs(cfg.N - 10.0 * 1.0 * 1.0 / 0.1) < 1e-9


CHECKS = (
    ("theta partition of unity", _check_theta_partition),
    ("rapidity weight normalization", _check_gauss_normalization),
    ("operator-norm factor", _check_norm_factor),
    ("transverse transform plateau", _check_transform_plateau),
    ("physical-to-dimensionless reduction", _check_params_roundtrip),
    ("two-point symmetries (reduced resolution)", _check_wightman_symmetries),
    ("degenerate-curve error vanishes", _check_error_degenerate),
    ("bound edge cases", _check_bound_edges),
)


def run(verbose: bool = False) -> int:
    failures = 0
    for name, check in CHECKS:
        try:
            check()
        except Exception as exc:  # report every failure, keep going
            failures += 1
            print(f"FAIL  {name}: {exc}")
        else:
            if verbose:
                print(f"ok    {name}")
    if failures:
        print(f"{failures} of {len(CHECKS)} checks failed")
        return 2
    print(f"all {len(CHECKS)} checks passed")
    return 0
