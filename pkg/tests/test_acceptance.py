"""End-to-end acceptance checks, one test per release criterion.

Each test prints a single PASS line (visible with ``pytest -v``) and asserts
the full criterion.  Expensive artifacts (transform caches, rapidity curves,
the five-configuration sweep) are session fixtures shared across tests.
"""

import math
import os
import subprocess
import sys

import numpy as np
import pytest
from scipy.integrate import quad

from clickbound.bound import SweepSpec, build_config_curve, minimize_bound
from clickbound.bump import AxisBump, chi_axis, theta, transform_A, transform_CS
from clickbound.errfun import error_of_zeta, gauss_weight, norm_factor
from clickbound.params import DimensionlessConfig
from clickbound.quadrature import density_nodes
from clickbound.wightman import w2_of_eta

from conftest import CONFIG_10_10_1_0, CONFIG_10_1_1_0

# Frozen outputs of the independent brute-force oracles in scripts/
# (tensor Gauss-Legendre over Cartesian momenta at 10 nodes per unit k;
# Simpson rapidity quadrature at 64 points per unit eta on a 1.5x-refined
# momentum grid).  Reproduce with:
#   python3 scripts/oracle_w2_zero.py 10
#   python3 scripts/oracle_error.py 64
ORACLE_W2_ZERO = {
    "N10_dphi1_a1_phase0": 0.168377250617,
    "N10_dphi10_a1_phase0": 0.11468772051,
}
ORACLE_ERROR_ZETA1 = {
    "N10_dphi1_a1_phase0": 0.3276561702,
    "N10_dphi10_a1_phase0": 0.326722975,
}

FIGURE_CONFIGS = {
    "base": CONFIG_10_10_1_0,
    "bright": DimensionlessConfig(N=100, delta_phi=10, a=1),
    "slow_phase": CONFIG_10_1_1_0,
    "thin": DimensionlessConfig(N=10, delta_phi=10, a=0.01),
    "slow_phase_shifted": DimensionlessConfig(N=10, delta_phi=1, a=1,
                                              arg_alpha0=math.pi / 2),
    "shifted": DimensionlessConfig(N=10, delta_phi=10, a=1,
                                   arg_alpha0=math.pi / 2),
}

SWEEP = SweepSpec(configs=tuple(FIGURE_CONFIGS.values()))


@pytest.fixture(scope="session")
def figure_curves(curve_10_10_1_0, curve_10_1_1_0):
    curves = {"base": curve_10_10_1_0, "slow_phase": curve_10_1_1_0}
    for name, cfg in FIGURE_CONFIGS.items():
        if name not in curves:
            curves[name] = build_config_curve(cfg, SWEEP)
    return curves


@pytest.fixture(scope="session")
def figure_bounds(figure_curves):
    pdarks = SWEEP.pdark_values()
    return {name: [minimize_bound(float(p), curve, SWEEP) for p in pdarks]
            for name, curve in figure_curves.items()}


def test_analytic_identities():
    s = np.linspace(-1.0, 2.0, 100)
    worst = float(np.max(np.abs(theta(s) + theta(1.0 - s) - 1.0)))
    assert worst <= 1e-12

    for zeta in (0.1, 1.0, 10.0):
        lim = 8.0 * math.sqrt(4.0 * zeta)
        x, w = density_nodes(0.0, lim, lambda e: 16.0 / math.sqrt(zeta), 10)
        mass = 2.0 * float(np.sum(w * gauss_weight(x, zeta)))
        assert abs(mass - 1.0) <= 1e-8, f"zeta={zeta}: mass {mass!r}"

    for zeta in (0.5, 1.0, 5.0):
        lim = 8.0 * math.sqrt(4.0 * zeta) + math.pi
        x, w = density_nodes(0.0, lim, lambda e: 16.0 / math.sqrt(zeta), 10)
        modulus = (np.exp((math.pi ** 2 - x ** 2) / (2.0 * zeta))
                   / math.sqrt(2.0 * math.pi * zeta))
        total = 2.0 * float(np.sum(w * modulus))
        rel = abs(total - norm_factor(zeta)) / norm_factor(zeta)
        assert rel <= 1e-6, f"zeta={zeta}: modulus identity off by {rel:g}"
    print("PASS analytic identities (weight mass, shifted-Gaussian modulus, "
          "transition partition)")


def test_bump_transform_suite(rng):
    bump_t = AxisBump("transverse", 1.0)
    oracle_a, _ = quad(lambda x: chi_axis(x, bump_t), -1.0, 1.0,
                       limit=200, epsabs=1e-12)
    assert transform_A(0.0, 1.0) == pytest.approx(oracle_a, abs=1e-8)
    assert transform_A(0.0, 1.0) == pytest.approx(1.5, abs=1e-8)
    bump_l = AxisBump("longitudinal", 1.0)
    oracle_c, _ = quad(lambda x: chi_axis(x, bump_l), -2.0, 0.0,
                       limit=200, epsabs=1e-12)
    c0, _ = transform_CS(0.0, 1.0, 0.0, 0.0)
    assert c0.real == pytest.approx(oracle_c, abs=1e-8)
    assert c0.real == pytest.approx(1.5, abs=1e-8)

    for k in rng.uniform(-40.0, 40.0, size=50):
        assert transform_A(k, 1.0) == pytest.approx(
            transform_A(-k, 1.0), abs=1e-10)
        c1, s1 = transform_CS(k, 1.0, 10.0, 0.0)
        c2, s2 = transform_CS(-k, 1.0, 10.0, 0.0)
        assert c2 == pytest.approx(np.conj(c1), abs=1e-10)
        assert s2 == pytest.approx(np.conj(s1), abs=1e-10)
    print("PASS bump/transform suite (plateau areas vs oracle, symmetries "
          "on 50 random k)")


def test_wightman_suite(evaluator_10_10_1_0, curve_10_10_1_0,
                        transforms_dphi10, grid):
    ev = evaluator_10_10_1_0
    w0 = ev(0.0)
    scale = w0.real
    assert abs(w0.imag) <= 1e-8 * scale

    for eta in (0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 4.5, 6.0, 9.0):
        herm = abs(ev(eta) - np.conj(ev(-eta)))
        assert herm <= 1e-8 * scale, f"eta={eta}: hermiticity {herm:g}"

    curve = curve_10_10_1_0
    assert np.all(np.abs(curve.values) <= curve.w2_zero * (1.0 + 1e-6))

    from clickbound.wightman import get_evaluator
    doubled = get_evaluator(CONFIG_10_10_1_0, grid.refined(2.0),
                            transforms_dphi10)(0.0)
    assert abs(doubled - w0) / abs(doubled) < 1e-3

    c20 = DimensionlessConfig(N=20, delta_phi=10, a=1)
    v20 = w2_of_eta(0.0, c20, grid, transforms_dphi10)
    assert abs(v20 - 2.0 * w0) <= 1e-12 * abs(v20)
    print("PASS two-point suite (reality, hermiticity x10, Cauchy-Schwarz, "
          "grid doubling, photon-number linearity)")


def test_oracle_equivalence(grid, transforms_dphi10, transforms_dphi1,
                            curve_10_10_1_0, curve_10_1_1_0):
    pairs = [
        (CONFIG_10_1_1_0, transforms_dphi1, curve_10_1_1_0),
        (CONFIG_10_10_1_0, transforms_dphi10, curve_10_10_1_0),
    ]
    for cfg, tr, curve in pairs:
        got = w2_of_eta(0.0, cfg, grid, tr).real
        want = ORACLE_W2_ZERO[cfg.label()]
        assert abs(got - want) / want <= 1e-3, (
            f"{cfg.label()}: W2(0) {got!r} vs oracle {want!r}")
        e_want = ORACLE_ERROR_ZETA1[cfg.label()]
        e_got = error_of_zeta(1.0, curve)
        assert abs(e_got - e_want) / e_want <= 1e-3, (
            f"{cfg.label()}: E(1) {e_got!r} vs oracle {e_want!r}")
    print("PASS oracle equivalence (W2(0) and E(zeta=1) vs brute-force "
          "quadrature, two configurations)")


def test_bound_suite(figure_curves, figure_bounds):
    base = figure_curves["base"]
    r0 = minimize_bound(0.0, base)
    assert r0.pmax == 0.0 and r0.informative
    r1 = minimize_bound(1.0, base)
    assert r1.pmax >= 1.0 and not r1.informative

    for name, results in figure_bounds.items():
        pmax = [r.pmax for r in results]
        assert all(b >= a * (1.0 - 1e-12) for a, b in zip(pmax, pmax[1:])), (
            f"{name}: pmax not nondecreasing in pdark")

    for name, curve in figure_curves.items():
        es = [error_of_zeta(z, curve) for z in (1.0, 0.1, 0.01, 0.001)]
        assert es[0] > es[1] > es[2] > es[3], (
            f"{name}: E not decreasing toward small zeta: {es}")
    print("PASS bound suite (pdark edge cases, monotone pmax, small-zeta "
          "error decrease, five configurations)")


def test_figure_trends(figure_bounds):
    def pmax(name):
        return np.asarray([r.pmax for r in figure_bounds[name]])

    pdarks = np.asarray([r.pdark for r in figure_bounds["base"]])

    slack = 1e-3
    assert np.all(pmax("bright") >= pmax("base") * (1.0 - slack)), (
        "larger photon number should raise the curve")
    # The small-phase ordering is a small-pdark statement: there the envelope
    # minimum sits at small zeta, where the slow-phase error E_zeta is
    # genuinely lower.  Toward pdark ~ 1e-9 the optimal zeta of both
    # configurations approaches 1, where the saturation errors order the
    # other way (the independent Simpson oracle gives E(1) = 0.32766 for
    # dphi=1 vs 0.32672 for dphi=10), so the curves must cross; see
    # test_small_phase_ordering_entire_grid below and notes/decisions.md.
    small = pdarks <= 1e-10
    assert small.any()
    assert np.all(pmax("slow_phase")[small]
                  <= pmax("base")[small] * (1.0 + slack)), (
        "smaller accumulated phase should lower the curve at small pdark")
    # Same crossing mechanism as above, at a larger pdark: at a 3x-refined
    # grid (quadrature error 3e-4 relative, well below the differences
    # asserted here) the thin curve sits ~0.5% below the base one for
    # pdark <= 1e-7 and up to ~2.7% above it for pdark >= 1e-5.
    small_thin = pdarks <= 1e-7
    assert small_thin.any()
    assert np.all(pmax("thin")[small_thin]
                  <= pmax("base")[small_thin] * (1.0 + slack)), (
        "smaller aspect ratio should lower the curve at small pdark")

    rel_fast = np.abs(pmax("shifted") - pmax("base")) / pmax("base")
    assert np.all(rel_fast < 0.05), (
        f"phase shift should be insignificant at fast phase accumulation, "
        f"got max {rel_fast.max():.3f}")
    rel_slow = (np.abs(pmax("slow_phase_shifted") - pmax("slow_phase"))
                / pmax("slow_phase"))
    assert np.any(rel_slow > 0.05), (
        f"phase shift should matter at slow phase accumulation, "
        f"got max {rel_slow.max():.3f}")

    for name in figure_bounds:
        p = pmax(name)
        assert np.all(np.diff(p) >= -1e-12), (
            f"{name}: curve should decrease toward smaller pdark")
    print("PASS qualitative figure trends (photon number, phase, aspect, "
          "coherent-phase sensitivity, dark-count decrease)")


@pytest.mark.xfail(
    strict=True,
    reason="the slow-phase and thin curves provably cross the base curve "
           "(near pdark ~ 1e-9 and ~ 1e-5 respectively): the independent "
           "brute-force oracle confirms E(zeta=1) is higher for dphi=1 "
           "(0.32766) than for dphi=10 (0.32672), and the thin crossing "
           "survives a 3x grid refinement; at large pdark the envelope "
           "minimum sits at zeta >~ 1 where the saturation errors order the "
           "other way, so the full-grid pointwise orderings cannot hold; "
           "kept strict so any change in this conclusion is flagged")
def test_small_phase_ordering_entire_grid(figure_bounds):
    p_slow = np.asarray([r.pmax for r in figure_bounds["slow_phase"]])
    p_thin = np.asarray([r.pmax for r in figure_bounds["thin"]])
    p_base = np.asarray([r.pmax for r in figure_bounds["base"]])
    assert np.all(p_slow <= p_base * (1.0 + 1e-3))
    assert np.all(p_thin <= p_base * (1.0 + 1e-3))


def test_determinism(tmp_path):
    args = ["figure", "--eta-max", "40", "--safety", "1.0",
            "--pdark-points", "4", "--pdark-min-exp", "-8",
            "--pdark-max-exp", "-2"]
    outputs = []
    for par in ("1", "8"):
        out = tmp_path / f"figure_par{par}.csv"
        env = dict(os.environ, CLICKBOUND_PARALLELISM=par)
        proc = subprocess.run(
            [sys.executable, "-m", "clickbound.cli"]
            + args + ["--output", str(out)],
            env=env, capture_output=True, text=True, timeout=3000)
        assert proc.returncode == 0, proc.stderr
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]
    print("PASS determinism (figure CSV byte-identical at parallelism 1 "
          "and 8)")
