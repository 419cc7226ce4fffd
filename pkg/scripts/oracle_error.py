"""Brute-force oracle for the approximation error E(zeta = 1).

Independent of the production path: the rapidity integral uses a uniform
Simpson rule (errfun uses density-driven Gauss-Legendre panels) and every
W2(eta) value comes from a direct momentum quadrature on a 1.5x-refined
grid (errfun reads a cubic interpolant of adaptively sampled values).

    I = int_0^16 [2 G_1 - G_2](eta) * 2 Re e^{W2(eta) - W2(0)} deta
    E = sqrt(1 - I)

The weight is below 1e-28 beyond eta = 16, far under the 1e-3 target.

Usage: python3 scripts/oracle_error.py [points_per_unit_eta]
"""

import sys
import time

sys.path.insert(0, "src")

import numpy as np
from scipy.integrate import simpson

from clickbound.bump import SpectralTransforms
from clickbound.errfun import gauss_weight
from clickbound.params import DimensionlessConfig
from clickbound.wightman import KGridSpec, get_evaluator


def oracle_error_zeta1(config: DimensionlessConfig, res: float = 64.0,
                       eta_lim: float = 16.0) -> float:
    tr = SpectralTransforms(config.dl_tilde, config.dL_tilde,
                            config.delta_phi, config.arg_alpha0)
    ev = get_evaluator(config, KGridSpec().refined(1.5), tr)
    n = int(round(eta_lim * res))
    if n % 2:
        n += 1
    etas = np.linspace(0.0, eta_lim, n + 1)
    t0 = time.time()
    w2 = np.array([ev(float(e)) for e in etas])
    dt = time.time() - t0
    dw = w2 - w2[0].real
    integrand = gauss_weight(etas, 1.0) * 2.0 * np.exp(dw.real) * np.cos(dw.imag)
    I = simpson(integrand, x=etas)
    print(f"  [{len(etas)} eta points, {dt:.0f}s of W2 evaluations, "
          f"Im W2(0) = {w2[0].imag:.2e}]")
    return float(np.sqrt(max(0.0, 1.0 - I)))


if __name__ == "__main__":
    res = float(sys.argv[1]) if len(sys.argv) > 1 else 64.0
    for (n, dphi, a, phase) in [(10, 1, 1, 0.0), (10, 10, 1, 0.0)]:
        cfg = DimensionlessConfig(N=n, delta_phi=dphi, a=a, arg_alpha0=phase)
        val = oracle_error_zeta1(cfg, res=res)
        print(f"{cfg.label()}: E(zeta=1) = {val:.10g}")
