"""Brute-force Cartesian oracle for the equal-rapidity overlap W2(0).

Independent of the production evaluator: no interpolation caches, no
cylindrical collapse, no boosted variables.  Straight tensor Gauss-Legendre
over (k1, k2, k3) with the axis transforms evaluated by direct
oscillation-resolved quadrature at every node.

    W2(0) = N / ((2 pi)^6 w0) * int dk1 dk2 dk3 (1/w)
            [w0 S(k1) + i w C(k1)] [w0 S(-k1) - i w C(-k1)] A(k2)^2 A(k3)^2

with w = sqrt(k1^2 + a^2 (k2^2 + k3^2)) and w0 the scaled mode frequency.
(The production path divides by a^2 and rescales the transverse axes; here
k2, k3 are the bare transverse arguments of A, so no a^2 appears.)

Usage: python3 scripts/oracle_w2_zero.py [resolution_per_unit_k]
"""

import sys
import time

sys.path.insert(0, "src")

import numpy as np

from clickbound.bump import AxisBump, _direct_transform
from clickbound.params import DimensionlessConfig
from clickbound.quadrature import panel_nodes


def oracle_w2_zero(config: DimensionlessConfig, res: float = 10.0,
                   k1_range: float = 295.0, kt_range: float = 75.0) -> float:
    a, w0, N = config.a, config.omega0_tilde, config.N
    bump_l = AxisBump("longitudinal", config.dl_tilde)
    bump_t = AxisBump("transverse", config.dL_tilde)

    n1 = int(np.ceil(2 * k1_range * res / 16.0))
    x1, w1 = panel_nodes(np.linspace(-k1_range, k1_range, n1 + 1), 16)
    nt = int(np.ceil(kt_range * res / 16.0))
    xt, wt = panel_nodes(np.linspace(0.0, kt_range, nt + 1), 16)

    cs_p = np.array([_direct_transform(bump_l, k, config.delta_phi,
                                       config.arg_alpha0, "cos")
                     for k in x1])
    ss_p = np.array([_direct_transform(bump_l, k, config.delta_phi,
                                       config.arg_alpha0, "sin")
                     for k in x1])
    cs_m = np.array([_direct_transform(bump_l, -k, config.delta_phi,
                                       config.arg_alpha0, "cos")
                     for k in x1])
    ss_m = np.array([_direct_transform(bump_l, -k, config.delta_phi,
                                       config.arg_alpha0, "sin")
                     for k in x1])
    A = np.array([_direct_transform(bump_t, k).real for k in xt])

    # transverse plane folded to the first quadrant (A is even): factor 4
    WA2 = wt * A * A
    rho2 = a * a * (xt[:, None] ** 2 + xt[None, :] ** 2)
    wprod = (WA2[:, None] * WA2[None, :]).ravel()
    rho2 = rho2.ravel()

    total = 0.0 + 0.0j
    block = 64
    for i in range(0, len(x1), block):
        k1 = x1[i:i + block, None]
        om = np.sqrt(k1 ** 2 + rho2[None, :])
        X = w0 * ss_p[i:i + block, None] + 1j * om * cs_p[i:i + block, None]
        Y = w0 * ss_m[i:i + block, None] - 1j * om * cs_m[i:i + block, None]
        total += np.sum(w1[i:i + block, None] * (X * Y * wprod[None, :] / om))
    pref = 4.0 * N / ((2.0 * np.pi) ** 6 * w0)
    return pref * total


if __name__ == "__main__":
    res = float(sys.argv[1]) if len(sys.argv) > 1 else 10.0
    for (n, dphi, a, phase) in [(10, 1, 1, 0.0), (10, 10, 1, 0.0)]:
        cfg = DimensionlessConfig(N=n, delta_phi=dphi, a=a, arg_alpha0=phase)
        t0 = time.time()
        val = oracle_w2_zero(cfg, res=res)
        print(f"{cfg.label()}: W2(0) = {val.real:.12g} "
              f"(im {val.imag:.2e})  [{time.time() - t0:.0f}s, res {res}]")
