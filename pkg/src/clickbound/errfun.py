"""Rapidity-averaged approximation error and the matching operator-norm factor.

A boost-smeared detection operator approximates the vacuum-orthogonal target
with an error controlled by the even weight 2 G_zeta - G_{2 zeta} (each G a
centred Gaussian of the indicated variance) integrated against the normalized
two-point overlap e^{W2(eta) - W2(0)}.  The same smearing carries an operator
norm bounded by exp(pi^2 / (2 zeta)); both quantities enter the click-bound
envelope side by side.
"""

from __future__ import annotations

import math

import numpy as np

from .exceptions import ConsistencyError, RangeError, ValidationError
from .quadrature import density_nodes
from .wightman import WightmanCurve

#: Half-width of the weight support in standard deviations of the wider
#: Gaussian; the discarded tail mass is below 1e-14.
N_SIGMA = 8.0

#: Tolerance band separating roundoff from genuine quadrature failure when
#: the overlap integral strays past 1.
CLAMP_TOL = 1e-6


def _require_zeta(zeta: float) -> None:
    if not math.isfinite(zeta) or zeta <= 0:
        raise ValidationError(f"zeta must be finite and > 0, got {zeta!r}")


def gauss_weight(eta, zeta: float):
    """Even rapidity weight 2 G_zeta(eta) - G_{2 zeta}(eta), unit total mass."""
    _require_zeta(zeta)
    eta = np.asarray(eta, dtype=float)
    g1 = np.exp(-eta ** 2 / (2.0 * zeta)) / math.sqrt(2.0 * math.pi * zeta)
    g2 = np.exp(-eta ** 2 / (4.0 * zeta)) / math.sqrt(4.0 * math.pi * zeta)
    out = 2.0 * g1 - g2
    return out if out.ndim else float(out)


def norm_factor(zeta: float) -> float:
    """Operator-norm bound exp(pi^2 / (2 zeta)); inf when it overflows."""
    _require_zeta(zeta)
    arg = math.pi ** 2 / (2.0 * zeta)
    if arg > 709.0:
        return math.inf
    return math.exp(arg)


def required_eta_max(zeta: float) -> float:
    """Curve range needed to evaluate the error at this zeta."""
    _require_zeta(zeta)
    return N_SIGMA * math.sqrt(4.0 * zeta)


def _eta_nodes(eta_lim: float, zeta: float, curve: WightmanCurve):
    """Quadrature nodes on [0, eta_lim] resolving weight and curve structure.

    The weight varies on the scale sqrt(zeta); the curve's own structure
    (oscillation and decay of W2) lives at eta below ~12 regardless of zeta.
    """
    sig = math.sqrt(zeta)
    curve_scale = 12.0

    def dens(eta: float) -> float:
        d = 8.0 / sig
        if eta < curve_scale:
            d += 8.0
        return d

    return density_nodes(0.0, eta_lim, dens, 10)


def error_of_zeta(zeta: float, curve: WightmanCurve) -> float:
    """Approximation error E_zeta in [0, 1] for the given overlap curve.

    Integrates I = int_0^inf gauss_weight(eta) * 2 Re e^{W2(eta) - W2(0)} deta
    (the full-line integral folded by conjugate symmetry) and returns
    sqrt(max(0, 1 - I)).
    """
    _require_zeta(zeta)
    need = required_eta_max(zeta)
    if curve.eta_max < need:
        raise RangeError(
            f"curve covers |eta| <= {curve.eta_max:g} but zeta = {zeta:g} "
            f"needs |eta| <= {need:g}", required_eta_max=need)
    eta_lim = min(need, curve.eta_max)
    x, w = _eta_nodes(eta_lim, zeta, curve)
    dw = curve(x) - curve.w2_zero
    integrand = 2.0 * np.exp(dw.real) * np.cos(dw.imag)
    I = float(np.sum(w * gauss_weight(x, zeta) * integrand))
    one_minus = 1.0 - I
    if one_minus < -CLAMP_TOL:
        raise ConsistencyError(
            f"overlap integral I = {I:.12g} exceeds 1 beyond roundoff "
            f"(zeta = {zeta:g})")
    return math.sqrt(max(0.0, one_minus))
