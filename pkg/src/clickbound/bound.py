"""Click-probability envelope and its minimization over the smearing variance.

For dark-count probability pdark the bound on the click probability reads

    B(zeta; pdark) = [E_zeta + exp(pi^2 / 2 zeta) * sqrt(pdark)]^2

valid for every zeta > 0, so the reported upper bound is the minimum over a
log-spaced zeta grid refined by golden-section search.  A sweep evaluates the
minimum across configurations and a pdark grid, reusing one transform cache
and one rapidity curve per configuration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bump import get_transforms
from .errfun import error_of_zeta, norm_factor, required_eta_max
from .exceptions import (ClickboundError, MinimizationError, RangeError,
                         ValidationError)
from .params import DimensionlessConfig
from .wightman import KGridSpec, WightmanCurve, build_curve

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class BoundResult:
    """Minimized click bound at one (configuration, pdark) point.

    ``zeta_opt`` and ``e_opt`` are None when the pdark = 0 short-circuit
    applies (the infimum as zeta -> 0 is exactly 0).  ``informative`` records
    whether the bound constrains anything (pmax < 1).
    """

    pdark: float
    pmax: float
    zeta_opt: float | None
    e_opt: float | None
    informative: bool
    diagnostics: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SweepSpec:
    """Everything needed to reproduce one sweep deterministically."""

    configs: tuple[DimensionlessConfig, ...]
    pdark_min_exp: float = -12.0
    pdark_max_exp: float = -1.0
    pdark_points: int = 12
    zeta_lo: float = 1e-2
    zeta_hi: float = 1e3
    zeta_grid_points: int = 60
    zeta_rel_tol: float = 1e-3
    eta_max: float = 506.0
    grid: KGridSpec = field(default_factory=KGridSpec)
    parallelism: int = 1

    def __post_init__(self):
        if not self.configs:
            raise ValidationError("sweep needs at least one configuration")
        if self.pdark_min_exp > self.pdark_max_exp:
            raise ValidationError("pdark_min_exp must be <= pdark_max_exp")
        if self.pdark_max_exp > 0:
            raise ValidationError("pdark grid must stay within (0, 1]")
        if self.pdark_points < 1:
            raise ValidationError("pdark_points must be >= 1")
        if not (0 < self.zeta_lo < self.zeta_hi):
            raise ValidationError("need 0 < zeta_lo < zeta_hi")
        if self.zeta_grid_points < 2:
            raise ValidationError("zeta_grid_points must be >= 2")
        if self.zeta_rel_tol <= 0:
            raise ValidationError("zeta_rel_tol must be > 0")
        if self.parallelism < 1:
            raise ValidationError("parallelism must be >= 1")

    def pdark_exponents(self) -> np.ndarray:
        if self.pdark_points == 1:
            return np.asarray([self.pdark_min_exp])
        return np.linspace(self.pdark_min_exp, self.pdark_max_exp,
                           self.pdark_points)

    def pdark_values(self) -> np.ndarray:
        return 10.0 ** self.pdark_exponents()


def envelope(zeta: float, pdark: float, curve: WightmanCurve) -> float:
    """[E_zeta + norm_factor(zeta) * sqrt(pdark)]^2 (inf on overflow)."""
    if not math.isfinite(pdark) or not 0.0 <= pdark <= 1.0:
        raise ValidationError(f"pdark must lie in [0, 1], got {pdark!r}")
    e = error_of_zeta(zeta, curve)
    if pdark == 0.0:
        return e * e
    nf = norm_factor(zeta)
    if not math.isfinite(nf):
        return math.inf
    root = e + nf * math.sqrt(pdark)
    if not math.isfinite(root) or root > 1e154:
        return math.inf
    return root * root


class _EnvelopeCache:
    """Memoizes E_zeta per curve so pdark grids reuse the expensive part."""

    def __init__(self, curve: WightmanCurve):
        self.curve = curve
        self._errors: dict[float, float] = {}

    def error(self, zeta: float) -> float:
        e = self._errors.get(zeta)
        if e is None:
            e = error_of_zeta(zeta, self.curve)
            self._errors[zeta] = e
        return e

    def value(self, zeta: float, pdark: float) -> float:
        e = self.error(zeta)
        if pdark == 0.0:
            return e * e
        nf = norm_factor(zeta)
        if not math.isfinite(nf):
            return math.inf
        root = e + nf * math.sqrt(pdark)
        # squaring overflows for root above ~1.34e154; treat as unbounded
        if not math.isfinite(root) or root > 1e154:
            return math.inf
        return root * root


def minimize_bound(pdark: float, curve: WightmanCurve,
                   spec: SweepSpec | None = None,
                   _cache: _EnvelopeCache | None = None) -> BoundResult:
    """Minimize the envelope over zeta for one pdark value.

    pdark = 0 short-circuits to the analytic infimum pmax = 0 (the error
    tends to 0 as zeta -> 0 and the norm factor no longer contributes).
    Otherwise: coarse log-spaced zeta grid, then golden-section refinement
    around the best grid point to the requested relative tolerance in zeta.
    """
    if spec is None:
        spec = SweepSpec(configs=(curve.config,))
    if not math.isfinite(pdark) or not 0.0 <= pdark <= 1.0:
        raise ValidationError(f"pdark must lie in [0, 1], got {pdark!r}")
    if pdark == 0.0:
        return BoundResult(pdark=0.0, pmax=0.0, zeta_opt=None, e_opt=None,
                           informative=True,
                           diagnostics={"short_circuit": "pdark=0"})

    cache = _cache if _cache is not None else _EnvelopeCache(curve)
    zeta_hi = min(spec.zeta_hi,
                  (curve.eta_max / (required_eta_max(1.0))) ** 2)
    if zeta_hi < spec.zeta_lo:
        raise MinimizationError(
            f"curve range eta_max = {curve.eta_max:g} cannot support any "
            f"zeta in [{spec.zeta_lo:g}, {spec.zeta_hi:g}]")
    zetas = np.geomspace(spec.zeta_lo, zeta_hi, spec.zeta_grid_points)

    values = []
    causes = []
    for z in zetas:
        try:
            values.append(cache.value(float(z), pdark))
        except ClickboundError as exc:
            values.append(math.inf)
            causes.append(f"zeta={z:g}: {exc}")
    values = np.asarray(values)
    if not np.any(np.isfinite(values)):
        raise MinimizationError(
            f"every zeta grid point failed for pdark = {pdark:g}",
            causes=tuple(causes))

    i = int(np.argmin(values))
    lo = zetas[max(i - 1, 0)]
    hi = zetas[min(i + 1, len(zetas) - 1)]
    best_grid = float(values[i])

    # golden-section on log(zeta) over the bracketing interval
    a, b = math.log(lo), math.log(hi)
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc = cache.value(math.exp(c), pdark)
    fd = cache.value(math.exp(d), pdark)
    while (b - a) > spec.zeta_rel_tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = cache.value(math.exp(c), pdark)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = cache.value(math.exp(d), pdark)
    z_opt = math.exp(c if fc <= fd else d)
    f_opt = min(fc, fd, best_grid)
    if best_grid <= min(fc, fd):
        z_opt = float(zetas[i])
    e_opt = cache.error(z_opt)
    pmax = cache.value(z_opt, pdark)
    return BoundResult(
        pdark=float(pdark), pmax=float(pmax), zeta_opt=float(z_opt),
        e_opt=float(e_opt), informative=bool(pmax < 1.0),
        diagnostics={"grid_min": best_grid, "refined_min": float(f_opt),
                     "grid_failures": len(causes)})


def build_config_curve(config: DimensionlessConfig,
                       spec: SweepSpec) -> WightmanCurve:
    """Transforms + rapidity curve for one configuration of a sweep."""
    transforms = get_transforms(config.dl_tilde, config.dL_tilde,
                                config.delta_phi, config.arg_alpha0)
    return build_curve(config, transforms, spec.grid, eta_max=spec.eta_max,
                       parallelism=spec.parallelism)


def sweep(spec: SweepSpec):
    """All (configuration, pdark) bound results, grouped by configuration.

    Returns a list of (config, [(pdark, BoundResult-or-ClickboundError)])
    in the deterministic order of the spec.  Per-point failures are recorded
    in place of results; curve-construction failures mark every point of
    that configuration.
    """
    pdarks = spec.pdark_values()
    out = []
    for config in spec.configs:
        try:
            curve = build_config_curve(config, spec)
        except ClickboundError as exc:
            out.append((config, [(float(p), exc) for p in pdarks]))
            continue
        cache = _EnvelopeCache(curve)
        curve_stats = {
            "w2_zero": curve.w2_zero,
            "eta_max": curve.eta_max,
            "error_estimate": curve.diagnostics.get("quad_error_estimate"),
        }
        rows = []
        for p in pdarks:
            try:
                res = minimize_bound(float(p), curve, spec, cache)
                res.diagnostics.update(curve_stats)
                rows.append((float(p), res))
            except ClickboundError as exc:
                rows.append((float(p), exc))
        out.append((config, rows))
    return out
