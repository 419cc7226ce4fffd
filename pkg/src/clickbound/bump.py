"""Smooth window profiles of the detection region and their spectral transforms.

The detection region is cut out by an infinitely smooth, compactly supported
window built from the classic ``exp(-1/s)`` mollifier.  In the dimensionless
coordinates used throughout the package the window factorizes per axis into a
longitudinal profile supported on (-1-dl, 0) and a transverse profile
supported on (-(1+dL)/2, (1+dL)/2), both with unit plateau.

The momentum-space kernels only ever need three oscillatory integrals of
these profiles:

    A(k) = int chi_trans(x) e^{ikx} dx                      (real, even)
    C(k) = int chi_long(x) cos(phase + dphi x) e^{ikx} dx
    S(k) = int chi_long(x) sin(phase + dphi x) e^{ikx} dx

with C(-k) = conj C(k) and S(-k) = conj S(k).  They are evaluated either
directly (oscillation-resolved panel quadrature) or through a dense cubic
interpolation cache, since the momentum quadratures request them millions of
times.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from .exceptions import AccuracyError, ValidationError
from .quadrature import panel_nodes


def phi_kernel(s):
    """exp(-1/s) for s > 0, identically 0 for s <= 0."""
    s = np.asarray(s, dtype=float)
    out = np.zeros_like(s)
    pos = s > 0
    out[pos] = np.exp(-1.0 / s[pos])
    return out if out.ndim else float(out)


def theta(s):
    """Smooth transition: 0 for s <= 0, 1 for s >= 1, strictly between inside."""
    s = np.asarray(s, dtype=float)
    num = phi_kernel(s)
    den = num + phi_kernel(1.0 - s)
    out = np.divide(num, den, out=np.zeros_like(np.asarray(num, float)),
                    where=np.asarray(den) > 0)
    # den vanishes only in the unreachable case s <= 0 and s >= 1 simultaneously
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class AxisBump:
    """One axis factor of the spatial window.

    ``longitudinal`` profiles live on (-1-smoothing, 0) with unit plateau on
    [-(2+smoothing)/2, -smoothing/2]; ``transverse`` profiles are even with
    support (-(1+smoothing)/2, (1+smoothing)/2) and plateau [-1/2, 1/2].
    """

    kind: str
    smoothing: float

    def __post_init__(self):
        if self.kind not in ("longitudinal", "transverse"):
            raise ValidationError(f"unknown bump kind {self.kind!r}")
        if not np.isfinite(self.smoothing) or self.smoothing <= 0:
            raise ValidationError(
                f"smoothing must be finite and > 0, got {self.smoothing!r}")

    def support(self) -> tuple[float, float]:
        d = self.smoothing
        if self.kind == "longitudinal":
            return (-1.0 - d, 0.0)
        return (-(1.0 + d) / 2.0, (1.0 + d) / 2.0)

    def plateau(self) -> tuple[float, float]:
        d = self.smoothing
        if self.kind == "longitudinal":
            return (-(2.0 + d) / 2.0, -d / 2.0)
        return (-0.5, 0.5)

    def breakpoints(self) -> tuple[float, float, float, float]:
        lo, hi = self.support()
        plo, phi_ = self.plateau()
        return (lo, plo, phi_, hi)


def chi_axis(x, bump: AxisBump):
    """Evaluate the axis profile; exactly 0 off support, exactly 1 on plateau."""
    d = bump.smoothing
    x = np.asarray(x, dtype=float)
    if bump.kind == "longitudinal":
        arg = 1.0 + 1.0 / d - (2.0 / d) * np.abs(x + (1.0 + d) / 2.0)
    else:
        arg = 1.0 + 1.0 / d - (2.0 / d) * np.abs(x)
    return theta(arg)


def _modulation(dphi: float, phase: float, which: str):
    if which == "none":
        return None
    if which == "cos":
        return lambda x: np.cos(phase + dphi * x)
    return lambda x: np.sin(phase + dphi * x)


def _direct_transform(bump: AxisBump, k: float, dphi: float = 0.0,
                      phase: float = 0.0, which: str = "none",
                      nodes: int = 16, refine: float = 1.0) -> complex:
    """Oscillation-resolved panel quadrature of int profile*mod*e^{ikx} dx."""
    mod = _modulation(dphi, phase, which)
    breaks = bump.breakpoints()
    k_osc = abs(k) + abs(dphi)
    total = 0.0 + 0.0j
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        width = hi - lo
        if width <= 0:
            continue
        npan = int(np.ceil(width * k_osc / (2.0 * np.pi) * 2.0 * refine)) + 2
        x, w = panel_nodes(np.linspace(lo, hi, npan + 1), nodes)
        f = chi_axis(x, bump)
        if mod is not None:
            f = f * mod(x)
        total += np.sum(w * f * np.exp(1j * k * x))
    return complex(total)


def transform_A(k: float, dL_tilde: float) -> float:
    """Transverse transform by direct quadrature (real by evenness)."""
    bump = AxisBump("transverse", dL_tilde)
    return _direct_transform(bump, k).real


def transform_CS(k: float, dl_tilde: float, dphi: float,
                 phase: float) -> tuple[complex, complex]:
    """Cosine- and sine-modulated longitudinal transforms by direct quadrature."""
    bump = AxisBump("longitudinal", dl_tilde)
    c = _direct_transform(bump, k, dphi, phase, "cos")
    s = _direct_transform(bump, k, dphi, phase, "sin")
    return c, s


def _transform_table(bump: AxisBump, ks: np.ndarray, dphi: float, phase: float,
                     which: str, nodes: int = 16) -> np.ndarray:
    """Evaluate a transform on a dense nonnegative k-grid by a shared x-grid."""
    mod = _modulation(dphi, phase, which)
    lo, hi = bump.support()
    width = hi - lo
    k_osc = ks[-1] + abs(dphi)
    npan = int(np.ceil(width * k_osc / (2.0 * np.pi) * 2.0)) + 8
    edges = np.unique(np.concatenate(
        [np.linspace(lo, hi, npan + 1), np.asarray(bump.breakpoints())]))
    x, w = panel_nodes(edges, nodes)
    f = chi_axis(x, bump)
    if mod is not None:
        f = f * mod(x)
    wf = w * f
    out = np.empty(len(ks), dtype=complex)
    block = 2000
    for i in range(0, len(ks), block):
        out[i:i + block] = np.exp(1j * np.outer(ks[i:i + block], x)) @ wf
    return out


def _tail_envelope(*values: np.ndarray) -> np.ndarray:
    mag = np.max(np.abs(np.stack(values)), axis=0)
    return np.maximum.accumulate(mag[::-1])[::-1]


class SpectralTransforms:
    """Dense cubic-interpolation cache of A, C, S with symmetry accessors.

    Values are tabulated on [0, k_cap] with uniform step; negative arguments
    use A(-k) = A(k) and C(-k) = conj C(k), S(-k) = conj S(k).  Beyond the
    detected cutoff (tail envelope below ``tail_threshold`` of the peak) all
    three evaluate to exactly 0; the momentum quadratures rely on these hard
    cutoffs to bound their integration regions.
    """

    def __init__(self, dl_tilde: float, dL_tilde: float, dphi: float,
                 phase: float, tail_threshold: float = 1e-8,
                 grid_step: float = 0.02, k_cap_trans: float | None = None,
                 k_cap_long: float | None = None):
        for name, v in (("dl_tilde", dl_tilde), ("dL_tilde", dL_tilde)):
            if not np.isfinite(v) or v <= 0:
                raise ValidationError(f"{name} must be finite and > 0, got {v!r}")
        if not np.isfinite(dphi) or not np.isfinite(phase):
            raise ValidationError("dphi and phase must be finite")
        self.dl_tilde = float(dl_tilde)
        self.dL_tilde = float(dL_tilde)
        self.dphi = float(dphi)
        self.phase = float(phase)
        self.tail_threshold = float(tail_threshold)
        self.grid_step = float(grid_step)
        self._bump_trans = AxisBump("transverse", dL_tilde)
        self._bump_long = AxisBump("longitudinal", dl_tilde)

        if k_cap_trans is None:
            k_cap_trans = 360.0 / min(dL_tilde, 1.0) + 60.0
        if k_cap_long is None:
            k_cap_long = 360.0 / min(dl_tilde, 1.0) + 2.0 * abs(dphi) + 60.0

        kA = np.arange(0.0, k_cap_trans + grid_step, grid_step)
        Av = _transform_table(self._bump_trans, kA, 0.0, 0.0, "none")
        kL = np.arange(0.0, k_cap_long + grid_step, grid_step)
        Cv = _transform_table(self._bump_long, kL, dphi, phase, "cos")
        Sv = _transform_table(self._bump_long, kL, dphi, phase, "sin")

        self._kA, self._kL = kA, kL
        self._envA = _tail_envelope(Av.real)
        self._envL = _tail_envelope(Cv, Sv)
        self.kcut_trans = self._detect_cut(kA, self._envA, "transverse")
        self.kcut_long = self._detect_cut(kL, self._envL, "longitudinal")
        self._A = CubicSpline(kA, Av.real)
        self._Cr = CubicSpline(kL, Cv.real)
        self._Ci = CubicSpline(kL, Cv.imag)
        self._Sr = CubicSpline(kL, Sv.real)
        self._Si = CubicSpline(kL, Sv.imag)

    def _detect_cut(self, ks: np.ndarray, env: np.ndarray, label: str) -> float:
        peak = env[0]
        thr = self.tail_threshold * peak
        if env[-1] >= thr:
            raise AccuracyError(
                f"{label} transform tail did not fall below "
                f"{self.tail_threshold:g} of its peak within k <= {ks[-1]:g}; "
                "increase the k cap", residual=float(env[-1] / peak))
        idx = int(np.searchsorted(-env, -thr))
        return float(ks[min(idx, len(ks) - 1)])

    def A(self, k):
        ak = np.abs(np.asarray(k, dtype=float))
        v = self._A(np.minimum(ak, self.kcut_trans))
        return np.where(ak <= self.kcut_trans, v, 0.0)

    def C(self, k):
        k = np.asarray(k, dtype=float)
        ak = np.abs(k)
        kk = np.minimum(ak, self.kcut_long)
        v = self._Cr(kk) + 1j * np.sign(k) * self._Ci(kk)
        return np.where(ak <= self.kcut_long, v, 0.0)

    def S(self, k):
        k = np.asarray(k, dtype=float)
        ak = np.abs(k)
        kk = np.minimum(ak, self.kcut_long)
        v = self._Sr(kk) + 1j * np.sign(k) * self._Si(kk)
        return np.where(ak <= self.kcut_long, v, 0.0)

    def k_env_trans(self, frac: float) -> float:
        """Smallest grid k beyond which |A| stays below frac of its peak."""
        idx = int(np.searchsorted(-self._envA, -frac * self._envA[0]))
        return float(self._kA[min(idx, len(self._kA) - 1)])

    def k_env_long(self, frac: float) -> float:
        """Smallest grid k beyond which |C|, |S| stay below frac of their peak."""
        idx = int(np.searchsorted(-self._envL, -frac * self._envL[0]))
        return float(self._kL[min(idx, len(self._kL) - 1)])

    def cache_key(self) -> tuple:
        return (self.dl_tilde, self.dL_tilde, self.dphi, self.phase,
                self.tail_threshold, self.grid_step)

    def verify(self, tol: float = 1e-7) -> float:
        """Compare the cache against direct quadrature at off-grid points.

        Returns the worst absolute deviation; raises AccuracyError beyond tol.
        """
        worst = 0.0
        for frac in (0.0, 0.137, 0.411, 0.733, 0.986):
            kA = frac * self.kcut_trans + 0.337 * self.grid_step
            kL = frac * self.kcut_long + 0.337 * self.grid_step
            worst = max(worst, abs(float(self.A(kA))
                                   - transform_A(kA, self.dL_tilde)))
            c, s = transform_CS(kL, self.dl_tilde, self.dphi, self.phase)
            worst = max(worst, abs(complex(self.C(kL)) - c),
                        abs(complex(self.S(kL)) - s))
        if worst > tol:
            raise AccuracyError(
                f"transform cache deviates from direct quadrature by {worst:g}"
                f" (tolerance {tol:g})", residual=worst)
        return worst


_TRANSFORMS_CACHE: dict = {}


def get_transforms(dl_tilde: float, dL_tilde: float, dphi: float,
                   phase: float) -> SpectralTransforms:
    """Shared transform cache; building one takes ~10 s, so reuse freely."""
    key = (float(dl_tilde), float(dL_tilde), float(dphi), float(phase))
    tr = _TRANSFORMS_CACHE.get(key)
    if tr is None:
        tr = SpectralTransforms(dl_tilde, dL_tilde, dphi, phase)
        if len(_TRANSFORMS_CACHE) > 8:
            _TRANSFORMS_CACHE.pop(next(iter(_TRANSFORMS_CACHE)))
        _TRANSFORMS_CACHE[key] = tr
    return tr
