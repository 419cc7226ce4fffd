"""Physical detector/beam parameters and their dimensionless reduction.

All lengths are in natural units (c = 1), so the operation time tau is also a
length.  The computational pipeline only ever sees the dimensionless tuple
(N, delta_phi, a, arg_alpha0, dl_tilde, dL_tilde).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .exceptions import ValidationError

#: Smallest admissible collar smoothing; sharper collars drive the smeared
#: two-point function toward its logarithmically divergent sharp-cutoff limit.
MIN_SMOOTHING = 0.1


def _require_positive(name: str, value: float) -> None:
    if not math.isfinite(value) or value <= 0:
        raise ValidationError(f"{name} must be finite and > 0, got {value!r}")


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise ValidationError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class PhysicalSetup:
    """Square-prism detector operated for a finite time, plus the incident mode.

    The detector has thickness ``l`` and square side ``L``; it operates for a
    time window ``tau``.  The normally incident single-mode coherent state is
    characterised by wavenumber ``k0``, total photon number ``alpha0_sq``,
    phase ``arg_alpha0`` and coherence volume ``V_coh``.  ``delta_l`` and
    ``delta_L`` are the collar widths of the smooth spatial cutoff; when None
    they default to the extended-detector dimensions (dl_tilde = dL_tilde = 1).
    """

    l: float
    L: float
    tau: float
    k0: float
    alpha0_sq: float
    V_coh: float
    arg_alpha0: float = 0.0
    delta_l: float | None = None
    delta_L: float | None = None

    def __post_init__(self):
        for name in ("l", "L", "tau", "k0", "V_coh"):
            _require_positive(name, getattr(self, name))
        if not math.isfinite(self.alpha0_sq) or self.alpha0_sq < 0:
            raise ValidationError(
                f"alpha0_sq must be finite and >= 0, got {self.alpha0_sq!r}")
        _require_finite("arg_alpha0", self.arg_alpha0)
        for name in ("delta_l", "delta_L"):
            v = getattr(self, name)
            if v is not None:
                _require_positive(name, v)


@dataclass(frozen=True)
class DimensionlessConfig:
    """The dimensionless tuple that fully specifies one scenario.

    ``N`` is the effective photon number seen by the detector, ``delta_phi``
    the optical phase accumulated across the extended thickness, ``a`` the
    aspect ratio of the extended detection volume and ``omega0_tilde`` the
    scaled mode frequency (equal to ``delta_phi`` for a massless mode at
    normal incidence).
    """

    N: float
    delta_phi: float
    a: float
    arg_alpha0: float = 0.0
    dl_tilde: float = 1.0
    dL_tilde: float = 1.0
    omega0_tilde: float = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        for name in ("N", "delta_phi", "a", "dl_tilde", "dL_tilde"):
            _require_positive(name, getattr(self, name))
        _require_finite("arg_alpha0", self.arg_alpha0)
        if self.omega0_tilde is None:
            object.__setattr__(self, "omega0_tilde", self.delta_phi)
        elif not math.isclose(self.omega0_tilde, self.delta_phi,
                              rel_tol=1e-12, abs_tol=0.0):
            raise ValidationError(
                "omega0_tilde must equal delta_phi for a massless mode at "
                f"normal incidence, got {self.omega0_tilde!r} vs "
                f"{self.delta_phi!r}")
        for name in ("dl_tilde", "dL_tilde"):
            if getattr(self, name) < MIN_SMOOTHING:
                raise ValidationError(
                    f"{name} must be >= {MIN_SMOOTHING} to keep the smeared "
                    "two-point function finite")

    def label(self) -> str:
        return (f"N{self.N:g}_dphi{self.delta_phi:g}_a{self.a:g}"
                f"_phase{self.arg_alpha0:g}")


def to_dimensionless(setup: PhysicalSetup) -> DimensionlessConfig:
    """Reduce a physical setup to its dimensionless configuration.

    delta_phi = k0 (l + tau), a = (l + tau)/(L + tau) and
    N = alpha0_sq (l + tau)(L + tau)^2 / V_coh.
    """
    lt = setup.l + setup.tau
    Lt = setup.L + setup.tau
    dl = setup.delta_l / lt if setup.delta_l is not None else 1.0
    dL = setup.delta_L / Lt if setup.delta_L is not None else 1.0
    return DimensionlessConfig(
        N=setup.alpha0_sq * lt * Lt**2 / setup.V_coh,
        delta_phi=setup.k0 * lt,
        a=lt / Lt,
        arg_alpha0=setup.arg_alpha0,
        dl_tilde=dl,
        dL_tilde=dL,
    )


def ideal_click_probability(alpha0_sq: float) -> float:
    """Click probability of the idealised vacuum-orthogonal projector."""
    if not math.isfinite(alpha0_sq) or alpha0_sq < 0:
        raise ValidationError(
            f"alpha0_sq must be finite and >= 0, got {alpha0_sq!r}")
    return -math.expm1(-alpha0_sq)


def coherence_volume(dk1: float, dk2: float, dk3: float) -> float:
    """Coherence volume of a Gaussian wavepacket from its momentum spreads.

    Reads the defining expression as the reciprocal of the full product
    (8 pi)^(3/2) dk1 dk2 dk3, the only grouping with volume units.
    """
    for name, v in (("dk1", dk1), ("dk2", dk2), ("dk3", dk3)):
        _require_positive(name, v)
    return 1.0 / ((8.0 * math.pi) ** 1.5 * dk1 * dk2 * dk3)
