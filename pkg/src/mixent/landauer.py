"""Entropy accounting for resetting a single bit stored as a particle in a
double well.

Before reset the particle position follows a two-Gaussian mixture (weight
``p1`` in the well at ``+mu``, ``1 - p1`` at ``-mu``, in-well standard
deviation ``sigma``); after a reset to logic zero it follows the single
Gaussian.  The entropy drop equals the binary entropy ``H(p1)`` minus the
mixture deficit, so for well separations large against the noise the drop
approaches ``ln 2`` nats per bit, the entropy side of the Landauer relation
(heat and temperature bookkeeping are out of scope here).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .distributions import DiscreteLattice, DistributionError, GaussianDensity
from .entropy import deficit_direct
from .numerics import DEFAULT_QUADRATURE, QuadratureConfig

_LN2 = math.log(2.0)

CSV_COLUMNS = (
    "mu",
    "sigma",
    "p1",
    "h_before",
    "h_after",
    "delta_h",
    "ideal",
    "deficit",
    "envelope",
)


def binary_entropy(p: float) -> float:
    """``-p ln p - (1-p) ln(1-p)`` with the 0 ln 0 -> 0 convention."""
    if not (0.0 <= p <= 1.0):
        raise DistributionError(f"probability {p!r} is outside [0, 1]")
    if p in (0.0, 1.0):
        return 0.0
    return -p * math.log(p) - (1.0 - p) * math.log(1.0 - p)


@dataclass(frozen=True)
class BitMemoryModel:
    """Double-well bit: well centers at ``+-mu``, in-well deviation ``sigma``,
    probability ``p1`` of logic state one."""

    mu: float
    sigma: float
    p1: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.mu) and self.mu > 0.0):
            raise DistributionError(f"mu must be positive (got {self.mu!r})")
        if not (math.isfinite(self.sigma) and self.sigma > 0.0):
            raise DistributionError(f"sigma must be positive (got {self.sigma!r})")
        if not (0.0 <= self.p1 <= 1.0):
            raise DistributionError(f"p1 must lie in [0, 1] (got {self.p1!r})")

    @property
    def sigma_eff(self) -> float:
        """Noise scale after mapping the well spacing to the unit lattice."""
        return self.sigma / (2.0 * self.mu)


def rescale_to_unit_lattice(
    model: BitMemoryModel,
) -> tuple[DiscreteLattice, GaussianDensity, float]:
    """Map well centers ``{-mu, +mu}`` to lattice points ``{0, 1}``.

    The affine change ``x -> (x + mu) / (2 mu)`` divides the noise scale by
    ``2 mu`` and shifts every entropy by ``log_jacobian = ln(2 mu)``, which
    the caller adds back (``h(aX) = h(X) + ln a``).
    """
    if model.p1 == 0.0:
        lattice = DiscreteLattice.point_mass(0)
    elif model.p1 == 1.0:
        lattice = DiscreteLattice.point_mass(1)
    else:
        lattice = DiscreteLattice.bernoulli(model.p1)
    return lattice, GaussianDensity(model.sigma_eff), math.log(2.0 * model.mu)


@dataclass(frozen=True)
class ResetReport:
    """Entropy balance of resetting the bit to logic zero.

    ``h_before`` is assembled through the exact identity
    ``h(mixture) = H(p1) + h(noise) - deficit`` with the deficit from
    quadrature, so ``delta_h = ideal - deficit_correction`` holds exactly
    and remains meaningful even when the deficit is far below the rounding
    error of the entropies themselves.
    """

    mu: float
    sigma: float
    p1: float
    h_before: float
    h_after: float
    delta_h: float
    ideal: float
    deficit_correction: float
    deficit_error: float
    thm1_envelope: Optional[float]
    converged: bool = True

    def to_json_dict(self) -> dict:
        return {
            "mu": self.mu,
            "sigma": self.sigma,
            "p1": self.p1,
            "h_before": self.h_before,
            "h_after": self.h_after,
            "delta_h": self.delta_h,
            "ideal": self.ideal,
            "deficit": self.deficit_correction,
            "deficit_err": self.deficit_error,
            "envelope": self.thm1_envelope,
            "converged": self.converged,
        }

    def to_csv_row(self) -> list[str]:
        vals = [
            self.mu,
            self.sigma,
            self.p1,
            self.h_before,
            self.h_after,
            self.delta_h,
            self.ideal,
            self.deficit_correction,
        ]
        row = [f"{v:.15g}" for v in vals]
        row.append("" if self.thm1_envelope is None else f"{self.thm1_envelope:.15g}")
        return row

    def in_bits(self) -> "ResetReport":
        """Same report with every entropy converted from nats to bits."""
        scale = 1.0 / _LN2
        return ResetReport(
            mu=self.mu,
            sigma=self.sigma,
            p1=self.p1,
            h_before=self.h_before * scale,
            h_after=self.h_after * scale,
            delta_h=self.delta_h * scale,
            ideal=self.ideal * scale,
            deficit_correction=self.deficit_correction * scale,
            deficit_error=self.deficit_error * scale,
            thm1_envelope=None
            if self.thm1_envelope is None
            else self.thm1_envelope * scale,
            converged=self.converged,
        )


def reset_report(
    model: BitMemoryModel, cfg: QuadratureConfig = DEFAULT_QUADRATURE
) -> ResetReport:
    """Entropy before and after the reset, the drop, the ideal ``H(p1)``,
    the deficit correction, and (for ``sigma_eff < 1/2``) the closed-form
    envelope bounding how far the drop can fall short of ideal."""
    lattice, g_eff, log_jacobian = rescale_to_unit_lattice(model)
    delta = deficit_direct(lattice, g_eff, cfg)
    ideal = binary_entropy(model.p1)
    h_after = GaussianDensity(model.sigma).entropy_nats()
    # h(noise_eff) + log_jacobian == h(noise) == h_after, so the identity
    # route gives h_before with the deficit as the only numeric term.
    h_before = ideal + h_after - delta.nats
    envelope = None
    if model.sigma_eff < 0.5:
        from .bounds import theorem1_upper_bound

        envelope = theorem1_upper_bound(model.sigma_eff)
    return ResetReport(
        mu=model.mu,
        sigma=model.sigma,
        p1=model.p1,
        h_before=h_before,
        h_after=h_after,
        delta_h=h_before - h_after,
        ideal=ideal,
        deficit_correction=delta.nats,
        deficit_error=delta.abs_error,
        thm1_envelope=envelope,
        converged=delta.converged,
    )
