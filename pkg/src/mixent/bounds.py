"""Closed-form and semi-numeric bounds on the mixture entropy deficit, and
sandwich reports that check a computed deficit against every applicable bound.

For a Gaussian base of standard deviation ``sigma`` the bounds chain as

    delta <= lemma1_upper_bound          (Z-independent integral)
          <= lemma3_near_zero_term + lemma4_far_term      (sigma < 1/2)
          <= theorem1_upper_bound                          (sigma < 1/2)

with ``theorem1_upper_bound = exp(-1/(8 sigma^2)) (1/(2 sigma) + 7) / sqrt(2 pi)``.
Matching lower bounds exist for the fair Bernoulli law on adjacent lattice
points: ``bernoulli_lower_bound`` (sigma < 1/2, same exponential factor, so
the rate is sharp) and ``big_sigma_lower_bound = ln 2 * Q(1/(2 sigma))``,
which grows toward ``ln 2 / 2`` and shows the deficit stays large once
``sigma >= 1/2``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

from .distributions import DiscreteLattice, GaussianDensity, tail_mass
from .entropy import EntropyValue, deficit_direct
from .numerics import (
    DEFAULT_QUADRATURE,
    DomainError,
    QuadratureConfig,
    integrate,
    lattice_sum_excluding_zero,
)

_SQRT_2PI = math.sqrt(2.0 * math.pi)
_LN2 = math.log(2.0)


def _require_subcritical(sigma: float, what: str) -> float:
    sigma = float(sigma)
    if not (0.0 < sigma < 0.5):
        raise DomainError(f"{what} requires 0 < sigma < 1/2 (got {sigma!r})")
    return sigma


def lemma1_upper_bound(
    g: GaussianDensity, cfg: QuadratureConfig = DEFAULT_QUADRATURE
) -> float:
    """Numeric value of the Z-independent deficit bound

        int f(y) ln(1 + sum_{m != 0} f(y+m) / f(y)) dy.

    The ratio is formed in log space; the integrand decays under the Gaussian
    envelope, so integration over lattice extremes +- 40 sigma is exact to
    well below double precision.
    """
    sigma = g.sigma
    log_pdf = g.log_pdf

    def integrand(y: float) -> float:
        s = lattice_sum_excluding_zero(g, y)
        if s <= 0.0:
            return 0.0
        lf = log_pdf(y)
        ratio_log = math.log(s) - lf
        if ratio_log > 30.0:
            ln1p_ratio = ratio_log + math.log1p(math.exp(-ratio_log))
        else:
            ln1p_ratio = math.log1p(math.exp(ratio_log))
        f = math.exp(lf)
        if f == 0.0:
            return 0.0
        return f * ln1p_ratio

    window = 1.0 + 40.0 * sigma
    # kinks sit at half-integers (nearest-lattice-point switches) and integers
    points = [0.5 * n for n in range(-2 * int(window), 2 * int(window) + 1)]
    qr = integrate(integrand, -window, window, cfg, points=points)
    return qr.value


def lemma3_near_zero_term(g: GaussianDensity) -> float:
    """Bound ``2 int_{1/2}^inf f`` on the near-zero piece of the deficit
    integral (valid for any symmetric density; evaluated for the Gaussian)."""
    return 2.0 * tail_mass(g, 0.5)


def lemma4_far_term(g: GaussianDensity) -> float:
    """Bound ``f(1/2)/2 + 5 int_{1/2}^inf f`` on the far-field piece,
    valid for a Gaussian base with ``sigma < 1/2``."""
    sigma = _require_subcritical(g.sigma, "far-field term")
    f_half = math.exp(-1.0 / (8.0 * sigma * sigma)) / (_SQRT_2PI * sigma)
    return 0.5 * f_half + 5.0 * tail_mass(g, 0.5)


def theorem1_upper_bound(sigma: float) -> float:
    """Closed-form deficit bound ``exp(-1/(8 sigma^2)) (1/(2 sigma) + 7) / sqrt(2 pi)``
    for any integer-valued Z, ``0 < sigma < 1/2``."""
    sigma = _require_subcritical(sigma, "closed-form upper bound")
    return math.exp(-1.0 / (8.0 * sigma * sigma)) * (0.5 / sigma + 7.0) / _SQRT_2PI


def bernoulli_lower_bound(sigma: float) -> float:
    """Closed-form deficit lower bound for the fair Bernoulli law on adjacent
    lattice points: ``exp(-1/(8 sigma^2)) ln 2 (2 sigma - 8 sigma^3) / sqrt(2 pi)``,
    positive exactly on ``0 < sigma < 1/2``."""
    sigma = _require_subcritical(sigma, "Bernoulli lower bound")
    return (
        math.exp(-1.0 / (8.0 * sigma * sigma))
        * _LN2
        * (2.0 * sigma - 8.0 * sigma**3)
        / _SQRT_2PI
    )


def big_sigma_lower_bound(sigma: float) -> float:
    """Deficit lower bound ``ln 2 * Q(1/(2 sigma))`` for the fair Bernoulli
    law (Q is the standard normal upper tail); monotone increasing in sigma
    toward ``ln 2 / 2``."""
    sigma = float(sigma)
    if not sigma > 0.0:
        raise DomainError(f"lower bound requires sigma > 0 (got {sigma!r})")
    return _LN2 * tail_mass(GaussianDensity(1.0), 0.5 / sigma)


CSV_COLUMNS = (
    "sigma",
    "delta",
    "delta_err",
    "lemma1",
    "lemma3",
    "lemma4",
    "thm1",
    "bern_lb",
    "bigsig_lb",
    "ok",
)


def _fmt(x: Optional[float]) -> str:
    return "" if x is None else f"{x:.15g}"


@dataclass(frozen=True)
class BoundReport:
    """Deficit estimate for one ``(sigma, Z)`` pair with every applicable bound.

    ``sandwich_ok`` is True when every present lower bound is at most
    ``delta_quadrature + delta_error``, ``delta_quadrature - delta_error`` is
    at most every present upper bound (lemma1, lemma3+lemma4 when lemma4 is
    present, theorem1 when present), and all quadratures converged.
    """

    sigma: float
    z_descriptor: str
    delta_quadrature: float
    delta_error: float
    lemma1_numeric_ub: float
    lemma3_term: float
    lemma4_term: Optional[float]
    theorem1_ub: Optional[float]
    bernoulli_lb: Optional[float]
    big_sigma_lb: Optional[float]
    sandwich_ok: bool
    converged: bool = True

    def to_json_dict(self) -> dict:
        return {
            "sigma": self.sigma,
            "z": json.loads(self.z_descriptor),
            "delta": self.delta_quadrature,
            "delta_err": self.delta_error,
            "lemma1": self.lemma1_numeric_ub,
            "lemma3": self.lemma3_term,
            "lemma4": self.lemma4_term,
            "thm1": self.theorem1_ub,
            "bern_lb": self.bernoulli_lb,
            "bigsig_lb": self.big_sigma_lb,
            "ok": self.sandwich_ok,
            "converged": self.converged,
        }

    def to_csv_row(self) -> list[str]:
        return [
            _fmt(self.sigma),
            _fmt(self.delta_quadrature),
            _fmt(self.delta_error),
            _fmt(self.lemma1_numeric_ub),
            _fmt(self.lemma3_term),
            _fmt(self.lemma4_term),
            _fmt(self.theorem1_ub),
            _fmt(self.bernoulli_lb),
            _fmt(self.big_sigma_lb),
            "true" if self.sandwich_ok else "false",
        ]


def sandwich_report(
    z: DiscreteLattice,
    sigma: float,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> BoundReport:
    """Compute the deficit and every bound applicable to ``(Z, sigma)``.

    The Bernoulli-specific lower bounds require an exact structural match
    (two equal-weight atoms on adjacent integers); ``bernoulli_lb`` applies
    below ``sigma = 1/2``, ``big_sigma_lb`` at and above it.
    """
    g = GaussianDensity(sigma)
    delta: EntropyValue = deficit_direct(z, g, cfg)
    lemma1 = lemma1_upper_bound(g, cfg)
    lemma3 = lemma3_near_zero_term(g)
    subcritical = 0.0 < sigma < 0.5
    lemma4 = lemma4_far_term(g) if subcritical else None
    thm1 = theorem1_upper_bound(sigma) if subcritical else None
    is_bern = z.is_fair_adjacent_bernoulli()
    bern_lb = bernoulli_lower_bound(sigma) if (is_bern and subcritical) else None
    bigsig_lb = big_sigma_lower_bound(sigma) if (is_bern and not subcritical) else None

    hi = delta.nats + delta.abs_error
    lo = delta.nats - delta.abs_error
    uppers = [lemma1]
    if lemma4 is not None:
        uppers.append(lemma3 + lemma4)
    if thm1 is not None:
        uppers.append(thm1)
    lowers = [b for b in (bern_lb, bigsig_lb) if b is not None]
    ok = (
        all(lb <= hi for lb in lowers)
        and all(lo <= ub for ub in uppers)
        and delta.converged
    )
    return BoundReport(
        sigma=float(sigma),
        z_descriptor=json.dumps(z.to_json(), separators=(",", ":")),
        delta_quadrature=delta.nats,
        delta_error=delta.abs_error,
        lemma1_numeric_ub=lemma1,
        lemma3_term=lemma3,
        lemma4_term=lemma4,
        theorem1_ub=thm1,
        bernoulli_lb=bern_lb,
        big_sigma_lb=bigsig_lb,
        sandwich_ok=ok,
        converged=delta.converged,
    )
