"""Numerical kernels: adaptive quadrature, truncated lattice Gaussian sums,
and Gaussian tail estimates.

Quadrature is delegated to QUADPACK (``scipy.integrate.quad``): a globally
adaptive embedded Gauss-Kronrod rule with the termination criterion
``estimate <= max(abs_tol, rel_tol * |value|)``; infinite endpoints are
handled by QUADPACK's smooth compactifying change of variables.  Results are
never raised as convergence errors; a failed subdivision budget is reported
through ``QuadratureResult.converged`` so callers can decide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from scipy.integrate import quad as _quadpack

from .distributions import GaussianDensity

_SQRT_2PI = math.sqrt(2.0 * math.pi)

# Lattice series stop when the next term falls below this fraction of the
# running sum (scale-free; terms decay at least geometrically).
SERIES_TRUNCATION = 1e-18
_MIN_SERIES_TERMS = 3


class InvalidInterval(ValueError):
    """Integration interval with ``a >= b``."""


class DomainError(ValueError):
    """Argument outside the domain where a closed-form bound is meaningful."""


class NonConvergence(RuntimeError):
    """Subdivision budget exhausted with the error estimate above tolerance.

    Quadrature itself never raises this (it returns the flagged result); the
    class exists for callers that want to escalate an unconverged flag.
    """


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 2000

    def __post_init__(self) -> None:
        if not (self.abs_tol > 0.0 and self.rel_tol > 0.0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


DEFAULT_QUADRATURE = QuadratureConfig()


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    evaluations: int
    converged: bool = True


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    points: Optional[Sequence[float]] = None,
) -> QuadratureResult:
    """Integrate ``f`` over ``(a, b)`` (endpoints may be infinite).

    ``points`` marks interior locations of spikes or kinks; they are passed
    to the subdivision as mandatory break points (finite intervals only).
    A result is always returned; ``converged`` is False when the estimate
    could not be brought below ``max(abs_tol, rel_tol * |value|)``.
    """
    if not a < b:
        raise InvalidInterval(f"need a < b (got a={a!r}, b={b!r})")
    kwargs = {}
    if points is not None and math.isfinite(a) and math.isfinite(b):
        interior = sorted(p for p in points if a < p < b)
        if interior:
            kwargs["points"] = interior
    out = _quadpack(
        f,
        a,
        b,
        epsabs=cfg.abs_tol,
        epsrel=cfg.rel_tol,
        limit=cfg.max_subdivisions,
        full_output=1,
        **kwargs,
    )
    value, abs_err, info = out[0], out[1], out[2]
    return QuadratureResult(
        value=float(value),
        abs_error_estimate=float(abs_err),
        evaluations=int(info["neval"]),
        converged=len(out) == 3,
    )


def lattice_sum(g: GaussianDensity, epsilon: float) -> float:
    """``sum_{m in Z} f(epsilon + m)`` for the density of ``g``.

    ``epsilon`` is first reduced modulo 1 to ``[-1/2, 1/2]`` (the sum is
    shift invariant), then symmetric term pairs are accumulated outward until
    the next pair is negligible relative to the running sum.
    """
    sigma = g.sigma
    inv2s2 = 1.0 / (2.0 * sigma * sigma)
    eps = float(epsilon) - round(float(epsilon))
    if eps == 0.0:
        # exact symmetric pairing around the on-lattice peak
        total = 1.0
        m = 1
        while True:
            t = 2.0 * math.exp(-(m * m) * inv2s2)
            total += t
            if m >= _MIN_SERIES_TERMS and t <= SERIES_TRUNCATION * total:
                break
            m += 1
    else:
        total = math.exp(-(eps * eps) * inv2s2)
        m = 1
        while True:
            up = eps + m
            dn = eps - m
            t = math.exp(-(up * up) * inv2s2) + math.exp(-(dn * dn) * inv2s2)
            total += t
            if m >= _MIN_SERIES_TERMS and t <= SERIES_TRUNCATION * total:
                break
            m += 1
    return total / (_SQRT_2PI * sigma)


def lattice_sum_excluding_zero(g: GaussianDensity, y: float) -> float:
    """``sum_{m != 0} f(y + m)``, summed directly over ``m != 0``.

    Equals ``lattice_sum(g, y) - f(y)`` but avoids the cancellation that
    formula suffers when ``f(y)`` dominates the whole sum.  ``y`` is not
    reduced modulo 1 (excluding ``m = 0`` breaks shift invariance), so the
    nearest-integer term may sit at large ``|m|``; summation therefore runs
    at least past ``|round(y)|`` before the truncation test applies.
    """
    sigma = g.sigma
    inv2s2 = 1.0 / (2.0 * sigma * sigma)
    yf = float(y)
    min_m = max(_MIN_SERIES_TERMS, abs(int(round(yf))) + _MIN_SERIES_TERMS)
    total = 0.0
    m = 1
    while True:
        up = yf + m
        dn = yf - m
        t = math.exp(-(up * up) * inv2s2) + math.exp(-(dn * dn) * inv2s2)
        total += t
        if m >= min_m and t <= SERIES_TRUNCATION * total:
            break
        m += 1
    return total / (_SQRT_2PI * sigma)


def gaussian_tail_lower(z: float) -> float:
    """Closed-form lower bound ``phi(z) (1/z - 1/z^3)`` on the standard
    normal upper tail; positive and valid only for ``z > 1``."""
    z = float(z)
    if not z > 1.0:
        raise DomainError(f"tail lower bound requires z > 1 (got {z!r})")
    phi = math.exp(-0.5 * z * z) / _SQRT_2PI
    return phi * (1.0 / z - 1.0 / z**3)
