"""Discrete laws on the integer lattice, continuous base densities, and their mixtures.

The central object is the law of ``X + Z`` for an integer-valued ``Z`` and an
independent continuous ``X`` with density ``f``: its density is the shifted
mixture ``sum_k p_k f(x - k)``.  All mixture evaluation happens in log space
(max-shifted log-sum-exp) so that ratios of doubly-exponentially small
component densities remain representable.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.special import erfc, logsumexp

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

# Probability vectors whose sum is off by more than this are rejected;
# anything closer is silently renormalized (tolerates decimal literals).
PROB_SUM_TOL = 1e-12


class DistributionError(ValueError):
    """A distribution parameter violates one of its construction invariants."""


@dataclass(frozen=True)
class DiscreteLattice:
    """Probability mass function on integer lattice points.

    Invariants enforced at construction:

    * support entries are integers, distinct, sorted ascending;
    * every probability lies in ``[0, 1]`` and the vector sums to 1 within
      ``PROB_SUM_TOL`` (then renormalized exactly);
    * zero-probability atoms are dropped, so ``0 ln 0`` terms never arise
      downstream.
    """

    support: tuple[int, ...]
    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        support = list(self.support)
        probs = [float(p) for p in self.probs]
        if len(support) != len(probs):
            raise DistributionError(
                f"support has {len(support)} entries but probs has {len(probs)}"
            )
        if not support:
            raise DistributionError("support must not be empty")
        cleaned = []
        for k in support:
            kf = float(k)
            if not kf.is_integer():
                raise DistributionError(f"support entry {k!r} is not an integer")
            cleaned.append(int(kf))
        for p in probs:
            if not (0.0 <= p <= 1.0):
                raise DistributionError(f"probability {p!r} is outside [0, 1]")
        total = math.fsum(probs)
        if abs(total - 1.0) > PROB_SUM_TOL:
            raise DistributionError(
                f"probabilities must sum to 1 within {PROB_SUM_TOL} (got {total!r})"
            )
        pairs = sorted(
            ((k, p / total) for k, p in zip(cleaned, probs) if p > 0.0),
        )
        if not pairs:
            raise DistributionError("all probabilities are zero")
        ks = [k for k, _ in pairs]
        if len(set(ks)) != len(ks):
            raise DistributionError(f"support entries are not distinct: {ks}")
        object.__setattr__(self, "support", tuple(ks))
        object.__setattr__(self, "probs", tuple(p for _, p in pairs))
        object.__setattr__(
            self, "_log_probs", tuple(math.log(p) for _, p in pairs)
        )

    @property
    def log_probs(self) -> tuple[float, ...]:
        return self._log_probs  # type: ignore[attr-defined]

    def is_fair_adjacent_bernoulli(self) -> bool:
        """Exactly two equal-weight atoms on adjacent integers (no fuzziness)."""
        return (
            len(self.support) == 2
            and self.support[1] - self.support[0] == 1
            and self.probs[0] == self.probs[1]
        )

    def shifted(self, offset: int) -> "DiscreteLattice":
        return DiscreteLattice(tuple(k + offset for k in self.support), self.probs)

    # -- construction helpers / JSON wire format --

    @classmethod
    def bernoulli(cls, p: float) -> "DiscreteLattice":
        """Law with P(Z=1) = p, P(Z=0) = 1 - p."""
        if not (0.0 <= p <= 1.0):
            raise DistributionError(f"bernoulli parameter {p!r} is outside [0, 1]")
        return cls((0, 1), (1.0 - p, p))

    @classmethod
    def uniform_support(cls, n: int) -> "DiscreteLattice":
        """Uniform law on {0, 1, ..., n-1}."""
        if n < 1:
            raise DistributionError(f"uniform_support size must be >= 1 (got {n})")
        return cls(tuple(range(n)), (1.0 / n,) * n)

    @classmethod
    def point_mass(cls, k: int = 0) -> "DiscreteLattice":
        return cls((k,), (1.0,))

    @classmethod
    def from_json(cls, doc: Union[str, dict]) -> "DiscreteLattice":
        """Parse ``{"support": [...], "probs": [...]}`` or the shorthands
        ``{"bernoulli": p}`` and ``{"uniform_support": n}``."""
        if isinstance(doc, str):
            try:
                doc = json.loads(doc)
            except json.JSONDecodeError as exc:
                raise DistributionError(f"invalid distribution JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise DistributionError("distribution JSON must be an object")
        if "bernoulli" in doc:
            return cls.bernoulli(float(doc["bernoulli"]))
        if "uniform_support" in doc:
            return cls.uniform_support(int(doc["uniform_support"]))
        if "support" in doc and "probs" in doc:
            return cls(tuple(doc["support"]), tuple(doc["probs"]))
        raise DistributionError(
            'distribution JSON needs "support"/"probs", "bernoulli", or "uniform_support"'
        )

    def to_json(self) -> dict:
        return {"support": list(self.support), "probs": list(self.probs)}


@dataclass(frozen=True)
class GaussianDensity:
    """Mean-zero normal density with standard deviation ``sigma`` (lattice units)."""

    sigma: float

    def __post_init__(self) -> None:
        sigma = float(self.sigma)
        if not (math.isfinite(sigma) and sigma > 0.0):
            raise DistributionError(f"sigma must be a positive finite real (got {sigma!r})")
        object.__setattr__(self, "sigma", sigma)

    def log_pdf(self, x):
        if np.ndim(x) == 0:
            u = float(x) / self.sigma
            return -0.5 * u * u - math.log(self.sigma) - _LOG_SQRT_2PI
        u = np.asarray(x, dtype=float) / self.sigma
        return -0.5 * u * u - math.log(self.sigma) - _LOG_SQRT_2PI

    def pdf(self, x):
        return np.exp(self.log_pdf(x))

    def entropy_nats(self) -> float:
        return 0.5 * math.log(2.0 * math.pi * math.e * self.sigma**2)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.normal(0.0, self.sigma, size=n)


@dataclass(frozen=True)
class UniformDensity:
    """Symmetric uniform density on ``(-half_width, half_width)``."""

    half_width: float

    def __post_init__(self) -> None:
        w = float(self.half_width)
        if not (math.isfinite(w) and w > 0.0):
            raise DistributionError(f"half_width must be a positive finite real (got {w!r})")
        object.__setattr__(self, "half_width", w)

    def log_pdf(self, x):
        inside_log = -math.log(2.0 * self.half_width)
        if np.ndim(x) == 0:
            return inside_log if abs(float(x)) < self.half_width else -math.inf
        x = np.asarray(x, dtype=float)
        return np.where(np.abs(x) < self.half_width, inside_log, -np.inf)

    def pdf(self, x):
        return np.exp(self.log_pdf(x))

    def entropy_nats(self) -> float:
        return math.log(2.0 * self.half_width)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.uniform(-self.half_width, self.half_width, size=n)


BaseDensity = Union[GaussianDensity, UniformDensity]


def tail_mass(g: GaussianDensity, z: float) -> float:
    """Upper-tail integral of ``g`` beyond ``z``, via the complementary error
    function (accurate to >= 12 significant digits over ``|z/sigma| <= 30``)."""
    return 0.5 * erfc(float(z) / (g.sigma * math.sqrt(2.0)))


@dataclass(frozen=True)
class MixtureDensity:
    """Density of ``X + Z``: ``sum_k p_k f(x - k)`` with stable log evaluation."""

    base: BaseDensity
    lattice: DiscreteLattice

    def log_density(self, x):
        """``ln sum_k p_k f(x - k)`` via max-shifted log-sum-exp.

        Returns ``-inf`` only when every component is a true zero (uniform
        base outside its support); for a Gaussian base the value is finite at
        any finite ``x``.  Accepts scalars or arrays.
        """
        if np.ndim(x) == 0:
            return self._log_density_scalar(float(x))
        x = np.asarray(x, dtype=float)
        terms = np.stack(
            [
                lp + self.base.log_pdf(x - k)
                for lp, k in zip(self.lattice.log_probs, self.lattice.support)
            ]
        )
        with np.errstate(invalid="ignore"):
            out = logsumexp(terms, axis=0)
        return out

    def _log_density_scalar(self, x: float) -> float:
        terms = [
            lp + self.base.log_pdf(x - k)
            for lp, k in zip(self.lattice.log_probs, self.lattice.support)
        ]
        m = max(terms)
        if m == -math.inf:
            return -math.inf
        return m + math.log(math.fsum(math.exp(t - m) for t in terms))

    def density(self, x):
        return np.exp(self.log_density(x))

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        atoms = rng.choice(
            np.asarray(self.lattice.support, dtype=float),
            size=n,
            p=np.asarray(self.lattice.probs),
        )
        return atoms + self.base.sample(rng, n)
