"""Self-validation suite: every analytic property the toolkit is built to
reproduce, expressed as named pass/fail checks.

The same checks back the ``validate`` CLI subcommand and the acceptance test
module.  Failure details always quote the inequality that broke, and any
unconverged quadrature is reported as a NonConvergence failure rather than
silently trusted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .bounds import (
    bernoulli_lower_bound,
    big_sigma_lower_bound,
    lemma1_upper_bound,
    lemma3_near_zero_term,
    lemma4_far_term,
    theorem1_upper_bound,
)
from .distributions import (
    DiscreteLattice,
    GaussianDensity,
    MixtureDensity,
    UniformDensity,
    tail_mass,
)
from .entropy import (
    McConfig,
    deficit_direct,
    deficit_via_identity,
    mc_entropy,
    mixture_entropy,
)
from .landauer import BitMemoryModel, reset_report
from .numerics import (
    DEFAULT_QUADRATURE,
    QuadratureConfig,
    gaussian_tail_lower,
    lattice_sum,
)

_LN2 = math.log(2.0)

# Frozen reference values, evaluated from the closed forms at high precision.
BIG_SIGMA_LB_AT_1 = 0.21386192506482276  # ln 2 * Q(1/2) via erfc
THM1_ENVELOPE_AT_01 = 1.7840634176811572e-05  # exp(-12.5) * 12 / sqrt(2 pi)
DELTA_INTERVAL_AT_025 = (0.0140330, 0.4858927)  # closed-form envelope, rounded

LEMMA2_SEED = 1894772156
MC_SEED_BASE = 20260809

SHARPNESS_GRID = (0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45)
BIG_SIGMA_GRID = (0.5, 1.0, 2.0, 4.0)
IDENTITY_SIGMA_GRID = (0.05, 0.1, 0.25, 0.45, 1.0)


def _geometric_truncated(ratio: float = 0.5, top: int = 5) -> DiscreteLattice:
    weights = [ratio**k for k in range(top + 1)]
    total = sum(weights)
    return DiscreteLattice(tuple(range(top + 1)), tuple(w / total for w in weights))


def test_grid_laws() -> dict[str, DiscreteLattice]:
    return {
        "bernoulli(1/2)": DiscreteLattice.bernoulli(0.5),
        "bernoulli(0.3)": DiscreteLattice.bernoulli(0.3),
        "uniform{-1,0,1}": DiscreteLattice((-1, 0, 1), (1 / 3, 1 / 3, 1 / 3)),
        "geometric{0..5}": _geometric_truncated(),
    }


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _result(name: str, failures: list[str], summary: str) -> CheckResult:
    if failures:
        return CheckResult(name, False, "; ".join(failures))
    return CheckResult(name, True, summary)


def check_identity(cfg: QuadratureConfig, quick: bool = False) -> CheckResult:
    """Both deficit routes agree within their combined reported errors."""
    laws = test_grid_laws()
    sigmas = (0.1, 0.25) if quick else IDENTITY_SIGMA_GRID
    if quick:
        laws = {k: laws[k] for k in ("bernoulli(1/2)", "uniform{-1,0,1}")}
    failures = []
    worst = 0.0
    for label, z in laws.items():
        for sigma in sigmas:
            g = GaussianDensity(sigma)
            dd = deficit_direct(z, g, cfg)
            di = deficit_via_identity(z, g, cfg)
            if not (dd.converged and di.converged):
                failures.append(
                    f"NonConvergence: quadrature did not converge for {label}, sigma={sigma}"
                )
                continue
            diff = abs(dd.nats - di.nats)
            budget = dd.abs_error + di.abs_error
            worst = max(worst, diff)
            if diff > budget:
                failures.append(
                    f"{label}, sigma={sigma}: |direct - identity| = {diff:.3e} "
                    f"> combined errors {budget:.3e}"
                )
            if diff > 1e-8:
                failures.append(
                    f"{label}, sigma={sigma}: |direct - identity| = {diff:.3e} > 1e-8"
                )
            if dd.nats < -1e-10:
                failures.append(
                    f"{label}, sigma={sigma}: deficit {dd.nats:.3e} < -1e-10"
                )
    return _result(
        "identity", failures, f"worst route disagreement {worst:.3e} over the grid"
    )


def check_sharpness_sandwich(cfg: QuadratureConfig, quick: bool = False) -> CheckResult:
    """Fair Bernoulli deficit sits between its closed-form bounds."""
    z = DiscreteLattice.bernoulli(0.5)
    sigmas = (0.15, 0.25, 0.45) if quick else SHARPNESS_GRID
    failures = []
    for sigma in sigmas:
        dd = deficit_direct(z, GaussianDensity(sigma), cfg)
        if not dd.converged:
            failures.append(f"NonConvergence at sigma={sigma}")
            continue
        lb = bernoulli_lower_bound(sigma)
        ub = theorem1_upper_bound(sigma)
        if not lb <= dd.nats:
            failures.append(f"sigma={sigma}: lower {lb:.9e} <= delta {dd.nats:.9e} fails")
        if not dd.nats <= ub:
            failures.append(f"sigma={sigma}: delta {dd.nats:.9e} <= upper {ub:.9e} fails")
        if sigma == 0.25:
            lo, hi = DELTA_INTERVAL_AT_025
            if not lo <= dd.nats <= hi:
                failures.append(
                    f"sigma=0.25: delta {dd.nats:.9e} outside [{lo}, {hi}]"
                )
    return _result("sharpness_sandwich", failures, f"{len(sigmas)} sigma points inside")


def check_bound_chain(cfg: QuadratureConfig, quick: bool = False) -> CheckResult:
    """delta <= lemma1 <= lemma3 + lemma4 <= theorem1, gaps >= -1e-10."""
    z = DiscreteLattice.bernoulli(0.5)
    sigmas = (0.15, 0.25, 0.45) if quick else SHARPNESS_GRID
    failures = []
    for sigma in sigmas:
        g = GaussianDensity(sigma)
        dd = deficit_direct(z, g, cfg)
        if not dd.converged:
            failures.append(f"NonConvergence at sigma={sigma}")
            continue
        l1 = lemma1_upper_bound(g, cfg)
        split = lemma3_near_zero_term(g) + lemma4_far_term(g)
        t1 = theorem1_upper_bound(sigma)
        for lo, hi, what in (
            (dd.nats, l1, "delta <= lemma1"),
            (l1, split, "lemma1 <= lemma3+lemma4"),
            (split, t1, "lemma3+lemma4 <= theorem1"),
        ):
            if hi - lo < -1e-10:
                failures.append(
                    f"sigma={sigma}: {what} violated ({lo:.9e} vs {hi:.9e})"
                )
    return _result("bound_chain", failures, f"chain ordered at {len(sigmas)} sigmas")


def check_lattice_sum_bound(quick: bool = False) -> CheckResult:
    """sum_m f(eps + m) < 1/sigma over random eps; shift/reflection exact."""
    rng = np.random.default_rng(LEMMA2_SEED)
    n_eps = 100 if quick else 1000
    eps_values = rng.uniform(-5.0, 5.0, size=n_eps)
    sigmas = (0.05, 0.25, 0.5) if quick else tuple(i / 20 for i in range(1, 11))
    failures = []
    for sigma in sigmas:
        g = GaussianDensity(sigma)
        cap = 1.0 / sigma
        for eps in eps_values:
            s = lattice_sum(g, eps)
            if not s < cap:
                failures.append(
                    f"sigma={sigma}, eps={eps!r}: lattice_sum {s!r} >= 1/sigma {cap!r}"
                )
                break
    # invariances on a deterministic subset
    g = GaussianDensity(0.25)
    for eps in eps_values[:50]:
        base = lattice_sum(g, eps)
        for shift in (-7, -1, 3):
            shifted = lattice_sum(g, eps + shift)
            if abs(base - shifted) > 1e-13 * max(1.0, abs(base)):
                failures.append(
                    f"shift invariance broke at eps={eps!r}, n={shift}: "
                    f"{base!r} vs {shifted!r}"
                )
        mirrored = lattice_sum(g, -eps)
        if abs(base - mirrored) > 1e-13 * max(1.0, abs(base)):
            failures.append(f"reflection invariance broke at eps={eps!r}")
    return _result(
        "lattice_sum_bound",
        failures,
        f"{len(sigmas)} sigmas x {n_eps} offsets below 1/sigma",
    )


def check_big_sigma_lower(cfg: QuadratureConfig, quick: bool = False) -> CheckResult:
    """Fair Bernoulli deficit dominates ln2 * Q(1/(2 sigma)) at large sigma."""
    z = DiscreteLattice.bernoulli(0.5)
    sigmas = (0.5, 1.0) if quick else BIG_SIGMA_GRID
    failures = []
    ref = big_sigma_lower_bound(1.0)
    if abs(ref - BIG_SIGMA_LB_AT_1) > 1e-6:
        failures.append(
            f"lower bound at sigma=1 is {ref!r}, expected {BIG_SIGMA_LB_AT_1} +- 1e-6"
        )
    prev = None
    for sigma in sigmas:
        lb = big_sigma_lower_bound(sigma)
        if prev is not None and not lb > prev:
            failures.append(f"bound not increasing at sigma={sigma}")
        prev = lb
        dd = deficit_direct(z, GaussianDensity(sigma), cfg)
        if not dd.converged:
            failures.append(f"NonConvergence at sigma={sigma}")
        elif not dd.nats >= lb:
            failures.append(
                f"sigma={sigma}: delta {dd.nats:.9e} >= bound {lb:.9e} fails"
            )
    return _result("big_sigma_lower", failures, f"dominates on {len(sigmas)} sigmas")


def check_rate_match(quick: bool = False) -> CheckResult:
    """Upper/lower closed forms share the exponential factor exactly."""
    failures = []
    for sigma in (0.1, 0.25, 0.4):
        ratio = theorem1_upper_bound(sigma) / bernoulli_lower_bound(sigma)
        rational = (0.5 / sigma + 7.0) / (_LN2 * (2.0 * sigma - 8.0 * sigma**3))
        rel = abs(ratio - rational) / rational
        if rel > 1e-12:
            failures.append(
                f"sigma={sigma}: ratio {ratio!r} vs rational {rational!r} "
                f"(rel err {rel:.3e} > 1e-12)"
            )
    return _result("rate_match", failures, "exponential factor cancels to 1e-12")


def check_landauer(cfg: QuadratureConfig, quick: bool = False) -> CheckResult:
    """Reset entropy drop within the closed-form envelope of ln 2."""
    sigmas = (0.1, 0.25) if quick else (0.05, 0.1, 0.25)
    failures = []
    env = theorem1_upper_bound(0.1)
    if abs(env - THM1_ENVELOPE_AT_01) > 1e-12 * THM1_ENVELOPE_AT_01:
        failures.append(
            f"envelope at sigma_eff=0.1 is {env!r}, expected {THM1_ENVELOPE_AT_01!r}"
        )
    for sigma_eff in sigmas:
        rr = reset_report(BitMemoryModel(mu=0.5, sigma=sigma_eff, p1=0.5), cfg)
        if not rr.converged:
            failures.append(f"NonConvergence at sigma_eff={sigma_eff}")
            continue
        gap = abs(rr.delta_h - _LN2)
        envelope = theorem1_upper_bound(sigma_eff)
        if gap > envelope:
            failures.append(
                f"sigma_eff={sigma_eff}: |delta_h - ln2| = {gap:.3e} "
                f"> envelope {envelope:.3e}"
            )
    return _result("landauer_envelope", failures, f"{len(sigmas)} noise scales inside")


def check_equality_cases(cfg: QuadratureConfig, quick: bool = False) -> CheckResult:
    """Point-mass Z and narrow uniform base give zero deficit."""
    failures = []
    g = GaussianDensity(0.25)
    point = DiscreteLattice.point_mass(0)
    dd = deficit_direct(point, g, cfg)
    if abs(dd.nats) > 1e-12:
        failures.append(f"point mass: direct deficit {dd.nats!r} not 0 within 1e-12")
    di = deficit_via_identity(point, g, cfg)
    if abs(di.nats) > 1e-10:
        failures.append(f"point mass: identity deficit {di.nats!r} not 0 within 1e-10")
    z = DiscreteLattice.bernoulli(0.5)
    u = UniformDensity(0.25)
    hm = mixture_entropy(MixtureDensity(u, z), cfg)
    if abs(hm.nats) > 1e-12:
        failures.append(f"uniform base: h(X+Z) = {hm.nats!r} not 0 within 1e-12")
    du = deficit_via_identity(z, u, cfg)
    if abs(du.nats) > 1e-12:
        failures.append(f"uniform base: deficit {du.nats!r} not 0 within 1e-12")
    return _result("equality_cases", failures, "both equality cases exact")


def check_mc_agreement(
    cfg: QuadratureConfig, quick: bool = False, samples: int = 10**6
) -> CheckResult:
    """Seeded Monte Carlo entropy within 4 standard errors of quadrature."""
    if quick:
        samples = min(samples, 10**5)
    laws = test_grid_laws()
    sigmas = (0.1, 0.25) if quick else IDENTITY_SIGMA_GRID
    if quick:
        laws = {k: laws[k] for k in ("bernoulli(1/2)", "geometric{0..5}")}
    failures = []
    seed = MC_SEED_BASE
    for label, z in laws.items():
        for sigma in sigmas:
            m = MixtureDensity(GaussianDensity(sigma), z)
            hq = mixture_entropy(m, cfg)
            hmc = mc_entropy(m, McConfig(samples=samples, seed=seed))
            seed += 1
            gap = abs(hmc.nats - hq.nats)
            if gap > 4.0 * hmc.abs_error:
                failures.append(
                    f"{label}, sigma={sigma}: |mc - quadrature| = {gap:.3e} "
                    f"> 4 SE = {4.0 * hmc.abs_error:.3e}"
                )
    return _result(
        "mc_agreement", failures, f"all combinations within 4 SE at N={samples}"
    )


def check_tail_inequality(quick: bool = False) -> CheckResult:
    """phi(z)(1/z - 1/z^3) never exceeds the true tail on z in [1.01, 10]."""
    g = GaussianDensity(1.0)
    failures = []
    worst = math.inf
    for z in np.linspace(1.01, 10.0, 200):
        margin = tail_mass(g, z) - gaussian_tail_lower(z)
        worst = min(worst, margin)
        if margin < 0.0:
            failures.append(f"z={z!r}: tail bound exceeds tail by {-margin:.3e}")
            break
    return _result(
        "tail_inequality", failures, f"200 grid points, smallest margin {worst:.3e}"
    )


def run_all_checks(
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    quick: bool = False,
    mc_samples: int = 10**6,
) -> list[CheckResult]:
    """Run every named check; order is fixed and deterministic."""
    steps: list[Callable[[], CheckResult]] = [
        lambda: check_identity(cfg, quick),
        lambda: check_sharpness_sandwich(cfg, quick),
        lambda: check_bound_chain(cfg, quick),
        lambda: check_lattice_sum_bound(quick),
        lambda: check_big_sigma_lower(cfg, quick),
        lambda: check_rate_match(quick),
        lambda: check_landauer(cfg, quick),
        lambda: check_equality_cases(cfg, quick),
        lambda: check_mc_agreement(cfg, quick, mc_samples),
        lambda: check_tail_inequality(quick),
    ]
    return [step() for step in steps]
