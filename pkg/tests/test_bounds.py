import json
import math

import pytest

from mixent.bounds import (
    CSV_COLUMNS,
    bernoulli_lower_bound,
    big_sigma_lower_bound,
    lemma1_upper_bound,
    lemma3_near_zero_term,
    lemma4_far_term,
    sandwich_report,
    theorem1_upper_bound,
)
from mixent.distributions import DiscreteLattice, GaussianDensity
from mixent.entropy import deficit_direct
from mixent.numerics import DomainError

LN2 = math.log(2.0)
FAIR = DiscreteLattice.bernoulli(0.5)


class TestClosedForms:
    def test_theorem1_frozen_values(self):
        assert theorem1_upper_bound(0.25) == pytest.approx(
            0.4859186986186925, rel=1e-13
        )
        assert theorem1_upper_bound(0.1) == pytest.approx(
            1.7840634176811572e-05, rel=1e-13
        )

    def test_theorem1_vanishes_at_zero_limit(self):
        assert theorem1_upper_bound(0.02) < 1e-130
        assert theorem1_upper_bound(0.005) == 0.0  # underflows double precision

    def test_bernoulli_frozen_values(self):
        assert bernoulli_lower_bound(0.25) == pytest.approx(
            0.01403388233037102, rel=1e-13
        )
        assert bernoulli_lower_bound(0.1) == pytest.approx(
            1.9785896446493348e-07, rel=1e-13
        )

    def test_bernoulli_root_at_half(self):
        assert bernoulli_lower_bound(0.4999999) == pytest.approx(0.0, abs=1e-7)
        assert bernoulli_lower_bound(0.49) > 0.0

    def test_lemma3_frozen_values(self):
        assert lemma3_near_zero_term(GaussianDensity(0.25)) == pytest.approx(
            0.04550026389635841, rel=1e-13
        )
        assert lemma3_near_zero_term(GaussianDensity(0.5)) == pytest.approx(
            0.3173105078629141, rel=1e-13
        )

    def test_lemma3_vanishes_for_small_sigma(self):
        assert lemma3_near_zero_term(GaussianDensity(0.01)) < 1e-300

    def test_lemma4_frozen_values(self):
        assert lemma4_far_term(GaussianDensity(0.25)) == pytest.approx(
            0.22173259276727214, rel=1e-13
        )
        assert lemma4_far_term(GaussianDensity(0.1)) == pytest.approx(
            8.866855433067458e-06, rel=1e-13
        )

    def test_lemma4_boundary(self):
        assert math.isfinite(lemma4_far_term(GaussianDensity(0.49)))
        with pytest.raises(DomainError):
            lemma4_far_term(GaussianDensity(0.5))

    @pytest.mark.parametrize("func", [theorem1_upper_bound, bernoulli_lower_bound])
    @pytest.mark.parametrize("sigma", [0.5, 0.75, 0.0, -0.1])
    def test_subcritical_domain_errors(self, func, sigma):
        with pytest.raises(DomainError):
            func(sigma)

    def test_big_sigma_frozen_values(self):
        assert big_sigma_lower_bound(1.0) == pytest.approx(
            0.21386192506482276, rel=1e-12
        )
        assert big_sigma_lower_bound(0.5) == pytest.approx(
            0.10997144194361163, rel=1e-12
        )

    def test_big_sigma_limit_and_monotonicity(self):
        assert big_sigma_lower_bound(1e7) == pytest.approx(LN2 / 2.0, rel=1e-7)
        grid = [0.5, 0.8, 1.3, 2.1, 3.4, 4.0]
        values = [big_sigma_lower_bound(s) for s in grid]
        assert all(a < b for a, b in zip(values, values[1:]))

    def test_big_sigma_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            big_sigma_lower_bound(0.0)


class TestLemma1:
    def test_orders_between_deficit_and_closed_form(self):
        g = GaussianDensity(0.25)
        value = lemma1_upper_bound(g)
        assert deficit_direct(FAIR, g).nats <= value <= theorem1_upper_bound(0.25)

    def test_below_closed_form_at_small_sigma(self):
        assert lemma1_upper_bound(GaussianDensity(0.1)) <= theorem1_upper_bound(0.1)

    def test_finite_positive_near_half(self):
        value = lemma1_upper_bound(GaussianDensity(0.45))
        assert math.isfinite(value) and value > 0.0

    def test_independent_reference(self):
        # frozen from a 25-digit evaluation of the bound integral
        assert lemma1_upper_bound(GaussianDensity(0.25)) == pytest.approx(
            0.1208540811274, rel=1e-10
        )


class TestOrderingChain:
    @pytest.mark.parametrize("sigma", [0.2, 0.45])
    @pytest.mark.parametrize(
        "z",
        [FAIR, DiscreteLattice((-1, 0, 1), (1 / 3, 1 / 3, 1 / 3))],
    )
    def test_chain_holds(self, z, sigma):
        g = GaussianDensity(sigma)
        delta = deficit_direct(z, g).nats
        l1 = lemma1_upper_bound(g)
        split = lemma3_near_zero_term(g) + lemma4_far_term(g)
        t1 = theorem1_upper_bound(sigma)
        assert l1 - delta >= -1e-10
        assert split - l1 >= -1e-10
        assert t1 - split >= -1e-10

    @pytest.mark.parametrize("sigma", [0.1, 0.25, 0.4])
    def test_rate_match(self, sigma):
        ratio = theorem1_upper_bound(sigma) / bernoulli_lower_bound(sigma)
        rational = (0.5 / sigma + 7.0) / (LN2 * (2.0 * sigma - 8.0 * sigma**3))
        assert abs(ratio - rational) <= 1e-12 * rational


class TestSandwichReport:
    def test_fair_bernoulli_subcritical(self):
        r = sandwich_report(FAIR, 0.25)
        assert r.sandwich_ok and r.converged
        assert r.theorem1_ub is not None
        assert r.lemma4_term is not None
        assert r.bernoulli_lb is not None
        assert r.big_sigma_lb is None
        assert r.bernoulli_lb <= r.delta_quadrature <= r.theorem1_ub
        assert json.loads(r.z_descriptor) == FAIR.to_json()

    def test_fair_bernoulli_supercritical(self):
        r = sandwich_report(FAIR, 1.0)
        assert r.sandwich_ok
        assert r.theorem1_ub is None
        assert r.lemma4_term is None
        assert r.bernoulli_lb is None
        assert r.big_sigma_lb == pytest.approx(0.21386192506482276, rel=1e-12)
        assert r.delta_quadrature >= r.big_sigma_lb

    def test_point_mass(self):
        r = sandwich_report(DiscreteLattice.point_mass(0), 0.25)
        assert abs(r.delta_quadrature) <= 1e-12
        assert r.sandwich_ok
        assert r.bernoulli_lb is None  # not a two-atom law

    def test_unfair_bernoulli_gets_no_bernoulli_bound(self):
        r = sandwich_report(DiscreteLattice.bernoulli(0.3), 0.25)
        assert r.bernoulli_lb is None
        assert r.big_sigma_lb is None
        assert r.sandwich_ok

    def test_csv_row_layout(self):
        r = sandwich_report(FAIR, 0.25)
        row = r.to_csv_row()
        assert len(row) == len(CSV_COLUMNS) == 10
        assert row[0] == "0.25"
        assert row[-1] == "true"
        assert row[8] == ""  # big-sigma bound absent below 1/2

        r_big = sandwich_report(FAIR, 1.0)
        row_big = r_big.to_csv_row()
        assert row_big[5] == row_big[6] == row_big[7] == ""  # lemma4/thm1/bern absent
        assert row_big[8] != ""

    def test_json_dict_round_trips_through_json(self):
        r = sandwich_report(FAIR, 0.25)
        doc = json.loads(json.dumps(r.to_json_dict()))
        assert doc["ok"] is True
        assert doc["z"] == FAIR.to_json()
        assert doc["bigsig_lb"] is None
