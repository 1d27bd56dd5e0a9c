import json
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from mixent.distributions import (
    DiscreteLattice,
    DistributionError,
    GaussianDensity,
    MixtureDensity,
    UniformDensity,
    tail_mass,
)
from mixent.numerics import integrate


class TestDiscreteLattice:
    def test_renormalizes_within_tolerance(self):
        z = DiscreteLattice((0, 1), (0.5, 0.5 + 1e-13))
        assert math.isclose(sum(z.probs), 1.0, rel_tol=0, abs_tol=1e-15)

    def test_rejects_bad_probability_sum(self):
        with pytest.raises(DistributionError, match="sum to 1"):
            DiscreteLattice((0, 1), (0.4, 0.5))

    def test_rejects_probability_outside_unit_interval(self):
        with pytest.raises(DistributionError, match=r"outside \[0, 1\]"):
            DiscreteLattice((0, 1), (1.2, -0.2))

    def test_drops_zero_atoms(self):
        z = DiscreteLattice((0, 1, 2), (0.5, 0.0, 0.5))
        assert z.support == (0, 2)
        assert z.probs == (0.5, 0.5)

    def test_sorts_support_with_paired_probs(self):
        z = DiscreteLattice((3, -1), (0.25, 0.75))
        assert z.support == (-1, 3)
        assert z.probs == (0.75, 0.25)

    def test_rejects_duplicate_support(self):
        with pytest.raises(DistributionError, match="distinct"):
            DiscreteLattice((0, 0), (0.5, 0.5))

    def test_rejects_non_integer_support(self):
        with pytest.raises(DistributionError, match="not an integer"):
            DiscreteLattice((0, 1.5), (0.5, 0.5))

    def test_rejects_empty(self):
        with pytest.raises(DistributionError):
            DiscreteLattice((), ())

    def test_bernoulli_shorthand(self):
        z = DiscreteLattice.bernoulli(0.3)
        assert z.support == (0, 1)
        assert z.probs == (0.7, 0.3)

    def test_uniform_support_shorthand(self):
        z = DiscreteLattice.uniform_support(4)
        assert z.support == (0, 1, 2, 3)
        assert all(p == 0.25 for p in z.probs)

    def test_point_mass(self):
        z = DiscreteLattice.point_mass(2)
        assert z.support == (2,)
        assert z.probs == (1.0,)

    def test_json_round_trip(self):
        z = DiscreteLattice((-1, 0, 1), (0.2, 0.5, 0.3))
        again = DiscreteLattice.from_json(json.dumps(z.to_json()))
        assert again == z

    @pytest.mark.parametrize(
        "doc,expected",
        [
            ('{"bernoulli": 0.5}', DiscreteLattice.bernoulli(0.5)),
            ('{"uniform_support": 3}', DiscreteLattice.uniform_support(3)),
            ({"support": [0], "probs": [1.0]}, DiscreteLattice.point_mass(0)),
        ],
    )
    def test_from_json_shorthands(self, doc, expected):
        assert DiscreteLattice.from_json(doc) == expected

    @pytest.mark.parametrize("doc", ["not json", "[1,2]", "{}"])
    def test_from_json_rejects_garbage(self, doc):
        with pytest.raises(DistributionError):
            DiscreteLattice.from_json(doc)

    @pytest.mark.parametrize(
        "z,expected",
        [
            (DiscreteLattice.bernoulli(0.5), True),
            (DiscreteLattice.bernoulli(0.3), False),
            (DiscreteLattice((0, 2), (0.5, 0.5)), False),
            (DiscreteLattice.point_mass(0), False),
            (DiscreteLattice((4, 5), (0.5, 0.5)), True),
        ],
    )
    def test_fair_adjacent_bernoulli_detection(self, z, expected):
        assert z.is_fair_adjacent_bernoulli() is expected

    def test_shifted(self):
        z = DiscreteLattice.bernoulli(0.5).shifted(3)
        assert z.support == (3, 4)


class TestGaussianDensity:
    @pytest.mark.parametrize("sigma", [0.0, -1.0, math.inf, math.nan])
    def test_rejects_bad_sigma(self, sigma):
        with pytest.raises(DistributionError):
            GaussianDensity(sigma)

    def test_log_pdf_at_zero(self):
        assert GaussianDensity(1.0).log_pdf(0.0) == pytest.approx(
            -0.9189385332046727, rel=1e-15
        )

    def test_log_pdf_vectorized_matches_scalar(self):
        g = GaussianDensity(0.3)
        xs = np.linspace(-4, 4, 17)
        assert np.allclose(g.log_pdf(xs), [g.log_pdf(x) for x in xs], rtol=1e-15)

    def test_normalizes(self):
        g = GaussianDensity(0.7)
        qr = integrate(lambda x: g.pdf(x), -np.inf, np.inf)
        assert abs(qr.value - 1.0) <= max(qr.abs_error_estimate, 1e-12)


class TestTailMass:
    def test_half_at_zero(self):
        assert tail_mass(GaussianDensity(1.0), 0.0) == 0.5

    def test_two_sigma(self):
        assert tail_mass(GaussianDensity(1.0), 2.0) == pytest.approx(
            0.022750131948179195, rel=1e-13
        )

    def test_scaling_reduces_to_standard(self):
        assert tail_mass(GaussianDensity(0.25), 0.5) == pytest.approx(
            tail_mass(GaussianDensity(1.0), 2.0), rel=1e-15
        )

    def test_extreme_argument_keeps_digits(self):
        # z/sigma = 30: reference value from 30-digit erfc evaluation
        assert tail_mass(GaussianDensity(1.0), 30.0) == pytest.approx(
            4.906713927148187e-198, rel=1e-12
        )


class TestUniformDensity:
    def test_rejects_bad_width(self):
        with pytest.raises(DistributionError):
            UniformDensity(0.0)

    def test_log_pdf_inside_and_outside(self):
        u = UniformDensity(0.25)
        assert u.log_pdf(0.1) == pytest.approx(-math.log(0.5), rel=1e-15)
        assert u.log_pdf(0.3) == -math.inf
        out = u.log_pdf(np.array([-0.3, 0.0, 0.3]))
        assert out[0] == -math.inf and out[2] == -math.inf
        assert math.isfinite(out[1])

    def test_entropy(self):
        assert UniformDensity(0.5).entropy_nats() == pytest.approx(0.0, abs=1e-15)


class TestMixtureLogDensity:
    def test_point_mass_equals_gaussian(self):
        m = MixtureDensity(GaussianDensity(1.0), DiscreteLattice.point_mass(0))
        assert m.log_density(0.0) == pytest.approx(-0.9189385332046727, rel=1e-15)

    def test_fair_bernoulli_midpoint(self):
        # both components contribute equally by symmetry:
        # ln(exp(-2) / sqrt(2 pi 0.0625))
        m = MixtureDensity(GaussianDensity(0.25), DiscreteLattice.bernoulli(0.5))
        assert m.log_density(0.5) == pytest.approx(-1.5326441720847821, rel=1e-14)

    def test_far_field_stays_finite(self):
        m = MixtureDensity(GaussianDensity(0.05), DiscreteLattice.bernoulli(0.5))
        expected = (
            math.log(0.5)
            - 39.0**2 / (2.0 * 0.05**2)
            - math.log(math.sqrt(2 * math.pi) * 0.05)
        )
        got = m.log_density(40.0)
        assert math.isfinite(got)
        assert got == pytest.approx(expected, rel=1e-14)

    @pytest.mark.parametrize("x", [1e4, -1e4, 123.456])
    def test_finite_at_extreme_arguments(self, x):
        m = MixtureDensity(GaussianDensity(0.05), DiscreteLattice.bernoulli(0.5))
        assert math.isfinite(m.log_density(x))

    def test_uniform_base_outside_support_is_minus_inf(self):
        m = MixtureDensity(UniformDensity(0.25), DiscreteLattice.bernoulli(0.5))
        assert m.log_density(0.5) == -math.inf
        assert math.isfinite(m.log_density(0.1))

    def test_vectorized_matches_scalar(self):
        m = MixtureDensity(
            GaussianDensity(0.4), DiscreteLattice((-2, 0, 3), (0.2, 0.5, 0.3))
        )
        xs = np.linspace(-6, 8, 29)
        assert np.allclose(m.log_density(xs), [m.log_density(x) for x in xs], rtol=1e-14)

    def test_symmetry_about_center(self):
        # symmetric lattice + symmetric base => density symmetric about 1/2
        m = MixtureDensity(GaussianDensity(0.3), DiscreteLattice.bernoulli(0.5))
        for t in np.linspace(0.0, 3.0, 13):
            left = m.log_density(0.5 - t)
            right = m.log_density(0.5 + t)
            assert abs(left - right) <= 1e-13 * max(1.0, abs(left))

    def test_integrates_to_one(self):
        m = MixtureDensity(
            GaussianDensity(0.25), DiscreteLattice((-1, 0, 1), (1 / 3, 1 / 3, 1 / 3))
        )
        qr = integrate(
            lambda x: math.exp(m.log_density(x)), -12.0, 12.0,
            points=[-1.0, 0.0, 1.0],
        )
        assert abs(qr.value - 1.0) <= max(qr.abs_error_estimate, 1e-10)

    def test_sampling_is_seed_deterministic(self):
        m = MixtureDensity(GaussianDensity(0.25), DiscreteLattice.bernoulli(0.5))
        a = m.sample(np.random.default_rng(7), 100)
        b = m.sample(np.random.default_rng(7), 100)
        assert np.array_equal(a, b)


@st.composite
def random_mixture(draw):
    support = draw(
        st.lists(st.integers(-8, 8), min_size=1, max_size=6, unique=True)
    )
    weights = draw(
        st.lists(
            st.floats(0.05, 1.0, allow_nan=False),
            min_size=len(support),
            max_size=len(support),
        )
    )
    total = sum(weights)
    z = DiscreteLattice(tuple(support), tuple(w / total for w in weights))
    sigma = draw(st.floats(0.05, 2.0, allow_nan=False))
    return MixtureDensity(GaussianDensity(sigma), z)


@settings(max_examples=150, deadline=None)
@given(m=random_mixture(), x=st.floats(-10.0, 10.0, allow_nan=False))
def test_log_density_matches_direct_summation(m, x):
    direct = math.fsum(
        p * math.exp(m.base.log_pdf(x - k))
        for p, k in zip(m.lattice.probs, m.lattice.support)
    )
    # only meaningful where the linear-space sum has full precision
    assume(direct > 1e-280)
    assert abs(math.exp(m.log_density(x)) - direct) <= 1e-13 * direct
