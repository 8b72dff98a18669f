"""Bowen-ball entropy scans and generating-set counts vs direct oracles."""

import itertools
import math

import numpy as np
import pytest

from dynadim.dimension import ComputationError, ExactMode
from dynadim.entropy import (
    CloudMode,
    EntropyScan,
    ExactShiftMode,
    GreedyMode,
    bilateral_bk_scan,
    brin_katok_scan,
    generating_count,
    generating_scan,
    metric_entropy_estimate,
    rate_report,
    topological_entropy_estimate,
)
from dynadim.geometry import (
    GeometryError,
    SymbolicPoint,
    TorusPoint,
    dn_dist,
    zoo_system,
)
from dynadim.measures import (
    BallQuery,
    MeasureError,
    ball_mass,
    bernoulli_measure,
    lebesgue_measure,
    markov_measure,
    sample,
)

LN2 = math.log(2.0)


def zeros_with(radius, hot=None):
    """All-zero window of the given radius, optionally one coordinate set to 1."""
    w = [0] * (2 * radius + 1)
    if hot is not None:
        w[hot + radius] = 1
    return SymbolicPoint(tuple(w), 2)


class TestBrinKatokExact:
    def test_uniform_closed_form(self):
        sys = zoo_system("full_shift_2sided")
        mu = bernoulli_measure(sys, [0.5, 0.5])
        x = zeros_with(12)
        s = brin_katok_scan(mu, sys, x, 0.5, 8, ExactMode())  # j = 1
        for n, v in s.entries:
            assert v == pytest.approx((n + 3) * LN2, abs=1e-12)
        rep = rate_report(s)
        assert rep.h_ls == pytest.approx(LN2, abs=1e-12)
        assert rep.h_lower == pytest.approx(LN2, abs=1e-12)
        assert rep.h_upper == pytest.approx(LN2, abs=1e-12)

    def test_vectorized_path_matches_per_n_oracle(self):
        sys = zoo_system("full_shift_2sided")
        rng = np.random.default_rng(31)
        x = SymbolicPoint(tuple(rng.integers(0, 2, 31)), 2)
        for mu in (
            bernoulli_measure(sys, [0.7, 0.3]),
            markov_measure(sys, [[0.9, 0.1], [0.2, 0.8]]),
        ):
            s = brin_katok_scan(mu, sys, x, 0.25, 10, ExactMode())
            direct = [
                -math.log(ball_mass(mu, BallQuery(x, 0.25, bowen_n=n)))
                for n in range(1, 11)
            ]
            got = [v for _, v in s.entries]
            assert np.allclose(got, direct, atol=1e-12, rtol=0.0)

    def test_onesided_windows(self):
        sys = zoo_system("full_shift_2sided", metric="onesided")
        mu = bernoulli_measure(sys, [0.5, 0.5])
        x = zeros_with(15)
        s = brin_katok_scan(mu, sys, x, 0.5, 6, ExactMode())
        # forward window 0..n+1 has n+2 symbols
        for n, v in s.entries:
            assert v == pytest.approx((n + 2) * LN2, abs=1e-12)

    def test_doubling_lebesgue_rate(self):
        sys = zoo_system("doubling_map")
        mu = lebesgue_measure(sys)
        s = brin_katok_scan(mu, sys, TorusPoint((0.3,)), 0.125, 12, ExactMode())
        for n, v in s.entries:
            assert v == pytest.approx(-math.log(0.25) + n * LN2, abs=1e-12)
        assert rate_report(s).h_ls == pytest.approx(LN2, abs=1e-12)

    def test_doubling_radius_cap(self):
        sys = zoo_system("doubling_map")
        mu = lebesgue_measure(sys)
        with pytest.raises(MeasureError):
            brin_katok_scan(mu, sys, TorusPoint((0.3,)), 0.3, 5, ExactMode())

    def test_n_max_floor(self):
        sys = zoo_system("full_shift_2sided")
        mu = bernoulli_measure(sys, [0.5, 0.5])
        with pytest.raises(ComputationError):
            brin_katok_scan(mu, sys, zeros_with(8), 0.5, 1, ExactMode())


class TestBilateralScan:
    def test_uniform_diagonal_window(self):
        sys = zoo_system("full_shift_2sided")
        mu = bernoulli_measure(sys, [0.5, 0.5])
        x = zeros_with(12)
        s = bilateral_bk_scan(mu, sys, x, 0.5, 6, ExactMode())
        assert s.bilateral
        # entries keyed by 2n; window -(n+1)..(n+1) has 2n+3 symbols
        for m, v in s.entries:
            assert m % 2 == 0
            assert v == pytest.approx((m + 3) * LN2, abs=1e-12)
        assert rate_report(s).h_ls == pytest.approx(LN2, abs=1e-12)

    def test_noninvertible_rejected(self):
        sys = zoo_system("doubling_map")
        mu = lebesgue_measure(sys)
        with pytest.raises(GeometryError):
            bilateral_bk_scan(mu, sys, TorusPoint((0.3,)), 0.125, 4, ExactMode())

    def test_unsupported_measure_query_propagates(self):
        sys = zoo_system("toral_automorphism")
        mu = lebesgue_measure(sys)
        with pytest.raises(MeasureError):
            bilateral_bk_scan(mu, sys, TorusPoint((0.1, 0.2)), 0.125, 4, ExactMode())


class TestCloudCensoring:
    def setup_method(self):
        self.sys = zoo_system("full_shift_2sided")
        self.cloud = tuple(zeros_with(12) for _ in range(4))

    def test_twenty_percent_censoring_is_tolerated(self):
        # hot symbol at +10 enters the Bowen window -1..n+1 from n = 9 on
        center = zeros_with(12, hot=10)
        s = brin_katok_scan(None, self.sys, center, 0.5, 10, CloudMode(self.cloud))
        assert s.censored_ns == (9, 10)
        assert [n for n, _ in s.entries] == list(range(1, 9))
        assert s.censored_fraction() == pytest.approx(0.2)
        rep = rate_report(s)  # all masses 1, so every rate is 0
        assert rep.h_ls == 0.0 and rep.h_lower == 0.0 and rep.h_upper == 0.0

    def test_thirty_percent_censoring_rejects_fit(self):
        center = zeros_with(12, hot=9)
        s = brin_katok_scan(None, self.sys, center, 0.5, 10, CloudMode(self.cloud))
        assert s.censored_ns == (8, 9, 10)
        with pytest.raises(ComputationError, match="fit rejected: 30%"):
            rate_report(s)

    def test_cloud_masses_are_counts(self):
        # cloud splits 3:1 on the symbol at +2, visible from n = 1 at j = 1
        cloud = tuple(zeros_with(8) for _ in range(3)) + (zeros_with(8, hot=2),)
        center = zeros_with(8)
        s = brin_katok_scan(None, self.sys, center, 0.5, 3, CloudMode(cloud))
        vals = dict(s.entries)
        assert math.exp(-vals[1]) == pytest.approx(0.75)  # window -1..2 splits
        assert math.exp(-vals[2]) == pytest.approx(0.75)
        assert math.exp(-vals[3]) == pytest.approx(0.75)

    def test_cloud_mode_validation(self):
        with pytest.raises(ComputationError):
            CloudMode((zeros_with(3),))


class TestEntropyScanValidation:
    def test_kind_and_order(self):
        with pytest.raises(ComputationError):
            EntropyScan(eps=0.5, kind="mystery", entries=((1, 0.1), (2, 0.2)))
        with pytest.raises(ComputationError):
            EntropyScan(
                eps=0.5, kind="generating_count", entries=((2, 0.1), (1, 0.2))
            )
        with pytest.raises(ComputationError):
            EntropyScan(
                eps=0.5, kind="generating_count", entries=((1, math.inf), (2, 0.2))
            )

    def test_rate_needs_two_entries(self):
        s = EntropyScan(eps=0.5, kind="brin_katok_at_point", entries=((1, 0.5),))
        with pytest.raises(ComputationError):
            rate_report(s)

    def test_csv_rows_interleave_censored(self):
        s = EntropyScan(
            eps=0.5,
            kind="brin_katok_at_point",
            entries=((1, 0.5), (3, 1.5)),
            censored_ns=(2,),
        )
        rows = s.csv_rows()
        assert [r[1] for r in rows] == [1, 2, 3]
        assert [r[4] for r in rows] == [0, 1, 0]
        assert math.isnan(rows[1][2])


class TestGeneratingCounts:
    def test_exact_shift_counts(self):
        two = zoo_system("full_shift_2sided")
        assert generating_count(two, 5, 0.25, ExactShiftMode()) == 2**9
        assert generating_count(two, 3, 1.0, ExactShiftMode()) == 2**3
        three = zoo_system("full_shift_2sided", m=3, metric="onesided")
        assert generating_count(three, 4, 0.5, ExactShiftMode()) == 3**5

    def test_off_grid_radius_rejected(self):
        two = zoo_system("full_shift_2sided")
        with pytest.raises(ComputationError):
            generating_count(two, 5, 0.3, ExactShiftMode())
        with pytest.raises(ComputationError):
            generating_count(two, 0, 0.5, ExactShiftMode())

    def test_torus_has_no_exact_counts(self):
        with pytest.raises(ComputationError):
            generating_count(zoo_system("doubling_map"), 5, 0.25, ExactShiftMode())

    def test_greedy_full_cloud_matches_exact(self):
        # every radius-4 window once: occupied cylinders = all of them
        two = zoo_system("full_shift_2sided")
        cloud = tuple(
            SymbolicPoint(w, 2) for w in itertools.product((0, 1), repeat=9)
        )
        got = generating_count(two, 3, 0.5, GreedyMode(cloud))
        assert got == generating_count(two, 3, 0.5, ExactShiftMode()) == 32

    def test_greedy_narrow_cloud_rejected(self):
        two = zoo_system("full_shift_2sided")
        cloud = tuple(SymbolicPoint(w, 2) for w in itertools.product((0, 1), repeat=3))
        with pytest.raises(GeometryError):
            generating_count(two, 5, 0.25, GreedyMode(cloud))

    def test_greedy_torus_matches_literal_sweep(self):
        sys = zoo_system("doubling_map")
        cloud = tuple(TorusPoint((k / 64,)) for k in range(64))
        got = generating_count(sys, 2, 0.125, GreedyMode(cloud))

        covered = [False] * 64
        count = 0
        for i in range(64):
            if covered[i]:
                continue
            count += 1
            for k in range(i, 64):
                if not covered[k] and dn_dist(sys, cloud[i], cloud[k], 2) <= 0.125:
                    covered[k] = True
        assert got == count
        assert 1 <= got <= 64

    def test_generating_scan_entries(self):
        two = zoo_system("full_shift_2sided")
        s = generating_scan(two, 0.5, 5, ExactShiftMode())
        assert s.kind == "generating_count"
        for n, v in s.entries:
            assert v == pytest.approx((n + 2) * LN2, abs=1e-12)


class TestTopologicalEntropyEstimate:
    def test_exact_shift_rate(self):
        three = zoo_system("full_shift_2sided", m=3)
        rep = topological_entropy_estimate(three, [0.5, 0.25, 0.125], 12, ExactShiftMode())
        assert rep.h_ls == pytest.approx(math.log(3), abs=1e-12)
        assert rep.eps_spread == 0.0
        assert rep.h_lower == pytest.approx(math.log(3), abs=1e-12)

    def test_greedy_uniform_cloud_rate(self):
        two = zoo_system("full_shift_2sided")
        mu = bernoulli_measure(two, [0.5, 0.5])
        cloud = tuple(sample(mu, 4000, 3, window_radius=10))
        rep = topological_entropy_estimate(two, [1.0], 6, GreedyMode(cloud))
        assert rep.h_ls == pytest.approx(LN2, rel=0.10)

    def test_n_max_floor(self):
        two = zoo_system("full_shift_2sided")
        with pytest.raises(ComputationError):
            topological_entropy_estimate(two, [0.5], 1, ExactShiftMode())


class TestMetricEntropyEstimate:
    def test_uniform_center_free(self):
        sys = zoo_system("full_shift_2sided")
        mu = bernoulli_measure(sys, [0.5, 0.5])
        centers = [zeros_with(30), zeros_with(30, hot=3), zeros_with(30, hot=-2)]
        rep = metric_entropy_estimate(mu, sys, [0.5, 0.25], 25, centers, ExactMode())
        assert rep.h_ls == pytest.approx(LN2, abs=1e-12)
        assert rep.center_spread == 0.0
        assert rep.eps_spread == pytest.approx(0.0, abs=1e-12)

    def test_lebesgue_center_free(self):
        sys = zoo_system("doubling_map")
        mu = lebesgue_measure(sys)
        centers = [TorusPoint((0.1,)), TorusPoint((0.55,)), TorusPoint((0.9,))]
        rep = metric_entropy_estimate(mu, sys, [0.25, 0.125], 20, centers, ExactMode())
        assert rep.h_ls == pytest.approx(LN2, abs=1e-12)
        assert rep.center_spread == 0.0

    def test_biased_sampled_centers(self):
        sys = zoo_system("full_shift_2sided")
        mu = bernoulli_measure(sys, [0.7, 0.3])
        centers = sample(mu, 12, 77, window_radius=402)
        rep = metric_entropy_estimate(mu, sys, [0.25], 400, centers, ExactMode())
        assert rep.h_ls == pytest.approx(mu.known_metric_entropy, abs=0.06)
        assert rep.center_spread > 0.0

    def test_validation(self):
        sys = zoo_system("full_shift_2sided")
        mu = bernoulli_measure(sys, [0.5, 0.5])
        with pytest.raises(ComputationError):
            metric_entropy_estimate(mu, sys, [0.5], 10, [], ExactMode())
        with pytest.raises(ComputationError):
            metric_entropy_estimate(mu, sys, [], 10, [zeros_with(20)], ExactMode())

    def test_report_as_dict(self):
        sys = zoo_system("doubling_map")
        mu = lebesgue_measure(sys)
        rep = metric_entropy_estimate(mu, sys, [0.25], 10, [TorusPoint((0.2,))], ExactMode())
        d = rep.as_dict()
        assert set(d) == {"h_lower", "h_upper", "h_ls", "diagnostics"}
        assert set(d["diagnostics"]) == {"center_spread", "eps_spread"}
