"""Tests for the partition-based conditional independence test."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from infoloss import (
    C1_MIN,
    CubicPartition,
    Dataset,
    TestConfig,
    build_histogram,
    h_schedule,
    l_statistic,
    run_test,
    scale_unit,
    threshold,
    type1_bound,
)

from conftest import dense_l_statistic


def make_dataset(rng, n, d=1, d_prime=1):
    return Dataset(
        x=rng.random((n, d)),
        y=rng.random(n),
        z=rng.random((n, d_prime)),
    )


class TestScaling:
    def test_maps_onto_unit_cube(self, rng):
        data = Dataset(
            x=rng.normal(5.0, 3.0, (200, 2)),
            y=rng.normal(-2.0, 1.0, 200),
            z=rng.normal(0.0, 10.0, (200, 1)),
        )
        scaled, _ = scale_unit(data)
        cols = scaled.columns()
        assert cols.min() >= 0.0
        assert cols.max() <= 1.0
        # Each live coordinate attains both endpoints.
        assert np.allclose(cols.min(axis=0), 0.0)
        assert np.allclose(cols.max(axis=0), 1.0)

    def test_constant_coordinate_pins_to_half(self):
        data = Dataset(
            x=np.full((10, 1), 3.0),
            y=np.arange(10.0),
            z=np.ones((10, 1)),
        )
        scaled, _ = scale_unit(data)
        assert np.all(scaled.x == 0.5)
        assert np.all(scaled.z == 0.5)
        assert scaled.y[0] == 0.0 and scaled.y[-1] == 1.0

    def test_affine_invariance_of_statistic(self, rng):
        # Shifting/stretching coordinates leaves the scaled test unchanged.
        data = make_dataset(rng, 500)
        shifted = Dataset(
            x=7.0 * data.x - 3.0,
            y=-2.0 * data.y + 11.0,
            z=0.1 * data.z + 5.0,
        )
        cfg = TestConfig(h=0.25)
        out_a = run_test(data, cfg)
        out_b = run_test(shifted, cfg)
        # Negating y reverses the bin order but |p - q| sums are permutation
        # invariant, so L_n and everything else agree exactly.
        assert out_a.L_n == pytest.approx(out_b.L_n, abs=1e-12)
        assert out_a.t_n == out_b.t_n
        assert out_a.m == out_b.m


class TestBandwidthSchedule:
    def test_power_law_value(self):
        # n = 1024, delta = 0.2: 1024^(-0.2) = 2^(-2) = 0.25.
        assert h_schedule(1024, 1, 1, 0.2) == pytest.approx(0.25)

    def test_capped_at_one(self):
        assert h_schedule(1, 1, 1, 0.2) == 1.0

    def test_delta_range_enforced(self):
        with pytest.raises(ValueError):
            h_schedule(100, 1, 1, 0.0)
        with pytest.raises(ValueError):
            # 1/(d + 1 + d') = 1/3 is excluded at d = d' = 1.
            h_schedule(100, 1, 1, 1.0 / 3.0)
        # Just inside the admissible range is fine.
        assert 0.0 < h_schedule(100, 1, 1, 1.0 / 3.0 - 1e-9) <= 1.0

    def test_dimension_tightens_range(self):
        with pytest.raises(ValueError):
            h_schedule(100, 3, 2, 0.2)  # 1/(3+1+2) = 1/6 < 0.2
        assert h_schedule(100, 3, 2, 0.15) == pytest.approx(100 ** -0.15)


class TestPartitionCounts:
    def test_bin_count_rounds_up(self):
        part = CubicPartition(h=0.3, d=1, d_prime=1)
        assert part.bins_per_axis == 4  # ceil(1/0.3)
        assert part.m == 4 and part.m_prime == 4 and part.m_dprime == 4

    def test_cell_totals_use_all_cells(self):
        part = CubicPartition(h=0.25, d=2, d_prime=3)
        assert part.bins_per_axis == 4
        assert part.m == 4**2
        assert part.m_prime == 4
        assert part.m_dprime == 4**3

    def test_h_one_single_cell(self):
        part = CubicPartition(h=1.0, d=2, d_prime=1)
        assert part.bins_per_axis == 1
        assert (part.m, part.m_prime, part.m_dprime) == (1, 1, 1)


class TestHistogram:
    def test_counts_sum_to_n(self, rng):
        data = make_dataset(rng, 300, d=2)
        scaled, _ = scale_unit(data)
        part = CubicPartition(h=0.25, d=2, d_prime=1)
        hist = build_histogram(scaled, part)
        assert hist.counts.sum() == 300
        assert hist.n == 300

    def test_boundary_point_in_last_cell(self):
        # Value exactly 1.0 lands in the top bin, not one past it.
        data = Dataset(x=np.array([[1.0]]), y=np.array([1.0]), z=np.array([[1.0]]))
        part = CubicPartition(h=0.25, d=1, d_prime=1)
        hist = build_histogram(data, part)
        assert hist.a_ids[0] == 3 and hist.b_ids[0] == 3 and hist.c_ids[0] == 3

    def test_marginal_alignment(self, rng):
        # The aligned per-triple marginal counts agree with a recount.
        data = make_dataset(rng, 500)
        scaled, _ = scale_unit(data)
        part = CubicPartition(h=0.2, d=1, d_prime=1)
        hist = build_histogram(scaled, part)
        for i in range(len(hist.counts)):
            a, b, c = hist.a_ids[i], hist.b_ids[i], hist.c_ids[i]
            ac = hist.counts[(hist.a_ids == a) & (hist.c_ids == c)].sum()
            bc = hist.counts[(hist.b_ids == b) & (hist.c_ids == c)].sum()
            cm = hist.counts[hist.c_ids == c].sum()
            assert hist.ac_counts[i] == ac
            assert hist.bc_counts[i] == bc
            assert hist.c_counts[i] == cm

    def test_rejects_data_outside_unit_cube(self):
        data = Dataset(x=np.array([[1.5]]), y=np.array([0.5]), z=np.array([[0.5]]))
        part = CubicPartition(h=0.5, d=1, d_prime=1)
        with pytest.raises(ValueError):
            build_histogram(data, part)


class TestLStatistic:
    def test_perfect_dependence_worked_example(self):
        # y == x in {0.1, 0.9}, z constant, h = 0.5: two occupied triples,
        # each p = 0.5, q = 0.25, so L = 2 * 0.25 + (off-diagonal q) 0.5 = 1.
        x = np.array([[0.1], [0.9], [0.1], [0.9]])
        y = np.array([0.1, 0.9, 0.1, 0.9])
        z = np.full((4, 1), 0.5)
        part = CubicPartition(h=0.5, d=1, d_prime=1)
        hist = build_histogram(Dataset(x=x, y=y, z=z), part)
        assert l_statistic(hist) == pytest.approx(1.0, abs=1e-12)

    def test_exact_independence_is_zero(self):
        # Product design: every (a, b) combination equally often, one z cell.
        x = np.array([[0.1], [0.1], [0.9], [0.9]])
        y = np.array([0.1, 0.9, 0.1, 0.9])
        z = np.full((4, 1), 0.5)
        part = CubicPartition(h=0.5, d=1, d_prime=1)
        hist = build_histogram(Dataset(x=x, y=y, z=z), part)
        assert l_statistic(hist) == pytest.approx(0.0, abs=1e-12)

    def test_single_point_is_zero(self):
        data = Dataset(x=np.array([[0.3]]), y=np.array([0.7]), z=np.array([[0.2]]))
        part = CubicPartition(h=0.5, d=1, d_prime=1)
        assert l_statistic(build_histogram(data, part)) == pytest.approx(0.0)

    def test_matches_dense_oracle(self, rng):
        # Sparse closed form vs the full sum over every cell triple.
        for n, h in [(50, 0.5), (120, 0.25), (200, 0.34)]:
            data = make_dataset(rng, n)
            scaled, _ = scale_unit(data)
            part = CubicPartition(h=h, d=1, d_prime=1)
            hist = build_histogram(scaled, part)
            assert l_statistic(hist) == pytest.approx(
                dense_l_statistic(scaled, part), abs=1e-10
            )

    def test_matches_dense_oracle_2d(self, rng):
        data = make_dataset(rng, 150, d=2, d_prime=1)
        scaled, _ = scale_unit(data)
        part = CubicPartition(h=0.34, d=2, d_prime=1)
        hist = build_histogram(scaled, part)
        assert l_statistic(hist) == pytest.approx(
            dense_l_statistic(scaled, part), abs=1e-10
        )

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 60), st.sampled_from([0.2, 0.25, 0.34, 0.5, 1.0]), st.integers(0, 2**31 - 1))
    def test_in_unit_range(self, n, h, seed):
        rng = np.random.default_rng(seed)
        data = make_dataset(rng, n)
        scaled, _ = scale_unit(data)
        part = CubicPartition(h=h, d=1, d_prime=1)
        val = l_statistic(build_histogram(scaled, part))
        assert -1e-12 <= val <= 2.0 + 1e-12


class TestThreshold:
    def test_worked_value(self):
        # Ten bins per axis at n = 10000 with c1 = 1.3: four sample-size
        # terms plus the (log n) h bias term.
        t = threshold(10_000, 10, 10, 10, 0.1, 1.3)
        assert t == pytest.approx(1.633240, abs=5e-7)

    def test_bias_term_only(self):
        # c1 = 0 isolates the (log n) h term (formula level, no config check).
        assert threshold(100, 4, 4, 4, 0.25, 0.0) == pytest.approx(
            math.log(100) * 0.25
        )

    def test_explicit_formula(self):
        n, m, mp, mpp, h, c1 = 500, 16, 4, 4, 0.25, 1.3
        expected = c1 * (
            math.sqrt(m * mp * mpp / n)
            + math.sqrt(mp * mpp / n)
            + math.sqrt(m * mpp / n)
            + math.sqrt(mpp / n)
        ) + math.log(n) * h
        assert threshold(n, m, mp, mpp, h, c1) == pytest.approx(expected, rel=1e-15)

    def test_vanishes_along_schedule(self):
        # With h_n = n^(-delta) and the matching cell counts, t_n -> 0.
        def scheduled_t(n):
            h = h_schedule(n, 1, 1, 0.2)
            part = CubicPartition(h=h, d=1, d_prime=1)
            return threshold(n, part.m, part.m_prime, part.m_dprime, h, 1.5)

        ts = [scheduled_t(n) for n in (10**3, 10**5, 10**7, 10**9)]
        assert ts[0] > ts[1] > ts[2] > ts[3]
        assert ts[-1] < 0.5


class TestType1Bound:
    def test_formula(self):
        c1, mpp = 1.5, 4
        expected = 4.0 * math.exp(-(c1**2 / 2.0 - math.log(2.0)) * mpp)
        assert type1_bound(c1, mpp) == pytest.approx(expected, rel=1e-15)

    def test_shrinks_with_conditioning_cells(self):
        assert type1_bound(1.5, 8) < type1_bound(1.5, 4) < type1_bound(1.5, 1)

    def test_trivial_at_critical_c1(self):
        # At c1 = sqrt(2 log 2) the exponent vanishes: bound is 4.
        assert type1_bound(C1_MIN, 10) == pytest.approx(4.0)


class TestConfigValidation:
    def test_c1_must_exceed_critical(self):
        with pytest.raises(ValueError, match="c1"):
            TestConfig(c1=1.0)
        with pytest.raises(ValueError, match="c1"):
            TestConfig(c1=C1_MIN)

    def test_h_range(self):
        with pytest.raises(ValueError):
            TestConfig(h=0.0)
        with pytest.raises(ValueError):
            TestConfig(h=1.5)

    def test_explicit_h_wins_over_delta(self):
        cfg = TestConfig(delta=0.2, h=0.125)
        assert cfg.bandwidth(10**6, 1, 1) == 0.125


class TestRunTest:
    def test_single_point_accepts(self):
        data = Dataset(x=np.array([[0.0]]), y=np.array([0.0]), z=np.array([[0.0]]))
        out = run_test(data, TestConfig(h=0.5))
        assert out.L_n == 0.0
        assert not out.reject

    def test_outcome_fields_consistent(self, rng):
        data = make_dataset(rng, 2000)
        out = run_test(data, TestConfig(c1=1.5, delta=0.2))
        h = h_schedule(2000, 1, 1, 0.2)
        assert out.h == pytest.approx(h)
        bins = math.ceil(1.0 / h)
        assert out.m == bins and out.m_prime == bins and out.m_dprime == bins
        assert out.reject == (out.L_n >= out.t_n)
        d = out.to_dict()
        assert set(d) == {
            "L_n", "t_n", "m", "m_prime", "m_dprime", "h", "reject", "type1_bound",
        }

    def test_strong_dependence_rejects_at_moderate_n(self, rng):
        # y = x on a 10-bin grid: the diagonal concentration drives L_n to
        # 1 + 10(0.09 - 0.01) = 1.8 while t_n ~ 1.4 at this sample size.
        n = 200_000
        x = rng.random(n)
        data = Dataset(x=x[:, None], y=x, z=rng.random((n, 1)))
        out = run_test(data, TestConfig(c1=1.2, h=0.1))
        assert out.L_n > 1.7
        assert out.reject

    def test_independent_data_accepts(self, rng):
        data = make_dataset(rng, 5000)
        out = run_test(data, TestConfig(c1=1.5, delta=0.2))
        assert not out.reject
