import numpy as np
import pytest

from entdyn import (
    Partition,
    Q1Q2Regime,
    R1R2Regime,
    ReservoirSpectrum,
    c0_closed_form,
    figure2_curves,
    regime_boundary_map,
    sweep_alpha_time,
)
from entdyn.events import EventKind


class TestSweepSurface:
    def test_deterministic_and_sorted(self, s_nonmarkov):
        first = sweep_alpha_time(s_nonmarkov, [0.7, 0.0, 0.35], t_max=2.0, dt=0.01)
        second = sweep_alpha_time(s_nonmarkov, [0.0, 0.35, 0.7], t_max=2.0, dt=0.01)
        assert np.array_equal(first.alphas, second.alphas)
        for partition in Partition:
            assert np.array_equal(
                first.values[partition], second.values[partition]
            )
        rows = list(first.iter_rows())
        assert len(rows) == first.n_rows == 3 * 201 * 4
        assert rows[0][:3] == (0.0, 0.0, "q1q2")
        assert rows[3][2] == "q1r2"
        assert rows[4][1] == pytest.approx(0.01)

    def test_alpha_zero_row_closed_form(self, s_nonmarkov):
        surface = sweep_alpha_time(s_nonmarkov, [0.0], t_max=5.0, dt=1e-3)
        c0 = np.asarray(c0_closed_form(s_nonmarkov, surface.times))
        predicted = 2.0 * (c0 * c0 / 3.0)
        assert np.array_equal(surface.values[Partition.Q1Q2][0], predicted)

    def test_empty_grid_rejected(self, s_nonmarkov):
        with pytest.raises(ValueError):
            sweep_alpha_time(s_nonmarkov, [], t_max=1.0, dt=0.01)

    def test_out_of_range_alpha_rejected(self, s_nonmarkov):
        with pytest.raises(ValueError):
            sweep_alpha_time(s_nonmarkov, [0.2, 1.2], t_max=1.0, dt=0.01)


class TestBoundaryMap:
    def test_esd_boundary_at_one_third(self, s_nonmarkov):
        bmap = regime_boundary_map(
            s_nonmarkov, np.arange(0.0, 1.0001, 0.05), t_max=15.0, dt=1e-3
        )
        assert bmap.esd_boundary == pytest.approx(1.0 / 3.0, abs=1e-3)

    def test_revival_to_permanent_boundary(self, s_nonmarkov):
        bmap = regime_boundary_map(
            s_nonmarkov, np.arange(0.30, 0.5001, 0.05), t_max=15.0, dt=1e-3
        )
        # located numerically; depends on (gamma, t_max), reported loosely
        assert bmap.permanent_boundary == pytest.approx(0.4257, abs=2e-3)
        assert Q1Q2Regime.NO_ESD in bmap.q1q2
        assert Q1Q2Regime.ESD_WITH_REVIVAL in bmap.q1q2
        assert Q1Q2Regime.PERMANENT_ESD in bmap.q1q2

    def test_markovian_has_no_revival_band(self, s_markov):
        bmap = regime_boundary_map(
            s_markov, np.arange(0.0, 1.0001, 0.1), t_max=15.0, dt=1e-3
        )
        assert Q1Q2Regime.ESD_WITH_REVIVAL not in bmap.q1q2
        assert set(bmap.q1q2) == {Q1Q2Regime.NO_ESD, Q1Q2Regime.PERMANENT_ESD}
        assert bmap.permanent_boundary is None
        assert bmap.esd_boundary == pytest.approx(1.0 / 3.0, abs=1e-3)

    def test_birth_labels_split_at_one_third(self, s_nonmarkov):
        bmap = regime_boundary_map(
            s_nonmarkov, [0.1, 0.3, 0.4, 0.8], t_max=15.0, dt=1e-3
        )
        assert bmap.r1r2[0] is R1R2Regime.IMMEDIATE_BIRTH
        assert bmap.r1r2[1] is R1R2Regime.IMMEDIATE_BIRTH
        assert bmap.r1r2[2] is R1R2Regime.SUDDEN_BIRTH
        assert bmap.r1r2[3] is R1R2Regime.SUDDEN_BIRTH

    def test_no_transition_in_grid_gives_none(self, s_nonmarkov):
        bmap = regime_boundary_map(s_nonmarkov, [0.0, 0.1], t_max=15.0, dt=1e-2)
        assert bmap.esd_boundary is None
        assert bmap.permanent_boundary is None


class TestFigureCurves:
    def test_shape_and_order(self):
        curves = figure2_curves(t_max=2.0, dt=0.01)
        rows = list(curves.iter_rows())
        assert len(rows) == 3 * 201 * 4
        assert rows[0][0] == 5.0
        ratios_seen = {r[0] for r in rows}
        assert ratios_seen == {5.0, 0.1, 0.05}
        partitions_seen = {r[2] for r in rows}
        assert partitions_seen == {"q1q2", "r1r2", "q1r1", "q1r2"}

    def test_markovian_curve_monotone(self):
        curves = figure2_curves(gamma_ratios=(5.0,), t_max=10.0, dt=1e-3)
        values = curves.trajectories[5.0].series[Partition.Q1Q2].values
        assert np.all(np.diff(values) <= 1e-12)
        kinds = [
            e.kind for e in curves.trajectories[5.0].events[Partition.Q1Q2]
        ]
        assert EventKind.REVIVAL not in kinds

    def test_deep_memory_curve_revives(self):
        curves = figure2_curves(gamma_ratios=(0.05,), t_max=15.0, dt=2e-3)
        events = curves.trajectories[0.05].events[Partition.Q1Q2]
        kinds = [e.kind for e in events]
        assert EventKind.DEATH in kinds and EventKind.REVIVAL in kinds

    def test_bad_ratios_rejected(self):
        with pytest.raises(ValueError):
            figure2_curves(gamma_ratios=())
        with pytest.raises(ValueError):
            figure2_curves(gamma_ratios=(0.1, -5.0))

    def test_rescaled_units(self):
        # halving gamma0 stretches absolute time but leaves the curve on
        # the dimensionless grid unchanged
        base = figure2_curves(gamma_ratios=(0.1,), t_max=5.0, dt=0.01, gamma0=1.0)
        scaled = figure2_curves(
            gamma_ratios=(0.1,), t_max=10.0, dt=0.02, gamma0=0.5
        )
        v1 = base.trajectories[0.1].series[Partition.Q1Q2].values
        v2 = scaled.trajectories[0.1].series[Partition.Q1Q2].values
        assert np.allclose(v1, v2, atol=1e-12)
