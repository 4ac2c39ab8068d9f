import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.spatial import cKDTree

from flows.bands import CHAIN5_FLOW, DOUBLE_REEB_FLOW, REEB_FLOW, TRANS_FLOW, field_at, translation_flow
from flows.flow import BandFlow, flow_map, sample_leaf, time_one_map
from flows.models import FlowSettings, SampleWindow
from flows.topology import orbit_separation, trivialization_coord

# keep off the last few ulps next to a line, where x cannot be resolved
coords = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False).filter(lambda v: abs(abs(v) - 1.0) > 1e-3)
times = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)


class TestClosedForm:
    def test_identity_at_time_zero_is_exact(self, rng):
        points = rng.uniform(-3.0, 3.0, size=(100, 2))
        for spec in (REEB_FLOW, DOUBLE_REEB_FLOW, TRANS_FLOW):
            assert np.array_equal(BandFlow(spec).flow_map(0.0, points), points)

    @settings(max_examples=100, deadline=None)
    @given(x=coords, y=coords, s=times, t=times)
    def test_group_law(self, x, y, s, t):
        flow = BandFlow(REEB_FLOW)
        composed = flow.flow_map(s, flow.flow_map(t, [x, y]))
        direct = flow.flow_map(s + t, [x, y])
        assert np.linalg.norm(composed - direct) < 1e-6

    def test_matches_the_integrator(self, rng):
        points = rng.uniform(-0.9, 0.9, size=(10, 2))
        closed = BandFlow(REEB_FLOW)
        integrated = BandFlow(REEB_FLOW, FlowSettings(method="integrate"))
        for t in (1.0, -1.0, 2.5):
            assert np.max(np.abs(closed.flow_map(t, points) - integrated.flow_map(t, points))) < 1e-6

    def test_transition_leaves_stay_in_their_band(self):
        p = np.array([0.3, -0.7])
        for t in (-500.0, -1.0, 1.0, 500.0):
            x, y = flow_map(REEB_FLOW, t, p)
            assert -1.0 <= x <= 1.0
            assert np.isfinite(y)

    def test_lines_are_invariant(self):
        assert flow_map(REEB_FLOW, 2.0, (-1.0, 0.5)).tolist() == [-1.0, 2.5]
        assert flow_map(REEB_FLOW, 2.0, (1.0, 0.5)).tolist() == [1.0, -1.5]

    def test_invariant_bands_translate(self):
        assert time_one_map(REEB_FLOW, (-4.0, 0.0)).tolist() == [-4.0, 1.0]
        assert time_one_map(REEB_FLOW, (4.0, 0.0)).tolist() == [4.0, -1.0]
        assert time_one_map(translation_flow(2.0, -1.0), (0.0, 0.0)).tolist() == [2.0, -1.0]

    def test_reeb_leaves_converge_to_both_lines_downward(self):
        # leaves of the middle band follow the left line up, then the right line down
        flow = BandFlow(REEB_FLOW)
        early, late = flow.flow_map(np.array([-20.0, 20.0]), np.array([[0.0, 0.0], [0.0, 0.0]]))
        assert early[0] == pytest.approx(-1.0, abs=1e-6) and early[1] < -15.0
        assert late[0] == pytest.approx(1.0, abs=1e-6) and late[1] < -15.0


def test_orbit_separation_on_a_grid():
    axis = np.linspace(-5.0, 5.0, 41)
    worst = min(orbit_separation(REEB_FLOW, (x, y), 20) for x in axis for y in axis)
    assert worst > 0.05


def test_orbit_separation_values():
    assert orbit_separation(TRANS_FLOW, (0.3, -2.0), 20) == pytest.approx(1.0)
    assert orbit_separation(REEB_FLOW, (-3.0, 0.0), 20) == pytest.approx(1.0)
    assert orbit_separation(REEB_FLOW, (0.0, 0.0), 20) > 0.05


@pytest.mark.parametrize(
    "p, velocity",
    [((-3.0, 7.0), (0.0, 1.0)), ((-1.0, 0.0), (0.0, 1.0)), ((0.0, 0.0), (1.0, 0.0)), ((3.0, 2.0), (0.0, -1.0))],
)
def test_reeb_field_values(p, velocity):
    assert field_at(REEB_FLOW, p) == pytest.approx(velocity)


def test_sample_leaf_chords_respect_the_step():
    leaf = sample_leaf(CHAIN5_FLOW, (0.0, 0.0), SampleWindow(tMin=-1.0, tMax=1.0, maxStep=0.01))
    chords = np.linalg.norm(np.diff(np.asarray(leaf.points), axis=0), axis=1)
    assert chords.max() <= 0.01 + 1e-12
    assert leaf.times[0] == -1.0 and leaf.times[-1] == 1.0
    assert leaf.basePoint == (0.0, 0.0)


def test_vertical_shift_shifts_the_leaf():
    window = SampleWindow(tMin=-1.0, tMax=1.0, maxStep=0.01)
    low = np.asarray(sample_leaf(REEB_FLOW, (0.0, 0.0), window).points)
    high = np.asarray(sample_leaf(REEB_FLOW, (0.0, 5.0), window).points)
    assert low.shape == high.shape
    assert np.array_equal(low[:, 0], high[:, 0])
    assert np.allclose(high[:, 1] - low[:, 1], 5.0, atol=1e-12)


def test_empty_window_gives_one_point():
    leaf = sample_leaf(REEB_FLOW, (-3.0, 0.0), SampleWindow(tMin=1.5, tMax=1.5))
    assert leaf.times == [1.5]
    assert leaf.points == [(-3.0, 1.5)]


def test_leaves_coincide_or_stay_apart():
    flow = BandFlow(REEB_FLOW)
    window = SampleWindow(tMin=-1.0, tMax=1.0, maxStep=0.01)
    leaf = cKDTree(np.asarray(flow.sample_leaf((0.2, 0.0), window).points))

    later = flow.sample_leaf(tuple(flow_map(REEB_FLOW, 0.5, (0.2, 0.0))), window)
    overlap = np.asarray(later.points)[np.asarray(later.times) <= 0.5]
    assert leaf.query(overlap)[0].max() < 0.01

    for other in [(0.2, 0.5), (-3.0, 0.0), (-1.0, 0.0), (2.0, 0.0)]:
        apart = np.asarray(flow.sample_leaf(other, window).points)
        assert leaf.query(apart)[0].min() > 0.1


class TestTrivialization:
    def test_phase_advances_by_one(self, rng):
        for p in rng.uniform(-3.0, 3.0, size=(100, 2)):
            before = trivialization_coord(REEB_FLOW, tuple(p))
            after = trivialization_coord(REEB_FLOW, tuple(time_one_map(REEB_FLOW, p)))
            gap = abs(after.phase - before.phase)
            assert min(gap, 1.0 - gap) < 1e-6
            assert after.leafParam == pytest.approx(before.leafParam, abs=1e-6)

    def test_leaf_parameter_is_constant_along_leaves(self, rng):
        p = (0.4, 0.2)
        base = trivialization_coord(REEB_FLOW, p).leafParam
        for t in rng.uniform(-2.0, 2.0, size=20):
            moved = flow_map(REEB_FLOW, t, p)
            assert trivialization_coord(REEB_FLOW, tuple(moved)).leafParam == pytest.approx(base, abs=1e-6)

    def test_translation_flow(self):
        coord = trivialization_coord(translation_flow(3.0, 4.0), (4.0, -3.0))
        assert coord.leafParam == pytest.approx(5.0)
        assert coord.phase == pytest.approx(0.0)
