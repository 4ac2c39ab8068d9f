import numpy as np
import pytest

from flows.bands import CHAIN5_FLOW, DOUBLE_REEB_FLOW, EQUAL_DIR_FLOW, REEB_FLOW, TRANS_FLOW
from flows.builder import build_leaf_space
from flows.models import CodivergenceVerdict, Rectangle
from flows.topology import (
    codivergence_classes,
    codivergence_numeric,
    densify,
    nonseparable_numeric,
    polyline_meets_rectangle,
    representative_points,
)
from leafspace.errors import FlowSpecError, LeafSpaceError
from leafspace.validate import region_count

UNIT = Rectangle(xMin=0.0, xMax=1.0, yMin=0.0, yMax=1.0)


class TestPolylineClipping:
    def test_segment_crossing_without_endpoints_inside(self):
        assert polyline_meets_rectangle(np.array([[-1.0, 0.5], [2.0, 0.5]]), UNIT)

    def test_segment_passing_by(self):
        assert not polyline_meets_rectangle(np.array([[-1.0, 2.0], [2.0, 1.5]]), UNIT)

    def test_diagonal_missing_the_corner(self):
        assert not polyline_meets_rectangle(np.array([[1.5, 0.0], [2.0, 1.0]]), UNIT)

    def test_single_point(self):
        assert polyline_meets_rectangle(np.array([[0.5, 0.5]]), UNIT)
        assert not polyline_meets_rectangle(np.array([[1.5, 0.5]]), UNIT)


def test_densify_spacing():
    points = densify([(0.0, 0.0), (1.0, 0.0)])
    assert len(points) == 101
    assert np.max(np.linalg.norm(np.diff(points, axis=0), axis=1)) <= 0.01 + 1e-12
    assert densify([(0.0, 0.0), (100.0, 0.0)]).shape[0] <= 2000


class TestCodivergence:
    def test_same_half_plane(self, reeb_rect):
        result = codivergence_numeric(REEB_FLOW, (-2.0, 0.0), (-3.0, 5.0), None, 50, reeb_rect)
        assert result.verdict == CodivergenceVerdict.CO_DIVERGENT_EVIDENCE
        assert result.iterate is None

    def test_across_the_branch_line(self, reeb_rect):
        result = codivergence_numeric(REEB_FLOW, (-2.0, 0.0), (0.0, 0.0), None, 50, reeb_rect)
        assert result.verdict == CodivergenceVerdict.NOT_CO_DIVERGENT
        assert abs(result.iterate) == 50
        assert 50 in (result.lastMeeting[0], -result.lastMeeting[1])

    def test_curve_must_join_the_points(self, reeb_rect):
        with pytest.raises(LeafSpaceError):
            codivergence_numeric(REEB_FLOW, (-2.0, 0.0), (0.0, 0.0), [(-2.0, 0.0), (0.0, 1.0)], 10, reeb_rect)


class TestNonseparable:
    def test_reeb_lines_are_not_separable(self):
        assert nonseparable_numeric(REEB_FLOW, -1.0, 1.0)

    def test_line_and_nearby_leaf_separate(self):
        assert not nonseparable_numeric(REEB_FLOW, -1.0, -2.0)

    def test_equal_directions_separate(self):
        assert not nonseparable_numeric(EQUAL_DIR_FLOW, -1.0, 1.0)

    def test_translation_has_no_lines(self):
        with pytest.raises(FlowSpecError) as info:
            nonseparable_numeric(TRANS_FLOW, 0.0, 1.0)
        assert info.value.code == "NOT_A_LEAF_LINE"

    def test_transition_interior_is_not_a_vertical_leaf(self):
        with pytest.raises(FlowSpecError):
            nonseparable_numeric(REEB_FLOW, 0.0, 1.0)


def test_representative_points():
    assert representative_points(REEB_FLOW) == [(-2.0, 0.0), (-1.0, 0.0), (0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]
    assert representative_points(TRANS_FLOW) == [(0.0, 0.0)]


@pytest.mark.parametrize("flow, expected", [(REEB_FLOW, 3), (EQUAL_DIR_FLOW, 1)])
def test_codivergence_classes(flow, expected):
    assert len(codivergence_classes(flow)) == expected


@pytest.mark.parametrize("flow", [DOUBLE_REEB_FLOW, CHAIN5_FLOW])
def test_classes_match_regions(flow):
    assert len(codivergence_classes(flow)) == region_count(build_leaf_space(flow))
