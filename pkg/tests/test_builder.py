import numpy as np
import pytest

from flows.bands import (
    EQUAL_DIR_FLOW,
    MIRROR_REEB_FLOW,
    REEB_FLOW,
    TRANS_FLOW,
    builtin_flow,
    field_at,
    mirror_symmetric_band_spec,
    random_band_spec,
    reverse_flow_spec,
    validate_flow_spec,
)
from flows.builder import branch_lines, build_leaf_space, is_branching_band
from flows.models import Band, BandFlowSpec, Line
from leafspace.errors import FlowSpecError
from leafspace.fixtures import MIRROR_REEB, REEB
from leafspace.isomorphism import decide_equivalence, is_isomorphic
from leafspace.models import Verdict
from leafspace.validate import region_count, reverse_orientation, validate

INV = Band.invariant()


def spec(lines, bands, translation=None):
    return BandFlowSpec(lines=[Line(x=x, dir=d) for x, d in lines], bands=bands, translation=translation)


class TestValidateFlowSpec:
    @pytest.mark.parametrize(
        "bad, code",
        [
            (spec([(-1.0, 1)], [INV]), "BAND_COUNT"),
            (spec([(1.0, 1), (-1.0, 1)], [INV, INV, INV]), "ASCENDING"),
            (spec([(-1.0, 1), (1.0, -1)], [INV, Band(kind="transition"), INV]), "BAD_BAND"),
            (spec([(-1.0, 1), (1.0, -1)], [INV, Band(kind="invariant", sign=1), INV]), "BAD_BAND"),
            (spec([(0.0, 1)], [Band.transition(1), INV]), "OUTER_TRANSITION"),
            (spec([(-1.0, 1), (1.0, -1)], [INV, INV, INV]), "DIR_MISMATCH"),
            (spec([], [INV]), "BAD_TRANSLATION"),
            (spec([], [INV], (0.0, 0.0)), "BAD_TRANSLATION"),
            (spec([(0.0, 1)], [INV, INV], (1.0, 0.0)), "BAD_TRANSLATION"),
        ],
    )
    def test_rejected(self, bad, code):
        with pytest.raises(FlowSpecError) as info:
            validate_flow_spec(bad)
        assert info.value.code == code

    def test_field_never_vanishes(self, rng):
        for p in rng.uniform(-4.0, 4.0, size=(200, 2)):
            assert np.hypot(*field_at(REEB_FLOW, tuple(p))) > 0


def test_builtin_flow_names():
    assert builtin_flow("reeb") is REEB_FLOW
    assert builtin_flow("translation:2,-1").translation == (2.0, -1.0)
    assert builtin_flow("nope") is None


def test_branching_bands():
    assert is_branching_band(REEB_FLOW, 1)
    assert not is_branching_band(REEB_FLOW, 0)
    assert not is_branching_band(EQUAL_DIR_FLOW, 1)
    assert branch_lines(REEB_FLOW) == {0, 1}


def test_reeb_flow_builds_the_reeb_leaf_space():
    graph = build_leaf_space(REEB_FLOW)
    assert len(graph.edges) == 3
    assert len(graph.vertices) == 2
    assert sum(1 for e in graph.edges for end in e.ends() if len(end) >= 2) == 1
    assert region_count(graph) == 3
    assert is_isomorphic(graph, REEB) is not None
    assert is_isomorphic(build_leaf_space(MIRROR_REEB_FLOW), MIRROR_REEB) is not None


def test_reeb_paired_end_is_time_ordered():
    middle = next(e for e in build_leaf_space(REEB_FLOW).edges if e.id == "e1")
    assert middle.endA == []
    assert middle.endB == ["v0", "v1"]


@pytest.mark.parametrize("flow", [EQUAL_DIR_FLOW, TRANS_FLOW])
def test_hausdorff_flows_have_one_region(flow):
    graph = build_leaf_space(flow)
    assert graph.vertices == []
    assert len(graph.edges) == 1
    assert region_count(graph) == 1


def test_reversed_spec_builds_the_reversed_leaf_space(rng):
    for _ in range(40):
        s = random_band_spec(rng, 7)
        assert build_leaf_space(reverse_flow_spec(s)) == reverse_orientation(build_leaf_space(s))


def test_reversal_symmetry_on_mirror_symmetric_specs(rng):
    for _ in range(25):
        graph = build_leaf_space(mirror_symmetric_band_spec(rng, 7))
        assert validate(graph) == []
        assert is_isomorphic(graph, reverse_orientation(graph)) is not None


def test_every_flow_is_conjugate_to_its_inverse_up_to_inverse(rng):
    for _ in range(25):
        graph = build_leaf_space(random_band_spec(rng, 7))
        result = decide_equivalence(graph, reverse_orientation(graph))
        assert result.verdict == Verdict.CONJUGATE_UP_TO_INVERSE
