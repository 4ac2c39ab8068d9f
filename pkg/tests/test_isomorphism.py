import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from flows.bands import CHAIN5_FLOW, DOUBLE_REEB_FLOW, validate_flow_spec
from flows.builder import build_leaf_space
from flows.models import Band, BandFlowSpec, Line
from leafspace.errors import GraphValidationError
from leafspace.fixtures import CHAIN5, DOUBLE_REEB, MIRROR_REEB, REEB, TRANS, random_leaf_space, shuffled_relabel
from leafspace.isomorphism import (
    apply_isomorphism,
    canonical_form,
    decide_equivalence,
    exhaustive_isomorphism,
    is_isomorphic,
    same_graph,
)
from leafspace.models import LeafSpaceGraph, Verdict
from leafspace.validate import reverse_orientation


class TestDecideEquivalence:
    def test_translation_vs_reeb(self):
        result = decide_equivalence(TRANS, REEB)
        assert result.verdict == Verdict.NOT_CONJUGATE
        assert result.regionCounts == (1, 3)
        assert result.reason == "region counts 1 vs 3"

    def test_reeb_vs_mirror_reeb(self):
        result = decide_equivalence(REEB, MIRROR_REEB)
        assert result.verdict == Verdict.CONJUGATE_UP_TO_INVERSE
        assert result.witness is not None
        assert same_graph(apply_isomorphism(REEB, result.witness), MIRROR_REEB)

    def test_equal_region_counts_are_not_enough(self):
        result = decide_equivalence(DOUBLE_REEB, CHAIN5)
        assert result.verdict == Verdict.NOT_CONJUGATE
        assert result.regionCounts == (5, 5)

    def test_reversed_branch(self):
        # CHAIN5 layout with opposite transition signs is not its own reversal
        spec = validate_flow_spec(
            BandFlowSpec(
                lines=[Line(x=-3.0, dir=1), Line(x=-1.0, dir=-1), Line(x=1.0, dir=-1), Line(x=3.0, dir=1)],
                bands=[Band.invariant(), Band.transition(1), Band.invariant(), Band.transition(-1), Band.invariant()],
            )
        )
        graph = build_leaf_space(spec)
        flipped = reverse_orientation(graph)
        assert is_isomorphic(graph, flipped) is None
        result = decide_equivalence(graph, flipped)
        assert result.verdict == Verdict.CONJUGATE_UP_TO_INVERSE
        assert result.branch == "reversed"

    def test_invalid_input_raises(self):
        with pytest.raises(GraphValidationError):
            decide_equivalence(LeafSpaceGraph(), REEB)


def test_fixtures_match_their_flows():
    assert same_graph(build_leaf_space(DOUBLE_REEB_FLOW), DOUBLE_REEB)
    assert same_graph(build_leaf_space(CHAIN5_FLOW), CHAIN5)


def test_identity_witness_on_itself():
    iso = is_isomorphic(REEB, REEB)
    assert iso is not None
    assert same_graph(apply_isomorphism(REEB, iso), REEB)


def test_mirror_symmetric_fixtures_are_their_own_reversal():
    # both flows are unchanged by x -> -x
    assert is_isomorphic(DOUBLE_REEB, reverse_orientation(DOUBLE_REEB)) is not None
    assert canonical_form(CHAIN5) == canonical_form(reverse_orientation(CHAIN5))


def test_witness_is_sound_on_relabelled_graphs(random_graphs, rng):
    for graph in random_graphs:
        shuffled = shuffled_relabel(graph, rng)
        iso = is_isomorphic(graph, shuffled)
        assert iso is not None
        assert same_graph(apply_isomorphism(graph, iso), shuffled)
        assert canonical_form(graph) == canonical_form(shuffled)


def test_canonical_form_agrees_with_exhaustive_search(small_random_graphs):
    graphs = small_random_graphs
    for g1, g2 in zip(graphs, graphs[1:] + graphs[:1]):
        for other in (g2, reverse_orientation(g1)):
            by_code = canonical_form(g1) == canonical_form(other)
            assert by_code == (exhaustive_isomorphism(g1, other) is not None)
            assert by_code == (is_isomorphic(g1, other) is not None)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1), max_edges=st.integers(min_value=1, max_value=9))
def test_relabel_invariance(seed, max_edges):
    gen = np.random.default_rng(seed)
    graph = random_leaf_space(gen, max_edges)
    assert canonical_form(shuffled_relabel(graph, gen)) == canonical_form(graph)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
def test_reverse_orientation_is_an_involution(seed):
    graph = random_leaf_space(np.random.default_rng(seed), 10)
    assert reverse_orientation(reverse_orientation(graph)) == graph
