import math

import pytest

from flows.bands import REEB_FLOW, TRANS_FLOW
from leafspace.errors import FlowSpecError, GraphValidationError, ParseError
from leafspace.fixtures import DOUBLE_REEB, REEB, TRANS
from planemaps.maps import Antipodal, Compose, Inverse, Translation, rotation
from render.codecs import (
    parse_flowspec,
    parse_leafspace,
    parse_planemap,
    serialize_flowspec,
    serialize_leafspace,
    serialize_planemap,
)

REEB_TEXT = """{
  "vertices": ["vL", "vR"],
  "edges": [
    {"id": "eL", "endA": [], "endB": ["vL"]},
    {"id": "eM", "endA": [], "endB": ["vL", "vR"]},
    {"id": "eR", "endA": [], "endB": ["vR"]}
  ]
}
"""


class TestLeafSpaceFiles:
    def test_canonical_text(self):
        assert serialize_leafspace(REEB) == REEB_TEXT
        assert serialize_leafspace(parse_leafspace(REEB_TEXT)) == REEB_TEXT

    @pytest.mark.parametrize("graph", [REEB, DOUBLE_REEB, TRANS])
    def test_parse_inverts_serialize(self, graph):
        assert parse_leafspace(serialize_leafspace(graph)) == graph

    def test_missing_ends_default_to_empty(self):
        graph = parse_leafspace('{"vertices": [], "edges": [{"id": "e0"}]}')
        assert graph == TRANS

    def test_syntax_error_has_a_position(self):
        with pytest.raises(ParseError) as info:
            parse_leafspace('{\n  "vertices": [,\n}')
        assert info.value.code == "SYNTAX"
        assert info.value.line == 2

    def test_unknown_key(self):
        text = '{\n  "vertices": [],\n  "edges": [{"id": "e0", "colour": "red"}]\n}'
        with pytest.raises(ParseError) as info:
            parse_leafspace(text)
        assert info.value.code == "UNKNOWN_KEY"
        assert info.value.line == 3

    def test_wrong_type(self):
        with pytest.raises(ParseError) as info:
            parse_leafspace('{"vertices": "vL", "edges": []}')
        assert info.value.code == "SCHEMA"

    def test_not_an_object(self):
        with pytest.raises(ParseError):
            parse_leafspace("[1, 2]")

    def test_invalid_graph_lists_violations(self):
        with pytest.raises(GraphValidationError) as info:
            parse_leafspace('{"vertices": ["v"], "edges": [{"id": "e0", "endB": ["v"]}]}')
        assert {v.code for v in info.value.violations} >= {"DEGREE", "NOT_BRANCH_POINT"}


REEB_FLOW_TEXT = (
    '{"lines":[{"x":-1.0,"dir":1},{"x":1.0,"dir":-1}],'
    '"bands":["invariant",{"transition":{"sign":1}},"invariant"]}'
)


class TestFlowSpecFiles:
    def test_builtin_names(self):
        assert parse_flowspec("reeb") is REEB_FLOW
        assert parse_flowspec("translation:1,0") == TRANS_FLOW
        with pytest.raises(ParseError) as info:
            parse_flowspec("spiral")
        assert info.value.code == "UNKNOWN_FLOW"

    def test_reeb_file(self):
        assert parse_flowspec(REEB_FLOW_TEXT) == REEB_FLOW
        assert serialize_flowspec(REEB_FLOW) == REEB_FLOW_TEXT + "\n"
        assert serialize_flowspec(parse_flowspec(REEB_FLOW_TEXT + "\n")) == REEB_FLOW_TEXT + "\n"

    def test_translation_text(self):
        assert serialize_flowspec(TRANS_FLOW) == '{"lines":[],"bands":["invariant"],"translation":[1.0,0.0]}\n'

    @pytest.mark.parametrize("spec", [REEB_FLOW, TRANS_FLOW])
    def test_parse_inverts_serialize(self, spec):
        assert parse_flowspec(serialize_flowspec(spec)) == spec

    def test_unknown_key_in_a_band(self):
        text = (
            '{\n  "lines": [{"x": -1.0, "dir": 1}, {"x": 1.0, "dir": -1}],\n'
            '  "bands": ["invariant", {"transition": {"sign": 1, "width": 2}}, "invariant"]\n}'
        )
        with pytest.raises(ParseError) as info:
            parse_flowspec(text)
        assert info.value.code == "UNKNOWN_KEY"
        assert info.value.line == 3

    @pytest.mark.parametrize(
        "band",
        ['"sideways"', '{"transition": {"sign": 2}}', '{"transition": {}}', '{"kind": "invariant"}', "7"],
    )
    def test_malformed_band(self, band):
        with pytest.raises(ParseError):
            parse_flowspec('{"lines": [], "bands": [' + band + "]}")

    def test_axioms_are_checked(self):
        text = '{"lines": [{"x": 0, "dir": 1}], "bands": [{"transition": {"sign": 1}}, "invariant"]}'
        with pytest.raises(FlowSpecError) as info:
            parse_flowspec(text)
        assert info.value.code == "OUTER_TRANSITION"


class TestPlaneMapText:
    def test_nested_map(self):
        m = Compose([Inverse(Translation(1.0, 2.0)), rotation(math.pi / 3.0), Antipodal()])
        assert parse_planemap(serialize_planemap(m)) == m

    def test_text_form(self):
        assert serialize_planemap(Translation(1.5, -2.0)) == '{"translate": [1.5, -2]}\n'

    @pytest.mark.parametrize(
        "text, code",
        [
            ('{"shear": [1, 2]}', "UNKNOWN_KEY"),
            ('{"translate": [1]}', "SCHEMA"),
            ('{"translate": [1, 2], "scale": [1, 1]}', "SCHEMA"),
            ('{"translate": [1, 2]', "SYNTAX"),
        ],
    )
    def test_malformed(self, text, code):
        with pytest.raises(ParseError) as info:
            parse_planemap(text)
        assert info.value.code == code
