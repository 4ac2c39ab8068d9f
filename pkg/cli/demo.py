"""
`demo reeb`: the Reeb flow end to end, from band spec to numeric checks.
"""
from typing import Optional

import numpy as np

from cli.models import CommandResult
from cli.suites import REEB_RECT
from flows.bands import REEB_FLOW
from flows.builder import build_leaf_space
from flows.flow import BandFlow
from flows.models import FlowSettings
from flows.topology import codivergence_numeric, nonseparable_numeric, orbit_separation, trivialization_coord
from leafspace.contraction import collapse_sequence
from leafspace.errors import ParseError
from leafspace.fixtures import REEB
from leafspace.isomorphism import decide_equivalence, is_isomorphic
from leafspace.validate import region_count, reverse_orientation
from render.codecs import serialize_flowspec, serialize_leafspace

DEMOS = ("reeb",)


async def demo(name: str, settings: Optional[FlowSettings] = None) -> CommandResult:
    if name not in DEMOS:
        raise ParseError("UNKNOWN_DEMO", f"unknown demo {name!r}; available: {', '.join(DEMOS)}")
    settings = settings or FlowSettings()
    out = []
    record = {}

    out.append("== band spec")
    out.append(serialize_flowspec(REEB_FLOW).rstrip())

    graph = build_leaf_space(REEB_FLOW)
    regions = region_count(graph)
    matches_fixture = is_isomorphic(graph, REEB) is not None
    out.append("== leaf space")
    out.append(serialize_leafspace(graph).rstrip())
    out.append(f"fundamental regions: {regions}; isomorphic to the hand-written Reeb leaf space: {matches_fixture}")
    record["leafSpace"] = graph.model_dump()
    record["regions"] = regions

    trace = collapse_sequence(graph)
    out.append("== collapse")
    for step in trace.steps:
        via = f" via {step.throughVertex} onto {step.absorbingEdge}" if step.throughVertex else ""
        out.append(f"round {step.round}: {step.kind.value} {step.collapsedEdge}{via}")
    record["collapse"] = [s.model_dump(mode="json") for s in trace.steps]

    reversed_graph = reverse_orientation(graph)
    symmetric = is_isomorphic(graph, reversed_graph)
    decision = decide_equivalence(graph, reversed_graph)
    out.append("== reversal symmetry")
    out.append(f"f and f^-1 have isomorphic ordered leaf spaces: {symmetric is not None}")
    out.append(f"decision: {decision.verdict.value} ({decision.branch})")
    record["reversalSymmetric"] = symmetric is not None

    flow = BandFlow(REEB_FLOW, settings)
    p = np.array([0.3, -0.7])
    drift = abs(trivialization_coord(REEB_FLOW, tuple(flow.time_one_map(p)[0])).leafParam - trivialization_coord(REEB_FLOW, tuple(p)).leafParam)
    near = codivergence_numeric(flow, (-2.0, 0.0), (-3.0, 5.0), None, 50, REEB_RECT, settings)
    far = codivergence_numeric(flow, (-2.0, 0.0), (0.0, 0.0), None, 50, REEB_RECT, settings)
    out.append("== numeric checks")
    out.append(f"(-2,0) vs (-3,5): {near.verdict.value}")
    out.append(f"(-2,0) vs (0,0): {far.verdict.value} (witness iterate {far.iterate})")
    out.append(f"x=-1 and x=1 non-separable: {nonseparable_numeric(REEB_FLOW, -1.0, 1.0)}")
    out.append(f"x=-1 and x=-2 non-separable: {nonseparable_numeric(REEB_FLOW, -1.0, -2.0)}")
    out.append(f"orbit separation at {tuple(p)}: {orbit_separation(flow, tuple(p), 5):.6f}")
    out.append(f"leaf parameter drift under f at {tuple(p)}: {drift:.3e}")
    record["codivergence"] = {"near": near.verdict.value, "far": far.verdict.value}

    return CommandResult(text="\n".join(out) + "\n", record=record)
