import logging
from collections import Counter
from typing import List

import networkx as nx

from leafspace.errors import GraphValidationError
from leafspace.models import Edge, LeafSpaceGraph, Violation

logger = logging.getLogger("leafspace")


def incidence_graph(graph: LeafSpaceGraph) -> nx.MultiGraph:
    """
    Builds the incidence multigraph: one node per edge and per vertex, one arc per attachment.
    """
    incidence = nx.MultiGraph()
    incidence.add_nodes_from(("E", e.id) for e in graph.edges)
    incidence.add_nodes_from(("V", v) for v in graph.vertices)
    for edge in graph.edges:
        for v in edge.boundary():
            incidence.add_edge(("E", edge.id), ("V", v))
    return incidence


def validate(graph: LeafSpaceGraph) -> List[Violation]:
    """
    Returns every structural violation of a leaf space; an empty list means valid.
    """
    violations: List[Violation] = []
    if not graph.edges:
        violations.append(Violation(code="NONEMPTY", message="a leaf space needs at least one edge"))
        return violations

    for ident, count in Counter(graph.edge_ids()).items():
        if count > 1:
            violations.append(Violation(code="DUPLICATE_ID", message=f"edge id {ident!r} declared {count} times", subject=ident))
    for ident, count in Counter(graph.vertices).items():
        if count > 1:
            violations.append(Violation(code="DUPLICATE_ID", message=f"vertex id {ident!r} declared {count} times", subject=ident))

    declared = set(graph.vertices)
    attachments: Counter = Counter()
    paired = set()
    for edge in graph.edges:
        for end in edge.ends():
            for v, count in Counter(end).items():
                if v not in declared:
                    violations.append(Violation(code="UNKNOWN_VERTEX", message=f"edge {edge.id!r} names undeclared vertex {v!r}", subject=edge.id))
                if count > 1:
                    violations.append(Violation(code="DUPLICATE_IN_END", message=f"vertex {v!r} repeated in one end of edge {edge.id!r}", subject=edge.id))
            if len(end) >= 2:
                paired.update(end)
            attachments.update(end)
        for v in sorted(set(edge.endA) & set(edge.endB)):
            violations.append(Violation(code="CYCLE", message=f"vertex {v!r} sits at both ends of edge {edge.id!r}", subject=edge.id))

    for v in graph.vertices:
        if attachments[v] != 2:
            violations.append(Violation(code="DEGREE", message=f"vertex {v!r} has {attachments[v]} attachments, expected 2", subject=v))
        if v not in paired:
            violations.append(Violation(code="NOT_BRANCH_POINT", message=f"vertex {v!r} is not a branch point (never in an end list of length >= 2)", subject=v))

    incidence = incidence_graph(graph)
    if not nx.is_connected(incidence):
        violations.append(Violation(code="DISCONNECTED", message="incidence graph is not connected"))
    if not nx.is_forest(incidence):
        violations.append(Violation(code="CYCLE", message="incidence graph contains a cycle"))

    if not violations and region_count(graph) == 2:
        violations.append(Violation(code="TWO_REGIONS", message="a free mapping never has exactly two fundamental regions"))
    if violations:
        logger.debug(f"validate: {len(violations)} violations: {[v.code for v in violations]}")
    return violations


def require_valid(graph: LeafSpaceGraph) -> LeafSpaceGraph:
    violations = validate(graph)
    if violations:
        raise GraphValidationError(violations)
    return graph


def region_count(graph: LeafSpaceGraph) -> int:
    """
    Counts fundamental regions: one per edge, plus one per vertex that is never
    alone in an end list. A vertex alone at some end is absorbed into that
    adjacent 2-D region; a vertex only ever paired is its own 1-D region.
    """
    alone = set()
    for edge in graph.edges:
        for end in edge.ends():
            if len(end) == 1:
                alone.add(end[0])
    return len(graph.edges) + sum(1 for v in graph.vertices if v not in alone)


def reverse_orientation(graph: LeafSpaceGraph) -> LeafSpaceGraph:
    """
    Reverses the leaf orientation: every end list is reversed.
    """
    return LeafSpaceGraph(
        vertices=list(graph.vertices),
        edges=[Edge(id=e.id, endA=list(reversed(e.endA)), endB=list(reversed(e.endB))) for e in graph.edges],
    )


def relabel(graph: LeafSpaceGraph, edge_names: dict, vertex_names: dict) -> LeafSpaceGraph:
    """
    Renames edges and vertices; ids missing from the maps keep their name.
    """
    rename_v = lambda v: vertex_names.get(v, v)
    return LeafSpaceGraph(
        vertices=[rename_v(v) for v in graph.vertices],
        edges=[
            Edge(id=edge_names.get(e.id, e.id), endA=[rename_v(v) for v in e.endA], endB=[rename_v(v) for v in e.endB])
            for e in graph.edges
        ],
    )
