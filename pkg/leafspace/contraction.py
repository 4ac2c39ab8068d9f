import logging
from typing import Dict, List, Optional, Tuple

from leafspace.errors import ContractionError
from leafspace.models import ContractionStep, ContractionTrace, Edge, EdgeClass, LeafSpaceGraph, StepKind
from leafspace.validate import require_valid
from utils.finders import find_attachments

logger = logging.getLogger("leafspace")


def classify_edges(graph: LeafSpaceGraph) -> Dict[str, EdgeClass]:
    """
    Classifies each edge as non-extreme, first-order extreme or second-order extreme.

    Works on intermediate contraction states too. A lone edge is reported as
    FinalPoint (ready to be contracted to a point).
    """
    if len(graph.edges) == 1:
        return {graph.edges[0].id: EdgeClass.FINAL_POINT}
    classes = {}
    for edge in graph.edges:
        boundary = len(edge.endA) + len(edge.endB)
        if edge.endA and edge.endB:
            classes[edge.id] = EdgeClass.NON_EXTREME
        elif boundary == 1:
            classes[edge.id] = EdgeClass.FIRST_ORDER
        elif boundary >= 2:
            classes[edge.id] = EdgeClass.SECOND_ORDER
        else:
            classes[edge.id] = EdgeClass.FINAL_POINT
    return classes


class _State:
    """
    Mutable working copy of a leaf space during contraction.
    """

    def __init__(self, graph: LeafSpaceGraph):
        self.vertices: List[str] = list(graph.vertices)
        self.ends: Dict[str, Tuple[List[str], List[str]]] = {
            e.id: (list(e.endA), list(e.endB)) for e in graph.edges
        }

    def graph(self) -> LeafSpaceGraph:
        return LeafSpaceGraph(
            vertices=list(self.vertices),
            edges=[Edge(id=k, endA=list(a), endB=list(b)) for k, (a, b) in self.ends.items()],
        )

    def classify(self, edge_id: str) -> EdgeClass:
        return classify_edges(self.graph())[edge_id]

    def absorber(self, vertex: str, edge_id: str) -> Optional[Tuple[str, str, int]]:
        for attachment in find_attachments(self.graph(), vertex):
            if attachment[0] != edge_id:
                return attachment
        return None

    def _end(self, edge_id: str, end_name: str) -> List[str]:
        a, b = self.ends[edge_id]
        return a if end_name == "A" else b

    def collapse_first(self, edge_id: str) -> ContractionStep:
        a, b = self.ends[edge_id]
        (vertex,) = a + b
        target = self.absorber(vertex, edge_id)
        if target is None:
            raise ContractionError(f"first-order edge {edge_id!r}: vertex {vertex!r} has no absorbing edge")
        absorbing, end_name, index = target
        del self._end(absorbing, end_name)[index]
        del self.ends[edge_id]
        self.vertices.remove(vertex)
        return ContractionStep(round=1, kind=StepKind.FIRST_ORDER, collapsedEdge=edge_id, throughVertex=vertex, absorbingEdge=absorbing)

    def collapse_second(self, edge_id: str) -> ContractionStep:
        a, b = self.ends[edge_id]
        end = a or b
        for vertex in sorted(end):
            target = self.absorber(vertex, edge_id)
            if target is not None:
                break
        else:
            raise ContractionError(f"second-order edge {edge_id!r} has no vertex leading to another edge")
        absorbing, end_name, index = target
        # the rest of the collapsed end takes over the chosen vertex's slot
        remaining = [v for v in end if v != vertex]
        self._end(absorbing, end_name)[index:index + 1] = remaining
        del self.ends[edge_id]
        self.vertices.remove(vertex)
        return ContractionStep(round=1, kind=StepKind.SECOND_ORDER, collapsedEdge=edge_id, throughVertex=vertex, absorbingEdge=absorbing)


def collapse_sequence(graph: LeafSpaceGraph) -> ContractionTrace:
    """
    Contracts a leaf space to a point by collapsing extreme edges.

    Each round first collapses every first-order extreme edge, then every
    second-order one, both from snapshots sorted by edge id; an edge is only
    collapsed if it is still present and still of that order. Rounds repeat
    until one edge is left, which is then contracted to a point.
    """
    require_valid(graph)
    state = _State(graph)
    trace = ContractionTrace()
    round_number = 1

    def run_phase(kind: EdgeClass, collapse) -> None:
        snapshot = sorted(k for k, c in classify_edges(state.graph()).items() if c == kind)
        for edge_id in snapshot:
            if len(state.ends) == 1:
                return
            if edge_id not in state.ends or state.classify(edge_id) != kind:
                continue
            step = collapse(edge_id)
            trace.steps.append(step.model_copy(update={"round": round_number}))
            trace.states.append(state.graph())

    while len(state.ends) > 1:
        before = len(state.ends)
        run_phase(EdgeClass.FIRST_ORDER, state.collapse_first)
        run_phase(EdgeClass.SECOND_ORDER, state.collapse_second)
        logger.info(f"collapse_sequence: round {round_number} edges {before} -> {len(state.ends)}")
        if len(state.ends) >= before:
            raise ContractionError(f"round {round_number} collapsed nothing ({before} edges left)")
        if len(state.ends) == 1:
            break
        round_number += 1

    (last,) = state.ends
    trace.steps.append(ContractionStep(round=round_number, kind=StepKind.FINAL_POINT, collapsedEdge=last))
    trace.states.append(LeafSpaceGraph())
    return trace
