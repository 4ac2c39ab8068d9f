import logging
from typing import Dict, List, Optional, Tuple

from leafspace.models import Edge, EquivalenceResult, Isomorphism, LeafSpaceGraph, Verdict
from leafspace.validate import region_count, require_valid, reverse_orientation

logger = logging.getLogger("leafspace")

Ends = Tuple[List[str], List[str]]


def _ends_table(graph: LeafSpaceGraph) -> Dict[str, Ends]:
    return {e.id: (list(e.endA), list(e.endB)) for e in graph.edges}


def _attachment_table(graph: LeafSpaceGraph) -> Dict[str, List[Tuple[str, str, int]]]:
    table: Dict[str, List[Tuple[str, str, int]]] = {v: [] for v in graph.vertices}
    for edge in graph.edges:
        for end_name, end in (("A", edge.endA), ("B", edge.endB)):
            for index, v in enumerate(end):
                table.setdefault(v, []).append((edge.id, end_name, index))
    return table


def _other_attachment(table, vertex: str, edge_id: str) -> Optional[Tuple[str, str, int]]:
    for attachment in table[vertex]:
        if attachment[0] != edge_id:
            return attachment
    return None


def apply_isomorphism(graph: LeafSpaceGraph, iso: Isomorphism) -> LeafSpaceGraph:
    """
    Applies a witness mechanically: renames edges and vertices and swaps flipped ends.
    """
    edges = []
    for edge in graph.edges:
        end_a = [iso.vertexMap[v] for v in edge.endA]
        end_b = [iso.vertexMap[v] for v in edge.endB]
        if iso.endFlip[edge.id]:
            end_a, end_b = end_b, end_a
        edges.append(Edge(id=iso.edgeMap[edge.id], endA=end_a, endB=end_b))
    edges.sort(key=lambda e: e.id)
    return LeafSpaceGraph(vertices=sorted(iso.vertexMap[v] for v in graph.vertices), edges=edges)


def same_graph(g1: LeafSpaceGraph, g2: LeafSpaceGraph) -> bool:
    """
    Equality up to the listing order of edges and vertices; end lists must match exactly.
    """
    return sorted(g1.vertices) == sorted(g2.vertices) and _ends_table(g1) == _ends_table(g2)


def _match_from(g1: LeafSpaceGraph, g2: LeafSpaceGraph, root1: str, root2: str, flip: bool) -> Optional[Isomorphism]:
    ends1, ends2 = _ends_table(g1), _ends_table(g2)
    att1, att2 = _attachment_table(g1), _attachment_table(g2)
    edge_map: Dict[str, str] = {}
    flips: Dict[str, bool] = {}
    vertex_map: Dict[str, str] = {}
    used_edges, used_vertices = set(), set()

    stack = [(root1, root2, flip)]
    while stack:
        e1, e2, fl = stack.pop()
        if e1 in edge_map:
            if edge_map[e1] != e2 or flips[e1] != fl:
                return None
            continue
        if e2 in used_edges:
            return None
        edge_map[e1], flips[e1] = e2, fl
        used_edges.add(e2)

        a1, b1 = ends1[e1]
        a2, b2 = ends2[e2]
        if fl:
            a2, b2 = b2, a2
        for l1, l2 in ((a1, a2), (b1, b2)):
            if len(l1) != len(l2):
                return None
            for v1, v2 in zip(l1, l2):
                if v1 in vertex_map:
                    if vertex_map[v1] != v2:
                        return None
                    continue
                if v2 in used_vertices:
                    return None
                vertex_map[v1] = v2
                used_vertices.add(v2)
                o1 = _other_attachment(att1, v1, e1)
                o2 = _other_attachment(att2, v2, e2)
                if (o1 is None) != (o2 is None):
                    return None
                if o1 is None:
                    continue
                # the shared vertex fixes both the partner edge and its flip
                if o1[2] != o2[2]:
                    return None
                stack.append((o1[0], o2[0], o1[1] != o2[1]))

    if len(edge_map) != len(g1.edges) or len(vertex_map) != len(g1.vertices):
        return None
    return Isomorphism(edgeMap=edge_map, endFlip=flips, vertexMap=vertex_map)


def is_isomorphic(g1: LeafSpaceGraph, g2: LeafSpaceGraph) -> Optional[Isomorphism]:
    """
    Searches for an order-preserving isomorphism; end flips are allowed.

    The first edge of g1 (by id) is tried against every edge of g2 in id order,
    unflipped first. Once the root pair is fixed every other pairing is forced.
    """
    require_valid(g1)
    require_valid(g2)
    if len(g1.edges) != len(g2.edges) or len(g1.vertices) != len(g2.vertices):
        return None
    root1 = min(g1.edge_ids())
    for root2 in sorted(g2.edge_ids()):
        for flip in (False, True):
            iso = _match_from(g1, g2, root1, root2, flip)
            if iso is not None and same_graph(apply_isomorphism(g1, iso), g2):
                return iso
    return None


def exhaustive_isomorphism(g1: LeafSpaceGraph, g2: LeafSpaceGraph) -> Optional[Isomorphism]:
    """
    Reference search over every decorated edge bijection with end flips.

    Exponential; meant for graphs of a handful of edges.
    """
    if len(g1.edges) != len(g2.edges) or len(g1.vertices) != len(g2.vertices):
        return None
    shape = lambda g: sorted(tuple(sorted((len(e.endA), len(e.endB)))) for e in g.edges)
    if shape(g1) != shape(g2):
        return None

    order = sorted(g1.edges, key=lambda e: e.id)
    targets = sorted(g2.edges, key=lambda e: e.id)
    edge_map: Dict[str, str] = {}
    flips: Dict[str, bool] = {}
    vertex_map: Dict[str, str] = {}

    def extend(depth: int, used: frozenset) -> bool:
        if depth == len(order):
            return len(vertex_map) == len(g1.vertices)
        source = order[depth]
        for target in targets:
            if target.id in used:
                continue
            for flip in (False, True):
                a2, b2 = (target.endB, target.endA) if flip else (target.endA, target.endB)
                if len(a2) != len(source.endA) or len(b2) != len(source.endB):
                    continue
                added = []
                ok = True
                for v1, v2 in zip(source.endA + source.endB, a2 + b2):
                    if v1 in vertex_map:
                        ok = vertex_map[v1] == v2
                    else:
                        ok = v2 not in vertex_map.values()
                        if ok:
                            vertex_map[v1] = v2
                            added.append(v1)
                    if not ok:
                        break
                if ok:
                    edge_map[source.id], flips[source.id] = target.id, flip
                    if extend(depth + 1, used | {target.id}):
                        return True
                    del edge_map[source.id], flips[source.id]
                for v1 in added:
                    del vertex_map[v1]
        return False

    if extend(0, frozenset()):
        return Isomorphism(edgeMap=dict(edge_map), endFlip=dict(flips), vertexMap=dict(vertex_map))
    return None


def canonical_form(graph: LeafSpaceGraph) -> str:
    """
    Canonical string of a valid leaf space.

    AHU-style encoding of the incidence tree rooted at each edge in turn; the
    smallest rooted code wins. The end holding the parent vertex marks its
    position with "^", so within-end order is part of the code while the
    two ends of the root edge are compared as an unordered pair.
    """
    require_valid(graph)
    ends = _ends_table(graph)
    table = _attachment_table(graph)

    def vertex_code(v: str, from_edge: str) -> str:
        other = _other_attachment(table, v, from_edge)
        return "V()" if other is None else "V(" + edge_code(other[0], v) + ")"

    def end_code(end: List[str], edge_id: str, mark: Optional[str]) -> str:
        return "[" + ",".join("^" if v == mark else vertex_code(v, edge_id) for v in end) + "]"

    def edge_code(edge_id: str, parent: Optional[str]) -> str:
        a, b = ends[edge_id]
        if parent is None:
            pair = sorted([end_code(a, edge_id, None), end_code(b, edge_id, None)])
            return "E{" + "|".join(pair) + "}"
        near, far = (a, b) if parent in a else (b, a)
        return "E<" + end_code(near, edge_id, parent) + ";" + end_code(far, edge_id, None) + ">"

    return min(edge_code(edge_id, None) for edge_id in ends)


def decide_equivalence(g1: LeafSpaceGraph, g2: LeafSpaceGraph) -> EquivalenceResult:
    """
    Decides whether the free mappings behind two leaf spaces are conjugate up to inverse.

    Conjugate to g or to g^-1 exactly when the oriented foliations are
    equivalent, i.e. when the leaf spaces are isomorphic preserving the
    branch-point order; the reversed branch covers g^-1.
    """
    require_valid(g1)
    require_valid(g2)
    counts = (region_count(g1), region_count(g2))

    witness = is_isomorphic(g1, g2)
    if witness is not None:
        logger.info(f"decide_equivalence: conjugate (direct), regions {counts}")
        return EquivalenceResult(verdict=Verdict.CONJUGATE_UP_TO_INVERSE, branch="direct", witness=witness, regionCounts=counts)
    witness = is_isomorphic(g1, reverse_orientation(g2))
    if witness is not None:
        logger.info(f"decide_equivalence: conjugate (reversed), regions {counts}")
        return EquivalenceResult(verdict=Verdict.CONJUGATE_UP_TO_INVERSE, branch="reversed", witness=witness, regionCounts=counts)

    if counts[0] != counts[1]:
        reason = f"region counts {counts[0]} vs {counts[1]}"
    else:
        reason = f"equal region counts ({counts[0]}) but the ordered leaf spaces are not isomorphic"
    logger.info(f"decide_equivalence: not conjugate, {reason}")
    return EquivalenceResult(verdict=Verdict.NOT_CONJUGATE, regionCounts=counts, reason=reason)
