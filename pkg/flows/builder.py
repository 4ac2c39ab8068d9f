import logging

from flows.bands import band_bounds, validate_flow_spec
from flows.models import BandFlowSpec
from leafspace.models import Edge, LeafSpaceGraph
from leafspace.validate import require_valid

logger = logging.getLogger("leafspace")


def is_branching_band(spec: BandFlowSpec, k: int) -> bool:
    """
    A transition band whose boundary lines run in opposite directions: its
    leaves converge to both lines at the same end.
    """
    band = spec.bands[k]
    if band.kind != "transition":
        return False
    _, _, d_l, d_r = band_bounds(spec, k)
    return d_l != d_r


def branch_lines(spec: BandFlowSpec) -> set:
    lines = set()
    for k in range(1, len(spec.bands) - 1):
        if is_branching_band(spec, k):
            lines.update({k - 1, k})
    return lines


def build_leaf_space(spec: BandFlowSpec) -> LeafSpaceGraph:
    """
    Builds the leaf space of a band flow symbolically.

    Branch lines become vertices. A branching transition band is an edge on
    its own with both boundary vertices in one end list, ordered by which line
    its leaves follow first in forward time (the left one when sign = +1);
    every other maximal run of bands between branch lines is one edge whose
    left vertex sits in endA and right vertex in endB.
    """
    validate_flow_spec(spec)
    vertices = sorted(branch_lines(spec))
    name = lambda i: f"v{i}"
    edges = []

    k = 0
    while k < len(spec.bands):
        if is_branching_band(spec, k):
            _, _, _, d_r = band_bounds(spec, k)
            pair = [name(k - 1), name(k)] if spec.bands[k].sign > 0 else [name(k), name(k - 1)]
            # both lines are approached as the crossing height tends to -sign*d_r*inf
            converges_high = spec.bands[k].sign * d_r < 0
            edges.append(Edge(id=f"e{k}", endA=[] if converges_high else pair, endB=pair if converges_high else []))
            k += 1
            continue
        start = k
        while k < len(spec.lines) and k not in vertices:
            k += 1
        end_a = [name(start - 1)] if start > 0 and (start - 1) in vertices else []
        end_b = [name(k)] if k < len(spec.lines) and k in vertices else []
        edges.append(Edge(id=f"e{start}", endA=end_a, endB=end_b))
        k += 1

    graph = LeafSpaceGraph(vertices=[name(i) for i in vertices], edges=edges)
    logger.info(f"build_leaf_space: {len(edges)} edges, {len(vertices)} vertices")
    return require_valid(graph)
