"""
SVG 1.1 diagrams of band foliations and of ordered leaf spaces.

Every diagram is a pure function of its inputs; coordinates are printed with
17 significant digits so repeated renders are byte-identical.
"""
import logging
import math
import xml.etree.ElementTree as ET
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from flows.bands import validate_flow_spec
from flows.builder import branch_lines
from flows.flow import BandFlow
from flows.models import BandFlowSpec, FlowSettings, Rectangle, SampleWindow
from leafspace.errors import LeafSpaceError
from leafspace.models import ContractionTrace, LeafSpaceGraph
from leafspace.validate import incidence_graph, region_count

logger = logging.getLogger("leafspace")

CANVAS = 600.0
MARGIN = 40.0
EDGE_HALF_LENGTH = 35.0
LAYER_SPACING = 120.0


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def svg_root(width: float, height: float) -> ET.Element:
    return ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        version="1.1",
        width=f"{_fmt(width)}px",
        height=f"{_fmt(height)}px",
        viewBox=f"0 0 {_fmt(width)} {_fmt(height)}",
    )


def _arrow_marker(root: ET.Element) -> None:
    defs = ET.SubElement(root, "defs")
    marker = ET.SubElement(
        defs, "marker", id="arrow", viewBox="0 0 10 10", refX="10", refY="5",
        markerWidth="6", markerHeight="6", orient="auto",
    )
    ET.SubElement(marker, "path", d="M0 0L10 5L0 10z")


def _polyline(parent: ET.Element, points: Sequence[Tuple[float, float]], cls: str) -> ET.Element:
    return ET.SubElement(
        parent, "polyline", {"class": cls, "fill": "none", "marker-end": "url(#arrow)"},
        points=" ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points),
    )


def _text(parent: ET.Element, x: float, y: float, label: str, cls: str) -> ET.Element:
    node = ET.SubElement(parent, "text", {"class": cls}, x=_fmt(x), y=_fmt(y))
    node.text = label
    return node


def _to_string(root: ET.Element) -> str:
    return ET.tostring(root, encoding="unicode") + "\n"


class _Viewport:
    def __init__(self, region: Rectangle):
        self.region = region
        span_x = region.xMax - region.xMin
        span_y = region.yMax - region.yMin
        if not (span_x > 0 and span_y > 0):
            raise LeafSpaceError(f"cannot draw an empty region {region.model_dump()}")
        self.width = CANVAS
        self.height = CANVAS * span_y / span_x
        self.scale = CANVAS / span_x

    def project(self, points: np.ndarray) -> List[Tuple[float, float]]:
        xs = (points[:, 0] - self.region.xMin) * self.scale
        ys = self.height - (points[:, 1] - self.region.yMin) * self.scale
        return list(zip(xs.tolist(), ys.tolist()))


def _seeds(spec: BandFlowSpec, region: Rectangle, density: int) -> np.ndarray:
    """
    Seed points on a transversal through the middle of the region, off the boundary lines.
    """
    cx, cy = (region.xMin + region.xMax) / 2.0, (region.yMin + region.yMax) / 2.0
    if not spec.lines:
        a, b = spec.translation
        normal = np.array([-b, a]) / math.hypot(a, b)
        reach = 0.5 * min(region.xMax - region.xMin, region.yMax - region.yMin)
        offsets = np.linspace(-reach, reach, density + 2)[1:-1]
        return np.array([cx, cy]) + np.outer(offsets, normal)
    xs = np.linspace(region.xMin, region.xMax, density + 2)[1:-1]
    line_xs = {line.x for line in spec.lines}
    # nudge seeds that land on a boundary line into the next band
    nudge = 1e-3 * (region.xMax - region.xMin)
    xs = np.array([x + nudge if x in line_xs else x for x in xs])
    return np.column_stack([xs, np.full(len(xs), cy)])


def render_foliation(
    spec: BandFlowSpec,
    region: Rectangle,
    density: int,
    settings: Optional[FlowSettings] = None,
) -> str:
    """
    One polyline per seeded leaf, one per boundary line in the region; lines
    that are branch points of the leaf space are highlighted. Arrowheads mark
    the direction of the flow.
    """
    validate_flow_spec(spec)
    flow = BandFlow(spec, settings)
    view = _Viewport(region)
    span = max(region.xMax - region.xMin, region.yMax - region.yMin)
    window = SampleWindow(tMin=-2.0 * span, tMax=2.0 * span, maxStep=span / 200.0)

    root = svg_root(view.width, view.height)
    _arrow_marker(root)
    leaves = ET.SubElement(root, "g", id="leaves")
    for seed in _seeds(spec, region, density):
        sample = flow.sample_leaf(seed, window)
        _polyline(leaves, view.project(np.asarray(sample.points)), "leaf")

    vertex_lines = branch_lines(spec)
    boundary = ET.SubElement(root, "g", id="boundary-lines")
    for i, line in enumerate(spec.lines):
        if not region.xMin <= line.x <= region.xMax:
            continue
        ends = [region.yMin, region.yMax][:: line.dir]
        cls = "vertex-leaf" if i in vertex_lines else "boundary-leaf"
        _polyline(boundary, view.project(np.array([[line.x, ends[0]], [line.x, ends[1]]])), cls)

    logger.info(f"render_foliation: {density} leaves, {len(vertex_lines)} highlighted lines")
    return _to_string(root)


def _layout(graph: LeafSpaceGraph) -> Dict[tuple, Tuple[float, float]]:
    """
    Positions for the nodes of the incidence graph.

    A chain (no node of degree above two, as band flows give) runs left to
    right on one row from its smaller end. Any other tree is drawn radially
    around its center, each subtree taking an angle in proportion to its leaves.
    """
    incidence = nx.Graph(incidence_graph(graph))
    if max(d for _, d in incidence.degree()) <= 2:
        start = min(n for n, d in incidence.degree() if d <= 1)
        order = nx.dfs_preorder_nodes(incidence, start)
        return {node: (MARGIN + EDGE_HALF_LENGTH + i * LAYER_SPACING, MARGIN) for i, node in enumerate(order)}

    center = min(nx.center(incidence))
    tree = nx.bfs_tree(incidence, center)
    leaves: Dict[tuple, int] = {}
    for node in nx.dfs_postorder_nodes(tree, center):
        leaves[node] = sum(leaves[child] for child in tree.successors(node)) or 1

    polar = {center: (0.0, 0.0)}
    wedges = {center: (0.0, 2.0 * math.pi)}
    for node in nx.dfs_preorder_nodes(tree, center):
        start, span = wedges[node]
        radius = polar[node][0] + LAYER_SPACING
        for child in sorted(tree.successors(node)):
            share = span * leaves[child] / leaves[node]
            wedges[child] = (start, share)
            polar[child] = (radius, start + share / 2.0)
            start += share

    raw = {node: (r * math.cos(angle), r * math.sin(angle)) for node, (r, angle) in polar.items()}
    x0 = min(x for x, _ in raw.values())
    y0 = min(y for _, y in raw.values())
    return {node: (MARGIN + EDGE_HALF_LENGTH + x - x0, MARGIN + y - y0) for node, (x, y) in raw.items()}


def _leafspace_svg(graph: LeafSpaceGraph, caption: Optional[str] = None) -> str:
    if not graph.edges:
        root = svg_root(2 * MARGIN + 40.0, 2 * MARGIN + 40.0)
        ET.SubElement(root, "circle", {"class": "final-point"}, cx=_fmt(MARGIN + 20.0), cy=_fmt(MARGIN + 20.0), r="5")
        if caption:
            _text(root, MARGIN, MARGIN / 2.0, caption, "caption")
        return _to_string(root)

    positions = _layout(graph)
    width = max(x for x, _ in positions.values()) + EDGE_HALF_LENGTH + 2 * MARGIN
    height = max(y for _, y in positions.values()) + 2 * MARGIN
    root = svg_root(width, height)
    if caption:
        _text(root, MARGIN, MARGIN / 2.0, caption, "caption")

    segments = ET.SubElement(root, "g", id="edges")
    marks = ET.SubElement(root, "g", id="clusters")
    end_points = {}
    for edge in graph.edges:
        x, y = positions[("E", edge.id)]
        left, right = (x - EDGE_HALF_LENGTH, y), (x + EDGE_HALF_LENGTH, y)
        end_points[(edge.id, "A")], end_points[(edge.id, "B")] = left, right
        ET.SubElement(
            segments, "line", {"class": "edge", "id": f"edge-{edge.id}"},
            x1=_fmt(left[0]), y1=_fmt(left[1]), x2=_fmt(right[0]), y2=_fmt(right[1]),
        )
        _text(segments, x, y - 6.0, edge.id, "edge-label")
        for end_name, end in (("A", edge.endA), ("B", edge.endB)):
            if len(end) < 2:
                continue
            px, py = end_points[(edge.id, end_name)]
            for index in range(len(end)):
                ET.SubElement(marks, "circle", {"class": "cluster-mark"}, cx=_fmt(px), cy=_fmt(py + 6.0 * index), r="2")
            _text(marks, px + 4.0, py + 6.0 * len(end) + 8.0, " < ".join(end), "order")

    alone = {end[0] for edge in graph.edges for end in edge.ends() if len(end) == 1}
    glyphs = ET.SubElement(root, "g", id="vertices")
    for v in graph.vertices:
        vx, vy = positions[("V", v)]
        for edge in graph.edges:
            for end_name, end in (("A", edge.endA), ("B", edge.endB)):
                if v in end:
                    ex, ey = end_points[(edge.id, end_name)]
                    ET.SubElement(glyphs, "line", {"class": "attach"}, x1=_fmt(vx), y1=_fmt(vy), x2=_fmt(ex), y2=_fmt(ey))
        if v in alone:
            ET.SubElement(glyphs, "circle", {"class": "branch-point", "id": f"vertex-{v}"}, cx=_fmt(vx), cy=_fmt(vy), r="4")
        else:
            ET.SubElement(
                glyphs, "rect", {"class": "own-region", "id": f"vertex-{v}"},
                x=_fmt(vx - 4.0), y=_fmt(vy - 4.0), width="8", height="8",
            )
        _text(glyphs, vx + 6.0, vy - 6.0, v, "vertex-label")
    return _to_string(root)


def render_leafspace(graph: LeafSpaceGraph) -> str:
    """
    Segments for edges, glyphs for vertices: a circle when the vertex is
    absorbed into an adjacent region, a square when it is a region of its own.
    Clusters of non-separable points carry "u < v" order labels.
    """
    logger.info(f"render_leafspace: {len(graph.edges)} edges, {region_count(graph)} regions")
    return _leafspace_svg(graph)


def render_collapse_frames(trace: ContractionTrace) -> List[str]:
    """
    One numbered frame per contraction state.
    """
    frames = []
    for index, (step, state) in enumerate(zip(trace.steps, trace.states), start=1):
        caption = f"frame {index}: round {step.round} {step.kind.value} {step.collapsedEdge}"
        frames.append(_leafspace_svg(state, caption))
    return frames
