"""
Flows conjugated by plane maps, and the checks that leaves and regions are
carried along by the conjugator.
"""
import logging
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial import cKDTree

from flows.flow import BaseFlow, FlowLike, as_flow
from flows.models import FlowSettings, Point, Rectangle, SampleWindow
from flows.topology import codivergence_numeric
from planemaps.maps import PlaneMap
from planemaps.models import (
    EquivarianceEntry,
    EquivarianceReport,
    TransportEntry,
    TransportReport,
)

logger = logging.getLogger("leafspace")
numeric_logger = logging.getLogger("leafspace.numeric")


class ConjugatedFlow(BaseFlow):
    """
    The flow h o phi^t o h^-1, kept implicit.
    """

    def __init__(self, h: PlaneMap, base: BaseFlow):
        self.h = h
        self.h_inv = h.inverse()
        self.base = base

    def flow_map(self, t, points) -> np.ndarray:
        return self.h.apply(self.base.flow_map(t, self.h_inv.apply(points)))


def conjugate_flow(h: PlaneMap, flow: FlowLike, settings: Optional[FlowSettings] = None) -> ConjugatedFlow:
    return ConjugatedFlow(h, as_flow(flow, settings))


def _distance_to_polyline(points: np.ndarray, polyline: np.ndarray) -> np.ndarray:
    """
    Distance of every point to a sampled polyline, looking at the two segments
    around the nearest sample.
    """
    _, nearest = cKDTree(polyline).query(points)
    if len(polyline) == 1:
        return np.linalg.norm(points - polyline[0], axis=1)
    best = np.full(len(points), np.inf)
    for offset in (-1, 0):
        start = np.clip(nearest + offset, 0, len(polyline) - 2)
        p0, p1 = polyline[start], polyline[start + 1]
        seg = p1 - p0
        length2 = np.einsum("ij,ij->i", seg, seg)
        with np.errstate(divide="ignore", invalid="ignore"):
            s = np.where(length2 > 0, np.einsum("ij,ij->i", points - p0, seg) / length2, 0.0)
        foot = p0 + np.clip(s, 0.0, 1.0)[:, None] * seg
        best = np.minimum(best, np.linalg.norm(points - foot, axis=1))
    return best


def leaf_transport_check(
    h: PlaneMap,
    flow: FlowLike,
    base_points: Sequence[Point],
    window: Optional[SampleWindow] = None,
    tol: float = 1e-3,
    settings: Optional[FlowSettings] = None,
) -> TransportReport:
    """
    One-sided Hausdorff distance between h(leaf of x) and the leaf of h(x)
    under the conjugated flow, per base point.
    """
    settings = settings or FlowSettings()
    window = window or SampleWindow(maxStep=settings.sample_step)
    base = as_flow(flow, settings)
    conjugated = ConjugatedFlow(h, base)

    entries = []
    for x in base_points:
        leaf = np.asarray(base.sample_leaf(x, window).points)
        target = np.asarray(conjugated.sample_leaf(h.apply(x)[0], window).points)
        distance = float(np.max(_distance_to_polyline(h.apply(leaf), target)))
        numeric_logger.debug(f"leaf transport: x={tuple(x)} distance={distance}")
        entries.append(TransportEntry(basePoint=tuple(float(c) for c in x), distance=distance))

    worst = max((e.distance for e in entries), default=0.0)
    passed = worst < tol
    logger.info(f"leaf_transport_check: {len(entries)} points, max distance {worst:.3e}, passed={passed}")
    return TransportReport(map=h.to_dict(), tolerance=tol, entries=entries, maxDistance=worst, passed=passed)


def transport_rectangle(h: PlaneMap, rect: Rectangle) -> Rectangle:
    """
    Bounding box of the image of a rectangle's corners.
    """
    corners = np.array([[rect.xMin, rect.yMin], [rect.xMin, rect.yMax], [rect.xMax, rect.yMin], [rect.xMax, rect.yMax]])
    image = h.apply(corners)
    return Rectangle(
        xMin=float(image[:, 0].min()),
        xMax=float(image[:, 0].max()),
        yMin=float(image[:, 1].min()),
        yMax=float(image[:, 1].max()),
    )


def region_equivariance_check(
    h: PlaneMap,
    flow: FlowLike,
    pairs: Iterable[Tuple[Point, Point, Optional[Sequence[Point]]]],
    iterations: int,
    rect: Rectangle,
    settings: Optional[FlowSettings] = None,
) -> EquivarianceReport:
    """
    Compares codivergence verdicts before and after conjugating by h.
    """
    base = as_flow(flow, settings)
    conjugated = ConjugatedFlow(h, base)
    moved_rect = transport_rectangle(h, rect)

    entries: List[EquivarianceEntry] = []
    for x, y, curve in pairs:
        curve = [tuple(x), tuple(y)] if curve is None else list(curve)
        before = codivergence_numeric(base, x, y, curve, iterations, rect, settings)
        moved = h.apply(curve)
        after = codivergence_numeric(conjugated, moved[0], moved[-1], moved, iterations, moved_rect, settings)
        entries.append(EquivarianceEntry(x=tuple(x), y=tuple(y), base=before.verdict, conjugated=after.verdict))

    mismatches = [e for e in entries if e.base != e.conjugated]
    logger.info(f"region_equivariance_check: {len(entries)} pairs, {len(mismatches)} mismatches")
    return EquivarianceReport(map=h.to_dict(), entries=entries, mismatches=mismatches, passed=not mismatches)
