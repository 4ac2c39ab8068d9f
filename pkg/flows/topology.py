"""
Numerical realisations of the leaf-space topology of band flows: transversal
non-separability, codivergence of curves, the circle-bundle trivialisation
and orbit separation.
"""
import logging
import math
from typing import List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from flows.bands import band_bounds, validate_flow_spec
from flows.flow import FlowLike, as_flow
from flows.models import (
    BandFlowSpec,
    CodivergenceResult,
    CodivergenceVerdict,
    FlowSettings,
    Point,
    Rectangle,
    TrivializationCoord,
)
from leafspace.errors import FlowSpecError, LeafSpaceError
from utils.finders import find_band_index, find_line_index

logger = logging.getLogger("leafspace")
numeric_logger = logging.getLogger("leafspace.numeric")

DEFAULT_SCHEDULE = (0.5, 0.25, 0.1, 0.05, 0.01)
# geometric offsets toward a line when sampling a transversal ray
RAY_SAMPLES = 30
MAX_CURVE_POINTS = 2000
CURVE_SPACING = 0.01


def _phase(t: float) -> float:
    phase = float(t % 1.0)
    return 0.0 if phase >= 1.0 else phase


def trivialization_coord(spec: BandFlowSpec, p: Point) -> TrivializationCoord:
    """
    (leaf, phase) coordinates of p.

    The leaf is named by its x-coordinate on lines and invariant bands, by its
    crossing height on the band midpoint in transition bands. The phase is the
    flow time from the leaf's reference point (y=0, resp. the midpoint crossing)
    to p, mod 1.
    """
    validate_flow_spec(spec)
    x, y = float(p[0]), float(p[1])
    if not spec.lines:
        a, b = spec.translation
        norm2 = a * a + b * b
        return TrivializationCoord(leafParam=(b * x - a * y) / math.sqrt(norm2), phase=_phase((a * x + b * y) / norm2))

    line = find_line_index(spec, x)
    k = find_band_index(spec, x)
    if line is not None or spec.bands[k].kind == "invariant":
        direction = spec.lines[line].dir if line is not None else spec.lines[max(k - 1, 0)].dir
        return TrivializationCoord(leafParam=x, phase=_phase(y / direction))

    b_l, b_r, d_l, d_r = band_bounds(spec, k)
    rate = spec.bands[k].sign * (b_r - b_l)
    z0 = math.log(x - b_l) - math.log(b_r - x)
    t = z0 / rate
    rise = d_l * t + (d_r - d_l) / rate * (np.logaddexp(0.0, z0) - math.log(2.0))
    return TrivializationCoord(leafParam=float(y - rise), phase=_phase(t))


def _neighbourhood(spec: BandFlowSpec, c: float, delta: float) -> List[Tuple[tuple, float, float]]:
    """
    Leaves crossing the horizontal transversal of length delta centred on the
    vertical leaf x = c, as (parameter space, low, high) intervals.
    """
    half = delta / 2.0
    line = find_line_index(spec, c)
    if line is None:
        k = find_band_index(spec, c)
        if spec.bands[k].kind != "invariant":
            raise FlowSpecError("NOT_A_LEAF_LINE", f"x={c} is not a vertical flowline of the band spec")
        hood = [(("band", k), c - half, c + half)]
        hood += [(("line", i), 0.0, 0.0) for i, ln in enumerate(spec.lines) if abs(ln.x - c) <= half]
        return hood

    hood = [(("line", line), 0.0, 0.0)]
    for k, side in ((line, -1.0), (line + 1, 1.0)):
        band = spec.bands[k]
        if band.kind == "invariant":
            lo, hi = sorted((c, c + side * half))
            hood.append((("band", k), lo, hi))
            continue
        b_l, b_r, _, _ = band_bounds(spec, k)
        reach = min(half, 0.49 * (b_r - b_l))
        heights = [
            trivialization_coord(spec, (c + side * reach * 2.0 ** -m, 0.0)).leafParam for m in range(RAY_SAMPLES)
        ]
        if heights[-1] > heights[0]:
            hood.append((("band", k), heights[0], math.inf))
        else:
            hood.append((("band", k), -math.inf, heights[0]))
    return hood


def nonseparable_numeric(spec: BandFlowSpec, line_a: float, line_b: float, schedule: Sequence[float] = DEFAULT_SCHEDULE) -> bool:
    """
    Shrinking-neighbourhood test: true when, at every resolution of the
    schedule, some leaf crosses both transversals.
    """
    validate_flow_spec(spec)
    if not spec.lines:
        raise FlowSpecError("NOT_A_LEAF_LINE", "a translation flow has no vertical boundary lines")
    for delta in schedule:
        near_a = _neighbourhood(spec, line_a, delta)
        near_b = _neighbourhood(spec, line_b, delta)
        meets = any(ka == kb and lo_a <= hi_b and lo_b <= hi_a for ka, lo_a, hi_a in near_a for kb, lo_b, hi_b in near_b)
        numeric_logger.debug(f"nonseparable: x={line_a} vs x={line_b} delta={delta} overlap={meets}")
        if not meets:
            return False
    return True


def densify(curve: Sequence[Point], spacing: float = CURVE_SPACING, max_points: int = MAX_CURVE_POINTS) -> np.ndarray:
    pts = np.atleast_2d(np.asarray(curve, dtype=float))
    if len(pts) == 1:
        return pts
    lengths = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    budget = max(max_points - 1, len(lengths))
    per_segment = np.maximum(1, np.ceil(lengths / spacing)).astype(int)
    if per_segment.sum() > budget:
        per_segment = np.maximum(1, np.floor(per_segment * budget / per_segment.sum())).astype(int)
    parts = [pts[i] + np.outer(np.arange(n) / n, pts[i + 1] - pts[i]) for i, n in enumerate(per_segment)]
    return np.vstack(parts + [pts[-1:]])


def polyline_meets_rectangle(points: np.ndarray, rect: Rectangle) -> bool:
    """
    Liang-Barsky clipping of every segment of a polyline against a rectangle.
    """
    if len(points) == 1:
        x, y = points[0]
        return rect.xMin <= x <= rect.xMax and rect.yMin <= y <= rect.yMax
    p0, p1 = points[:-1], points[1:]
    d = p1 - p0
    t_lo = np.zeros(len(d))
    t_hi = np.ones(len(d))
    rejected = np.zeros(len(d), dtype=bool)
    constraints = (
        (-d[:, 0], p0[:, 0] - rect.xMin),
        (d[:, 0], rect.xMax - p0[:, 0]),
        (-d[:, 1], p0[:, 1] - rect.yMin),
        (d[:, 1], rect.yMax - p0[:, 1]),
    )
    with np.errstate(divide="ignore", invalid="ignore"):
        for p, q in constraints:
            rejected |= (p == 0) & (q < 0)
            ratio = q / p
            t_lo = np.where(p < 0, np.maximum(t_lo, ratio), t_lo)
            t_hi = np.where(p > 0, np.minimum(t_hi, ratio), t_hi)
    return bool(np.any(~rejected & (t_lo <= t_hi)))


def codivergence_numeric(
    flow: FlowLike,
    x: Point,
    y: Point,
    curve: Optional[Sequence[Point]],
    iterations: int,
    rect: Rectangle,
    settings: Optional[FlowSettings] = None,
) -> CodivergenceResult:
    """
    Semidecision for x ~ y along a given curve, at desk scale.

    NotCoDivergent when, on either side, every iterate of the curve beyond the
    burn-in up to N meets K; otherwise the run is evidence of codivergence.
    """
    settings = settings or FlowSettings()
    if iterations < 1:
        raise LeafSpaceError("codivergence needs at least one iteration")
    curve = [tuple(x), tuple(y)] if curve is None else list(curve)
    if not (np.allclose(curve[0], x, atol=1e-9) and np.allclose(curve[-1], y, atol=1e-9)):
        raise LeafSpaceError("curve endpoints must be the two points compared")
    engine = as_flow(flow, settings)
    samples = densify(curve)

    first = min(settings.burn_in, iterations - 1) + 1
    meets = {}
    for n in range(1, iterations + 1):
        for m in (n, -n):
            meets[m] = polyline_meets_rectangle(engine.iterate(m, samples), rect)
    forward = [n for n in range(1, iterations + 1) if meets[n]]
    backward = [n for n in range(1, iterations + 1) if meets[-n]]
    last = (max(forward, default=0), -max(backward, default=0))

    for sign, hits in ((1, forward), (-1, backward)):
        if all(meets[sign * n] for n in range(first, iterations + 1)):
            logger.info(f"codivergence_numeric: {x} vs {y}: not codivergent (side {sign:+d})")
            return CodivergenceResult(verdict=CodivergenceVerdict.NOT_CO_DIVERGENT, iterate=sign * iterations, lastMeeting=last)
    logger.info(f"codivergence_numeric: {x} vs {y}: codivergent evidence, last meetings {last}")
    return CodivergenceResult(verdict=CodivergenceVerdict.CO_DIVERGENT_EVIDENCE, lastMeeting=last)


def representative_points(spec: BandFlowSpec) -> List[Point]:
    """
    One point per band and per line, on the x-axis.
    """
    if not spec.lines:
        return [(0.0, 0.0)]
    xs = [line.x for line in spec.lines]
    reps = [(xs[0] - 1.0, 0.0)]
    for i, x in enumerate(xs):
        reps.append((x, 0.0))
        reps.append(((x + xs[i + 1]) / 2.0 if i + 1 < len(xs) else x + 1.0, 0.0))
    return reps


def codivergence_classes(
    flow: FlowLike,
    iterations: int = 50,
    settings: Optional[FlowSettings] = None,
    representatives: Optional[Sequence[Point]] = None,
    rect: Optional[Rectangle] = None,
) -> List[List[Point]]:
    """
    Groups representative points into classes joined by codivergent straight segments.

    A band spec supplies its own representatives; any other flow (a conjugated
    one, say) needs them passed in. K defaults to their bounding box grown by 1.
    """
    if representatives is None:
        if not isinstance(flow, BandFlowSpec):
            raise LeafSpaceError("codivergence classes of a flow without a band spec need explicit representatives")
        representatives = representative_points(flow)
    reps = [(float(p[0]), float(p[1])) for p in representatives]
    if rect is None:
        xs = [p[0] for p in reps]
        ys = [p[1] for p in reps]
        rect = Rectangle(xMin=min(xs) - 1.0, xMax=max(xs) + 1.0, yMin=min(ys) - 1.0, yMax=max(ys) + 1.0)
    engine = as_flow(flow, settings)
    joined = nx.Graph()
    joined.add_nodes_from(range(len(reps)))
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            if nx.has_path(joined, i, j):
                continue
            result = codivergence_numeric(engine, reps[i], reps[j], None, iterations, rect, settings)
            if result.verdict == CodivergenceVerdict.CO_DIVERGENT_EVIDENCE:
                joined.add_edge(i, j)
    classes = [sorted(reps[i] for i in component) for component in nx.connected_components(joined)]
    return sorted(classes)


def orbit_separation(flow: FlowLike, p: Point, iterations: int, settings: Optional[FlowSettings] = None) -> float:
    """
    Smallest distance from p to f^n(p) over 1 <= |n| <= N.
    """
    if iterations < 1:
        raise LeafSpaceError("orbit separation needs N >= 1")
    engine = as_flow(flow, settings)
    steps = np.array([n for k in range(1, iterations + 1) for n in (k, -k)], dtype=float)
    images = engine.orbit(p, steps)
    return float(np.min(np.linalg.norm(images - np.asarray(p, dtype=float), axis=1)))
