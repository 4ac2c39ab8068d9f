import logging
import math
from typing import Optional, Union

import numpy as np
from scipy.integrate import solve_ivp
from scipy.special import expit

from flows.bands import band_bounds, field_at, invariant_velocity, validate_flow_spec
from flows.models import BandFlowSpec, FlowSettings, LeafSample, SampleWindow
from leafspace.errors import IntegratorError

logger = logging.getLogger("leafspace")
numeric_logger = logging.getLogger("leafspace.numeric")

# chord refinement passes in sample_leaf
REFINE_PASSES = 8


def _as_points(points) -> np.ndarray:
    return np.atleast_2d(np.asarray(points, dtype=float))


class BaseFlow:
    """
    A one-parameter group of plane homeomorphisms.

    Subclasses provide `flow_map(t, points)`; points is an (n, 2) array or a
    single point, t a scalar or an array broadcasting against the points.
    """

    def flow_map(self, t, points) -> np.ndarray:
        raise NotImplementedError

    def orbit(self, p, times) -> np.ndarray:
        times = np.asarray(times, dtype=float)
        return _as_points(self.flow_map(times, np.repeat(_as_points(p), len(times), axis=0)))

    def time_one_map(self, points) -> np.ndarray:
        return self.flow_map(1.0, points)

    def iterate(self, n: int, points) -> np.ndarray:
        """
        n-th iterate of the time-one map (n may be negative).
        """
        return self.flow_map(float(n), points)

    def sample_leaf(self, p, window: Optional[SampleWindow] = None) -> LeafSample:
        """
        Samples the flowline through p for t in [tMin, tMax].

        Starts from a uniform grid of spacing maxStep and halves every interval
        whose chord is longer than maxStep.
        """
        window = window or SampleWindow()
        base = tuple(float(c) for c in np.asarray(p, dtype=float).ravel()[:2])
        span = window.tMax - window.tMin
        if span <= 0:
            only = tuple(float(c) for c in self.orbit(base, [window.tMin])[0])
            return LeafSample(basePoint=base, times=[window.tMin], points=[only], window=window)

        count = int(math.ceil(span / window.maxStep)) + 1
        times = np.linspace(window.tMin, window.tMax, count)
        points = self.orbit(base, times)
        for _ in range(REFINE_PASSES):
            chords = np.linalg.norm(np.diff(points, axis=0), axis=1)
            long = np.nonzero(chords > window.maxStep)[0]
            if len(long) == 0:
                break
            mids = 0.5 * (times[long] + times[long + 1])
            times = np.sort(np.concatenate([times, mids]))
            points = self.orbit(base, times)
        return LeafSample(
            basePoint=base,
            times=times.tolist(),
            points=[tuple(q) for q in points.tolist()],
            window=window,
        )


class BandFlow(BaseFlow):
    """
    The flow of a band spec: exact on invariant bands and lines, closed form or
    adaptive integration on transition bands.
    """

    def __init__(self, spec: BandFlowSpec, settings: Optional[FlowSettings] = None):
        self.spec = validate_flow_spec(spec)
        self.settings = settings or FlowSettings()
        self._xs = np.array([line.x for line in spec.lines], dtype=float)
        self._dirs = np.array([line.dir for line in spec.lines], dtype=float)

    def field(self, p):
        return field_at(self.spec, (float(p[0]), float(p[1])))

    def _locate(self, x: np.ndarray):
        k = np.searchsorted(self._xs, x, side="left")
        if len(self._xs) == 0:
            return k, np.zeros_like(x, dtype=bool)
        clipped = np.minimum(k, len(self._xs) - 1)
        on_line = (k < len(self._xs)) & (self._xs[clipped] == x)
        return k, on_line

    def flow_map(self, t, points) -> np.ndarray:
        pts = _as_points(points)
        x, y, t = np.broadcast_arrays(pts[:, 0], pts[:, 1], np.asarray(t, dtype=float))
        x, y, t = x.astype(float), y.astype(float), t.astype(float)
        if not self.spec.lines:
            a, b = self.spec.translation
            return np.column_stack([x + a * t, y + b * t])

        out_x, out_y = x.copy(), y.copy()
        k, on_line = self._locate(x)
        if on_line.any():
            out_y[on_line] = y[on_line] + self._dirs[k[on_line]] * t[on_line]
        for j, band in enumerate(self.spec.bands):
            mask = (k == j) & ~on_line
            if not mask.any():
                continue
            if band.kind == "invariant":
                vx, vy = invariant_velocity(self.spec, j)
                out_x[mask] = x[mask] + vx * t[mask]
                out_y[mask] = y[mask] + vy * t[mask]
            elif self.settings.method == "integrate":
                for i in np.nonzero(mask)[0]:
                    out_x[i], out_y[i] = self._integrate(x[i], y[i], t[i])
            else:
                out_x[mask], out_y[mask] = self._transition_closed_form(j, x[mask], y[mask], t[mask])
        return np.column_stack([out_x, out_y])

    def _transition_closed_form(self, j: int, x, y, t):
        # u = (x - b_l)/(b_r - x) grows like exp(sign*L*t); work with z = log u
        b_l, b_r, d_l, d_r = band_bounds(self.spec, j)
        width = b_r - b_l
        rate = self.spec.bands[j].sign * width
        z0 = np.log(x - b_l) - np.log(b_r - x)
        z = z0 + rate * t
        new_x = b_l + width * expit(z)
        new_y = y + d_l * t + (d_r - d_l) / rate * (np.logaddexp(0.0, z) - np.logaddexp(0.0, z0))
        # phi^0 is the identity exactly, not up to rounding
        still = t == 0.0
        return np.where(still, x, new_x), np.where(still, y, new_y)

    def _integrate(self, x: float, y: float, t: float):
        if t == 0.0:
            return x, y

        def rhs(_, state):
            return self.field(state)

        sol = solve_ivp(rhs, (0.0, t), [x, y], method="RK45", rtol=self.settings.rtol, atol=self.settings.atol)
        if not sol.success:
            raise IntegratorError(f"integration failed: {sol.message}", point=(x, y), time=t)
        numeric_logger.debug(f"integrate: ({x}, {y}) t={t} steps={len(sol.t)}")
        return sol.y[0, -1], sol.y[1, -1]


FlowLike = Union[BandFlowSpec, BaseFlow]


def as_flow(flow: FlowLike, settings: Optional[FlowSettings] = None) -> BaseFlow:
    if isinstance(flow, BaseFlow):
        return flow
    return BandFlow(flow, settings)


def flow_map(spec: FlowLike, t: float, p, settings: Optional[FlowSettings] = None) -> np.ndarray:
    """
    Flows a single point (returns shape (2,)) or an (n, 2) array for time t.
    """
    out = as_flow(spec, settings).flow_map(t, p)
    return out[0] if np.ndim(p) == 1 else out


def time_one_map(spec: FlowLike, p, settings: Optional[FlowSettings] = None) -> np.ndarray:
    return flow_map(spec, 1.0, p, settings)


def sample_leaf(spec: FlowLike, p, window: Optional[SampleWindow] = None, settings: Optional[FlowSettings] = None) -> LeafSample:
    return as_flow(spec, settings).sample_leaf(p, window)
