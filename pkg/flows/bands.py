import logging
import re
from typing import Tuple

import numpy as np

from flows.models import Band, BandFlowSpec, Line, Point
from leafspace.errors import FlowSpecError
from utils.finders import find_band_index, find_line_index

logger = logging.getLogger("leafspace")


def validate_flow_spec(spec: BandFlowSpec) -> BandFlowSpec:
    """
    Checks the band axioms; raises FlowSpecError with a machine-readable code.
    """
    if len(spec.bands) != len(spec.lines) + 1:
        raise FlowSpecError("BAND_COUNT", f"{len(spec.lines)} lines need {len(spec.lines) + 1} bands, got {len(spec.bands)}")
    xs = [line.x for line in spec.lines]
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise FlowSpecError("ASCENDING", f"line abscissae must be strictly ascending: {xs}")
    for k, band in enumerate(spec.bands):
        if (band.kind == "transition") != (band.sign is not None):
            raise FlowSpecError("BAD_BAND", f"band {k}: a transition band needs a sign, an invariant band takes none")
    if spec.bands[0].kind == "transition" or spec.bands[-1].kind == "transition":
        raise FlowSpecError("OUTER_TRANSITION", "the outermost bands must be invariant")
    for k in range(1, len(spec.bands) - 1):
        left, right = spec.lines[k - 1], spec.lines[k]
        if spec.bands[k].kind == "invariant" and left.dir != right.dir:
            raise FlowSpecError("DIR_MISMATCH", f"invariant band {k} between lines of different direction")
    if spec.lines:
        if spec.translation is not None:
            raise FlowSpecError("BAD_TRANSLATION", "a translation vector is only allowed without lines")
    elif spec.translation is None or spec.translation == (0.0, 0.0):
        raise FlowSpecError("BAD_TRANSLATION", "a spec without lines needs a non-zero translation vector")
    return spec


def band_bounds(spec: BandFlowSpec, k: int) -> Tuple[float, float, int, int]:
    """
    Returns (b_l, b_r, d_l, d_r) of an interior band.
    """
    left, right = spec.lines[k - 1], spec.lines[k]
    return left.x, right.x, left.dir, right.dir


def invariant_velocity(spec: BandFlowSpec, k: int) -> Tuple[float, float]:
    if not spec.lines:
        return spec.translation
    line = spec.lines[k - 1] if k > 0 else spec.lines[0]
    return 0.0, float(line.dir)


def field_at(spec: BandFlowSpec, p: Point) -> Tuple[float, float]:
    """
    Velocity of the band flow at p. Never zero for a valid spec.
    """
    x = p[0]
    line = find_line_index(spec, x)
    if line is not None:
        return 0.0, float(spec.lines[line].dir)
    k = find_band_index(spec, x)
    band = spec.bands[k]
    if band.kind == "invariant":
        return invariant_velocity(spec, k)
    b_l, b_r, d_l, d_r = band_bounds(spec, k)
    w = (x - b_l) / (b_r - b_l)
    return band.sign * (x - b_l) * (b_r - x), d_l * (1.0 - w) + d_r * w


def reverse_flow_spec(spec: BandFlowSpec) -> BandFlowSpec:
    """
    The band spec of the inverse flow: every direction, sign and translation negated.
    """
    return BandFlowSpec(
        lines=[Line(x=line.x, dir=-line.dir) for line in spec.lines],
        bands=[band if band.kind == "invariant" else Band.transition(-band.sign) for band in spec.bands],
        translation=None if spec.translation is None else (-spec.translation[0], -spec.translation[1]),
    )


def translation_flow(a: float, b: float) -> BandFlowSpec:
    return validate_flow_spec(BandFlowSpec(lines=[], bands=[Band.invariant()], translation=(float(a), float(b))))


def _spec(lines, bands) -> BandFlowSpec:
    return validate_flow_spec(BandFlowSpec(lines=[Line(x=x, dir=d) for x, d in lines], bands=bands))


INV = Band.invariant()

# restriction to x <= -1 is T(0,1), to x >= 1 is T(0,-1)
REEB_FLOW = _spec([(-1.0, 1), (1.0, -1)], [INV, Band.transition(1), INV])
MIRROR_REEB_FLOW = _spec([(-1.0, -1), (1.0, 1)], [INV, Band.transition(-1), INV])
EQUAL_DIR_FLOW = _spec([(-1.0, 1), (1.0, 1)], [INV, Band.transition(1), INV])
DOUBLE_REEB_FLOW = _spec([(-2.0, 1), (0.0, -1), (2.0, 1)], [INV, Band.transition(1), Band.transition(1), INV])
CHAIN5_FLOW = _spec(
    [(-3.0, 1), (-1.0, -1), (1.0, -1), (3.0, 1)],
    [INV, Band.transition(1), INV, Band.transition(1), INV],
)
TRANS_FLOW = translation_flow(1.0, 0.0)

NAMED_FLOWS = {
    "reeb": REEB_FLOW,
    "mirror-reeb": MIRROR_REEB_FLOW,
    "equal-dir": EQUAL_DIR_FLOW,
    "double-reeb": DOUBLE_REEB_FLOW,
    "chain5": CHAIN5_FLOW,
    "translation": TRANS_FLOW,
}

_TRANSLATION_NAME = re.compile(r"^translation:\s*([-+0-9.eE]+)\s*,\s*([-+0-9.eE]+)$")


def builtin_flow(name: str):
    """
    Resolves a built-in flow name ("reeb", "translation:a,b", ...); None if unknown.
    """
    if name in NAMED_FLOWS:
        return NAMED_FLOWS[name]
    match = _TRANSLATION_NAME.match(name)
    if match:
        return translation_flow(float(match.group(1)), float(match.group(2)))
    return None


def random_band_spec(rng: np.random.Generator, max_lines: int) -> BandFlowSpec:
    """
    Draws a random valid band spec with up to max_lines lines at integer abscissae spaced 2 apart.
    """
    count = int(rng.integers(0, max_lines + 1))
    if count == 0:
        return translation_flow(*(rng.choice([-1.0, 1.0], size=2) * rng.uniform(0.5, 2.0, size=2)))
    dirs = [int(d) for d in rng.choice([-1, 1], size=count)]
    lines = [(2.0 * i - count + 1.0, d) for i, d in enumerate(dirs)]
    bands = [INV]
    for left, right in zip(dirs, dirs[1:]):
        if left == right and rng.integers(2) == 0:
            bands.append(INV)
        else:
            bands.append(Band.transition(int(rng.choice([-1, 1]))))
    bands.append(INV)
    spec = _spec(lines, bands)
    logger.debug(f"random_band_spec: {spec.model_dump_json()}")
    return spec


def mirror_symmetric_band_spec(rng: np.random.Generator, max_lines: int) -> BandFlowSpec:
    """
    Draws a random spec that is unchanged by x -> -x (same dirs, same signs).

    For such a spec the antipodal map conjugates the flow to its inverse.
    """
    count = int(rng.integers(1, max_lines + 1))
    half = [int(d) for d in rng.choice([-1, 1], size=(count + 1) // 2)]
    dirs = half + half[: count // 2][::-1]
    lines = [(2.0 * i - count + 1.0, d) for i, d in enumerate(dirs)]
    bands = [INV] * (count + 1)
    for k in range(1, count // 2 + 1):
        if dirs[k - 1] == dirs[k] and rng.integers(2) == 0:
            band = INV
        else:
            band = Band.transition(int(rng.choice([-1, 1])))
        bands[k] = bands[count - k] = band
    spec = _spec(lines, bands)
    logger.debug(f"mirror_symmetric_band_spec: {spec.model_dump_json()}")
    return spec
