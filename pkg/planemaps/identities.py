"""
Numerical check of the affine identities behind the reversibility of
translations: conjugacy of any two translations by a diagonal map, reversal by
the antipodal map, and the antipodal map being an involution.
"""
import logging
import math
from typing import Optional, Tuple

import numpy as np

from leafspace.errors import PlaneMapError
from planemaps.maps import Antipodal, Compose, PlaneMap, Translation, affine_conjugator, rotation
from planemaps.models import AffineIdentityReport

logger = logging.getLogger("leafspace")

IDENTITY_THRESHOLD = 1e-12
# normalising rotations tried when a component vanishes: k * pi / 7
ROTATION_STEPS = 13


def default_grid(size: int = 10, half_width: float = 5.0) -> np.ndarray:
    axis = np.linspace(-half_width, half_width, size)
    xs, ys = np.meshgrid(axis, axis)
    return np.column_stack([xs.ravel(), ys.ravel()])


def _max_error(lhs: PlaneMap, rhs: PlaneMap, grid: np.ndarray) -> float:
    return float(np.max(np.linalg.norm(lhs.apply(grid) - rhs.apply(grid), axis=1)))


def _normalising_angle(a: float, b: float, c: float, d: float) -> float:
    best, best_theta = 0.0, 0.0
    for k in range(1, ROTATION_STEPS + 1):
        theta = k * math.pi / 7.0
        smallest = float(np.min(np.abs(rotation(theta).apply([[a, b], [c, d]]))))
        if smallest > best:
            best, best_theta = smallest, theta
    if best < 1e-6:
        raise PlaneMapError(f"no rotation makes ({a}, {b}) and ({c}, {d}) generic")
    return best_theta


def conjugator(a: float, b: float, c: float, d: float) -> Tuple[PlaneMap, Optional[float]]:
    """
    A linear map H with H^-1 T_{a,b} H = T_{c,d}; rotated into general position
    first when a or b is zero.
    """
    if c == 0 or d == 0:
        raise PlaneMapError(f"target translation ({c}, {d}) must have non-zero components")
    if a == 0 and b == 0:
        raise PlaneMapError("T_{0,0} is the identity and is conjugate to no translation")
    if a != 0 and b != 0:
        return affine_conjugator(a, b, c, d), None

    theta = _normalising_angle(a, b, c, d)
    rot = rotation(theta)
    (a2, b2), (c2, d2) = rot.apply([[a, b], [c, d]])
    return Compose([rot.inverse(), affine_conjugator(a2, b2, c2, d2), rot]), theta


def verify_affine_identities(a: float, b: float, c: float, d: float, grid: Optional[np.ndarray] = None) -> AffineIdentityReport:
    grid = default_grid() if grid is None else np.atleast_2d(np.asarray(grid, dtype=float))
    h, theta = conjugator(a, b, c, d)
    shift = Translation(a, b)
    flip = Antipodal()

    errors = {
        "conjugacy": _max_error(Compose([h.inverse(), shift, h]), Translation(c, d), grid),
        "reversal": _max_error(Compose([flip, shift, flip.inverse()]), shift.inverse(), grid),
        "involution": float(np.max(np.linalg.norm(Compose([flip, flip]).apply(grid) - grid, axis=1))),
    }
    passed = all(err < IDENTITY_THRESHOLD for err in errors.values())
    logger.info(f"verify_affine_identities: ({a}, {b}) -> ({c}, {d}) errors={errors} passed={passed}")
    return AffineIdentityReport(a=a, b=b, c=c, d=d, maxError=errors, rotation=theta, threshold=IDENTITY_THRESHOLD, passed=passed)
