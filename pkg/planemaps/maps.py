"""
Explicit plane homeomorphisms as expression trees over affine primitives.
"""
import math
from typing import List, Sequence

import numpy as np

from leafspace.errors import PlaneMapError


def _points(p) -> np.ndarray:
    return np.atleast_2d(np.asarray(p, dtype=float))


class PlaneMap:
    """
    A node of a plane map expression. `apply` takes one point or an (n, 2) array.
    """

    def apply(self, points) -> np.ndarray:
        raise NotImplementedError

    def inverse(self) -> "PlaneMap":
        raise NotImplementedError

    def orientation(self) -> int:
        """
        +1 for orientation-preserving maps, -1 for reversing ones.
        """
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError

    def __call__(self, points) -> np.ndarray:
        return self.apply(points)

    def __matmul__(self, other: "PlaneMap") -> "PlaneMap":
        return Compose([self, other])

    def __eq__(self, other) -> bool:
        return isinstance(other, PlaneMap) and self.to_dict() == other.to_dict()

    def __hash__(self) -> int:
        return hash(repr(self.to_dict()))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_dict()})"


class Translation(PlaneMap):
    def __init__(self, a: float, b: float):
        self.a, self.b = float(a), float(b)

    def apply(self, points) -> np.ndarray:
        return _points(points) + np.array([self.a, self.b])

    def inverse(self) -> "Translation":
        return Translation(-self.a, -self.b)

    def orientation(self) -> int:
        return 1

    def to_dict(self) -> dict:
        return {"translate": [self.a, self.b]}


class LinearDiag(PlaneMap):
    """
    (x, y) -> (u x, v y).
    """

    def __init__(self, u: float, v: float):
        if u == 0 or v == 0:
            raise PlaneMapError(f"diagonal map with zero factor ({u}, {v}) is not invertible")
        self.u, self.v = float(u), float(v)

    def apply(self, points) -> np.ndarray:
        return _points(points) * np.array([self.u, self.v])

    def inverse(self) -> "LinearDiag":
        return LinearDiag(1.0 / self.u, 1.0 / self.v)

    def orientation(self) -> int:
        return 1 if self.u * self.v > 0 else -1

    def to_dict(self) -> dict:
        return {"scale": [self.u, self.v]}


class Antipodal(PlaneMap):
    def apply(self, points) -> np.ndarray:
        return -_points(points)

    def inverse(self) -> "Antipodal":
        return self

    def orientation(self) -> int:
        return 1

    def to_dict(self) -> dict:
        return {"antipodal": {}}


class ReflectionY(PlaneMap):
    """
    Reflection in the y-axis, (x, y) -> (-x, y).
    """

    def apply(self, points) -> np.ndarray:
        return _points(points) * np.array([-1.0, 1.0])

    def inverse(self) -> "ReflectionY":
        return self

    def orientation(self) -> int:
        return -1

    def to_dict(self) -> dict:
        return {"reflect_y": {}}


class General2x2(PlaneMap):
    def __init__(self, matrix):
        self.matrix = np.asarray(matrix, dtype=float)
        if self.matrix.shape != (2, 2):
            raise PlaneMapError(f"expected a 2x2 matrix, got shape {self.matrix.shape}")
        self.det = float(np.linalg.det(self.matrix))
        if not math.isfinite(self.det) or abs(self.det) < 1e-12:
            raise PlaneMapError(f"matrix {self.matrix.tolist()} is not invertible")

    def apply(self, points) -> np.ndarray:
        return _points(points) @ self.matrix.T

    def inverse(self) -> "General2x2":
        return General2x2(np.linalg.inv(self.matrix))

    def orientation(self) -> int:
        return 1 if self.det > 0 else -1

    def to_dict(self) -> dict:
        return {"matrix": self.matrix.tolist()}


class Compose(PlaneMap):
    """
    m1 o m2 o ... : the last map is applied first.
    """

    def __init__(self, maps: Sequence[PlaneMap]):
        if not maps:
            raise PlaneMapError("compose needs at least one map")
        self.maps: List[PlaneMap] = list(maps)

    def apply(self, points) -> np.ndarray:
        out = _points(points)
        for m in reversed(self.maps):
            out = m.apply(out)
        return out

    def inverse(self) -> "Compose":
        return Compose([m.inverse() for m in reversed(self.maps)])

    def orientation(self) -> int:
        return math.prod(m.orientation() for m in self.maps)

    def to_dict(self) -> dict:
        return {"compose": [m.to_dict() for m in self.maps]}


class Inverse(PlaneMap):
    def __init__(self, node: PlaneMap):
        self.node = node
        self._inverse = node.inverse()

    def apply(self, points) -> np.ndarray:
        return self._inverse.apply(points)

    def inverse(self) -> PlaneMap:
        return self.node

    def orientation(self) -> int:
        return self.node.orientation()

    def to_dict(self) -> dict:
        return {"inverse": self.node.to_dict()}


IDENTITY = LinearDiag(1.0, 1.0)


def eval_map(m: PlaneMap, p) -> np.ndarray:
    """
    Evaluates m at a single point (shape (2,)) or at an (n, 2) array.
    """
    out = m.apply(p)
    return out[0] if np.ndim(p) == 1 else out


def rotation(theta: float) -> General2x2:
    c, s = math.cos(theta), math.sin(theta)
    return General2x2([[c, -s], [s, c]])


def affine_conjugator(a: float, b: float, c: float, d: float) -> LinearDiag:
    """
    h(x, y) = (a x / c, b y / d), which conjugates T_{a,b} to T_{c,d}.
    """
    if c == 0 or d == 0:
        raise PlaneMapError(f"conjugator needs non-zero target components, got ({c}, {d})")
    return LinearDiag(a / c, b / d)
