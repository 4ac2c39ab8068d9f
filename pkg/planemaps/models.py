from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from flows.models import CodivergenceVerdict, Point


class AffineIdentityReport(BaseModel):
    """
    Max pointwise error of each affine identity over a sample grid.
    """
    a: float
    b: float
    c: float
    d: float
    maxError: Dict[str, float]
    # angle of the normalising rotation, when a or b is zero
    rotation: Optional[float] = None
    threshold: float = 1e-12
    passed: bool


class TransportEntry(BaseModel):
    basePoint: Point
    distance: float


class TransportReport(BaseModel):
    map: dict
    tolerance: float
    entries: List[TransportEntry] = Field(default_factory=list)
    maxDistance: float
    passed: bool


class EquivarianceEntry(BaseModel):
    x: Point
    y: Point
    base: CodivergenceVerdict
    conjugated: CodivergenceVerdict


class EquivarianceReport(BaseModel):
    map: dict
    entries: List[EquivarianceEntry] = Field(default_factory=list)
    mismatches: List[EquivarianceEntry] = Field(default_factory=list)
    passed: bool
