from enum import Enum
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

Point = Tuple[float, float]


class Line(BaseModel):
    """
    A vertical boundary flowline x = const, traversed upward (dir=1) or downward (dir=-1).
    """
    model_config = ConfigDict(extra="forbid", frozen=True)

    x: float
    dir: Literal[1, -1]


class Band(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: Literal["invariant", "transition"]
    sign: Optional[Literal[1, -1]] = None

    @classmethod
    def invariant(cls) -> "Band":
        return cls(kind="invariant")

    @classmethod
    def transition(cls, sign: int) -> "Band":
        return cls(kind="transition", sign=sign)


class BandFlowSpec(BaseModel):
    """
    A plane flow made of vertical invariant bands and transition bands.

    With no lines the single invariant band translates by `translation`.
    """
    model_config = ConfigDict(extra="forbid", frozen=True)

    lines: List[Line] = Field(default_factory=list)
    bands: List[Band] = Field(default_factory=list)
    translation: Optional[Tuple[float, float]] = None


class FlowSettings(BaseModel):
    method: Literal["closed-form", "integrate"] = "closed-form"
    rtol: float = 1e-9
    atol: float = 1e-12
    sample_step: float = 0.01
    transport_tol: float = 1e-3
    burn_in: int = 3
    seed: int = 20240101


class SampleWindow(BaseModel):
    tMin: float = -2.0
    tMax: float = 2.0
    maxStep: float = 0.01


class LeafSample(BaseModel):
    basePoint: Point
    times: List[float]
    points: List[Point]
    window: SampleWindow


class TrivializationCoord(BaseModel):
    leafParam: float
    phase: float = Field(ge=0.0, lt=1.0)


class CodivergenceVerdict(str, Enum):
    CO_DIVERGENT_EVIDENCE = "CoDivergentEvidence"
    NOT_CO_DIVERGENT = "NotCoDivergent"


class CodivergenceResult(BaseModel):
    verdict: CodivergenceVerdict
    # iterate index witnessing that the curve keeps meeting K
    iterate: Optional[int] = None
    lastMeeting: Tuple[int, int] = (0, 0)


class Rectangle(BaseModel):
    xMin: float
    xMax: float
    yMin: float
    yMax: float
