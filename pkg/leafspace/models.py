from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field


class Edge(BaseModel):
    """
    The interior of a 2-D fundamental region, seen as an open interval of leaves.

    `endA` and `endB` list the branch points approached at each end of the
    interval; list order is the branch-point order at that end.
    """
    model_config = ConfigDict(extra="forbid", frozen=True)

    id: str
    endA: List[str] = Field(default_factory=list)
    endB: List[str] = Field(default_factory=list)

    def ends(self) -> Tuple[List[str], List[str]]:
        return self.endA, self.endB

    def boundary(self) -> List[str]:
        return list(self.endA) + list(self.endB)


class LeafSpaceGraph(BaseModel):
    """
    Finite model of an oriented, possibly non-Hausdorff, simply connected leaf space.
    """
    model_config = ConfigDict(extra="forbid", frozen=True)

    vertices: List[str] = Field(default_factory=list)
    edges: List[Edge] = Field(default_factory=list)

    def edge_ids(self) -> List[str]:
        return [e.id for e in self.edges]


class Violation(BaseModel):
    code: str
    message: str
    subject: Optional[str] = None


class Isomorphism(BaseModel):
    edgeMap: Dict[str, str]
    endFlip: Dict[str, bool]
    vertexMap: Dict[str, str]


class EdgeClass(str, Enum):
    NON_EXTREME = "NonExtreme"
    FIRST_ORDER = "FirstOrderExtreme"
    SECOND_ORDER = "SecondOrderExtreme"
    FINAL_POINT = "FinalPoint"


class StepKind(str, Enum):
    FIRST_ORDER = "FirstOrder"
    SECOND_ORDER = "SecondOrder"
    FINAL_POINT = "FinalPoint"


class ContractionStep(BaseModel):
    round: int = Field(ge=1)
    kind: StepKind
    collapsedEdge: str
    throughVertex: Optional[str] = None
    absorbingEdge: Optional[str] = None


class ContractionTrace(BaseModel):
    steps: List[ContractionStep] = Field(default_factory=list)
    # states[i] is the graph after steps[i]; intermediate states may break
    # the branch-point invariant
    states: List[LeafSpaceGraph] = Field(default_factory=list)


class Verdict(str, Enum):
    CONJUGATE_UP_TO_INVERSE = "ConjugateUpToInverse"
    NOT_CONJUGATE = "NotConjugate"


class EquivalenceResult(BaseModel):
    verdict: Verdict
    branch: Optional[str] = None
    witness: Optional[Isomorphism] = None
    regionCounts: Tuple[int, int]
    reason: str = ""
