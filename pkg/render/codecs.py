"""
Text formats: leaf spaces (.leafspace.json), band flow specs (.flow.json) and
plane maps. Output is canonical, so serialize(parse(text)) reproduces
serialized text byte for byte.
"""
import json
import logging
from pathlib import Path
from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Discriminator, Field, Tag, ValidationError

from flows.bands import builtin_flow, validate_flow_spec
from flows.models import Band, BandFlowSpec, Line
from leafspace.errors import GraphValidationError, ParseError
from leafspace.models import LeafSpaceGraph
from leafspace.validate import validate
from planemaps.maps import (
    Antipodal,
    Compose,
    General2x2,
    Inverse,
    LinearDiag,
    PlaneMap,
    ReflectionY,
    Translation,
)

logger = logging.getLogger("leafspace")

INDENT = "  "


def _number(x: float) -> str:
    if isinstance(x, bool) or isinstance(x, int):
        return str(int(x))
    return format(float(x), ".17g")


def _inline(value: Any) -> str:
    if isinstance(value, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_inline(v)}" for k, v in value.items()) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_inline(v) for v in value) + "]"
    if isinstance(value, str):
        return json.dumps(value)
    if value is None:
        return "null"
    return _number(value)


def _block(record: Dict[str, Any]) -> str:
    """
    Top-level keys one per line; lists of records one record per line.
    """
    rows = []
    for key, value in record.items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            items = f",\n{INDENT * 2}".join(_inline(v) for v in value)
            rows.append(f"{INDENT}{json.dumps(key)}: [\n{INDENT * 2}{items}\n{INDENT}]")
        else:
            rows.append(f"{INDENT}{json.dumps(key)}: {_inline(value)}")
    return "{\n" + ",\n".join(rows) + "\n}\n"


def _position(text: str, index: int) -> Tuple[int, int]:
    line = text.count("\n", 0, index) + 1
    column = index - (text.rfind("\n", 0, index) + 1) + 1
    return line, column


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError("SYNTAX", e.msg, e.lineno, e.colno) from e


def read_utf8(path: Path) -> str:
    """
    Reads a file as UTF-8; a bad byte is an ENCODING error at its line and column.
    """
    data = path.read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        head = data[: e.start].decode("utf-8")
        line, column = _position(head, len(head))
        raise ParseError("ENCODING", f"{path.name}: byte 0x{data[e.start]:02x} is not valid UTF-8", line, column) from e


def _schema_error(text: str, error: ValidationError, what: str) -> ParseError:
    first = error.errors()[0]
    keys = [part for part in first["loc"] if isinstance(part, str)]
    line = column = 0
    if keys:
        index = text.find(json.dumps(keys[-1]))
        if index >= 0:
            line, column = _position(text, index)
    code = "UNKNOWN_KEY" if first["type"] == "extra_forbidden" else "SCHEMA"
    where = ".".join(str(part) for part in first["loc"])
    return ParseError(code, f"{what}: {where}: {first['msg']}", line, column)


def parse_leafspace(text: str) -> LeafSpaceGraph:
    """
    Parses and validates a leaf space file; GraphValidationError lists every violation.
    """
    data = _load_json(text)
    if not isinstance(data, dict):
        raise ParseError("SCHEMA", "a leaf space file holds a JSON object", 1, 1)
    try:
        graph = LeafSpaceGraph.model_validate(data)
    except ValidationError as e:
        raise _schema_error(text, e, "leaf space") from e
    violations = validate(graph)
    if violations:
        raise GraphValidationError(violations)
    return graph


def serialize_leafspace(graph: LeafSpaceGraph) -> str:
    return _block(
        {
            "vertices": list(graph.vertices),
            "edges": [{"id": e.id, "endA": list(e.endA), "endB": list(e.endB)} for e in graph.edges],
        }
    )


class TransitionBody(BaseModel):
    model_config = ConfigDict(extra="forbid")

    sign: Literal[1, -1]


class TransitionEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    transition: TransitionBody


def _band_tag(value: Any) -> str:
    return "invariant" if isinstance(value, str) else "transition"


# "invariant" or {"transition": {"sign": 1}}
BandEntry = Annotated[
    Union[Annotated[Literal["invariant"], Tag("invariant")], Annotated[TransitionEntry, Tag("transition")]],
    Discriminator(_band_tag),
]


class FlowSpecFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    lines: List[Line] = Field(default_factory=list)
    bands: List[BandEntry] = Field(default_factory=list)
    translation: Optional[Tuple[float, float]] = None

    def to_spec(self) -> BandFlowSpec:
        bands = [
            Band.invariant() if entry == "invariant" else Band.transition(entry.transition.sign)
            for entry in self.bands
        ]
        return BandFlowSpec(lines=self.lines, bands=bands, translation=self.translation)


def parse_flowspec(text: str) -> BandFlowSpec:
    """
    Parses a band flow spec: either a JSON record or a built-in name such as
    "reeb" or "translation:1,0".
    """
    stripped = text.strip()
    if not stripped.startswith("{"):
        spec = builtin_flow(stripped)
        if spec is None:
            raise ParseError("UNKNOWN_FLOW", f"no built-in flow named {stripped!r}", 1, 1)
        return spec
    data = _load_json(text)
    try:
        spec = FlowSpecFile.model_validate(data).to_spec()
    except ValidationError as e:
        raise _schema_error(text, e, "flow spec") from e
    return validate_flow_spec(spec)


def serialize_flowspec(spec: BandFlowSpec) -> str:
    """
    One compact line, e.g.
    {"lines":[{"x":-1.0,"dir":1},{"x":1.0,"dir":-1}],"bands":["invariant",{"transition":{"sign":1}},"invariant"]}
    """
    record: Dict[str, Any] = {
        "lines": [{"x": float(line.x), "dir": line.dir} for line in spec.lines],
        "bands": [b.kind if b.kind == "invariant" else {"transition": {"sign": b.sign}} for b in spec.bands],
    }
    if spec.translation is not None:
        record["translation"] = [float(c) for c in spec.translation]
    return json.dumps(record, separators=(",", ":")) + "\n"


def _pair(value: Any, key: str) -> List[float]:
    if not (isinstance(value, list) and len(value) == 2 and all(isinstance(v, (int, float)) for v in value)):
        raise ParseError("SCHEMA", f"{key!r} takes a list of two numbers")
    return [float(v) for v in value]


def planemap_from_dict(node: Any) -> PlaneMap:
    if not isinstance(node, dict) or len(node) != 1:
        raise ParseError("SCHEMA", f"a plane map node is an object with exactly one key, got {node!r}")
    (key, value), = node.items()
    if key == "translate":
        return Translation(*_pair(value, key))
    if key == "scale":
        return LinearDiag(*_pair(value, key))
    if key == "antipodal":
        return Antipodal()
    if key == "reflect_y":
        return ReflectionY()
    if key == "matrix":
        if not (isinstance(value, list) and len(value) == 2):
            raise ParseError("SCHEMA", "'matrix' takes two rows")
        return General2x2([_pair(row, key) for row in value])
    if key == "compose":
        if not isinstance(value, list):
            raise ParseError("SCHEMA", "'compose' takes a list of maps")
        return Compose([planemap_from_dict(child) for child in value])
    if key == "inverse":
        return Inverse(planemap_from_dict(value))
    raise ParseError("UNKNOWN_KEY", f"unknown plane map primitive {key!r}")


def parse_planemap(text: str) -> PlaneMap:
    data = _load_json(text)
    try:
        return planemap_from_dict(data)
    except ParseError as e:
        if e.line:
            raise
        raise ParseError(e.code, e.message, 1, 1) from e


def serialize_planemap(m: PlaneMap) -> str:
    return _inline(m.to_dict()) + "\n"
