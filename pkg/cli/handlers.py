"""
Subcommand implementations. Each returns a CommandResult; errors propagate to
the dispatcher, which maps them to exit codes.
"""
import logging
from pathlib import Path
from typing import List, Optional

from cli.models import CommandResult
from cli.suites import SUITE_MAP
from flows.builder import build_leaf_space
from flows.models import BandFlowSpec, FlowSettings, Rectangle
from leafspace.contraction import collapse_sequence
from leafspace.errors import GraphValidationError, ParseError
from leafspace.fixtures import NAMED_LEAF_SPACES
from leafspace.isomorphism import decide_equivalence
from leafspace.models import LeafSpaceGraph, Verdict
from leafspace.validate import region_count, reverse_orientation
from render.codecs import parse_flowspec, parse_leafspace, read_utf8, serialize_leafspace
from render.svg import render_collapse_frames, render_foliation, render_leafspace

logger = logging.getLogger("leafspace")


def load_leafspace(source: str) -> LeafSpaceGraph:
    """
    Reads a leaf space file, or resolves a built-in name such as "reeb".
    """
    path = Path(source)
    if path.is_file():
        return parse_leafspace(read_utf8(path))
    if source in NAMED_LEAF_SPACES:
        return NAMED_LEAF_SPACES[source]
    raise ParseError("NOT_FOUND", f"no leaf space file or built-in named {source!r}")


def load_flowspec(source: str) -> BandFlowSpec:
    path = Path(source)
    if path.is_file():
        return parse_flowspec(read_utf8(path))
    return parse_flowspec(source)


def _emit(text: str, output: Optional[str]) -> str:
    if output is None:
        return text
    Path(output).write_text(text, encoding="utf-8")
    return f"wrote {output}\n"


async def validate_file(file: str) -> CommandResult:
    path = Path(file)
    try:
        graph = load_leafspace(file)
    except GraphValidationError as e:
        lines = [f"{v.code}: {v.message}" for v in e.violations]
        return CommandResult(
            exitCode=3,
            text="invalid\n" + "\n".join(lines) + "\n",
            record={"valid": False, "violations": [v.model_dump() for v in e.violations]},
        )
    summary = {"valid": True, "edges": len(graph.edges), "vertices": len(graph.vertices), "regions": region_count(graph)}
    logger.info(f"validate: {path.name} {summary}")
    return CommandResult(
        text=f"valid: {summary['edges']} edges, {summary['vertices']} vertices, {summary['regions']} regions\n",
        record=summary,
    )


async def compare(a: str, b: str) -> CommandResult:
    result = decide_equivalence(load_leafspace(a), load_leafspace(b))
    if result.verdict == Verdict.CONJUGATE_UP_TO_INVERSE:
        w = result.witness
        text = (
            f"{result.verdict.value} ({result.branch})\n"
            f"  edges:    {w.edgeMap}\n"
            f"  flips:    {w.endFlip}\n"
            f"  vertices: {w.vertexMap}\n"
        )
        return CommandResult(exitCode=0, text=text, record=result.model_dump(mode="json"))
    return CommandResult(exitCode=1, text=f"{result.verdict.value} ({result.reason})\n", record=result.model_dump(mode="json"))


async def collapse(file: str, frames: Optional[str] = None) -> CommandResult:
    trace = collapse_sequence(load_leafspace(file))
    rows = [("round", "kind", "edge", "via", "onto")]
    rows += [(str(s.round), s.kind.value, s.collapsedEdge, s.throughVertex or "-", s.absorbingEdge or "-") for s in trace.steps]
    widths = [max(len(row[i]) for row in rows) for i in range(5)]
    text = "".join("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() + "\n" for row in rows)
    if frames is not None:
        directory = Path(frames)
        directory.mkdir(parents=True, exist_ok=True)
        for index, svg in enumerate(render_collapse_frames(trace), start=1):
            (directory / f"frame_{index:03d}.svg").write_text(svg, encoding="utf-8")
        text += f"wrote {len(trace.steps)} frames to {frames}\n"
    return CommandResult(text=text, record={"steps": [s.model_dump(mode="json") for s in trace.steps]})


async def build(flowspec: str, output: Optional[str] = None) -> CommandResult:
    graph = build_leaf_space(load_flowspec(flowspec))
    text = serialize_leafspace(graph)
    return CommandResult(text=_emit(text, output), record=graph.model_dump())


async def reverse(file: str, output: Optional[str] = None) -> CommandResult:
    graph = reverse_orientation(load_leafspace(file))
    return CommandResult(text=_emit(serialize_leafspace(graph), output), record=graph.model_dump())


async def count_regions(file: str) -> CommandResult:
    count = region_count(load_leafspace(file))
    return CommandResult(text=f"{count}\n", record={"regions": count})


async def render_foliation_command(
    flowspec: str,
    region: List[float],
    density: int,
    output: Optional[str] = None,
    settings: Optional[FlowSettings] = None,
) -> CommandResult:
    x_min, x_max, y_min, y_max = region
    rect = Rectangle(xMin=x_min, xMax=x_max, yMin=y_min, yMax=y_max)
    svg = render_foliation(load_flowspec(flowspec), rect, density, settings)
    return CommandResult(text=_emit(svg, output), record={"svg": svg})


async def render_leafspace_command(file: str, output: Optional[str] = None) -> CommandResult:
    svg = render_leafspace(load_leafspace(file))
    return CommandResult(text=_emit(svg, output), record={"svg": svg})


async def verify(suite: str, settings: Optional[FlowSettings] = None) -> CommandResult:
    if suite not in SUITE_MAP:
        raise ParseError("UNKNOWN_SUITE", f"unknown suite {suite!r}; choose from {', '.join(SUITE_MAP)}")
    report = await SUITE_MAP[suite](settings or FlowSettings())
    lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}" + (f"  ({c.value:.3e})" if c.value is not None else "") for c in report.checks]
    lines.append(f"{suite}: {'passed' if report.passed else 'FAILED'}")
    return CommandResult(exitCode=0 if report.passed else 1, text="\n".join(lines) + "\n", record=report.model_dump())
