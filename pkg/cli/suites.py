"""
Verification suites behind `verify SUITE`. Independent checks run in a thread
pool and aggregate to one pass/fail verdict.
"""
import asyncio
import logging
import math
from typing import Awaitable, Callable, Dict, List

import numpy as np

from cli.models import CheckResult, SuiteReport
from flows.bands import (
    CHAIN5_FLOW,
    DOUBLE_REEB_FLOW,
    REEB_FLOW,
    TRANS_FLOW,
    mirror_symmetric_band_spec,
    random_band_spec,
    reverse_flow_spec,
)
from flows.builder import build_leaf_space
from flows.flow import BandFlow
from flows.models import CodivergenceVerdict, FlowSettings, Rectangle
from flows.topology import codivergence_classes, codivergence_numeric, nonseparable_numeric, orbit_separation
from leafspace.isomorphism import decide_equivalence, is_isomorphic, same_graph
from leafspace.models import Verdict
from leafspace.validate import region_count, reverse_orientation
from planemaps.conjugation import leaf_transport_check, region_equivariance_check
from planemaps.identities import verify_affine_identities
from planemaps.maps import ReflectionY, Translation, rotation

logger = logging.getLogger("leafspace")

REEB_RECT = Rectangle(xMin=-2.0, xMax=1.0, yMin=-1.0, yMax=1.0)
TRANSPORT_FIXTURES = {"reeb": REEB_FLOW, "double-reeb": DOUBLE_REEB_FLOW, "chain5": CHAIN5_FLOW, "translation": TRANS_FLOW}
SYMBOLIC_FIXTURES = {"reeb": REEB_FLOW, "double-reeb": DOUBLE_REEB_FLOW, "chain5": CHAIN5_FLOW}


async def _gather(checks: List[Callable[[], CheckResult]]) -> List[CheckResult]:
    loop = asyncio.get_running_loop()
    return list(await asyncio.gather(*(loop.run_in_executor(None, check) for check in checks)))


def _report(suite: str, checks: List[CheckResult]) -> SuiteReport:
    passed = all(c.passed for c in checks)
    logger.info(f"verify {suite}: {sum(c.passed for c in checks)}/{len(checks)} checks passed")
    return SuiteReport(suite=suite, checks=checks, passed=passed)


def _nonzero(rng: np.random.Generator, size: int) -> np.ndarray:
    return rng.choice([-1.0, 1.0], size=size) * rng.uniform(0.5, 3.0, size=size)


async def affine_identities_suite(settings: FlowSettings, samples: int = 20) -> SuiteReport:
    rng = np.random.default_rng(settings.seed)
    cases = [(1.0, 2.0, 3.0, 4.0), (1.0, 0.0, 2.0, 3.0), (0.0, -2.0, 1.5, -0.5)]
    cases += [tuple(float(v) for v in _nonzero(rng, 4)) for _ in range(samples)]

    def check(case):
        def run() -> CheckResult:
            report = verify_affine_identities(*case)
            worst = max(report.maxError.values())
            return CheckResult(name=f"affine {case}", passed=report.passed, value=worst, detail=str(report.maxError))
        return run

    return _report("affine-identities", await _gather([check(c) for c in cases]))


async def group_law_suite(settings: FlowSettings, samples: int = 100) -> SuiteReport:
    rng = np.random.default_rng(settings.seed)
    flow = BandFlow(REEB_FLOW, settings)

    def group_law() -> CheckResult:
        s, t = rng.uniform(-3.0, 3.0, size=(2, samples))
        points = rng.uniform(-5.0, 5.0, size=(samples, 2))
        composed = flow.flow_map(s, flow.flow_map(t, points))
        direct = flow.flow_map(s + t, points)
        worst = float(np.max(np.linalg.norm(composed - direct, axis=1)))
        return CheckResult(name="phi_s o phi_t = phi_(s+t)", passed=worst < 1e-6, value=worst)

    def identity_at_zero() -> CheckResult:
        points = np.random.default_rng(settings.seed + 1).uniform(-5.0, 5.0, size=(samples, 2))
        exact = bool(np.array_equal(flow.flow_map(0.0, points), points))
        return CheckResult(name="phi_0 = id", passed=exact, value=0.0 if exact else 1.0)

    def separation() -> CheckResult:
        axis = np.linspace(-5.0, 5.0, 41)
        worst = min(orbit_separation(flow, (x, y), 20) for x in axis for y in axis)
        return CheckResult(name="min orbit separation on 41x41 grid", passed=worst > 0.05, value=worst)

    def closed_form_vs_integrated() -> CheckResult:
        points = np.random.default_rng(settings.seed + 2).uniform(-1.0, 1.0, size=(10, 2))
        integrated = BandFlow(REEB_FLOW, settings.model_copy(update={"method": "integrate"}))
        worst = float(np.max(np.linalg.norm(flow.flow_map(1.0, points) - integrated.flow_map(1.0, points), axis=1)))
        return CheckResult(name="closed form vs RK45", passed=worst < 1e-6, value=worst)

    checks = [group_law, identity_at_zero, separation, closed_form_vs_integrated]
    return _report("group-law", await _gather(checks))


async def transport_suite(settings: FlowSettings, points_per_fixture: int = 10) -> SuiteReport:
    rng = np.random.default_rng(settings.seed)
    maps = {"translation": Translation(5.0, 0.0), "reflection": ReflectionY(), "rotation": rotation(math.pi / 2.0)}
    bases = {name: [tuple(p) for p in rng.uniform(-3.0, 3.0, size=(points_per_fixture, 2))] for name in TRANSPORT_FIXTURES}

    def check(fixture: str, map_name: str):
        def run() -> CheckResult:
            report = leaf_transport_check(
                maps[map_name], TRANSPORT_FIXTURES[fixture], bases[fixture], tol=settings.transport_tol, settings=settings
            )
            return CheckResult(name=f"transport {fixture} by {map_name}", passed=report.passed, value=report.maxDistance)
        return run

    checks = [check(f, m) for f in TRANSPORT_FIXTURES for m in maps]
    return _report("transport", await _gather(checks))


def _shares_end(graph, u: str, w: str) -> bool:
    return any(u in end and w in end for edge in graph.edges for end in edge.ends())


async def codivergence_suite(settings: FlowSettings, iterations: int = 50) -> SuiteReport:
    def verdict(x, y, expected: CodivergenceVerdict):
        def run() -> CheckResult:
            result = codivergence_numeric(REEB_FLOW, x, y, None, iterations, REEB_RECT, settings)
            return CheckResult(name=f"reeb {x} ~ {y}", passed=result.verdict == expected, detail=result.verdict.value)
        return run

    def separability(a: float, b: float, expected: bool):
        def run() -> CheckResult:
            found = nonseparable_numeric(REEB_FLOW, a, b)
            return CheckResult(name=f"reeb nonseparable x={a} x={b}", passed=found == expected, detail=str(found))
        return run

    def topology_agrees(name: str):
        def run() -> CheckResult:
            spec = SYMBOLIC_FIXTURES[name]
            graph = build_leaf_space(spec)
            xs = [line.x for line in spec.lines]
            mismatches = [
                (i, j)
                for i in range(len(xs))
                for j in range(i + 1, len(xs))
                if nonseparable_numeric(spec, xs[i], xs[j]) != _shares_end(graph, f"v{i}", f"v{j}")
            ]
            classes = len(codivergence_classes(spec, iterations, settings))
            passed = not mismatches and classes == region_count(graph)
            return CheckResult(
                name=f"{name}: numeric topology matches leaf space",
                passed=passed,
                value=float(classes),
                detail=f"classes={classes} regions={region_count(graph)} mismatched pairs={mismatches}",
            )
        return run

    def equivariance(h, x, y):
        def run() -> CheckResult:
            report = region_equivariance_check(h, REEB_FLOW, [(x, y, None)], iterations, REEB_RECT, settings)
            return CheckResult(name=f"equivariance {h.to_dict()} {x} {y}", passed=report.passed)
        return run

    checks = [
        verdict((-2.0, 0.0), (-3.0, 5.0), CodivergenceVerdict.CO_DIVERGENT_EVIDENCE),
        verdict((-2.0, 0.0), (0.0, 0.0), CodivergenceVerdict.NOT_CO_DIVERGENT),
        separability(-1.0, 1.0, True),
        separability(-1.0, -2.0, False),
        equivariance(Translation(5.0, 0.0), (-2.0, 0.0), (0.0, 0.0)),
        equivariance(ReflectionY(), (-2.0, 0.0), (-3.0, 5.0)),
    ]
    checks += [topology_agrees(name) for name in SYMBOLIC_FIXTURES]
    return _report("codivergence", await _gather(checks))


async def reversal_symmetry_suite(settings: FlowSettings, samples: int = 25, max_lines: int = 7) -> SuiteReport:
    rng = np.random.default_rng(settings.seed)
    symmetric = [mirror_symmetric_band_spec(rng, max_lines) for _ in range(samples)]
    general = [random_band_spec(rng, max_lines) for _ in range(samples)]

    def reversible(index: int):
        def run() -> CheckResult:
            graph = build_leaf_space(symmetric[index])
            witness = is_isomorphic(graph, reverse_orientation(graph))
            return CheckResult(name=f"mirror-symmetric spec {index}: g ~ reverse(g)", passed=witness is not None)
        return run

    def inverse_flow(index: int):
        def run() -> CheckResult:
            spec = general[index]
            graph = build_leaf_space(spec)
            inverse = build_leaf_space(reverse_flow_spec(spec))
            decided = decide_equivalence(graph, reverse_orientation(graph))
            passed = (
                same_graph(inverse, reverse_orientation(graph))
                and region_count(inverse) == region_count(graph)
                and decided.verdict == Verdict.CONJUGATE_UP_TO_INVERSE
            )
            return CheckResult(name=f"random spec {index}: leaf space of f^-1 is reverse(g)", passed=passed, detail=decided.branch or "")
        return run

    checks = [reversible(i) for i in range(samples)] + [inverse_flow(i) for i in range(samples)]
    return _report("reversal-symmetry", await _gather(checks))


SUITE_MAP: Dict[str, Callable[[FlowSettings], Awaitable[SuiteReport]]] = {
    "affine-identities": affine_identities_suite,
    "group-law": group_law_suite,
    "transport": transport_suite,
    "codivergence": codivergence_suite,
    "reversal-symmetry": reversal_symmetry_suite,
}
