from bisect import bisect_left
from typing import List, Optional, Tuple

from leafspace.models import LeafSpaceGraph


def find_attachments(graph: LeafSpaceGraph, vertex: str) -> List[Tuple[str, str, int]]:
    """
    Finds every place a vertex is attached, as (edge id, "A" | "B", index in the end list).
    """
    found = []
    for edge in graph.edges:
        for end_name, end in (("A", edge.endA), ("B", edge.endB)):
            for index, v in enumerate(end):
                if v == vertex:
                    found.append((edge.id, end_name, index))
    return found


def find_line_index(spec, x: float, tol: float = 0.0) -> Optional[int]:
    """
    Finds the boundary line of a band spec at abscissa x.
    """
    for index, line in enumerate(spec.lines):
        if abs(line.x - x) <= tol:
            return index
    return None


def find_band_index(spec, x: float) -> Optional[int]:
    """
    Finds the band containing x in its interior; None when x lies on a line.

    Band k lies between line k-1 and line k.
    """
    xs = [line.x for line in spec.lines]
    k = bisect_left(xs, x)
    if k < len(xs) and xs[k] == x:
        return None
    return k
