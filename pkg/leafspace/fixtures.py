"""
Named leaf spaces and seeded generators of valid ones.
"""
import numpy as np

from leafspace.models import Edge, LeafSpaceGraph
from leafspace.validate import relabel

# Reeb flow: two closed half-planes joined by a transition band whose leaves
# converge to both boundary lines at the same end.
REEB = LeafSpaceGraph(
    vertices=["vL", "vR"],
    edges=[
        Edge(id="eL", endA=[], endB=["vL"]),
        Edge(id="eM", endA=[], endB=["vL", "vR"]),
        Edge(id="eR", endA=[], endB=["vR"]),
    ],
)

# Reflection of the Reeb flow about the y-axis, which is also its inverse.
MIRROR_REEB = LeafSpaceGraph(
    vertices=["vL", "vR"],
    edges=[
        Edge(id="eL", endA=[], endB=["vL"]),
        Edge(id="eM", endA=[], endB=["vR", "vL"]),
        Edge(id="eR", endA=[], endB=["vR"]),
    ],
)

TRANS = LeafSpaceGraph(vertices=[], edges=[Edge(id="e0")])

# Two Reeb bands sharing the middle line, which is its own 1-D region.
DOUBLE_REEB = LeafSpaceGraph(
    vertices=["v0", "v1", "v2"],
    edges=[
        Edge(id="e0", endA=[], endB=["v0"]),
        Edge(id="e1", endA=[], endB=["v0", "v1"]),
        Edge(id="e2", endA=["v1", "v2"], endB=[]),
        Edge(id="e3", endA=["v2"], endB=[]),
    ],
)

# Two Reeb bands separated by an invariant band: five edges, five regions.
CHAIN5 = LeafSpaceGraph(
    vertices=["v0", "v1", "v2", "v3"],
    edges=[
        Edge(id="e0", endA=[], endB=["v0"]),
        Edge(id="e1", endA=[], endB=["v0", "v1"]),
        Edge(id="e2", endA=["v1"], endB=["v2"]),
        Edge(id="e3", endA=["v2", "v3"], endB=[]),
        Edge(id="e4", endA=["v3"], endB=[]),
    ],
)

# Three first-order extreme edges (R1, R4, R5), one second-order (R2).
MIXED_EXTREME = LeafSpaceGraph(
    vertices=["a", "b", "c", "d"],
    edges=[
        Edge(id="R1", endA=["a"], endB=[]),
        Edge(id="R2", endA=[], endB=["a", "b"]),
        Edge(id="R3", endA=["b"], endB=["c", "d"]),
        Edge(id="R4", endA=["c"], endB=[]),
        Edge(id="R5", endA=["d"], endB=[]),
    ],
)

NAMED_LEAF_SPACES = {
    "reeb": REEB,
    "mirror-reeb": MIRROR_REEB,
    "translation": TRANS,
    "double-reeb": DOUBLE_REEB,
    "chain5": CHAIN5,
    "mixed-extreme": MIXED_EXTREME,
}


def random_leaf_space(rng: np.random.Generator, max_edges: int) -> LeafSpaceGraph:
    """
    Grows a random valid leaf space with at most max_edges edges.

    Every new vertex is inserted into an existing end list that ends up with
    at least two entries, and hangs a fresh edge off its other side.
    """
    target = int(rng.integers(1, max_edges + 1))
    if target == 2:
        target = 3 if max_edges >= 3 else 1
    ends = {"e0": ([], [])}
    vertices = []

    while len(ends) < target:
        room = target - len(ends)
        slots = [(e, side) for e in sorted(ends) for side in (0, 1) if room >= 2 or ends[e][side]]
        edge_id, side = slots[int(rng.integers(len(slots)))]
        end = ends[edge_id][side]
        count = 2 if not end else int(rng.integers(1, min(room, 3) + 1))
        for _ in range(count):
            vertex = f"v{len(vertices)}"
            vertices.append(vertex)
            end.insert(int(rng.integers(len(end) + 1)), vertex)
            fresh = ([vertex], []) if rng.integers(2) == 0 else ([], [vertex])
            ends[f"e{len(ends)}"] = fresh

    return LeafSpaceGraph(vertices=vertices, edges=[Edge(id=k, endA=a, endB=b) for k, (a, b) in ends.items()])


def shuffled_relabel(graph: LeafSpaceGraph, rng: np.random.Generator) -> LeafSpaceGraph:
    """
    Renames every id by a random permutation and shuffles the listing order.
    """
    edge_names = dict(zip(graph.edge_ids(), (f"x{i}" for i in rng.permutation(len(graph.edges)))))
    vertex_names = dict(zip(graph.vertices, (f"p{i}" for i in rng.permutation(len(graph.vertices)))))
    renamed = relabel(graph, edge_names, vertex_names)
    edges = [renamed.edges[i] for i in rng.permutation(len(renamed.edges))]
    vertices = [renamed.vertices[i] for i in rng.permutation(len(renamed.vertices))]
    return LeafSpaceGraph(vertices=vertices, edges=edges)
