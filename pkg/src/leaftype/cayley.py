"""Breadth-first Cayley balls of the deck group, with DOT and JSON export.

The deck group is the image of the representation. Vertices are canonical
element keys, the root is the identity, and the ball of radius N holds every
element expressible as the image of a word of length at most N in the
canonical generators (c_n excluded, since the relation determines it).
Edges are (v, gen, v * image(gen)); loops appear when a generator image
fixes a vertex, in particular for trivial images.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .targets import BudgetExceededError, Element, Representation

DEFAULT_VERTEX_BUDGET = 10**6


@dataclass
class CayleyBall:
    radius: int
    root: str
    distances: Dict[str, int]
    edges: List[Tuple[str, str, str]]  # (source key, generator id, target key)
    elements: Dict[str, Element] = field(repr=False, default_factory=dict)
    representation: Representation | None = field(repr=False, default=None)

    @property
    def vertex_count(self) -> int:
        return len(self.distances)

    def sorted_vertices(self) -> List[Tuple[str, int]]:
        return sorted(self.distances.items())

    def __contains__(self, key: str) -> bool:
        return key in self.distances

    def to_json_dict(self) -> dict:
        return {
            "radius": self.radius,
            "root": self.root,
            "vertices": [
                {"key": k, "distance": d} for k, d in self.sorted_vertices()
            ],
            "edges": [list(e) for e in sorted(self.edges)],
        }


def build_ball(
    rep: Representation, radius: int, vertex_budget: int = DEFAULT_VERTEX_BUDGET
) -> CayleyBall:
    """BFS ball of the deck group in the word metric of the canonical generators."""
    if radius < 0:
        raise ValueError("radius must be non-negative")
    gens = [(g, rep.image(g)) for g in rep.presentation.cayley_gens]
    steps = []
    for name, el in gens:
        if el.is_identity:
            continue  # stepping by a trivial image never leaves the vertex
        steps.append(el)
        steps.append(el.inverse())
    root = rep.identity()
    distances: Dict[str, int] = {root.key(): 0}
    elements: Dict[str, Element] = {root.key(): root}
    queue = deque([(root, 0)])
    while queue:
        v, d = queue.popleft()
        if d == radius:
            continue
        for el in steps:
            w = v.compose(el)
            k = w.key()
            if k not in distances:
                if len(distances) >= vertex_budget:
                    raise BudgetExceededError("Cayley ball vertex count", vertex_budget)
                distances[k] = d + 1
                elements[k] = w
                queue.append((w, d + 1))
    edges: List[Tuple[str, str, str]] = []
    for k in sorted(distances):
        v = elements[k]
        for name, el in gens:
            if el.is_identity:
                edges.append((k, name, k))
                continue
            w = v.compose(el)
            if w.key() in distances:
                edges.append((k, name, w.key()))
    edges.sort()
    return CayleyBall(radius, root.key(), distances, edges, elements, rep)


def export_dot(ball: CayleyBall) -> str:
    """DOT text with vertices labeled by distance, edges by generator.

    Node ids follow the lexicographic order of the canonical element keys,
    so output is byte-reproducible for a fixed ball.
    """
    order = {k: i for i, (k, _) in enumerate(ball.sorted_vertices())}
    lines = ["digraph cayley_ball {"]
    for k, dist in ball.sorted_vertices():
        lines.append('  "v%d" [label="%d"]; // %s' % (order[k], dist, k))
    for src, gen, dst in sorted(ball.edges):
        lines.append('  "v%d" -> "v%d" [label="%s"];' % (order[src], order[dst], gen))
    lines.append("}")
    return "\n".join(lines) + "\n"
