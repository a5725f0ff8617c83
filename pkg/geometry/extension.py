"""
Finite pieces of the extension graph.

A vertex is a cyclic parabolic ``rep·⟨v⟩·rep⁻¹``, stored as ``(v, rep)`` with
``rep`` gated modulo ``G_{st(v)}``. Two vertices are adjacent when their
subgroups commute.
"""

from dataclasses import dataclass
from typing import Optional

import networkx as nx
from loguru import logger

from errors import RaagError
from graphs.core import Graph, require_connected, star
from groups.parabolic import Parabolic, intersect_bounded, make_parabolic, member
from groups.words import GroupElement, commutator, conjugate_by, gate_right, generator, iter_ball, multiply


@dataclass(frozen=True)
class ExtVertex:
    base: int
    rep: GroupElement

    @property
    def graph(self) -> Graph:
        return self.rep.graph

    @property
    def generator(self) -> GroupElement:
        """The conjugated generator ``rep·v·rep⁻¹``."""
        return conjugate_by(generator(self.graph, self.base), self.rep)

    def __str__(self) -> str:
        return f'base={self.graph.vertices[self.base]} rep="{self.rep}"'

    def to_dict(self) -> dict:
        return {"base": self.graph.vertices[self.base], "rep": str(self.rep)}


@dataclass(frozen=True)
class ExtBall:
    """Vertices reachable with conjugators of length ≤ ``radius``, and the edges among them."""

    vertices: tuple[ExtVertex, ...]
    edges: tuple[tuple[ExtVertex, ExtVertex], ...]
    radius: int


def ext_vertex(g: Graph, v: int | str, conj: GroupElement) -> ExtVertex:
    i = g.vertex(v)
    return ExtVertex(i, gate_right(g, conj, star(g, i)))


def ext_adjacent(x: ExtVertex, y: ExtVertex) -> bool:
    """
    True iff the two cyclic subgroups commute. Equal vertices are not adjacent.

    Commuting conjugates of ``u`` and ``w`` force ``u`` and ``w`` to be
    adjacent in Γ, so other base pairs are rejected before any word reduction.
    """
    if x == y:
        return False
    g = x.graph
    if x.base == y.base or not g.adjacent(x.base, y.base):
        return False
    return commutator(x.generator, y.generator).is_identity


def _check_radius(radius: int) -> None:
    if radius < 0:
        raise RaagError(f"radius must be non-negative, got {radius}")


def ext_ball_vertices(g: Graph, radius: int) -> list[ExtVertex]:
    """Distinct vertices ``(v, c)`` over all conjugators ``c`` with ``|c| ≤ radius``, in discovery order."""
    require_connected(g)
    _check_radius(radius)
    seen: dict[ExtVertex, None] = {}
    for c in iter_ball(g, radius):
        for v in range(len(g)):
            seen.setdefault(ext_vertex(g, v, c))
    logger.info(f"extension ball of radius {radius}: {len(seen)} vertices")
    return list(seen)


def ext_ball(g: Graph, radius: int) -> ExtBall:
    vertices = ext_ball_vertices(g, radius)
    by_base: dict[int, list[ExtVertex]] = {}
    for x in vertices:
        by_base.setdefault(x.base, []).append(x)

    position = {x: i for i, x in enumerate(vertices)}
    edges = []
    for u, w in g.edges():
        for x in by_base.get(u, ()):
            for y in by_base.get(w, ()):
                if ext_adjacent(x, y):
                    edges.append((x, y) if position[x] < position[y] else (y, x))
    edges.sort(key=lambda e: (position[e[0]], position[e[1]]))
    logger.info(f"extension ball of radius {radius}: {len(edges)} edges")
    return ExtBall(tuple(vertices), tuple(edges), radius)


def translate(x: ExtVertex, h: GroupElement) -> ExtVertex:
    """``h·x``, the vertex of ``h·Z·h⁻¹``."""
    return ext_vertex(x.graph, x.base, multiply(x.graph, h, x.rep))


def stabilizer(x: ExtVertex) -> Parabolic:
    """Elements fixing ``x``: the centralizer ``rep·G_{st(v)}·rep⁻¹``."""
    return make_parabolic(x.graph, star(x.graph, x.base), x.rep)


def stabilizer_intersection(x: ExtVertex, y: ExtVertex, max_len: int) -> tuple[Parabolic, bool]:
    return intersect_bounded(stabilizer(x), stabilizer(y), max_len)


def common_fixed_vertices(
    x: ExtVertex, y: ExtVertex, radius: int, max_len: Optional[int] = None
) -> list[ExtVertex]:
    """
    Vertices of the radius-``radius`` ball fixed by all of ``Stab(x) ∩ Stab(y)``.

    A group element fixes ``u`` iff it commutes with the generator of ``u``,
    i.e. lies in ``Stab(u)``; it suffices to test the generators of the
    intersection. ``max_len`` bounds the conjugator search of the
    intersection when the stabilizers are not both standard.
    """
    if x == y:
        raise RaagError("common_fixed_vertices needs two distinct vertices")
    _check_radius(radius)
    g = x.graph
    h, complete = stabilizer_intersection(x, y, radius if max_len is None else max_len)
    if not complete:
        logger.warning(f"fixed vertices of {x} and {y} computed from an uncertified stabilizer intersection")
    gens = [conjugate_by(generator(g, v), h.rep) for v in sorted(h.ptype)]
    fixed = [u for u in ext_ball_vertices(g, radius) if all(member(stabilizer(u), z) for z in gens)]
    logger.debug(f"{len(fixed)} vertices fixed by {h}")
    return fixed


def ball_to_networkx(ball: ExtBall) -> nx.Graph:
    graph = nx.Graph()
    for x in ball.vertices:
        graph.add_node(x, **x.to_dict())
    graph.add_edges_from(ball.edges)
    return graph


def ball_to_json(ball: ExtBall) -> dict:
    position = {x: i for i, x in enumerate(ball.vertices)}
    return {
        "radius": ball.radius,
        "vertices": [x.to_dict() for x in ball.vertices],
        "edges": [[position[a], position[b]] for a, b in ball.edges],
    }


def ball_to_dot(ball: ExtBall) -> str:
    position = {x: i for i, x in enumerate(ball.vertices)}
    lines = ["graph extension_ball {"]
    for x, i in position.items():
        label = x.graph.vertices[x.base] if x.rep.is_identity else f"{x.graph.vertices[x.base]} @ {x.rep}"
        lines.append(f'    n{i} [label="{label}"];')
    for a, b in ball.edges:
        lines.append(f"    n{position[a]} -- n{position[b]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def distance_ball(ball: ExtBall, center: ExtVertex, d: int) -> list[ExtVertex]:
    """Vertices within graph distance ``d`` of ``center`` inside the materialized ball."""
    graph = ball_to_networkx(ball)
    if center not in graph:
        raise RaagError(f"{center} is not in the ball")
    return list(nx.ego_graph(graph, center, radius=d))
