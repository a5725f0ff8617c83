"""Finite simple graphs and the graph-level predicates used throughout."""

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Optional

import networkx as nx
from loguru import logger

from errors import DisconnectedGraphError, RaagError, UnknownVertexError

# A vertex set is always read as the full (induced) subgraph on those indices.
VertexSet = frozenset[int]

Vertex = int | str


@dataclass(frozen=True)
class Graph:
    """
    A finite simple graph with ordered vertex names.

    The order of ``vertices`` is the generator order used by normal forms.
    ``adjacency[i]`` holds the indices adjacent to vertex ``i``.
    """

    vertices: tuple[str, ...]
    adjacency: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise RaagError("duplicate vertex names")
        if len(self.adjacency) != len(self.vertices):
            raise RaagError("adjacency size does not match vertex count")
        for i, nbrs in enumerate(self.adjacency):
            if i in nbrs:
                raise RaagError(f"self-loop at {self.vertices[i]}")
            for j in nbrs:
                if not 0 <= j < len(self.vertices) or i not in self.adjacency[j]:
                    raise RaagError("adjacency is not symmetric")
        # graphs are hashed constantly through group elements; cache it
        object.__setattr__(self, "_hash", hash((self.vertices, self.adjacency)))

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"Graph({len(self.vertices)} vertices, {self.edge_count} edges)"

    @classmethod
    def from_edges(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str]]) -> "Graph":
        names = tuple(vertices)
        index = {name: i for i, name in enumerate(names)}
        nbrs: list[set[int]] = [set() for _ in names]
        for u, v in edges:
            try:
                i, j = index[u], index[v]
            except KeyError as e:
                raise UnknownVertexError(f"unknown vertex {e.args[0]!r}") from None
            if i == j:
                raise RaagError(f"self-loop at {u}")
            nbrs[i].add(j)
            nbrs[j].add(i)
        return cls(names, tuple(frozenset(s) for s in nbrs))

    @cached_property
    def index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.vertices)}

    @cached_property
    def all_vertices(self) -> VertexSet:
        return frozenset(range(len(self.vertices)))

    @cached_property
    def non_commuters(self) -> tuple[tuple[int, ...], ...]:
        """For each generator, the other generators it does not commute with."""
        n = len(self.vertices)
        return tuple(
            tuple(j for j in range(n) if j != i and j not in self.adjacency[i])
            for i in range(n)
        )

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, nbrs in enumerate(self.adjacency) for j in sorted(nbrs) if i < j]

    def vertex(self, v: Vertex) -> int:
        """Resolve a vertex name or index to an index."""
        if isinstance(v, int):
            if not 0 <= v < len(self.vertices):
                raise UnknownVertexError(f"vertex index {v} out of range")
            return v
        try:
            return self.index[v]
        except KeyError:
            raise UnknownVertexError(f"unknown vertex {v!r}") from None

    def vertex_set(self, vs: Iterable[Vertex]) -> VertexSet:
        return frozenset(self.vertex(v) for v in vs)

    def names(self, s: Iterable[int]) -> list[str]:
        """Vertex names of ``s`` in generator order."""
        return [self.vertices[i] for i in sorted(s)]

    def adjacent(self, i: int, j: int) -> bool:
        return j in self.adjacency[i]

    def commutes(self, i: int, j: int) -> bool:
        return i == j or j in self.adjacency[i]

    @cached_property
    def nx_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(len(self.vertices)))
        graph.add_edges_from(self.edges())
        return graph


class Verdict(NamedTuple):
    """A boolean answer together with the vertex names that witness it."""

    value: bool
    witness: Optional[tuple[str, ...]] = None

    def __bool__(self) -> bool:
        return self.value


@dataclass(frozen=True)
class JoinDecomposition:
    """de Rham decomposition: a clique factor plus irreducible join factors."""

    clique_factor: VertexSet
    irreducible_factors: tuple[VertexSet, ...]

    @property
    def parts(self) -> tuple[VertexSet, ...]:
        """All join sides, the clique factor split into singletons."""
        singletons = tuple(frozenset([v]) for v in sorted(self.clique_factor))
        return singletons + self.irreducible_factors


def _check_subset(g: Graph, s: Iterable[int]) -> VertexSet:
    s = frozenset(s)
    for v in s:
        g.vertex(v)
    return s


def link(g: Graph, v: Vertex) -> VertexSet:
    """Vertices adjacent to ``v``."""
    return g.adjacency[g.vertex(v)]


def star(g: Graph, v: Vertex) -> VertexSet:
    """``link(v)`` together with ``v``."""
    i = g.vertex(v)
    return g.adjacency[i] | {i}


def perp(g: Graph, s: Iterable[int]) -> VertexSet:
    """
    Vertices outside ``s`` adjacent to every vertex of ``s``.

    ``perp(∅)`` is the whole vertex set.
    """
    s = _check_subset(g, s)
    result = set(g.all_vertices - s)
    for v in s:
        result &= g.adjacency[v]
    return frozenset(result)


def complement(g: Graph, s: Optional[Iterable[int]] = None) -> nx.Graph:
    """Complement graph of the induced subgraph on ``s`` (default: all of Γ)."""
    s = g.all_vertices if s is None else _check_subset(g, s)
    comp = nx.Graph()
    ordered = sorted(s)
    comp.add_nodes_from(ordered)
    for a, i in enumerate(ordered):
        for j in ordered[a + 1:]:
            if not g.adjacent(i, j):
                comp.add_edge(i, j)
    return comp


def de_rham(g: Graph, s: Optional[Iterable[int]] = None) -> JoinDecomposition:
    """
    Canonical join decomposition of the induced subgraph on ``s``.

    The join factors are the connected components of the complement graph;
    singleton components make up the clique factor. Factors are ordered by
    their smallest vertex.
    """
    s = g.all_vertices if s is None else _check_subset(g, s)
    if not s:
        raise RaagError("de Rham decomposition of the empty set")
    components = sorted((frozenset(c) for c in nx.connected_components(complement(g, s))), key=min)
    clique = frozenset(v for c in components if len(c) == 1 for v in c)
    factors = tuple(c for c in components if len(c) > 1)
    return JoinDecomposition(clique, factors)


def is_join(g: Graph, s: Optional[Iterable[int]] = None) -> bool:
    """True iff the induced subgraph on ``s`` splits as a nontrivial join."""
    s = g.all_vertices if s is None else _check_subset(g, s)
    if len(s) < 2:
        return False
    return not nx.is_connected(complement(g, s))


def contained_in_join(g: Graph, s: Iterable[int]) -> bool:
    """True iff ``G_s`` lies in a join standard subgroup: ``s⊥ ≠ ∅`` or ``s`` is a join."""
    s = _check_subset(g, s)
    if not s:
        raise RaagError("contained_in_join of the empty set")
    return bool(perp(g, s)) or is_join(g, s)


def is_connected(g: Graph) -> bool:
    return len(g) > 0 and nx.is_connected(g.nx_graph)


def is_complete(g: Graph) -> bool:
    return all(len(nbrs) == len(g) - 1 for nbrs in g.adjacency)


def require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise DisconnectedGraphError("the defining graph must be connected")


def is_transvection_free(g: Graph) -> Verdict:
    """
    Scan all ordered pairs for ``lk(w) ⊆ st(v)`` with ``v ≠ w``.

    Returns a false verdict with witness ``(v, w)`` for the first such pair
    (``w`` in the outer loop), a true verdict otherwise.
    """
    n = len(g)
    for w in range(n):
        lk_w = g.adjacency[w]
        for v in range(n):
            if v != w and lk_w <= g.adjacency[v] | {v}:
                logger.debug(f"transvection: lk({g.vertices[w]}) ⊆ st({g.vertices[v]})")
                return Verdict(False, (g.vertices[v], g.vertices[w]))
    return Verdict(True)


def has_separating_star(g: Graph) -> Verdict:
    """
    Look for a vertex whose star disconnects Γ into at least two components.

    An empty remainder is not separating.
    """
    require_connected(g)
    for v in range(len(g)):
        rest = g.all_vertices - star(g, v)
        if len(rest) < 2:
            continue
        if nx.number_connected_components(g.nx_graph.subgraph(rest)) >= 2:
            return Verdict(True, (g.vertices[v],))
    return Verdict(False)


def finite_out(g: Graph) -> bool:
    """Out(G_Γ) is finite iff Γ is transvection-free with no separating star."""
    require_connected(g)
    return bool(is_transvection_free(g)) and not has_separating_star(g)
