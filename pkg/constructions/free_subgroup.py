"""
A rank-two free subgroup none of whose nontrivial elements lies in a proper
parabolic subgroup.

For a graph that is not a join, the complement graph is connected. Pick a
complement edge ``u₀ v₀``; for every vertex ``v`` walk from ``v₀`` to ``v`` and
back along complement edges, giving a word ``W_v``. With ``W`` the
concatenation of the ``W_v``, the words ``W₁ = v₀·W·u₀`` and
``W₂ = v₀⁻¹·u₀·W·u₀⁻¹`` use every generator, and consecutive letters are
never adjacent in Γ, so the wedge of two circles labeled by them maps by a
local isometry. Joins are handled factor by factor and the factor witnesses
multiplied together.
"""

from dataclasses import dataclass, field
from typing import Iterator, Optional

import networkx as nx
from loguru import logger

from errors import HypothesisError, MissingTraceError
from graphs.core import Graph, VertexSet, complement, de_rham
from groups.words import GroupElement, Letter, Word, cyclic_reduce, format_word, identity, invert, multiply, project, reduce
from reports import CheckReport


@dataclass(frozen=True)
class ConstructionTrace:
    """Choices made while building a witness, plus the raw (unreduced) words."""

    u0: int
    v0: int
    round_trips: tuple[tuple[int, tuple[int, ...]], ...]
    w: Word
    w1_word: Word
    w2_word: Word


@dataclass(frozen=True)
class FreePairWitness:
    w1: GroupElement
    w2: GroupElement
    trace: Optional[ConstructionTrace] = None
    factors: tuple["FreePairWitness", ...] = ()
    factor_types: tuple[VertexSet, ...] = field(default=())

    @property
    def diagonal(self) -> bool:
        return bool(self.factors)

    def to_dict(self) -> dict:
        g = self.w1.graph
        result: dict = {"w1": str(self.w1), "w2": str(self.w2), "diagonal": self.diagonal}
        if self.trace is not None:
            t = self.trace
            result["u0"] = g.vertices[t.u0]
            result["v0"] = g.vertices[t.v0]
            result["round_trips"] = {g.vertices[v]: " ".join(g.vertices[p] for p in path) for v, path in t.round_trips}
            result["W"] = format_word(g, t.w)
        if self.factors:
            result["factors"] = [f.to_dict() for f in self.factors]
        return result


def _positive(vertices) -> Word:
    return tuple(Letter(v, 1) for v in vertices)


def _complement_witness(g: Graph, s: VertexSet) -> FreePairWitness:
    comp = complement(g, s)
    if not nx.is_connected(comp):
        raise HypothesisError(f"the subgraph on {g.names(s)} is a join")
    u0, v0 = min(comp.edges(), key=lambda e: (min(e), max(e)))
    u0, v0 = min(u0, v0), max(u0, v0)
    paths = nx.single_source_shortest_path(comp, v0)

    round_trips = []
    for v in sorted(s):
        path = paths[v]
        round_trips.append((v, tuple(path) + tuple(reversed(path[:-1]))))
    w = tuple(letter for _, trip in round_trips for letter in _positive(trip))
    w1_word = (Letter(v0, 1),) + w + (Letter(u0, 1),)
    w2_word = (Letter(v0, -1), Letter(u0, 1)) + w + (Letter(u0, -1),)
    logger.debug(f"u0={g.vertices[u0]} v0={g.vertices[v0]} W={format_word(g, w)}")

    trace = ConstructionTrace(u0, v0, tuple(round_trips), w, w1_word, w2_word)
    return FreePairWitness(reduce(g, w1_word), reduce(g, w2_word), trace)


def full_support_free(g: Graph) -> FreePairWitness:
    """
    Build the witness pair for Γ.

    Raises:
        HypothesisError: if Γ has a clique factor
    """
    decomposition = de_rham(g)
    if decomposition.clique_factor:
        raise HypothesisError(f"the graph has clique factor {g.names(decomposition.clique_factor)}")
    factors = decomposition.irreducible_factors
    if len(factors) == 1:
        return _complement_witness(g, factors[0])

    witnesses = tuple(_complement_witness(g, f) for f in factors)
    w1, w2 = identity(g), identity(g)
    for wit in witnesses:
        w1 = multiply(g, w1, wit.w1)
        w2 = multiply(g, w2, wit.w2)
    logger.debug(f"diagonal witness over {len(witnesses)} join factors")
    return FreePairWitness(w1, w2, None, witnesses, factors)


def _syllable_products(wit: FreePairWitness, max_syllables: int) -> Iterator[GroupElement]:
    """Products of reduced words in ``W₁^{±1}, W₂^{±1}`` with 1 to ``max_syllables`` syllables."""
    g = wit.w1.graph
    pieces = [wit.w1, invert(wit.w1), wit.w2, invert(wit.w2)]
    layer = [(i, pieces[i]) for i in range(4)]
    for n in range(1, max_syllables + 1):
        yield from (x for _, x in layer)
        if n < max_syllables:
            # index ^ 1 is the inverse piece
            layer = [(j, multiply(g, x, pieces[j])) for i, x in layer for j in range(4) if j != i ^ 1]


def verify_full_support(g: Graph, wit: FreePairWitness, max_syllables: int) -> CheckReport:
    """
    Check that every product of at most ``max_syllables`` syllables has full
    support. Diagonal witnesses must also project nontrivially to every join
    factor.
    """
    report = CheckReport("full-support")
    for x in _syllable_products(wit, max_syllables):
        report.checked += 1
        core = cyclic_reduce(g, x).core_letters
        if core != g.all_vertices:
            report.fail(f"{x} has support type {g.names(core)}")
            continue
        for s in wit.factor_types:
            if project(x, s).is_identity:
                report.fail(f"{x} projects trivially to the factor {g.names(s)}")
    logger.info(f"full support: {report.checked} products checked, {len(report.failures)} failures")
    return report


def turn_is_legal(g: Graph, a: Letter, b: Letter) -> bool:
    """A turn ``a`` then ``b`` is legal unless it backtracks or its two generators commute."""
    if a.gen == b.gen:
        return a.sign == b.sign
    return not g.adjacent(a.gen, b.gen)


def _oriented(word: Word) -> Word:
    return tuple(letter.inverse() for letter in reversed(word))


def verify_local_isometry(g: Graph, wit: FreePairWitness) -> bool:
    """
    Check every turn of the wedge of two circles labeled ``W₁`` and ``W₂``:
    the turns inside each word and, at the wedge point, the end of any
    ``W_i^{±1}`` into the start of any ``W_j^{±1}`` other than its inverse.
    """
    if wit.diagonal:
        return all(verify_local_isometry(g, f) for f in wit.factors)
    if wit.trace is None:
        raise MissingTraceError("the witness carries no construction trace")

    words = [wit.trace.w1_word, wit.trace.w2_word]
    for word in words:
        if not word:
            return False
        for a, b in zip(word, word[1:]):
            if not turn_is_legal(g, a, b):
                logger.debug(f"illegal turn {format_word(g, (a, b))} inside {format_word(g, word)}")
                return False

    # oriented pieces W1, W1^-1, W2, W2^-1; index ^ 1 is the inverse
    oriented = [words[0], _oriented(words[0]), words[1], _oriented(words[1])]
    for i, x in enumerate(oriented):
        for j, y in enumerate(oriented):
            if j == i ^ 1:
                continue
            if not turn_is_legal(g, x[-1], y[0]):
                logger.debug(f"illegal turn {format_word(g, (x[-1], y[0]))} at the wedge point")
                return False
    return True
