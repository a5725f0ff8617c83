"""
Brute-force reference computations used to cross-check the library.

Each oracle works from definitions (word moves, explicit squares, exhaustive
factorizations) and shares as little code with the library as possible.
"""

import random
from collections import deque
from typing import Callable, Iterable, Optional

from geometry.roller import Hyperplane, make_hyperplane
from graphs.core import Graph
from graphs.parsing import parse_graph
from groups.words import GroupElement, Letter, Word, identity, invert, iter_ball, member_of_standard, multiply, reduce

GRAPH_TEXTS = {
    "K2": "vertices: a b\nedges: a-b\n",
    "C4": "vertices: a b c d\nedges: a-b b-c c-d d-a\n",
    "C5": "vertices: v1 v2 v3 v4 v5\nedges: v1-v2 v2-v3 v3-v4 v4-v5 v5-v1\n",
    "P5": "vertices: a b c d e\nedges: a-b b-c c-d d-e\n",
}


def standard_graph(name: str) -> Graph:
    return parse_graph(GRAPH_TEXTS[name])


def letters_of(g: Graph) -> list[Letter]:
    return [Letter(i, s) for i in range(len(g)) for s in (1, -1)]


def all_words(g: Graph, length: int) -> Iterable[Word]:
    """Every word of exactly ``length`` letters."""
    letters = letters_of(g)
    layer: list[Word] = [()]
    for _ in range(length):
        layer = [w + (letter,) for w in layer for letter in letters]
    return layer


def gen_word(g: Graph, gen_length: Callable[[], int], rng: random.Random) -> Callable[[], Word]:
    letters = letters_of(g)
    return lambda: tuple(rng.choice(letters) for _ in range(gen_length()))


def gen_range(start: int, stop: int, rng: random.Random) -> Callable[[], int]:
    return lambda: rng.randint(start, stop)


def _letter_key(word: Word) -> tuple:
    return (len(word), tuple((gen, 0 if sign > 0 else 1) for gen, sign in word))


def word_moves(g: Graph, word: Word) -> Iterable[Word]:
    """Words one commutation swap or one free cancellation away."""
    for i in range(len(word) - 1):
        a, b = word[i], word[i + 1]
        if a.gen == b.gen and a.sign == -b.sign:
            yield word[:i] + word[i + 2:]
        elif a.gen != b.gen and g.adjacent(a.gen, b.gen):
            yield word[:i] + (b, a) + word[i + 2:]


def trace_class(g: Graph, word: Word, cap: int = 20000) -> Optional[set[Word]]:
    """Closure of ``word`` under swaps and cancellations, or None past ``cap`` words."""
    seen = {word}
    queue = deque([word])
    while queue:
        w = queue.popleft()
        for nxt in word_moves(g, w):
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > cap:
                    return None
                queue.append(nxt)
    return seen


def brute_normal_form(g: Graph, word: Word, cap: int = 20000) -> Optional[Word]:
    """Shortest, then lexicographically least, word of the closure."""
    words = trace_class(g, word, cap)
    if words is None:
        return None
    return min(words, key=_letter_key)


def clique_normal_form(g: Graph, word: Word) -> Word:
    """Normal form when every pair of generators commutes: exponent sums in generator order."""
    sums = [0] * len(g)
    for gen, sign in word:
        sums[gen] += sign
    return tuple(Letter(gen, 1 if n > 0 else -1) for gen, n in enumerate(sums) for _ in range(abs(n)))


def insertions(g: Graph, word: Word) -> Iterable[Word]:
    """``word`` with one pair ``x x⁻¹`` inserted, at every position."""
    for i in range(len(word) + 1):
        for letter in letters_of(g):
            yield word[:i] + (letter, letter.inverse()) + word[i:]


def bfs_distances(g: Graph, radius: int) -> dict[GroupElement, int]:
    """Cayley graph distances from the identity, layer by layer."""
    letters = letters_of(g)
    dist = {identity(g): 0}
    frontier = [identity(g)]
    for d in range(1, radius + 1):
        nxt = []
        for x in frontier:
            for letter in letters:
                y = reduce(g, x.word + (letter,))
                if y not in dist:
                    dist[y] = d
                    nxt.append(y)
        frontier = nxt
    return dist


def brute_in_double_coset(g: Graph, x: GroupElement, a: frozenset[int], b: frozenset[int], pool: list[GroupElement]) -> bool:
    """Search ``x = α·β`` with ``α ∈ G_a`` taken from ``pool``."""
    for alpha in pool:
        if member_of_standard(g, alpha, a) and member_of_standard(g, multiply(g, invert(alpha), x), b):
            return True
    return False


def square_crossings(g: Graph, radius: int) -> set[frozenset[Hyperplane]]:
    """
    Hyperplane pairs dual to the two edge directions of a square
    ``x, x·v, x·w, x·v·w`` whose corner ``x`` lies in the ball.
    """
    pairs = set()
    for x in iter_ball(g, radius):
        for v, w in g.edges():
            pairs.add(frozenset((make_hyperplane(g, x, Letter(v, 1)), make_hyperplane(g, x, Letter(w, 1)))))
    return pairs


def transvection_pairs(g: Graph) -> list[tuple[str, str]]:
    """All ``(v, w)`` with ``v ≠ w`` and every neighbor of ``w`` equal or adjacent to ``v``."""
    names = g.vertices
    edges = {frozenset((names[i], names[j])) for i, j in g.edges()}
    found = []
    for w in names:
        nbrs_w = [u for u in names if frozenset((u, w)) in edges]
        for v in names:
            if v != w and all(u == v or frozenset((u, v)) in edges for u in nbrs_w):
                found.append((v, w))
    return found


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    names = [f"x{i}" for i in range(n)]
    edges = [(names[i], names[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_edges(names, edges)
