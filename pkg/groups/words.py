"""
Words and normal forms in G_Γ.

Reduction uses piles (one stack per generator): pushing a letter puts its
sign on its own pile and a blank on the pile of every generator it does not
commute with; a letter cancels when its inverse sits on top of its own pile.
Reading the piles back, always taking the smallest generator whose pile has
a sign at the bottom, yields the lexicographically least word of the
shuffle class.
"""

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Optional

from loguru import logger

from errors import MixedGraphError, WordSyntaxError
from graphs.core import Graph, VertexSet


class Letter(NamedTuple):
    gen: int
    sign: int  # +1 or -1

    def inverse(self) -> "Letter":
        return Letter(self.gen, -self.sign)


Word = tuple[Letter, ...]


@dataclass(frozen=True)
class GroupElement:
    """An element of G_Γ stored as its canonical normal form."""

    graph: Graph
    word: Word

    def __len__(self) -> int:
        return len(self.word)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return multiply(self.graph, self, other)

    def __invert__(self) -> "GroupElement":
        return invert(self)

    def __str__(self) -> str:
        return format_word(self.graph, self.word)

    def __repr__(self) -> str:
        return f"GroupElement({str(self)!r})"

    @property
    def is_identity(self) -> bool:
        return not self.word

    @property
    def letters(self) -> VertexSet:
        """Generators occurring in the normal form."""
        return frozenset(letter.gen for letter in self.word)


def parse_word(g: Graph, text: str) -> Word:
    """
    Parse whitespace-separated tokens ``name`` or ``name^-1``.

    The empty string is the empty word.
    """
    letters = []
    for token in text.split():
        name, sep, exponent = token.partition("^")
        if sep and exponent != "-1":
            raise WordSyntaxError(f"malformed token {token!r}")
        if name not in g.index:
            raise WordSyntaxError(f"unknown generator {name!r} in {token!r}")
        letters.append(Letter(g.index[name], -1 if sep else 1))
    return tuple(letters)


def format_word(g: Graph, word: Iterable[Letter]) -> str:
    return " ".join(
        g.vertices[gen] if sign > 0 else f"{g.vertices[gen]}^-1" for gen, sign in word
    )


def _check_letters(g: Graph, word: Iterable[Letter]) -> Word:
    word = tuple(word)
    n = len(g)
    for letter in word:
        if not 0 <= letter.gen < n or letter.sign not in (1, -1):
            raise WordSyntaxError(f"invalid letter {letter!r}")
    return word


def _pile(g: Graph, word: Word) -> tuple[list[deque], int]:
    piles = [deque() for _ in range(len(g))]
    count = 0
    blockers = g.non_commuters
    for gen, sign in word:
        pile = piles[gen]
        if pile and pile[-1] == -sign:
            pile.pop()
            for j in blockers[gen]:
                piles[j].pop()
            count -= 1
        else:
            pile.append(sign)
            for j in blockers[gen]:
                piles[j].append(0)
            count += 1
    return piles, count


def _depile(g: Graph, piles: list[deque], count: int) -> Word:
    out = []
    blockers = g.non_commuters
    order = range(len(piles))
    for _ in range(count):
        for i in order:
            if piles[i] and piles[i][0]:
                break
        else:
            raise AssertionError("piles exhausted early")
        out.append(Letter(i, piles[i].popleft()))
        for j in blockers[i]:
            piles[j].popleft()
    return tuple(out)


def reduce(g: Graph, word: Iterable[Letter]) -> GroupElement:
    """Free and commutation cancellation followed by the lex-least shuffle."""
    word = _check_letters(g, word)
    piles, count = _pile(g, word)
    return GroupElement(g, _depile(g, piles, count))


def element(g: Graph, text: str) -> GroupElement:
    """Parse and reduce a word given in text form."""
    return reduce(g, parse_word(g, text))


def identity(g: Graph) -> GroupElement:
    return GroupElement(g, ())


def generator(g: Graph, v: int | str, sign: int = 1) -> GroupElement:
    return GroupElement(g, (Letter(g.vertex(v), sign),))


def multiply(g: Graph, x: GroupElement, y: GroupElement) -> GroupElement:
    if x.graph != g or y.graph != g:
        raise MixedGraphError("cannot multiply elements of different graphs")
    if not x.word:
        return y
    if not y.word:
        return x
    return reduce(g, x.word + y.word)


def invert(x: GroupElement) -> GroupElement:
    return reduce(x.graph, tuple(letter.inverse() for letter in reversed(x.word)))


def power(x: GroupElement, k: int) -> GroupElement:
    base = x if k >= 0 else invert(x)
    return reduce(x.graph, base.word * abs(k))


def commutator(x: GroupElement, y: GroupElement) -> GroupElement:
    """``x y x⁻¹ y⁻¹``"""
    g = x.graph
    if y.graph != g:
        raise MixedGraphError("cannot combine elements of different graphs")
    return reduce(g, x.word + y.word + invert(x).word + invert(y).word)


def conjugate_by(x: GroupElement, h: GroupElement) -> GroupElement:
    """``h x h⁻¹``"""
    return reduce(x.graph, h.word + x.word + invert(h).word)


def is_geodesic(g: Graph, word: Iterable[Letter]) -> bool:
    """True iff no cancellation applies, i.e. the word realizes the word metric."""
    word = _check_letters(g, word)
    _, count = _pile(g, word)
    return count == len(word)


def _right_free(g: Graph, letters: list[Letter], k: int) -> bool:
    gen = letters[k].gen
    return all(g.commutes(gen, later.gen) for later in letters[k + 1:])


def _left_free(g: Graph, letters: list[Letter], k: int) -> bool:
    gen = letters[k].gen
    return all(g.commutes(gen, earlier.gen) for earlier in letters[:k])


def gate_right(
    g: Graph, x: GroupElement, s: Iterable[int], rng: Optional[random.Random] = None
) -> GroupElement:
    """
    Minimal-length representative of the coset ``x·G_s``.

    Repeatedly deletes a letter with generator in ``s`` that shuffles to the
    end of the word. ``rng`` picks among the deletable letters at random; the
    result does not depend on that choice.
    """
    s = frozenset(s)
    letters = list(x.word)
    while True:
        candidates = [k for k in range(len(letters)) if letters[k].gen in s and _right_free(g, letters, k)]
        if not candidates:
            break
        k = rng.choice(candidates) if rng is not None else candidates[-1]
        del letters[k]
    if len(letters) == len(x.word):
        return x
    return reduce(g, letters)


def strip_left(g: Graph, x: GroupElement, s: Iterable[int]) -> tuple[GroupElement, GroupElement]:
    """
    Split ``x = d·r`` with ``d ∈ G_s`` the maximal left divisor supported in ``s``.

    Returns:
        ``(d, r)``
    """
    s = frozenset(s)
    letters = list(x.word)
    divisor = []
    k = 0
    while k < len(letters):
        if letters[k].gen in s and _left_free(g, letters, k):
            divisor.append(letters.pop(k))
            k = 0
        else:
            k += 1
    return reduce(g, divisor), reduce(g, letters)


def member_of_standard(g: Graph, x: GroupElement, s: Iterable[int]) -> bool:
    """True iff every letter of the normal form of ``x`` lies in ``s``."""
    return x.letters <= frozenset(s)


def in_double_coset(g: Graph, x: GroupElement, a: Iterable[int], b: Iterable[int]) -> bool:
    """True iff ``x ∈ G_a·G_b``."""
    _, rest = strip_left(g, x, a)
    return member_of_standard(g, rest, b)


def project(x: GroupElement, s: Iterable[int]) -> GroupElement:
    """Image of ``x`` under the retraction ``G_Γ → G_s`` killing generators outside ``s``."""
    s = frozenset(s)
    return reduce(x.graph, (letter for letter in x.word if letter.gen in s))


@dataclass(frozen=True)
class SupportResult:
    """``x = conjugator · core · conjugator⁻¹`` with ``core`` cyclically reduced."""

    conjugator: GroupElement
    core: GroupElement
    core_letters: VertexSet


def cyclic_reduce(g: Graph, x: GroupElement) -> SupportResult:
    """
    Strip pairs ``s … s⁻¹`` where ``s`` shuffles to the front and ``s⁻¹`` to the back.

    On the piles of ``x`` such a pair is a pile whose bottom and top hold
    opposite signs; both ends are popped from it and from its blockers. The
    stripped letters, outermost first, form the conjugator; the letters of
    what remains are the type of the support of ``x``.
    """
    piles, count = _pile(g, x.word)
    blockers = g.non_commuters
    stripped = []
    while True:
        for i, pile in enumerate(piles):
            if pile and pile[0] and pile[0] == -pile[-1]:
                break
        else:
            break
        stripped.append(Letter(i, piles[i][0]))
        for j in (i, *blockers[i]):
            piles[j].popleft()
            piles[j].pop()
        count -= 2
    core = GroupElement(g, _depile(g, piles, count))
    return SupportResult(reduce(g, stripped), core, core.letters)


def iter_ball(g: Graph, radius: int) -> Iterator[GroupElement]:
    """
    Yield every element of word length ≤ ``radius``, sphere by sphere.

    Within a sphere, elements come in the order they are discovered, which
    is deterministic.
    """
    letters = [Letter(i, s) for i in range(len(g)) for s in (1, -1)]
    sphere = [identity(g)]
    seen = set(sphere)
    yield sphere[0]
    for n in range(1, radius + 1):
        nxt = []
        for x in sphere:
            for letter in letters:
                y = reduce(g, x.word + (letter,))
                if len(y) == n and y not in seen:
                    seen.add(y)
                    nxt.append(y)
        logger.debug(f"sphere of radius {n}: {len(nxt)} elements")
        yield from nxt
        sphere = nxt


def ball(g: Graph, radius: int) -> list[GroupElement]:
    return list(iter_ball(g, radius))
