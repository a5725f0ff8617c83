"""
Hyperplanes of the universal cover and eventually periodic geodesic rays.

The hyperplane dual to an edge ``{p, p·v}`` is determined by its label ``v``
and the coset of the edge's tail modulo ``G_{lk(v)}``; the tail is ``p`` for a
positive letter and ``p·v⁻¹`` for ``v⁻¹``.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

from loguru import logger

import config
from errors import NonGeodesicError, RaagError
from graphs.core import Graph, VertexSet, contained_in_join, link
from groups.words import (
    GroupElement,
    Letter,
    Word,
    gate_right,
    generator,
    identity,
    in_double_coset,
    invert,
    is_geodesic,
    iter_ball,
    multiply,
    reduce,
)
from reports import CheckReport


@dataclass(frozen=True)
class Hyperplane:
    label: int
    coset_rep: GroupElement

    def __str__(self) -> str:
        g = self.coset_rep.graph
        return f'label={g.vertices[self.label]} coset="{self.coset_rep}"'

    def to_dict(self) -> dict:
        g = self.coset_rep.graph
        return {"label": g.vertices[self.label], "coset_rep": str(self.coset_rep)}


def make_hyperplane(g: Graph, prefix: GroupElement, letter: Letter) -> Hyperplane:
    """Hyperplane crossed by the edge leaving ``prefix`` along ``letter``."""
    tail = prefix if letter.sign > 0 else multiply(g, prefix, generator(g, letter.gen, -1))
    return Hyperplane(letter.gen, gate_right(g, tail, link(g, letter.gen)))


def hyperplanes_crossed(g: Graph, word: Iterable[Letter], strict: bool = True) -> list[Hyperplane]:
    """
    Hyperplanes crossed by the edge path of ``word`` from the identity, in order.

    With ``strict=False`` non-geodesic words are accepted; a repeated entry
    then marks a hyperplane crossed twice.
    """
    word = tuple(word)
    if strict and not is_geodesic(g, word):
        raise NonGeodesicError("hyperplanes_crossed needs a geodesic word")
    prefix = identity(g)
    crossed = []
    for letter in word:
        crossed.append(make_hyperplane(g, prefix, letter))
        prefix = reduce(g, prefix.word + (letter,))
    return crossed


def crosses(g: Graph, h1: Hyperplane, h2: Hyperplane) -> bool:
    """
    True iff the hyperplanes bound a common square.

    A square needs commuting labels and a corner in both carrier cosets,
    i.e. ``rep₁⁻¹·rep₂ ∈ G_{lk(v)}·G_{lk(w)}``.
    """
    if h1 == h2:
        raise RaagError("crosses needs two distinct hyperplanes")
    v, w = h1.label, h2.label
    if v == w or not g.adjacent(v, w):
        return False
    return in_double_coset(g, multiply(g, invert(h1.coset_rep), h2.coset_rep), link(g, v), link(g, w))


class Separation(Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


def strongly_separated_bounded(g: Graph, h1: Hyperplane, h2: Hyperplane, radius: int) -> Separation:
    """
    Search for a hyperplane crossing both ``h1`` and ``h2`` among those with
    coset representatives of length ≤ ``radius``.

    A crossing hyperplane carries a label adjacent to both labels, so an
    empty common link settles the question; otherwise a failed search is
    inconclusive.
    """
    if h1 == h2 or crosses(g, h1, h2):
        return Separation.NO
    common = link(g, h1.label) & link(g, h2.label)
    if not common:
        return Separation.YES

    seen: set[Hyperplane] = set()
    for t in iter_ball(g, radius):
        for u in sorted(common):
            h = Hyperplane(u, gate_right(g, t, link(g, u)))
            if h in seen:
                continue
            seen.add(h)
            if crosses(g, h, h1) and crosses(g, h, h2):
                logger.debug(f"{h} crosses both {h1} and {h2}")
                return Separation.NO
    logger.debug(f"no hyperplane crossing both within radius {radius} ({len(seen)} candidates)")
    return Separation.UNKNOWN


@dataclass(frozen=True)
class RaySpec:
    """The ray ``prefix · period · period · …``, checked geodesic up to ``k_check`` periods."""

    graph: Graph
    prefix: Word
    period: Word
    k_check: int


@dataclass(frozen=True)
class StandardCoset:
    stype: VertexSet
    rep: GroupElement

    def __str__(self) -> str:
        g = self.rep.graph
        return f'type=[{",".join(g.names(self.stype))}] rep="{self.rep}"'


@dataclass(frozen=True)
class RayClass:
    regular: bool
    phi: StandardCoset

    def to_dict(self) -> dict:
        g = self.phi.rep.graph
        return {
            "regular": self.regular,
            "phi_type": g.names(self.phi.stype),
            "phi_rep": str(self.phi.rep),
        }


def default_k_check(g: Graph) -> int:
    override = config.k_check_override()
    return override if override is not None else 2 * len(g) + 2


def ray_power_word(prefix: Word, period: Word, k: int) -> Word:
    return tuple(prefix) + tuple(period) * k


def validate_ray(g: Graph, prefix: Iterable[Letter], period: Iterable[Letter], k_check: Optional[int] = None) -> RaySpec:
    """
    Accept the ray iff ``prefix·period^k`` is geodesic for every ``k ≤ k_check``.

    Raises:
        NonGeodesicError: carrying the smallest failing power
    """
    prefix, period = tuple(prefix), tuple(period)
    if not period:
        raise RaagError("the period of a ray must be nonempty")
    if k_check is None:
        k_check = default_k_check(g)
    if k_check < 1:
        raise RaagError(f"k_check must be at least 1, got {k_check}")
    for k in range(1, k_check + 1):
        if not is_geodesic(g, ray_power_word(prefix, period, k)):
            raise NonGeodesicError(f"the ray is not geodesic at power {k}", power=k)
    logger.debug(f"ray validated up to power {k_check}")
    return RaySpec(g, prefix, period, k_check)


def classify_ray(g: Graph, ray: RaySpec) -> RayClass:
    """
    The period letters are the labels crossed infinitely often; the ray
    eventually stays in the coset ``prefix·G_Λ`` of that type.
    """
    letters = frozenset(letter.gen for letter in ray.period)
    rep = gate_right(g, reduce(g, ray.prefix), letters)
    return RayClass(not contained_in_join(g, letters), StandardCoset(letters, rep))


def phi_subray_invariance(g: Graph, ray: RaySpec, shifts: int) -> CheckReport:
    """Compare the classification of ``ray`` with that of its subrays starting after ``j ≤ shifts`` periods."""
    report = CheckReport("phi-subray-invariance")
    base = classify_ray(g, ray)
    for j in range(shifts + 1):
        shifted = RaySpec(g, ray_power_word(ray.prefix, ray.period, j), ray.period, ray.k_check)
        result = classify_ray(g, shifted)
        report.checked += 1
        if result != base:
            report.fail(f"shift {j}: phi {result.phi} differs from {base.phi}")
    return report
