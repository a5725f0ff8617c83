"""Parabolic subgroups ``g·G_Λ·g⁻¹`` in canonical form, and the lemmas about them as checks."""

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from loguru import logger

from errors import HypothesisError
from graphs.core import Graph, VertexSet, is_transvection_free, link, perp, star
from groups.words import (
    GroupElement,
    commutator,
    conjugate_by,
    cyclic_reduce,
    gate_right,
    generator,
    identity,
    invert,
    iter_ball,
    member_of_standard,
    multiply,
)
from reports import CheckReport


@dataclass(frozen=True)
class Parabolic:
    """
    The subgroup ``rep·G_ptype·rep⁻¹``.

    ``rep`` is the minimal-length representative of ``rep·G_{Λ ∪ Λ⊥}``, so two
    parabolics are equal iff their fields are.
    """

    ptype: VertexSet
    rep: GroupElement

    @property
    def graph(self) -> Graph:
        return self.rep.graph

    @property
    def is_standard(self) -> bool:
        return self.rep.is_identity

    def __str__(self) -> str:
        return f'ptype=[{",".join(self.graph.names(self.ptype))}] rep="{self.rep}"'

    def to_dict(self) -> dict:
        return {"ptype": self.graph.names(self.ptype), "rep": str(self.rep)}


def make_parabolic(g: Graph, ptype: Iterable[int], conj: GroupElement) -> Parabolic:
    """Canonicalize ``conj·G_ptype·conj⁻¹`` modulo the normalizer ``G_{Λ ∪ Λ⊥}``."""
    ptype = g.vertex_set(ptype)
    rep = gate_right(g, conj, ptype | perp(g, ptype))
    return Parabolic(ptype, rep)


def standard(g: Graph, ptype: Iterable[int]) -> Parabolic:
    return make_parabolic(g, ptype, identity(g))


def parabolic_equal(p: Parabolic, q: Parabolic) -> bool:
    return p == q


def member(p: Parabolic, x: GroupElement) -> bool:
    g = p.graph
    inner = multiply(g, multiply(g, invert(p.rep), x), p.rep)
    return member_of_standard(g, inner, p.ptype)


def conjugate(p: Parabolic, h: GroupElement) -> Parabolic:
    """``h·P·h⁻¹``"""
    g = p.graph
    return make_parabolic(g, p.ptype, multiply(g, h, p.rep))


def normalizer(p: Parabolic) -> Parabolic:
    """``P × P⊥``"""
    g = p.graph
    return make_parabolic(g, p.ptype | perp(g, p.ptype), p.rep)


def perp_of(p: Parabolic) -> Parabolic:
    """``P⊥ = rep·G_{Λ⊥}·rep⁻¹``; well defined because ``rep`` is canonical."""
    g = p.graph
    return make_parabolic(g, perp(g, p.ptype), p.rep)


def standard_intersection(g: Graph, s1: Iterable[int], s2: Iterable[int]) -> VertexSet:
    """``G_{s1} ∩ G_{s2} = G_{s1 ∩ s2}``"""
    return g.vertex_set(s1) & g.vertex_set(s2)


def contains(p: Parabolic, q: Parabolic) -> bool:
    """True iff ``q ⊆ p``."""
    if not q.ptype <= p.ptype:
        return False
    g = p.graph
    return all(member(p, conjugate_by(generator(g, v), q.rep)) for v in q.ptype)


def centralizer_of_cyclic(z: Parabolic) -> Parabolic:
    """Centralizer of ``rep·⟨v⟩·rep⁻¹``, the parabolic of type ``st(v)``."""
    if len(z.ptype) != 1:
        raise HypothesisError("centralizer_of_cyclic needs a cyclic parabolic")
    (v,) = z.ptype
    return make_parabolic(z.graph, star(z.graph, v), z.rep)


def support(g: Graph, x: GroupElement) -> Parabolic:
    """Smallest parabolic subgroup containing ``x``."""
    result = cyclic_reduce(g, x)
    return make_parabolic(g, result.core_letters, result.conjugator)


def intersect_bounded(p: Parabolic, q: Parabolic, max_len: int) -> tuple[Parabolic, bool]:
    """
    Largest sub-parabolic of ``p ∩ q`` generated by conjugated generators
    ``c·v·c⁻¹`` with ``|c| ≤ max_len``.

    The type of ``p ∩ q`` is contained in ``p.ptype ∩ q.ptype``; the answer is
    flagged complete when the found type reaches that bound (a parabolic
    inside another of the same type equals it).

    Returns:
        ``(parabolic, complete)``
    """
    g = p.graph
    common = p.ptype & q.ptype
    if not common:
        return standard(g, ()), True
    if p.is_standard and q.is_standard:
        return standard(g, common), True

    best_type: VertexSet = frozenset()
    best_conj = identity(g)
    for c in iter_ball(g, max_len):
        found = frozenset(
            v for v in common
            if member(p, conj_v := conjugate_by(generator(g, v), c)) and member(q, conj_v)
        )
        if len(found) > len(best_type):
            best_type, best_conj = found, c
            if found == common:
                break

    complete = best_type == common
    if not complete:
        logger.warning(f"parabolic intersection not certified within conjugator length {max_len}")
    return make_parabolic(g, best_type, best_conj), complete


def chain_length_bound(g: Graph) -> int:
    """
    Bound on the length of strictly increasing chains of parabolics.

    A proper inclusion strictly enlarges the type, so types from ``∅`` to
    ``VΓ`` give at most ``|VΓ| + 1`` members.
    """
    return len(g) + 1


def is_strict_chain(ps: Sequence[Parabolic]) -> bool:
    return all(contains(b, a) and a != b for a, b in zip(ps, ps[1:]))


def check_transvection_free_lemma(g: Graph, max_len: int) -> CheckReport:
    """
    For standard cyclic ``Z = ⟨v⟩`` and standard nontrivial ``P = G_S`` with
    ``st(v) ⊆ S ∪ S⊥``: a cyclic ``P`` equals ``Z``, and a noncyclic ``P``
    meets ``Z⊥`` in a nonabelian subgroup.

    The nonabelian witness pair is also verified on every conjugate by an
    element of length ≤ ``max_len``.
    """
    if not is_transvection_free(g):
        raise HypothesisError("the graph is not transvection-free")

    report = CheckReport("transvection-free-lemma")
    conjugators = list(iter_ball(g, max_len))
    n = len(g)
    for v in range(n):
        z = standard(g, [v])
        st_v = star(g, v)
        lk_v = link(g, v)
        for size in range(1, n + 1):
            for subset in combinations(range(n), size):
                s = frozenset(subset)
                if not st_v <= s | perp(g, s):
                    continue
                report.checked += 1
                label = f"Z={g.vertices[v]} P={g.names(s)}"
                if size == 1:
                    if s != {v}:
                        report.fail(f"{label}: cyclic P differs from Z")
                    else:
                        report.details.append((g.vertices[v], tuple(g.names(s))))
                    continue

                pairs = [(a, b) for a, b in combinations(sorted(s & lk_v), 2) if not g.adjacent(a, b)]
                if not pairs:
                    report.fail(f"{label}: P ∩ Z⊥ is abelian")
                    continue
                a, b = pairs[0]
                p = standard(g, s)
                for h in conjugators:
                    ph, zh_perp = conjugate(p, h), perp_of(conjugate(z, h))
                    xa = conjugate_by(generator(g, a), h)
                    xb = conjugate_by(generator(g, b), h)
                    if not all(member(q, x) for q in (ph, zh_perp) for x in (xa, xb)):
                        report.fail(f"{label}: witness leaves P ∩ Z⊥ after conjugating by {h}")
                        break
                    if commutator(xa, xb).is_identity:
                        report.fail(f"{label}: witness pair commutes after conjugating by {h}")
                        break
                report.details.append((g.vertices[v], tuple(g.names(s))))
    logger.info(f"transvection-free lemma: {report.checked} instances, {len(report.failures)} failures")
    return report


def parabolic_pool(g: Graph, conj_len: int) -> list[Parabolic]:
    """Parabolics of every nonempty type conjugated by elements of length ≤ ``conj_len``."""
    conjugators = list(iter_ball(g, conj_len))
    seen: dict[Parabolic, None] = {}
    n = len(g)
    for size in range(1, n + 1):
        for subset in combinations(range(n), size):
            for c in conjugators:
                seen.setdefault(make_parabolic(g, subset, c))
    return list(seen)


def check_setwise_pointwise(g: Graph, family_size: int, max_len: int, pool_len: int = 1) -> CheckReport:
    """
    Look for ``h`` (``|h| ≤ max_len``) stabilizing a family of at most
    ``family_size`` pooled parabolics as a set without fixing each member.

    Such an ``h`` permutes the family, so it exists iff ``h`` has a cycle of
    length between 2 and ``family_size`` inside the pool; the orbit of every
    pooled parabolic is followed for that many steps.
    """
    report = CheckReport("setwise-pointwise")
    pool = parabolic_pool(g, pool_len)
    pooled = set(pool)
    for h in iter_ball(g, max_len):
        if h.is_identity:
            continue
        for p in pool:
            report.checked += 1
            orbit = [p]
            current = conjugate(p, h)
            while current != p and current in pooled and len(orbit) < family_size:
                orbit.append(current)
                current = conjugate(current, h)
            if current == p and len(orbit) >= 2:
                report.fail(f"h={h} permutes {[str(q) for q in orbit]}")
    logger.info(f"setwise/pointwise: {report.checked} checks over a pool of {len(pool)} parabolics")
    return report
