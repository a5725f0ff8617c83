"""
Graphs of finite groups acting on the 4-valent labeled tree, and Serre's
covolume criterion: a discrete group acting with vertex stabilizer orders
``α_x`` is a lattice iff ``Σ 1/α_x`` over vertex orbits converges.

Only orders matter here, so vertex and edge groups are recorded by their
orders. A graph of groups may carry tail rules describing an infinite family
of vertices ``x0, x1, …`` whose orders grow like ``c·2^(k+m)``.
"""

import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from loguru import logger
from smart_open import open as sopen

from errors import GraphOfGroupsError, HypothesisError, RaagError
from graphs.core import Graph, is_complete
from reports import CheckReport

DEFAULT_LABELS = ("a", "b")

_FORMULA = re.compile(r"^(?:(?P<c>\d+)\*)?2\^(?:k|\(k\+(?P<m>\d+)\))$")


@dataclass(frozen=True)
class GogVertex:
    id: str
    order: int


@dataclass(frozen=True)
class GogEdge:
    source: str
    target: str
    label: str
    order: int

    @property
    def is_loop(self) -> bool:
        return self.source == self.target


@dataclass(frozen=True)
class TailRule:
    """Vertices ``pattern.format(k)`` for ``k = 0, 1, …`` of order ``coefficient·ratio^(k+shift)``."""

    pattern: str
    coefficient: int
    shift: int = 0
    ratio: int = 2

    def vertex_id(self, k: int) -> str:
        return self.pattern.replace("{k}", str(k))

    def order(self, k: int) -> int:
        return self.coefficient * self.ratio ** (k + self.shift)

    def match(self, vertex_id: str) -> Optional[int]:
        """Index ``k`` of ``vertex_id`` in this family, or None."""
        head, _, tail = self.pattern.partition("{k}")
        m = re.fullmatch(re.escape(head) + r"(\d+)" + re.escape(tail), vertex_id)
        return int(m.group(1)) if m else None

    @property
    def formula(self) -> str:
        if self.ratio == 1:
            return str(self.coefficient)
        exponent = "k" if self.shift == 0 else f"(k+{self.shift})"
        prefix = "" if self.coefficient == 1 else f"{self.coefficient}*"
        return f"{prefix}2^{exponent}"


@dataclass(frozen=True)
class GraphOfGroups:
    vertices: tuple[GogVertex, ...]
    edges: tuple[GogEdge, ...]
    tails: tuple[TailRule, ...] = ()
    frontier: frozenset[str] = frozenset()
    labels: tuple[str, str] = DEFAULT_LABELS

    def order_of(self, vertex_id: str) -> int:
        for v in self.vertices:
            if v.id == vertex_id:
                return v.order
        for rule in self.tails:
            k = rule.match(vertex_id)
            if k is not None:
                return rule.order(k)
        raise GraphOfGroupsError(f"unknown vertex {vertex_id!r}")

    def materialized(self) -> list[str]:
        """Explicit vertices followed by every tail vertex an edge refers to."""
        ids = [v.id for v in self.vertices]
        seen = set(ids)
        for e in self.edges:
            for end in (e.source, e.target):
                if end not in seen:
                    seen.add(end)
                    ids.append(end)
        return ids


def parse_formula(text: str) -> tuple[int, int, int]:
    """
    Parse an order formula: ``c``, ``2^k``, ``c*2^k``, ``2^(k+m)`` or ``c*2^(k+m)``.

    Returns:
        ``(coefficient, shift, ratio)``
    """
    text = text.replace(" ", "")
    if text.isdigit():
        return int(text), 0, 1
    m = _FORMULA.match(text)
    if not m:
        raise GraphOfGroupsError(f"unsupported order formula {text!r}")
    return int(m.group("c") or 1), int(m.group("m") or 0), 2


def _positive(token: str, what: str, lineno: Optional[int] = None) -> int:
    try:
        value = int(token)
    except ValueError:
        raise GraphOfGroupsError(f"{what} {token!r} is not an integer", lineno) from None
    if value <= 0:
        raise GraphOfGroupsError(f"{what} must be positive, got {value}", lineno)
    return value


def check_graph_of_groups(gog: GraphOfGroups) -> None:
    """
    Raises:
        GraphOfGroupsError: on zero orders, unknown labels or endpoints, or an
            edge order not dividing both endpoint orders
    """
    ids = [v.id for v in gog.vertices]
    if len(set(ids)) != len(ids):
        raise GraphOfGroupsError("duplicate vertex ids")
    for v in gog.vertices:
        if v.order <= 0:
            raise GraphOfGroupsError(f"vertex {v.id} has order {v.order}")
        if any(rule.match(v.id) is not None for rule in gog.tails):
            raise GraphOfGroupsError(f"vertex {v.id} collides with a tail family")
    for rule in gog.tails:
        if rule.coefficient <= 0:
            raise GraphOfGroupsError(f"tail {rule.pattern} has a non-positive coefficient")
    for e in gog.edges:
        if e.label not in gog.labels:
            raise GraphOfGroupsError(f"edge {e.source}-{e.target} has label {e.label!r} outside {list(gog.labels)}")
        if e.order <= 0:
            raise GraphOfGroupsError(f"edge {e.source}-{e.target} has order {e.order}")
        for end in (e.source, e.target):
            if gog.order_of(end) % e.order:
                raise GraphOfGroupsError(
                    f"edge {e.source}-{e.target} of order {e.order} does not divide the order of {end}"
                )


def parse_graph_of_groups(text: str) -> GraphOfGroups:
    """
    Parse lines ``gvertex <id> <order>``, ``gedge <id1> <id2> <label> <order>``,
    ``tail <pattern-with-{k}> <formula>``, ``frontier <id>…`` and an optional
    ``labels <l1> <l2>``. ``#`` starts a comment line.
    """
    vertices, edges, tails = [], [], []
    frontier: set[str] = set()
    labels = DEFAULT_LABELS
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        keyword, *args = line.split()
        if keyword == "gvertex" and len(args) == 2:
            vertices.append(GogVertex(args[0], _positive(args[1], "vertex order", lineno)))
        elif keyword == "gedge" and len(args) == 4:
            edges.append(GogEdge(args[0], args[1], args[2], _positive(args[3], "edge order", lineno)))
        elif keyword == "tail" and len(args) == 2:
            if "{k}" not in args[0]:
                raise GraphOfGroupsError(f"tail pattern {args[0]!r} lacks {{k}}", lineno)
            try:
                coefficient, shift, ratio = parse_formula(args[1])
            except GraphOfGroupsError as e:
                raise GraphOfGroupsError(str(e), lineno) from None
            tails.append(TailRule(args[0], coefficient, shift, ratio))
        elif keyword == "frontier" and args:
            frontier.update(args)
        elif keyword == "labels" and len(args) == 2 and args[0] != args[1]:
            labels = (args[0], args[1])
        else:
            raise GraphOfGroupsError(f"malformed line {line!r}", lineno)

    gog = GraphOfGroups(tuple(vertices), tuple(edges), tuple(tails), frozenset(frontier), labels)
    check_graph_of_groups(gog)
    return gog


def format_graph_of_groups(gog: GraphOfGroups) -> str:
    lines = []
    if gog.labels != DEFAULT_LABELS:
        lines.append(f"labels {gog.labels[0]} {gog.labels[1]}")
    lines += [f"gvertex {v.id} {v.order}" for v in gog.vertices]
    lines += [f"tail {t.pattern} {t.formula}" for t in gog.tails]
    lines += [f"gedge {e.source} {e.target} {e.label} {e.order}" for e in gog.edges]
    if gog.frontier:
        lines.append("frontier " + " ".join(sorted(gog.frontier)))
    return "\n".join(lines) + "\n"


def load_graph_of_groups(path: str) -> GraphOfGroups:
    if "://" not in path and not os.path.exists(path):
        raise FileNotFoundError(f"The file '{path}' does not exist.")
    with sopen(path, "r", encoding="utf-8") as fin:
        text = fin.read()
    gog = parse_graph_of_groups(text)
    logger.debug(f"Loaded graph of groups with {len(gog.vertices)} vertices and {len(gog.tails)} tails from {path}")
    return gog


@dataclass
class CovolumeReport:
    partial_sums: list[Fraction] = field(default_factory=list)
    converged: bool = True
    closed_form: Optional[Fraction] = None


def serre_covolume(gog: GraphOfGroups, n_terms: int) -> CovolumeReport:
    """
    Partial sums of ``Σ 1/α_x``: explicit vertices first, then ``n_terms``
    members of every tail family, ``k`` by ``k``.

    The sum converges iff every tail grows geometrically; the closed form is
    then the explicit part plus ``2/(c·2^m)`` per tail.
    """
    if gog.tails and n_terms < 1:
        raise RaagError("n_terms must be at least 1 for parametric graphs of groups")
    report = CovolumeReport()
    total = Fraction(0)
    for v in gog.vertices:
        if v.order <= 0:
            raise GraphOfGroupsError(f"vertex {v.id} has order {v.order}")
        total += Fraction(1, v.order)
        report.partial_sums.append(total)
    explicit = total

    for k in range(n_terms if gog.tails else 0):
        for rule in gog.tails:
            order = rule.order(k)
            if order <= 0:
                raise GraphOfGroupsError(f"tail vertex {rule.vertex_id(k)} has order {order}")
            total += Fraction(1, order)
            report.partial_sums.append(total)

    report.converged = all(rule.ratio == 2 for rule in gog.tails)
    if report.converged:
        report.closed_form = explicit + sum(
            (Fraction(2, rule.coefficient * 2**rule.shift) for rule in gog.tails), Fraction(0)
        )
    logger.info(f"covolume: {len(report.partial_sums)} terms, converged={report.converged}")
    return report


def _fraction_text(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def report_to_json(report: CovolumeReport) -> dict:
    return {
        "partial_sums": [_fraction_text(x) for x in report.partial_sums],
        "converged": report.converged,
        "closed_form": _fraction_text(report.closed_form) if report.closed_form is not None else None,
    }


def validate_bass_serre_valence(gog: GraphOfGroups, target_valence: int = 4, per_label: int = 2) -> CheckReport:
    """
    Check that the Bass-Serre tree has the requested valence at every vertex.

    At a vertex ``x`` an edge ``e`` contributes ``α_x/β_e`` neighbors with its
    label; a loop contributes that index twice. Frontier vertices of a
    truncated graph are skipped.
    """
    check_graph_of_groups(gog)
    report = CheckReport("bass-serre-valence")
    for x in gog.materialized():
        if x in gog.frontier:
            continue
        order = gog.order_of(x)
        valence = dict.fromkeys(gog.labels, 0)
        for e in gog.edges:
            if x not in (e.source, e.target):
                continue
            index = order // e.order
            valence[e.label] += 2 * index if e.is_loop else index
        report.checked += 1
        ok = all(n == per_label for n in valence.values()) and sum(valence.values()) == target_valence
        report.details.append({"vertex": x, "valence": valence, "ok": ok})
        if not ok:
            report.fail(f"vertex {x}: valence {valence}")
    return report


def paper_style_family(depth: int, labels: tuple[str, str] = DEFAULT_LABELS) -> GraphOfGroups:
    """
    A non-uniform lattice in the automorphism group of the 4-valent tree,
    truncated after ``depth`` steps.

    A ray ``x0 - x1 - …`` with ``|x_k| = 2^(k+1)`` carries edge groups of
    order ``2^(k+1)`` and alternating labels; ``x0`` has a loop of the second
    label. Each ``x_k`` also has a leaf ``z_k`` of order ``2^(k+2)`` attached by
    an edge of the label of the outgoing ray edge, with a loop of the other
    label at ``z_k``. The covolume is ``3/2``. ``x_depth`` is the frontier.
    """
    if depth < 0:
        raise RaagError(f"depth must be non-negative, got {depth}")
    a, b = labels
    edges = [GogEdge("x0", "x0", b, 2)]
    for k in range(depth + 1):
        out_label = a if k % 2 == 0 else b
        other = b if out_label == a else a
        if k < depth:
            edges.append(GogEdge(f"x{k}", f"x{k + 1}", out_label, 2 ** (k + 1)))
        edges.append(GogEdge(f"x{k}", f"z{k}", out_label, 2 ** (k + 1)))
        edges.append(GogEdge(f"z{k}", f"z{k}", other, 2 ** (k + 2)))
    return GraphOfGroups(
        vertices=(),
        edges=tuple(edges),
        tails=(TailRule("x{k}", 1, 1), TailRule("z{k}", 1, 2)),
        frontier=frozenset({f"x{depth}"}),
        labels=labels,
    )


def tree_labels(g: Graph) -> tuple[str, str]:
    """
    Edge labels for the tree of a type ``{a, b}`` with ``a``, ``b`` non-adjacent:
    the first such pair of Γ in vertex order.
    """
    if is_complete(g):
        raise HypothesisError("a complete graph has no free standard subgroup of rank two")
    i, j = next((i, j) for i in range(len(g)) for j in range(i + 1, len(g)) if not g.adjacent(i, j))
    return g.vertices[i], g.vertices[j]
