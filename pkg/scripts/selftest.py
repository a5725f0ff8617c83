"""
Oracle suites run by ``raag selftest``.

Every suite compares a library result with a brute-force or closed-form
reference and returns a CheckReport. Budget 1 runs the acceptance sizes;
larger budgets scale sample counts up from there.
"""

import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable

import networkx as nx
from loguru import logger

from constructions.free_subgroup import full_support_free, verify_full_support, verify_local_isometry
from constructions.lattices import (
    GraphOfGroups,
    TailRule,
    paper_style_family,
    serre_covolume,
    validate_bass_serre_valence,
)
from errors import NonGeodesicError
from geometry.extension import (
    common_fixed_vertices,
    ext_adjacent,
    ext_ball,
    ext_ball_vertices,
    ext_vertex,
    translate,
)
from geometry.roller import (
    Hyperplane,
    classify_ray,
    crosses,
    hyperplanes_crossed,
    phi_subray_invariance,
    validate_ray,
)
from graphs.core import de_rham, finite_out, is_transvection_free, link, perp, star
from groups.parabolic import check_setwise_pointwise, check_transvection_free_lemma
from groups.words import (
    commutator,
    conjugate_by,
    cyclic_reduce,
    gate_right,
    generator,
    identity,
    in_double_coset,
    invert,
    is_geodesic,
    iter_ball,
    member_of_standard,
    multiply,
    parse_word,
    reduce,
)
from reports import CheckReport
from scripts import oracles

SEED = 1729


def suite_normal_form(budget: int) -> CheckReport:
    report = CheckReport("normal-form")
    rng = random.Random(SEED)

    # every K2 word up to length 8; one-move neighbors stay inside the table
    g = oracles.standard_graph("K2")
    forms = {w: reduce(g, w) for n in range(8 + 1) for w in oracles.all_words(g, n)}
    for w, nf in forms.items():
        report.checked += 1
        if nf.word != oracles.clique_normal_form(g, w):
            report.fail(f"K2: reduce({w}) = {nf}")
        for other in oracles.word_moves(g, w):
            report.checked += 1
            if forms[other] != nf:
                report.fail(f"K2: {other} and {w} reduce differently")

    for name in ("C4", "C5", "P5"):
        g = oracles.standard_graph(name)
        words = [oracles.gen_word(g, oracles.gen_range(0, 8, rng), rng)() for _ in range(10_000 * budget)]
        for i, w in enumerate(words):
            nf = reduce(g, w)
            moved = list(oracles.word_moves(g, w)) + rng.sample(list(oracles.insertions(g, w)), 2)
            for other in moved:
                report.checked += 1
                if reduce(g, other) != nf:
                    report.fail(f"{name}: {other} and {w} reduce differently")
            if i >= 1000 * budget:
                continue
            brute = oracles.brute_normal_form(g, w)
            if brute is None:
                continue
            report.checked += 1
            if nf.word != brute:
                report.fail(f"{name}: reduce({w}) = {nf}, expected {brute}")
        for w in words[-10 * budget:]:
            nf = reduce(g, w)
            for other in oracles.trace_class(g, w, cap=500) or ():
                report.checked += 1
                if reduce(g, other) != nf:
                    report.fail(f"{name}: {other} and {w} reduce differently")

        # gate_right does not depend on the strip order
        for x in [reduce(g, oracles.gen_word(g, oracles.gen_range(0, 6, rng), rng)()) for _ in range(30 * budget)]:
            s = frozenset(v for v in range(len(g)) if rng.random() < 0.5)
            report.checked += 1
            if gate_right(g, x, s, rng) != gate_right(g, x, s):
                report.fail(f"{name}: gate of {x} by {g.names(s)} depends on the strip order")

    g = oracles.standard_graph("C5")
    for x, d in oracles.bfs_distances(g, 3 + budget).items():
        report.checked += 1
        if len(x) != d:
            report.fail(f"C5: |{x}| = {len(x)} but Cayley distance is {d}")
    logger.info(report.summary())
    return report


def suite_geodesic_hyperplanes(budget: int) -> CheckReport:
    report = CheckReport("geodesic-hyperplanes")
    rng = random.Random(SEED)
    for name in ("C5", "C4"):
        g = oracles.standard_graph(name)
        words = [w for n in range(4 + 1) for w in oracles.all_words(g, n)]
        words += [oracles.gen_word(g, oracles.gen_range(5, 6, rng), rng)() for _ in range(5000 * budget)]
        for w in words:
            hs = hyperplanes_crossed(g, w, strict=False)
            report.checked += 1
            if is_geodesic(g, w) != (len(set(hs)) == len(hs)):
                report.fail(f"{name}: geodesity of {w} disagrees with its hyperplanes")

        rep_radius = 2
        squares = oracles.square_crossings(g, 2 * rep_radius + 1)
        planes = sorted(
            {Hyperplane(v, gate_right(g, x, link(g, v))) for x in iter_ball(g, rep_radius) for v in range(len(g))},
            key=lambda h: (h.label, h.coset_rep.word),
        )
        for i, h1 in enumerate(planes):
            for h2 in planes[i + 1:]:
                report.checked += 1
                if crosses(g, h1, h2) != (frozenset((h1, h2)) in squares):
                    report.fail(f"{name}: crosses({h1}, {h2}) disagrees with the square search")

        pool = list(iter_ball(g, 2))
        subsets = [link(g, v) for v in range(len(g))] + [frozenset([v]) for v in range(len(g))]
        for x in pool:
            for a in subsets:
                for b in subsets:
                    report.checked += 1
                    if in_double_coset(g, x, a, b) != oracles.brute_in_double_coset(g, x, a, b, pool):
                        report.fail(f"{name}: double coset test of {x} in G_{g.names(a)} G_{g.names(b)}")
    logger.info(report.summary())
    return report


def suite_centralizer(budget: int) -> CheckReport:
    report = CheckReport("centralizer")
    g = oracles.standard_graph("C5")
    v1 = generator(g, "v1")
    st_v1 = star(g, "v1")
    for x in iter_ball(g, 4):
        report.checked += 1
        if commutator(x, v1).is_identity != member_of_standard(g, x, st_v1):
            report.fail(f"{x}: commuting with v1 disagrees with membership in G_st(v1)")

    # no short conjugate of an element has a smaller letter set than its core
    conjugators = list(iter_ball(g, 2 if budget == 1 else 3))
    for x in iter_ball(g, 2 if budget == 1 else 3):
        core = cyclic_reduce(g, x).core_letters
        for c in conjugators:
            report.checked += 1
            if conjugate_by(x, c).letters < core:
                report.fail(f"{x}: conjugating by {c} shrinks the support below {g.names(core)}")
                break
    logger.info(report.summary())
    return report


def suite_fundamental_domain(budget: int) -> CheckReport:
    report = CheckReport("fundamental-domain")
    g = oracles.standard_graph("C5")
    base = ext_ball(g, 0)
    report.checked += 1
    graph = nx.Graph()
    graph.add_nodes_from(base.vertices)
    graph.add_edges_from(base.edges)
    if len(base.vertices) != 5 or len(base.edges) != 5 or not nx.is_isomorphic(graph, g.nx_graph):
        report.fail(f"radius 0 ball has {len(base.vertices)} vertices and {len(base.edges)} edges")

    radius = 2
    for x in ext_ball_vertices(g, radius):
        report.checked += 1
        if len(x.rep) > radius or translate(ext_vertex(g, x.base, identity(g)), x.rep) != x:
            report.fail(f"{x} is not a translate of a base vertex")

    conjugators = list(iter_ball(g, 2))
    for v in range(len(g)):
        for c1 in conjugators:
            for c2 in conjugators:
                report.checked += 1
                same = ext_vertex(g, v, c1) == ext_vertex(g, v, c2)
                if same != member_of_standard(g, multiply(g, invert(c1), c2), star(g, v)):
                    report.fail(f"vertex {g.vertices[v]}: collision of {c1} and {c2} disagrees with the coset")

    ball = ext_ball(g, 1)
    shifts = list(iter_ball(g, budget))
    for i, x in enumerate(ball.vertices):
        for y in ball.vertices[i + 1:]:
            adjacent = ext_adjacent(x, y)
            for h in shifts:
                report.checked += 1
                if ext_adjacent(translate(x, h), translate(y, h)) != adjacent:
                    report.fail(f"adjacency of {x} and {y} changes under translation by {h}")
    logger.info(report.summary())
    return report


def suite_fixed_vertices(budget: int) -> CheckReport:
    report = CheckReport("fixed-vertices")
    g = oracles.standard_graph("C5")
    max_radius = 4
    for u, w in g.edges():
        x, y = ext_vertex(g, u, identity(g)), ext_vertex(g, w, identity(g))
        for r in range(1, max_radius + 1):
            report.checked += 1
            n = len(common_fixed_vertices(x, y, r))
            if n != 2:
                report.fail(f"adjacent pair {x}, {y}: {n} fixed vertices at radius {r}")

    x, y = ext_vertex(g, "v1", identity(g)), ext_vertex(g, "v3", identity(g))
    counts = []
    for r in range(1, max_radius + 1):
        counts.append(len(common_fixed_vertices(x, y, r)))
        report.checked += 1
        if counts[-1] != 1 + 2 * 3**r:
            report.fail(f"non-adjacent pair: {counts[-1]} fixed vertices at radius {r}, expected {1 + 2 * 3**r}")
    report.details.append({"v1-v3": counts})
    if any(a >= b for a, b in zip(counts, counts[1:])):
        report.fail(f"non-adjacent pair: counts {counts} not strictly increasing")
    logger.info(report.summary())
    return report


def suite_free_subgroup(budget: int) -> CheckReport:
    report = CheckReport("free-full-support")
    for name in ("C5", "C4"):
        g = oracles.standard_graph(name)
        wit = full_support_free(g)
        report.checked += 1
        if not verify_local_isometry(g, wit):
            report.fail(f"{name}: local isometry condition fails")
        inner = verify_full_support(g, wit, 3)
        report.checked += inner.checked
        report.failures += [f"{name}: {f}" for f in inner.failures]
        if inner.checked != 52:
            report.fail(f"{name}: {inner.checked} products checked, expected 52")
    logger.info(report.summary())
    return report


def suite_rays(budget: int) -> CheckReport:
    report = CheckReport("rays")
    cases = [
        ("C4", "", "a b", False, ["a", "b"], ""),
        ("C5", "", "v1 v3 v5 v2 v4", True, ["v1", "v2", "v3", "v4", "v5"], ""),
        ("C5", "v2", "v1", False, ["v1"], "v2"),
    ]
    for name, prefix, period, regular, phi_type, phi_rep in cases:
        g = oracles.standard_graph(name)
        ray = validate_ray(g, parse_word(g, prefix), parse_word(g, period))
        result = classify_ray(g, ray)
        report.checked += 1
        if (result.regular, g.names(result.phi.stype), str(result.phi.rep)) != (regular, phi_type, phi_rep):
            report.fail(f"{name} ray {prefix!r}|{period!r}: got {result.to_dict()}")
        inner = phi_subray_invariance(g, ray, 4)
        report.checked += inner.checked
        report.failures += inner.failures

    # geodesity at the default bound persists a few periods further
    rng = random.Random(SEED)
    g = oracles.standard_graph("C5")
    for _ in range(100 * budget):
        prefix = oracles.gen_word(g, oracles.gen_range(0, 2, rng), rng)()
        period = oracles.gen_word(g, oracles.gen_range(1, 3, rng), rng)()
        try:
            ray = validate_ray(g, prefix, period)
        except NonGeodesicError:
            continue
        report.checked += 1
        try:
            validate_ray(g, prefix, period, ray.k_check + 4)
        except NonGeodesicError as e:
            report.fail(f"ray {prefix}|{period} valid at {ray.k_check} but not at power {e.power}")
    logger.info(report.summary())
    return report


def suite_serre(budget: int) -> CheckReport:
    report = CheckReport("serre-covolume")
    n = 20 * budget
    geometric = GraphOfGroups((), (), (TailRule("x{k}", 1, 1),))
    result = serre_covolume(geometric, n)
    for i, s in enumerate(result.partial_sums, start=1):
        report.checked += 1
        if s != 1 - Fraction(1, 2**i):
            report.fail(f"partial sum {i} is {s}")
    if result.closed_form != 1 or not result.converged:
        report.fail(f"geometric family: closed form {result.closed_form}")

    constant = serre_covolume(GraphOfGroups((), (), (TailRule("y{k}", 1, 0, 1),)), n)
    report.checked += 1
    if constant.converged or constant.closed_form is not None:
        report.fail("constant tail reported as convergent")

    for depth in range(0, 4 * budget + 1):
        family = paper_style_family(depth)
        inner = validate_bass_serre_valence(family)
        report.checked += inner.checked
        report.failures += [f"depth {depth}: {f}" for f in inner.failures]
        if serre_covolume(family, 1).closed_form != Fraction(3, 2):
            report.fail(f"depth {depth}: closed form differs from 3/2")
    logger.info(report.summary())
    return report


def suite_parabolic_lemmas(budget: int) -> CheckReport:
    report = CheckReport("parabolic-lemmas")
    g = oracles.standard_graph("C5")
    for inner in (check_setwise_pointwise(g, 2, 3), check_transvection_free_lemma(g, 1 + budget)):
        report.checked += inner.checked
        report.failures += [f"{inner.name}: {f}" for f in inner.failures]
    logger.info(report.summary())
    return report


def suite_finite_out(budget: int) -> CheckReport:
    report = CheckReport("finite-out")
    for name, expected in (("C5", True), ("C4", False), ("P5", False)):
        report.checked += 1
        if finite_out(oracles.standard_graph(name)) != expected:
            report.fail(f"finite_out({name}) should be {expected}")

    rng = random.Random(SEED)
    for _ in range(30 * budget):
        g = oracles.random_graph(rng.randint(2, 7), 0.5, rng)
        pairs = oracles.transvection_pairs(g)
        verdict = is_transvection_free(g)
        report.checked += 1
        if verdict.value == bool(pairs) or (verdict.witness is not None and verdict.witness not in pairs):
            report.fail(f"{g!r}: transvection scan disagrees with the pair oracle")

        n = len(g)
        for mask in range(1 << n):
            s = frozenset(i for i in range(n) if mask >> i & 1)
            report.checked += 1
            if perp(g, perp(g, perp(g, s))) != perp(g, s):
                report.fail(f"{g!r}: perp is not stable on {g.names(s)}")

        parts = de_rham(g).parts
        for i, p in enumerate(parts):
            for q in parts[i + 1:]:
                report.checked += 1
                if not all(g.adjacent(a, b) for a in p for b in q):
                    report.fail(f"{g!r}: de Rham parts {g.names(p)} and {g.names(q)} are not joined")
    logger.info(report.summary())
    return report


SUITES: dict[str, Callable[[int], CheckReport]] = {
    "normal-form": suite_normal_form,
    "geodesic-hyperplanes": suite_geodesic_hyperplanes,
    "centralizer": suite_centralizer,
    "fundamental-domain": suite_fundamental_domain,
    "fixed-vertices": suite_fixed_vertices,
    "free-full-support": suite_free_subgroup,
    "rays": suite_rays,
    "serre-covolume": suite_serre,
    "parabolic-lemmas": suite_parabolic_lemmas,
    "finite-out": suite_finite_out,
}


def run_suite(name: str, budget: int) -> CheckReport:
    logger.info(f"Running suite {name} (budget {budget})...")
    return SUITES[name](budget)


def run_selftest(budget: int = 1, workers: int = 1) -> list[CheckReport]:
    """Run every suite; reports come back in suite order however they are scheduled."""
    budget = max(1, budget)
    names = list(SUITES)
    if workers <= 1:
        return [run_suite(name, budget) for name in names]
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(run_suite, names, [budget] * len(names)))
