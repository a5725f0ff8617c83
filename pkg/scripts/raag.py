"""Command-line front end: ``raag <subcommand> -g graph-file ...``."""

import argparse
import json
import sys
from typing import Callable, Optional, Sequence

from loguru import logger

import config
from constructions.free_subgroup import full_support_free, verify_full_support, verify_local_isometry
from constructions.lattices import (
    load_graph_of_groups,
    paper_style_family,
    report_to_json,
    serre_covolume,
    tree_labels,
    validate_bass_serre_valence,
)
from errors import RaagError
from geometry.extension import (
    ball_to_dot,
    ball_to_json,
    common_fixed_vertices,
    ext_adjacent,
    ext_ball,
    ext_vertex,
)
from geometry.roller import (
    classify_ray,
    crosses,
    hyperplanes_crossed,
    validate_ray,
)
from graphs.core import Graph, de_rham, finite_out, has_separating_star, is_connected, is_transvection_free
from graphs.parsing import load_graph
from groups.parabolic import centralizer_of_cyclic, make_parabolic, support
from groups.words import cyclic_reduce, element, multiply, parse_word
from scripts.selftest import run_selftest

# Each handler returns (exit code, text output, JSON payload).
Result = tuple[int, str, dict]

GRAPHLESS = {"lattice-covolume", "gog-validate", "selftest"}


def configure_logging(level: str = config.LOG_LEVEL) -> None:
    logger.remove()
    logger.add(sys.stderr, level=level)


def _flag(value: bool) -> str:
    return "true" if value else "false"


def cmd_nf(g: Graph, args: argparse.Namespace) -> Result:
    x = element(g, args.word)
    return 0, str(x), {"normal_form": str(x), "length": len(x)}


def cmd_mul(g: Graph, args: argparse.Namespace) -> Result:
    x = multiply(g, element(g, args.left), element(g, args.right))
    return 0, str(x), {"product": str(x), "length": len(x)}


def cmd_support(g: Graph, args: argparse.Namespace) -> Result:
    x = element(g, args.word)
    result = cyclic_reduce(g, x)
    p = support(g, x)
    payload = {
        "conjugator": str(result.conjugator),
        "core": str(result.core),
        "core_letters": g.names(result.core_letters),
        "support": p.to_dict(),
    }
    text = f'conjugator "{result.conjugator}", core "{result.core}"\nsupport {p}'
    return 0, text, payload


def cmd_centralizer(g: Graph, args: argparse.Namespace) -> Result:
    z = make_parabolic(g, [g.vertex(args.vertex)], element(g, args.conj))
    c = centralizer_of_cyclic(z)
    return 0, str(c), c.to_dict()


def cmd_graph_check(g: Graph, args: argparse.Namespace) -> Result:
    tf = is_transvection_free(g)
    decomposition = de_rham(g)
    payload = {
        "vertices": len(g),
        "edges": g.edge_count,
        "connected": is_connected(g),
        "transvection_free": tf.value,
        "transvection_witness": list(tf.witness) if tf.witness else None,
        "clique_factor": g.names(decomposition.clique_factor),
        "irreducible_factors": [g.names(f) for f in decomposition.irreducible_factors],
    }
    lines = [f"transvection-free: {_flag(tf.value)}" + (f" (witness {tf.witness[0]}, {tf.witness[1]})" if tf.witness else "")]
    if payload["connected"]:
        sep = has_separating_star(g)
        payload["separating_star"] = sep.value
        payload["separating_star_witness"] = sep.witness[0] if sep.witness else None
        payload["finite_out"] = finite_out(g)
        lines.append(f"separating-star: {_flag(sep.value)}" + (f" (witness {sep.witness[0]})" if sep.witness else ""))
        lines.append(f"finite-out: {_flag(payload['finite_out'])}")
    else:
        lines.append("connected: false (separating-star and finite-out need a connected graph)")
    n_factors = len(decomposition.irreducible_factors)
    de_rham_text = f"de-rham: {n_factors} irreducible factor{'s' if n_factors != 1 else ''}"
    if decomposition.clique_factor:
        de_rham_text += f", clique factor {{{','.join(payload['clique_factor'])}}}"
    lines.append(de_rham_text)
    return 0, "\n".join(lines), payload


def cmd_ext_ball(g: Graph, args: argparse.Namespace) -> Result:
    ball = ext_ball(g, args.radius)
    payload = ball_to_json(ball)
    if args.dot:
        return 0, ball_to_dot(ball).rstrip("\n"), payload
    lines = [f"{len(ball.vertices)} vertices, {len(ball.edges)} edges (conjugator length ≤ {args.radius})"]
    lines += [str(x) for x in ball.vertices]
    return 0, "\n".join(lines), payload


def cmd_ext_adjacent(g: Graph, args: argparse.Namespace) -> Result:
    x = ext_vertex(g, args.v1, element(g, args.c1))
    y = ext_vertex(g, args.v2, element(g, args.c2))
    adjacent = ext_adjacent(x, y)
    return 0, _flag(adjacent), {"x": x.to_dict(), "y": y.to_dict(), "adjacent": adjacent}


def cmd_fixpoint_scan(g: Graph, args: argparse.Namespace) -> Result:
    x = ext_vertex(g, args.v1, element(g, args.c1))
    y = ext_vertex(g, args.v2, element(g, args.c2))
    counts = {}
    fixed = []
    for r in range(args.radius + 1):
        fixed = common_fixed_vertices(x, y, r)
        counts[r] = len(fixed)
    lines = [f"radius {r}: {n} common fixed vertices" for r, n in counts.items()]
    payload = {"counts": {str(r): n for r, n in counts.items()}, "fixed": [u.to_dict() for u in fixed]}
    return 0, "\n".join(lines), payload


def cmd_ray_classify(g: Graph, args: argparse.Namespace) -> Result:
    ray = validate_ray(g, parse_word(g, args.prefix), parse_word(g, args.period), args.k_check)
    result = classify_ray(g, ray)
    kind = "regular" if result.regular else "non-regular"
    text = f'{kind}, phi type {{{",".join(g.names(result.phi.stype))}}}, rep "{result.phi.rep}"'
    return 0, text, result.to_dict()


def cmd_hyperplanes(g: Graph, args: argparse.Namespace) -> Result:
    hs = hyperplanes_crossed(g, parse_word(g, args.word))
    pairs = [[i, j] for i in range(len(hs)) for j in range(i + 1, len(hs)) if crosses(g, hs[i], hs[j])]
    lines = [f"{i}: {h}" for i, h in enumerate(hs)]
    lines += [f"crossing: {i} {j}" for i, j in pairs]
    return 0, "\n".join(lines), {"hyperplanes": [h.to_dict() for h in hs], "crossing_pairs": pairs}


def cmd_free_full_support(g: Graph, args: argparse.Namespace) -> Result:
    wit = full_support_free(g)
    isometry = verify_local_isometry(g, wit)
    report = verify_full_support(g, wit, args.max_len)
    ok = isometry and report.ok
    payload = {"witness": wit.to_dict(), "local_isometry": isometry, "full_support": report.to_dict()}
    lines = [
        f'W1 = "{wit.w1}"',
        f'W2 = "{wit.w2}"',
        f"local isometry: {_flag(isometry)}",
        report.summary(),
    ]
    lines += [f"  {failure}" for failure in report.failures]
    return (0 if ok else 1), "\n".join(lines), payload


def _gog_from_args(g: Optional[Graph], args: argparse.Namespace):
    if args.gog:
        return load_graph_of_groups(args.gog)
    labels = tree_labels(g) if g is not None else ("a", "b")
    return paper_style_family(args.paper_style, labels)


def cmd_lattice_covolume(g: Optional[Graph], args: argparse.Namespace) -> Result:
    report = serre_covolume(_gog_from_args(g, args), args.terms)
    payload = report_to_json(report)
    lines = [f"partial sum after {len(report.partial_sums)} terms: {payload['partial_sums'][-1] if report.partial_sums else '0/1'}"]
    lines.append(f"converged: {_flag(report.converged)}")
    if payload["closed_form"] is not None:
        lines.append(f"closed form: {payload['closed_form']}")
    return 0, "\n".join(lines), payload


def cmd_gog_validate(g: Optional[Graph], args: argparse.Namespace) -> Result:
    report = validate_bass_serre_valence(_gog_from_args(g, args))
    lines = [report.summary()] + [f"  {failure}" for failure in report.failures]
    return (0 if report.ok else 1), "\n".join(lines), {**report.to_dict(), "vertices": report.details}


def cmd_selftest(g: Optional[Graph], args: argparse.Namespace) -> Result:
    reports = run_selftest(args.budget, args.workers)
    lines = [r.summary() for r in reports]
    for r in reports:
        lines += [f"  {r.name}: {failure}" for failure in r.failures]
    ok = all(r.ok for r in reports)
    return (0 if ok else 1), "\n".join(lines), {"ok": ok, "suites": [r.to_dict() for r in reports]}


HANDLERS: dict[str, Callable[..., Result]] = {
    "nf": cmd_nf,
    "mul": cmd_mul,
    "support": cmd_support,
    "centralizer": cmd_centralizer,
    "graph-check": cmd_graph_check,
    "ext-ball": cmd_ext_ball,
    "ext-adjacent": cmd_ext_adjacent,
    "fixpoint-scan": cmd_fixpoint_scan,
    "ray-classify": cmd_ray_classify,
    "hyperplanes": cmd_hyperplanes,
    "free-full-support": cmd_free_full_support,
    "lattice-covolume": cmd_lattice_covolume,
    "gog-validate": cmd_gog_validate,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-g", "--graph", type=str, help="Graph file (local path or smart_open URI)")
    common.add_argument("--json", action="store_true", help="Emit JSON instead of text")

    parser = argparse.ArgumentParser(prog="raag", description="Computations in right-angled Artin groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nf", parents=[common], help="Normal form of a word")
    p.add_argument("word", help='Word such as "a b a^-1"')

    p = sub.add_parser("mul", parents=[common], help="Product of two words")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("support", parents=[common], help="Cyclic reduction and smallest parabolic containing a word")
    p.add_argument("word")

    p = sub.add_parser("centralizer", parents=[common], help="Centralizer of a conjugated generator")
    p.add_argument("vertex")
    p.add_argument("conj", nargs="?", default="", help="Conjugator word (default: identity)")

    sub.add_parser("graph-check", parents=[common], help="Transvections, separating stars, finite Out, de Rham factors")

    p = sub.add_parser("ext-ball", parents=[common], help="Ball of the extension graph")
    p.add_argument("--radius", type=int, default=1, help="Conjugator length bound")
    p.add_argument("--dot", action="store_true", help="Emit DOT text")

    for name, help_text in (
        ("ext-adjacent", "Adjacency of two extension-graph vertices"),
        ("fixpoint-scan", "Common fixed vertices of two stabilizers, per radius"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("v1")
        p.add_argument("c1", help='Conjugator of v1 ("" for the identity)')
        p.add_argument("v2")
        p.add_argument("c2", help='Conjugator of v2 ("" for the identity)')
        if name == "fixpoint-scan":
            p.add_argument("--radius", type=int, default=2)

    p = sub.add_parser("ray-classify", parents=[common], help="Classify an eventually periodic geodesic ray")
    p.add_argument("--prefix", default="")
    p.add_argument("--period", required=True)
    p.add_argument("--k-check", type=int, default=None, help="Number of periods checked for geodesity")

    p = sub.add_parser("hyperplanes", parents=[common], help="Hyperplanes crossed by a geodesic word")
    p.add_argument("word")

    p = sub.add_parser("free-full-support", parents=[common], help="Build and verify a full-support free pair")
    p.add_argument("--max-len", type=int, default=3, help="Syllable length of checked products")

    for name, help_text in (
        ("lattice-covolume", "Serre covolume partial sums"),
        ("gog-validate", "Bass-Serre tree valence check"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text)
        source = p.add_mutually_exclusive_group(required=True)
        source.add_argument("--gog", type=str, help="Graph-of-groups file")
        source.add_argument("--paper-style", type=int, metavar="DEPTH", help="Built-in family truncated at DEPTH")
        if name == "lattice-covolume":
            p.add_argument("--terms", type=int, default=10)

    p = sub.add_parser("selftest", parents=[common], help="Run the brute-force oracle suites")
    p.add_argument("--budget", type=int, default=config.SELFTEST_BUDGET)
    p.add_argument("--workers", type=int, default=config.SELFTEST_WORKERS)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.graph is None and args.command not in GRAPHLESS:
            parser.error(f"{args.command} needs -g/--graph")
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    try:
        g = load_graph(args.graph) if args.graph else None
        code, text, payload = HANDLERS[args.command](g, args)
    except (RaagError, OSError) as e:
        logger.error(str(e))
        return 1

    print(json.dumps(payload, indent=2, ensure_ascii=False) if args.json else text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
