"""Reading and writing the line-based graph file format."""

import os

from loguru import logger
from smart_open import open as sopen

from errors import GraphFormatError
from graphs.core import Graph

FORBIDDEN_NAME_CHARS = set("-^:#")


def _check_name(name: str, lineno: int) -> None:
    if not name or any(c in FORBIDDEN_NAME_CHARS for c in name):
        raise GraphFormatError(f"invalid vertex name {name!r}", lineno)


def parse_graph(text: str) -> Graph:
    """
    Parse a graph file.

    Format: optional ``#`` comment lines and blank lines, exactly one
    ``vertices:`` line with whitespace-separated names, and any number of
    ``edges:`` lines holding ``u-v`` tokens. The ``vertices:`` order is the
    generator order.

    Args:
        text: Contents of the graph file

    Returns:
        The parsed Graph

    Raises:
        GraphFormatError: with the offending line number
    """
    vertices: list[str] | None = None
    index: dict[str, int] = {}
    edges: list[tuple[int, int]] = []
    seen_edges: set[frozenset[int]] = set()
    pending: list[tuple[int, str]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in ("vertices", "edges"):
            raise GraphFormatError(f"malformed line {line!r}", lineno)

        if key == "vertices":
            if vertices is not None:
                raise GraphFormatError("more than one vertices: line", lineno)
            vertices = []
            for name in rest.split():
                _check_name(name, lineno)
                if name in index:
                    raise GraphFormatError(f"duplicate vertex {name!r}", lineno)
                index[name] = len(vertices)
                vertices.append(name)
        else:
            # edges may precede the vertices line; resolve them afterwards
            pending.extend((lineno, token) for token in rest.split())

    if vertices is None:
        raise GraphFormatError("missing vertices: line")
    if not vertices:
        raise GraphFormatError("the graph has no vertices")

    for lineno, token in pending:
        u, sep, v = token.partition("-")
        if not sep or not u or not v or "-" in v:
            raise GraphFormatError(f"malformed edge token {token!r}", lineno)
        for name in (u, v):
            if name not in index:
                raise GraphFormatError(f"edge {token!r} references unknown vertex {name!r}", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop {token!r}", lineno)
        key = frozenset((index[u], index[v]))
        if key in seen_edges:
            logger.warning(f"line {lineno}: duplicate edge {token!r} ignored")
            continue
        seen_edges.add(key)
        edges.append((index[u], index[v]))

    return Graph.from_edges(vertices, [(vertices[i], vertices[j]) for i, j in edges])


def format_graph(g: Graph) -> str:
    """Serialize a graph in the format read by ``parse_graph``."""
    lines = ["vertices: " + " ".join(g.vertices)]
    edge_tokens = [f"{g.vertices[i]}-{g.vertices[j]}" for i, j in g.edges()]
    if edge_tokens:
        lines.append("edges: " + " ".join(edge_tokens))
    return "\n".join(lines) + "\n"


def load_graph(path: str) -> Graph:
    """Read and parse a graph file (local path, .gz or any smart_open URI)."""
    if "://" not in path and not os.path.exists(path):
        raise FileNotFoundError(f"The file '{path}' does not exist.")
    with sopen(path, "r", encoding="utf-8") as fin:
        text = fin.read()
    graph = parse_graph(text)
    logger.debug(f"Loaded {graph!r} from {path}")
    return graph
