"""Tests for graphs/parsing.py"""

import gzip

import pytest
from loguru import logger

from errors import GraphFormatError
from graphs.parsing import format_graph, load_graph, parse_graph


class TestParseGraph:
    """Test the graph file parser."""

    def test_single_edge(self):
        """Test a two-vertex graph."""
        g = parse_graph("vertices: a b\nedges: a-b")
        assert g.vertices == ("a", "b")
        assert g.edge_count == 1

    def test_pentagon(self, c5):
        """Test the pentagon listed explicitly."""
        g = parse_graph("vertices: v1 v2 v3 v4 v5\nedges: v1-v2 v2-v3 v3-v4 v4-v5 v5-v1")
        assert g == c5

    def test_comments_and_blank_lines(self):
        """Test that comments and blank lines are skipped."""
        text = "# a square\n\nvertices: a b c d\n# edges follow\nedges: a-b b-c\nedges: c-d d-a\n"
        g = parse_graph(text)
        assert g.edge_count == 4

    def test_edges_before_vertices(self):
        """Test that edge lines may come first."""
        g = parse_graph("edges: a-b\nvertices: a b")
        assert g.adjacent(0, 1)

    def test_vertex_order_is_file_order(self):
        """Test that the vertices line fixes generator order."""
        g = parse_graph("vertices: z y x\nedges: x-z")
        assert g.vertices == ("z", "y", "x")
        assert g.adjacent(0, 2)

    def test_self_loop(self):
        """Test that a self-loop is reported with its line number."""
        with pytest.raises(GraphFormatError) as e:
            parse_graph("vertices: a\nedges: a-a")
        assert e.value.line == 2
        assert "self-loop" in str(e.value)

    def test_duplicate_vertex(self):
        """Test that duplicate vertex names are rejected."""
        with pytest.raises(GraphFormatError) as e:
            parse_graph("vertices: a b a")
        assert e.value.line == 1

    def test_unknown_vertex_in_edge(self):
        """Test that edges must reference listed vertices."""
        with pytest.raises(GraphFormatError) as e:
            parse_graph("# header\nvertices: a b\nedges: a-c")
        assert e.value.line == 3

    def test_malformed_line(self):
        """Test that unknown line kinds are rejected."""
        with pytest.raises(GraphFormatError) as e:
            parse_graph("vertices: a b\nnodes: c")
        assert e.value.line == 2

    def test_malformed_edge_token(self):
        """Test that an edge token needs exactly one dash."""
        with pytest.raises(GraphFormatError):
            parse_graph("vertices: a b\nedges: ab")

    def test_forbidden_name(self):
        """Test that names may not contain word syntax characters."""
        with pytest.raises(GraphFormatError):
            parse_graph("vertices: a^b c")

    def test_missing_vertices_line(self):
        """Test that the vertices line is required."""
        with pytest.raises(GraphFormatError):
            parse_graph("edges: a-b\n")

    def test_duplicate_edge_warns(self):
        """Test that a repeated edge is merged with a warning."""
        messages = []
        handler = logger.add(messages.append, level="WARNING")
        try:
            g = parse_graph("vertices: a b\nedges: a-b b-a")
        finally:
            logger.remove(handler)
        assert g.edge_count == 1
        assert any("duplicate edge" in str(m) for m in messages)


class TestFormatAndLoad:
    """Test serialization and file loading."""

    def test_format_round_trip(self, c5, p5):
        """Test that formatting then parsing gives the same graph."""
        assert parse_graph(format_graph(c5)) == c5
        assert parse_graph(format_graph(p5)) == p5

    def test_load_graph(self, graph_file, c4):
        """Test loading a local file."""
        path = graph_file("vertices: a b c d\nedges: a-b b-c c-d d-a\n")
        assert load_graph(path) == c4

    def test_load_gzip(self, tmp_path, k2):
        """Test loading a gzip-compressed file."""
        path = tmp_path / "k2.graph.gz"
        with gzip.open(path, "wt", encoding="utf-8") as fout:
            fout.write("vertices: a b\nedges: a-b\n")
        assert load_graph(str(path)) == k2

    def test_missing_file(self, tmp_path):
        """Test that a missing file raises FileNotFoundError."""
        with pytest.raises(FileNotFoundError):
            load_graph(str(tmp_path / "nope.graph"))
