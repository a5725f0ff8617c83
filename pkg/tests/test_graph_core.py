"""Tests for graphs/core.py"""

import pytest

from errors import DisconnectedGraphError, RaagError, UnknownVertexError
from graphs.core import (
    Graph,
    contained_in_join,
    de_rham,
    finite_out,
    has_separating_star,
    is_complete,
    is_connected,
    is_join,
    is_transvection_free,
    link,
    perp,
    star,
)


class TestGraph:
    """Test the Graph value type."""

    def test_from_edges_is_symmetric(self, c5):
        """Test that adjacency is stored in both directions."""
        assert c5.adjacent(0, 1)
        assert c5.adjacent(1, 0)
        assert not c5.adjacent(0, 2)
        assert c5.edge_count == 5

    def test_self_loop_rejected(self):
        """Test that a self-loop is rejected at construction."""
        with pytest.raises(RaagError):
            Graph.from_edges(["a"], [("a", "a")])

    def test_unknown_vertex_in_edge(self):
        """Test that an edge to an unknown vertex is rejected."""
        with pytest.raises(UnknownVertexError):
            Graph.from_edges(["a"], [("a", "b")])

    def test_vertex_lookup(self, c5):
        """Test name and index resolution."""
        assert c5.vertex("v3") == 2
        assert c5.vertex(4) == 4
        with pytest.raises(UnknownVertexError):
            c5.vertex("v9")
        with pytest.raises(KeyError):
            c5.vertex(7)

    def test_equal_graphs_hash_equal(self, c5):
        """Test that two parses of the same graph are interchangeable."""
        other = Graph.from_edges(c5.vertices, [(c5.vertices[i], c5.vertices[j]) for i, j in c5.edges()])
        assert other == c5
        assert hash(other) == hash(c5)


class TestLinkStarPerp:
    """Test links, stars and perps."""

    def test_link(self, c5, k2, c4):
        """Test links on the three small graphs."""
        assert link(c5, "v1") == c5.vertex_set(["v2", "v5"])
        assert link(k2, "a") == k2.vertex_set(["b"])
        assert link(c4, "a") == c4.vertex_set(["b", "d"])

    def test_star(self, c5, k2, c4):
        """Test stars on the three small graphs."""
        assert star(c5, "v1") == c5.vertex_set(["v1", "v2", "v5"])
        assert star(k2, "a") == k2.vertex_set(["a", "b"])
        assert star(c4, "a") == c4.vertex_set(["a", "b", "d"])

    def test_link_unknown_vertex(self, c5):
        """Test that an unknown vertex raises."""
        with pytest.raises(UnknownVertexError):
            link(c5, "x")

    def test_perp(self, c5, c4):
        """Test perps of small vertex sets."""
        assert perp(c5, c5.vertex_set(["v1"])) == link(c5, "v1")
        assert perp(c4, c4.vertex_set(["a", "c"])) == c4.vertex_set(["b", "d"])
        assert perp(c5, c5.vertex_set(["v1", "v2"])) == frozenset()
        assert perp(c5, c5.vertex_set(["v1", "v3"])) == c5.vertex_set(["v2"])

    def test_perp_of_empty_set(self, c5):
        """Test that the empty set is perpendicular to everything."""
        assert perp(c5, frozenset()) == c5.all_vertices

    def test_triple_perp(self, p5):
        """Test that perp∘perp∘perp equals perp on every subset."""
        n = len(p5)
        for mask in range(1 << n):
            s = frozenset(i for i in range(n) if mask >> i & 1)
            assert perp(p5, perp(p5, perp(p5, s))) == perp(p5, s)


class TestDeRham:
    """Test join decompositions."""

    def test_square(self, c4):
        """Test that the square is the join of its two diagonals."""
        d = de_rham(c4)
        assert d.clique_factor == frozenset()
        assert d.irreducible_factors == (c4.vertex_set(["a", "c"]), c4.vertex_set(["b", "d"]))

    def test_pentagon(self, c5):
        """Test that the pentagon is irreducible."""
        d = de_rham(c5)
        assert d.clique_factor == frozenset()
        assert d.irreducible_factors == (c5.all_vertices,)

    def test_clique(self, k2):
        """Test that an edge is all clique factor."""
        d = de_rham(k2)
        assert d.clique_factor == k2.all_vertices
        assert d.irreducible_factors == ()
        assert d.parts == (frozenset([0]), frozenset([1]))

    def test_parts_are_joined(self, c4):
        """Test that every pair of parts is completely joined."""
        parts = de_rham(c4).parts
        for i, p in enumerate(parts):
            for q in parts[i + 1:]:
                assert all(c4.adjacent(a, b) for a in p for b in q)

    def test_empty_set_rejected(self, c5):
        """Test that decomposing the empty set raises."""
        with pytest.raises(RaagError):
            de_rham(c5, frozenset())

    def test_is_join(self, c4, c5):
        """Test the join predicate."""
        assert is_join(c4)
        assert not is_join(c5)
        assert not is_join(c5, c5.vertex_set(["v1"]))


class TestContainedInJoin:
    """Test contained_in_join."""

    def test_examples(self, c5, c4):
        """Test the three reference examples."""
        assert not contained_in_join(c5, c5.all_vertices)
        assert contained_in_join(c4, c4.vertex_set(["a", "b"]))
        assert contained_in_join(c5, c5.vertex_set(["v1"]))

    def test_empty_set_rejected(self, c5):
        """Test that the empty set raises."""
        with pytest.raises(RaagError):
            contained_in_join(c5, frozenset())


class TestRigidityPredicates:
    """Test transvections, separating stars and finite Out."""

    def test_transvection_free(self, c5, c4, k2):
        """Test the transvection scan and its witnesses."""
        assert is_transvection_free(c5)
        assert is_transvection_free(c5).witness is None

        verdict = is_transvection_free(c4)
        assert not verdict
        assert verdict.witness == ("c", "a")

        assert is_transvection_free(k2).witness == ("b", "a")

    def test_separating_star(self, c5, p5, k2):
        """Test separating stars on the pentagon, the path and an edge."""
        assert not has_separating_star(c5)
        verdict = has_separating_star(p5)
        assert verdict
        assert verdict.witness == ("c",)
        assert not has_separating_star(k2)

    def test_separating_star_needs_connected_graph(self):
        """Test that a disconnected graph raises."""
        g = Graph.from_edges(["a", "b", "c"], [("a", "b")])
        assert not is_connected(g)
        with pytest.raises(DisconnectedGraphError):
            has_separating_star(g)

    def test_finite_out(self, c5, c4, p5):
        """Test the finite Out criterion."""
        assert finite_out(c5) is True
        assert finite_out(c4) is False
        assert finite_out(p5) is False

    def test_is_complete(self, k2, c4):
        """Test the completeness predicate."""
        assert is_complete(k2)
        assert not is_complete(c4)
