"""Tests for groups/parabolic.py"""

import pytest

from errors import HypothesisError
from graphs.core import star
from groups.parabolic import (
    Parabolic,
    centralizer_of_cyclic,
    chain_length_bound,
    check_setwise_pointwise,
    check_transvection_free_lemma,
    conjugate,
    contains,
    intersect_bounded,
    is_strict_chain,
    make_parabolic,
    member,
    normalizer,
    parabolic_equal,
    perp_of,
    standard,
    standard_intersection,
    support,
)
from groups.words import ball, commutator, conjugate_by, element, generator, identity, member_of_standard


def par(g, names, conj=""):
    return make_parabolic(g, g.vertex_set(names), element(g, conj))


class TestMakeParabolic:
    """Test canonical forms."""

    def test_commuting_conjugator_is_absorbed(self, c5):
        """Test that a conjugator in the normalizer is stripped."""
        assert par(c5, ["v1"], "v2").rep.is_identity

    def test_non_commuting_conjugator_stays(self, c5):
        """Test that a conjugator outside the normalizer stays."""
        assert str(par(c5, ["v1"], "v3").rep) == "v3"

    def test_identity(self, c5):
        """Test that the identity conjugator gives a standard subgroup."""
        assert par(c5, ["v1", "v3"]).is_standard

    def test_idempotent(self, c5):
        """Test that canonicalizing twice changes nothing."""
        for x in ball(c5, 2):
            p = make_parabolic(c5, c5.vertex_set(["v1", "v3"]), x)
            assert make_parabolic(c5, p.ptype, p.rep) == p

    def test_text_form(self, c5):
        """Test the textual and JSON forms."""
        p = par(c5, ["v2", "v1"], "v4")
        assert str(p) == 'ptype=[v1,v2] rep="v4"'
        assert p.to_dict() == {"ptype": ["v1", "v2"], "rep": "v4"}


class TestComparison:
    """Test equality, membership and containment."""

    def test_parabolic_equal(self, c5):
        """Test the reference equalities."""
        assert parabolic_equal(par(c5, ["v1"], "v2"), par(c5, ["v1"]))
        assert not parabolic_equal(par(c5, ["v1"], "v3"), par(c5, ["v1"]))
        assert not parabolic_equal(par(c5, ["v1"]), par(c5, ["v2"]))

    def test_member(self, c5):
        """Test membership in conjugated subgroups."""
        p = par(c5, ["v1"], "v3")
        assert member(p, element(c5, "v3 v1 v3^-1"))
        assert not member(par(c5, ["v1"]), element(c5, "v2"))
        assert member(p, identity(c5))

    def test_contains(self, c5):
        """Test containment."""
        assert contains(par(c5, ["v1", "v2"]), par(c5, ["v1"]))
        assert not contains(par(c5, ["v1"]), par(c5, ["v1"], "v3"))
        p = par(c5, ["v1", "v3"], "v4 v2")
        assert contains(p, p)

    def test_standard_intersection(self, c5):
        """Test intersections of standard types."""
        assert standard_intersection(c5, [0, 1], [1, 2]) == frozenset([1])
        assert standard_intersection(c5, [0, 1], []) == frozenset()
        assert standard_intersection(c5, c5.all_vertices, [2, 4]) == frozenset([2, 4])


class TestNormalizerAndCentralizer:
    """Test normalizers, perps and centralizers."""

    def test_normalizer(self, c5, c4):
        """Test the reference normalizers."""
        assert normalizer(par(c5, ["v1"])) == par(c5, ["v1", "v2", "v5"])
        assert normalizer(par(c4, ["a", "c"])) == standard(c4, c4.all_vertices)
        assert normalizer(par(c5, ["v1", "v3"])) == par(c5, ["v1", "v2", "v3"])

    def test_normalizer_contains(self, c5):
        """Test that every parabolic lies in its normalizer."""
        for conj in ("", "v3", "v4 v1", "v2^-1 v5"):
            for names in (["v1"], ["v1", "v3"], ["v2", "v4"]):
                p = par(c5, names, conj)
                assert contains(normalizer(p), p)

    def test_perp_of(self, c5):
        """Test the perp of a conjugated parabolic."""
        assert perp_of(par(c5, ["v1"], "v3")) == par(c5, ["v2", "v5"], "v3")

    def test_centralizer_of_cyclic(self, c5, k2):
        """Test the centralizer of a conjugated generator."""
        assert centralizer_of_cyclic(par(c5, ["v1"])) == par(c5, ["v1", "v2", "v5"])
        assert centralizer_of_cyclic(par(c5, ["v1"], "v3")) == par(c5, ["v1", "v2", "v5"], "v3")
        assert centralizer_of_cyclic(par(k2, ["a"])) == par(k2, ["a", "b"])

    def test_centralizer_needs_cyclic(self, c5):
        """Test that a non-cyclic parabolic is rejected."""
        with pytest.raises(HypothesisError):
            centralizer_of_cyclic(par(c5, ["v1", "v3"]))

    def test_centralizer_matches_commuting_elements(self, c5):
        """Test that commuting with v1 is membership in G_st(v1)."""
        v1 = generator(c5, "v1")
        st_v1 = star(c5, "v1")
        for x in ball(c5, 3):
            assert commutator(x, v1).is_identity == member_of_standard(c5, x, st_v1)


class TestSupport:
    """Test supports and conjugation."""

    def test_support(self, c5):
        """Test the support of a conjugated generator."""
        assert support(c5, element(c5, "v3 v1 v3^-1")) == par(c5, ["v1"], "v3")
        assert support(c5, identity(c5)) == standard(c5, [])

    def test_conjugation_equivariance(self, c5):
        """Test that conjugating a parabolic conjugates its members."""
        p = par(c5, ["v1", "v3"], "v4")
        x = element(c5, "v4 v1 v3 v4^-1")
        assert member(p, x)
        for h in ball(c5, 1):
            assert member(conjugate(p, h), conjugate_by(x, h))
            assert conjugate(p, h) == make_parabolic(c5, p.ptype, h * p.rep)


class TestIntersection:
    """Test intersect_bounded."""

    def test_standard_pair_is_exact(self, c5):
        """Test that standard parabolics intersect in the common type."""
        result, complete = intersect_bounded(par(c5, ["v1", "v2"]), par(c5, ["v2", "v3"]), 0)
        assert result == par(c5, ["v2"])
        assert complete

    def test_disjoint_types(self, c5):
        """Test that disjoint types meet trivially."""
        result, complete = intersect_bounded(par(c5, ["v1"], "v3"), par(c5, ["v2"]), 2)
        assert result.ptype == frozenset()
        assert complete

    def test_nested_pair(self, c5):
        """Test that a parabolic inside another is found."""
        p = par(c5, ["v1"], "v3")
        result, complete = intersect_bounded(p, centralizer_of_cyclic(p), 1)
        assert result == p
        assert complete

    def test_incomplete_search_is_flagged(self, c5):
        """Test that distinct cyclic parabolics give an uncertified answer."""
        result, complete = intersect_bounded(par(c5, ["v1"]), par(c5, ["v1"], "v3"), 1)
        assert result.ptype == frozenset()
        assert not complete


class TestChains:
    """Test chain bounds."""

    def test_chain_length_bound(self, c5):
        """Test the bound |V|+1."""
        assert chain_length_bound(c5) == 6

    def test_strict_chain(self, c5):
        """Test strictly increasing chains."""
        chain = [standard(c5, []), par(c5, ["v1"]), par(c5, ["v1", "v2"]), standard(c5, c5.all_vertices)]
        assert is_strict_chain(chain)
        assert len(chain) <= chain_length_bound(c5)
        assert not is_strict_chain([par(c5, ["v1"]), par(c5, ["v1"])])
        assert not is_strict_chain([par(c5, ["v1"], "v3"), par(c5, ["v1", "v2"])])


class TestLemmaChecks:
    """Test the executable parabolic lemmas."""

    def test_transvection_free_lemma(self, c5):
        """Test that every instance on the pentagon is verified."""
        report = check_transvection_free_lemma(c5, 1)
        assert report.ok, report.failures
        assert report.checked > 0
        assert ("v1", ("v1",)) in report.details
        assert ("v1", ("v2", "v5")) in report.details

    def test_transvection_free_lemma_needs_hypothesis(self, c4, k2):
        """Test that graphs with transvections are rejected."""
        with pytest.raises(HypothesisError):
            check_transvection_free_lemma(c4, 1)
        with pytest.raises(HypothesisError):
            check_transvection_free_lemma(k2, 1)

    def test_setwise_pointwise_small(self, c5):
        """Test that no short element permutes a pair of parabolics."""
        report = check_setwise_pointwise(c5, 2, 1)
        assert report.ok, report.failures
        assert report.checked > 0

    def test_setwise_pointwise_single_family(self, c5):
        """Test that families of one parabolic never fail."""
        assert check_setwise_pointwise(c5, 1, 2).ok

    @pytest.mark.slow
    def test_setwise_pointwise_length_three(self, c5):
        """Test pairs of parabolics against elements of length three."""
        assert check_setwise_pointwise(c5, 2, 3).ok

    def test_parabolic_is_hashable(self, c5):
        """Test that parabolics can be collected in sets."""
        assert len({par(c5, ["v1"], "v2"), par(c5, ["v1"])}) == 1
        assert isinstance(par(c5, ["v1"]), Parabolic)
