"""
Unit tests for quiver.py
"""

import pytest

from double_poisson.exceptions import QuiverError, UnknownArrowError
from double_poisson.quiver import (
    Arrow,
    BeadKind,
    Quiver,
    composable,
    double_quiver,
    free_quiver,
    validate,
)


@pytest.fixture
def segment():
    """Two vertices joined by a: v -> w."""
    return Quiver.build(["v", "w"], [("a", "v", "w")])


class TestDoubleQuiver:
    """Test doubling of quivers."""

    def test_loops_double_to_loops(self, plane):
        """Loops on one vertex gain starred loops."""
        doubled = double_quiver(plane)

        assert doubled.vertices == ("v",)
        assert [a.name for a in doubled.arrows] == ["x", "y", "*x", "*y"]

    def test_star_arrow_is_reversed(self, segment):
        """a: v -> w gives *a: w -> v."""
        doubled = double_quiver(segment)

        assert doubled.arrows[-1] == Arrow("*a", "w", "v")

    def test_empty_arrow_set(self):
        """No arrows means nothing to double."""
        q = Quiver.build(["v"], [])

        assert double_quiver(q) == q

    def test_doubling_twice_rejected(self, plane):
        """Star names are reserved, so a doubled quiver cannot be doubled again."""
        with pytest.raises(QuiverError, match="reserved prefix"):
            double_quiver(double_quiver(plane))


class TestValidate:
    """Test quiver validation."""

    def test_well_formed(self, segment):
        """A valid quiver has no violations."""
        assert validate(segment) == []

    def test_duplicate_arrow_name(self):
        """Duplicate names give one violation."""
        q = Quiver(("v",), (Arrow("x", "v", "v"), Arrow("x", "v", "v")))

        assert len(validate(q)) == 1

    def test_undeclared_head(self):
        """An arrow into an unknown vertex gives one violation."""
        q = Quiver(("v",), (Arrow("a", "v", "u"),))

        problems = validate(q)
        assert len(problems) == 1
        assert "'u'" in problems[0]

    def test_build_raises_on_violations(self):
        """Quiver.build refuses invalid input."""
        with pytest.raises(QuiverError):
            Quiver.build(["v", "v"], [])


class TestBeads:
    """Test beads of the double quiver."""

    def test_bead_order_plain_then_star(self, plane):
        """Plain beads in declaration order come before star beads."""
        labels = [bead.label for bead in plane.beads()]

        assert labels == ["x", "y", "*x", "*y"]
        assert [bead.rank for bead in plane.beads()] == [0, 1, 2, 3]

    def test_star_bead_reverses_and_has_degree_one(self, segment):
        """tail(*a) = head(a), head(*a) = tail(a), degree 1."""
        star = segment.star_bead("a")
        plain = segment.plain_bead("a")

        assert star.kind is BeadKind.STAR
        assert (star.tail, star.head) == ("w", "v")
        assert (plain.tail, plain.head) == ("v", "w")
        assert (plain.degree, star.degree) == (0, 1)

    def test_unknown_bead(self, plane):
        """Unknown labels raise UnknownArrowError."""
        with pytest.raises(UnknownArrowError):
            plane.bead("z")

    def test_round_trip_dict(self, segment):
        """from_dict inverts to_dict."""
        assert Quiver.from_dict(segment.to_dict()) == segment

    def test_free_quiver(self):
        """free_quiver has one vertex and one loop per name."""
        q = free_quiver(("x", "y", "z"))

        assert q.is_single_vertex
        assert q.arrow_names == ("x", "y", "z")


class TestComposable:
    """Test bead composability."""

    def test_loops_always_compose(self, plane):
        """On one vertex every pair composes."""
        for b1 in plane.beads():
            for b2 in plane.beads():
                assert composable(b1, b2, plane)

    def test_plain_then_star(self, segment):
        """a then *a composes."""
        assert composable(segment.plain_bead("a"), segment.star_bead("a"), segment)

    def test_plain_then_plain(self, segment):
        """a then a does not compose when v != w."""
        a = segment.plain_bead("a")

        assert not composable(a, a, segment)

    def test_foreign_bead(self, plane, segment):
        """Beads of another quiver are rejected."""
        with pytest.raises(UnknownArrowError):
            composable(segment.plain_bead("a"), plane.plain_bead("x"), plane)
