"""
Unit tests for classical.py
"""

import pytest

from double_poisson.bracket import differential_dP
from double_poisson.classical import (
    PlaneField,
    abelianize,
    classical_cohomology,
    comm_poly,
    d0_pi,
    d1_pi,
    degree,
    grade1_cocycles,
    is_cohomologous_to_span,
    rep1_bracket,
    trace_commuting_sign,
    trace_map,
)
from double_poisson.config import Settings
from double_poisson.exceptions import (
    CapExceededError,
    InputFormatError,
    NonHomogeneousError,
    QuiverError,
)
from double_poisson.ncalg import NCPoly
from double_poisson.necklace import PolyField, enumerate_basis
from double_poisson.quiver import free_quiver


def plane_field(grade, *components):
    return PlaneField(grade, tuple(comm_poly(c) for c in components))


class TestPolynomials:
    """Test commutative polynomial helpers."""

    def test_parse(self):
        assert comm_poly("x^2 - 1/2*y") == comm_poly("x**2") - comm_poly("y") * comm_poly("1/2")

    def test_parse_error(self):
        with pytest.raises(InputFormatError):
            comm_poly("x +* y")

    def test_unknown_symbol(self):
        with pytest.raises(InputFormatError):
            comm_poly("x*z")

    def test_degree(self):
        assert degree(comm_poly("x*y")) == 2
        assert degree(comm_poly(0)) is None
        with pytest.raises(NonHomogeneousError):
            degree(comm_poly("x + y^2"))


class TestPlaneField:
    """Test polyvector fields on the plane."""

    def test_defaults_to_zero(self):
        assert PlaneField(1).is_zero()
        assert len(PlaneField(2).components) == 1

    def test_wrong_arity(self):
        with pytest.raises(InputFormatError):
            plane_field(1, "x")

    def test_arithmetic(self):
        v = plane_field(1, "x", "y")

        assert v + (-v) == PlaneField(1)
        assert v.degree() == 1
        assert v.to_dict() == {"grade": 1, "components": ["x", "y"]}

    def test_mixed_degrees(self):
        with pytest.raises(NonHomogeneousError):
            plane_field(1, "x", "y^2").degree()


class TestDifferentials:
    """Test the Lichnerowicz differentials of ψ∂x∧∂y."""

    def test_hamiltonian(self):
        assert d0_pi(comm_poly("x^2"), comm_poly("y")) == plane_field(1, "-x^2", 0)

    def test_square_is_zero(self):
        psi = comm_poly("x^2 + x*y")
        for h in ("x^3", "x*y^2", "y"):
            assert d1_pi(psi, d0_pi(psi, comm_poly(h))).is_zero()

    def test_euler_field_is_a_cocycle(self):
        assert d1_pi(comm_poly("x^2"), plane_field(1, "x", "y")).is_zero()

    def test_d1_needs_grade_one(self):
        with pytest.raises(InputFormatError):
            d1_pi(comm_poly("x"), PlaneField(2))

    def test_grade1_cocycles(self):
        cocycles = grade1_cocycles(comm_poly("x^2"), 1)

        assert len(cocycles) == 2
        for v in cocycles:
            assert d1_pi(comm_poly("x^2"), v).is_zero()


class TestClassicalCohomology:
    """Test degree-wise cohomology tables."""

    def test_x_squared(self):
        report = classical_cohomology(comm_poly("x^2"), 6)

        assert report.column("h1") == [1, 2, 1, 1, 1, 1, 1]
        assert report.column("degree") == list(range(7))
        assert report.to_dict()["psi"] == "x**2"

    def test_linear_psi(self):
        totals = classical_cohomology(comm_poly("y"), 6).totals()

        assert totals == {"h0": 1, "h1": 1, "h2": 0}

    def test_zero_bivector(self):
        report = classical_cohomology(comm_poly(0), 2)

        assert report.column("h0") == [1, 2, 3]
        assert report.column("h1") == [2, 4, 6]

    def test_degree_cap(self):
        with pytest.raises(CapExceededError):
            classical_cohomology(comm_poly("x^2"), 5, Settings(max_degree=4))

    def test_cohomologous_to_span(self):
        psi = comm_poly("x^2")
        target = plane_field(1, 0, "x")

        assert is_cohomologous_to_span(psi, plane_field(1, "-x^2", 0), [])
        assert not is_cohomologous_to_span(psi, target, [])
        assert is_cohomologous_to_span(psi, target, [plane_field(1, 0, "2*x")])
        assert is_cohomologous_to_span(psi, PlaneField(1), [])


class TestTrace:
    """Test the trace on one-dimensional representations."""

    def test_tensors(self, quadratic, P1, P0):
        assert trace_map(quadratic) == plane_field(2, "x^2")
        assert trace_map(P1) == plane_field(2, "y")
        assert trace_map(P0).is_zero()

    def test_wedge_order(self, field):
        assert trace_map(field((1, ["x", "*y", "*x"]))) == plane_field(2, "-x")

    def test_functions_and_fields(self, field):
        assert trace_map(field((1, ["x", "y"]), (2, ["y", "x"]))) == plane_field(0, "3*x*y")
        assert trace_map(field((1, ["y", "*y"]), (1, ["x", "x", "*x"]))) == plane_field(1, "x^2", "y")

    def test_zero_field(self, plane):
        assert trace_map(PolyField(plane), grade=1) == PlaneField(1)

    def test_mixed_star_degrees(self, field):
        with pytest.raises(NonHomogeneousError):
            trace_map(field((1, ["x"]), (1, ["x", "*x"])))

    def test_other_quivers(self):
        with pytest.raises(QuiverError):
            trace_map(PolyField.from_word(free_quiver(("a",)), ["a"]))

    def test_abelianize(self, poly):
        assert abelianize(poly((1, ["x", "y"]), (-1, ["y", "x"]))).is_zero
        assert abelianize(poly((2, ["x", "x"]))) == comm_poly("2*x^2")

    def test_rep1_bracket(self, quadratic, plane):
        x, y = NCPoly.generator(plane, "x"), NCPoly.generator(plane, "y")

        assert rep1_bracket(quadratic, x, y) == comm_poly("x^2")
        assert rep1_bracket(quadratic, y, x) == comm_poly("-x^2")

    def test_commutes_with_differentials(self, quadratic, plane, field):
        """tr(d_P a) = s·d_{tr P}(tr a) with s = -1 on functions, +1 on vector fields."""
        for P in (quadratic, field((1, ["y", "*x", "y", "*y"]))):
            psi = trace_map(P).components[0]
            for w in range(4):
                for necklace in enumerate_basis(plane, 0, w):
                    f = PolyField.of_necklace(plane, necklace)
                    expected = d0_pi(psi, trace_map(f).components[0])
                    if trace_commuting_sign(0) < 0:
                        expected = -expected
                    assert trace_map(differential_dP(P, f), grade=1) == expected
                for necklace in enumerate_basis(plane, 1, w):
                    v = PolyField.of_necklace(plane, necklace)
                    expected = d1_pi(psi, trace_map(v))
                    assert trace_commuting_sign(1) == 1
                    assert trace_map(differential_dP(P, v), grade=2) == expected
