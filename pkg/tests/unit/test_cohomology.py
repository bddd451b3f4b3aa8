"""
Unit tests for cohomology.py

Chain dimensions, the boundary matrices and per-bidegree cohomology reports on
small tensors. The full reference tables live in the integration suite.
"""

import pytest

from double_poisson.cohomology import (
    boundary_matrix,
    chain_dim,
    cohomology_summary,
    dims_by_weight,
    is_double_casimir,
    is_poisson_vector_field,
    tensor_weight,
)
from double_poisson.config import Settings
from double_poisson.exceptions import (
    CapExceededError,
    DoublePoissonError,
    NonHomogeneousError,
    NotATensorError,
)
from double_poisson.necklace import PolyField


class TestChainSpaces:
    """Test chain dimensions and boundary matrices."""

    def test_binary_necklace_counts(self, plane):
        assert [chain_dim(plane, 0, w) for w in range(7)] == [1, 2, 3, 4, 6, 8, 14]

    def test_one_star_counts(self, plane):
        assert [chain_dim(plane, 1, w) for w in range(5)] == [2 * 2**w for w in range(5)]

    def test_tensor_weight(self, P0, quadratic, field):
        assert tensor_weight(P0) == 1
        assert tensor_weight(quadratic) == 2
        assert tensor_weight(PolyField.zero(P0.quiver)) == 1

    def test_tensor_weight_rejects_mixed_weights(self, field):
        with pytest.raises(NonHomogeneousError):
            tensor_weight(field((1, ["x", "*x", "*x"]), (1, ["x", "*x", "x", "*y"])))

    def test_tensor_weight_rejects_vector_fields(self, field):
        with pytest.raises(NotATensorError):
            tensor_weight(field((1, ["x", "*x"])))

    def test_linear_coordinates_are_cocycles_for_p0(self, P0):
        m = boundary_matrix(P0, 0, 1)

        assert m.shape == (4, 2)
        assert m.is_zero()

    def test_boundary_composes_to_zero(self, P1, quadratic):
        for P in (P1, quadratic):
            m = tensor_weight(P)
            for w in range(3):
                first = boundary_matrix(P, 0, w)
                second = boundary_matrix(P, 1, w + m - 1)
                assert second.matmul(first).is_zero()


class TestCohomologySummary:
    """Test the per-bidegree reports."""

    def test_p0_weight_three(self, P0):
        (report,) = cohomology_summary(P0, [0], [3])

        assert report.dim_chain == 4
        assert report.dim_H == 2
        assert len(report.representatives) == 2

    def test_p1_vector_fields(self, P1):
        (report,) = cohomology_summary(P1, [1], [0])

        assert report.dim_H == 1
        assert report.dim_kernel == 1
        assert report.dim_image_in == 0
        for representative in report.representatives:
            assert is_poisson_vector_field(P1, representative)

    def test_quadratic_vector_fields(self, quadratic):
        reports = cohomology_summary(quadratic, [1], range(4))

        assert dims_by_weight(reports, 1) == [1, 2, 1, 0]

    def test_casimir_representatives(self, P0):
        for report in cohomology_summary(P0, [0], range(4)):
            for representative in report.representatives:
                assert is_double_casimir(P0, representative)

    def test_without_representatives(self, P0):
        (report,) = cohomology_summary(P0, [0], [2], representatives=False)

        assert report.dim_H == 2
        assert report.representatives == []
        assert "representatives" not in report.to_dict(include_representatives=False)

    def test_higher_degrees_are_flagged(self, P1):
        (report,) = cohomology_summary(P1, [2], [0])

        assert not report.verified
        assert "note" in report.to_dict()

    def test_rejects_non_poisson_tensor(self, field):
        with pytest.raises(NotATensorError):
            cohomology_summary(field((1, ["x", "*x", "*y"])), [0], [0])

    def test_star_cap(self, P0):
        with pytest.raises(CapExceededError):
            cohomology_summary(P0, [2], [0], Settings(max_stars=1))

    def test_weight_cap(self, P0):
        with pytest.raises(CapExceededError):
            cohomology_summary(P0, [0], [9])

    def test_chain_dimension_cap(self, P0):
        with pytest.raises(CapExceededError):
            cohomology_summary(P0, [1], [4], Settings(max_chain_dim=16))

    def test_empty_range(self, P0):
        with pytest.raises(DoublePoissonError):
            cohomology_summary(P0, [], [0])


class TestCasimirsAndVectorFields:
    """Test the degree-0 and degree-1 cocycle predicates."""

    def test_constants_are_casimirs(self, P1, field):
        assert is_double_casimir(P1, field((1, [])))

    def test_generators(self, P0, P1, field):
        assert is_double_casimir(P0, field((1, ["x"])))
        assert not is_double_casimir(P1, field((1, ["x"])))

    def test_poisson_vector_field(self, quadratic, field):
        assert is_poisson_vector_field(quadratic, field((1, ["x", "x", "*x"])))
