"""
Shared test fixtures and configuration for the double Poisson tests.
"""

import os

import pytest
from hypothesis import HealthCheck, settings as hypothesis_settings

from double_poisson.config import Settings
from double_poisson.ncalg import NCPoly
from double_poisson.necklace import PolyField
from double_poisson.quiver import free_quiver

# Keep the environment from leaking caps into the tests
for _name in list(os.environ):
    if _name.startswith("DOUBLE_POISSON_"):
        del os.environ[_name]

hypothesis_settings.register_profile(
    "ci",
    derandomize=True,
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
hypothesis_settings.load_profile("ci")


@pytest.fixture
def plane():
    """The free algebra C<x, y> as a one-vertex quiver."""
    return free_quiver(("x", "y"))


@pytest.fixture
def default_settings():
    """Default caps, independent of any .env file."""
    return Settings()


@pytest.fixture
def field(plane):
    """Build a PolyField on the plane from (coeff, word) pairs."""

    def build(*terms):
        return PolyField.from_words(plane, terms)

    return build


@pytest.fixture
def poly(plane):
    """Build a path-algebra element on the plane from (coeff, word) pairs."""

    def build(*terms):
        total = NCPoly(plane)
        for coeff, labels in terms:
            total = total + NCPoly.monomial(plane, labels, coeff)
        return total

    return build


@pytest.fixture
def P0(field):
    """x d/dx d/dx"""
    return field((1, ["x", "*x", "*x"]))


@pytest.fixture
def P0_tilde(field):
    """x d/dx d/dx + y d/dy d/dy"""
    return field((1, ["x", "*x", "*x"]), (1, ["y", "*y", "*y"]))


@pytest.fixture
def P1(field):
    """x d/dx d/dx + y d/dx d/dy"""
    return field((1, ["x", "*x", "*x"]), (1, ["y", "*x", "*y"]))


@pytest.fixture
def P1_tilde(field):
    """x d/dx d/dy + y d/dy d/dy"""
    return field((1, ["x", "*x", "*y"]), (1, ["y", "*y", "*y"]))


@pytest.fixture
def quadratic(field):
    """x d/dx x d/dy"""
    return field((1, ["x", "*x", "x", "*y"]))


@pytest.fixture
def write_json(tmp_path):
    """Write a JSON document into tmp_path and return its path."""
    import json

    def write(name, document):
        path = tmp_path / name
        path.write_text(json.dumps(document))
        return path

    return write
