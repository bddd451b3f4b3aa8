"""
Double Poisson Package

Exact computations with double Poisson tensors on path algebras of quivers:
necklaces, the Kontsevich bracket, double Poisson-Lichnerowicz cohomology,
linear tensors of finite-dimensional algebras and the plane trace.
"""

from importlib import import_module

from .config import Settings, get_settings
from .exceptions import CapExceededError, DoublePoissonError
from .quiver import Quiver, double_quiver, free_quiver

__version__ = "1.0.0"

_LAZY_IMPORTS = {
    "NCPoly": (".ncalg", "NCPoly"),
    "TensorElem": (".ncalg", "TensorElem"),
    "parse_ncpoly": (".ncalg", "parse_ncpoly"),
    "Necklace": (".necklace", "Necklace"),
    "PolyField": (".necklace", "PolyField"),
    "canonicalize": (".necklace", "canonicalize"),
    "enumerate_basis": (".necklace", "enumerate_basis"),
    "kontsevich_bracket": (".bracket", "kontsevich_bracket"),
    "double_bracket_of_pair": (".bracket", "double_bracket_of_pair"),
    "is_poisson_tensor": (".bracket", "is_poisson_tensor"),
    "cohomology_summary": (".cohomology", "cohomology_summary"),
    "StructureConstants": (".finalg", "StructureConstants"),
    "tensor_from_constants": (".finalg", "tensor_from_constants"),
    "hochschild_dims": (".finalg", "hochschild_dims"),
    "catalogue_2dim": (".finalg", "catalogue_2dim"),
    "classical_cohomology": (".classical", "classical_cohomology"),
    "trace_map": (".classical", "trace_map"),
}

__all__ = [
    # Configuration and errors
    "Settings",
    "get_settings",
    "DoublePoissonError",
    "CapExceededError",
    # Quivers
    "Quiver",
    "free_quiver",
    "double_quiver",
    # Algebra
    "NCPoly",
    "TensorElem",
    "parse_ncpoly",
    "Necklace",
    "PolyField",
    "canonicalize",
    "enumerate_basis",
    # Brackets and cohomology
    "kontsevich_bracket",
    "double_bracket_of_pair",
    "is_poisson_tensor",
    "cohomology_summary",
    # Finite-dimensional algebras
    "StructureConstants",
    "tensor_from_constants",
    "hochschild_dims",
    "catalogue_2dim",
    # Plane
    "classical_cohomology",
    "trace_map",
]


def __getattr__(name):
    """Resolve the computational entry points on first access."""
    if name not in _LAZY_IMPORTS:
        raise AttributeError(f"module {__name__!r} has no attribute {name!r}")

    module_name, attribute = _LAZY_IMPORTS[name]
    module = import_module(module_name, __name__)
    value = getattr(module, attribute)
    globals()[name] = value
    return value
