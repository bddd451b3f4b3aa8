"""
Exception hierarchy for the double Poisson engine.

Every error raised on purpose by the library derives from ``DoublePoissonError``,
which itself is a ``ValueError`` so callers that only care about bad input can
catch the builtin.
"""


class DoublePoissonError(ValueError):
    """Base class for all library errors."""


class ConfigurationError(DoublePoissonError):
    """An environment or CLI cap override is malformed."""


class QuiverError(DoublePoissonError):
    """A quiver violates its structural invariants."""


class UnknownArrowError(QuiverError):
    """A bead or monomial references an arrow the quiver does not declare."""


class MixedQuiverError(DoublePoissonError):
    """Two operands live over different quivers."""


class NotClosedError(DoublePoissonError):
    """A word that must be a cycle is open or not composable."""


class InputFormatError(DoublePoissonError):
    """Textual or JSON input could not be interpreted."""


class NotATensorError(DoublePoissonError):
    """A PolyField expected to have star-degree exactly 2 does not."""


class NonHomogeneousError(DoublePoissonError):
    """A grading-homogeneous input was required."""


class NonLinearTensorError(DoublePoissonError):
    """A tensor expected to be linear (one plain bead per necklace) is not."""


class CapExceededError(DoublePoissonError):
    """A resource guard (stars, weight, chain dimension, degree) was hit."""
