"""Abstract projective lines over prime fields and the rationals."""

from .errors import ProjlineError
from .scalars import FieldContext, Scalar

__version__ = "0.1.0"

__all__ = ["FieldContext", "ProjlineError", "Scalar", "__version__"]
