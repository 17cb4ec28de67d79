"""Numerical verification of Mellin-transform functional equations."""
from .exceptions import FeqError

__version__ = "0.1.0"

__all__ = ["FeqError", "__version__"]
