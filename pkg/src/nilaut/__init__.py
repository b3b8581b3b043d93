"""Nilpotent and p-group actions on families of compact Riemann surfaces."""
from .kernels import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
