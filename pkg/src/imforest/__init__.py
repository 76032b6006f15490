"""Induced-minor containment for forests, constellation constructions, and posi/nega classification."""

from .errors import CertificateError, ImforestError, InconsistencyError, InputError, InvariantError
from .graph import Graph

__version__ = "0.1.0"

__all__ = [
    "CertificateError",
    "Graph",
    "ImforestError",
    "InconsistencyError",
    "InputError",
    "InvariantError",
    "__version__",
]
