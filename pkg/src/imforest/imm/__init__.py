"""Induced-minor containment: models, verification and search engines."""

from .forest import find_induced_minor_forest
from .model import InducedMinorModel, Verdict, Violation, model_from_doc, model_to_doc, verify_model
from .search import SearchBudget, SearchResult, Status, find_induced_minor
from .subgraph import find_induced_embedding, is_induced_subgraph

__all__ = [
    "InducedMinorModel",
    "SearchBudget",
    "SearchResult",
    "Status",
    "Verdict",
    "Violation",
    "find_induced_embedding",
    "find_induced_minor",
    "find_induced_minor_forest",
    "is_induced_subgraph",
    "model_from_doc",
    "model_to_doc",
    "verify_model",
]
