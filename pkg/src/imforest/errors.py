"""Exception hierarchy shared by every module."""

from __future__ import annotations


class ImforestError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ImforestError, ValueError):
    """Malformed or out-of-range input (bad vertex id, parameter, file)."""


class CertificateError(ImforestError):
    """A proposed model or partition violates its structural contract."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class InvariantError(ImforestError):
    """An internal construction step produced an object breaking its invariant."""

    def __init__(self, message: str, stage: str | None = None):
        super().__init__(f"[{stage}] {message}" if stage else message)
        self.stage = stage


class InconsistencyError(ImforestError):
    """Neither a positive model nor a negative witness could be produced."""
