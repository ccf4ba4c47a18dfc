"""Ideal qubit engine with compiled or pure-Python amplitude kernels."""

from ._backend import DEFAULT_BACKEND, available_backends, resolve_backend
from .engine import (
    BellOutcome,
    QuantumEngine,
    QubitRef,
    superdense_decode,
    superdense_encode,
)

__all__ = [
    "DEFAULT_BACKEND",
    "BellOutcome",
    "QuantumEngine",
    "QubitRef",
    "available_backends",
    "resolve_backend",
    "superdense_decode",
    "superdense_encode",
]
