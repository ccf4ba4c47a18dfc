"""Kernel backend selection.

The compiled ``_kernels`` extension is used when it was built; otherwise the
pure-Python module takes over. Setting ``GEWI_PURE_PYTHON=1`` forces the
fallback.
"""

import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

_BY_NAME = {"python": _kernels_py}
if _compiled is not None:
    _BY_NAME["cython"] = _compiled


def available_backends():
    return sorted(_BY_NAME)


def _default():
    if os.environ.get("GEWI_PURE_PYTHON", "").strip() not in ("", "0"):
        return _kernels_py
    return _compiled if _compiled is not None else _kernels_py


default_kernels = _default()
DEFAULT_BACKEND = default_kernels.BACKEND


def resolve_backend(backend=None):
    """Return a kernel module given a name, module, or ``None`` for the default."""
    if backend is None:
        return default_kernels
    if isinstance(backend, str):
        try:
            return _BY_NAME[backend]
        except KeyError:
            raise ValueError(
                f"unknown or unavailable backend {backend!r}; "
                f"have {available_backends()}"
            ) from None
    return backend


__all__ = [
    "DEFAULT_BACKEND",
    "available_backends",
    "default_kernels",
    "resolve_backend",
]
