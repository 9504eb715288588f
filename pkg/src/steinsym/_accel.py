"""Backend selection for the hot kernels.

The environment variable ``STEINSYM_BACKEND`` picks ``numba`` (default when
numba imports) or ``numpy``. Any other value is treated as ``numpy``.
"""

import os

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None
    HAVE_NUMBA = False


def _default_backend():
    requested = os.environ.get("STEINSYM_BACKEND", "numba").strip().lower()
    if requested == "numba" and HAVE_NUMBA:
        return "numba"
    return "numpy"


BACKEND = _default_backend()


def resolve_backend(backend=None):
    if backend is None:
        return BACKEND
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and not HAVE_NUMBA:
        return "numpy"
    return backend


def njit(*args, **kwargs):
    """``numba.njit`` when available, otherwise an identity decorator."""
    if HAVE_NUMBA:
        kwargs.setdefault("cache", True)
        return numba.njit(*args, **kwargs)

    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]

    def wrap(fn):
        return fn

    return wrap
