"""Kernel dispatch: numba-jitted hot loops with an interpreted fallback.

The LAZYVOTE_BACKEND environment variable selects the path:

* ``auto`` (default) — jit when numba imports, otherwise interpret;
* ``numba``          — require the jitted kernels, fail loudly otherwise;
* ``python``         — force the interpreted kernels.

Both paths run the same kernel source (see _kernels.py), so results are
bit-identical; benchmarks/bench_backends.py compares their speed.
"""

import os
from types import SimpleNamespace

from . import _kernels

BACKEND_ENV = "LAZYVOTE_BACKEND"

_jitted = None
_jit_error = None


def _jitted_kernels():
    global _jitted, _jit_error
    if _jitted is None and _jit_error is None:
        try:
            import numba
        except ImportError as exc:  # pragma: no cover - numba is a hard dep
            _jit_error = exc
            return None
        _jitted = SimpleNamespace(
            name="numba",
            pne_scan=numba.njit(cache=True)(_kernels.pne_scan),
            history_solve=numba.njit(cache=True)(_kernels.history_solve),
        )
    return _jitted


_PURE = SimpleNamespace(
    name="python",
    pne_scan=_kernels.pne_scan,
    history_solve=_kernels.history_solve,
)


def requested_backend() -> str:
    value = os.environ.get(BACKEND_ENV, "auto").strip().lower()
    if value not in ("auto", "numba", "python"):
        raise ValueError(
            f"{BACKEND_ENV} must be auto, numba or python, not {value!r}"
        )
    return value


def kernels(force: str = None) -> SimpleNamespace:
    """Active kernel namespace (``.name``, ``.pne_scan``, ``.history_solve``)."""
    mode = force if force is not None else requested_backend()
    if mode == "python":
        return _PURE
    jitted = _jitted_kernels()
    if jitted is None:
        if mode == "numba":
            raise RuntimeError("numba backend requested but numba failed to import")
        return _PURE
    return jitted


def backend_name() -> str:
    return kernels().name


def warmup() -> str:
    """Trigger jit compilation outside any timed section."""
    import numpy as np

    ker = kernels()
    ranks = np.array([[-1, 0, 1, 2], [-1, 2, 0, 1]], dtype=np.int32)
    ker.pne_scan(2, 2, ranks)
    ker.history_solve(np.array([0, 1], dtype=np.int64), 2, ranks)
    return ker.name
