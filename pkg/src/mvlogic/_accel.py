"""Backend selection for the enumeration kernels.

Set ``MVLOGIC_BACKEND=numpy`` to force the pure-numpy path, or
``MVLOGIC_BACKEND=numba`` to force the compiled path regardless of size.
The default (``auto``) compiles only when numba imports and the
enumeration is large enough to amortise the JIT.
"""

import functools
import os

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

HAVE_NUMBA = numba is not None

# interpretations below this count run on numpy even under "auto"
AUTO_THRESHOLD = 1 << 14


def backend_setting() -> str:
    value = os.environ.get("MVLOGIC_BACKEND", "auto").strip().lower()
    if value not in ("auto", "numba", "numpy"):
        raise ValueError(f"MVLOGIC_BACKEND must be auto, numba or numpy, not {value!r}")
    return value


def choose_backend(size: int, requested: str | None = None) -> str:
    setting = requested or backend_setting()
    if setting == "numpy" or not HAVE_NUMBA:
        return "numpy"
    if setting == "numba":
        return "numba"
    return "numba" if size >= AUTO_THRESHOLD else "numpy"


if HAVE_NUMBA:
    njit = functools.partial(numba.njit, cache=True, nogil=True)
else:  # pragma: no cover

    def njit(fn=None, **kwargs):
        if fn is None:
            return lambda f: f
        return fn
