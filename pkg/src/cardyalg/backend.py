"""Kernel backend selection: numba-jitted loops with a pure-numpy fallback.

The environment variable CARDYALG_BACKEND picks the implementation of the
hot validation kernels:

    CARDYALG_BACKEND=numba   force numba (error if unavailable)
    CARDYALG_BACKEND=numpy   force the pure-numpy path
    unset / auto             numba if importable, else numpy
"""

import os

_choice = os.environ.get("CARDYALG_BACKEND", "auto").lower()

if _choice not in ("auto", "numba", "numpy"):
    raise ValueError(f"CARDYALG_BACKEND must be auto|numba|numpy, got {_choice!r}")

if _choice == "numpy":
    HAS_NUMBA = False
else:
    try:
        import numba  # noqa: F401

        HAS_NUMBA = True
    except ImportError:
        if _choice == "numba":
            raise
        HAS_NUMBA = False


def backend_name():
    return "numba" if HAS_NUMBA else "numpy"


if HAS_NUMBA:
    from numba import njit
else:

    def njit(*args, **kwargs):
        # signature-compatible no-op decorator
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(fn):
            return fn

        return wrap
