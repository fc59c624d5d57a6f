"""Compute-backend selection.

The numeric kernels exist in two implementations: numba-jitted loops and
pure numpy. The environment variable ``CORRSYNTH_BACKEND`` picks one:

* ``auto`` (default) — numba when it imports cleanly, numpy otherwise
* ``numba`` — require numba; raise if it is unavailable
* ``numpy`` — force the pure-numpy path even when numba is installed

Resolution happens once, at first import of :mod:`corrsynth.kernels`.
Both backends satisfy the same contracts; results agree to floating-point
noise but are not bit-identical across backends, so pipelines that need
byte-reproducible output must pin the backend along with the seed.
"""

import os

ENV_VAR = "CORRSYNTH_BACKEND"

_VALID = ("auto", "numba", "numpy")


def numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def resolve_backend() -> str:
    """Return ``"numba"`` or ``"numpy"`` per the environment flag."""
    requested = os.environ.get(ENV_VAR, "auto").strip().lower()
    if requested not in _VALID:
        raise ValueError(
            f"{ENV_VAR}={requested!r} is not one of {', '.join(_VALID)}"
        )
    if requested == "numpy":
        return "numpy"
    if requested == "numba":
        if not numba_available():
            raise ImportError(
                f"{ENV_VAR}=numba but numba is not importable in this environment"
            )
        return "numba"
    return "numba" if numba_available() else "numpy"
