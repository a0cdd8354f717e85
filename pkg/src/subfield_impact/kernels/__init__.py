"""Hot numeric kernels with two interchangeable backends.

The backend is chosen once, at import, from the ``SUBFIELD_IMPACT_BACKEND``
environment variable:

``numba`` (default when numba imports)
    jit-compiled loops.
``numpy``
    vectorised numpy, no compilation step.

Both backends return identical integers for every kernel, so results never
depend on the backend. ``backend_module(name)`` gives direct access to either
one (tests and ``benchmarks/bench_kernels.py`` use it to compare them).
"""
import importlib
import os

from ..errors import InvalidConfig

ENV_VAR = "SUBFIELD_IMPACT_BACKEND"
BACKENDS = ("numba", "numpy")


def backend_module(name):
    if name not in BACKENDS:
        raise InvalidConfig(f"unknown kernel backend {name!r}; choose from {BACKENDS}")
    return importlib.import_module(f"._{name}", __name__)


def _select():
    wanted = os.environ.get(ENV_VAR, "").strip().lower()
    if wanted:
        return wanted, backend_module(wanted)
    try:
        return "numba", backend_module("numba")
    except ImportError:
        return "numpy", backend_module("numpy")


BACKEND, _impl = _select()

count_cited = _impl.count_cited
group_sums = _impl.group_sums
success_numerator = _impl.success_numerator
attach_citations = _impl.attach_citations

__all__ = [
    "BACKEND",
    "BACKENDS",
    "attach_citations",
    "backend_module",
    "count_cited",
    "group_sums",
    "success_numerator",
]
