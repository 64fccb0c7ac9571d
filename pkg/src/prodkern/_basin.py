"""Backend selection for the grid classifier.

The compiled extension is used when it importable; otherwise the numpy
fallback is.  Set PRODKERN_BACKEND=python or PRODKERN_BACKEND=compiled to
force a choice (forcing ``compiled`` raises if the extension is missing).
Both backends implement the same ``classify_block`` contract and agree bit
for bit; the benchmark under benchmarks/ compares their throughput.
"""

from __future__ import annotations

import os

from . import _basin_py

try:
    from . import _basincy as _compiled
except ImportError:  # extension not built; fallback stays in charge
    _compiled = None


def available_backends() -> dict:
    out = {"python": _basin_py}
    if _compiled is not None:
        out["compiled"] = _compiled
    return out


def get_backend(name: str | None = None):
    """Resolve a backend module by name, honouring PRODKERN_BACKEND."""
    if name is None:
        name = os.environ.get("PRODKERN_BACKEND", "auto")
    if name in ("auto", ""):
        return _compiled if _compiled is not None else _basin_py
    backends = available_backends()
    if name not in backends:
        raise ValueError(f"unknown or unavailable backend {name!r}; have {sorted(backends)}")
    return backends[name]


def backend_name() -> str:
    return get_backend().BACKEND_NAME


def classify_block(*args, backend: str | None = None):
    return get_backend(backend).classify_block(*args)
