"""Execution-backend selection for the hot cascade kernels.

The numba backend is the default.  Set INTERDEP_NO_NUMBA=1 to force the
pure-NumPy fallback (it is also used automatically when numba cannot be
imported).  ``benchmarks/kernel_bench.py`` compares the two.
"""

from __future__ import annotations

import os

from . import _kernels_np

__all__ = [
    "BACKEND_NAME",
    "DEFAULT_ENUMERATION_CAP",
    "EnumerationCapExceeded",
    "backend_info",
    "fail_times",
    "final_count",
    "best_attack_subset",
    "best_immune_subset",
]

# Guardrail for exhaustive searches, in cascade evaluations.
DEFAULT_ENUMERATION_CAP = 10_000_000


class EnumerationCapExceeded(RuntimeError):
    """An exhaustive search would exceed the configured evaluation cap."""


def _pick_backend():
    flag = os.environ.get("INTERDEP_NO_NUMBA", "").strip()
    if flag not in ("", "0"):
        return _kernels_np, "numpy", "INTERDEP_NO_NUMBA is set"
    try:
        from . import _kernels_nb
    except ImportError as exc:
        return _kernels_np, "numpy", f"numba unavailable: {exc}"
    return _kernels_nb, "numba", "default"


_backend, BACKEND_NAME, _reason = _pick_backend()

fail_times = _backend.fail_times
final_count = _backend.final_count
best_attack_subset = _backend.best_attack_subset
best_immune_subset = _backend.best_immune_subset


def backend_info() -> dict:
    return {"backend": BACKEND_NAME, "reason": _reason}
