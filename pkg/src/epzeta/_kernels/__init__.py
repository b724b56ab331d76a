"""Numerical kernel backend selection.

The compiled Cython extension is preferred; when it is unavailable (source
tree without a build step, unsupported platform) the pure NumPy fallback is
used transparently.  `BACKEND` records which one is active; both expose the
same functions with identical semantics.
"""

try:
    from ._core import BACKEND_NAME, phase_sum, ray_integrals, ray_profile
except ImportError:  # pragma: no cover - depends on build environment
    from .pure import BACKEND_NAME, phase_sum, ray_integrals, ray_profile

BACKEND = BACKEND_NAME

__all__ = ["BACKEND", "phase_sum", "ray_integrals", "ray_profile"]
