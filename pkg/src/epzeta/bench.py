"""Kernel benchmark: compiled extension vs pure NumPy fallback.

Times the three numerical kernels on realistic workloads and reports the
per-call best-of-R wall time for each backend, the speedup, and the worst
disagreement between the two results (which must be at rounding level --
the backends implement identical semantics).

Run as::

    python -m epzeta.bench [--repeat R] [--phases N] [--t T]
"""

import argparse
import math
import sys
import time

import numpy as np

from . import _kernels
from ._kernels import pure
from .epstein import (
    _GL_W,
    _GL_X,
    TAILDEC,
    _build_panels,
    _ray_truncation,
    _rotation_angle,
    _theta_terms,
)
from .qform import validate_form

try:
    from ._kernels import _core
except ImportError:  # pragma: no cover - depends on build environment
    _core = None


def _best_time(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _ray_args(form, t, sigma=0.5):
    omega = _rotation_angle(t)
    cw = math.cos(omega)
    sw = math.sin(omega)
    A, R = _theta_terms(form, cw)
    a0 = float(A[0])
    p = max(sigma - 1.0, -sigma, 0.0)
    rho_max = _ray_truncation(a0, cw, p)
    plo, phi = _build_panels(a0, cw, sw, abs(t), rho_max)
    return A, R, sigma, t, 1.0, omega, plo, phi, _GL_X, _GL_W, TAILDEC


def _workloads(args):
    form = validate_form(1, 0, 1)
    ray = _ray_args(form, args.t)
    prof = (ray[0], ray[1], ray[4], ray[5], ray[6], ray[7], ray[8], ray[9], ray[10])
    rng = np.random.default_rng(20260815)
    frac = rng.random(args.phases)

    def diff_ray(a, b):
        return max(abs(a[0] - b[0]), abs(a[1] - b[1]), abs(a[2] - b[2]))

    def diff_profile(a, b):
        return max(float(np.max(np.abs(x - y))) for x, y in zip(a, b))

    def diff_phase(a, b):
        return abs(a[0] - b[0]) + abs(a[1] - b[1])

    n_nodes = ray[6].size * len(_GL_X)
    return [
        (f"ray_integrals t={args.t:g} ({ray[0].size} terms, {n_nodes} nodes)",
         lambda k: k.ray_integrals(*ray), diff_ray),
        (f"ray_profile   t={args.t:g} ({n_nodes} nodes)",
         lambda k: k.ray_profile(*prof), diff_profile),
        (f"phase_sum     {args.phases} phases",
         lambda k: k.phase_sum(frac), diff_phase),
    ]


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="python -m epzeta.bench",
        description="Benchmark the compiled kernels against the pure fallback.",
    )
    parser.add_argument("--repeat", type=int, default=7,
                        help="best-of repetitions per kernel (default 7)")
    parser.add_argument("--phases", type=int, default=1_000_000,
                        help="phase_sum array length (default 1e6)")
    parser.add_argument("--t", type=float, default=1000.0,
                        help="ordinate for the ray workloads (default 1000)")
    args = parser.parse_args(argv)

    print(f"active backend: {_kernels.BACKEND}")
    if _core is None:
        print("compiled extension not importable; timing the pure fallback only")
    header = f"{'workload':44s} {'pure':>10s} {'compiled':>10s} {'speedup':>8s} {'max diff':>10s}"
    print(header)
    print("-" * len(header))
    for label, call, diff in _workloads(args):
        pure_res = call(pure)
        pure_t = _best_time(lambda: call(pure), args.repeat)
        if _core is not None:
            core_res = call(_core)
            core_t = _best_time(lambda: call(_core), args.repeat)
            print(f"{label:44s} {pure_t:10.6f} {core_t:10.6f} "
                  f"{pure_t / core_t:7.2f}x {diff(pure_res, core_res):10.2e}")
        else:
            print(f"{label:44s} {pure_t:10.6f} {'-':>10s} {'-':>8s} {'-':>10s}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
