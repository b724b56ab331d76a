"""Parameter scenarios for the lattice double-sum laboratory.

A scenario fixes a positive definite integer form, a rational approximation
h/k to 1/sqrt(Delta) inside a prescribed two-sided window, and the scales
(t, T, K, N, N') of the annulus sum.  The derived rational offset

    r = inv(h*delta0 mod k) / k - 1 / (2 h k delta0)

drives every phase in the transformation chain, so it is computed exactly
from the integers (h, k, delta0) and carried both as an exact Fraction and
as the float field stored in scenario files.
"""

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import CapacityExceeded, DomainError
from ..qform import QuadraticForm, validate_form

__all__ = [
    "Comparability",
    "DEFAULT_COMPARABILITY",
    "ExpSumScenario",
    "build_scenario",
    "exact_offset",
    "load_scenario",
    "make_scenario",
    "save_scenario",
    "scenario_from_dict",
    "scenario_to_dict",
    "scenario_violations",
    "validate_scenario",
]


@dataclass(frozen=True)
class Comparability:
    """Two-sided windows standing in for the implicit comparability constants.

    c1 bounds the approximation gap from below (K/T <= c1*|1/sqrt(Delta)-h/k|);
    c2, c3 bracket h and k against sqrt(T/K); c4, c5 bracket t against T; and
    c6 caps the annulus start N against K.  Defaults are factor-8 windows.
    """

    c1: float = 8.0
    c2: float = 0.125
    c3: float = 8.0
    c4: float = 0.125
    c5: float = 8.0
    c6: float = 8.0


DEFAULT_COMPARABILITY = Comparability()

_SCENARIO_KEYS = ("qstar", "delta0", "h", "k", "t", "T", "K", "N", "Nprime", "r", "Delta")


def exact_offset(h, k, delta0):
    """Exact rational offset inv(h*delta0 mod k)/k - 1/(2*h*k*delta0)."""
    if h < 1 or k < 1 or delta0 < 1:
        raise DomainError(f"offset needs positive h, k, delta0, got {h}, {k}, {delta0}")
    try:
        inv = pow(h * delta0, -1, k)
    except ValueError:
        g = math.gcd(h * delta0, k)
        raise DomainError(
            f"coprimality: gcd(h*delta0, k) = gcd({h * delta0}, {k}) = {g} != 1"
        ) from None
    return Fraction(inv, k) - Fraction(1, 2 * h * k * delta0)


@dataclass(frozen=True)
class ExpSumScenario:
    """One admissible parameter tuple for the double-sum chain.

    qstar is the positive definite form whose lattice annulus N <= Q*(x,y) <= N'
    is summed; (h, k) approximates 1/sqrt(Delta); delta0 divides Delta; r is the
    float image of the exact rational offset; t, T, K set the oscillation scale.
    """

    qstar: QuadraticForm
    delta0: int
    h: int
    k: int
    t: float
    T: float
    K: float
    N: float
    Nprime: float
    r: float
    Delta: int

    def offset_fraction(self):
        """The offset r as an exact Fraction."""
        return exact_offset(self.h, self.k, self.delta0)

    def phase_scale(self):
        """The integer 2*h*k*delta0 appearing in every phase denominator."""
        return 2 * self.h * self.k * self.delta0


def scenario_violations(sc, constants=DEFAULT_COMPARABILITY):
    """All violated scenario invariants, each named in a human-readable line.

    Returns an empty tuple when the scenario is admissible.  Checks are ordered
    so that structural failures (coprimality, divisibility) are reported before
    the derived quantities that depend on them.
    """
    cc = constants
    bad = []
    qs = sc.qstar
    if qs.delta > sc.Delta:
        bad.append(
            f"discriminant window: |d| = {qs.delta} of qstar exceeds Delta = {sc.Delta}"
        )
    if sc.delta0 < 1 or sc.Delta % sc.delta0 != 0:
        bad.append(f"divisibility: delta0 = {sc.delta0} does not divide Delta = {sc.Delta}")
    if sc.h < 1 or sc.k < 1:
        bad.append(f"positivity: h = {sc.h} and k = {sc.k} must be >= 1")
        return tuple(bad)
    g = math.gcd(sc.h * sc.delta0, sc.k)
    if g != 1:
        bad.append(
            f"coprimality: gcd(h*delta0, k) = gcd({sc.h * sc.delta0}, {sc.k}) = {g} != 1"
        )
    if not (sc.T > 0.0 and sc.K > 0.0):
        bad.append(f"positivity: T = {sc.T} and K = {sc.K} must be > 0")
        return tuple(bad)
    gap = abs(1.0 / math.sqrt(sc.Delta) - sc.h / sc.k)
    if sc.K / sc.T > cc.c1 * gap:
        bad.append(
            "approximation window (lower): K/T = "
            f"{sc.K / sc.T:.6g} > c1*|1/sqrt(Delta) - h/k| = {cc.c1 * gap:.6g}"
        )
    if gap > math.pi * sc.K / (sc.T * sc.Delta):
        bad.append(
            "approximation window (upper): |1/sqrt(Delta) - h/k| = "
            f"{gap:.6g} > pi*K/(T*Delta) = {math.pi * sc.K / (sc.T * sc.Delta):.6g}"
        )
    root = math.sqrt(sc.T / sc.K)
    for name, val in (("h", sc.h), ("k", sc.k)):
        if not (cc.c2 * root <= val <= cc.c3 * root):
            bad.append(
                f"comparability: {name} = {val} outside [c2, c3]*sqrt(T/K) = "
                f"[{cc.c2 * root:.6g}, {cc.c3 * root:.6g}]"
            )
    if not (cc.c4 * sc.T <= sc.t <= cc.c5 * sc.T):
        bad.append(
            f"comparability: t = {sc.t:.6g} outside [c4*T, c5*T] = "
            f"[{cc.c4 * sc.T:.6g}, {cc.c5 * sc.T:.6g}]"
        )
    if not (1.0 <= sc.N <= sc.Nprime <= 2.0 * sc.N):
        bad.append(f"annulus: need 1 <= N <= Nprime <= 2N, got N = {sc.N}, Nprime = {sc.Nprime}")
    if sc.N > cc.c6 * sc.K:
        bad.append(f"annulus: N = {sc.N} exceeds c6*K = {cc.c6 * sc.K:.6g}")
    if g == 1:
        r_exact = float(exact_offset(sc.h, sc.k, sc.delta0))
        if abs(sc.r - r_exact) > 1e-12 * max(1.0, abs(r_exact)):
            bad.append(
                f"offset: r = {sc.r!r} is not inv(h*delta0 mod k)/k - 1/(2 h k delta0) "
                f"= {r_exact!r}"
            )
    return tuple(bad)


def validate_scenario(sc, constants=DEFAULT_COMPARABILITY):
    """Return sc unchanged, or raise DomainError naming the violated invariant."""
    bad = scenario_violations(sc, constants)
    if bad:
        extra = f" (+{len(bad) - 1} more)" if len(bad) > 1 else ""
        raise DomainError(f"scenario invariant violated: {bad[0]}{extra}")
    return sc


def make_scenario(qstar, delta0, h, k, t, T, K, N, Nprime, Delta,
                  constants=DEFAULT_COMPARABILITY, check=True):
    """Assemble a scenario, computing r exactly from (h, k, delta0).

    qstar may be a QuadraticForm or an (a, b, c) triple.  With check=True the
    full invariant battery runs and raises DomainError on the first violation.
    """
    form = qstar if isinstance(qstar, QuadraticForm) else validate_form(*qstar)
    r = float(exact_offset(h, k, delta0))
    sc = ExpSumScenario(
        qstar=form, delta0=int(delta0), h=int(h), k=int(k), t=float(t), T=float(T),
        K=float(K), N=float(N), Nprime=float(Nprime), r=r, Delta=int(Delta),
    )
    if check:
        validate_scenario(sc, constants)
    return sc


def _default_qstar(Delta):
    """A small form with |d| = Delta when one exists, else the largest |d| < Delta.

    Integer forms need |d| = 0 or 3 mod 4, so Delta = 1, 2 mod 4 falls back to
    Delta - 1 or Delta - 2; the scenario only requires |d| <= Delta.
    """
    for dd in range(int(Delta), 2, -1):
        if dd % 4 == 0:
            return validate_form(1, 0, dd // 4)
        if dd % 4 == 3:
            return validate_form(1, 1, (dd + 1) // 4)
    raise DomainError(f"no positive definite integer form with |d| <= {Delta}")


def _convergents(Delta, k_max):
    """Continued-fraction convergents of 1/sqrt(Delta) with denominators <= k_max.

    Exact surd arithmetic: 1/sqrt(Delta) = (0 + sqrt(Delta))/Delta, and the
    standard (P, Q) recurrence keeps every partial quotient an integer.  For
    square Delta the target is rational and the list is empty (the rounding
    sweep in build_scenario is then the only candidate source).
    """
    s = math.isqrt(int(Delta))
    if s * s == Delta:
        return []
    out = []
    p_prev, p_cur = 1, 0
    q_prev, q_cur = 0, 1
    big_p, big_q = 0, int(Delta)
    for _ in range(256):
        a = (big_p + s) // big_q
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        if q_cur > k_max:
            break
        if p_cur >= 1:
            out.append((p_cur, q_cur))
        big_p = a * big_q - big_p
        big_q = (Delta - big_p * big_p) // big_q
    return out


def build_scenario(T, K, Delta, qstar=None, delta0=1, N=64.0, Nprime=None, t=None,
                   constants=DEFAULT_COMPARABILITY):
    """Search an admissible (h, k) and assemble a validated scenario.

    Candidates come from the continued-fraction convergents of 1/sqrt(Delta)
    plus a rounding sweep h = round(k/sqrt(Delta)) + {-2..2} over the admissible
    denominator range; among those passing every window the one whose gap
    |1/sqrt(Delta) - h/k| is closest (log-scale) to the window's geometric
    mean wins, with ties broken toward smaller k then smaller h.
    """
    cc = constants
    T = float(T)
    K = float(K)
    N = float(N)
    Nprime = 2.0 * N if Nprime is None else float(Nprime)
    t = T if t is None else float(t)
    form = _default_qstar(Delta) if qstar is None else (
        qstar if isinstance(qstar, QuadraticForm) else validate_form(*qstar))
    root = math.sqrt(T / K)
    k_lo = max(1, math.ceil(cc.c2 * root))
    k_hi = math.floor(cc.c3 * root)
    if k_hi - k_lo > 2_000_000:
        raise CapacityExceeded(
            f"denominator sweep of {k_hi - k_lo} candidates exceeds the search budget"
        )
    window_lo = K / (cc.c1 * T)
    window_hi = math.pi * K / (T * Delta)
    if window_lo > window_hi:
        raise DomainError(
            f"approximation window empty: c1 = {cc.c1} needs c1 > Delta/pi = {Delta / math.pi:.6g}"
        )
    mid = math.sqrt(window_lo * window_hi)
    target = 1.0 / math.sqrt(Delta)
    cands = set(_convergents(Delta, k_hi))
    for k in range(k_lo, k_hi + 1):
        h0 = round(k * target)
        for dh in (-2, -1, 0, 1, 2):
            cands.add((h0 + dh, k))
    best = None
    for h, k in sorted(cands):
        if h < 1 or not (k_lo <= k <= k_hi):
            continue
        if not (cc.c2 * root <= h <= cc.c3 * root):
            continue
        if math.gcd(h * delta0, k) != 1:
            continue
        gap = abs(target - h / k)
        if not (window_lo <= gap and K / T <= cc.c1 * gap and gap <= window_hi):
            continue
        key = (abs(math.log(gap / mid)), k, h)
        if best is None or key < best[0]:
            best = (key, h, k)
    if best is None:
        raise DomainError(
            f"no admissible (h, k) for T={T:g}, K={K:g}, Delta={Delta} "
            "within the comparability windows"
        )
    _, h, k = best
    return make_scenario(form, delta0, h, k, t, T, K, N, Nprime, Delta, constants)


def scenario_to_dict(sc):
    """Plain-dict image of a scenario (qstar as its [a, b, c] triple)."""
    return {
        "qstar": [sc.qstar.a, sc.qstar.b, sc.qstar.c],
        "delta0": sc.delta0,
        "h": sc.h,
        "k": sc.k,
        "t": sc.t,
        "T": sc.T,
        "K": sc.K,
        "N": sc.N,
        "Nprime": sc.Nprime,
        "r": sc.r,
        "Delta": sc.Delta,
    }


def scenario_from_dict(data, constants=DEFAULT_COMPARABILITY, check=True):
    """Rebuild a scenario from its dict image, requiring exactly the known keys.

    The stored r is kept as-is (validation recomputes the exact offset and
    flags a mismatch), so structurally broken files -- e.g. gcd(h*delta0,k) > 1,
    where the offset formula is undefined -- still load far enough to be
    rejected with the right invariant named.
    """
    if set(data.keys()) != set(_SCENARIO_KEYS):
        missing = sorted(set(_SCENARIO_KEYS) - set(data.keys()))
        unknown = sorted(set(data.keys()) - set(_SCENARIO_KEYS))
        parts = []
        if missing:
            parts.append(f"missing keys {missing}")
        if unknown:
            parts.append(f"unknown keys {unknown}")
        raise DomainError("scenario file: " + " and ".join(parts))
    triple = data["qstar"]
    if not (isinstance(triple, (list, tuple)) and len(triple) == 3):
        raise DomainError(f"scenario file: qstar must be an [a, b, c] triple, got {triple!r}")
    form = validate_form(int(triple[0]), int(triple[1]), int(triple[2]))
    sc = ExpSumScenario(
        qstar=form,
        delta0=int(data["delta0"]),
        h=int(data["h"]),
        k=int(data["k"]),
        t=float(data["t"]),
        T=float(data["T"]),
        K=float(data["K"]),
        N=float(data["N"]),
        Nprime=float(data["Nprime"]),
        r=float(data["r"]),
        Delta=int(data["Delta"]),
    )
    if check:
        validate_scenario(sc, constants)
    return sc


def save_scenario(sc, path):
    """Write the scenario as an indented JSON document."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(scenario_to_dict(sc), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_scenario(path, constants=DEFAULT_COMPARABILITY, check=True):
    """Read a scenario JSON file written by save_scenario (or by hand)."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return scenario_from_dict(data, constants, check)
