"""Command-line reports: point evaluation, zero scans, exponential-sum lab.

Three subcommands wrap the library:

* ``eval``    -- evaluate the lattice zeta function at one point by one or
  more methods and cross-check the values against their error estimates.
* ``zeros``   -- scan a t-interval for zeros of the real rotated function
  and emit them as CSV (schema v1: gamma,t_lo,t_hi,w_residual), with an
  optional gap-law summary block.
* ``expsum``  -- run the full report for a scenario file (bound report,
  reorder identity, comparability windows, differencing diagnostic), or
  the randomized lemma-checker suites.

Exit codes: 0 success, 1 domain/contract failures (bad form, scenario
invariant violations, method disagreement), 2 usage errors.  All defaults
live in RunConfig; a JSON file named by --config or the EPZETA_CONFIG
environment variable overrides them, and flags override both.  For a
fixed configuration and seed the output is byte-identical between runs.
"""

import argparse
import dataclasses
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .epstein import (
    ApproxParams,
    approx_eval,
    dirichlet_series_eval,
    theta_continuation_eval,
)
from .errors import ContractError, DomainError, EpzetaError
from .expsum import (
    Comparability,
    asymptotic_window_report,
    bound_report,
    bprocess_standard_suite,
    load_scenario,
    reorder_identity_check,
    vdc_standard_suite,
    weyl_random_suite,
    weyl_step_diagnostic,
)
from .hardy import REFINE_TOL, gap_report, sign_change_scan
from .qform import validate_form

ENV_CONFIG = "EPZETA_CONFIG"

ZEROS_CSV_SCHEMA = "gamma,t_lo,t_hi,w_residual"
ZEROS_CSV_VERSION = 1

# Reorder-identity relative tolerance (an exact finite reordering).
REORDER_REL_TOL = 1.0e-10


class UsageError(Exception):
    """Bad flag combination or argument value; exits with status 2."""


@dataclass(frozen=True)
class RunConfig:
    """All tunable defaults in one place; flags override per run.

    direct_terms   series cutoff for the direct method
    agree_slack    cross-method gate |v1 - v2| <= slack * (err1 + err2)
    scan_step      zero-scan grid step; 0 selects the adaptive default
    c1..c6         comparability constants for scenario validation
    window_m_max   comparability-window m cap; 0 selects the adaptive one
    reorder_m      reorder identity checked for every m = 1..reorder_m
    weyl_m         differencing diagnostic shift cap
    trials         Weyl-lemma randomized trial count
    vdc_count      van der Corput suite size
    bprocess_count B-process suite size
    seed           suite RNG seed (fixed seed => byte-identical reports)
    out            output path; empty string means stdout
    """

    direct_terms: int = 200_000
    agree_slack: float = 1.0
    scan_step: float = 0.0
    c1: float = 8.0
    c2: float = 0.125
    c3: float = 8.0
    c4: float = 0.125
    c5: float = 8.0
    c6: float = 8.0
    window_m_max: int = 0
    reorder_m: int = 4
    weyl_m: int = 3
    trials: int = 1000
    vdc_count: int = 50
    bprocess_count: int = 20
    seed: int = 20260815
    out: str = ""

    def comparability(self):
        return Comparability(c1=self.c1, c2=self.c2, c3=self.c3,
                             c4=self.c4, c5=self.c5, c6=self.c6)


def load_config(path=None):
    """RunConfig from defaults, overridden by a JSON file when given.

    The file may set any subset of RunConfig's fields; unknown keys and
    non-positive tolerances/counts are rejected (DomainError) rather
    than silently ignored.
    """
    cfg = RunConfig()
    path = path if path is not None else os.environ.get(ENV_CONFIG, "")
    if path:
        with open(path, "r", encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except ValueError as exc:
                raise DomainError(f"config {path}: not valid JSON ({exc})")
        if not isinstance(data, dict):
            raise DomainError(f"config {path}: expected a JSON object")
        known = {f.name: f.type for f in dataclasses.fields(RunConfig)}
        unknown = sorted(set(data) - set(known))
        if unknown:
            raise DomainError(f"config {path}: unknown keys {unknown}")
        if "out" in data and not isinstance(data["out"], str):
            raise DomainError(f"config {path}: out must be a string")
        cfg = dataclasses.replace(cfg, **data)
    _validate_config(cfg)
    return cfg


def _validate_config(cfg):
    positive = [
        "direct_terms", "agree_slack", "c1", "c2", "c3", "c4", "c5", "c6",
        "reorder_m", "weyl_m", "trials", "vdc_count", "bprocess_count",
    ]
    for name in positive:
        if not getattr(cfg, name) > 0:
            raise DomainError(f"config: {name} must be > 0, got {getattr(cfg, name)}")
    for name in ("scan_step", "window_m_max"):
        if getattr(cfg, name) < 0:
            raise DomainError(f"config: {name} must be >= 0, got {getattr(cfg, name)}")


# --------------------------------------------------------------------------
# Argument parsing helpers
# --------------------------------------------------------------------------


def _parse_form(text):
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError(f"--form wants 'a,b,c', got {text!r}")
    try:
        a, b, c = (int(p) for p in parts)
    except ValueError:
        raise UsageError(f"--form wants three integers, got {text!r}")
    return validate_form(a, b, c)


def _parse_s(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"--s wants 're,im', got {text!r}")
    try:
        re_part, im_part = (float(p) for p in parts)
    except ValueError:
        raise UsageError(f"--s wants two floats, got {text!r}")
    return complex(re_part, im_part)


_METHODS = ("direct", "theta", "approx")


def _parse_methods(text):
    methods = tuple(m.strip() for m in text.split(",") if m.strip())
    if not methods:
        raise UsageError("--method wants a comma list from direct,theta,approx")
    for m in methods:
        if m not in _METHODS:
            raise UsageError(f"unknown method {m!r}; choose from {','.join(_METHODS)}")
    seen = []
    for m in methods:
        if m not in seen:
            seen.append(m)
    return tuple(seen)


def _parse_number(text, what):
    """Float from plain or 'p/q' rational text."""
    try:
        if "/" in text:
            return float(Fraction(text))
        return float(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{what}: not a number: {text!r}")


def _parse_laws(text):
    """'e:c[:p],...' -> tuple of (exponent, constant[, log_power])."""
    laws = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(":")
        if len(parts) not in (2, 3):
            raise UsageError(f"--laws wants 'e:c' or 'e:c:p' entries, got {chunk!r}")
        e = _parse_number(parts[0], "--laws exponent")
        c = _parse_number(parts[1], "--laws constant")
        if len(parts) == 3:
            laws.append((e, c, _parse_number(parts[2], "--laws log power")))
        else:
            laws.append((e, c))
    if not laws:
        raise UsageError("--laws: no law entries given")
    return tuple(laws)


def _emit(cfg, args, text):
    out = getattr(args, "out", None) or cfg.out
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _jsonable(obj):
    """Recursively reduce dataclasses/complex/Fraction/NaN for json.dumps."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: _jsonable(getattr(obj, f.name))
                for f in dataclasses.fields(obj)}
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float) and math.isnan(obj):
        return None
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    return obj


def _dump_json(payload):
    return json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n"


# --------------------------------------------------------------------------
# eval
# --------------------------------------------------------------------------


def cmd_eval(args, cfg):
    form = _parse_form(args.form)
    s = _parse_s(args.s)
    methods = _parse_methods(args.method)

    results = {}
    lines = [f"form {form.a},{form.b},{form.c} s {s.real!r},{s.imag!r}"]
    for method in methods:
        if method == "direct":
            res = dirichlet_series_eval(form, s, cfg.direct_terms)
            note = f"terms={cfg.direct_terms}"
        elif method == "theta":
            res = theta_continuation_eval(form, s)
            note = "panels=adaptive"
        else:
            t = s.imag
            if args.X == "auto":
                x_cut = t ** 3
            else:
                x_cut = _parse_number(args.X, "--X")
            res = approx_eval(form, s, ApproxParams(X=x_cut, t=t))
            note = f"X={x_cut!r}"
        results[method] = res
        lines.append(
            f"{method} value {res.value.real!r},{res.value.imag!r} "
            f"err_estimate {res.err_estimate!r} {note}"
        )

    status = 0
    for i, m1 in enumerate(methods):
        for m2 in methods[i + 1:]:
            r1, r2 = results[m1], results[m2]
            diff = abs(r1.value - r2.value)
            allowed = cfg.agree_slack * (r1.err_estimate + r2.err_estimate)
            verdict = "ok" if diff <= allowed else "FAIL"
            lines.append(
                f"agree {m1}~{m2} diff {diff!r} allowed {allowed!r} "
                f"slack={cfg.agree_slack!r} {verdict}"
            )
            if diff > allowed:
                status = 1
    _emit(cfg, args, "\n".join(lines) + "\n")
    return status


# --------------------------------------------------------------------------
# zeros
# --------------------------------------------------------------------------


def cmd_zeros(args, cfg):
    form = _parse_form(args.form)
    if not args.t_from < args.t_to:
        raise UsageError(f"--from must be < --to, got [{args.t_from}, {args.t_to}]")
    step = args.step if args.step is not None else (cfg.scan_step or None)
    if step is not None and not step > 0.0:
        raise UsageError(f"--step must be > 0, got {step}")

    records = sign_change_scan(form, args.t_from, args.t_to, step=step)
    lines = [
        f"# zeros csv v{ZEROS_CSV_VERSION} form={form.a},{form.b},{form.c} "
        f"range=[{args.t_from!r},{args.t_to!r}] "
        f"step={'adaptive' if step is None else repr(step)} "
        f"refine_tol={REFINE_TOL!r}",
        ZEROS_CSV_SCHEMA,
    ]
    for rec in records:
        lines.append(f"{rec.gamma!r},{rec.t_lo!r},{rec.t_hi!r},{rec.w_residual!r}")

    if args.gaps:
        laws = _parse_laws(args.laws) if args.laws else ()
        if len(records) < 2:
            lines.append(f"# gaps: zeros={len(records)} (need >= 2 for gap data)")
        else:
            rep = gap_report([rec.gamma for rec in records], laws)
            lines.append(
                f"# gaps: zeros={len(rep.zeros)} max_gap={rep.max_gap!r}"
            )
            for chk in rep.law_checks:
                first = (
                    "none" if chk.first_violation is None
                    else "T={!r} gap={!r} allowed={!r}".format(*chk.first_violation)
                )
                lines.append(
                    f"# law {chk.name}: windows={chk.windows} passes={chk.passes} "
                    f"first_violation={first}"
                )
    _emit(cfg, args, "\n".join(lines) + "\n")
    return 0


# --------------------------------------------------------------------------
# expsum
# --------------------------------------------------------------------------


def _scenario_report(args, cfg):
    sc = load_scenario(args.scenario, constants=cfg.comparability())
    bounds = bound_report(sc)
    reorders = []
    for m in range(1, cfg.reorder_m + 1):
        chk = reorder_identity_check(sc, m)
        reorders.append({
            "m": m,
            "lhs": chk.lhs,
            "rhs": chk.rhs,
            "equal": chk.equal,
            "pair_count": chk.pair_count,
            "rel_tol": REORDER_REL_TOL,
        })
    windows = asymptotic_window_report(
        sc, m_max=cfg.window_m_max or None)
    win_payload = _jsonable(windows)
    for raw, stat in zip(win_payload["stats"], windows.stats):
        raw["within"] = stat.within()
    steps = weyl_step_diagnostic(sc, cfg.weyl_m)
    payload = {
        "scenario_file": args.scenario,
        "scenario": {
            "form": [sc.qstar.a, sc.qstar.b, sc.qstar.c],
            "delta0": sc.delta0, "h": sc.h, "k": sc.k,
            "t": sc.t, "T": sc.T, "K": sc.K,
            "N": sc.N, "Nprime": sc.Nprime, "r": sc.r, "Delta": sc.Delta,
        },
        "bound_report": bounds,
        "bound_csv_header": bounds.CSV_HEADER,
        "bound_csv_row": bounds.csv_row(),
        "reorder_identity": reorders,
        "windows": win_payload,
        "weyl_step": steps,
    }
    _emit(cfg, args, _dump_json(payload))
    all_equal = all(row["equal"] for row in reorders)
    return 0 if all_equal else 1


def _lemma_suites(args, cfg):
    trials = args.trials if args.trials is not None else cfg.trials
    seed = args.seed if args.seed is not None else cfg.seed
    if trials < 1:
        raise UsageError(f"--trials must be >= 1, got {trials}")
    weyl1 = weyl_random_suite(trials, seed, shift=1)
    weyl2 = weyl_random_suite(trials, seed, shift=2)
    vdc = vdc_standard_suite(cfg.vdc_count, seed)
    bproc = bprocess_standard_suite(cfg.bprocess_count, seed)
    payload = {
        "seed": seed,
        "weyl_shift1": {
            "trials": trials,
            "violations": weyl1.violations,
            "worst_margin": weyl1.worst_margin,
            "requirement": "zero violations (the stated inequality)",
        },
        "weyl_shift2": {
            "trials": trials,
            "violations_literal": weyl2.violations,
            "violations_clamped": weyl2.violations_clamped,
            "worst_margin_literal": weyl2.worst_margin,
            "worst_margin_clamped": weyl2.worst_margin_clamped,
            "requirement": "tabulated only (weight sign ambiguity)",
        },
        "vdc": {
            "count": vdc.count,
            "max_ratio": vdc.max_ratio,
            "limit": 10.0,
        },
        "bprocess": {
            "count": bproc.count,
            "c_max": bproc.c_max,
            "max_stationary_count": bproc.max_stationary_count,
            "limit": 10.0,
        },
    }
    _emit(cfg, args, _dump_json(payload))
    ok = (weyl1.violations == 0 and vdc.max_ratio <= 10.0 and bproc.c_max <= 10.0)
    return 0 if ok else 1


def cmd_expsum(args, cfg):
    if args.scenario and args.suite:
        raise UsageError("--scenario and --suite are mutually exclusive")
    if args.scenario:
        return _scenario_report(args, cfg)
    if args.suite:
        if args.suite != "lemmas":
            raise UsageError(f"unknown suite {args.suite!r}; available: lemmas")
        return _lemma_suites(args, cfg)
    raise UsageError("expsum wants --scenario FILE or --suite lemmas")


# --------------------------------------------------------------------------
# Parser and entry point
# --------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="epzeta",
        description="Lattice zeta functions: evaluation, zero scans, "
                    "and the exponential-sum laboratory.",
    )
    parser.add_argument("--config", default=None,
                        help=f"JSON config path (default: ${ENV_CONFIG})")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate the zeta function at a point")
    p_eval.add_argument("--form", required=True, help="coefficients a,b,c")
    p_eval.add_argument("--s", required=True, help="point re,im")
    p_eval.add_argument("--method", default="theta",
                        help="comma list from direct,theta,approx")
    p_eval.add_argument("--X", default="auto",
                        help="approx cutoff; 'auto' means t^3")
    p_eval.add_argument("--out", default=None, help="write report here")
    p_eval.set_defaults(func=cmd_eval)

    p_zeros = sub.add_parser("zeros", help="scan for critical-line zeros")
    p_zeros.add_argument("--form", required=True, help="coefficients a,b,c")
    p_zeros.add_argument("--from", dest="t_from", type=float, required=True)
    p_zeros.add_argument("--to", dest="t_to", type=float, required=True)
    p_zeros.add_argument("--step", type=float, default=None,
                         help="scan grid step (default: adaptive)")
    p_zeros.add_argument("--gaps", action="store_true",
                         help="append gap summary block")
    p_zeros.add_argument("--laws", default=None,
                         help="gap laws e:c[:p],... (e may be 'p/q')")
    p_zeros.add_argument("--out", default=None, help="write CSV here")
    p_zeros.set_defaults(func=cmd_zeros)

    p_x = sub.add_parser("expsum", help="scenario report or lemma suites")
    p_x.add_argument("--scenario", default=None, help="scenario JSON path")
    p_x.add_argument("--suite", default=None, help="'lemmas'")
    p_x.add_argument("--trials", type=int, default=None,
                     help="randomized trial count (suite)")
    p_x.add_argument("--seed", type=int, default=None, help="suite RNG seed")
    p_x.add_argument("--out", default=None, help="write report here")
    p_x.set_defaults(func=cmd_expsum)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (EpzetaError, ContractError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
