"""Batch front end: flat key=value configs in, deterministic reports out.

Every experiment is described by a small config file; the CLI validates
it against the target command's preconditions, dispatches to the library,
and writes a report atomically.  Reports split into "config" (echo),
"results" (the numerical payload — byte-identical across worker counts),
"fixtures" (hashes of any fixture files consulted), and "meta" (wall
time, workers: everything allowed to vary between runs).

Config schema (lines of key=value; blank lines and #-comments ignored):

  command       count | density | discrepancy | weyl | bounds | dioph
  alphas        comma-separated real descriptions (see formats below)
  ms            comma-separated exponents, first = 1, strictly increasing
  lower_<j>     lower-order coefficients for coordinate j >= 2, constant
                first, e.g. lower_2=1/2,surd:(0+1*sqrt(2))/1
  workers       positive integer (count/density only), default 1
  max_bits      adaptive-precision ceiling, default 2^20
  seed          integer for randomized sub-sampling, default 0

  count:        x=; method=direct|mobius (default direct); d_cutoff=
  density:      grid=comma ints (>= 3); tau= (exact, optional); zeta_bits=
  discrepancy:  d=; n=; the harmonic cutoff h= (default 20); c= (optional)
  weyl:         d=; n=; h=comma ints (one per coordinate)
  dioph:        alpha=; max_q=; mode=poly|exp (default poly);
                window_q= and window_exponent= (optional approximation
                window question)
  bounds:       bound=poly_sum|linear|quadratic|reciprocal|monotone
                poly_sum:   alpha=, m=, h=, n=, q= (optional), eps=,
                            lower=comma coefficients (optional)
                linear:     q=, h=, n=, alpha= (optional: adds the
                            certified reciprocal-cap check)
                quadratic:  alpha=, h=, d=, n=, g=comma coefficients
                reciprocal: alpha=, k=, n=, q= (optional)
                monotone:   u=, v=, m_max=, variant=u_over_v|v_over_u

Real-number descriptions: plain rationals ("1/2", "0.25") or prefixed
forms rat:p/q, surd:(a+b*sqrt(d))/c, cf:[a0;a1,...], dec:digits:places,
liouville:base=B,rule=poly|exp,tau|theta=T,c1=C,depth=D.

Exit codes: 0 success, 2 configuration/precondition error,
3 precision ceiling exhausted, 4 resource limit.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
import time
from fractions import Fraction
from typing import Optional

from . import __version__
from .counting import (CountResult, ProblemSpec, dec_str, density_experiment,
                       density_run_csv, density_run_payload, direct_count,
                       mobius_count)
from .dioph import convergents, convergents_csv, estimate_type, find_window
from .equidist import (discrepancy_report, discrepancy_report_payload,
                       linear_bound, linear_sum_exact, monotone_check,
                       nu_sequence, quadratic_bound, reciprocal_sum,
                       weyl_bound_payload, weyl_bound_report, weyl_sum,
                       weyl_terms_csv)
from .errors import (BeattySieveError, ConfigError, InsufficientData,
                     InvalidSpec, PrecisionExhausted, ResourceLimit)
from .realnum import DEFAULT_MAX_BITS, as_spec, format_real

FIXTURE_ENV = "BEATTYSIEVE_FIXTURE_DIR"

EXIT_CONFIG = 2
EXIT_PRECISION = 3
EXIT_RESOURCE = 4


def fixture_dir() -> str:
    return os.environ.get(FIXTURE_ENV, "fixtures")


def fixture_digest(name: str) -> Optional[dict]:
    """Identity of a fixture file consulted by a command, if present."""
    path = os.path.join(fixture_dir(), name)
    if not os.path.isfile(path):
        return None
    with open(path, "rb") as fh:
        blob = fh.read()
    return {"file": name, "sha256": hashlib.sha256(blob).hexdigest()}


# ---------------------------------------------------------------------------
# config parsing


def parse_config_text(text: str) -> dict:
    cfg = {}
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {ln}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip().lower()
        if key in cfg:
            raise ConfigError(f"line {ln}: duplicate key {key!r}")
        cfg[key] = value.strip()
    return cfg


class _Config:
    """Typed accessors over the flat key=value map; tracks unused keys."""

    def __init__(self, raw: dict):
        self.raw = dict(raw)
        self.seen = set()

    def _take(self, key: str, default=None, required=False):
        self.seen.add(key)
        if key in self.raw:
            return self.raw[key]
        if required:
            raise ConfigError(f"missing required key {key!r}")
        return default

    def str_(self, key, default=None, required=False, choices=None):
        val = self._take(key, default, required)
        if val is not None and choices is not None and val not in choices:
            raise ConfigError(
                f"{key!r} must be one of {sorted(choices)}, got {val!r}")
        return val

    def int_(self, key, default=None, required=False, minimum=None):
        val = self._take(key, default, required)
        if val is None:
            return None
        try:
            out = int(str(val))
        except ValueError:
            raise ConfigError(f"{key!r} must be an integer, got {val!r}")
        if minimum is not None and out < minimum:
            raise ConfigError(f"{key!r} must be >= {minimum}")
        return out

    def float_(self, key, default=None):
        val = self._take(key, default)
        if val is None:
            return None
        try:
            return float(str(val))
        except ValueError:
            raise ConfigError(f"{key!r} must be a number, got {val!r}")

    def int_list(self, key, required=False):
        val = self._take(key, None, required)
        if val is None:
            return None
        try:
            return [int(p.strip()) for p in str(val).split(",") if p.strip()]
        except ValueError:
            raise ConfigError(f"{key!r} must be comma-separated integers")

    def str_list(self, key, required=False):
        val = self._take(key, None, required)
        if val is None:
            return None
        return [p.strip() for p in str(val).split(",") if p.strip()]

    def lower_keys(self):
        return sorted(k for k in self.raw if k.startswith("lower_"))

    def finish(self) -> None:
        unused = set(self.raw) - self.seen
        if unused:
            raise ConfigError(f"unknown config keys: {sorted(unused)}")


def _wrap_spec_errors(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except InvalidSpec as exc:
        raise ConfigError(str(exc)) from exc


def build_problem(cfg: _Config) -> ProblemSpec:
    alphas = cfg.str_list("alphas", required=True)
    ms = cfg.int_list("ms", required=True)
    lower = {}
    for key in cfg.lower_keys():
        try:
            j = int(key.split("_", 1)[1])
        except ValueError:
            raise ConfigError(f"bad lower-term key {key!r}")
        entries = cfg.str_list(key)
        lower[j] = tuple(entries) if entries else None
    lower_terms = ()
    if lower:
        if min(lower) < 2 or max(lower) > len(ms):
            raise ConfigError("lower_<j> keys must satisfy 2 <= j <= k")
        lower_terms = tuple(lower.get(j + 1) for j in range(len(ms)))
    return _wrap_spec_errors(ProblemSpec, tuple(alphas), tuple(ms),
                             lower_terms)


def _exact_or_none(cfg: _Config, key: str):
    val = cfg.str_(key)
    if val is None:
        return None
    try:
        return Fraction(val)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"{key!r} must be an exact rational, got {val!r}")


# ---------------------------------------------------------------------------
# command handlers: each returns (payload dict, csv text or None, fixtures)


def _count_payload(res: CountResult) -> dict:
    return {"x": res.x, "count": res.count, "method": res.method,
            "d_cutoff": res.d_cutoff,
            "density": dec_str(Fraction(res.count, res.x), 20)}


def cmd_count(cfg: _Config, workers: int, max_bits: int, seed: int):
    problem = build_problem(cfg)
    x = cfg.int_("x", required=True, minimum=1)
    method = cfg.str_("method", "direct",
                      choices={"direct", "mobius"})
    d_cutoff = cfg.int_("d_cutoff", minimum=1)
    cfg.finish()
    if method == "direct":
        if d_cutoff is not None:
            raise ConfigError("d_cutoff applies to method=mobius only")
        res = direct_count(problem, x, workers=workers, max_bits=max_bits)
    else:
        res = _wrap_spec_errors(mobius_count, problem, x, d_cutoff,
                                max_bits=max_bits)
    payload = _count_payload(res)
    csv = "x,count,method,d_cutoff\n" \
          f"{res.x},{res.count},{res.method},{res.d_cutoff or ''}\n"
    return payload, csv, []


def cmd_density(cfg: _Config, workers: int, max_bits: int, seed: int):
    problem = build_problem(cfg)
    grid = cfg.int_list("grid", required=True)
    tau = cfg.str_("tau")
    zeta_bits = cfg.int_("zeta_bits", 128, minimum=16)
    cfg.finish()
    run = _wrap_spec_errors(density_experiment, problem, grid, tau=tau,
                            workers=workers, zeta_bits=zeta_bits,
                            max_bits=max_bits)
    return density_run_payload(run), density_run_csv(run), []


def cmd_discrepancy(cfg: _Config, workers: int, max_bits: int, seed: int):
    problem = build_problem(cfg)
    d = cfg.int_("d", 1, minimum=1)
    n = cfg.int_("n", required=True, minimum=1)
    h = cfg.int_("h", 20, minimum=1)
    c = cfg.float_("c")
    cfg.finish()
    ps = nu_sequence(problem, d, n, max_bits=max_bits)
    report = _wrap_spec_errors(discrepancy_report, ps, h, c, seed=seed)
    payload = discrepancy_report_payload(report)
    payload["provenance"] = ps.provenance
    payload["coord_error"] = ps.coord_error
    return payload, weyl_terms_csv(report), []


def cmd_weyl(cfg: _Config, workers: int, max_bits: int, seed: int):
    problem = build_problem(cfg)
    d = cfg.int_("d", 1, minimum=1)
    n = cfg.int_("n", required=True, minimum=1)
    hvec = cfg.int_list("h", required=True)
    cfg.finish()
    res = _wrap_spec_errors(weyl_sum, problem, d, hvec, n,
                            max_bits=max_bits)
    payload = {"d": d, "N": res.N, "h": list(hvec),
               "real": res.value.real, "imag": res.value.imag,
               "magnitude": abs(res.value),
               "error_bound": res.error_bound}
    csv = "d,N,h,real,imag,magnitude,error_bound\n" \
          f"{d},{res.N},{' '.join(map(str, hvec))},{res.value.real!r}," \
          f"{res.value.imag!r},{abs(res.value)!r},{res.error_bound!r}\n"
    return payload, csv, []


def cmd_dioph(cfg: _Config, workers: int, max_bits: int, seed: int):
    alpha = cfg.str_("alpha", required=True)
    max_q = cfg.int_("max_q", required=True, minimum=1)
    mode = cfg.str_("mode", "poly",
                    choices={"poly", "exp", "polynomial", "exponential"})
    mode = {"poly": "polynomial", "exp": "exponential"}.get(mode, mode)
    window_q = cfg.int_("window_q", minimum=2)
    window_exponent = cfg.float_("window_exponent")
    cfg.finish()
    spec = _wrap_spec_errors(as_spec, alpha)
    convs = convergents(spec, max_q, max_bits=max_bits)
    try:
        est = estimate_type(spec, max_q, mode, max_bits=max_bits)
        estimate = {"tau_hat": est.tau_hat, "mode": est.mode,
                    "samples": [[q, val] for q, val in est.samples]}
    except InsufficientData as exc:
        estimate = {"unavailable": str(exc)}
    payload = {
        "alpha": format_real(spec),
        "max_q": max_q,
        "mode": mode,
        "convergents": [
            {"index": c.index, "a": c.a, "q": c.q,
             "quality_lo": dec_str(c.quality.lo, 20),
             "quality_hi": dec_str(c.quality.hi, 20)} for c in convs],
        "type_estimate": estimate,
    }
    if window_q is not None:
        if window_exponent is None and mode == "polynomial":
            raise ConfigError("window_exponent required with window_q "
                              "in poly mode")
        win = _wrap_spec_errors(find_window, spec, window_q,
                                window_exponent
                                if window_exponent is not None else 0.5,
                                mode)
        payload["window"] = {"a": win.a, "q": win.q, "Q": win.Q,
                             "lower": win.lower,
                             "satisfied": win.satisfied}
    return payload, convergents_csv(convs), []


def cmd_bounds(cfg: _Config, workers: int, max_bits: int, seed: int):
    kind = cfg.str_("bound", required=True,
                    choices={"poly_sum", "linear", "quadratic",
                             "reciprocal", "monotone"})
    fixtures = []
    if kind == "poly_sum":
        alpha = _wrap_spec_errors(as_spec, cfg.str_("alpha", required=True))
        m = cfg.int_("m", required=True, minimum=2)
        h = cfg.int_("h", required=True)
        n = cfg.int_("n", required=True, minimum=1)
        q = cfg.int_("q", minimum=1)
        eps = cfg.float_("eps", 0.05)
        lower = cfg.str_list("lower") or ()
        cfg.finish()
        rep = _wrap_spec_errors(weyl_bound_report, alpha, m, h, n, lower,
                                q=q, eps=eps, max_bits=max_bits)
        return weyl_bound_payload(rep), None, fixtures
    if kind == "linear":
        q = cfg.int_("q", required=True, minimum=1)
        h = cfg.int_("h", required=True)
        n = cfg.int_("n", required=True, minimum=1)
        alpha = cfg.str_("alpha")
        cfg.finish()
        payload = {"bound": "linear", "q": q, "h": h, "N": n,
                   "value": _wrap_spec_errors(linear_bound, q, h, n)}
        if alpha is not None:
            chk = _wrap_spec_errors(linear_sum_exact,
                                    as_spec(alpha), h, n, max_bits=max_bits)
            payload["exact_check"] = {
                "actual": chk.actual, "cap": chk.cap,
                "sum_error": chk.sum_error, "certified": chk.certified}
        return payload, None, fixtures
    if kind == "quadratic":
        alpha = _wrap_spec_errors(as_spec, cfg.str_("alpha", required=True))
        h = cfg.int_("h", required=True)
        d = cfg.int_("d", 1, minimum=1)
        n = cfg.int_("n", required=True, minimum=1)
        g = cfg.str_list("g") or ()
        cfg.finish()
        rep = _wrap_spec_errors(quadratic_bound, alpha, h, d, n, g,
                                max_bits=max_bits)
        fx = fixture_digest("lemma_constants.json")
        if fx:
            fixtures.append(fx)
        return ({"bound": "quadratic", "h": rep.h, "d": rep.d, "N": rep.N,
                 "rhs": rep.rhs, "value": rep.bound, "actual": rep.actual,
                 "ratio_sq": rep.ratio_sq,
                 "sum_error_bound": rep.sum_error_bound}, None, fixtures)
    if kind == "reciprocal":
        alpha = _wrap_spec_errors(as_spec, cfg.str_("alpha", required=True))
        k = cfg.int_("k", required=True, minimum=1)
        n = cfg.int_("n", required=True, minimum=1)
        q = cfg.int_("q", minimum=1)
        cfg.finish()
        rep = _wrap_spec_errors(reciprocal_sum, alpha, k, n, q=q,
                                max_bits=max_bits)
        fx = fixture_digest("lemma_constants.json")
        if fx:
            fixtures.append(fx)
        return ({"bound": "reciprocal", "K": rep.K, "N": rep.N, "q": rep.q,
                 "exact_sum": rep.exact_sum,
                 "enclosure": list(rep.enclosure),
                 "lemma_bound": rep.lemma_bound, "ratio": rep.ratio},
                None, fixtures)
    u = cfg.str_("u", required=True)
    v = cfg.str_("v", required=True)
    m_max = cfg.int_("m_max", required=True, minimum=2)
    variant = cfg.str_("variant", required=True)
    cfg.finish()
    ok = _wrap_spec_errors(monotone_check, u, v, m_max, variant)
    return ({"bound": "monotone", "u": u, "v": v, "M": m_max,
             "variant": variant, "nondecreasing": ok}, None, fixtures)


_COMMANDS = {
    "count": cmd_count,
    "density": cmd_density,
    "discrepancy": cmd_discrepancy,
    "weyl": cmd_weyl,
    "dioph": cmd_dioph,
    "bounds": cmd_bounds,
}


# ---------------------------------------------------------------------------
# report assembly and entry point


def run_config(raw: dict, *, workers: Optional[int] = None,
               max_bits: Optional[int] = None) -> dict:
    """Dispatch a parsed config; returns the full report dictionary."""
    cfg = _Config(raw)
    command = cfg.str_("command", required=True, choices=set(_COMMANDS))
    cfg_workers = cfg.int_("workers", 1, minimum=1)
    cfg_bits = cfg.int_("max_bits", DEFAULT_MAX_BITS, minimum=64)
    seed = cfg.int_("seed", 0)
    workers = cfg_workers if workers is None else workers
    max_bits = cfg_bits if max_bits is None else max_bits
    start = time.perf_counter()
    payload, csv, fixtures = _COMMANDS[command](cfg, workers, max_bits, seed)
    elapsed = time.perf_counter() - start
    return {
        "config": dict(raw),
        "results": payload,
        "fixtures": fixtures,
        "meta": {
            "wall_time_s": elapsed,
            "workers": workers,
            "max_bits": max_bits,
            "version": __version__,
        },
        "_csv": csv,
    }


def report_json(report: dict) -> str:
    clean = {k: v for k, v in report.items() if not k.startswith("_")}
    return json.dumps(clean, indent=2, sort_keys=True) + "\n"


def payload_bytes(report: dict) -> bytes:
    """The determinism surface: everything except timing metadata."""
    clean = {k: v for k, v in report.items()
             if not k.startswith("_") and k != "meta"}
    return json.dumps(clean, sort_keys=True).encode()


def atomic_write(path: str, data: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-report-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="beattysieve",
        description="coprimality counting and equidistribution experiments")
    parser.add_argument("command", choices=sorted(_COMMANDS),
                        help="experiment type (must match the config)")
    parser.add_argument("--config", required=True,
                        help="path to a key=value config file")
    parser.add_argument("--workers", type=int, default=None,
                        help="override the config worker count")
    parser.add_argument("--max-bits", type=int, default=None,
                        help="override the adaptive-precision ceiling")
    parser.add_argument("--out", default=None,
                        help="write the report here (default: stdout)")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    args = parser.parse_args(argv)
    try:
        with open(args.config, "r") as fh:
            raw = parse_config_text(fh.read())
        if raw.get("command") != args.command:
            raise ConfigError(
                f"config says command={raw.get('command')!r}, "
                f"CLI asked for {args.command!r}")
        report = run_config(raw, workers=args.workers,
                            max_bits=args.max_bits)
        if args.format == "csv":
            if report["_csv"] is None:
                raise ConfigError(
                    f"command {args.command!r} has no CSV form")
            text = report["_csv"]
        else:
            text = report_json(report)
        if args.out:
            atomic_write(args.out, text)
        else:
            sys.stdout.write(text)
        return 0
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PrecisionExhausted as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except BeattySieveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
