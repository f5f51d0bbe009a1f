"""Command-line front end.

Three subcommands:

  verify      run every residual check and the threshold classifier for one
              family over a chart grid; emits a JSON report
  scan        sweep one family parameter and emit a CSV of norms and margins
  thresholds  print all pinching thresholds for a given (n, |H|^2)

Exit status: 0 success, 1 a verification check failed, 2 invalid usage or
parameters.  Reports are byte-deterministic for a fixed config (including
seed); all numbers are printed with 9 significant digits.

A config file (--config) may hold `key = value` lines mirroring the flags;
explicit flags override file values.  Unknown keys are rejected.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .errors import CslGeoError, InvalidParams
from .pinch import (reference_constants, threshold_basic, threshold_main,
                    threshold_main1, threshold_main3, threshold_tg)
from .verify import RunConfig, run_scan, run_verify
from .zoo import KINDS, FamilySpec

_CONFIG_KEYS = {"family", "n", "params", "grid", "fd_step", "tol_ad",
                "tol_fd", "eq_tol", "seed", "out", "format", "sweep", "hsq"}


def _norm_kind(kind: str) -> str:
    return kind.strip().replace("-", "_")


def _parse_params(text: Optional[str]) -> dict:
    """Parse 'r1=0.6,r2=0.8' into a float dict."""
    if not text:
        return {}
    out = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise InvalidParams(f"malformed parameter {item!r}, expected key=value")
        key, _, val = item.partition("=")
        try:
            out[key.strip()] = float(val)
        except ValueError:
            raise InvalidParams(f"parameter {key.strip()!r} has non-numeric value {val!r}")
    return out


def _parse_sweep(text: str) -> tuple[str, float, float, int]:
    """Parse 'r1=0.1:0.95:86' into (name, lo, hi, count)."""
    if "=" not in text:
        raise InvalidParams(f"malformed sweep {text!r}, expected name=lo:hi:count")
    name, _, rng = text.partition("=")
    parts = rng.split(":")
    if len(parts) != 3:
        raise InvalidParams(f"malformed sweep range {rng!r}, expected lo:hi:count")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise InvalidParams(f"non-numeric sweep range {rng!r}")
    return name.strip(), lo, hi, count


def _load_config_file(path: str) -> dict:
    out = {}
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise InvalidParams(f"cannot read config file {path}: {exc}")
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidParams(f"{path}:{lineno}: expected key = value")
        key, _, val = line.partition("=")
        key = key.strip().replace("-", "_")
        if key not in _CONFIG_KEYS:
            raise InvalidParams(f"{path}:{lineno}: unknown config key {key!r}")
        out[key] = val.strip()
    return out


def _effective(args, key: str, cast, default):
    """Flag value if given, else config-file value, else default."""
    flag = getattr(args, key, None)
    if flag is not None:
        return flag
    filed = getattr(args, "_config_values", {}).get(key)
    if filed is not None:
        try:
            return cast(filed)
        except (TypeError, ValueError):
            raise InvalidParams(f"config value for {key} is not valid: {filed!r}")
    return default


def _write_out(text: str, out_path: Optional[str]) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _family_spec(args) -> FamilySpec:
    kind = _effective(args, "family", str, None)
    if kind is None:
        raise InvalidParams("--family is required")
    kind = _norm_kind(kind)
    if kind not in KINDS:
        raise InvalidParams(f"unknown family kind {kind!r}; choose from {', '.join(KINDS)}")
    n = _effective(args, "n", int, None)
    if n is None:
        # surfaces and curves have a forced dimension; everything else needs --n
        defaults = {"calabi_torus": 2}
        if kind not in defaults:
            raise InvalidParams("--n is required for this family")
        n = defaults[kind]
    params_text = _effective(args, "params", str, None)
    return FamilySpec(kind=kind, n=int(n), params=_parse_params(params_text))


def _cmd_verify(args) -> int:
    spec = _family_spec(args)
    config = RunConfig(
        family=spec,
        grid=int(_effective(args, "grid", int, 16)),
        fd_step=float(_effective(args, "fd_step", float, 1e-4)),
        tol_ad=float(_effective(args, "tol_ad", float, 1e-8)),
        tol_fd=float(_effective(args, "tol_fd", float, 1e-5)),
        eq_tol=float(_effective(args, "eq_tol", float, 1e-7)),
        seed=int(_effective(args, "seed", int, 0)),
        output_path=_effective(args, "out", str, None),
        format=str(_effective(args, "format", str, "json")),
    )
    report = run_verify(config)
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    _write_out(text, config.output_path)
    if not report["passed"]:
        failing = [c["name"] for c in report["checks"] if not c["passed"]]
        print(f"FAILED checks: {', '.join(failing)}", file=sys.stderr)
        return 1
    return 0


_CSV_COLUMNS = ("param", "normB2", "normH2", "threshold_basic", "margin_basic",
                "threshold_main", "margin_main", "equality_flag")


def _cmd_scan(args) -> int:
    spec = _family_spec(args)
    sweep_text = _effective(args, "sweep", str, None)
    if sweep_text is None:
        raise InvalidParams("--sweep is required (name=lo:hi:count)")
    name, lo, hi, count = _parse_sweep(sweep_text)
    eq_tol = float(_effective(args, "eq_tol", float, 1e-7))
    rows = run_scan(spec, name, lo, hi, count, eq_tol)
    columns = _CSV_COLUMNS + (("kappa",) if spec.n == 2 else ())
    lines = [",".join(columns)]
    for row in rows:
        cells = []
        for col in columns:
            v = row[col]
            cells.append(str(v) if isinstance(v, int) else f"{v:.9g}")
        lines.append(",".join(cells))
    _write_out("\n".join(lines) + "\n", _effective(args, "out", str, None))
    return 0


def _cmd_thresholds(args) -> int:
    n = int(_effective(args, "n", int, None) or 0)
    if n < 2:
        raise InvalidParams(f"thresholds need n >= 2, got {n}")
    h2 = float(_effective(args, "hsq", float, 0.0))
    if h2 < 0.0:
        raise InvalidParams(f"hsq must be nonnegative, got {h2}")
    refs = reference_constants(n, n)
    rows = [("basic", threshold_basic(n, h2))]
    # the remaining bounds are stated for n >= 3 only
    if n >= 3:
        rows += [("main", threshold_main(n, h2)),
                 ("main1", threshold_main1(n, h2)),
                 ("main3", threshold_main3(n)),
                 ("tg", threshold_tg(n, h2))]
    else:
        rows += [("main", None), ("main1", None), ("main3", None), ("tg", None)]
    rows += [("simons(p=n)", refs["simons"]), ("lili", refs["lili"])]
    width = max(len(r[0]) for r in rows)
    lines = [f"{'threshold':<{width}}  value", f"{'-' * width}  -----"]
    for name, value in rows:
        shown = "n/a" if value is None else f"{value:.9g}"
        lines.append(f"{name:<{width}}  {shown}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cslgeo",
        description="Numerical verification for contact stationary Legendrian geometry",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file mirroring the flags")

    p_verify = sub.add_parser("verify", parents=[common],
                              help="run residual checks and the classifier")
    p_verify.add_argument("--family", help="family kind, e.g. calabi-torus")
    p_verify.add_argument("--n", type=int, help="intrinsic dimension")
    p_verify.add_argument("--params", help="family parameters, e.g. r1=0.6,r2=0.8")
    p_verify.add_argument("--grid", type=int, help="samples per chart axis (default 16)")
    p_verify.add_argument("--fd-step", dest="fd_step", type=float,
                          help="finite difference step (default 1e-4)")
    p_verify.add_argument("--tol-ad", dest="tol_ad", type=float,
                          help="tolerance for exact-derivative residuals (default 1e-8)")
    p_verify.add_argument("--tol-fd", dest="tol_fd", type=float,
                          help="tolerance for finite-difference residuals (default 1e-5)")
    p_verify.add_argument("--eq-tol", dest="eq_tol", type=float,
                          help="equality detection tolerance (default 1e-7)")
    p_verify.add_argument("--seed", type=int, help="seed for grid subsampling")
    p_verify.add_argument("--out", help="write the JSON report here instead of stdout")
    p_verify.add_argument("--format", choices=["json"], help="report format")
    p_verify.set_defaults(func=_cmd_verify)

    p_scan = sub.add_parser("scan", parents=[common],
                            help="sweep one parameter, emit CSV margins")
    p_scan.add_argument("--family")
    p_scan.add_argument("--n", type=int)
    p_scan.add_argument("--params", help="fixed parameters for the family")
    p_scan.add_argument("--sweep", help="sweep spec name=lo:hi:count")
    p_scan.add_argument("--eq-tol", dest="eq_tol", type=float)
    p_scan.add_argument("--out", help="write the CSV here instead of stdout")
    p_scan.set_defaults(func=_cmd_scan)

    p_thr = sub.add_parser("thresholds", parents=[common],
                           help="print all pinching thresholds for (n, |H|^2)")
    p_thr.add_argument("--n", type=int)
    p_thr.add_argument("--hsq", type=float, help="|H|^2 to evaluate at (default 0)")
    p_thr.set_defaults(func=_cmd_thresholds)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config_path = getattr(args, "config", None)
        args._config_values = _load_config_file(config_path) if config_path else {}
        return args.func(args)
    except CslGeoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
