"""Command-line entry point: configuration, suite execution, report files.

Configuration syntax is line-based ``key = value`` with ``#`` comments.
List values are comma-separated.  Recognized keys:

    suites    = all | comma list of check suites
    families  = comma list of family ids
    hbar_list = comma list of positive reals
    grid      = d, n_points, half_width
    s_list    = comma list of smoothness orders
    p_list    = comma list of integrability exponents
    r_list    = comma list of secondary exponents
    rank      = family rank (positive integer)
    seed      = unsigned integer
    output    = path prefix for report files
    format    = csv | json

Exit codes: 0 when no pass/fail record failed, 1 on any failure,
2 on configuration errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

from .families import FAMILY_IDS
from .harness import ALL_SUITES, CheckRecord, Report, run_suite, sorted_params_string

DEFAULT_HBARS = [1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125]


@dataclass
class RunConfig:
    suites: list = field(default_factory=lambda: ["all"])
    families: list = field(default_factory=lambda: [
        "toplitz-gaussian", "random-lowrank-bandlimited", "hermite-projection"])
    hbar_list: list = field(default_factory=lambda: list(DEFAULT_HBARS))
    grid: tuple = (1, 48, 8.0)
    s_list: list = field(default_factory=lambda: [0.25, 0.5, 0.75, 1.0])
    p_list: list = field(default_factory=lambda: [1.0, 1.5, 2.0, 3.0])
    r_list: list = field(default_factory=lambda: [2.0])
    rank: int = 4
    seed: int = 42
    output: str = "report"
    format: str = "csv"

    def validate(self):
        if not self.suites:
            raise ConfigError("suites must be nonempty (use 'all')")
        if self.suites != ["all"]:
            bad = set(self.suites) - set(ALL_SUITES)
            if bad:
                raise ConfigError(f"unknown suites: {sorted(bad)}")
        bad = set(self.families) - set(FAMILY_IDS)
        if bad:
            raise ConfigError(f"unknown families: {sorted(bad)}")
        if not self.hbar_list or any(h <= 0 for h in self.hbar_list):
            raise ConfigError("hbar_list must contain positive values")
        d, n, L = self.grid
        if int(n) % 2 or int(n) < 2:
            raise ConfigError(f"n_points must be even and >= 2, got {n}")
        if L <= 0 or int(d) < 1:
            raise ConfigError(f"bad grid triple {self.grid}")
        if self.rank < 1:
            raise ConfigError(f"rank must be positive, got {self.rank}")
        if self.seed < 0:
            raise ConfigError("seed must be a nonnegative integer")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.format}")
        return self


class ConfigError(ValueError):
    pass


_LIST_KEYS = {"suites", "families", "hbar_list", "s_list", "p_list", "r_list"}
_FLOAT_LISTS = {"hbar_list", "s_list", "p_list", "r_list"}


def parse_config(text: str) -> RunConfig:
    """Parse the key-value syntax; raises ConfigError with a line number."""
    cfg = RunConfig()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (t.strip() for t in line.split("=", 1))
        if not hasattr(cfg, key):
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        try:
            if key in _LIST_KEYS:
                items = [t.strip() for t in value.split(",") if t.strip()]
                if key in _FLOAT_LISTS:
                    setattr(cfg, key, [float(t) for t in items])
                else:
                    setattr(cfg, key, items)
            elif key == "grid":
                d, n, L = (t.strip() for t in value.split(","))
                cfg.grid = (int(d), int(n), float(L))
            elif key in ("seed", "rank"):
                setattr(cfg, key, int(value))
            elif key in ("output", "format"):
                setattr(cfg, key, value)
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key}: {exc}") from exc
    return cfg.validate()


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        return f"{x:.12g}"
    return str(x)


CSV_HEADER = "check_id,params,lhs,rhs,ratio,bound,status"


def records_to_csv(report: Report) -> str:
    lines = [CSV_HEADER]
    for r in report.records:
        params = sorted_params_string(r.params).replace(",", ";")
        lines.append(",".join([
            r.check_id, params, _fmt(r.lhs), _fmt(r.rhs), _fmt(r.ratio), _fmt(r.bound), r.status]))
    return "\n".join(lines) + "\n"


def records_to_json(report: Report) -> str:
    body = {
        "records": [
            {
                "check_id": r.check_id,
                "params": {k: (_fmt(v) if isinstance(v, float) else v)
                           for k, v in sorted(r.params.items())},
                "lhs": _fmt(r.lhs),
                "rhs": _fmt(r.rhs),
                "ratio": _fmt(r.ratio),
                "bound": _fmt(r.bound) if r.bound is not None else None,
                "status": r.status,
            }
            for r in report.records
        ],
        "summary": {
            "n_records": report.summary["n_records"],
            "n_pass": report.summary["n_pass"],
            "n_fail": report.summary["n_fail"],
            "n_report_only": report.summary["n_report_only"],
            "worst_ratio": {k: _fmt(v) for k, v in report.summary["worst_ratio"].items()},
        },
    }
    return json.dumps(body, indent=1, sort_keys=True) + "\n"


def emit_report(report: Report, fmt: str, prefix: str) -> str:
    path = f"{prefix}.{fmt}"
    text = records_to_csv(report) if fmt == "csv" else records_to_json(report)
    with open(path, "w") as fh:
        fh.write(text)
    return path


def parse_report_csv(text: str) -> list:
    """Round-trip reader for the CSV schema (used by tests and the plots tool)."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("missing or malformed CSV header")
    out = []
    for i, ln in enumerate(lines[1:], start=2):
        parts = ln.split(",")
        if len(parts) != 7:
            raise ValueError(f"row {i}: expected 7 columns, got {len(parts)}")
        cid, params, lhs, rhs, ratio, bound, status = parts
        pdict = {}
        for item in params.split(";"):
            if not item:
                continue
            k, v = item.split("=", 1)
            try:
                pdict[k] = float(v)
            except ValueError:
                pdict[k] = v
        out.append(CheckRecord(
            cid, pdict, float(lhs), float(rhs), float(ratio),
            float(bound) if bound else None, status))
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="phasecalc",
        description="Run the phase-space inequality verification suite.")
    ap.add_argument("--config", help="path to a key=value configuration file")
    ap.add_argument("--suite", help="comma list of suites (overrides config)")
    ap.add_argument("--hbar", help="comma list of hbar values (overrides config)")
    ap.add_argument("--seed", type=int, help="RNG seed (overrides config)")
    ap.add_argument("--out", help="output path prefix (overrides config)")
    ap.add_argument("--format", choices=("csv", "json"), help="report format")
    ap.add_argument("--grid", help="d,n_points,half_width (overrides config)")
    args = ap.parse_args(argv)

    try:
        if args.config:
            with open(args.config) as fh:
                cfg = parse_config(fh.read())
        else:
            cfg = RunConfig()
        if args.suite:
            cfg.suites = [t.strip() for t in args.suite.split(",") if t.strip()]
        if args.hbar:
            cfg.hbar_list = [float(t) for t in args.hbar.split(",")]
        if args.seed is not None:
            cfg.seed = args.seed
        if args.out:
            cfg.output = args.out
        if args.format:
            cfg.format = args.format
        if args.grid:
            d, n, L = (t.strip() for t in args.grid.split(","))
            cfg.grid = (int(d), int(n), float(L))
        cfg.validate()
    except (ConfigError, OSError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2

    report = run_suite(cfg)
    path = emit_report(report, cfg.format, cfg.output)
    s = report.summary
    print(f"wrote {path}: {s['n_pass']} pass, {s['n_fail']} fail, "
          f"{s['n_report_only']} report-only")
    for cid, worst in s["worst_ratio"].items():
        print(f"  worst ratio {cid}: {worst:.6g}")
    return 0 if s["n_fail"] == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
