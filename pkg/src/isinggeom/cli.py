"""Command-line front end: verification report, figure data, sweeps.

Exit status is 0 on success, 1 when a verification check fails and 2 on a
configuration error.  Output files land in ``--out`` or, failing that, in
``$ISINGGEOM_OUTPUT_DIR`` (default: the working directory).
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import dynamics, figures, two_spin, verify
from .errors import IsingGeomError

OUTPUT_DIR_ENV = "ISINGGEOM_OUTPUT_DIR"
COMMANDS = ("verify", "figure", "sweep", "brachistochrone", "two-spin")

log = logging.getLogger("isinggeom.cli")


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n_spins: list = field(default_factory=lambda: [2])
    coupling: float = 1.0
    grids: dict = field(default_factory=dict)
    xi: list = field(default_factory=list)
    figure: str | None = None
    quantity: str | None = None
    output_path: Path | None = None
    format: str = "csv"
    tolerances: dict = field(default_factory=dict)


def parse_grid(text):
    """'theta=0:3.14:181' -> ('theta', array of 181 points)."""
    try:
        name, spec = text.split("=", 1)
        lo, hi, count = spec.split(":")
        lo, hi, count = float(lo), float(hi), int(count)
    except ValueError:
        raise ConfigError(f"bad grid {text!r}; expected name=min:max:count")
    if count < 2:
        raise ConfigError(f"grid {name!r} needs at least 2 points, got {count}")
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ConfigError(f"grid {name!r} has non-finite bounds")
    return name.strip(), np.linspace(lo, hi, count)


def parse_tol(text):
    try:
        name, value = text.split("=", 1)
        value = float(value)
    except ValueError:
        raise ConfigError(f"bad tolerance {text!r}; expected name=value")
    if not value > 0:
        raise ConfigError(f"tolerance {name!r} must be positive")
    return name.strip(), value


def build_parser():
    p = argparse.ArgumentParser(prog="isinggeom", description=__doc__.splitlines()[0])
    p.add_argument("--command", required=True, choices=COMMANDS)
    p.add_argument("--n", type=int, nargs="+", default=None, help="number(s) of spins")
    p.add_argument("--coupling", type=float, default=1.0)
    p.add_argument("--grid", action="append", default=[], metavar="NAME=MIN:MAX:COUNT")
    p.add_argument("--xi", type=float, nargs="+", default=None, help="xi value(s) for concurrence series")
    p.add_argument("--figure", choices=figures.FIGURE_IDS)
    p.add_argument("--quantity", help="sweep quantity: " + ", ".join(sorted(figures.SWEEP_QUANTITIES)))
    p.add_argument("--out", type=Path, help="output file ('-' for stdout)")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def config_from_args(args) -> RunConfig:
    grids = dict(parse_grid(g) for g in args.grid)
    tols = dict(parse_tol(t) for t in args.tol)
    unknown = set(tols) - set(verify.DEFAULT_TOLERANCES)
    if unknown:
        raise ConfigError(f"unknown tolerance(s): {', '.join(sorted(unknown))}")
    if args.n is not None and any(n < 1 for n in args.n):
        raise ConfigError("--n values must be positive")
    if not math.isfinite(args.coupling) or args.coupling == 0.0:
        raise ConfigError("--coupling must be finite and non-zero")
    cfg = RunConfig(
        command=args.command,
        n_spins=list(args.n) if args.n else [],
        coupling=args.coupling,
        grids=grids,
        xi=list(args.xi) if args.xi else [],
        figure=args.figure,
        quantity=args.quantity,
        output_path=args.out,
        format=args.format or ("json" if args.command in ("verify", "brachistochrone") else "csv"),
        tolerances=tols,
    )
    if cfg.command == "verify" and cfg.format != "json":
        raise ConfigError("verify writes a JSON report; --format csv is not available")
    if cfg.command == "figure" and cfg.figure is None:
        raise ConfigError("--command figure needs --figure")
    if cfg.command == "sweep":
        if cfg.quantity is None:
            raise ConfigError("--command sweep needs --quantity")
        if cfg.quantity not in figures.SWEEP_QUANTITIES:
            raise ConfigError(f"unknown quantity {cfg.quantity!r}")
        if not cfg.grids:
            raise ConfigError("--command sweep needs at least one --grid")
        bad = set(cfg.grids) - {"theta", "phi", "xi"}
        if bad:
            raise ConfigError(f"unknown sweep axis: {', '.join(sorted(bad))}")
    if cfg.command == "two-spin":
        bad = set(cfg.grids) - {"c"}
        if bad:
            raise ConfigError(f"two-spin accepts only a 'c' grid, got {', '.join(sorted(bad))}")
    return cfg


# -- formatting ---------------------------------------------------------------

def _cell(value):
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    value = float(value)
    if math.isnan(value):
        return ""
    return format(value, ".17g")


def table_to_csv(header, rows) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def table_to_json(header, rows) -> str:
    records = [dict(zip(header, row)) for row in rows]
    return to_json({"schema": verify.SCHEMA_VERSION, "columns": header, "rows": records})


def _json_safe(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {str(k): _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, np.generic):
        return _json_safe(obj.item())
    return obj


def to_json(obj) -> str:
    return json.dumps(_json_safe(obj), indent=2, allow_nan=False) + "\n"


def _default_name(cfg):
    stem = {"figure": cfg.figure, "sweep": f"sweep_{cfg.quantity}"}.get(cfg.command, cfg.command.replace("-", "_"))
    return f"{stem}.{cfg.format}"


def write_output(cfg, text, stdout):
    if cfg.output_path is not None and str(cfg.output_path) == "-":
        stdout.write(text)
        return None
    if cfg.output_path is not None:
        path = cfg.output_path
    else:
        path = Path(os.environ.get(OUTPUT_DIR_ENV, ".")) / _default_name(cfg)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path


# -- commands -----------------------------------------------------------------

def cmd_verify(cfg):
    report = verify.run_checks(cfg.tolerances)
    failed = report["summary"]["fail"]
    return to_json(report), (1 if failed else 0), report


def _render_table(cfg, header, rows):
    if cfg.format == "json":
        return table_to_json(header, rows)
    return table_to_csv(header, rows)


def cmd_figure(cfg):
    kwargs = {"coupling": cfg.coupling}
    if cfg.n_spins:
        kwargs["n_values"] = cfg.n_spins
    if cfg.xi:
        kwargs["xi_values"] = cfg.xi
    header, rows = figures.figure_table(cfg.figure, **kwargs)
    return _render_table(cfg, header, rows), 0, None


def cmd_sweep(cfg):
    defaults = {"xi": cfg.xi[0]} if cfg.xi else None
    header, rows = figures.sweep_table(cfg.quantity, cfg.grids, cfg.n_spins or [2], cfg.coupling, defaults)
    return _render_table(cfg, header, rows), 0, None


def cmd_brachistochrone(cfg):
    ns = cfg.n_spins or list(range(2, 11))
    if any(n < 2 for n in ns):
        raise ConfigError("brachistochrone needs N >= 2")
    records = []
    for n in ns:
        sol = dynamics.brachistochrone(n, cfg.coupling)
        records.append({
            "n_spins": n,
            "theta_max": sol.theta_max,
            "v_max": sol.v_max,
            "s_min_per_xi": sol.s_min / sol.xi,
            "t_min_over_t": sol.t_min / sol.t,
        })
    if cfg.format == "csv":
        header = list(records[0])
        return table_to_csv(header, [list(r.values()) for r in records]), 0, None
    return to_json({"schema": verify.SCHEMA_VERSION, "coupling": cfg.coupling, "records": records}), 0, None


TWO_SPIN_COLUMNS = ("xi", "C", "C_r", "curvature", "geometric_phase", "aa_phase",
                    "speed", "distance", "opt_time", "optimal_metric")


def _two_spin_row(c, xi, coupling):
    point = two_spin.ConcurrencePoint(c, xi)
    v, s, tau = two_spin.speed_distance_opttime_of_concurrence(point, coupling)
    return [xi, point.c, point.c_r, two_spin.curvature_of_concurrence(point),
            two_spin.geometric_phase_of_concurrence(point).value,
            two_spin.aa_phase_of_concurrence(point).value, v, s, tau,
            two_spin.optimal_metric_concurrence(point)]


def cmd_two_spin(cfg):
    xis = cfg.xi or list(figures.DEFAULT_XI)
    rows = []
    for xi in xis:
        limit = min(1.0, abs(math.sin(xi)))
        if limit < 1e-12:
            raise ConfigError(f"xi = {xi!r} has sin xi = 0; the concurrence chart is empty")
        grid = cfg.grids.get("c", np.linspace(0.0, limit, figures.C_POINTS))
        for c in grid:
            if not 0.0 <= c <= limit:
                raise ConfigError(f"C = {c!r} outside [0, {limit!r}] for xi = {xi!r}")
            rows.append(_two_spin_row(float(c), float(xi), cfg.coupling))
    return _render_table(cfg, list(TWO_SPIN_COLUMNS), rows), 0, None


HANDLERS = {
    "verify": cmd_verify,
    "figure": cmd_figure,
    "sweep": cmd_sweep,
    "brachistochrone": cmd_brachistochrone,
    "two-spin": cmd_two_spin,
}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=stderr)
    try:
        cfg = config_from_args(args)
        start = time.perf_counter()
        text, code, report = HANDLERS[cfg.command](cfg)
        path = write_output(cfg, text, stdout)
    except (ConfigError, IsingGeomError, KeyError) as exc:
        print(f"isinggeom: configuration error: {exc}", file=stderr)
        return 2
    except OSError as exc:
        print(f"isinggeom: cannot write output: {exc}", file=stderr)
        return 2
    elapsed = time.perf_counter() - start
    if report is not None:
        for check in report["checks"]:
            print(f"{check['status']:>24}  {check['name']}", file=stderr)
        s = report["summary"]
        print(f"{s['pass']} pass, {s['fail']} fail, {s['discrepancy-documented']} documented "
              f"in {elapsed:.1f} s", file=stderr)
    if path is not None:
        print(f"wrote {path}", file=stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
