"""Command-line interface: spectrum, wavefunction, validate, approx-error.

A run is described by a RunConfig: the physical system, the command, and
command options.  Options come from an optional JSON config file merged
with command-line flags (flags win).  Results are emitted as CSV or JSON,
byte-deterministically: floats are formatted with 17 significant digits,
line endings are '\\n', and no timestamps or environment details are
written.

Exit status: 0 on success (including an empty result), 1 when `validate`
finds a failing check, 2 on configuration errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional

from . import checks as checks_mod
from . import hulthen_analytic as ha
from . import oracle
from .errors import (ComplexRegime, ConfigError, GridResolution,
                     InvalidRegime, NoBoundState, NonNormalizable)
from .model import PhysicalSystem, RadialGrid, default_grid

_COMMANDS = ("spectrum", "wavefunction", "validate", "approx_error")
_BRANCHES = ("lower", "upper", "both")
_METHODS = ("closed_form", "quantization_root", "oracle")
_FORMATS = ("csv", "json")
_DEFAULT_BETAS = (0.4, 0.2, 0.1, 0.05)
# command -> default (n_max, l_max)
_DEFAULT_RANGES = {"spectrum": (2, 1), "wavefunction": (0, 0),
                   "validate": (0, 0), "approx_error": (0, 1)}

_FILE_KEYS = {"V0", "beta", "m0", "m1", "hbar_c", "report_in_rest_units",
              "betas", "grid", "n_max", "l_max", "branch", "method",
              "format", "output"}


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved description of one CLI run."""

    system: PhysicalSystem
    command: str
    n_max: int
    l_max: int
    branch: str
    method: str
    grid: Optional[RadialGrid]
    output_format: str
    output_path: Optional[str]
    betas: tuple
    report_in_rest_units: bool


def _require_number(key: str, value, positive: bool = False) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(
            f"config key '{key}': expected a number, got {value!r}")
    out = float(value)
    if not math.isfinite(out):
        raise ConfigError(f"config key '{key}': value must be finite, "
                          f"got {value!r}")
    if positive and out <= 0.0:
        raise ConfigError(f"config key '{key}': value must be positive, "
                          f"got {value!r}")
    return out


def _require_index(key: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(
            f"config key '{key}': expected a non-negative integer, "
            f"got {value!r}")
    if value < 0:
        raise ConfigError(
            f"config key '{key}': expected a non-negative integer, "
            f"got {value!r}")
    return value


def _require_choice(key: str, value, allowed) -> str:
    if value not in allowed:
        raise ConfigError(
            f"config key '{key}': expected one of {', '.join(allowed)}; "
            f"got {value!r}")
    return value


def parse_config(source: str, overrides: dict) -> RunConfig:
    """Build a RunConfig from JSON config text plus override values.

    ``source`` is the raw text of the config file ("" or None for no
    file); ``overrides`` holds values that win over the file (typically
    parsed command-line flags), plus the command name under "command".
    Raises ConfigError for unknown keys, missing required keys,
    non-numeric values, and parameter combinations outside the model's
    domain (for example an effective-mass offset with m1 >= m0, since
    the mass profile requires m0 > m1).
    """
    if source:
        try:
            data = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
    else:
        data = {}
    unknown = sorted(set(data) - _FILE_KEYS)
    if unknown:
        raise ConfigError(f"unknown config key '{unknown[0]}'")

    merged = dict(data)
    for key, value in overrides.items():
        if value is not None:
            merged[key] = value

    command = merged.pop("command", "spectrum")
    if command not in _COMMANDS:
        raise ConfigError(f"unknown command {command!r}")

    for key in ("V0", "beta", "m0"):
        if key not in merged:
            raise ConfigError(f"missing required config key '{key}'")

    V0 = _require_number("V0", merged["V0"])
    beta = _require_number("beta", merged["beta"], positive=True)
    m0 = _require_number("m0", merged["m0"], positive=True)
    m1 = _require_number("m1", merged.get("m1", 0.0))
    hbar_c = _require_number("hbar_c", merged.get("hbar_c", 1.0),
                             positive=True)
    if m1 >= m0:
        raise ConfigError(
            f"config key 'm1': the mass profile requires m0 > m1, "
            f"got m1={m1!r} with m0={m0!r}")
    try:
        system = PhysicalSystem(V0=V0, beta=beta, m0=m0, m1=m1,
                                hbar_c=hbar_c)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    default_n, default_l = _DEFAULT_RANGES[command]
    n_max = _require_index("n_max", merged.get("n_max", default_n))
    l_max = _require_index("l_max", merged.get("l_max", default_l))
    branch = _require_choice("branch", merged.get("branch", "both"),
                             _BRANCHES)
    method = _require_choice("method", merged.get("method",
                                                  "quantization_root"),
                             _METHODS)
    output_format = _require_choice("format", merged.get("format", "csv"),
                                    _FORMATS)
    output_path = merged.get("output")
    if output_path is not None and not isinstance(output_path, str):
        raise ConfigError(
            f"config key 'output': expected a path string, "
            f"got {output_path!r}")

    grid = None
    grid_spec = merged.get("grid")
    if grid_spec is not None or any(
            merged.get(k) is not None
            for k in ("grid_r_min", "grid_r_max", "grid_points")):
        if grid_spec is None:
            grid_spec = {}
        if not isinstance(grid_spec, dict):
            raise ConfigError("config key 'grid': expected an object with "
                              "r_min, r_max, points")
        bad = sorted(set(grid_spec) - {"r_min", "r_max", "points"})
        if bad:
            raise ConfigError(f"unknown config key 'grid.{bad[0]}'")
        base = default_grid(system)
        r_min = grid_spec.get("r_min", base.r_min)
        r_max = grid_spec.get("r_max", base.r_max)
        points = grid_spec.get("points", base.points)
        if merged.get("grid_r_min") is not None:
            r_min = merged["grid_r_min"]
        if merged.get("grid_r_max") is not None:
            r_max = merged["grid_r_max"]
        if merged.get("grid_points") is not None:
            points = merged["grid_points"]
        r_min = _require_number("grid.r_min", r_min, positive=True)
        r_max = _require_number("grid.r_max", r_max, positive=True)
        points = _require_index("grid.points", points)
        try:
            grid = RadialGrid(r_min=r_min, r_max=r_max, points=points)
        except ValueError as exc:
            raise ConfigError(f"config key 'grid': {exc}") from exc

    betas_spec = merged.get("betas", list(_DEFAULT_BETAS))
    if isinstance(betas_spec, str):
        try:
            betas_spec = [float(part) for part in betas_spec.split(",")]
        except ValueError as exc:
            raise ConfigError(
                f"config key 'betas': expected comma-separated numbers, "
                f"got {merged['betas']!r}") from exc
    if not isinstance(betas_spec, (list, tuple)) or not betas_spec:
        raise ConfigError("config key 'betas': expected a non-empty list "
                          "of screening parameters")
    betas = tuple(_require_number(f"betas[{i}]", b, positive=True)
                  for i, b in enumerate(betas_spec))

    rest_units = merged.get("report_in_rest_units", False)
    if not isinstance(rest_units, bool):
        raise ConfigError(
            f"config key 'report_in_rest_units': expected true or false, "
            f"got {rest_units!r}")

    return RunConfig(system=system, command=command, n_max=n_max,
                     l_max=l_max, branch=branch, method=method, grid=grid,
                     output_format=output_format, output_path=output_path,
                     betas=betas, report_in_rest_units=rest_units)


def _requested_branches(config: RunConfig):
    return ("lower", "upper") if config.branch == "both" else (config.branch,)


def _energy_out(config: RunConfig, value: Optional[float]) -> Optional[float]:
    if value is None:
        return None
    if config.report_in_rest_units:
        return value / config.system.m0
    return value


def _closed_rows(config: RunConfig, n: int, l: int):
    system = config.system
    rows = {}
    try:
        lower, upper = ha.energy_closed_form(system, n, l)
    except InvalidRegime:
        return {b: (None, "invalid_regime") for b in ("lower", "upper")}
    except NoBoundState:
        return {b: (None, "no_bound_state") for b in ("lower", "upper")}
    for level in (lower, upper):
        if level.unbound:
            status = "unbound"
        elif ha.satisfies_quantization(system, n, l, level.value):
            status = "ok"
        else:
            status = "spurious"
        rows[level.branch] = (level.value, status)
    return rows


def _root_rows(config: RunConfig, n: int, l: int):
    system = config.system
    if ha.origin_exponent_discriminant(system, l) < 0.0:
        return {b: (None, "invalid_regime") for b in ("lower", "upper")}
    rows = {b: (None, "no_bound_state") for b in ("lower", "upper")}
    for level in ha.energy_root_solve(system, n, l):
        rows[level.branch] = (level.value, "ok")
    return rows


def _oracle_states(config: RunConfig, l: int, cache: dict):
    if l not in cache:
        cache[l] = oracle.find_bound_states(
            config.system, l, mode="approx", grid=config.grid)
    return cache[l]


def _oracle_rows(config: RunConfig, n: int, l: int, cache: dict):
    system = config.system
    try:
        states = _oracle_states(config, l, cache)
    except InvalidRegime:
        return {b: (None, "invalid_regime") for b in ("lower", "upper")}
    except GridResolution:
        return {b: (None, "grid_resolution") for b in ("lower", "upper")}
    matches = sorted((d for d in states if d.node_count == n),
                     key=lambda d: d.energy)
    rows = {b: (None, "no_bound_state") for b in ("lower", "upper")}
    if len(matches) == 1:
        label = _nearest_branch(system, n, l, matches[0].energy)
        rows[label] = (matches[0].energy, "ok")
    elif len(matches) >= 2:
        rows["lower"] = (matches[0].energy, "ok")
        rows["upper"] = (matches[-1].energy, "ok")
    return rows


def _nearest_branch(system, n, l, E) -> str:
    try:
        lower, upper = ha.energy_closed_form(system, n, l)
    except (InvalidRegime, NoBoundState):
        return "upper"
    return "lower" if abs(E - lower.value) < abs(E - upper.value) else "upper"


def _spectrum_records(config: RunConfig):
    method_token = {"closed_form": "closed_form",
                    "quantization_root": "quantization_root",
                    "oracle": "oracle_approx"}[config.method]
    cache: dict = {}
    records = []
    for n in range(config.n_max + 1):
        for l in range(config.l_max + 1):
            if config.method == "closed_form":
                rows = _closed_rows(config, n, l)
            elif config.method == "quantization_root":
                rows = _root_rows(config, n, l)
            else:
                rows = _oracle_rows(config, n, l, cache)
            for branch in _requested_branches(config):
                energy, status = rows[branch]
                records.append({
                    "n": n, "l": l, "branch": branch,
                    "method": method_token,
                    "energy": _energy_out(config, energy),
                    "status": status,
                })
    return records


def _pick_state_energy(config: RunConfig, n: int, l: int):
    """Energy of the requested (n, l) state under the configured method.

    Returns None when no such bound state exists.
    """
    system = config.system
    wanted = _requested_branches(config)
    if config.method == "oracle":
        rows = _oracle_rows(config, n, l, {})
    elif config.method == "closed_form":
        rows = _closed_rows(config, n, l)
    else:
        rows = _root_rows(config, n, l)
    found = [(rows[b][0], b) for b in wanted
             if rows[b][1] == "ok" and rows[b][0] is not None]
    if not found:
        return None
    # with both branches available prefer the upper one
    found.sort(key=lambda item: item[1] == "upper")
    return found[-1][0]


def _wavefunction_records(config: RunConfig):
    n, l = config.n_max, config.l_max
    energy = _pick_state_energy(config, n, l)
    if energy is None:
        print(f"no bound state for n={n}, l={l} under method "
              f"{config.method}; nothing to sample", file=sys.stderr)
        return []
    try:
        wf = ha.wavefunction(config.system, n, l, energy,
                             grid=config.grid)
    except (NonNormalizable, InvalidRegime, ComplexRegime, ValueError) as exc:
        print(f"cannot build wavefunction for n={n}, l={l}: {exc}",
              file=sys.stderr)
        return []
    radii = wf.grid.radii()
    zvals = config.system.z_at(radii)
    records = []
    for r, z, v in zip(radii, zvals, wf.values):
        records.append({"r": float(r), "z": float(z),
                        "phi": float(wf.amplitude * v),
                        "phi_normalized": float(v)})
    return records


def _validate_records(config: RunConfig):
    rows = checks_mod.run_validation(config.system, grid=config.grid)
    return [{"check": c.name, "status": "pass" if c.passed else "fail",
             "value": c.value, "tolerance": c.tolerance} for c in rows]


def _approx_error_records(config: RunConfig):
    rows = oracle.approximation_error(config.system, config.n_max,
                                      config.l_max, config.betas)
    return [{"beta": row.beta,
             "E_approx": row.E_approx,
             "E_exact": row.E_exact,
             "abs_err": row.abs_err,
             "rel_err": row.rel_err} for row in rows]


def execute(config: RunConfig):
    """Run the configured command; returns the list of output records.

    Per-state solver problems surface as status tokens inside the records,
    never as exceptions; an empty list is a valid result.
    """
    if config.command == "spectrum":
        return _spectrum_records(config)
    if config.command == "wavefunction":
        return _wavefunction_records(config)
    if config.command == "validate":
        return _validate_records(config)
    return _approx_error_records(config)


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def serialize(records, output_format: str) -> str:
    """Render records as CSV or JSON text, byte-deterministically.

    All records must share one schema (same keys, same order); CSV floats
    carry 17 significant digits, missing values are empty cells, and line
    endings are '\\n'.  JSON output round-trips: serializing the parsed
    JSON reproduces the bytes.
    """
    if output_format not in _FORMATS:
        raise ValueError(f"unknown output format {output_format!r}")
    records = list(records)
    if records:
        first = tuple(records[0].keys())
        for rec in records:
            if tuple(rec.keys()) != first:
                raise ValueError(
                    "records with mixed schemas cannot be serialized: "
                    f"{tuple(rec.keys())!r} != {first!r}")
    if output_format == "json":
        return json.dumps(records, indent=2, ensure_ascii=False) + "\n"
    if not records:
        return ""
    header = ",".join(records[0].keys())
    lines = [header]
    for rec in records:
        lines.append(",".join(_csv_cell(v) for v in rec.values()))
    return "\n".join(lines) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kghulthen",
        description="Bound states of the relativistic screened-well model "
                    "with a position-dependent mass profile")
    sub = parser.add_subparsers(dest="command", required=True)
    specs = {
        "spectrum": "solve bound-state energies over a quantum-number range",
        "wavefunction": "sample one normalized bound-state wavefunction",
        "validate": "run the cross-consistency check battery",
        "approx-error": "tabulate centrifugal-approximation error vs "
                        "screening",
    }
    for name, help_text in specs.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="path to a JSON config file")
        p.add_argument("--V0", type=float, help="well depth")
        p.add_argument("--beta", type=float, help="screening parameter")
        p.add_argument("--m0", type=float, help="rest energy at the origin")
        p.add_argument("--m1", type=float,
                       help="mass-profile offset (0 for constant mass)")
        p.add_argument("--hbar-c", dest="hbar_c", type=float,
                       help="unit conversion factor (default 1)")
        p.add_argument("--n-max", dest="n_max", type=int,
                       help="largest radial quantum number")
        p.add_argument("--l-max", dest="l_max", type=int,
                       help="largest orbital quantum number")
        p.add_argument("--branch", choices=_BRANCHES,
                       help="energy branch selection (default both)")
        p.add_argument("--method", choices=_METHODS,
                       help="solver (default quantization_root)")
        p.add_argument("--format", dest="format", choices=_FORMATS,
                       help="output format (default csv)")
        p.add_argument("--output", help="output file path (default stdout)")
        p.add_argument("--betas",
                       help="comma-separated screening values "
                            "(approx-error)")
        p.add_argument("--grid-r-min", dest="grid_r_min", type=float,
                       help="inner radius of the evaluation grid")
        p.add_argument("--grid-r-max", dest="grid_r_max", type=float,
                       help="outer radius of the evaluation grid")
        p.add_argument("--grid-points", dest="grid_points", type=int,
                       help="number of radial grid points")
        p.add_argument("--report-in-rest-units", dest="report_in_rest_units",
                       action="store_const", const=True, default=None,
                       help="report energies divided by m0")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    overrides = {key: value for key, value in vars(args).items()
                 if key not in ("config",)}
    overrides["command"] = args.command.replace("-", "_")
    source = ""
    try:
        if args.config is not None:
            try:
                with open(args.config, "r", encoding="utf-8") as handle:
                    source = handle.read()
            except OSError as exc:
                raise ConfigError(
                    f"cannot read config file {args.config!r}: {exc}")
        config = parse_config(source, overrides)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    records = execute(config)
    text = serialize(records, config.output_format)
    if config.output_path is not None:
        with open(config.output_path, "w", encoding="utf-8",
                  newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    if config.command == "validate":
        if any(rec["status"] == "fail" for rec in records):
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
