"""Command-line front end: ``penning-cs {spectrum,wavefunction,audit,scan}``.

Output is deterministic: floats are written with 12 significant digits and
every report embeds the configuration it was produced from.  Exit codes are
0 (ok), 1 (usage), 2 (physics/domain error) and 3 (resource error).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import fock
from .grid import Grid, axis_points, default_grid
from .model import PenningModel
from .observables import coherent_moments, energy_mean, energy_variance
from .spectral import DegenerateModeError, lambda_reconstruction, unit_decomposition
from .states import aocs_coefficients, phi_z
from .ladder import commutator_table, hamiltonian_residual, heisenberg_residuals
from .trap import (
    InstabilityError,
    TrapParams,
    characteristic_polynomial,
    validate,
)

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_RESOURCE = 0, 1, 2, 3
SIG_DIGITS = 12

COMMANDS = ("spectrum", "wavefunction", "audit", "scan")
_VALUE_FLAGS = {
    "--b", "--v", "--z1", "--z2", "--z3", "--grid", "--cutoff", "--format",
    "--out", "--config", "--b-range", "--v-range",
}


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    return format(float(x) + 0.0, f".{SIG_DIGITS}g")


def rounded(obj):
    """Recursively round floats to 12 significant digits for JSON output."""
    if isinstance(obj, (bool, str)) or obj is None:
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(fmt(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(fmt(obj.real)), float(fmt(obj.imag))]
    if isinstance(obj, dict):
        return {k: rounded(v) for k, v in obj.items()}
    if isinstance(obj, np.ndarray):
        return rounded(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return [rounded(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def parse_complex(text) -> complex:
    """'re,im' (or a bare real, or a [re, im] pair from a config file)."""
    if isinstance(text, (list, tuple)):
        if len(text) != 2:
            raise UsageError(f"complex value needs [re, im], got {text!r}")
        return complex(float(text[0]), float(text[1]))
    if isinstance(text, (int, float)):
        return complex(text)
    parts = str(text).split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise UsageError(f"bad complex value {text!r}; expected 're,im'")


def parse_range(text) -> tuple[float, float, float]:
    """'min:max:step' -> (min, max, step)."""
    if isinstance(text, (list, tuple)):
        parts = list(text)
    else:
        parts = str(text).split(":")
    if len(parts) != 3:
        raise UsageError(f"bad range {text!r}; expected 'min:max:step'")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected 'min:max:step'") from None
    if not all(np.isfinite([lo, hi, step])) or step <= 0 or hi < lo:
        raise UsageError(f"bad range {text!r}; need finite min <= max and step > 0")
    return lo, hi, step


def _is_component(x) -> bool:
    if isinstance(x, (str, int, float)) and not isinstance(x, bool):
        return True
    return isinstance(x, list) and len(x) == 2 and all(isinstance(c, (int, float)) for c in x)


@dataclass
class RunConfig:
    command: str
    b: float = 1.0
    v: float = -0.5
    z_labels: list = field(default_factory=list)  # list of [z1, z2, z3]
    grid: list | None = None  # None or three (min, max, step)
    fock_cutoff: int = 30
    oracle: bool = False
    check: bool = False
    b_range: tuple = (0.1, 2.0, 0.1)
    v_range: tuple = (-1.0, 0.5, 0.1)
    format: str = "json"
    out: str | None = None

    def provenance(self) -> dict:
        """The fields this command actually reads (output path excluded)."""
        d = asdict(self)
        d["z_labels"] = [[[z.real, z.imag] for z in zs] for zs in self.z_labels]
        keep = ["command", "format"] + _PROVENANCE_KEYS[self.command]
        return rounded({k: d[k] for k in keep})


_PROVENANCE_KEYS = {
    "spectrum": ["b", "v", "check"],
    "wavefunction": ["b", "v", "z_labels", "grid"],
    "audit": ["b", "v", "z_labels", "fock_cutoff", "oracle"],
    "scan": ["b_range", "v_range"],
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with config keys; flags override it")
    common.add_argument("--b", type=float, help="magnetic parameter b > 0")
    common.add_argument("--v", type=float, help="electric parameter v < 0")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--out", help="output path (default stdout)")

    zs = argparse.ArgumentParser(add_help=False)
    for name in ("--z1", "--z2", "--z3"):
        zs.add_argument(name, help="complex label component as 're,im'")

    parser = _Parser(prog="penning-cs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", parents=[common], help="frequencies and spectral checks")
    p.add_argument("--check", action="store_true", help="add duality/decomposition residuals")

    p = sub.add_parser("wavefunction", parents=[common, zs], help="sample phi_0 or phi_z on a grid")
    p.add_argument(
        "--grid", action="append",
        help="'min:max:step'; give once for all axes or three times for x, y, z",
    )

    p = sub.add_parser("audit", parents=[common, zs], help="moments and energy statistics")
    p.add_argument("--cutoff", type=int, help="Fock cutoff per mode for --oracle")
    p.add_argument("--oracle", action="store_true", help="cross-check against the Fock oracle")

    p = sub.add_parser("scan", parents=[common], help="stability map over a (b, v) rectangle")
    p.add_argument("--b-range", help="'min:max:step' for b")
    p.add_argument("--v-range", help="'min:max:step' for v")
    return parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _join_values(argv: list[str]) -> list[str]:
    """Glue '--flag value' into '--flag=value' so values like '-3:3:0.1' parse."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def load_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    file_cfg = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                file_cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(file_cfg, dict):
            raise UsageError("config file must hold a JSON object")
        unknown = set(file_cfg) - {
            "b", "v", "z", "grid", "cutoff", "oracle", "check", "b_range", "v_range",
            "format", "out",
        }
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")

    def pick(flag_value, key, default):
        if flag_value is not None:
            return flag_value
        return file_cfg.get(key, default)

    try:
        cfg.b = float(pick(args.b, "b", cfg.b))
        cfg.v = float(pick(args.v, "v", cfg.v))
    except (TypeError, ValueError):
        raise UsageError("b and v must be numbers") from None
    cfg.format = pick(getattr(args, "format", None), "format",
                      "csv" if args.command in ("wavefunction", "scan") else "json")
    if cfg.format not in ("csv", "json"):
        raise UsageError(f"bad format {cfg.format!r}")
    cfg.out = pick(args.out, "out", None)

    flag_z = [getattr(args, n, None) for n in ("z1", "z2", "z3")]
    if any(z is not None for z in flag_z):
        cfg.z_labels = [[parse_complex(z if z is not None else "0,0") for z in flag_z]]
    elif "z" in file_cfg:
        labels = file_cfg["z"]
        if not isinstance(labels, list):
            raise UsageError("config 'z' must be a list")
        if len(labels) == 3 and all(_is_component(c) for c in labels):
            labels = [labels]  # a single label written inline
        parsed = []
        for triple in labels:
            if not isinstance(triple, list) or len(triple) != 3:
                raise UsageError(f"each z label needs three components, got {triple!r}")
            parsed.append([parse_complex(c) for c in triple])
        cfg.z_labels = parsed
    if not cfg.z_labels:
        cfg.z_labels = [[0j, 0j, 0j]]

    grid = pick(getattr(args, "grid", None), "grid", None)
    if grid is not None:
        if isinstance(grid, str) or (len(grid) == 3 and not isinstance(grid[0], (list, tuple, str))):
            grid = [grid]
        ranges = [parse_range(g) for g in grid]
        if len(ranges) == 1:
            ranges *= 3
        if len(ranges) != 3:
            raise UsageError("--grid takes one range for all axes or three (x, y, z)")
        cfg.grid = ranges

    cutoff = pick(getattr(args, "cutoff", None), "cutoff", cfg.fock_cutoff)
    if not isinstance(cutoff, int) or isinstance(cutoff, bool) or cutoff < 1:
        raise UsageError("cutoff must be an integer >= 1")
    cfg.fock_cutoff = cutoff
    cfg.oracle = bool(getattr(args, "oracle", False) or file_cfg.get("oracle", False))
    cfg.check = bool(getattr(args, "check", False) or file_cfg.get("check", False))
    cfg.b_range = parse_range(pick(getattr(args, "b_range", None), "b_range", cfg.b_range))
    cfg.v_range = parse_range(pick(getattr(args, "v_range", None), "v_range", cfg.v_range))
    return cfg


# ---------------------------------------------------------------- commands


def _model(cfg: RunConfig) -> PenningModel:
    return PenningModel.from_params(cfg.b, cfg.v)


def cmd_spectrum(cfg: RunConfig) -> dict:
    params = TrapParams(cfg.b, cfg.v)
    verdict = validate(params)
    if not verdict.stable:
        raise InstabilityError(verdict)
    m = _model(cfg)
    w = m.freqs.as_array()
    expected = np.sort(np.concatenate([1j * w, -1j * w]).imag)
    generic = np.sort(np.linalg.eigvals(m.lambda_matrix).imag)
    char_fit = np.poly(m.lambda_matrix).real
    report = {
        "config": cfg.provenance(),
        "stability": {"stable": True, "reason": None},
        "omega1": m.freqs.omega1,
        "omega2": m.freqs.omega2,
        "omega3": m.freqs.omega3,
        "ground_energy": m.freqs.ground_energy,
        "eigenvalue_residual": float(np.abs(generic - expected).max()),
        "charpoly_residual": float(np.abs(char_fit - characteristic_polynomial(params)).max()),
    }
    if cfg.check:
        table = commutator_table(m.modes)
        report["checks"] = {
            "duality_residual": float(np.abs(m.pairs.duality_matrix() - np.eye(6)).max()),
            "unit_decomposition_residual": float(np.abs(unit_decomposition(m.pairs) - np.eye(6)).max()),
            "lambda_reconstruction_residual": float(
                np.abs(lambda_reconstruction(m.pairs) - m.lambda_matrix).max()
            ),
            "commutator_residual": float(
                max(
                    np.abs(table["B_Bdag"] - np.eye(3)).max(),
                    np.abs(table["B_B"]).max(),
                    np.abs(table["Bdag_Bdag"]).max(),
                )
            ),
            "heisenberg_residual": float(heisenberg_residuals(m.modes, m.lambda_matrix).max()),
            "hamiltonian_residual": hamiltonian_residual(m.modes, params),
        }
    return report


def _label_dict(label) -> dict:
    return {"z": list(label.z), "gamma": label.gamma, "sigma": label.sigma, "c_phase": label.c_phase}


def cmd_wavefunction(cfg: RunConfig) -> tuple[dict, list[str], list[list[float]]]:
    m = _model(cfg)
    label = m.label(*cfg.z_labels[0])
    if cfg.grid is None:
        grid = default_grid(m.params, center=label.gamma)
    else:
        grid = Grid(tuple(axis_points(*r) for r in cfg.grid))
    n_points = int(np.prod(grid.shape))
    if n_points > 5_000_000:
        raise fock.CapacityError(f"grid of {n_points} points is too large")
    pts = grid.points().reshape(-1, 3)
    phi = phi_z(m.gaussian, label, pts)
    header = {
        "config": cfg.provenance(),
        "c": m.gaussian.norm_const,
        **_label_dict(label),
        "grid_shape": list(grid.shape),
        "cell_volume": grid.cell_volume,
    }
    columns = ["x", "y", "z", "re_phi", "im_phi", "abs2"]
    rows = np.column_stack([pts, phi.real, phi.imag, np.abs(phi) ** 2])
    return header, columns, rows


def cmd_audit(cfg: RunConfig) -> dict:
    m = _model(cfg)
    entries = []
    worst = 0.0
    fsys = fock.build_fock(m.freqs, cfg.fock_cutoff) if cfg.oracle else None
    for zs in cfg.z_labels:
        label = m.label(*zs)
        mom = coherent_moments(m.params, label)
        entry = {
            **_label_dict(label),
            "mean_R": mom.mean_R,
            "mean_P": mom.mean_P,
            "var_R": mom.var_R,
            "var_P": mom.var_P,
            "cross_RP": mom.cross,
            "uncertainty_products": mom.uncertainty_products,
            "mean_H": energy_mean(m.freqs, label),
            "var_H": energy_variance(m.params, label),
        }
        if fsys is not None:
            zeta = fock.docs_vector(label, cfg.fock_cutoff)
            aocs = aocs_coefficients(label, cfg.fock_cutoff).coeffs.ravel()
            deltas = {
                "mean_H": abs(fsys.expect_H(zeta) - entry["mean_H"]),
                "var_H": abs(fsys.variance_H(zeta) - entry["var_H"]),
                "aocs_vs_docs": float(np.abs(zeta - aocs).max()),
                "eigenrelation": fock.eigenrelation_residual(label, cfg.fock_cutoff),
            }
            entry["oracle"] = {
                "mean_H": fsys.expect_H(zeta),
                "var_H": fsys.variance_H(zeta),
                "deltas": deltas,
            }
            worst = max(worst, *deltas.values())
        entries.append(entry)
    report = {"config": cfg.provenance(), "ground_energy": m.freqs.ground_energy, "states": entries}
    if fsys is not None:
        report["max_oracle_delta"] = worst
    return report


def _grid_values(lo: float, hi: float, step: float) -> list[float]:
    n = int(np.floor((hi - lo) / step + 1e-9)) + 1
    # rounding keeps exact boundary points such as b^2 + v = 0 exact
    return [float(fmt(lo + i * step)) for i in range(n)]


def cmd_scan(cfg: RunConfig) -> tuple[dict, list[str], list[list]]:
    rows = []
    for b in _grid_values(*cfg.b_range):
        for v in _grid_values(*cfg.v_range):
            verdict = validate(TrapParams(b, v))
            if verdict.stable:
                m = PenningModel.from_params(b, v).freqs
                rows.append([b, v, "stable", m.omega1, m.omega2, m.omega3])
            else:
                rows.append([b, v, verdict.reason, None, None, None])
    header = {"config": cfg.provenance()}
    return header, ["b", "v", "verdict", "omega1", "omega2", "omega3"], rows


# ---------------------------------------------------------------- output


def _flatten(prefix: str, obj, out: list):
    if isinstance(obj, dict):
        for k, val in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else k, val, out)
    elif isinstance(obj, list) and obj and isinstance(obj[0], dict):
        for i, val in enumerate(obj):
            _flatten(f"{prefix}[{i}]", val, out)
    else:
        out.append((prefix, obj))


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return fmt(x)


def render_report(report: dict, fmt_name: str) -> str:
    if fmt_name == "json":
        return json.dumps(rounded(report), indent=2, sort_keys=False) + "\n"
    buf = io.StringIO()
    buf.write("# config: " + json.dumps(report["config"], sort_keys=True) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["key", "value"])
    items: list = []
    _flatten("", {k: v for k, v in report.items() if k != "config"}, items)
    for key, val in items:
        val = rounded(val)
        writer.writerow([key, json.dumps(val) if isinstance(val, list) else _cell(val)])
    return buf.getvalue()


def render_table(header: dict, columns: list[str], rows, fmt_name: str) -> str:
    if fmt_name == "json":
        return json.dumps(
            rounded({**header, "columns": columns, "rows": [list(r) for r in rows]}), indent=1
        ) + "\n"
    buf = io.StringIO()
    buf.write("# config: " + json.dumps(header["config"], sort_keys=True) + "\n")
    meta = {k: v for k, v in header.items() if k != "config"}
    if meta:
        buf.write("# state: " + json.dumps(rounded(meta), sort_keys=True) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(x) for x in row])
    return buf.getvalue()


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(cfg: RunConfig) -> str:
    if cfg.command == "spectrum":
        return render_report(cmd_spectrum(cfg), cfg.format)
    if cfg.command == "audit":
        return render_report(cmd_audit(cfg), cfg.format)
    if cfg.command == "wavefunction":
        return render_table(*cmd_wavefunction(cfg), cfg.format)
    if cfg.command == "scan":
        return render_table(*cmd_scan(cfg), cfg.format)
    raise UsageError(f"unknown command {cfg.command!r}")


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(_join_values(argv))
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        cfg = load_config(args)
        _emit(run(cfg), cfg)
    except UsageError as exc:
        print(f"penning-cs: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InstabilityError as exc:
        print(f"penning-cs: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except DegenerateModeError as exc:
        print(f"penning-cs: error: degenerate modes: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (fock.CapacityError, MemoryError) as exc:
        print(f"penning-cs: error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except BrokenPipeError:
        # downstream closed early (e.g. `| head`); not an error of ours
        import os

        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
