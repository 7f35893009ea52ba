"""Command-line entry point.

Subcommands: scale, impedance, rf, layout, budget, sweep, paper-check.
Artifacts are written atomically (temp file + rename) and contain no
timestamps, so identical (config, version) pairs produce byte-identical
output.  Exit codes: 0 success, 1 config/validation error, 2 analysis
error or a failed golden-value check.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__
from .config import DesignConfig, load_design_config, parse_design_config, set_parameter
from .errors import ConfigInvalid, DensewireError, UnknownParameter
from .golden import golden_rows
from .layout import export_layout, generate_layout, run_drc
from .materials import MaterialCatalog, default_catalog, load_catalog
from .rfnet import mismatch_report, response_csv, touchstone
from .scaling import (
    LATERAL,
    lateral_scaling_report,
    logical_qubit_estimate,
    required_pitch_for_full_chip,
    vertical_scaling_report,
)
from .thermal import controller_budget, stage_report
from .tlines import (
    coax_impedance,
    cpw_effective_permittivity,
    cpw_impedance,
    line_propagation,
    pin_outer_diameter,
)

ENV_MATERIALS = "DENSEWIRE_MATERIALS"


def _write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    os.replace(tmp, path)


def _json_text(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n"


class _Run:
    """Shared context: config, catalog, and artifact bookkeeping."""

    def __init__(self, args):
        self.out_dir = Path(args.out)
        self.seed = args.seed
        materials_path = args.materials or os.environ.get(ENV_MATERIALS)
        self.catalog: MaterialCatalog = (
            load_catalog(materials_path) if materials_path else default_catalog()
        )
        if args.config:
            self.config_path = Path(args.config)
            config_bytes = self.config_path.read_bytes()
            self.config: DesignConfig = load_design_config(self.config_path, self.catalog)
        else:
            config_bytes = (
                resources.files("densewire").joinpath("data/default_config.json").read_bytes()
            )
            self.config = parse_design_config(json.loads(config_bytes), self.catalog)
            self.config_path = None
        self.config_sha256 = hashlib.sha256(config_bytes).hexdigest()
        self.artifacts: list[str] = []

    def report_doc(self, analysis: dict, warnings: list[str] | None = None) -> dict:
        return {
            "tool": "densewire",
            "version": __version__,
            "config_sha256": self.config_sha256,
            "seed": self.seed,
            "analysis": analysis,
            "warnings": warnings or [],
        }

    def write(self, name: str, text: str) -> Path:
        path = self.out_dir / name
        _write_atomic(path, text)
        self.artifacts.append(str(path))
        return path


def _scale_records(config: DesignConfig, logical_overhead: int):
    records = {}
    warnings = []
    for arch in config.wiring:
        if arch.access == LATERAL:
            rep = lateral_scaling_report(config.qubit_array, arch)
            rec = rep.to_record()
            rec["required_pitch_full_chip_m"] = required_pitch_for_full_chip(
                config.qubit_array.chip_side, arch.wire_pitch, arch.wires_per_qubit)
        else:
            rep = vertical_scaling_report(config.qubit_array, arch)
            rec = rep.to_record()
        rec["wire_pitch_m"] = arch.wire_pitch
        rec["pitch_provenance"] = arch.provenance
        rec["logical_qubits"] = logical_qubit_estimate(rep.n_qubits, logical_overhead)
        rec["logical_overhead"] = logical_overhead
        records[arch.access] = rec
    return records, warnings


def _cmd_scale(run: _Run, args) -> int:
    records, warnings = _scale_records(run.config, args.logical_overhead)
    for access, rec in sorted(records.items()):
        line = (f"{access:<9} N_q={rec['n_qubits']} N_w={rec['n_wires']} "
                f"limiting={rec['limiting_factor']} "
                f"logical@{rec['logical_overhead']}={rec['logical_qubits']}")
        if rec.get("crossover_length_m") is not None:
            line += f" crossover={rec['crossover_length_m'] * 1e3:.6g}mm"
        print(line)
    run.write("scale.json", _json_text(run.report_doc(records, warnings)))
    return 0


def _impedance_record(config: DesignConfig) -> dict:
    coax = config.coax
    record = {
        "coax": {
            "inner_diameter_m": coax.inner_diameter,
            "outer_diameter_m": coax.outer_diameter,
            "eps_r": coax.eps_r,
            "dielectric": coax.dielectric,
            "z_ohm": coax_impedance(coax),
        },
        "pin_outer_diameter_m": pin_outer_diameter(config.pin_stack),
    }
    f_top = config.rf.band[1]
    v, lam = line_propagation(coax, f_top if f_top > 0 else 10e9)
    record["coax"]["phase_velocity_m_per_s"] = v
    record["coax"]["wavelength_at_band_top_m"] = lam
    if config.cpw is not None:
        record["cpw"] = {
            "trace_width_m": config.cpw.trace_width,
            "gap_m": config.cpw.gap,
            "substrate_eps_r": config.cpw.substrate_eps_r,
            "covered": config.cpw.covered,
            "eps_eff": cpw_effective_permittivity(config.cpw),
            "z_ohm": cpw_impedance(config.cpw),
        }
    return record


def _cmd_impedance(run: _Run, args) -> int:
    record = _impedance_record(run.config)
    coax = record["coax"]
    print(f"coax pin-in-hole: d={coax['inner_diameter_m'] * 1e6:.6g}um "
          f"D={coax['outer_diameter_m'] * 1e6:.6g}um eps_r={coax['eps_r']:g} "
          f"Z={coax['z_ohm']:.4g} ohm")
    if "cpw" in record:
        cpw = record["cpw"]
        print(f"ribbon CPW: w={cpw['trace_width_m'] * 1e6:.6g}um "
              f"s={cpw['gap_m'] * 1e6:.6g}um Z={cpw['z_ohm']:.4g} ohm "
              f"eps_eff={cpw['eps_eff']:.4g}")
    run.write("impedance.json", _json_text(run.report_doc(record)))
    return 0


def _cmd_rf(run: _Run, args) -> int:
    config = run.config
    rf = config.rf
    interposer_z = coax_impedance(config.coax)
    feed_eps = (cpw_effective_permittivity(config.cpw) if config.cpw is not None
                else config.coax.eps_r)
    report = mismatch_report(
        config.layout.pin_length, interposer_z, rf.system_impedance, rf.band,
        points=rf.points, pin_eps_eff=config.coax.eps_r,
        feed_length=rf.feed_length, feed_eps_eff=feed_eps,
        taper_length=rf.taper_length, taper_segments=rf.taper_segments,
        bond_resistance=rf.bond_resistance, bond_inductance=rf.bond_inductance)
    print(f"path: {len(report.elements)} elements, pin Z={interposer_z:.4g} ohm in a "
          f"{rf.system_impedance:g} ohm system")
    print(f"worst |S11| = {report.worst_s11:.6g} at "
          f"{report.worst_s11_frequency / 1e9:.6g} GHz")
    run.write("rf_response.csv", response_csv(report.response))
    run.write("rf.s2p", touchstone(report.response))
    run.write("rf.json", _json_text(run.report_doc(report.to_record())))
    return 0


def _cmd_layout(run: _Run, args) -> int:
    config = run.config
    layout = generate_layout(config.layout, config.annotations)
    drc = run_drc(layout, config.layout, config.pin_stack)
    n = len(layout.hole_centers)
    print(f"{n} pad/hole sites, {len(layout.channel_rows)} channels, "
          f"{len(layout.ribbon_assignments)} ribbon cables")
    for f in drc.findings:
        print(f"DRC {f.severity.upper():<7} {f.rule}: {f.message}")
    if drc.passed:
        print("DRC clean")
    if args.format in ("json", "both"):
        run.write("layout.json", export_layout(layout, "json", config.layout))
    if args.format in ("svg", "both"):
        run.write("layout.svg", export_layout(layout, "svg", config.layout, drc))
    run.write("drc.json", _json_text(run.report_doc({"findings": drc.to_records(),
                                                     "passed": drc.passed})))
    return 0


def _cmd_budget(run: _Run, args) -> int:
    config = run.config
    report = stage_report(config.thermal, config.stages, run.catalog)
    print(report.to_text(), end="")
    run.write("budget.csv", report.to_csv())
    run.write("budget.txt", report.to_text())
    run.write("budget.json", _json_text(run.report_doc(
        {"stages": [r.to_record() for r in report.rows]})))
    return 0


_SWEEP_COLUMNS = (
    "parameter", "value",
    "pin_outer_m", "coax_inner_m", "coax_outer_m", "coax_eps_r", "coax_z_ohm",
    "cpw_z_ohm", "cpw_eps_eff",
    "lateral_n_qubits", "lateral_n_wires", "lateral_limiting", "lateral_crossover_m",
    "vertical_n_qubits", "vertical_n_wires", "vertical_limiting",
    "controller_total_w", "controller_margin",
)


def _fmt_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def _sweep_row(config: DesignConfig, parameter: str, value: float) -> dict:
    row = dict.fromkeys(_SWEEP_COLUMNS)
    row["parameter"] = parameter
    row["value"] = value
    row["pin_outer_m"] = pin_outer_diameter(config.pin_stack)
    row["coax_inner_m"] = config.coax.inner_diameter
    row["coax_outer_m"] = config.coax.outer_diameter
    row["coax_eps_r"] = config.coax.eps_r
    row["coax_z_ohm"] = coax_impedance(config.coax)
    if config.cpw is not None:
        row["cpw_z_ohm"] = cpw_impedance(config.cpw)
        row["cpw_eps_eff"] = cpw_effective_permittivity(config.cpw)
    lateral = config.lateral()
    if lateral is not None:
        rep = lateral_scaling_report(config.qubit_array, lateral)
        row["lateral_n_qubits"] = rep.n_qubits
        row["lateral_n_wires"] = rep.n_wires
        row["lateral_limiting"] = rep.limiting_factor
        row["lateral_crossover_m"] = rep.crossover_length
    vertical = config.vertical()
    if vertical is not None:
        rep = vertical_scaling_report(config.qubit_array, vertical)
        row["vertical_n_qubits"] = rep.n_qubits
        row["vertical_n_wires"] = rep.n_wires
        row["vertical_limiting"] = rep.limiting_factor
    if config.thermal.controllers:
        stage_name, count, tech = config.thermal.controllers[0]
        budget = controller_budget(count, tech, config.stages.stage(stage_name))
        row["controller_total_w"] = budget.total
        row["controller_margin"] = budget.margin
    return row


def sweep_csv(run: _Run, decl) -> str:
    """One CSV per sweep declaration: a row of standard outputs per point."""
    if decl.steps == 1:
        values = [decl.start]
    else:
        values = list(np.linspace(decl.start, decl.stop, decl.steps))
    lines = [",".join(_SWEEP_COLUMNS)]
    for v in values:
        raw = set_parameter(run.config.raw, decl.parameter, float(v))
        cfg = parse_design_config(raw, run.catalog)
        row = _sweep_row(cfg, decl.parameter, float(v))
        lines.append(",".join(_fmt_cell(row[c]) for c in _SWEEP_COLUMNS))
    return "\n".join(lines) + "\n"


def _cmd_sweep(run: _Run, args) -> int:
    if not run.config.sweeps:
        raise ConfigInvalid("sweeps", "no sweep declarations in the config")
    for decl in run.config.sweeps:
        slug = decl.parameter.replace(".", "_")
        path = run.write(f"sweep_{slug}.csv", sweep_csv(run, decl))
        print(f"{decl.parameter}: {decl.steps} points -> {path}")
    return 0


def _cmd_paper_check(run: _Run, args) -> int:
    rows = golden_rows(run.catalog)
    failed = 0
    for r in rows:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.id:<26} computed={r.computed:.8g} expected={r.expected:.8g} "
              f"({r.tolerance}) {r.description}")
        failed += 0 if r.passed else 1
    print(f"{len(rows) - failed}/{len(rows)} golden values reproduced")
    run.write("paper_check.json", _json_text(run.report_doc(
        {"rows": [r.to_record() for r in rows],
         "passed": failed == 0})))
    return 0 if failed == 0 else 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="densewire",
        description="Design analyses for high-density vertical qubit wiring.")
    parser.add_argument("--config", help="design config JSON (default: built-in design point)")
    parser.add_argument("--materials", help=f"material catalog JSON (or ${ENV_MATERIALS})")
    parser.add_argument("--out", default=".", help="artifact output directory")
    parser.add_argument("--seed", type=int, default=None,
                        help="seed recorded in reports (analyses are deterministic)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scale", help="wiring scalability reports")
    p.add_argument("--logical-overhead", type=int, default=2000,
                   help="physical qubits per error-corrected qubit")
    p.set_defaults(func=_cmd_scale)

    p = sub.add_parser("impedance", help="line impedances for the configured geometry")
    p.set_defaults(func=_cmd_impedance)

    p = sub.add_parser("rf", help="signal-path reflection/transmission sweep")
    p.set_defaults(func=_cmd_rf)

    p = sub.add_parser("layout", help="generate the interposer layout and run DRC")
    p.add_argument("--format", choices=("json", "svg", "both"), default="both")
    p.set_defaults(func=_cmd_layout)

    p = sub.add_parser("budget", help="per-stage thermal/power budget")
    p.set_defaults(func=_cmd_budget)

    p = sub.add_parser("sweep", help="run the config's parameter sweeps")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("paper-check", help="verify the built-in golden reference values")
    p.set_defaults(func=_cmd_paper_check)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        run = _Run(args)
        return args.func(run, args)
    except (ConfigInvalid, UnknownParameter) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (DensewireError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
