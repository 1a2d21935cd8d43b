"""Command-line interface

    cclab <command> [--config run.toml] [options]

Commands: solve, farfield, ucp-verify, det-scan, invis-scan, diff,
admissibility. Every run writes its artifacts and a manifest.json into the
output directory. Exit status: 0 ok, 1 configuration error, 2 solver
failure, 3 failed check (--check). On failure the reason is printed to
stderr as one JSON object.
"""

import argparse
import hashlib
import json
import math
import platform
import sys
import warnings
from dataclasses import dataclass, field
from importlib import metadata
from pathlib import Path
from typing import Callable

import numpy as np

from . import __version__
from .config.run_config import COMMANDS, RunConfig
from .config.thresholds import LabThresholds, load_thresholds
from .errors import (
    ConfigError,
    IllConditionedFitError,
    LabAssertionError,
    LabError,
    ResonanceError,
    SolverError,
    SpecialFunctionError,
)
from .experiments import (
    SolverSettings,
    Verdict,
    corner_regularity_probe,
    distinguishable,
    forward_far_field,
    invisibility_scan,
    resolve_incident,
    scatterer_admissibility,
    solve_fem,
)
from .experiments.admissibility import scatterer_polygons
from .geometry.sector import Sector
from .geometry.structures import DiskScatterer
from .io import load_scatterer
from .logging import LogStore, ScanLogger, SolverLogger, SweepLogger
from .scattering.disk import ModalSolution, mie_solve, scattered_field
from .specfun.fourier_bessel import FourierBesselField
from .ucp import det_step, det_step_zeros, singular_angles, ucp_verify

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_SOLVER = 2
EXIT_ASSERTION = 3

STATUS_NAMES = {
    EXIT_OK: "ok",
    EXIT_CONFIG: "config_error",
    EXIT_SOLVER: "solver_failure",
    EXIT_ASSERTION: "assertion_failure",
}
SOLVER_ERRORS = (SolverError, ResonanceError, IllConditionedFitError, SpecialFunctionError)
LIBRARIES = ("numpy", "scipy", "shapely", "triangle", "pyyaml")
EMPTY_LEVEL = 1e-8
ZERO_MATCH_TOL = 1e-9
RING_SAMPLES = 256


@dataclass
class RunContext:
    """Loggers and thresholds shared by the command handlers"""

    config: RunConfig
    thresholds: LabThresholds
    store: LogStore

    @property
    def solver_logger(self) -> SolverLogger:
        return SolverLogger(self.store)

    def check(self, condition: bool, message: str) -> None:
        """Raise LabAssertionError when --check is on and condition fails"""
        if self.config.check and not condition:
            raise LabAssertionError(message)


@dataclass
class CommandResult:
    outputs: dict[str, Path] = field(default_factory=dict)
    summary: dict = field(default_factory=dict)


def exit_code_for(error: BaseException) -> int:
    """Exit status of an exception raised by a run"""
    if isinstance(error, LabAssertionError):
        return EXIT_ASSERTION
    if isinstance(error, SOLVER_ERRORS):
        return EXIT_SOLVER
    if isinstance(error, (LabError, OSError)):
        return EXIT_CONFIG
    return EXIT_SOLVER


def _settings(config: RunConfig) -> SolverSettings:
    p = config.params
    return SolverSettings(
        solver=p.solver,
        points_per_wavelength=p.points_per_wavelength,
        h=p.h,
        truncation_factor=p.truncation_factor,
        directions=p.directions,
    )


def _write_json(path: Path, data: dict) -> Path:
    path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def _write_rows(path: Path, header: list[str], rows) -> Path:
    lines = [",".join(header)]
    lines += [",".join(v if isinstance(v, str) else repr(float(v)) for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def _ring(radius: float) -> np.ndarray:
    t = 2 * math.pi * np.arange(RING_SAMPLES) / RING_SAMPLES
    return radius * np.column_stack([np.cos(t), np.sin(t)])


def _use_mie(scatterer, settings: SolverSettings) -> bool:
    if settings.solver == "mie" and not isinstance(scatterer, DiskScatterer):
        raise ConfigError("the modal solver handles disk scatterers only")
    return settings.solver == "mie" or (settings.solver == "auto" and isinstance(scatterer, DiskScatterer))


def _solve_any(ctx: RunContext, scatterer):
    """Mie solution for disks (unless fem is forced), FEM otherwise"""
    k = ctx.config.params.k
    settings = _settings(ctx.config)
    incident = resolve_incident(ctx.config.incident, k, scatterer.circumradius)
    if _use_mie(scatterer, settings):
        return mie_solve(scatterer, k, incident, logger=ctx.solver_logger)
    return solve_fem(scatterer, k, incident, settings, ctx.thresholds, ctx.solver_logger)


def cmd_solve(ctx: RunContext) -> CommandResult:
    out = ctx.config.output
    scatterer = load_scatterer(ctx.config.scatterer)
    sol = _solve_any(ctx, scatterer)
    result = CommandResult()
    result.outputs["solution"] = _write_json(out / "solution.json", sol.to_dict())
    if isinstance(sol, ModalSolution):
        radius = 1.5 * scatterer.circumradius
        ring = scattered_field(sol, _ring(radius))
        rows = [(n, b.real, b.imag) for n, b in zip(sol.orders, sol.scattered)]
        result.outputs["modes"] = _write_rows(out / "modes.csv", ["n", "b_re", "b_im"], rows)
    else:
        mesh = sol.mesh
        radius = 0.5 * (mesh.scatterer_radius + mesh.radius)
        ring = sol.evaluate(_ring(radius))
        rows = [(x, y, u.real, u.imag) for (x, y), u in zip(mesh.nodes, sol.values)]
        result.outputs["nodal"] = _write_rows(out / "scattered_nodal.csv", ["x", "y", "re", "im"], rows)
        result.outputs["mesh"] = mesh.export(out / "mesh.txt")
        result.summary["scattered_l2"] = sol.l2_norm
    rms = float(np.sqrt(np.mean(np.abs(ring) ** 2)))
    result.summary.update({"scattered_rms": rms, "ring_radius": radius, "empty": scatterer.is_empty})
    if scatterer.is_empty:
        ctx.check(rms < EMPTY_LEVEL, f"empty scatterer scatters: rms |u^s| = {rms:.3e}")
    return result


def cmd_farfield(ctx: RunContext) -> CommandResult:
    scatterer = load_scatterer(ctx.config.scatterer)
    pattern = forward_far_field(
        scatterer, ctx.config.params.k, ctx.config.incident, _settings(ctx.config), ctx.thresholds, ctx.solver_logger
    )
    result = CommandResult(summary={"l2_norm": pattern.l2_norm, "max_abs": pattern.max_abs})
    result.outputs["farfield"] = pattern.to_csv(ctx.config.output / "farfield.csv")
    ctx.check(bool(np.all(np.isfinite(pattern.values))), "far field has non-finite values")
    if scatterer.is_empty:
        ctx.check(pattern.l2_norm < EMPTY_LEVEL, f"empty scatterer has far-field norm {pattern.l2_norm:.3e}")
    return result


def cmd_det_scan(ctx: RunContext) -> CommandResult:
    p = ctx.config.params
    betas = np.linspace(p.beta_min, p.beta_max, p.beta_count)
    ells = range(p.max_step + 1)
    columns = [det_step(betas, ell) for ell in ells]
    rows = zip(betas, *columns)
    result = CommandResult()
    result.outputs["det_step"] = _write_rows(
        ctx.config.output / "det_step.csv", ["beta"] + [f"det_step_{ell}" for ell in ells], rows
    )
    zeros, mismatches = {}, []
    for ell in ells:
        found = det_step_zeros(ell)
        expected = np.array(sorted(s.beta for s in singular_angles(ell)))
        zeros[str(ell)] = {"found": found.tolist(), "enumerated": [s.to_dict() for s in singular_angles(ell)]}
        if found.size != expected.size or not np.allclose(found, expected, rtol=0, atol=ZERO_MATCH_TOL):
            mismatches.append(ell)
    result.outputs["zeros"] = _write_json(ctx.config.output / "det_step_zeros.json", zeros)
    result.summary["zero_mismatches"] = mismatches
    ctx.check(not mismatches, f"det_step zeros differ from the enumerated angles for ell in {mismatches}")
    return result


def cmd_ucp_verify(ctx: RunContext) -> CommandResult:
    p = ctx.config.params
    sector = Sector.symmetric(p.beta)
    # trial field vanishing to order max_step + 1, so every step is consistent
    coeffs = FourierBesselField.single(math.sqrt(p.gamma1), p.max_step + 2, a=1.0, b=1.0)
    report = ucp_verify(
        sector,
        complex(p.eta),
        p.gamma1,
        coeffs,
        tau_grid=p.tau_grid or None,
        max_step=p.max_step,
        config=ctx.thresholds,
        logger=SweepLogger(ctx.store),
        threads=ctx.config.threads,
    )
    result = CommandResult(
        summary={
            "angle_class": str(report.angle_class),
            "first_singular_step": report.first_singular_step,
            "forced_zero": [s.forced_zero for s in report.steps],
        }
    )
    result.outputs["report"] = report.to_json(ctx.config.output / "ucp.json")
    result.outputs["table"] = report.to_csv(ctx.config.output / "ucp.csv")
    ctx.check(report.all_nonsingular, f"step {report.first_singular_step} is singular")
    bad = [s.ell for s in report.steps if not s.forced_zero]
    ctx.check(not bad, f"forced solution does not vanish for steps {bad}")
    return result


def cmd_invis_scan(ctx: RunContext) -> CommandResult:
    scatterer = load_scatterer(ctx.config.scatterer)
    report = invisibility_scan(
        scatterer,
        ctx.config.params.k_grid,
        ctx.config.incident,
        _settings(ctx.config),
        ctx.thresholds,
        threads=ctx.config.threads,
        scan_logger=ScanLogger(ctx.store),
        solver_logger=ctx.solver_logger,
    )
    result = CommandResult(
        summary={
            "min_norm": None if math.isnan(report.min_metric) else report.min_metric,
            "flagged": [pt.parameter for pt in report.flagged],
            "failures": [pt.parameter for pt in report.failures],
        }
    )
    result.outputs["scan_csv"] = report.to_csv(ctx.config.output / "invisibility.csv")
    result.outputs["scan_json"] = report.to_json(ctx.config.output / "invisibility.json")
    ctx.check(not report.failures, f"solver failed at k = {result.summary['failures']}")
    ctx.check(not report.flagged, f"far-field norm below theta_inv at k = {result.summary['flagged']}")
    return result


def cmd_diff(ctx: RunContext) -> CommandResult:
    first = load_scatterer(ctx.config.scatterer)
    second = load_scatterer(ctx.config.other)
    verdict = distinguishable(
        first, second, ctx.config.params.k, ctx.config.incident, _settings(ctx.config), ctx.thresholds, ctx.solver_logger
    )
    result = CommandResult(summary=verdict.to_dict())
    result.outputs["diff"] = _write_json(ctx.config.output / "diff.json", verdict.to_dict())
    ctx.check(verdict.passed, verdict.reason)
    return result


def cmd_admissibility(ctx: RunContext) -> CommandResult:
    p = ctx.config.params
    scatterer = load_scatterer(ctx.config.scatterer)
    sol = _solve_any(ctx, scatterer)
    polygons = scatterer_polygons(scatterer)
    entries = []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        for polygon, vertex, check in scatterer_admissibility(
            sol, scatterer, p.rho0, p.right_angle_policy, ctx.thresholds
        ):
            entry = {"polygon": polygon, "vertex": vertex, **check.to_dict()}
            corner = polygons[polygon].vertices[vertex]
            entry["regularity"] = corner_regularity_probe(sol, corner, config=ctx.thresholds).to_dict()
            entries.append(entry)
    notes = sorted({str(w.message) for w in caught})
    inadmissible = [(e["polygon"], e["vertex"]) for e in entries if e["verdict"] == Verdict.INADMISSIBLE.value]
    result = CommandResult(summary={"vertices": len(entries), "inadmissible": inadmissible, "warnings": notes})
    result.outputs["admissibility"] = _write_json(
        ctx.config.output / "admissibility.json", {"vertices": entries, "warnings": notes}
    )
    ctx.check(not inadmissible, f"inadmissible vertices {inadmissible}")
    return result


HANDLERS: dict[str, Callable[[RunContext], CommandResult]] = {
    "solve": cmd_solve,
    "farfield": cmd_farfield,
    "ucp-verify": cmd_ucp_verify,
    "det-scan": cmd_det_scan,
    "invis-scan": cmd_invis_scan,
    "diff": cmd_diff,
    "admissibility": cmd_admissibility,
}


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def library_versions() -> dict[str, str | None]:
    versions = {}
    for name in LIBRARIES:
        try:
            versions[name] = metadata.version(name)
        except metadata.PackageNotFoundError:
            versions[name] = None
    return versions


def write_manifest(config: RunConfig, code: int, reason: dict | None, result: CommandResult | None) -> Path:
    """manifest.json: resolved config, its hash, versions, output hashes and status"""
    out = config.output
    outputs = {}
    if result is not None:
        outputs = {
            name: {"path": path.relative_to(out).as_posix(), "sha256": _sha256(path)}
            for name, path in sorted(result.outputs.items())
        }
    manifest = {
        "package": "conductive-corner-lab",
        "version": __version__,
        "python": platform.python_version(),
        "libraries": library_versions(),
        "config": config.to_dict(),
        "config_hash": config.config_hash(),
        "outputs": outputs,
        "summary": result.summary if result is not None else {},
        "status": STATUS_NAMES[code],
        "exit_code": code,
        "reason": reason,
    }
    return _write_json(out / "manifest.json", _plain(manifest))


def _plain(value):
    """JSON-safe copy (numpy scalars, complex numbers, NaN -> None)"""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (np.integer, np.bool_)):
        return value.item()
    if isinstance(value, (float, np.floating)):
        return None if not math.isfinite(value) else float(value)
    return value


def _reason(code: int, error: BaseException) -> dict:
    return {"status": STATUS_NAMES[code], "error": type(error).__name__, "message": str(error)}


def run(config: RunConfig) -> int:
    """Execute a validated run; returns the exit status"""
    config.output.mkdir(parents=True, exist_ok=True)
    store = LogStore(config.output / "logs")
    store.set_session_id(config.config_hash()[:12])
    result, reason, code = None, None, EXIT_OK
    try:
        ctx = RunContext(config=config, thresholds=config.threshold_config(), store=store)
        result = HANDLERS[config.command](ctx)
    except Exception as e:  # noqa: BLE001
        code = exit_code_for(e)
        reason = _reason(code, e)
        print(json.dumps(reason), file=sys.stderr)
    write_manifest(config, code, reason, result)
    return code


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from e


def _complex_arg(text: str) -> list[float]:
    """"1.0" or "1.0,0.5" (re,im)"""
    values = _float_list(text)
    if len(values) not in (1, 2):
        raise argparse.ArgumentTypeError(f"expected re or re,im, got {text!r}")
    return values if len(values) == 2 else [values[0], 0.0]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="TOML run file")
    common.add_argument("-o", "--output", help="Output directory")
    common.add_argument("--scatterer", help="Scatterer file (TOML/JSON) or preset name")
    common.add_argument("--other", help="Second scatterer (diff)")
    common.add_argument("--k", type=float, help="Wavenumber")
    common.add_argument("--k-grid", type=_float_list, dest="k_grid", help="Comma-separated wavenumbers")
    common.add_argument("--solver", choices=("auto", "mie", "fem"))
    common.add_argument("--h", type=float, help="Mesh size")
    common.add_argument("--ppw", type=float, dest="points_per_wavelength", help="Mesh points per wavelength")
    common.add_argument("--truncation-factor", type=float, dest="truncation_factor", help="Rt / R_s")
    common.add_argument("--directions", type=int, help="Far-field directions")
    common.add_argument("--beta", type=float, help="Opening angle (ucp-verify)")
    common.add_argument("--beta-min", type=float, dest="beta_min")
    common.add_argument("--beta-max", type=float, dest="beta_max")
    common.add_argument("--beta-count", type=int, dest="beta_count")
    common.add_argument("--max-step", type=int, dest="max_step", help="Largest induction step")
    common.add_argument("--eta", type=_complex_arg, help="Conductive constant re[,im] (ucp-verify)")
    common.add_argument("--gamma1", type=float)
    common.add_argument("--tau-grid", type=_float_list, dest="tau_grid")
    common.add_argument("--rho0", type=float, help="Largest admissibility radius")
    common.add_argument("--right-angle-policy", choices=("cond2", "always", "never"), dest="right_angle_policy")
    common.add_argument("--thresholds", type=Path, help="YAML threshold overrides")
    common.add_argument("--threads", type=int, help="Worker threads (default: CCLAB_THREADS)")
    common.add_argument("--check", action="store_true", default=None, help="Exit 3 when the run's check fails")

    parser = argparse.ArgumentParser(prog="cclab", description="Conductive corner scattering laboratory")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "solve": "Forward solve; writes the scattered field",
        "farfield": "Far-field pattern",
        "ucp-verify": "Verify the corner induction steps",
        "det-scan": "Tabulate det_step over an angle grid",
        "invis-scan": "Far-field norms over a wavenumber grid",
        "diff": "Far-field difference of two scatterers",
        "admissibility": "Admissibility and regularity at every vertex",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def _overrides(args: argparse.Namespace) -> dict:
    skip = {"config", "thresholds"}
    overrides = {k: v for k, v in vars(args).items() if k not in skip}
    if args.thresholds is not None:
        overrides["thresholds"] = load_thresholds(args.thresholds).to_dict()
    return overrides


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig.from_toml(args.config, _overrides(args))
    except ConfigError as e:
        print(json.dumps(_reason(EXIT_CONFIG, e)), file=sys.stderr)
        return EXIT_CONFIG
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
