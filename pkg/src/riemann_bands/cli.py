"""Command-line front end.

Each subcommand loads one model (a file path or a registry name), runs one
analysis and writes JSON/CSV artifacts plus ``summary.json`` into
``--out``. Exit codes: 0 ok, 2 model error, 3 numerical failure,
4 consistency failure.

Examples
--------
    riemann-bands branch-points --model hexagon --out runs/hexagon
    riemann-bands obc --model hexagon --mu 1 --out runs/hexagon
    riemann-bands braid --model three_band --loop 0,0,1 --out runs/three_band
    riemann-bands design --targets targets.json --restarts 200 --seed 7 --out runs/design
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from enum import Enum
from pathlib import Path
from typing import Callable

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from riemann_bands.braid import LoopSpec, crossing_number, perm_image
from riemann_bands.design import (
    DesignTarget,
    RestartDiagnostic,
    branch_locations,
    realize_two_band,
    round_trip_error,
    solve_coefficients,
)
from riemann_bands.errors import ModelInvalid, ParseError, RiemannBandsError, SoftCheckFailed
from riemann_bands.polyalg import Plane
from riemann_bands.riemann import check_connectedness, check_consistency, riemann_hurwitz
from riemann_bands.serialize import (
    jsonable,
    parse_coefficients,
    parse_target,
    read_json,
    serialize_model,
)
from riemann_bands.settings import Settings
from riemann_bands.storage import ArtifactStore, RunLog
from riemann_bands.toolkit import BZ_LOOP, BandSurface

logger = logging.getLogger(__name__)

VALIDATION_THRESHOLD = 0.1


class Command(str, Enum):
    BRANCH_POINTS = "branch-points"
    MONODROMY = "monodromy"
    OBC = "obc"
    BRAID = "braid"
    WINDING = "winding"
    DESIGN = "design"
    REALIZE = "realize"
    VALIDATE = "validate"
    REPORT = "report"


class RunConfig(BaseModel):
    """Validated combination of CLI flags and settings.

    Parameters
    ----------
    command : Command
        Analysis to run.
    model : str or None
        Model file path or registry name.
    out : Path
        Output directory; created if missing and required writable.
    """

    command: Command
    model: str | None = None
    out: Path
    mu: int = Field(default=1, ge=1)
    loop: str | None = None
    plane: Plane = Plane.OMEGA
    base: str | None = None
    theta_grid: int = Field(default=256, ge=64)
    restarts: int = Field(default=200, ge=1)
    seed: int = 7
    tol: float = Field(default=1e-6, gt=0)
    root_tol: float = Field(default=1e-8, gt=0)
    cluster_tol: float = Field(default=1e-7, gt=0)
    n_cells: int = Field(default=60, ge=2, le=200)
    targets: Path | None = None
    coeffs: Path | None = None
    strict: bool = False
    progress: bool = False

    @field_validator("loop")
    @classmethod
    def _loop_parses(cls, v: str | None) -> str | None:
        if v is not None:
            LoopSpec.parse(v)
        return v

    @field_validator("base")
    @classmethod
    def _base_parses(cls, v: str | None) -> str | None:
        if v is not None:
            parse_point(v)
        return v

    @model_validator(mode="after")
    def _writable_out(self) -> RunConfig:
        self.out.mkdir(parents=True, exist_ok=True)
        if not os.access(self.out, os.W_OK):
            raise ValueError(f"Output directory {self.out} is not writable")
        needs_model = self.command not in (Command.DESIGN, Command.REALIZE)
        if needs_model and self.model is None:
            raise ValueError(f"Command {self.command.value!r} needs --model")
        if self.command is Command.REALIZE and self.model is None and self.coeffs is None:
            raise ValueError("Command 'realize' needs --coeffs or --model")
        return self

    def settings(self) -> Settings:
        return Settings(
            root_tol=self.root_tol,
            cluster_tol=self.cluster_tol,
            theta_grid=self.theta_grid,
            mu=self.mu,
            gbz_tol=self.tol,
            restarts=self.restarts,
            seed=self.seed,
            chain_length=self.n_cells,
        )

    def loop_spec(self) -> LoopSpec:
        return LoopSpec.parse(self.loop) if self.loop else BZ_LOOP

    def echo(self) -> dict:
        """Config fields recorded in the summary (the output path excluded)."""
        return self.model_dump(mode="json", exclude={"out", "progress"})


def parse_point(text: str) -> complex:
    try:
        re_part, im_part = (float(x) for x in text.split(","))
    except ValueError as exc:
        raise ValueError(f"Point {text!r} is not 're,im'") from exc
    return complex(re_part, im_part)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


class Outcome:
    """Result payload of one command plus the soft checks that failed."""

    def __init__(self) -> None:
        self.result: dict = {}
        self.soft_failures: list[str] = []

    def soft(self, ok: bool, message: str) -> None:
        if not ok:
            logger.warning("Soft check failed: %s", message)
            self.soft_failures.append(message)


def _surface(config: RunConfig) -> BandSurface:
    try:
        return BandSurface.load(config.model, settings=config.settings())
    except KeyError as exc:
        raise ParseError(f"{config.model!r} is neither a model file nor a registered model") from exc


def _point_record(k: int, point) -> dict:
    record = {
        "index": k + 1,
        "location": jsonable(point.location),
        "kind": point.kind.value,
        "multiplicity": point.multiplicity,
    }
    if point.permutation is not None:
        record["permutation"] = point.permutation.one_line()
        record["cycles"] = point.permutation.cycle_string()
    return record


def _branch_label(bps, location: complex) -> int:
    """1-based index of the branch point at ``location``."""
    return 1 + min(range(len(bps)), key=lambda i: abs(bps[i].location - location))


def run_branch_points(config: RunConfig, store: ArtifactStore, outcome: Outcome) -> None:
    surface = _surface(config)
    payload = {
        plane.value: [_point_record(k, p) for k, p in enumerate(surface.branch_points(plane))]
        for plane in (Plane.OMEGA, Plane.Z)
    }
    store.write_json("branch_points.json", payload)
    outcome.result = {f"n_{plane}": len(points) for plane, points in payload.items()}


def run_monodromy(config: RunConfig, store: ArtifactStore, outcome: Outcome) -> None:
    surface = _surface(config)
    base = parse_point(config.base) if config.base else None
    rep = surface.monodromy(config.plane, base, progress=config.progress)
    consistent, _ = check_consistency(rep)
    connected = check_connectedness(rep)
    hurwitz = riemann_hurwitz(rep)
    payload = {
        "plane": rep.plane.value,
        "base": jsonable(rep.base),
        "fiber": jsonable(rep.fiber),
        "points": [_point_record(k, p) for k, p in enumerate(rep.points)],
        "infinity": {
            "permutation": rep.infinity_perm.one_line(),
            "cycles": rep.infinity_perm.cycle_string(),
        },
        "consistent": consistent,
        "connected": connected,
        "genus": hurwitz.genus,
        "n_bp": hurwitz.n_bp,
    }
    store.write_json("monodromy.json", payload)
    outcome.soft(consistent, "product of loop permutations is not the identity")
    outcome.result = {"n_points": len(rep.points), "genus": hurwitz.genus, "connected": connected}


def run_obc(config: RunConfig, store: ArtifactStore, outcome: Outcome) -> None:
    surface = _surface(config)
    spectrum = surface.obc_spectrum(config.mu, progress=config.progress)
    store.write_csv(f"obc_arcs_mu{config.mu}.csv", spectrum.to_frame())
    verdicts = surface.cut_consistency(mu=config.mu)
    rep = surface.monodromy(Plane.OMEGA)
    bps = surface.branch_points(Plane.OMEGA)
    payload = {
        "mu": config.mu,
        "arcs": [
            {
                "arc_id": k,
                "endpoints": [e.label() for e in arc.endpoints],
                "n_samples": len(arc.samples),
                "length": arc.length,
            }
            for k, arc in enumerate(spectrum.arcs)
        ],
        "cuts": [
            {
                "branch_points": [_branch_label(bps, rep.points[g].location) for g in v.group],
                "word": v.word.notation(),
                "permutation": v.permutation.one_line(),
                "consistent": v.consistent,
            }
            for v in verdicts
        ],
    }
    store.write_json(f"obc_mu{config.mu}.json", jsonable(payload))
    for v, cut in zip(verdicts, payload["cuts"]):
        outcome.soft(v.consistent, f"cut through branch points {cut['branch_points']} is inconsistent")
    outcome.result = {"n_arcs": len(spectrum.arcs), "n_cuts": len(verdicts)}


def run_braid(config: RunConfig, store: ArtifactStore, outcome: Outcome) -> None:
    surface = _surface(config)
    loop = config.loop_spec()
    word = surface.braid(loop)
    winding = surface.winding(loop)
    if surface.curve.r > 1:
        store.write_csv("strands.csv", surface.strands(loop).to_frame())
    image = perm_image(word)
    payload = {
        "loop": loop.to_dict(),
        "word": word.notation(),
        "crossing_number": crossing_number(word),
        "winding": winding,
        "permutation": image.one_line(),
        "cycle_type": list(image.cycle_type()),
    }
    store.write_json("braid.json", jsonable(payload))
    outcome.soft(payload["crossing_number"] == winding, "crossing number differs from discriminant winding")
    outcome.result = {"word": payload["word"], "crossing_number": payload["crossing_number"]}


def run_winding(config: RunConfig, store: ArtifactStore, outcome: Outcome) -> None:
    surface = _surface(config)
    loop = config.loop_spec()
    payload = {"loop": loop.to_dict(), "winding": surface.winding(loop)}
    store.write_json("winding.json", jsonable(payload))
    outcome.result = {"winding": payload["winding"]}


def run_design(config: RunConfig, store: ArtifactStore, outcome: Outcome) -> None:
    target = parse_target(read_json(config.targets)) if config.targets else DesignTarget.roots_of_unity()
    diagnostics: list[RestartDiagnostic] = []
    solutions = solve_coefficients(
        target,
        restarts=config.restarts,
        seed=config.seed,
        progress=config.progress,
        diagnostics=diagnostics,
    )
    payload = {
        "targets": jsonable(target.targets),
        "anchor": jsonable(target.anchor),
        "restarts": config.restarts,
        "accepted_restarts": sum(d.accepted for d in diagnostics),
        "solutions": [
            {"model": serialize_model(c), "branch_points": jsonable(branch_locations(c))}
            for c in solutions
        ],
    }
    store.write_json("design_solutions.json", payload)
    outcome.soft(len(solutions) >= 2, "fewer than two distinct solutions")
    outcome.result = {"n_solutions": len(solutions)}


def run_realize(config: RunConfig, store: ArtifactStore, outcome: Outcome) -> None:
    if config.coeffs is not None:
        coeffs = parse_coefficients(read_json(config.coeffs))
    else:
        surface = _surface(config)
        if surface.coefficients is None:
            raise ModelInvalid(f"Model {config.model!r} is not a two-band coefficient set")
        coeffs = surface.coefficients
    lattices = realize_two_band(coeffs)
    payload = {
        "coefficients": serialize_model(coeffs),
        "realizations": [
            {"model": serialize_model(h), "round_trip_error": round_trip_error(h, coeffs)}
            for h in lattices
        ],
    }
    store.write_json("realizations.json", payload)
    outcome.result = {"n_realizations": len(lattices)}


def run_validate(config: RunConfig, store: ArtifactStore, outcome: Outcome) -> None:
    surface = _surface(config)
    try:
        report = surface.validate_obc(config.mu, config.n_cells)
    except ValueError as exc:
        raise ModelInvalid(str(exc)) from exc
    payload = {
        "mu": config.mu,
        "n_cells": report.n_cells,
        "gauge_radius": report.gauge_radius,
        "distance": report.distance,
        "threshold": VALIDATION_THRESHOLD,
        "passed": report.passed(VALIDATION_THRESHOLD),
        "outliers": jsonable(report.outliers),
    }
    store.write_json(f"validation_mu{config.mu}.json", payload)
    outcome.soft(payload["passed"], f"finite-chain distance {report.distance:.3g} ≥ {VALIDATION_THRESHOLD}")
    outcome.result = {"distance": report.distance, "passed": payload["passed"]}


def run_report(config: RunConfig, store: ArtifactStore, outcome: Outcome) -> None:
    surface = _surface(config)
    report = surface.report(config.loop_spec(), progress=config.progress)
    store.write_json("report.json", jsonable(report))
    braid = report["braid"]
    outcome.soft(braid["crossing_number"] == braid["winding"], "crossing number differs from discriminant winding")
    for plane in ("omega_plane", "z_plane"):
        section = report[plane]
        if "error" in section:
            outcome.soft(False, f"{plane} analysis failed: {section['error']}: {section['message']}")
        else:
            outcome.soft(section["consistent"], f"{plane} monodromy is inconsistent")
    outcome.result = {
        "genus_omega": report["omega_plane"].get("genus"),
        "genus_z": report["z_plane"].get("genus"),

        "crossing_number": braid["crossing_number"],
        "winding": braid["winding"],
    }


COMMANDS: dict[Command, Callable[[RunConfig, ArtifactStore, Outcome], None]] = {
    Command.BRANCH_POINTS: run_branch_points,
    Command.MONODROMY: run_monodromy,
    Command.OBC: run_obc,
    Command.BRAID: run_braid,
    Command.WINDING: run_winding,
    Command.DESIGN: run_design,
    Command.REALIZE: run_realize,
    Command.VALIDATE: run_validate,
    Command.REPORT: run_report,
}


# ---------------------------------------------------------------------------
# Driver
# ---------------------------------------------------------------------------


def run(config: RunConfig) -> int:
    """Run one command, write its artifacts and ``summary.json``, log the run.

    Returns
    -------
    int
        Process exit code.
    """
    store = ArtifactStore(config.out)
    outcome = Outcome()
    started = time.perf_counter()
    status, error, message, code = "ok", None, None, 0
    try:
        COMMANDS[config.command](config, store, outcome)
        if outcome.soft_failures and config.strict:
            raise SoftCheckFailed("; ".join(outcome.soft_failures))
    except RiemannBandsError as exc:
        status, error, message, code = "error", type(exc).__name__, str(exc), exc.exit_code
        logger.error("%s failed: %s: %s", config.command.value, error, message)
    except ValueError as exc:
        # argument preconditions inside the analyses count as model errors
        status, error, message, code = "error", type(exc).__name__, str(exc), ModelInvalid.exit_code
        logger.error("%s failed: %s", config.command.value, message)

    summary = {
        "command": config.command.value,
        "config": config.echo(),
        "status": status,
        "error": error,
        "message": message,
        "exit_code": code,
        "result": jsonable(outcome.result),
        "soft_failures": outcome.soft_failures,
        "artifacts": sorted(p.name for p in store.written),
    }
    store.write_json("summary.json", summary)
    RunLog(config.out).log(
        command=config.command.value,
        model=config.model or str(config.targets or config.coeffs or ""),
        status=status,
        exit_code=code,
        duration_s=time.perf_counter() - started,
        error=error,
    )
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="riemann-bands",
        description="Non-Hermitian band structures as Riemann surfaces.",
    )
    parser.add_argument("command", choices=[c.value for c in Command])
    parser.add_argument("--model", help="Model JSON file or registry name (e.g. hexagon)")
    parser.add_argument("--out", default="out", help="Output directory")
    parser.add_argument("--mu", type=int, default=None, help="Boundary-condition index")
    parser.add_argument("--loop", default=None, help="Loop as 'center_re,center_im,radius'")
    parser.add_argument("--plane", choices=[p.value for p in Plane], default=Plane.OMEGA.value)
    parser.add_argument("--base", default=None, help="Monodromy base point 're,im'")
    parser.add_argument("--theta-grid", type=int, default=None)
    parser.add_argument("--restarts", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--tol", type=float, default=None, help="GBZ modulus tolerance")
    parser.add_argument("--root-tol", type=float, default=None, help="Polynomial root residual tolerance")
    parser.add_argument("--cluster-tol", type=float, default=None, help="Root clustering tolerance")
    parser.add_argument("--n-cells", type=int, default=None, help="Finite-chain length")
    parser.add_argument("--targets", default=None, help="Design target JSON")
    parser.add_argument("--coeffs", default=None, help="Two-band coefficient JSON")
    parser.add_argument("--strict", action="store_true", help="Fail on soft checks")
    parser.add_argument("--progress", action="store_true", help="Show progress bars")
    parser.add_argument("--log-level", default=None)
    return parser


def config_from_args(args: argparse.Namespace, settings: Settings) -> RunConfig:
    """Merge parsed flags over settings.

    Raises
    ------
    ModelInvalid
        If the merged configuration does not validate.
    """
    def pick(flag, default):
        return default if flag is None else flag

    try:
        return RunConfig(
            command=args.command,
            model=args.model,
            out=Path(args.out),
            mu=pick(args.mu, settings.mu),
            loop=args.loop,
            plane=args.plane,
            base=args.base,
            theta_grid=pick(args.theta_grid, settings.theta_grid),
            restarts=pick(args.restarts, settings.restarts),
            seed=pick(args.seed, settings.seed),
            tol=pick(args.tol, settings.gbz_tol),
            root_tol=pick(args.root_tol, settings.root_tol),
            cluster_tol=pick(args.cluster_tol, settings.cluster_tol),
            n_cells=pick(args.n_cells, settings.chain_length),
            targets=args.targets,
            coeffs=args.coeffs,
            strict=args.strict,
            progress=args.progress,
        )
    except ValidationError as exc:
        raise ModelInvalid(f"Invalid run configuration: {exc}") from exc


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = Settings.from_env()
    except ModelInvalid as exc:
        print(f"riemann-bands: {exc}", file=sys.stderr)
        return exc.exit_code
    logging.basicConfig(
        level=(args.log_level or settings.log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        config = config_from_args(args, settings)
    except ModelInvalid as exc:
        print(f"riemann-bands: {exc}", file=sys.stderr)
        return exc.exit_code
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
