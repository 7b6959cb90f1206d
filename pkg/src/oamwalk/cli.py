"""Batch front-end: run walks, compile optical trains, study localization.

Subcommands
-----------

``run --config c.json --out dist.csv``
    Evolve the configured walk.  Writes a ``t,x,P`` CSV (final step by
    default, whole trajectory with ``emit_trajectory``) plus a
    ``<out>.summary.json`` with per-step moments.
``compile --config c.json --out parts.json [--verify]``
    Emit the ordered optical parts list for a split-step or generalized
    walk; with ``--verify`` each step block carries its certification
    against the dense walk operator and a failed check exits with code 4.
``verify``
    Alias for ``compile`` with verification forced on.
``localize --config c.json --seeds N --out loc.json``
    Ensemble of disordered generalized walks: per-seed spread histories,
    their mean, and the ballistic baseline walk in one JSON file.

All outputs are pure functions of the config file (seed included); running
a command twice produces byte-identical files.  Exit codes: 0 ok, 2 bad
config, 3 lattice guard violation, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import compiler, walk
from .compiler import CompiledStep, PdcBlock, VerificationError, VerificationReport
from .optics import HalfWavePlate, JPlate, VariableWavePlate

__all__ = [
    "ConfigError",
    "load_config",
    "build_spec",
    "element_to_record",
    "element_from_record",
    "parts_list_document",
    "parse_parts_list",
    "main",
]

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_GUARD = 3
EXIT_VERIFY = 4


class ConfigError(ValueError):
    """The run configuration is malformed or inconsistent."""


_COMMON_KEYS = {
    "schema_version",
    "walk",
    "steps",
    "half_width",
    "start",
    "coin_state",
    "seed",
    "emit_trajectory",
    "emit_all_sites",
    "verify",
}
_KIND_KEYS = {
    "dtqw": {"theta"},
    "ssqw": {"theta1", "theta2"},
    "generalized": {"table1", "table2"},
    "electric-dtqw": {"theta", "phi_e"},
}
_TABLE_KEYS = {"chi", "xi", "eta", "theta"}


def load_config(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise ConfigError(f"cannot read config {path}: {err}") from err
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as err:
        raise ConfigError(f"config {path} is not valid JSON: {err}") from err
    if not isinstance(cfg, dict):
        raise ConfigError("config root must be a JSON object")
    return cfg


def _require(cfg: dict, key: str, kinds, what: str):
    if key not in cfg:
        raise ConfigError(f"missing required key {key!r}")
    value = cfg[key]
    if not isinstance(value, kinds) or isinstance(value, bool) and kinds is not bool:
        raise ConfigError(f"key {key!r} must be {what}, got {value!r}")
    return value


def _parse_coin_state(raw) -> tuple[complex, complex]:
    try:
        (re0, im0), (re1, im1) = raw
        coin = (complex(float(re0), float(im0)), complex(float(re1), float(im1)))
    except (TypeError, ValueError) as err:
        raise ConfigError(
            "coin_state must be [[re, im], [re, im]] pairs of numbers"
        ) from err
    if abs(math.hypot(abs(coin[0]), abs(coin[1])) - 1.0) > 1e-12:
        raise ConfigError("coin_state must be normalized to 1 within 1e-12")
    return coin


def _angle_column(raw, n: int, key: str, name: str) -> np.ndarray:
    if isinstance(raw, (int, float)) and not isinstance(raw, bool):
        return np.full(n, float(raw))
    if isinstance(raw, list):
        if len(raw) != n:
            raise ConfigError(f"{name}.{key} must list {n} angles (one per site), got {len(raw)}")
        return np.asarray([float(v) for v in raw])
    raise ConfigError(f"{name}.{key} must be a number or a list of numbers")


def _parse_table(raw, half_width: int, name: str) -> walk.CoinTable | None:
    if raw == "random":
        return None  # resolved from the seed by WalkSpec
    if not isinstance(raw, dict):
        raise ConfigError(f"{name} must be \"random\" or an object with angle columns")
    unknown = set(raw) - _TABLE_KEYS
    if unknown:
        raise ConfigError(f"unknown keys in {name}: {sorted(unknown)}")
    n = 2 * half_width + 1
    cols = {k: _angle_column(raw.get(k, 0.0), n, k, name) for k in ("chi", "xi", "eta", "theta")}
    return walk.CoinTable(-half_width, cols["chi"], cols["xi"], cols["eta"], cols["theta"])


def build_spec(cfg: dict) -> walk.WalkSpec:
    """Validate a config mapping and turn it into a WalkSpec."""
    version = _require(cfg, "schema_version", int, "an integer")
    if version != SCHEMA_VERSION:
        raise ConfigError(f"unsupported schema_version {version}; this tool reads {SCHEMA_VERSION}")
    kind = _require(cfg, "walk", str, "a string")
    if kind not in _KIND_KEYS:
        raise ConfigError(f"unknown walk {kind!r}; expected one of {sorted(_KIND_KEYS)}")
    allowed = _COMMON_KEYS | _KIND_KEYS[kind]
    unknown = set(cfg) - allowed
    if unknown:
        raise ConfigError(f"unknown keys for walk {kind!r}: {sorted(unknown)}")

    steps = _require(cfg, "steps", int, "a non-negative integer")
    half_width = _require(cfg, "half_width", int, "a positive integer")
    if steps < 0 or half_width < 1:
        raise ConfigError("steps must be >= 0 and half_width >= 1")
    start = cfg.get("start", 0)
    if not isinstance(start, int) or isinstance(start, bool):
        raise ConfigError("start must be an integer site")
    coin = _parse_coin_state(cfg["coin_state"]) if "coin_state" in cfg else walk.SYMMETRIC_COIN
    seed = cfg.get("seed")
    if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool)):
        raise ConfigError("seed must be an integer")

    kwargs = dict(coin_state=coin, start=start, seed=seed)
    if kind in ("dtqw", "electric-dtqw"):
        kwargs["theta1"] = float(_require(cfg, "theta", (int, float), "a number"))
    if kind == "electric-dtqw":
        phi = cfg.get("phi_e", 0.0)
        if isinstance(phi, bool) or not isinstance(phi, (int, float)):
            raise ConfigError("phi_e must be a number")
        kwargs["phi_e"] = float(phi)
    if kind == "ssqw":
        kwargs["theta1"] = float(_require(cfg, "theta1", (int, float), "a number"))
        kwargs["theta2"] = float(_require(cfg, "theta2", (int, float), "a number"))
    if kind == "generalized":
        for slot in ("table1", "table2"):
            raw = cfg.get(slot, "random")
            try:
                kwargs[slot] = _parse_table(raw, half_width, slot)
            except walk.LatticeGuardError:
                raise
            except ValueError as err:
                raise ConfigError(str(err)) from err
        if (kwargs["table1"] is None or kwargs["table2"] is None) and seed is None:
            raise ConfigError("generalized walk with random tables needs a seed")

    spec = walk.WalkSpec(kind, steps, half_width, **kwargs)
    spec.validate()  # LatticeGuardError propagates to exit code 3
    return spec


def _fmt(value: float) -> str:
    return f"{value:.17g}"


# --- run -------------------------------------------------------------------


def _distribution_rows(traj, emit_trajectory: bool, emit_all_sites: bool):
    times = range(len(traj)) if emit_trajectory else [len(traj) - 1]
    for t in times:
        p = walk.probability(traj[t])
        for x in sorted(p):
            if emit_all_sites or p[x] > 0.0:
                yield t, x, p[x]


def run_command(cfg: dict, out_path: str) -> int:
    spec = build_spec(cfg)
    emit_trajectory = bool(cfg.get("emit_trajectory", False))
    emit_all_sites = bool(cfg.get("emit_all_sites", False))
    traj = walk.evolve(spec)

    lines = ["t,x,P"]
    lines += [f"{t},{x},{_fmt(p)}" for t, x, p in _distribution_rows(traj, emit_trajectory, emit_all_sites)]
    Path(out_path).write_text("\n".join(lines) + "\n")

    summary = {
        "schema_version": SCHEMA_VERSION,
        "walk": spec.walk_kind,
        "steps": spec.steps,
        "half_width": spec.half_width,
        "moments": [],
    }
    for t, state in enumerate(traj):
        p = walk.probability(state)
        mean, var = walk.moments(p)
        summary["moments"].append(
            {"t": t, "mean": mean, "variance": var, "sigma": math.sqrt(var), "total": sum(p.values())}
        )
    _write_json(_summary_path(out_path), summary)
    return EXIT_OK


def _summary_path(out_path: str) -> Path:
    return Path(out_path).with_suffix(".summary.json")


def _write_json(path, document: dict) -> None:
    Path(path).write_text(json.dumps(document, indent=2, sort_keys=True) + "\n")


# --- compile / verify ------------------------------------------------------


def element_to_record(element, order: int, provenance: str) -> dict:
    if isinstance(element, JPlate):
        kind, params = "jplate", {
            "m_x": element.m_x,
            "c_x": element.c_x,
            "m_y": element.m_y,
            "c_y": element.c_y,
            "angle": element.angle,
        }
    elif isinstance(element, HalfWavePlate):
        kind, params = "half_waveplate", {"angle": element.angle}
    elif isinstance(element, VariableWavePlate):
        kind, params = "variable_waveplate", {"retardance": element.retardance}
    elif isinstance(element, PdcBlock):
        kind, params = "pdc_block", {
            "lattice_min": element.lattice_min,
            "hwp_angle": 0.0,
            "q2": element.q2.tolist(),
            "q1": element.q1.tolist(),
        }
    else:
        raise TypeError(f"cannot serialize element of type {type(element).__name__}")
    return {"order": order, "element_type": kind, "parameters": params, "provenance": provenance}


def element_from_record(record: dict):
    kind = record["element_type"]
    params = record["parameters"]
    if kind == "jplate":
        return JPlate(params["m_x"], params["c_x"], params["m_y"], params["c_y"], params["angle"])
    if kind == "half_waveplate":
        return HalfWavePlate(params["angle"])
    if kind == "variable_waveplate":
        return VariableWavePlate(params["retardance"])
    if kind == "pdc_block":
        return PdcBlock(params["lattice_min"], np.asarray(params["q2"]), np.asarray(params["q1"]))
    raise ConfigError(f"unknown element_type {kind!r} in parts list")


def _report_to_json(report: VerificationReport) -> dict:
    return {
        "passed": report.passed,
        "fidelity": report.fidelity,
        "phase": report.phase,
        "tol": report.tol,
        "factors": [
            {"description": f.description, "unitarity_defect": f.unitarity_defect}
            for f in report.factors
        ],
    }


def parts_list_document(spec: walk.WalkSpec, steps: list[CompiledStep], reports) -> dict:
    blocks = []
    for i, cs in enumerate(steps):
        block = {
            "step": i,
            "phase": cs.phase,
            "notes": list(cs.notes),
            "elements": [
                element_to_record(el, order, prov)
                for order, (el, prov) in enumerate(zip(cs.elements, cs.provenance))
            ],
        }
        if reports is not None:
            block["verification"] = _report_to_json(reports[i])
        blocks.append(block)
    return {
        "schema_version": SCHEMA_VERSION,
        "walk": spec.walk_kind,
        "step_count": spec.steps,
        "half_width": spec.half_width,
        "verified": reports is not None,
        "step_blocks": blocks,
    }


def parse_parts_list(document: dict) -> list[CompiledStep]:
    """Rebuild compiled steps from an emitted parts list."""
    if document.get("schema_version") != SCHEMA_VERSION:
        raise ConfigError("parts list has an unsupported schema_version")
    steps = []
    for block in document["step_blocks"]:
        records = sorted(block["elements"], key=lambda r: r["order"])
        elements = tuple(element_from_record(r) for r in records)
        provenance = tuple(r["provenance"] for r in records)
        steps.append(CompiledStep(elements, provenance, block["phase"], tuple(block["notes"])))
    return steps


def compile_command(cfg: dict, out_path: str, verify_flag: bool) -> int:
    spec = build_spec(cfg)
    if spec.walk_kind not in ("ssqw", "generalized"):
        raise ConfigError("compile needs walk \"ssqw\" or \"generalized\"")
    if spec.steps < 1:
        raise ConfigError("compile needs at least one step")
    verify_flag = verify_flag or bool(cfg.get("verify", False))

    spec = spec.resolved()
    if spec.walk_kind == "ssqw":
        one = compiler.compile_ssqw(walk.coin_matrix(spec.theta1), walk.coin_matrix(spec.theta2))
        steps = [one] * spec.steps
    else:
        steps = compiler.compile_generalized(spec)

    reports = None
    if verify_flag:
        reference = walk.step_operator(spec)
        # identical blocks share one certification
        unique: dict[int, VerificationReport] = {}
        reports = []
        for cs in steps:
            key = id(cs)
            if key not in unique:
                unique[key] = compiler.verify(cs, reference)
            reports.append(unique[key])

    _write_json(out_path, parts_list_document(spec, steps, reports))
    if reports is not None and not all(r.passed for r in reports):
        worst = min(r.fidelity for r in reports)
        raise VerificationError(
            f"compiled train failed phase-equivalence (worst fidelity {worst:.12g}); "
            f"parts list with diagnostics written to {out_path}"
        )
    return EXIT_OK


# --- localize ---------------------------------------------------------------


def _sigma_history(traj) -> list[float]:
    return [walk.spread(walk.probability(s)) for s in traj]


def localize_command(cfg: dict, out_path: str, n_seeds: int) -> int:
    spec = build_spec(cfg)
    if spec.walk_kind != "generalized":
        raise ConfigError("localize needs walk \"generalized\"")
    if spec.steps < 1:
        raise ConfigError("localize needs at least one step")
    if n_seeds < 1:
        raise ConfigError("ensemble size must be >= 1")
    if spec.seed is None:
        raise ConfigError("localize needs a seed")

    seeds = [spec.seed + i for i in range(n_seeds)]
    per_seed = []
    for s in seeds:
        member = walk.WalkSpec(
            "generalized",
            spec.steps,
            spec.half_width,
            coin_state=spec.coin_state,
            start=spec.start,
            table1=spec.table1,
            table2=spec.table2,
            seed=s,
        )
        per_seed.append(_sigma_history(walk.evolve(member)))
    mean = np.mean(np.asarray(per_seed), axis=0).tolist()

    baseline_spec = walk.WalkSpec(
        "dtqw",
        spec.steps,
        spec.half_width,
        coin_state=spec.coin_state,
        start=spec.start,
        theta1=math.pi / 4,
    )
    ballistic = _sigma_history(walk.evolve(baseline_spec))

    _write_json(
        out_path,
        {
            "schema_version": SCHEMA_VERSION,
            "walk": spec.walk_kind,
            "steps": spec.steps,
            "half_width": spec.half_width,
            "ensemble": n_seeds,
            "seeds": seeds,
            "sigma_per_seed": per_seed,
            "sigma_ensemble_mean": mean,
            "sigma_ballistic": ballistic,
            "final_ratio": mean[-1] / ballistic[-1],
        },
    )
    return EXIT_OK


# --- entry point -------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="oamwalk", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="evolve a walk and write its distribution")
    p_run.add_argument("--config", required=True)
    p_run.add_argument("--out", required=True)

    p_compile = sub.add_parser("compile", help="emit the optical parts list")
    p_compile.add_argument("--config", required=True)
    p_compile.add_argument("--out", required=True)
    p_compile.add_argument("--verify", action="store_true", help="certify each step block")

    p_verify = sub.add_parser("verify", help="compile with verification forced on")
    p_verify.add_argument("--config", required=True)
    p_verify.add_argument("--out", required=True)

    p_loc = sub.add_parser("localize", help="disorder ensemble spread study")
    p_loc.add_argument("--config", required=True)
    p_loc.add_argument("--seeds", type=int, required=True, metavar="N")
    p_loc.add_argument("--out", required=True)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.command == "run":
            return run_command(cfg, args.out)
        if args.command == "compile":
            return compile_command(cfg, args.out, args.verify)
        if args.command == "verify":
            return compile_command(cfg, args.out, True)
        if args.command == "localize":
            return localize_command(cfg, args.out, args.seeds)
        raise AssertionError(f"unhandled command {args.command}")
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except walk.LatticeGuardError as err:
        msg = f"lattice guard violation: {err}"
        if err.required_half_width is not None:
            msg += f" (half_width >= {err.required_half_width} suffices)"
        print(msg, file=sys.stderr)
        return EXIT_GUARD
    except VerificationError as err:
        print(f"verification failure: {err}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
