"""Command-line front end: scenario files in, CSV maps / CDFs / manifest out.

Subcommands:
    plane   path gain on a horizontal cutting plane through the room
    disc    path gain on a focal disc around the target device
    cdf     per-strategy CDFs over the focal disc plus a fading-margin report

Exit codes: 0 success, 2 invalid configuration or arguments, 3 I/O
failure, 4 numerical failure during simulation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import replace
from pathlib import Path

import numpy as np

from .config import (
    ConfigError,
    ScenarioConfig,
    build_scenario,
    load_config,
)
from .artifacts import (
    RunManifest,
    write_cdf_csv,
    write_manifest,
    write_map_csv,
    write_margin_json,
)
from .evaluation import (
    beam_diversity_maps,
    empirical_cdf,
    fading_margin,
    max_over_realizations,
    pg_map_disc,
    pg_map_plane,
)
from .scenario import strategy_weights
from .stochastic import load_scatterer_field, save_scatterer_field

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_NUMERIC = 4

PLANE_PRECODERS = ("mrt-full", "mrt-smc", "los-only-mrt")
DISC_STRATEGIES = ("mrt-full", "mrt-smc", "beam-diversity")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, default=None, help="scenario JSON (defaults: reference scenario)")
    parser.add_argument("--seed", type=int, default=None, help="override the master seed")
    parser.add_argument("--scatter-index", type=int, default=0, help="scatterer realization index")
    parser.add_argument("--scatter-file", type=Path, default=None, help="replay a saved scatterer field")
    parser.add_argument("--save-scatter", type=Path, default=None, help="save the drawn scatterer field")
    parser.add_argument("--spacing-wavelength-frac", type=float, default=0.125, help="grid spacing as a fraction of the wavelength")
    parser.add_argument("--threads", type=int, default=1, help="worker threads for grid evaluation")
    parser.add_argument("--out", type=Path, required=True, help="output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wptsim", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_plane = sub.add_parser("plane", help="path-gain map on a cutting plane")
    _add_common(p_plane)
    p_plane.add_argument("--precoder", choices=PLANE_PRECODERS, default="mrt-full")
    p_plane.add_argument("--z", type=float, default=None, help="plane height (default: target height)")
    p_plane.add_argument("--x-min", type=float, default=None)
    p_plane.add_argument("--x-max", type=float, default=None)
    p_plane.add_argument("--y-min", type=float, default=None)
    p_plane.add_argument("--y-max", type=float, default=None)

    p_disc = sub.add_parser("disc", help="path-gain map on the focal disc")
    _add_common(p_disc)
    p_disc.add_argument("--precoder", choices=DISC_STRATEGIES, default="beam-diversity", help="precoding strategy")
    p_disc.add_argument("--n-realizations", type=int, default=1, help="beam-phase realizations (beam diversity)")
    p_disc.add_argument("--diameter", type=float, default=None, help="disc diameter in meters (default: beamwidth heuristic)")
    p_disc.add_argument("--keep-realizations", action="store_true", help="also write one map per realization")

    p_cdf = sub.add_parser("cdf", help="strategy CDFs on the focal disc and fading margins")
    _add_common(p_cdf)
    p_cdf.add_argument("--precoder", default="beam-diversity", help="comma-separated strategies (reference mrt-full always included)")
    p_cdf.add_argument("--n-realizations", default="1,2,4,8,16", help="comma-separated realization counts for beam diversity")
    p_cdf.add_argument("--outage", type=float, default=0.01, help="outage probability for the margin report")
    p_cdf.add_argument("--diameter", type=float, default=None)

    return parser


def _resolve_config(args: argparse.Namespace) -> ScenarioConfig:
    config = load_config(args.config) if args.config is not None else ScenarioConfig()
    if args.seed is not None:
        config = replace(config, master_seed=int(args.seed))
    config.validate()
    if args.spacing_wavelength_frac <= 0.0:
        raise ConfigError("--spacing-wavelength-frac must be positive")
    if args.threads < 1:
        raise ConfigError("--threads must be at least 1")
    return config


def _prepare_scenario(config: ScenarioConfig, args: argparse.Namespace):
    field = load_scatterer_field(args.scatter_file) if args.scatter_file is not None else None
    scenario = build_scenario(config, scatter_index=args.scatter_index, scatter_field=field)
    if args.save_scatter is not None:
        save_scatterer_field(args.save_scatter, scenario.field)
    return scenario


def _derived(config: ScenarioConfig, scenario, extra: dict | None = None) -> dict:
    semi = np.prod(config.scatter.semi_axes_m)
    out = {
        "wavelength_m": config.wavelength_m,
        "num_elements": config.num_elements,
        "image_source_count": scenario.num_sources,
        "plane_names": scenario.notes.get("plane_names", []),
        "dropped_planes": scenario.notes.get("dropped_planes", []),
        "ellipsoid_volume_m3": float(4.0 / 3.0 * np.pi * semi),
        "scatterer_density_per_m3": config.scatter.density_per_m3,
        "realized_scatterers": scenario.field.count,
    }
    out.update(extra or {})
    return out


def _write_run(out_dir: Path, command: str, argv: list, config: ScenarioConfig,
               scenario, extra_derived: dict, seeds: dict, writers: list,
               started: float) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    outputs = []
    for name, writer in writers:
        writer(out_dir / name)
        outputs.append(name)
    manifest = RunManifest(
        command=command,
        argv=[str(a) for a in argv],
        config=config.to_dict(),
        derived=_derived(config, scenario, extra_derived),
        seeds=seeds,
        outputs=outputs,
        timing={
            "started_unix": started,
            "duration_s": time.time() - started,
        },
    )
    write_manifest(out_dir / "manifest.json", manifest)


def _cmd_plane(args: argparse.Namespace, argv: list) -> int:
    started = time.time()
    config = _resolve_config(args)
    scenario = _prepare_scenario(config, args)
    target = np.asarray(config.target_m, dtype=float)
    spacing = args.spacing_wavelength_frac * config.wavelength_m
    z_height = args.z if args.z is not None else float(target[2])
    x_extent = (
        args.x_min if args.x_min is not None else config.room.x_extent_m[0],
        args.x_max if args.x_max is not None else config.room.x_extent_m[1],
    )
    y_extent = (
        args.y_min if args.y_min is not None else config.room.y_extent_m[0],
        args.y_max if args.y_max is not None else config.room.y_extent_m[1],
    )
    weights = strategy_weights(scenario, args.precoder, target, config.master_seed)
    pg_map = pg_map_plane(
        scenario,
        weights,
        z_height,
        x_extent,
        y_extent,
        spacing,
        metadata={"precoder": args.precoder, "master_seed": config.master_seed},
        threads=args.threads,
    )
    seeds = {"master_seed": config.master_seed, "scatter_index": args.scatter_index}
    extra = {"grid": pg_map.domain, "flagged_points": int(pg_map.flags.sum()), "precoder": args.precoder}
    _write_run(args.out, "plane", argv, config, scenario, extra, seeds,
               [("map_plane.csv", lambda p, m=pg_map: write_map_csv(p, m))], started)
    return EXIT_OK


def _cmd_disc(args: argparse.Namespace, argv: list) -> int:
    started = time.time()
    config = _resolve_config(args)
    if args.precoder == "beam-diversity" and args.n_realizations < 1:
        raise ConfigError("--n-realizations must be at least 1")
    scenario = _prepare_scenario(config, args)
    target = np.asarray(config.target_m, dtype=float)
    spacing = args.spacing_wavelength_frac * config.wavelength_m
    diameter = args.diameter if args.diameter is not None else config.default_disc_diameter_m()
    writers = []
    phase_indices: list[int] = []
    if args.precoder == "beam-diversity":
        maps = beam_diversity_maps(
            scenario, target, target, diameter, spacing,
            args.n_realizations, config.master_seed, threads=args.threads,
        )
        phase_indices = list(range(args.n_realizations))
        final = max_over_realizations(maps) if len(maps) > 1 else maps[0]
        if args.keep_realizations:
            for r, m in enumerate(maps):
                writers.append((f"map_disc_r{r:03d}.csv", lambda p, mm=m: write_map_csv(p, mm)))
    else:
        weights = strategy_weights(scenario, args.precoder, target, config.master_seed)
        final = pg_map_disc(
            scenario, weights, target, diameter, spacing,
            metadata={"precoder": args.precoder, "master_seed": config.master_seed},
            threads=args.threads,
        )
    writers.append(("map_disc.csv", lambda p, m=final: write_map_csv(p, m)))
    seeds = {
        "master_seed": config.master_seed,
        "scatter_index": args.scatter_index,
        "beam_phase_indices": phase_indices,
    }
    extra = {
        "grid": final.domain,
        "flagged_points": int(final.flags.sum()),
        "precoder": args.precoder,
        "n_realizations": args.n_realizations if args.precoder == "beam-diversity" else 1,
        "disc_diameter_m": diameter,
    }
    _write_run(args.out, "disc", argv, config, scenario, extra, seeds, writers, started)
    return EXIT_OK


def _parse_strategies(raw: str) -> list[str]:
    names = [s.strip() for s in raw.split(",") if s.strip()]
    if not names:
        raise ConfigError("need at least one strategy")
    for name in names:
        if name not in DISC_STRATEGIES:
            raise ConfigError(f"unknown strategy {name!r}; expected one of {DISC_STRATEGIES}")
    return names


def _parse_counts(raw: str) -> list[int]:
    try:
        counts = [int(s) for s in raw.split(",") if s.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad realization list {raw!r}") from exc
    if not counts or any(n < 1 for n in counts):
        raise ConfigError("realization counts must be positive")
    return sorted(set(counts))


def _cmd_cdf(args: argparse.Namespace, argv: list) -> int:
    started = time.time()
    config = _resolve_config(args)
    strategies = _parse_strategies(args.precoder)
    counts = _parse_counts(args.n_realizations)
    if not (0.0 < args.outage < 1.0):
        raise ConfigError("--outage must lie strictly between 0 and 1")
    scenario = _prepare_scenario(config, args)
    target = np.asarray(config.target_m, dtype=float)
    spacing = args.spacing_wavelength_frac * config.wavelength_m
    diameter = args.diameter if args.diameter is not None else config.default_disc_diameter_m()

    cdfs: dict = {}
    labels = []
    for name in dict.fromkeys(["mrt-full", *strategies]):
        if name == "beam-diversity":
            maps = beam_diversity_maps(
                scenario, target, target, diameter, spacing,
                max(counts), config.master_seed, threads=args.threads,
            )
            for n in counts:
                label = f"beam-diversity-nr{n}"
                cdfs[label] = empirical_cdf(max_over_realizations(maps[:n]))
                labels.append(label)
        else:
            weights = strategy_weights(scenario, name, target, config.master_seed)
            pg_map = pg_map_disc(
                scenario, weights, target, diameter, spacing,
                metadata={"precoder": name}, threads=args.threads,
            )
            cdfs[name] = empirical_cdf(pg_map)
            labels.append(name)
    report = fading_margin(cdfs, args.outage, reference="mrt-full")

    writers = [(f"cdf_{label}.csv", lambda p, c=cdfs[label]: write_cdf_csv(p, c)) for label in labels]
    writers.append(("margin.json", lambda p, r=report: write_margin_json(p, r)))
    seeds = {
        "master_seed": config.master_seed,
        "scatter_index": args.scatter_index,
        "beam_phase_indices": list(range(max(counts))) if "beam-diversity" in strategies else [],
    }
    extra = {
        "strategies": labels,
        "outage": args.outage,
        "disc_diameter_m": diameter,
        "spacing_m": spacing,
    }
    _write_run(args.out, "cdf", argv, config, scenario, extra, seeds, writers, started)
    return EXIT_OK


def main(argv: list | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"plane": _cmd_plane, "disc": _cmd_disc, "cdf": _cmd_cdf}[args.command]
    try:
        return handler(args, argv)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, ArithmeticError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
