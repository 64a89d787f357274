"""Command-line interface: experiments, pattern export, channel dumps.

Angles are given in degrees, frequencies in Hz with optional k/M/G
suffixes, delays in nanoseconds. Every command is deterministic for a
fixed configuration and seed.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import output
from .beams import mrc_weights, pattern_gain_db
from .channel import channel_from_json, channel_to_json, sample_channel
from .geometry import FieldOfView, make_ula
from .montecarlo import (ExperimentConfig, run_blockage_experiment,
                         run_effectiveness_sweep, run_snr_sweep, trial_rng)
from .theory import estimate_array_parameter


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    parser.add_argument("--trials", type=int, default=1000,
                        help="Monte Carlo trials for experiment commands (default 1000)")
    parser.add_argument("--output", default=None, metavar="PATH",
                        help="output file (default: standard output)")
    parser.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="output format (default csv)")
    parser.add_argument("--workers", type=int, default=1,
                        help="parallel worker processes; results are identical "
                             "for any worker count (default 1)")


def _add_array(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--elements", type=int, default=8,
                        help="number of array elements (default 8)")
    parser.add_argument("--spacing", type=float, default=0.5,
                        help="element spacing in wavelengths (default 0.5)")
    parser.add_argument("--fov-deg", type=float, default=180.0,
                        help="total field of view in degrees (default 180)")


def _add_channel(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--delay-max-ns", type=float, default=100.0,
                        help="maximum path delay in ns (default 100)")
    parser.add_argument("--bandwidth", default="1GHz",
                        help="averaging bandwidth, e.g. 1GHz or 500MHz (default 1GHz)")
    parser.add_argument("--freq-points", type=int, default=1024,
                        help="frequency grid points across the band (default 1024)")
    parser.add_argument("--sigma0", type=float, default=1.0,
                        help="per-antenna noise standard deviation (default 1)")


def _add_m_sweep(parser: argparse.ArgumentParser, default_max: int) -> None:
    parser.add_argument("--m-min", type=int, default=1,
                        help="smallest path count in the sweep (default 1)")
    parser.add_argument("--m-max", type=int, default=default_max,
                        help=f"largest path count in the sweep (default {default_max})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mrcbeam",
        description="Conjugate-combining beam analysis on antenna arrays: "
                    "geometry constants, path-effectiveness statistics, wideband "
                    "SNR sweeps, blockage robustness and beam-pattern export.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "array-param",
        help="estimate the array parameter (mean squared cross-beam gain)",
        description="Monte Carlo estimate of the array parameter: the expected "
                    "squared sub-beam gain between two random arrival directions. "
                    "CSV columns: n_elements, fov_deg, s, stderr, samples.")
    _add_common(p); _add_array(p)
    p.add_argument("--samples", type=int, default=100_000,
                   help="number of direction pairs (default 100000)")

    p = sub.add_parser(
        "ineffectiveness",
        help="probability that a path is drowned by cross-beam interference",
        description="Sweeps the path count and reports the closed-form and "
                    "simulated probability that a path's amplitude falls below "
                    "the aggregate cross-beam interference at its direction. "
                    "CSV columns: m, theory, empirical, stderr.")
    _add_common(p); _add_array(p); _add_channel(p); _add_m_sweep(p, 15)

    p = sub.add_parser(
        "effective-components",
        help="average number of paths the combining beam actually uses",
        description="Same sweep as 'ineffectiveness', reported as the count of "
                    "effective paths per trial. CSV columns: m, theory, "
                    "empirical, stderr.")
    _add_common(p); _add_array(p); _add_channel(p); _add_m_sweep(p, 15)

    p = sub.add_parser(
        "snr-sweep",
        help="band-averaged SNR vs. path count for both beam kinds",
        description="Simulates the band-averaged SNR of the combining beam and "
                    "of a single beam steered at the strongest path, next to "
                    "their closed-form predictions. CSV columns: m, "
                    "mrc_theory_db, mrc_sim_db, single_theory_db, single_sim_db.")
    _add_common(p); _add_array(p); _add_channel(p); _add_m_sweep(p, 20)

    p = sub.add_parser(
        "blockage-cdf",
        help="post-blockage SNR distribution for both beam kinds",
        description="Designs both beams on a full channel, removes one random "
                    "path, and records the SNR of the unchanged beams on what "
                    "remains. CSV columns: beam_kind, snr_db (one row per trial, "
                    "sorted per beam kind).")
    _add_common(p); _add_array(p); _add_channel(p)
    p.add_argument("--m-paths", type=int, default=20,
                   help="number of paths before the blockage (default 20)")

    p = sub.add_parser(
        "beam-pattern",
        help="gain grid of the combining beam for a stored channel",
        description="Loads a channel JSON file, builds the combining beam for "
                    "the configured array, and exports |gain|^2 in dB over "
                    "broadside-plane angles. CSV columns: theta_deg, gain_db.")
    _add_common(p); _add_array(p)
    p.add_argument("--channel-file", required=True, metavar="PATH",
                   help="channel JSON file, e.g. from dump-channel")
    p.add_argument("--grid-deg", type=float, default=0.5,
                   help="angular grid step in degrees (default 0.5)")

    p = sub.add_parser(
        "dump-channel",
        help="sample one random channel and write it as JSON",
        description="Samples a channel realization and writes the JSON record "
                    "{components: [{re, im, kx, ky, kz, delay_ns}]} consumed by "
                    "beam-pattern.")
    _add_common(p); _add_array(p)
    p.add_argument("--m-paths", type=int, default=4,
                   help="number of multipath components (default 4)")
    p.add_argument("--delay-max-ns", type=float, default=100.0,
                   help="maximum path delay in ns (default 100)")

    return parser


def parse_args(argv=None) -> argparse.Namespace:
    return build_parser().parse_args(argv)


def _experiment_config(args, m_values) -> ExperimentConfig:
    return ExperimentConfig(
        n_elements=args.elements,
        m_values=tuple(m_values),
        spacing_wavelengths=args.spacing,
        fov_deg=args.fov_deg,
        trials=args.trials,
        delay_max_ns=args.delay_max_ns,
        bandwidth_hz=output.parse_frequency(args.bandwidth),
        freq_points=args.freq_points,
        sigma0=args.sigma0,
        seed=args.seed,
        workers=args.workers,
    )


def _emit(args, command, cfg, results_json, header, rows) -> None:
    if args.format == "json":
        output.write_json(output.json_payload(command, cfg, results_json), args.output)
    else:
        output.write_csv(header, rows, args.output)


def _cmd_array_param(args) -> None:
    array = make_ula(args.elements, args.spacing)
    fov = FieldOfView.from_degrees(args.fov_deg)
    est = estimate_array_parameter(array, fov, args.samples, trial_rng(args.seed, ()))
    if args.format == "json":
        cfg_dict = {"n_elements": args.elements, "spacing_wavelengths": args.spacing,
                    "fov_deg": args.fov_deg, "samples": args.samples, "seed": args.seed}
        payload = {
            "command": "array-param",
            "config": cfg_dict,
            "results": {"s": est.s, "stderr": est.stderr, "samples": est.samples},
            "run": output.run_metadata("array-param", cfg_dict),
        }
        output.write_json(payload, args.output)
    else:
        output.write_csv(["n_elements", "fov_deg", "s", "stderr", "samples"],
                         [(args.elements, args.fov_deg, est.s, est.stderr, est.samples)],
                         args.output)


def _cmd_effectiveness(args, quantity: str) -> None:
    cfg = _experiment_config(args, range(args.m_min, args.m_max + 1))
    result = run_effectiveness_sweep(cfg)
    _emit(args, quantity, cfg, output.sweep_columns_json(result),
          ["m", "theory", "empirical", "stderr"],
          output.effectiveness_rows(result, quantity))


def _cmd_snr_sweep(args) -> None:
    cfg = _experiment_config(args, range(args.m_min, args.m_max + 1))
    result = run_snr_sweep(cfg)
    _emit(args, "snr-sweep", cfg, output.sweep_columns_json(result),
          ["m", "mrc_theory_db", "mrc_sim_db", "single_theory_db", "single_sim_db"],
          output.snr_rows(result))


def _cmd_blockage(args) -> None:
    cfg = _experiment_config(args, (args.m_paths,))
    result = run_blockage_experiment(cfg)
    _emit(args, "blockage-cdf", cfg, output.sweep_columns_json(result),
          ["beam_kind", "snr_db"], output.blockage_rows(result))


def _cmd_beam_pattern(args) -> None:
    with open(args.channel_file) as fh:
        channel = channel_from_json(json.load(fh))
    array = make_ula(args.elements, args.spacing)
    weights = mrc_weights(channel, array)
    if not args.grid_deg > 0:
        raise ValueError("--grid-deg must be positive")
    thetas = np.arange(-90.0, 90.0 + args.grid_deg / 2, args.grid_deg)
    gains = pattern_gain_db(weights, array, thetas)
    rows = list(zip((float(t) for t in thetas), (float(g) for g in gains)))
    if args.format == "json":
        cfg_dict = {"n_elements": args.elements, "spacing_wavelengths": args.spacing,
                    "channel_file": args.channel_file, "grid_deg": args.grid_deg}
        payload = {
            "command": "beam-pattern",
            "config": cfg_dict,
            "results": {"theta_deg": [r[0] for r in rows],
                        "gain_db": [r[1] for r in rows]},
            "run": output.run_metadata("beam-pattern", cfg_dict),
        }
        output.write_json(payload, args.output)
    else:
        output.write_csv(["theta_deg", "gain_db"], rows, args.output)


def _cmd_dump_channel(args) -> None:
    fov = FieldOfView.from_degrees(args.fov_deg)
    channel = sample_channel(args.m_paths, fov, args.delay_max_ns * 1e-9,
                             trial_rng(args.seed, ()))
    output.write_json(channel_to_json(channel), args.output)


def main(argv=None) -> int:
    args = parse_args(argv)
    try:
        if args.command == "array-param":
            _cmd_array_param(args)
        elif args.command in ("ineffectiveness", "effective-components"):
            _cmd_effectiveness(args, args.command)
        elif args.command == "snr-sweep":
            _cmd_snr_sweep(args)
        elif args.command == "blockage-cdf":
            _cmd_blockage(args)
        elif args.command == "beam-pattern":
            _cmd_beam_pattern(args)
        elif args.command == "dump-channel":
            _cmd_dump_channel(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"mrcbeam: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
