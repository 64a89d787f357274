"""Seeded, optionally parallel Monte Carlo experiments.

Every trial owns an independent random stream derived from the experiment
seed, so results are bit-identical for any worker count: workers only
decide which process evaluates a trial, never what the trial draws, and
aggregation always runs in trial order.
"""

from __future__ import annotations

import functools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .beams import (BeamWeights, combined_response, mrc_weights, noise_power,
                    pair_gain_matrix, single_direction_weights, strongest_component)
from .channel import ChannelRealization, remove_component, sample_channel
from .geometry import AntennaArray, FieldOfView, make_ula
from .theory import (effective_count, estimate_array_parameter,
                     ineffectiveness_probability, snr_mrc_theory,
                     snr_single_theory, to_db)

ARRAY_PARAM_SAMPLES = 100_000
_TRIAL_BLOCK = 256


@dataclass(frozen=True)
class ExperimentConfig:
    """All knobs of a reproducible experiment."""

    n_elements: int
    m_values: tuple[int, ...]
    spacing_wavelengths: float = 0.5
    fov_deg: float = 180.0
    trials: int = 1000
    delay_max_ns: float = 100.0
    bandwidth_hz: float = 1e9
    freq_points: int = 1024
    sigma0: float = 1.0
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "m_values", tuple(int(m) for m in self.m_values))
        if self.n_elements < 1:
            raise ValueError("n_elements must be >= 1")
        if not self.m_values or any(m < 1 for m in self.m_values):
            raise ValueError("m_values must be a non-empty list of positive integers")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.freq_points < 2:
            raise ValueError("freq_points must be >= 2")
        if not self.bandwidth_hz > 0:
            raise ValueError("bandwidth must be positive")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    def array(self) -> AntennaArray:
        return make_ula(self.n_elements, self.spacing_wavelengths)

    def fov(self) -> FieldOfView:
        return FieldOfView.from_degrees(self.fov_deg)

    @property
    def delay_max_s(self) -> float:
        return self.delay_max_ns * 1e-9


@dataclass(frozen=True)
class SweepResult:
    """Aggregated experiment output.

    ``columns`` holds per-m aggregate values aligned with ``m_values``;
    ``samples`` holds the full sorted per-trial SNR lists (dB) per beam
    kind for distribution experiments, empty otherwise.
    """

    m_values: tuple[int, ...]
    trials: int
    columns: dict[str, tuple[float, ...]]
    samples: dict[str, tuple[float, ...]] = field(default_factory=dict)

    def __post_init__(self):
        for name, vals in self.columns.items():
            if len(vals) != len(self.m_values):
                raise ValueError(f"column {name!r} length does not match m_values")
        for name, vals in self.samples.items():
            if len(vals) != self.trials:
                raise ValueError(f"sample list {name!r} must hold one value per trial")
            if any(b < a for a, b in zip(vals, vals[1:])):
                raise ValueError(f"sample list {name!r} must be sorted nondecreasing")


def trial_rng(seed: int, trial_index) -> np.random.Generator:
    """Independent random stream for one unit of work.

    ``trial_index`` is an integer or a tuple of non-negative integers
    naming the work item; the same (seed, index) always reproduces the
    same draws, distinct indices give independent streams.
    """
    if isinstance(trial_index, (int, np.integer)):
        trial_index = (int(trial_index),)
    return np.random.default_rng([seed % (1 << 64), *map(int, trial_index)])


def band_average_gain(weights: BeamWeights, channel: ChannelRealization,
                      array: AntennaArray, bandwidth: float, freq_points: int) -> float:
    """Mean of |beam output|^2 over a uniform frequency grid spanning the band.

    The grid is ``freq_points`` frequencies on [-bandwidth/2, +bandwidth/2];
    zero bandwidth degenerates to the center-frequency power.
    """
    if freq_points < 1:
        raise ValueError("freq_points must be >= 1")
    freqs = np.linspace(-bandwidth / 2.0, bandwidth / 2.0, freq_points)
    response = combined_response(weights, channel, array, freqs)
    return float(np.mean(np.abs(response) ** 2))


def _effectiveness_block(cfg: ExperimentConfig, block) -> tuple[np.ndarray, np.ndarray]:
    """Per-trial (ineffective fraction, effective count) for one trial range."""
    m, lo, hi = block
    array, fov = cfg.array(), cfg.fov()
    fracs = np.empty(hi - lo)
    counts = np.empty(hi - lo)
    for t in range(lo, hi):
        rng = trial_rng(cfg.seed, (m, t))
        channel = sample_channel(m, fov, cfg.delay_max_s, rng)
        g = pair_gain_matrix(array, channel.direction_matrix())
        conj_a = np.conj(channel.amplitudes())
        interference = np.abs(conj_a @ g - conj_a)
        ineffective = np.abs(conj_a) < interference
        fracs[t - lo] = ineffective.mean()
        counts[t - lo] = m - ineffective.sum()
    return fracs, counts


def _snr_block(cfg: ExperimentConfig, block) -> tuple[np.ndarray, np.ndarray]:
    """Per-trial linear SNR (combining beam, single beam) for one trial range."""
    m, lo, hi = block
    array, fov = cfg.array(), cfg.fov()
    mrc_lin = np.empty(hi - lo)
    single_lin = np.empty(hi - lo)
    for t in range(lo, hi):
        rng = trial_rng(cfg.seed, (m, t))
        channel = sample_channel(m, fov, cfg.delay_max_s, rng)
        w_mrc = mrc_weights(channel, array)
        w_single = single_direction_weights(
            array, channel.components[strongest_component(channel)].direction)
        for w, out in ((w_mrc, mrc_lin), (w_single, single_lin)):
            gain = band_average_gain(w, channel, array, cfg.bandwidth_hz, cfg.freq_points)
            out[t - lo] = gain / noise_power(w, cfg.sigma0)
    return mrc_lin, single_lin


def _blockage_block(cfg: ExperimentConfig, block) -> tuple[np.ndarray, np.ndarray]:
    """Per-trial post-blockage SNR in dB (combining beam, single beam).

    Beams are designed on the full channel, then one uniformly chosen
    component is removed and the unchanged beams are applied to the rest.
    The blocked index is drawn after the channel, from the same stream.
    """
    m, lo, hi = block
    array, fov = cfg.array(), cfg.fov()
    mrc_db = np.empty(hi - lo)
    single_db = np.empty(hi - lo)
    for t in range(lo, hi):
        rng = trial_rng(cfg.seed, (m, t))
        channel = sample_channel(m, fov, cfg.delay_max_s, rng)
        w_mrc = mrc_weights(channel, array)
        w_single = single_direction_weights(
            array, channel.components[strongest_component(channel)].direction)
        blocked = remove_component(channel, int(rng.integers(m)))
        for w, out in ((w_mrc, mrc_db), (w_single, single_db)):
            gain = band_average_gain(w, blocked, array, cfg.bandwidth_hz, cfg.freq_points)
            out[t - lo] = to_db(gain / noise_power(w, cfg.sigma0))
    return mrc_db, single_db


def _run_blocks(worker, cfg: ExperimentConfig, m_values) -> dict[int, list]:
    """Evaluate fixed trial blocks for every m, serially or on a process pool."""
    blocks = [(m, lo, min(lo + _TRIAL_BLOCK, cfg.trials))
              for m in m_values for lo in range(0, cfg.trials, _TRIAL_BLOCK)]
    fn = functools.partial(worker, cfg)
    if cfg.workers == 1:
        outputs = [fn(b) for b in blocks]
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            outputs = list(pool.map(fn, blocks))
    grouped: dict[int, list] = {m: [] for m in m_values}
    for block, out in zip(blocks, outputs):
        grouped[block[0]].append(out)
    return grouped


def _mean_stderr(values: np.ndarray) -> tuple[float, float]:
    mean = float(values.mean())
    if values.size > 1:
        return mean, float(values.std(ddof=1) / np.sqrt(values.size))
    return mean, float("inf")


def run_effectiveness_sweep(cfg: ExperimentConfig) -> SweepResult:
    """Ineffective-path probability and usable path count versus M.

    Empirical values average over every (trial, path) pair; the theory
    columns use an array parameter estimated from the configured seed.
    """
    s = _array_parameter(cfg).s
    grouped = _run_blocks(_effectiveness_block, cfg, cfg.m_values)
    cols: dict[str, list[float]] = {name: [] for name in (
        "p_ineff_theory", "p_ineff_empirical", "p_ineff_stderr",
        "count_theory", "count_mean", "count_stderr", "count_median")}
    for m in cfg.m_values:
        fracs = np.concatenate([out[0] for out in grouped[m]])
        counts = np.concatenate([out[1] for out in grouped[m]])
        p_mean, p_err = _mean_stderr(fracs)
        c_mean, c_err = _mean_stderr(counts)
        cols["p_ineff_theory"].append(ineffectiveness_probability(m, s))
        cols["p_ineff_empirical"].append(p_mean)
        cols["p_ineff_stderr"].append(p_err)
        cols["count_theory"].append(effective_count(m, s))
        cols["count_mean"].append(c_mean)
        cols["count_stderr"].append(c_err)
        cols["count_median"].append(float(np.median(counts)))
    return SweepResult(cfg.m_values, cfg.trials,
                       {k: tuple(v) for k, v in cols.items()})


def run_snr_sweep(cfg: ExperimentConfig) -> SweepResult:
    """Band-averaged SNR versus M for both beam kinds, simulated and predicted.

    Per-trial linear SNRs are averaged in linear scale, then converted
    to dB; averaging per-trial dB values would bias the result low.
    """
    s = _array_parameter(cfg).s
    grouped = _run_blocks(_snr_block, cfg, cfg.m_values)
    cols: dict[str, list[float]] = {name: [] for name in (
        "mrc_theory_db", "mrc_sim_db", "mrc_sim_stderr_db",
        "single_theory_db", "single_sim_db", "single_sim_stderr_db")}
    for m in cfg.m_values:
        mrc_lin = np.concatenate([out[0] for out in grouped[m]])
        single_lin = np.concatenate([out[1] for out in grouped[m]])
        for prefix, lin, theory in (
                ("mrc", mrc_lin, snr_mrc_theory(cfg.n_elements, m, s, cfg.sigma0)),
                ("single", single_lin, snr_single_theory(cfg.n_elements, m, s, cfg.sigma0))):
            mean, err = _mean_stderr(lin)
            cols[f"{prefix}_theory_db"].append(to_db(theory))
            cols[f"{prefix}_sim_db"].append(to_db(mean))
            # delta-method conversion of the linear-scale standard error
            cols[f"{prefix}_sim_stderr_db"].append(float(10.0 / np.log(10.0) * err / mean))
    return SweepResult(cfg.m_values, cfg.trials,
                       {k: tuple(v) for k, v in cols.items()})


def run_blockage_experiment(cfg: ExperimentConfig) -> SweepResult:
    """Post-blockage SNR distribution for beams designed before the blockage.

    Requires a single entry in ``m_values`` with at least two paths, so a
    component can be removed. Returns the full sorted per-trial SNR lists
    in dB under the ``samples`` keys "mrc" and "single".
    """
    if len(cfg.m_values) != 1:
        raise ValueError("blockage experiment expects exactly one m value")
    m = cfg.m_values[0]
    if m < 2:
        raise ValueError("blockage experiment needs at least two paths")
    grouped = _run_blocks(_blockage_block, cfg, (m,))
    mrc_db = np.concatenate([out[0] for out in grouped[m]])
    single_db = np.concatenate([out[1] for out in grouped[m]])
    mrc_mean, mrc_err = _mean_stderr(mrc_db)
    single_mean, single_err = _mean_stderr(single_db)
    cols = {
        "mrc_mean_db": (mrc_mean,), "mrc_stderr_db": (mrc_err,),
        "single_mean_db": (single_mean,), "single_stderr_db": (single_err,),
    }
    samples = {
        "mrc": tuple(float(x) for x in np.sort(mrc_db)),
        "single": tuple(float(x) for x in np.sort(single_db)),
    }
    return SweepResult((m,), cfg.trials, cols, samples)


def _array_parameter(cfg: ExperimentConfig):
    """Deterministic array-parameter estimate tied to the experiment seed."""
    return estimate_array_parameter(cfg.array(), cfg.fov(), ARRAY_PARAM_SAMPLES,
                                    trial_rng(cfg.seed, ()))
