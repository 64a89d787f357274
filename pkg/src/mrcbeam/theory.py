"""Closed-form predictions driven by a single geometry constant.

The array parameter s is the expected squared sub-beam gain between two
independent random arrival directions. Everything else is algebra in s:
the probability that a path is drowned out by cross-beam interference,
the usable path count, and band-averaged SNR for the combining beam and
for a beam steered at the strongest path only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import AntennaArray, FieldOfView, phase_matrix

EULER_GAMMA = float(np.euler_gamma)

_ESTIMATE_CHUNK = 1 << 15


@dataclass(frozen=True)
class ArrayParameterEstimate:
    """Monte Carlo estimate of the array parameter with its standard error."""

    s: float
    samples: int
    stderr: float


def estimate_array_parameter(array: AntennaArray, fov: FieldOfView, samples: int,
                             rng: np.random.Generator) -> ArrayParameterEstimate:
    """Estimate s = E[|pair gain|^2] over independent direction pairs.

    Draws ``samples`` pairs from the field of view and averages the squared
    cross-beam gain. Work proceeds in fixed-size chunks accumulated in
    order, so results do not depend on how the call is scheduled.

    Parameters
    ----------
    array : AntennaArray
    fov : FieldOfView
    samples : number of direction pairs, >= 1
    rng : per-caller random stream

    Returns
    -------
    ArrayParameterEstimate with the mean, sample count and standard error.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    total = 0.0
    total_sq = 0.0
    done = 0
    while done < samples:
        count = min(_ESTIMATE_CHUNK, samples - done)
        theta = fov.sample_angles(rng, 2 * count)
        vecs = fov.direction_at(theta)
        s_all = np.exp(1j * phase_matrix(array, vecs))           # (N, 2*count)
        probe, other = s_all[:, :count], s_all[:, count:]
        gain = np.abs(np.sum(np.conj(other) * probe, axis=0)) ** 2 / array.n_elements ** 2
        total += float(np.sum(gain))
        total_sq += float(np.sum(gain ** 2))
        done += count
    mean = total / samples
    if samples > 1:
        var = max(total_sq - samples * mean ** 2, 0.0) / (samples - 1)
        stderr = math.sqrt(var / samples)
    else:
        stderr = math.inf
    return ArrayParameterEstimate(mean, samples, stderr)


def conditional_ineffectiveness(z: float, m_paths: int, s: float) -> float:
    """Probability a path of amplitude ``z`` is drowned by interference.

    Under the Gaussian approximation of the aggregate cross-beam term,
    this is exp(-z^2 / ((M-1) s)); identically 0 for a single path.
    """
    if z < 0:
        raise ValueError(f"amplitude must be >= 0, got {z}")
    if m_paths < 1:
        raise ValueError(f"m_paths must be >= 1, got {m_paths}")
    if m_paths == 1:
        return 0.0
    scale = (m_paths - 1) * s
    if scale == 0.0:
        return 1.0 if z == 0.0 else 0.0
    return float(np.exp(-z * z / scale))


def ineffectiveness_probability(m_paths: int, s: float) -> float:
    """Probability a random path is ineffective: (M-1)s / (1 + (M-1)s)."""
    if m_paths < 1:
        raise ValueError(f"m_paths must be >= 1, got {m_paths}")
    if s < 0:
        raise ValueError(f"array parameter must be >= 0, got {s}")
    x = (m_paths - 1) * s
    return x / (1.0 + x)


def effective_count(m_paths: int, s: float) -> float:
    """Expected number of effective paths: M / (1 + (M-1)s), in [1, M]."""
    if m_paths < 1:
        raise ValueError(f"m_paths must be >= 1, got {m_paths}")
    if s < 0:
        raise ValueError(f"array parameter must be >= 0, got {s}")
    return m_paths / (1.0 + (m_paths - 1) * s)


def snr_mrc_theory(n_elements: int, m_paths: int, s: float, sigma0: float) -> float:
    """Band-averaged SNR (linear) of the combining beam.

    Ratio of expected signal power to expected noise power:
    (N / sigma0^2) * (2 + (M-1) s). Known to read 3 dB high at M = 1,
    where the true narrowband gain is N.
    """
    _check_snr_args(n_elements, m_paths, sigma0)
    return (n_elements / sigma0 ** 2) * (2.0 + (m_paths - 1) * s)


def snr_single_theory(n_elements: int, m_paths: int, s: float, sigma0: float,
                      harmonic_mode: str = "asymptotic") -> float:
    """Band-averaged SNR (linear) of a beam steered at the strongest path.

    The strongest of M unit-mean exponential path powers has mean H_M;
    ``harmonic_mode`` selects the asymptotic form ln(M) + gamma
    ("asymptotic", the default) or the exact harmonic number ("exact").
    """
    _check_snr_args(n_elements, m_paths, sigma0)
    if harmonic_mode == "asymptotic":
        peak = math.log(m_paths) + EULER_GAMMA
    elif harmonic_mode == "exact":
        peak = harmonic_number(m_paths)
    else:
        raise ValueError(f"harmonic_mode must be 'asymptotic' or 'exact', got {harmonic_mode!r}")
    return (n_elements / sigma0 ** 2) * (peak + (m_paths - 1) * s)


def snr_ratio_theory(m_paths: int, s: float) -> float:
    """Single-beam to combining-beam SNR ratio; tends to 1 as M grows.

    (ln M + gamma + (M-1)s) / (2 + (M-1)s), independent of array size
    and noise level.
    """
    if m_paths < 1:
        raise ValueError(f"m_paths must be >= 1, got {m_paths}")
    x = (m_paths - 1) * s
    return (math.log(m_paths) + EULER_GAMMA + x) / (2.0 + x)


def harmonic_number(m: int) -> float:
    """H_m = sum_{k=1}^{m} 1/k."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    return float(np.sum(1.0 / np.arange(1, m + 1)))


def to_db(linear: float) -> float:
    """Linear power ratio to decibels."""
    return float(10.0 * np.log10(linear))


def _check_snr_args(n_elements: int, m_paths: int, sigma0: float) -> None:
    if n_elements < 1:
        raise ValueError(f"n_elements must be >= 1, got {n_elements}")
    if m_paths < 1:
        raise ValueError(f"m_paths must be >= 1, got {m_paths}")
    if not sigma0 > 0:
        raise ValueError(f"sigma0 must be positive, got {sigma0}")
