"""Beam weights, array factors, per-path decomposition and path effectiveness.

The conjugate-combining beam weights each element by the conjugate of its
center-frequency channel coefficient. Over a plane-wave channel that beam
splits into one sub-beam per path, which is what the decomposition and the
effectiveness classification below make explicit.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .channel import ChannelRealization, per_antenna_response
from .geometry import AntennaArray, Direction, phase_matrix, steering_vector


class BeamKind(enum.Enum):
    MRC = "mrc"
    SINGLE_DIRECTION = "single"


@dataclass(frozen=True)
class BeamWeights:
    """One complex coefficient per element. Deliberately not unit-normalized;
    every SNR divides by `noise_power`, so overall scale cancels."""

    coefficients: np.ndarray
    kind: BeamKind

    def __post_init__(self):
        coeffs = np.asarray(self.coefficients, dtype=complex)
        if coeffs.ndim != 1 or coeffs.size < 1:
            raise ValueError("coefficients must be a non-empty 1-D complex vector")
        object.__setattr__(self, "coefficients", coeffs)


@dataclass(frozen=True)
class DecompositionTerm:
    """One path's contribution to the array factor at the probe direction."""

    component: int
    weight: complex          # conjugated path amplitude
    pattern_gain: complex    # sub-beam array factor at the probe


@dataclass(frozen=True)
class Decomposition:
    """Array factor split into per-path terms; their sum is the full factor."""

    terms: tuple[DecompositionTerm, ...]
    probe: Direction

    def total(self) -> complex:
        return sum((t.weight * t.pattern_gain for t in self.terms), 0j)


@dataclass(frozen=True)
class EffectivenessReport:
    """Per-path amplitude vs. aggregate cross-beam interference at its direction.

    A path is effective when its amplitude is at least as large as the
    interference magnitude (ties count as effective).
    """

    amplitudes: np.ndarray
    interference: np.ndarray
    effective: np.ndarray

    @property
    def n_effective(self) -> int:
        return int(np.count_nonzero(self.effective))

    @property
    def fraction_ineffective(self) -> float:
        return 1.0 - self.n_effective / self.effective.size


def mrc_weights(channel: ChannelRealization, array: AntennaArray) -> BeamWeights:
    """Conjugate-combining weights designed at f = 0: conj(H_n(0)) / N."""
    h0 = per_antenna_response(channel, array, 0.0)
    return BeamWeights(np.conj(h0) / array.n_elements, BeamKind.MRC)


def single_direction_weights(array: AntennaArray, k: Direction) -> BeamWeights:
    """Conjugate-steering weights toward one direction: e^{-j phase} / N."""
    return BeamWeights(np.conj(steering_vector(array, k)) / array.n_elements,
                       BeamKind.SINGLE_DIRECTION)


def strongest_component(channel: ChannelRealization) -> int:
    """Index of the largest-amplitude path; ties go to the lowest index."""
    return int(np.argmax(np.abs(channel.amplitudes())))


def array_factor(weights: BeamWeights, array: AntennaArray, r: Direction) -> complex:
    """Complex gain of the weighted array toward probe direction ``r``."""
    if weights.coefficients.size != array.n_elements:
        raise ValueError(
            f"weight length {weights.coefficients.size} does not match "
            f"{array.n_elements} elements")
    return complex(weights.coefficients @ steering_vector(array, r))


def component_array_factor(array: AntennaArray, k_m: Direction, r: Direction) -> complex:
    """Normalized sub-beam gain: (1/N) sum_n e^{-j phase_{n,k_m}} e^{j phase_{n,r}}.

    Has unit modulus maximum, attained exactly at r = k_m.
    """
    s_m = steering_vector(array, k_m)
    s_r = steering_vector(array, r)
    return complex(np.conj(s_m) @ s_r / array.n_elements)


def pair_gain_matrix(array: AntennaArray, unit_vectors: np.ndarray) -> np.ndarray:
    """All sub-beam gains between direction pairs: G[m, h] toward direction h.

    G = S^H S / N for the steering matrix S; the diagonal is exactly 1.
    """
    s = np.exp(1j * phase_matrix(array, unit_vectors))
    return s.conj().T @ s / array.n_elements


def decompose(channel: ChannelRealization, array: AntennaArray, r: Direction) -> Decomposition:
    """Split the combining beam's array factor at ``r`` into per-path terms."""
    alphas = channel.amplitudes()
    terms = tuple(
        DecompositionTerm(m, complex(np.conj(alphas[m])),
                          component_array_factor(array, channel.components[m].direction, r))
        for m in range(channel.m_paths)
    )
    return Decomposition(terms, r)


def interference_term(channel: ChannelRealization, array: AntennaArray, h: int) -> complex:
    """Aggregate cross-beam gain at path h's direction from all other paths.

    The full array factor at that direction is conj(alpha_h) plus this term.
    """
    if not 0 <= h < channel.m_paths:
        raise ValueError(f"component index {h} out of range for M={channel.m_paths}")
    g = pair_gain_matrix(array, channel.direction_matrix())
    conj_a = np.conj(channel.amplitudes())
    return complex(conj_a @ g[:, h] - conj_a[h])


def classify_effectiveness(channel: ChannelRealization, array: AntennaArray) -> EffectivenessReport:
    """Flag every path as effective or not under the combining beam."""
    g = pair_gain_matrix(array, channel.direction_matrix())
    conj_a = np.conj(channel.amplitudes())
    interference = np.abs(conj_a @ g - conj_a)     # diagonal of g is 1
    amplitudes = np.abs(conj_a)
    return EffectivenessReport(amplitudes, interference, amplitudes >= interference)


def combined_response(weights: BeamWeights, channel: ChannelRealization,
                      array: AntennaArray, f) -> complex | np.ndarray:
    """Beam output for the channel at baseband frequency ``f``.

    Equals sum_n w_n H_n(f); computed per path as a sum of delayed tones,
    which is algebraically identical. Scalar ``f`` returns a complex
    scalar, a 1-D array returns one value per frequency.
    """
    if weights.coefficients.size != array.n_elements:
        raise ValueError(
            f"weight length {weights.coefficients.size} does not match "
            f"{array.n_elements} elements")
    phases = phase_matrix(array, channel.direction_matrix())
    tone = (weights.coefficients @ np.exp(1j * phases)) * channel.amplitudes()  # (M,)
    f = np.asarray(f, dtype=float)
    if f.ndim == 0:
        return complex(tone @ np.exp(-2j * np.pi * float(f) * channel.delays()))
    return tone @ np.exp(-2j * np.pi * np.outer(channel.delays(), f))


def noise_power(weights: BeamWeights, sigma0: float) -> float:
    """Output noise variance for per-antenna noise std ``sigma0``."""
    if sigma0 < 0:
        raise ValueError(f"sigma0 must be >= 0, got {sigma0}")
    return float(sigma0 ** 2 * np.sum(np.abs(weights.coefficients) ** 2))


def pattern_gain_db(weights: BeamWeights, array: AntennaArray,
                    theta_deg: np.ndarray, floor: float = 1e-30) -> np.ndarray:
    """Power gain |F|^2 in dB over broadside-plane probe angles (degrees).

    Probes lie in the x-y plane at ``theta_deg`` from +y broadside. Gains
    below ``floor`` (true pattern nulls) are clamped so output stays finite.
    """
    theta = np.radians(np.asarray(theta_deg, dtype=float))
    vecs = np.column_stack([np.sin(theta), np.cos(theta), np.zeros_like(theta)])
    factors = weights.coefficients @ np.exp(1j * phase_matrix(array, vecs))
    power = np.maximum(np.abs(factors) ** 2, floor)
    return 10.0 * np.log10(power)
