"""Multipath channel realizations and their per-antenna frequency response.

A channel is a finite set of plane waves, each with a complex amplitude,
a unit arrival direction and a propagation delay. Frequencies are baseband
offsets from the band center; the combining weights are designed at f = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import AntennaArray, Direction, FieldOfView, phase_matrix


@dataclass(frozen=True)
class MultipathComponent:
    """One plane wave: complex amplitude, arrival direction, delay in seconds."""

    alpha: complex
    direction: Direction
    delay: float

    def __post_init__(self):
        if not self.delay >= 0.0:
            raise ValueError(f"delay must be >= 0, got {self.delay}")


@dataclass(frozen=True)
class ChannelRealization:
    """Ordered collection of multipath components; index order is stable."""

    components: tuple[MultipathComponent, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if len(comps) < 1:
            raise ValueError("a channel needs at least one component")
        object.__setattr__(self, "components", comps)

    @property
    def m_paths(self) -> int:
        return len(self.components)

    def amplitudes(self) -> np.ndarray:
        return np.array([c.alpha for c in self.components], dtype=complex)

    def direction_matrix(self) -> np.ndarray:
        """(M, 3) matrix of unit arrival vectors, in component order."""
        return np.array([c.direction.vector for c in self.components])

    def delays(self) -> np.ndarray:
        return np.array([c.delay for c in self.components])


def sample_channel(m_paths: int, fov: FieldOfView, delay_max: float,
                   rng: np.random.Generator) -> ChannelRealization:
    """Draw a random channel: directions, then amplitudes, then delays.

    Amplitudes are circularly-symmetric complex normal with unit variance
    (independent real/imaginary parts of variance 1/2), delays uniform on
    [0, delay_max] seconds, directions uniform in angle within the field
    of view; all mutually independent.
    """
    if m_paths < 1:
        raise ValueError(f"m_paths must be >= 1, got {m_paths}")
    if not delay_max > 0:
        raise ValueError(f"delay_max must be positive, got {delay_max}")
    thetas = fov.sample_angles(rng, m_paths)
    alphas = (rng.standard_normal(m_paths) + 1j * rng.standard_normal(m_paths)) / np.sqrt(2.0)
    delays = rng.uniform(0.0, delay_max, m_paths)
    vecs = fov.direction_at(thetas)
    comps = tuple(
        MultipathComponent(complex(alphas[m]), Direction(vecs[m]), float(delays[m]))
        for m in range(m_paths)
    )
    return ChannelRealization(comps)


def per_antenna_response(channel: ChannelRealization, array: AntennaArray, f) -> np.ndarray:
    """Channel frequency response at every element, for baseband frequency ``f``.

    Entry n is sum_m alpha_m * e^{j phase_{n,m}} * e^{-j 2 pi f tau_m}.
    ``f`` may be a scalar (returns shape (N,)) or a 1-D array of F
    frequencies (returns shape (N, F)).
    """
    phases = phase_matrix(array, channel.direction_matrix())   # (N, M)
    gains = np.exp(1j * phases) * channel.amplitudes()
    f = np.asarray(f, dtype=float)
    if f.ndim == 0:
        return gains @ np.exp(-2j * np.pi * float(f) * channel.delays())
    return gains @ np.exp(-2j * np.pi * np.outer(channel.delays(), f))


def remove_component(channel: ChannelRealization, index: int) -> ChannelRealization:
    """Channel with component ``index`` deleted, e.g. a blocked path.

    Requires at least two components: removing the only path would leave
    an empty channel.
    """
    if channel.m_paths < 2:
        raise ValueError("cannot remove a component from a single-path channel")
    if not 0 <= index < channel.m_paths:
        raise ValueError(f"component index {index} out of range for M={channel.m_paths}")
    kept = channel.components[:index] + channel.components[index + 1:]
    return ChannelRealization(kept)


def channel_to_json(channel: ChannelRealization) -> dict:
    """JSON-serializable record: {components: [{re, im, kx, ky, kz, delay_ns}]}."""
    comps = []
    for c in channel.components:
        kx, ky, kz = (float(x) for x in c.direction.vector)
        comps.append({
            "re": float(c.alpha.real), "im": float(c.alpha.imag),
            "kx": kx, "ky": ky, "kz": kz,
            "delay_ns": float(c.delay * 1e9),
        })
    return {"components": comps}


def channel_from_json(record: dict) -> ChannelRealization:
    """Inverse of `channel_to_json`."""
    comps = tuple(
        MultipathComponent(
            complex(entry["re"], entry["im"]),
            Direction.from_vector([entry["kx"], entry["ky"], entry["kz"]]),
            entry["delay_ns"] * 1e-9,
        )
        for entry in record["components"]
    )
    return ChannelRealization(comps)
