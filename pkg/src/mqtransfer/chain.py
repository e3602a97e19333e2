"""Spectral data of the open XX spin-1/2 chain.

Everything downstream is driven by the sine-mode basis of the open chain,
its single-particle energies, and the time-dependent transition amplitudes
between sites. Coupling is fixed to 1, so time is dimensionless.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConfigurationError

__all__ = [
    "ChainSpec",
    "ModeBasis",
    "AmplitudeSet",
    "build_modes",
    "mode_basis",
    "transition_amplitude",
    "transition_amplitude_grid",
    "endpoint_amplitude",
    "endpoint_amplitude_grid",
    "endpoint_power_max",
    "amplitude_set",
]


@dataclass(frozen=True)
class ChainSpec:
    """Open chain of spin-1/2 sites with unit nearest-neighbor coupling."""

    n_sites: int

    def __post_init__(self) -> None:
        if not isinstance(self.n_sites, int) or self.n_sites < 2:
            raise ConfigurationError(f"n_sites must be an integer >= 2, got {self.n_sites!r}")


@dataclass(frozen=True)
class ModeBasis:
    """Sine modes g[j, k] = sqrt(2/(N+1)) sin(pi (j+1)(k+1)/(N+1)) and energies.

    Rows are sites, columns are modes (both 0-based internally); energies[k]
    = cos(pi (k+1)/(N+1)) are strictly decreasing in k and lie in (-1, 1).
    """

    n_sites: int
    g: np.ndarray
    energies: np.ndarray


def build_modes(spec: ChainSpec) -> ModeBasis:
    """Diagonalize the single-excitation sector analytically."""
    n = spec.n_sites
    j = np.arange(1, n + 1)
    g = np.sqrt(2.0 / (n + 1)) * np.sin(np.pi * np.outer(j, j) / (n + 1))
    energies = np.cos(np.pi * j / (n + 1))
    g.setflags(write=False)
    energies.setflags(write=False)
    return ModeBasis(n_sites=n, g=g, energies=energies)


@lru_cache(maxsize=64)
def mode_basis(n_sites: int) -> ModeBasis:
    """Cached ModeBasis for a chain length (the basis is immutable)."""
    return build_modes(ChainSpec(n_sites))


def _check_site(basis: ModeBasis, i: int) -> None:
    if not 1 <= i <= basis.n_sites:
        raise ConfigurationError(f"site index {i} out of range 1..{basis.n_sites}")


def transition_amplitude(basis: ModeBasis, i: int, j: int, t: float) -> complex:
    """Propagator matrix element f_ij(t) = sum_k g_ik g_jk exp(-i t eps_k).

    Sites are 1-based. |f_ij| <= 1 and f_ij(0) = delta_ij.
    """
    _check_site(basis, i)
    _check_site(basis, j)
    return complex(np.sum(basis.g[i - 1] * basis.g[j - 1] * np.exp(-1j * t * basis.energies)))


def transition_amplitude_grid(basis: ModeBasis, i: int, j: int, ts: np.ndarray) -> np.ndarray:
    """Vectorized f_ij over an array of times."""
    _check_site(basis, i)
    _check_site(basis, j)
    ts = np.asarray(ts, dtype=float)
    phase = np.exp(-1j * np.multiply.outer(ts, basis.energies))
    return phase @ (basis.g[i - 1] * basis.g[j - 1])


def endpoint_amplitude(basis: ModeBasis, t: float) -> complex:
    """End-to-end amplitude f(t) = sum_k exp(+i eps_k t) g_1k g_Nk.

    Purely real for odd N and purely imaginary for even N.
    """
    n = basis.n_sites
    return complex(np.sum(np.exp(1j * t * basis.energies) * basis.g[0] * basis.g[n - 1]))


def endpoint_amplitude_grid(basis: ModeBasis, ts: np.ndarray) -> np.ndarray:
    """Vectorized endpoint amplitude over an array of times."""
    ts = np.asarray(ts, dtype=float)
    phase = np.exp(1j * np.multiply.outer(ts, basis.energies))
    return phase @ (basis.g[0] * basis.g[basis.n_sites - 1])


def endpoint_power_max(basis: ModeBasis, t_lo: float, t_hi: float,
                       step: float = 1e-3) -> tuple[float, float]:
    """Location and value of the largest |f(t)|^2 on [t_lo, t_hi].

    Grid scan at the given step with a golden-section polish of the winning
    bracket; adequate for the smooth almost-periodic |f|^2.
    """
    ts = np.arange(t_lo, t_hi + step, step)
    power = np.abs(endpoint_amplitude_grid(basis, ts)) ** 2
    i = int(np.argmax(power))
    lo = float(ts[max(i - 1, 0)])
    hi = float(ts[min(i + 1, len(ts) - 1)])
    inv_phi = (np.sqrt(5.0) - 1.0) / 2.0

    def val(t: float) -> float:
        return abs(endpoint_amplitude(basis, t)) ** 2

    c = hi - inv_phi * (hi - lo)
    d = lo + inv_phi * (hi - lo)
    fc, fd = val(c), val(d)
    while hi - lo > 1e-9:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - inv_phi * (hi - lo)
            fc = val(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + inv_phi * (hi - lo)
            fd = val(d)
    t_best = 0.5 * (lo + hi)
    return t_best, val(t_best)


@dataclass(frozen=True)
class AmplitudeSet:
    """The four sender-to-receiver amplitudes at time t, plus the endpoint one.

    f11 = f_{1,N-1}, f1n = f_{1,N}, f21 = f_{2,N-1}, f2n = f_{2,N}.
    """

    t: float
    f11: complex
    f1n: complex
    f21: complex
    f2n: complex
    f_end: complex


def amplitude_set(basis: ModeBasis, t: float) -> AmplitudeSet:
    """Amplitudes between sender sites (1, 2) and receiver sites (N-1, N)."""
    n = basis.n_sites
    if n < 4:
        raise ConfigurationError(f"two-qubit amplitudes need n_sites >= 4, got {n}")
    phase = np.exp(-1j * t * basis.energies)
    g = basis.g

    def f(i: int, j: int) -> complex:
        return complex(np.sum(g[i - 1] * g[j - 1] * phase))

    return AmplitudeSet(
        t=t,
        f11=f(1, n - 1),
        f1n=f(1, n),
        f21=f(2, n - 1),
        f2n=f(2, n),
        f_end=endpoint_amplitude(basis, t),
    )
