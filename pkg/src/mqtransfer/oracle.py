"""Dense brute-force simulator used as ground truth for the analytic maps.

Builds the full 2^N Hamiltonian, evolves the product initial state by exact
eigendecomposition, and traces out everything but the receiver. Site 1 is the
most significant tensor factor; the sender occupies the leading sites and the
receiver the trailing ones, so the analytic and dense conventions coincide.
"""

from __future__ import annotations

import numpy as np

from .chain import ChainSpec
from .errors import ResourceError, ValidationError

__all__ = [
    "MAX_SITES",
    "build_hamiltonian",
    "thermal_background",
    "evolve_and_trace",
    "clear_cache",
]

# 2^12 keeps a full complex matrix near 256 MB; beyond that dense evolution
# stops being a sensible oracle.
MAX_SITES = 12

_EIG_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def build_hamiltonian(spec: ChainSpec) -> np.ndarray:
    """Nearest-neighbor hopping Hamiltonian on the full 2^N space.

    Each bond contributes (1/2)(|10><01| + |01><10|) on its two sites, which
    conserves the total excitation number.
    """
    n = spec.n_sites
    if n > MAX_SITES:
        raise ResourceError(f"dense Hamiltonian limited to {MAX_SITES} sites, got {n}")
    dim = 1 << n
    h = np.zeros((dim, dim), dtype=complex)
    states = np.arange(dim)
    for site in range(1, n):
        # bits are counted from the most significant side: site i sits at 2^(n-i)
        hi_bit = 1 << (n - site)
        lo_bit = 1 << (n - site - 1)
        mask = (states & hi_bit > 0) & (states & lo_bit == 0)
        src = states[mask]
        dst = src - hi_bit + lo_bit
        h[dst, src] += 0.5
        h[src, dst] += 0.5
    return h


def _eig(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n not in _EIG_CACHE:
        evals, evecs = np.linalg.eigh(build_hamiltonian(ChainSpec(n)))
        evals.setflags(write=False)
        evecs.setflags(write=False)
        _EIG_CACHE[n] = (evals, evecs)
    return _EIG_CACHE[n]


def clear_cache() -> None:
    _EIG_CACHE.clear()


def _thermal_weights(b: float, count: int) -> np.ndarray:
    w1 = np.array([np.exp(b / 2.0), np.exp(-b / 2.0)]) / (2.0 * np.cosh(b / 2.0))
    w = np.array([1.0])
    for _ in range(count):
        w = np.kron(w, w1)
    return w


def thermal_background(b: float, count: int) -> np.ndarray:
    """Diagonal thermal state of `count` background spins (unit trace)."""
    if b < 0:
        raise ValidationError(f"inverse temperature must be >= 0, got {b}")
    return np.diag(_thermal_weights(b, count))


def evolve_and_trace(sender: np.ndarray, t: float, b: float, spec: ChainSpec) -> np.ndarray:
    """Receiver matrix of the full evolved state.

    sender is 2x2 (one qubit, site 1, receiver site N) or 4x4 (two qubits,
    sites 1 and 2, receiver sites N-1 and N). The map is linear, so sender
    need only be a square matrix of the right size; Hermiticity or positivity
    are not required here.
    """
    sender = np.asarray(sender, dtype=complex)
    if sender.shape not in ((2, 2), (4, 4)):
        raise ValidationError(f"sender must be 2x2 or 4x4, got shape {sender.shape}")
    if b < 0:
        raise ValidationError(f"inverse temperature must be >= 0, got {b}")
    n = spec.n_sites
    n_sender = 1 if sender.shape == (2, 2) else 2
    if n < 2 * n_sender:
        raise ValidationError(f"chain of {n} sites cannot host sender and receiver")
    if n > MAX_SITES:
        raise ResourceError(f"dense evolution limited to {MAX_SITES} sites, got {n}")

    evals, evecs = _eig(n)
    rho0 = np.kron(sender, np.diag(_thermal_weights(b, n - n_sender)))
    u = (evecs * np.exp(-1j * evals * t)) @ evecs.conj().T
    rho_t = u @ rho0 @ u.conj().T
    d_env = 1 << (n - n_sender)
    d_rec = 1 << n_sender
    return np.einsum("iaib->ab", rho_t.reshape(d_env, d_rec, d_env, d_rec))
