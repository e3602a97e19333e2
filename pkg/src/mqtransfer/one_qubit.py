"""One-qubit sender and receiver on an N-site line.

The sender occupies site 1; sites 2..N start in the thermal state with
single-site excited-state weight p1 = 1/(1 + e^b). The receiver (site N)
matrix is exact and closed-form: populations relax toward the background as
|f|^2 transfers the sender population, and the coherence is carried with the
endpoint amplitude damped by tanh(b/2)^(N-1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chain import ChainSpec, endpoint_amplitude, endpoint_amplitude_grid, mode_basis
from .errors import SingularInputError, ValidationError

__all__ = [
    "Qubit1State",
    "receiver_state_1q",
    "lambda1_1q",
    "lambda0_variant_a",
    "lambda0_variant_b",
    "state_independent_target",
    "state_independent_time",
    "perfect_zero_a1",
]


@dataclass(frozen=True)
class Qubit1State:
    """Pure-sender data: excited population |a1|^2 and coherence product a0 a1*."""

    a1_sq: float
    phase_prod: complex = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.a1_sq <= 1.0:
            raise ValidationError(f"a1_sq must lie in [0, 1], got {self.a1_sq}")
        bound = self.a1_sq * (1.0 - self.a1_sq) + 1e-12
        if abs(self.phase_prod) ** 2 > bound:
            raise ValidationError("phase_prod exceeds the purity bound |a0 a1*|^2 <= a1_sq (1 - a1_sq)")

    @classmethod
    def pure(cls, a1_sq: float, phase: float = 0.0) -> "Qubit1State":
        a0 = np.sqrt(1.0 - a1_sq)
        a1 = np.sqrt(a1_sq) * np.exp(1j * phase)
        return cls(a1_sq=a1_sq, phase_prod=complex(a0 * np.conj(a1)))


def _populations(b: float) -> tuple[float, float]:
    # ground/excited weights of one thermal background spin
    p0 = np.exp(b / 2.0) / (2.0 * np.cosh(b / 2.0))
    return p0, 1.0 - p0


def receiver_state_1q(state: Qubit1State, t: float, b: float, spec: ChainSpec) -> np.ndarray:
    """Exact 2x2 receiver matrix at time t and background inverse temperature b."""
    basis = mode_basis(spec.n_sites)
    f = endpoint_amplitude(basis, t)
    p0, p1 = _populations(b)
    r11 = p0 + (p1 - state.a1_sq) * abs(f) ** 2
    r12 = (-np.tanh(b / 2.0)) ** (spec.n_sites - 1) * state.phase_prod * np.conj(f)
    return np.array([[r11, r12], [np.conj(r12), 1.0 - r11]], dtype=complex)


def lambda1_1q(t: float, b: float, spec: ChainSpec) -> complex:
    """Coherence scale factor f(t)* (-tanh(b/2))^(N-1); independent of the sender."""
    basis = mode_basis(spec.n_sites)
    f = endpoint_amplitude(basis, t)
    return complex((-np.tanh(b / 2.0)) ** (spec.n_sites - 1) * np.conj(f))


def lambda0_variant_a(state: Qubit1State, t: float, b: float, spec: ChainSpec) -> float:
    """Zero-order factor when the receiver (2,2) element absorbs normalization.

    lambda0 = rho_R(1,1) / rho_S(1,1) = (p0 + (p1 - |a1|^2)|f|^2) / (1 - |a1|^2),
    which generally depends on the sender through |a1|^2.
    """
    if state.a1_sq == 1.0:
        raise SingularInputError("variant A is singular at a1_sq = 1 (empty ground population)")
    basis = mode_basis(spec.n_sites)
    f2 = abs(endpoint_amplitude(basis, t)) ** 2
    p0, p1 = _populations(b)
    return float((p0 + (p1 - state.a1_sq) * f2) / (1.0 - state.a1_sq))


def lambda0_variant_b(state: Qubit1State, t: float, b: float, spec: ChainSpec) -> float:
    """Zero-order factor when the receiver (1,1) element absorbs normalization.

    lambda0 = rho_R(2,2) / rho_S(2,2) = |f|^2 + (1 - |f|^2) / (|a1|^2 (1 + e^b));
    tends to |f|^2 in the low-temperature limit.
    """
    if state.a1_sq == 0.0:
        raise SingularInputError("variant B is singular at a1_sq = 0 (empty excited population)")
    basis = mode_basis(spec.n_sites)
    f2 = abs(endpoint_amplitude(basis, t)) ** 2
    return float(f2 + (1.0 - f2) / (state.a1_sq * (1.0 + np.exp(b))))


def state_independent_target(b: float) -> float:
    """Threshold 2 e^b / (1 + 2 e^b) for |f|^2; bounded below by 2/3 for b >= 0."""
    eb = np.exp(b)
    return float(2.0 * eb / (1.0 + 2.0 * eb))


def state_independent_time(b: float, spec: ChainSpec, t_max: float,
                           grid_step: float = 0.01, tol: float = 1e-9) -> float | None:
    """Smallest t in (0, t_max] where |f(t)|^2 reaches the threshold for this b.

    Scans a grid and bisects the first crossing; when the threshold is only
    touched tangentially (it equals the global maximum), the touching point is
    refined and returned. None when the window never gets within tol.
    """
    basis = mode_basis(spec.n_sites)
    target = state_independent_target(b)
    ts = np.arange(0.0, t_max + grid_step, grid_step)
    ts = ts[ts <= t_max + 1e-12]
    d = np.abs(endpoint_amplitude_grid(basis, ts)) ** 2 - target

    def dval(t: float) -> float:
        return abs(endpoint_amplitude(basis, t)) ** 2 - target

    above = np.nonzero(d >= 0.0)[0]
    if above.size:
        i = int(above[0])
        if i == 0:
            return float(ts[0])
        lo, hi = float(ts[i - 1]), float(ts[i])
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if dval(mid) >= 0.0:
                hi = mid
            else:
                lo = mid
        return 0.5 * (lo + hi)

    # tangential case: refine the closest approach by golden section
    i = int(np.argmax(d))
    lo = float(ts[max(i - 1, 0)])
    hi = float(ts[min(i + 1, len(ts) - 1)])
    inv_phi = (np.sqrt(5.0) - 1.0) / 2.0
    c = hi - inv_phi * (hi - lo)
    e = lo + inv_phi * (hi - lo)
    fc, fe = dval(c), dval(e)
    while hi - lo > tol:
        if fc > fe:
            hi, e, fe = e, c, fc
            c = hi - inv_phi * (hi - lo)
            fc = dval(c)
        else:
            lo, c, fc = c, e, fe
            e = lo + inv_phi * (hi - lo)
            fe = dval(e)
    t_best = 0.5 * (lo + hi)
    if abs(dval(t_best)) <= tol:
        return float(t_best)
    return None


def perfect_zero_a1(t: float, b: float, spec: ChainSpec) -> float:
    """Excited population making the zero-order transfer exact (lambda0 = 1).

    Both restoring variants give |a1|^2 = 1/(1 + e^b): the sender population
    must match the thermal background, after which the diagonal is a fixed
    point of the map. At |f(t)| = 1 the condition is degenerate (perfect
    state transfer; every |a1|^2 satisfies it) and the same canonical value
    is returned.
    """
    del t, spec  # the condition is independent of the transfer amplitude
    return float(1.0 / (1.0 + np.exp(b)))
