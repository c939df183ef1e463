"""Stellar (root) representation of spin-1 states.

A normalized state (c+, c0, c-) maps to the quadratic

    (c+/sqrt2) x^2 - c0 x + (c-/sqrt2),

whose two Riemann-sphere roots x = tan(theta/2) exp(i phi) are the
"stars". Degree deficits are roots at infinity (south pole). The
inverse direction symmetrizes two qubit kets pointing along the stars
and reads the spin-1 amplitudes off the triplet component.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .numerics import ABS_FLOOR, EPS_LEAD, solve_quadratic
from .operators import TRIPLET_BASIS
from .states import as_state, gauge_fix_quadrupolar, is_quadrupolar, normalize

_SQ2 = np.sqrt(2.0)
_TWO_PI = 2.0 * np.pi


# ---- stars ----

@dataclass(frozen=True)
class Star:
    """Point on the unit sphere, colatitude theta in [0, pi] and
    azimuth phi in [0, 2pi); phi = 0 at both poles."""

    theta: float
    phi: float

    @property
    def unit_vector(self) -> np.ndarray:
        st = np.sin(self.theta)
        return np.array([st * np.cos(self.phi),
                         st * np.sin(self.phi),
                         np.cos(self.theta)])


def star_from_root(x: complex) -> Star:
    """Star of a finite stellar root."""
    x = complex(x)
    theta = 2.0 * np.arctan(abs(x))
    if abs(x) == 0.0 or theta >= np.pi:
        return Star(theta=float(theta), phi=0.0)
    return Star(theta=float(theta), phi=float(np.angle(x) % _TWO_PI))


def star_at_infinity() -> Star:
    return Star(theta=float(np.pi), phi=0.0)


def star_from_unit(u) -> Star:
    u = np.asarray(u, dtype=float)
    z = float(np.clip(u[2], -1.0, 1.0))
    theta = float(np.arccos(z))
    if np.hypot(u[0], u[1]) < 1e-15:
        return Star(theta=theta, phi=0.0)
    return Star(theta=theta, phi=float(np.arctan2(u[1], u[0]) % _TWO_PI))


@dataclass(frozen=True, eq=False)
class StarSet:
    """Unordered pair of stars of one spin-1 state."""

    stars: tuple[Star, Star]

    def unit_vectors(self) -> np.ndarray:
        return np.stack([s.unit_vector for s in self.stars])

    def matches(self, other: "StarSet", tol: float = 1e-9) -> bool:
        """Set equality under the better of the two pairings."""
        a = self.unit_vectors()
        b = other.unit_vectors()
        straight = max(np.linalg.norm(a[0] - b[0]), np.linalg.norm(a[1] - b[1]))
        crossed = max(np.linalg.norm(a[0] - b[1]), np.linalg.norm(a[1] - b[0]))
        return min(straight, crossed) <= tol


# ---- state -> stars ----

def majorana_polynomial(psi) -> tuple[complex, complex, complex]:
    """Coefficients (x^2, x, 1) of the stellar polynomial."""
    psi = as_state(psi)
    return (complex(psi[0]) / _SQ2, -complex(psi[1]), complex(psi[2]) / _SQ2)


def stars_from_state(psi) -> StarSet:
    roots = solve_quadratic(*majorana_polynomial(psi))
    stars = [star_from_root(x) for x in roots.finite_roots]
    stars += [star_at_infinity()] * roots.roots_at_infinity
    return StarSet(stars=(stars[0], stars[1]))


def are_antipodal(star_set: StarSet, tol: float = 1e-9) -> bool:
    u = star_set.unit_vectors()
    return float(u[0] @ u[1]) <= -1.0 + tol


def mirror_pair_check(star_set: StarSet, tol: float = 1e-9) -> bool:
    """True when the star pair is symmetric under y -> -y.

    Either the two stars are mirror images of each other, or each lies
    in the mirror plane itself (both regimes occur for real states).
    """
    u = star_set.unit_vectors()
    m = u * np.array([1.0, -1.0, 1.0])
    paired = float(np.linalg.norm(u[1] - m[0]))
    fixed = float(max(np.linalg.norm(u[0] - m[0]), np.linalg.norm(u[1] - m[1])))
    return min(paired, fixed) <= tol


# ---- stars -> state ----

def _bloch_ket(star: Star) -> np.ndarray:
    half = 0.5 * star.theta
    return np.array([np.cos(half), np.exp(1j * star.phi) * np.sin(half)])


def symmetrized_two_qubit(star_set: StarSet) -> tuple[np.ndarray, float]:
    """Normalized symmetrized two-qubit vector and its one-qubit purity.

    Purity is 1 for coincident stars and 1/2 for antipodal ones (the
    symmetrization is then maximally entangled).
    """
    k1 = _bloch_ket(star_set.stars[0])
    k2 = _bloch_ket(star_set.stars[1])
    sym = np.kron(k1, k2) + np.kron(k2, k1)
    sym = sym / np.linalg.norm(sym)
    m = sym.reshape(2, 2)
    rho = m @ m.conj().T
    purity = float(np.trace(rho @ rho).real)
    return sym, purity


def symmetrized_pair_norm_sq(star_set: StarSet) -> float:
    """Squared norm of the raw symmetrized vector, 2(1 + |<k1|k2>|^2)."""
    k1 = _bloch_ket(star_set.stars[0])
    k2 = _bloch_ket(star_set.stars[1])
    sym = np.kron(k1, k2) + np.kron(k2, k1)
    return float(np.vdot(sym, sym).real)


def state_from_stars(star_set: StarSet) -> np.ndarray:
    """Spin-1 state with the given stars, in a deterministic gauge."""
    sym, _ = symmetrized_two_qubit(star_set)
    psi = normalize(TRIPLET_BASIS @ sym)
    if is_quadrupolar(psi):
        return gauge_fix_quadrupolar(psi)
    mags = np.abs(psi)
    anchor = int(np.argmax(mags > 1e-12 * mags.max()))
    return psi * np.exp(-1j * np.angle(psi[anchor]))


# ---- batched extraction ----

def star_vectors_of_states(states) -> np.ndarray:
    """Star unit vectors for a batch of states, shape (N, 2, 3).

    Row order within each pair follows the solver and carries no
    meaning; trajectory code must match pairs between steps itself.
    Uses the same stabilized quadratic as solve_quadratic, vectorized,
    with roots converted through the x or 1/x chart so arbitrarily
    large roots never overflow.
    """
    states = np.asarray(states, dtype=complex)
    if states.ndim != 2 or states.shape[1] != 3:
        raise InputError(f"expected (N, 3) states, got {states.shape}")
    a2 = states[:, 0] / _SQ2
    a1 = -states[:, 1]
    a0 = states[:, 2] / _SQ2
    mx = np.maximum(np.abs(a2), np.maximum(np.abs(a1), np.abs(a0)))
    if np.any(mx < ABS_FLOOR):
        raise InputError("zero state in batch")

    lead_def = np.abs(a2) < EPS_LEAD * mx
    lin_def = lead_def & (np.abs(a1) < EPS_LEAD * mx)

    disc = a1 * a1 - 4.0 * a2 * a0
    s = np.sqrt(disc.astype(complex))
    s = np.where((np.conj(a1) * s).real < 0.0, -s, s)
    q = -0.5 * (a1 + s)

    safe_a2 = np.where(lead_def, 1.0, a2)
    safe_a1 = np.where(np.abs(a1) < ABS_FLOOR, 1.0, a1)
    safe_q = np.where(q == 0.0, 1.0, q)

    x1 = np.where(lead_def, -a0 / safe_a1, np.where(q == 0.0, 0.0, q / safe_a2))
    x2 = np.where(q == 0.0, 0.0, a0 / safe_q)

    inf1 = lin_def
    inf2 = lead_def

    u1 = _units_from_roots(np.where(inf1, 0.0, x1), inf1)
    u2 = _units_from_roots(np.where(inf2, 0.0, x2), inf2)
    return np.stack([u1, u2], axis=1)


def _units_from_roots(x: np.ndarray, at_inf: np.ndarray) -> np.ndarray:
    ax = np.abs(x)
    big = ax > 1.0
    w = np.where(big, 1.0 / np.where(big, x, 1.0), x)
    aw2 = np.abs(w) ** 2
    den = 1.0 + aw2
    ux = 2.0 * w.real / den
    uy = 2.0 * np.where(big, -w.imag, w.imag) / den
    uz = np.where(big, aw2 - 1.0, 1.0 - aw2) / den
    out = np.stack([ux, uy, uz], axis=-1)
    out[at_inf] = (0.0, 0.0, -1.0)
    return out
