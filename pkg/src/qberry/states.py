"""Spin-1 state vectors and the zero-spin-expectation subspace.

States are complex 3-vectors in the (+1, 0, -1) basis. A state is
"quadrupolar" when all three spin expectations vanish; every such
state is a global phase away from the canonical form

    (alpha, beta, -conj(alpha)),   beta real >= 0,

and the fixed unitary from operators.global_unitary() sends canonical
states to real 3-vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotNormalizedError, InputError, NotQuadrupolarError
from .numerics import TOL_NORM
from .operators import global_unitary, spin_operators

_SX, _SY, _SZ = spin_operators()
_U_DAG = global_unitary().conj().T
_SQ2 = np.sqrt(2.0)

# amplitude below which a component cannot anchor the overall phase
_PHASE_ANCHOR = 1e-13

QutritState = np.ndarray


@dataclass(frozen=True)
class QuadrupolarAngles:
    """Parameters of the canonical family quadrupolar_from_angles.

    Note these are family parameters, not the star position: the state
    at (theta, phi) carries its stars along the axis
    (sin(theta/2) cos(phi), -sin(theta/2) sin(phi), -cos(theta/2)).
    """

    theta: float
    phi: float


@dataclass(frozen=True)
class QuadrupolarForm:
    """Canonical amplitudes (alpha, beta, -conj(alpha)), beta >= 0."""

    alpha: complex
    beta: float


def as_state(amps) -> np.ndarray:
    """Validate and return a normalized complex 3-vector."""
    psi = np.asarray(amps, dtype=complex)
    if psi.shape != (3,):
        raise InputError(f"state must be a 3-vector, got shape {psi.shape}")
    if not np.all(np.isfinite(psi.real)) or not np.all(np.isfinite(psi.imag)):
        raise InputError("state amplitudes must be finite")
    n = float(np.linalg.norm(psi))
    if abs(n - 1.0) > 1e-9:
        raise NotNormalizedError(f"state norm {n} differs from 1")
    return psi / n


def normalize(vec) -> np.ndarray:
    vec = np.asarray(vec, dtype=complex)
    n = float(np.linalg.norm(vec))
    if n < 1e-300:
        raise InputError("cannot normalize the zero vector")
    return vec / n


def overlap(psi, phi) -> complex:
    """Hermitian inner product <psi|phi>."""
    return complex(np.vdot(np.asarray(psi, complex), np.asarray(phi, complex)))


def spin_expectation(psi) -> np.ndarray:
    """(<Sx>, <Sy>, <Sz>) as a real 3-vector."""
    psi = as_state(psi)
    return np.array([
        np.vdot(psi, _SX @ psi).real,
        np.vdot(psi, _SY @ psi).real,
        np.vdot(psi, _SZ @ psi).real,
    ])


def is_quadrupolar(psi, tol: float = 1e-9) -> bool:
    """True when every spin expectation vanishes within tol."""
    return float(np.max(np.abs(spin_expectation(psi)))) <= tol


def quadrupolar_from_angles(theta: float, phi: float) -> np.ndarray:
    """Canonical quadrupolar state of the two-parameter family.

    (exp(i phi) sin(theta/2)/sqrt2, cos(theta/2),
     -exp(-i phi) sin(theta/2)/sqrt2); see QuadrupolarAngles for where
    its stars actually point.
    """
    theta, phi = float(theta), float(phi)
    half = 0.5 * theta
    return np.array([
        np.exp(1j * phi) * np.sin(half) / _SQ2,
        np.cos(half),
        -np.exp(-1j * phi) * np.sin(half) / _SQ2,
    ])


def quadrupolar_from_axis(axis) -> np.ndarray:
    """Canonical quadrupolar state whose stars sit at +-axis.

    The fixed unitary U sends canonical states to real vectors
    (r, s, t) whose star axis is (t, r, -s); invert that relation and
    pull back through U.
    """
    axis = np.asarray(axis, dtype=float)
    if axis.shape != (3,) or not np.all(np.isfinite(axis)):
        raise InputError("axis must be a finite real 3-vector")
    n = np.linalg.norm(axis)
    if n == 0.0:
        raise InputError("axis must be nonzero")
    u = axis / n
    real_image = np.array([u[1], -u[2], u[0]], dtype=complex)
    return gauge_fix_quadrupolar(_U_DAG @ real_image)


def gauge_fix_quadrupolar(psi) -> np.ndarray:
    """Deterministic global phase for a quadrupolar state.

    Rotate the middle amplitude real positive; if it vanishes, rotate
    the +1 amplitude real positive instead. With a nonzero middle
    amplitude the result is the canonical (alpha, beta, -conj(alpha))
    form, beta > 0.
    """
    psi = as_state(psi)
    if not is_quadrupolar(psi):
        raise NotQuadrupolarError("spin expectation does not vanish")
    if abs(psi[1]) >= _PHASE_ANCHOR:
        return psi * np.exp(-1j * np.angle(psi[1]))
    return psi * np.exp(-1j * np.angle(psi[0]))


def canonical_quadrupolar(psi) -> np.ndarray:
    """Phase gauge in which the state is exactly canonical.

    Same as gauge_fix_quadrupolar when the middle amplitude is
    nonzero. When it vanishes, the phase that makes the +1 amplitude
    real positive does not restore -conj pairing of the outer
    amplitudes, so solve for the phase that does; the result maps to
    a real vector under the fixed unitary in every case.
    """
    psi = gauge_fix_quadrupolar(psi)
    if abs(psi[1]) >= _PHASE_ANCHOR:
        return psi
    # exp(2 i chi) = -conj(c_plus) / c_minus, both amplitudes nonzero
    # here since |c_plus| = |c_minus| = 1/sqrt(2)
    chi = 0.5 * np.angle(-np.conj(psi[0]) / psi[2])
    return psi * np.exp(1j * chi)


def quadrupolar_form(psi) -> QuadrupolarForm:
    """Canonical amplitudes of a quadrupolar state (gauge applied)."""
    fixed = canonical_quadrupolar(psi)
    if abs(fixed[2] + np.conj(fixed[0])) > 1e-8:
        raise NotQuadrupolarError("outer amplitudes are not -conj paired")
    beta = fixed[1].real
    if beta < 0.0:
        fixed = -fixed
        beta = -beta
    return QuadrupolarForm(alpha=complex(fixed[0]), beta=float(beta))


def angles_of_quadrupolar(psi) -> QuadrupolarAngles:
    """Invert quadrupolar_from_angles (theta in [0, pi], phi in [0, 2pi))."""
    form = quadrupolar_form(psi)
    beta = min(form.beta, 1.0)
    theta = 2.0 * np.arccos(beta)
    if abs(np.sin(0.5 * theta)) < 1e-12:
        return QuadrupolarAngles(theta=float(theta), phi=0.0)
    return QuadrupolarAngles(theta=float(theta),
                             phi=float(np.angle(form.alpha) % (2.0 * np.pi)))


# ---- random sampling ----

def random_state(rng: np.random.Generator) -> np.ndarray:
    """Haar-uniform normalized 3-vector."""
    z = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    return normalize(z)


def random_unit_vector(rng: np.random.Generator) -> np.ndarray:
    """Uniform point on the unit sphere."""
    z = rng.uniform(-1.0, 1.0)
    phi = rng.uniform(0.0, 2.0 * np.pi)
    s = np.sqrt(max(0.0, 1.0 - z * z))
    return np.array([s * np.cos(phi), s * np.sin(phi), z])


def random_quadrupolar(rng: np.random.Generator,
                       random_phase: bool = False) -> np.ndarray:
    """Quadrupolar state with star axis uniform on the sphere.

    Canonical gauge by construction; random_phase=True multiplies in
    a uniform global phase (for exercising gauge fixing).
    """
    psi = quadrupolar_from_axis(random_unit_vector(rng))
    if random_phase:
        psi = psi * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
    return psi


def random_real_state(rng: np.random.Generator) -> np.ndarray:
    """Normalized real 3-vector as a spin-1 state."""
    v = rng.standard_normal(3)
    return normalize(v).astype(complex)
