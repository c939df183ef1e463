"""Evolution of real 3-vector states under a constant spin field.

In the real-vector basis a field (a, b, c) generates a rigid rotation
of real states about the unit axis (b, -c, a)/omega at angular rate
omega = sqrt(a^2 + b^2 + c^2); pulled back to the spin basis it is
minus the ordinary dipole Hamiltonian, so zero-spin states stay
zero-spin forever and the dynamical phase vanishes identically.

Every ray returns at the full period 2 pi / omega. It returns already
at the half period exactly when the initial vector is orthogonal to
the rotation axis (the "geodesic" condition): the two stars then trade
places and the cyclic geometric phase is pi instead of 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .berry import (
    StateLoop,
    PhaseReport,
    TOL_CONSISTENCY,
    classify_and_verify,
)
from .errors import (
    AllCoefficientsZeroError,
    ConditionViolatedError,
    InconsistentPhasesError,
    InputError,
    NonCyclicError,
    NotQuadrupolarError,
    ZeroDenominatorError,
)
from .numerics import propagator, wrap_pi
from .operators import global_unitary, spin_operators
from .states import as_state, canonical_quadrupolar, is_quadrupolar

_SX, _SY, _SZ = spin_operators()
_U = global_unitary()
_U_DAG = _U.conj().T

RealState3 = np.ndarray


@dataclass(frozen=True)
class SpinFieldReal:
    """Constant field (a, b, c) acting in the real-vector basis."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        vals = (self.a, self.b, self.c)
        if not all(np.isfinite(v) for v in vals):
            raise InputError("field components must be finite")
        if max(abs(v) for v in vals) == 0.0:
            raise AllCoefficientsZeroError("field must be nonzero")

    @property
    def omega(self) -> float:
        return float(np.sqrt(self.a ** 2 + self.b ** 2 + self.c ** 2))

    @property
    def rotation_axis(self) -> np.ndarray:
        """Unit vector the real states rotate about (stationary ray)."""
        return np.array([self.b, -self.c, self.a]) / self.omega


def as_real_state(vec) -> np.ndarray:
    """Validate a normalized real 3-vector state."""
    v = np.asarray(vec, dtype=complex)
    if v.shape != (3,):
        raise InputError(f"state must be a 3-vector, got shape {v.shape}")
    if float(np.max(np.abs(v.imag))) > 1e-9:
        raise InputError("real-basis state must have real components")
    r = v.real.astype(float)
    n = float(np.linalg.norm(r))
    if abs(n - 1.0) > 1e-9:
        raise InputError(f"state norm {n} differs from 1")
    return r / n


def field_generator_real(field: SpinFieldReal) -> np.ndarray:
    """Hamiltonian of the field in the real-vector basis.

    Antisymmetric pure-imaginary, eigenvalues (0, +-omega); -i times it
    is the cross-product map with (b, -c, a).
    """
    a, b, c = field.a, field.b, field.c
    return np.array([
        [0.0, -1j * a, -1j * c],
        [1j * a, 0.0, -1j * b],
        [1j * c, 1j * b, 0.0],
    ])


def field_generator_standard(field: SpinFieldReal) -> np.ndarray:
    """The same Hamiltonian in the spin basis: -(a Sx + b Sy + c Sz)."""
    return -(field.a * _SX + field.b * _SY + field.c * _SZ)


# ---- closed-form evolution ----

def evolve_closed_form(field: SpinFieldReal, psi0, tau) -> np.ndarray:
    """Real state(s) at time(s) tau, componentwise closed form.

    tau may be a scalar or an array; the result has shape
    tau.shape + (3,). Exact rigid rotation, no time stepping.
    """
    r0, s0, t0 = as_real_state(psi0)
    a, b, c = field.a, field.b, field.c
    w = field.omega
    w2 = w * w
    tau = np.asarray(tau, dtype=float)
    si = np.sin(w * tau)
    co = np.cos(w * tau)
    c1 = (a * b * t0 + b * b * r0 - b * c * s0
          - w * (a * s0 + c * t0) * si
          + (a * a * r0 - a * b * t0 + b * c * s0 + c * c * r0) * co) / w2
    c2 = (-a * c * t0 - b * c * r0 + c * c * s0
          + w * (a * r0 - b * t0) * si
          + (a * a * s0 + a * c * t0 + b * b * s0 + b * c * r0) * co) / w2
    c3 = (a * a * t0 + a * b * r0 - a * c * s0
          + w * (b * s0 + c * r0) * si
          + (-a * b * r0 + a * c * s0 + b * b * t0 + c * c * t0) * co) / w2
    return np.stack([c1, c2, c3], axis=-1)


def evolve_numeric(field: SpinFieldReal, psi0, tau) -> np.ndarray:
    """Same evolution through the spectral propagator (cross-check)."""
    psi0 = as_real_state(psi0).astype(complex)
    h = field_generator_real(field)
    tau = np.asarray(tau, dtype=float)
    if tau.ndim == 0:
        return propagator(h, float(tau)) @ psi0
    return np.stack([propagator(h, float(t)) @ psi0 for t in tau])


# ---- the geodesic special case ----

def geodesic_condition(field: SpinFieldReal, psi0, tol: float = 1e-9) -> bool:
    """True when the initial vector is orthogonal to the rotation
    axis: a t0 + b r0 = c s0 within tol (scale-free)."""
    r0, s0, t0 = as_real_state(psi0)
    return abs(field.a * t0 + field.b * r0 - field.c * s0) / field.omega <= tol


def geodesic_trajectory(field: SpinFieldReal, psi0, tau) -> np.ndarray:
    """Two-term closed form valid on the geodesic submanifold.

    Requires the geodesic condition (ConditionViolatedError otherwise)
    and a != 0, which the two-term form divides by
    (ZeroDenominatorError). Agrees with evolve_closed_form there.
    """
    r0, s0, t0 = as_real_state(psi0)
    if not geodesic_condition(field, psi0):
        raise ConditionViolatedError(
            "initial state does not satisfy the geodesic condition")
    a, b, c = field.a, field.b, field.c
    if a == 0.0:
        raise ZeroDenominatorError(
            "two-term geodesic form requires a nonzero first component")
    w = field.omega
    tau = np.asarray(tau, dtype=float)
    vec = np.array([
        -a * a * s0 + b * c * r0 - c * c * s0,
        a * a * r0 + b * b * r0 - b * c * s0,
        a * (b * s0 + c * r0),
    ]) / (a * w)
    base = np.array([r0, s0, t0])
    return (np.cos(w * tau)[..., None] * base
            + np.sin(w * tau)[..., None] * vec)


# ---- cyclic geometric phase ----

@dataclass(frozen=True)
class AACycle:
    """One closed ray cycle under a constant field.

    report: the tracked two-route phase report of the sampled loop.
    cycle_time: first time the ray returns (half period on the
    geodesic submanifold, full period otherwise).
    total_phase: arg <psi(0)|psi(T)> with no re-gauging.
    dynamical_phase: <H> T, identically ~0 for zero-spin states.
    stationary: initial vector parallel to the rotation axis.
    """

    report: PhaseReport
    cycle_time: float
    total_phase: float
    dynamical_phase: float
    stationary: bool


def aa_cycle(field: SpinFieldReal, psi_q0, n_samples: int = 1024) -> AACycle:
    """Evolve a zero-spin state through one ray cycle and report.

    The input lives in the spin basis; it is put in canonical gauge,
    mapped to its real vector, rotated in closed form, and the sampled
    loop (mapped back to the spin basis) goes through the standard
    two-route classification. The overlap-route phase must agree with
    the direct cyclic phase arg <psi(0)|psi(T)>.
    """
    if int(n_samples) != n_samples or n_samples < 8:
        raise InputError("need at least 8 samples per cycle")
    n_samples = int(n_samples)
    psi_q = as_state(psi_q0)
    if not is_quadrupolar(psi_q):
        raise NotQuadrupolarError(
            "cyclic-phase evolution requires a zero-spin state")
    psi_c = canonical_quadrupolar(psi_q)
    real_image = _U @ psi_c
    psi_r = as_real_state(real_image)

    axis = field.rotation_axis
    stationary = abs(float(axis @ psi_r)) >= 1.0 - 1e-12
    geodesic = (not stationary) and geodesic_condition(field, psi_r)
    w = field.omega
    cycle_time = (np.pi / w) if geodesic else (2.0 * np.pi / w)

    times = cycle_time * np.arange(n_samples) / n_samples
    reals = evolve_closed_form(field, psi_r, times)
    samples = reals.astype(complex) @ _U_DAG.T
    samples /= np.linalg.norm(samples, axis=1)[:, None]
    loop = StateLoop(samples)
    report = classify_and_verify(loop)

    end = evolve_closed_form(field, psi_r, cycle_time)
    closure = complex(np.dot(psi_r, end))
    if abs(closure) < 1.0 - 1e-8:
        raise NonCyclicError(
            f"ray did not return at T = {cycle_time}: |overlap| = "
            f"{abs(closure):.12f}")
    total_phase = wrap_pi(float(np.angle(closure)))

    if abs(wrap_pi(report.gamma - total_phase)) > TOL_CONSISTENCY:
        raise InconsistentPhasesError(
            f"overlap-route phase {report.gamma:.6f} disagrees with the "
            f"cyclic phase {total_phase:.6f}")
    expected = "Exchange" if geodesic else "IndividualLoops"
    if report.classification != expected:
        raise InconsistentPhasesError(
            f"tracked classification {report.classification} contradicts "
            f"the cycle time (expected {expected})")

    h_q = field_generator_standard(field)
    energy = float(np.vdot(psi_c, h_q @ psi_c).real)
    dynamical = energy * cycle_time
    return AACycle(report=report, cycle_time=float(cycle_time),
                   total_phase=total_phase, dynamical_phase=dynamical,
                   stationary=stationary)


def aa_phase(field: SpinFieldReal, psi_q0,
             n_samples: int = 1024) -> PhaseReport:
    """PhaseReport of one closed ray cycle (see aa_cycle)."""
    return aa_cycle(field, psi_q0, n_samples).report


# ---- subspace preservation under arbitrary Hamiltonians ----

@dataclass(frozen=True)
class PreservationReport:
    """Whether evolution kept the spin expectation at zero."""

    preserved: bool
    max_violation: float
    first_violation_time: float | None
    tol: float


def quadrupolar_preservation_check(h, psi0, horizon: float,
                                   n_samples: int = 256,
                                   tol: float = 1e-9) -> PreservationReport:
    """Sample |<S_i>| under exp(-i h t) psi0 over [0, horizon].

    Pure spin fields preserve zero spin expectation exactly;
    quadrupole terms generally do not. The check is empirical: it
    reports the largest violation seen at the sample times.
    """
    psi0 = as_state(psi0)
    if not (np.isfinite(horizon) and horizon > 0):
        raise InputError("horizon must be positive")
    if int(n_samples) != n_samples or n_samples < 2:
        raise InputError("need at least 2 samples")
    from .numerics import eig_hermitian3

    w, v = eig_hermitian3(h)
    times = np.linspace(0.0, float(horizon), int(n_samples))
    coeff = v.conj().T @ psi0
    evolved = (v @ (np.exp(-1j * np.outer(w, times)) * coeff[:, None])).T
    worst = 0.0
    first_bad = None
    for m in (_SX, _SY, _SZ):
        e = np.einsum("ni,ij,nj->n", np.conj(evolved), m, evolved).real
        bad = np.abs(e) > tol
        if bad.any():
            t_bad = float(times[int(np.argmax(bad))])
            first_bad = t_bad if first_bad is None else min(first_bad, t_bad)
        worst = max(worst, float(np.max(np.abs(e))))
    return PreservationReport(preserved=first_bad is None,
                              max_violation=worst,
                              first_violation_time=first_bad,
                              tol=tol)
