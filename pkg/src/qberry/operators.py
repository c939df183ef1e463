"""Operators on the spin-1 Hilbert space, basis (+1, 0, -1).

Spin matrices, the five quadrupole (rank-2, traceless, spin-free)
operators, the fixed unitary that maps the zero-spin-expectation
subspace onto real 3-vectors, a one-parameter unitary family
interpolating identity -> that map, and the two antiunitaries whose
fixed-point sets characterize the subspace.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    AllCoefficientsZeroError,
    InputError,
    NotUnitaryError,
)
from .numerics import TOL_NORM, propagator

_ISQ2 = 1.0 / np.sqrt(2.0)

# ---- spin matrices ----

_SX = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex) * _ISQ2
_SY = np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]], dtype=complex) * _ISQ2
_SZ = np.array([[1, 0, 0], [0, 0, 0], [0, 0, -1]], dtype=complex)

# generators acting on real 3-vectors (image basis); pure imaginary
# antisymmetric, commutators close with the same structure constants.
# Each equals U S_i U+ exactly (entries 0, +-i), so a spin rotation
# about n maps to a right-handed rotation of the image about n.
_SXR = np.array([[0, 1j, 0], [-1j, 0, 0], [0, 0, 0]])
_SYR = np.array([[0, 0, 0], [0, 0, 1j], [0, -1j, 0]])
_SZR = np.array([[0, 0, 1j], [0, 0, 0], [-1j, 0, 0]])


def spin_operators() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The spin-1 matrices (Sx, Sy, Sz), [Si, Sj] = i eps_ijk Sk."""
    return _SX.copy(), _SY.copy(), _SZ.copy()


def spin_operators_real_basis() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Spin components conjugated into the real-vector basis.

    All entries pure imaginary, so each generates real rotations of
    real 3-vectors; same commutation algebra as spin_operators().
    """
    return _SXR.copy(), _SYR.copy(), _SZR.copy()


def spin_rotation(axis, angle: float) -> np.ndarray:
    """exp(-i (axis . S) angle) for a real rotation axis."""
    axis = np.asarray(axis, dtype=float)
    if axis.shape != (3,) or not np.all(np.isfinite(axis)):
        raise InputError("rotation axis must be a finite real 3-vector")
    n = np.linalg.norm(axis)
    if n == 0.0:
        raise InputError("rotation axis must be nonzero")
    axis = axis / n
    gen = axis[0] * _SX + axis[1] * _SY + axis[2] * _SZ
    return propagator(gen, float(angle))


# ---- quadrupole operators ----

_EYE = np.eye(3, dtype=complex)


def _sym(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return 0.5 * (a @ b + b @ a)


def quadrupole_ops() -> dict[str, np.ndarray]:
    """The five independent quadrupole operators, keyed by component.

    Q_ij = (Si Sj + Sj Si)/2 - (2/3) delta_ij, with "x2-y2" standing
    for Q_xx - Q_yy. Together they span the traceless Hermitian
    operators orthogonal to all three spin components.
    """
    return {
        "xy": _sym(_SX, _SY),
        "yz": _sym(_SY, _SZ),
        "zx": _sym(_SZ, _SX),
        "zz": _sym(_SZ, _SZ) - (2.0 / 3.0) * _EYE,
        "x2-y2": _SX @ _SX - _SY @ _SY,
    }


_Q_KEYS = ("xy", "yz", "zx", "zz", "x2-y2")


def quadrupolar_hamiltonian(coeffs: dict) -> np.ndarray:
    """Real linear combination of the five quadrupole operators."""
    bad = set(coeffs) - set(_Q_KEYS)
    if bad:
        raise InputError(f"unknown quadrupole keys {sorted(bad)}; "
                         f"valid keys are {_Q_KEYS}")
    vals = {}
    for key, c in coeffs.items():
        c = complex(c)
        if abs(c.imag) > TOL_NORM * max(1.0, abs(c)):
            raise InputError(f"coefficient {key!r} must be real")
        vals[key] = c.real
    if not vals or max(abs(v) for v in vals.values()) == 0.0:
        raise AllCoefficientsZeroError("all quadrupole coefficients vanish")
    q = quadrupole_ops()
    h = np.zeros((3, 3), dtype=complex)
    for key, c in vals.items():
        h += c * q[key]
    return h


# ---- the real-mapping unitary and its interpolation ----

_U_REAL_MAP = np.array([
    [1j * _ISQ2, 0.0, 1j * _ISQ2],
    [0.0, 1.0, 0.0],
    [_ISQ2, 0.0, -_ISQ2],
], dtype=complex)

# spectral data of the map above: eigenphases and projectors.
# exp(i 5pi/12) and exp(-i 11pi/12) live on the (+1, -1) subspace,
# the middle row is fixed.
UNITARY_EIGENPHASES = (5.0 * np.pi / 12.0, -11.0 * np.pi / 12.0, 0.0)

_S3 = np.sqrt(3.0)
_P1 = np.array([
    [(3.0 + _S3) / 6.0, 0.0, (1.0 + 1j) / (2.0 * _S3)],
    [0.0, 0.0, 0.0],
    [(1.0 - 1j) / (2.0 * _S3), 0.0, (3.0 - _S3) / 6.0],
], dtype=complex)
_P2 = np.array([
    [(3.0 - _S3) / 6.0, 0.0, -(1.0 + 1j) / (2.0 * _S3)],
    [0.0, 0.0, 0.0],
    [-(1.0 - 1j) / (2.0 * _S3), 0.0, (3.0 + _S3) / 6.0],
], dtype=complex)
_P3 = np.diag([0.0, 1.0, 0.0]).astype(complex)


def global_unitary() -> np.ndarray:
    """Unitary sending every zero-spin state (canonical gauge) to a
    real 3-vector; rows are fixed constants."""
    return _U_REAL_MAP.copy()


def unitary_family_projectors() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Spectral projectors of the real-mapping unitary."""
    return _P1.copy(), _P2.copy(), _P3.copy()


def interpolating_unitary(alpha: float) -> np.ndarray:
    """U(alpha) = sum_k exp(i phase_k alpha) P_k.

    U(0) is the identity and U(1) the real-mapping unitary. Values of
    alpha outside [0, 1] are allowed (the family is entire in alpha)
    but warned about, since the endpoint claims only cover [0, 1].
    """
    alpha = float(alpha)
    if not np.isfinite(alpha):
        raise InputError("alpha must be finite")
    if alpha < 0.0 or alpha > 1.0:
        warnings.warn(f"alpha = {alpha} outside [0, 1]; extrapolating the "
                      "unitary family beyond its documented range")
    t1, t2, t3 = UNITARY_EIGENPHASES
    return (np.exp(1j * t1 * alpha) * _P1
            + np.exp(1j * t2 * alpha) * _P2
            + np.exp(1j * t3 * alpha) * _P3)


# ---- antiunitaries ----

@dataclass(frozen=True, eq=False)
class AntiUnitary:
    """Antiunitary map psi -> matrix @ conj(psi).

    Conjugation acts first, then the stored unitary matrix; composing
    the map with itself therefore gives the linear operator
    matrix @ conj(matrix).
    """

    matrix: np.ndarray

    def apply(self, psi) -> np.ndarray:
        psi = np.asarray(psi, dtype=complex)
        return self.matrix @ np.conj(psi)

    def applied_twice(self) -> np.ndarray:
        return self.matrix @ np.conj(self.matrix)


# stored exactly: building these from floating products of 1/sqrt(2)
# factors leaves ~1e-16 residue, which would spoil squared == identity
_THETA_MATRIX = np.array([
    [0.0, 0.0, -1.0],
    [0.0, 1.0, 0.0],
    [-1.0, 0.0, 0.0],
], dtype=complex)

_PAIR_REVERSAL_MATRIX = np.array([
    [0.0, 0.0, 1.0],
    [0.0, -1.0, 0.0],
    [1.0, 0.0, 0.0],
], dtype=complex)


def anti_unitary_theta() -> AntiUnitary:
    """The antiunitary fixing every canonical zero-spin state.

    Squares to the identity exactly. Its matrix equals U^T U for the
    real-mapping unitary U (cross-checked in the tests); fixed points
    are exactly the rays of the zero-spin-expectation subspace.
    """
    return AntiUnitary(_THETA_MATRIX.copy())


def triplet_time_reversal() -> AntiUnitary:
    """Time reversal inherited from the two-qubit triplet embedding.

    Equals minus the matrix of anti_unitary_theta(); states with
    T psi = -psi are exactly the zero-spin-expectation rays.
    """
    return AntiUnitary(_PAIR_REVERSAL_MATRIX.copy())


def anti_unitary_fixing_image(v: np.ndarray) -> AntiUnitary:
    """Antiunitary whose fixed rays are v applied to real vectors.

    For unitary v this is psi -> (v v^T) conj(psi); with v the inverse
    of the real-mapping unitary it reproduces anti_unitary_theta().
    """
    v = _require_unitary(v)
    return AntiUnitary(v @ v.T)


# the triplet (symmetric) subspace of two qubits, rows = spin-1 basis
TRIPLET_BASIS = np.array([
    [1.0, 0.0, 0.0, 0.0],
    [0.0, _ISQ2, _ISQ2, 0.0],
    [0.0, 0.0, 0.0, 1.0],
], dtype=complex)


def _pair_reversal_projection() -> np.ndarray:
    """Matrix part of two-qubit time reversal projected to the triplet.

    (i sy) x (i sy) compressed with the triplet rows; agrees with the
    stored triplet_time_reversal matrix to rounding (test-checked).
    """
    isy = np.array([[0.0, 1.0], [-1.0, 0.0]])
    pair = np.kron(isy, isy).astype(complex)
    return TRIPLET_BASIS @ pair @ TRIPLET_BASIS.conj().T


# ---- generic helpers ----

def is_unitary(m: np.ndarray, tol: float = TOL_NORM) -> bool:
    m = np.asarray(m, dtype=complex)
    if m.shape != (3, 3) or not np.all(np.isfinite(m)):
        return False
    return float(np.linalg.norm(m.conj().T @ m - _EYE)) <= tol * 10.0


def _require_unitary(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if not is_unitary(m):
        raise NotUnitaryError("matrix is not unitary within tolerance")
    return m


def transform_operator(u: np.ndarray, a: np.ndarray) -> np.ndarray:
    """Conjugate operator a by unitary u: u a u^dagger."""
    u = _require_unitary(u)
    a = np.asarray(a, dtype=complex)
    if a.shape != (3, 3):
        raise InputError(f"expected a 3x3 operator, got shape {a.shape}")
    return u @ a @ u.conj().T
