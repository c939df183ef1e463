"""Small dense numerics used everywhere else in the package.

Quadratic root solving on the Riemann sphere (degree deficits count as
roots at infinity), a closed-form eigendecomposition for 3x3 Hermitian
matrices, and the matrix exponential propagator built from it.

The eigensolver follows the classic trigonometric solution of the
characteristic cubic, then recovers eigenvectors from cross products of
rows, which is exact for the bilinear (unconjugated) dot product. One
step of inverse iteration is applied only if the residual asks for it.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import AllCoefficientsZeroError, InputError, NotHermitianError

TOL_NORM = 1e-12
# leading-coefficient deficit is relative to the largest coefficient
EPS_LEAD = 1e-13
ABS_FLOOR = 1e-300

_RESIDUAL_POLISH = 0.5e-12


def wrap_pi(angle: float) -> float:
    """Map an angle to the half-open interval (-pi, pi]."""
    a = float(angle) % (2.0 * np.pi)
    if a > np.pi:
        a -= 2.0 * np.pi
    return a


# ---- quadratic roots ----

@dataclass(frozen=True)
class RootSet:
    """Roots of a polynomial of formal degree 2, infinity included."""

    finite_roots: tuple[complex, ...]
    roots_at_infinity: int = 0

    def __post_init__(self):
        if len(self.finite_roots) + self.roots_at_infinity != 2:
            raise InputError("a formal quadratic carries exactly two roots")


def solve_quadratic(a2: complex, a1: complex, a0: complex) -> RootSet:
    """Both roots of a2 x^2 + a1 x + a0, in descending-degree order.

    A vanishing leading coefficient (relative size below EPS_LEAD) sends
    one root to infinity; a vanishing linear term on top of that sends
    both. The finite branch picks the sign of the discriminant square
    root to avoid cancellation and recovers the second root from the
    product of roots, so tiny roots keep full relative accuracy.
    """
    a2, a1, a0 = complex(a2), complex(a1), complex(a0)
    if not all(cmath.isfinite(c) for c in (a2, a1, a0)):
        raise InputError("polynomial coefficients must be finite")
    mx = max(abs(a2), abs(a1), abs(a0))
    if mx < ABS_FLOOR:
        raise AllCoefficientsZeroError("all quadratic coefficients vanish")

    if abs(a2) < EPS_LEAD * mx:
        if abs(a1) < EPS_LEAD * mx:
            return RootSet((), 2)
        return RootSet((-a0 / a1,), 1)

    disc = a1 * a1 - 4.0 * a2 * a0
    s = cmath.sqrt(disc)
    if (a1.conjugate() * s).real < 0.0:
        s = -s
    q = -0.5 * (a1 + s)
    if q == 0.0:
        # only reachable when a1 == 0 and disc == 0, hence a0 == 0
        return RootSet((0j, 0j), 0)
    return RootSet((q / a2, a0 / q), 0)


# ---- 3x3 Hermitian eigenproblem ----

def is_hermitian(h: np.ndarray, tol: float = TOL_NORM) -> bool:
    h = np.asarray(h, dtype=complex)
    if h.shape != (3, 3):
        return False
    scale = max(1.0, float(np.linalg.norm(h)))
    return float(np.linalg.norm(h - h.conj().T)) <= tol * scale


def _require_hermitian(h: np.ndarray) -> np.ndarray:
    h = np.asarray(h, dtype=complex)
    if h.shape != (3, 3):
        raise InputError(f"expected a 3x3 matrix, got shape {h.shape}")
    if not np.all(np.isfinite(h.real)) or not np.all(np.isfinite(h.imag)):
        raise InputError("matrix entries must be finite")
    if not is_hermitian(h):
        raise NotHermitianError("matrix is not Hermitian within tolerance")
    return 0.5 * (h + h.conj().T)


def _eigvals3(h: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian 3x3 via the trig cubic."""
    q = h.trace().real / 3.0
    b = h - q * np.eye(3)
    p2 = float(np.sum(np.abs(b) ** 2)) / 6.0
    p = np.sqrt(p2)
    if p == 0.0:
        return np.array([q, q, q])
    r = np.clip((np.linalg.det(b / p).real) / 2.0, -1.0, 1.0)
    phi = np.arccos(r) / 3.0
    lo = q + 2.0 * p * np.cos(phi + 2.0 * np.pi / 3.0)
    hi = q + 2.0 * p * np.cos(phi)
    mid = 3.0 * q - lo - hi  # trace is preserved exactly
    return np.array([lo, mid, hi])


def _null_direction(m: np.ndarray) -> np.ndarray:
    """Unit kernel vector of a (numerically) rank-2 matrix.

    Rows of m annihilate the kernel under the unconjugated dot product,
    and so does any cross product of two rows; take the largest one.
    """
    c01 = np.cross(m[0], m[1])
    c12 = np.cross(m[1], m[2])
    c20 = np.cross(m[2], m[0])
    cands = np.array([c01, c12, c20])
    norms = np.linalg.norm(cands, axis=1)
    k = int(np.argmax(norms))
    if norms[k] == 0.0:
        # rank <= 1: any direction orthogonal to the largest row works
        rows = np.linalg.norm(m, axis=1)
        j = int(np.argmax(rows))
        if rows[j] == 0.0:
            return np.array([1.0, 0.0, 0.0], dtype=complex)
        return _orthogonal_unit(m[j].conj() / rows[j])
    return cands[k] / norms[k]


def _orthogonal_unit(v: np.ndarray) -> np.ndarray:
    """Some unit vector Hermitian-orthogonal to unit v."""
    k = int(np.argmin(np.abs(v)))
    e = np.zeros(3, dtype=complex)
    e[k] = 1.0
    w = e - v * np.vdot(v, e)
    return w / np.linalg.norm(w)


def eig_hermitian3(h: np.ndarray, polish: bool = True):
    """Eigenvalues (ascending) and orthonormal eigenvector columns.

    Closed form throughout: trigonometric eigenvalues, a cross-product
    kernel vector for the best-separated eigenvalue, and an explicit
    2x2 diagonalization in the orthogonal complement. When the residual
    exceeds _RESIDUAL_POLISH * max(1, |h|), each vector gets one step
    of shifted inverse iteration.
    """
    h = _require_hermitian(h)
    w = _eigvals3(h)
    scale = max(1.0, float(np.linalg.norm(h)))

    gaps = np.array([w[1] - w[0], min(w[1] - w[0], w[2] - w[1]), w[2] - w[1]])
    if gaps.max() <= TOL_NORM * scale:
        # triple degeneracy: h is a multiple of the identity
        return w, np.eye(3, dtype=complex)

    iso = int(np.argmax(gaps))
    v_iso = _null_direction(h - w[iso] * np.eye(3))

    b1 = _orthogonal_unit(v_iso)
    b2 = np.conj(np.cross(v_iso, b1))
    b2 /= np.linalg.norm(b2)

    # 2x2 block of h in the complement of v_iso
    hb1, hb2 = h @ b1, h @ b2
    alpha = np.vdot(b1, hb1).real
    delta = np.vdot(b2, hb2).real
    beta = np.vdot(b1, hb2)
    half_gap = 0.5 * (alpha - delta)
    rad = np.hypot(half_gap, abs(beta))
    mu_lo = 0.5 * (alpha + delta) - rad
    mu_hi = 0.5 * (alpha + delta) + rad

    def block_vec(mu, fallback):
        # pick the better-conditioned component formula; a fully
        # degenerate block accepts any basis, so fall back to b1/b2
        t1 = np.array([beta, mu - alpha])
        t2 = np.array([mu - delta, np.conj(beta)])
        t = t1 if np.linalg.norm(t1) >= np.linalg.norm(t2) else t2
        n = np.linalg.norm(t)
        if n == 0.0:
            t, n = np.array(fallback, dtype=complex), 1.0
        t = t / n
        return t[0] * b1 + t[1] * b2

    others = [j for j in range(3) if j != iso]
    vecs = [None, None, None]
    vecs[iso] = v_iso
    vecs[others[0]] = block_vec(mu_lo, (1.0, 0.0))
    vecs[others[1]] = block_vec(mu_hi, (0.0, 1.0))
    v = np.stack(vecs, axis=1)

    if polish:
        res = max(
            float(np.linalg.norm(h @ v[:, k] - w[k] * v[:, k])) for k in range(3)
        )
        if res > _RESIDUAL_POLISH * scale:
            v = _inverse_iteration(h, w, v, scale)

    return w, v


def _inverse_iteration(h, w, v, scale):
    shift = 64.0 * np.finfo(float).eps * scale
    out = v.copy()
    for k in range(3):
        try:
            y = np.linalg.solve(h - (w[k] + shift) * np.eye(3), out[:, k])
        except np.linalg.LinAlgError:
            continue
        n = np.linalg.norm(y)
        if n > 0 and np.isfinite(n):
            out[:, k] = y / n
    # re-orthonormalize in ascending order; eigenvectors of distinct
    # eigenvalues are already orthogonal, this cleans degenerate pairs
    for k in range(3):
        for j in range(k):
            out[:, k] -= out[:, j] * np.vdot(out[:, j], out[:, k])
        out[:, k] /= np.linalg.norm(out[:, k])
    return out


# ---- propagator ----

def propagator(h: np.ndarray, t: float) -> np.ndarray:
    """exp(-i h t) for Hermitian h, through the closed-form spectrum."""
    w, v = eig_hermitian3(h)
    phases = np.exp(-1j * w * float(t))
    return (v * phases) @ v.conj().T
