"""Geometric phases of closed spin-1 state loops, by two routes.

Route one: the discrete phase -arg of the cyclic overlap product.
Route two: track the two stars along the loop, then combine the solid
angles swept (the rigid part) with a correlation correction driven by
the inter-star distance. For loops in the zero-spin or real subspaces
both routes quantize the phase to {0, pi}.

Star distance throughout is d = 1 - u1.u2 in [0, 2]. The squared norm
of the symmetrized two-qubit lift is 4 - d, which gives the
correlation weight d / (4 - d) and lets the correction integral be
written with the (always >= 2) denominator inside, so star collisions
cost no precision.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    DegeneratePairError,
    GapClosureError,
    InconsistentPhasesError,
    InputError,
    NotClosedError,
    NotNormalizedError,
    NotQuadrupolarError,
    OrthogonalNeighborsError,
    PhysicsError,
    StarCollisionError,
    StepTooCoarseError,
)
from .majorana import star_vectors_of_states
from .numerics import eig_hermitian3, wrap_pi
from .operators import interpolating_unitary, spin_operators, spin_rotation
from .states import as_state, is_quadrupolar, overlap

# neighbor overlaps in a product chain must clear this
EPS_OVERLAP = 1e-6
# largest allowed ray step between loop samples for star tracking
DELTA_MAX = 0.1
# largest allowed per-step star displacement (great-circle angle)
STEP_MAX_STAR = np.pi / 4.0
# matching cost ties below this are resolved by convention
TIE_TOL = 1e-12
# joint tie selection enumerates combinations only up to this many
TIE_COMBO_MAX = 10
# star-collision detection (chord distance)
COLLISION_MIN = 1e-8
COLLISION_SPREAD = 1e-6
# phase tolerances
TOL_QUANT = 1e-3
TOL_CONSISTENCY = 5e-3

_SX, _SY, _SZ = spin_operators()


# ---- loops ----

@dataclass(frozen=True, eq=False)
class StateLoop:
    """Cyclic sequence of normalized states; sample k+1 follows k and
    the last sample wraps to the first. No repeated endpoint."""

    states: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.states, dtype=complex)
        if s.ndim != 2 or s.shape[1] != 3 or s.shape[0] < 3:
            raise InputError(f"loop needs at least 3 states of dim 3, "
                             f"got shape {s.shape}")
        if not np.all(np.isfinite(s.view(float))):
            raise InputError("loop amplitudes must be finite")
        norms = np.linalg.norm(s, axis=1)
        if np.max(np.abs(norms - 1.0)) > 1e-9:
            raise NotNormalizedError("loop states must be normalized")
        object.__setattr__(self, "states", s)
        o = np.abs(np.sum(np.conj(s) * np.roll(s, -1, axis=0), axis=1))
        k = int(np.argmin(o))
        if o[k] <= EPS_OVERLAP:
            raise OrthogonalNeighborsError(
                f"neighbor overlap at step {k} is {o[k]:.2e}")

    def __len__(self) -> int:
        return self.states.shape[0]


def bargmann_invariant(states) -> complex:
    """Cyclic product of neighbor overlaps <psi_k | psi_k+1>."""
    if isinstance(states, StateLoop):
        states = states.states
    s = np.asarray(states, dtype=complex)
    o = np.sum(np.conj(s) * np.roll(s, -1, axis=0), axis=1)
    return complex(np.prod(o))


def discrete_geometric_phase(loop) -> float:
    """-arg of the Bargmann invariant, in (-pi, pi]."""
    return wrap_pi(-np.angle(bargmann_invariant(loop)))


def geodesic_loop(a, b, n: int) -> StateLoop:
    """Closed projective geodesic through rays a and b, n samples.

    Vertices cos(pi k/n) a + sin(pi k/n) b_perp for k = 0..n-1; the
    next vertex would be -a, which closes the loop in ray space. All
    pairwise neighbor overlaps equal cos(pi/n) except the wrap, which
    is cos(pi - pi/n).
    """
    if int(n) != n or n < 3:
        raise InputError("need at least 3 samples")
    a = as_state(a)
    b = as_state(b)
    o = overlap(a, b)
    r = abs(o)
    if r <= 1e-12 or r >= 1.0 - 1e-12:
        raise DegeneratePairError(
            "geodesic endpoints must be neither orthogonal nor parallel")
    b_aligned = b * np.exp(-1j * np.angle(o))
    perp = (b_aligned - r * a)
    perp = perp / np.linalg.norm(perp)
    s = np.pi * np.arange(int(n)) / float(n)
    return StateLoop(np.outer(np.cos(s), a) + np.outer(np.sin(s), perp))


def piecewise_geodesic_loop(vertices, per_edge: int) -> StateLoop:
    """Closed loop of geodesic arcs through the given ray vertices."""
    if int(per_edge) != per_edge or per_edge < 1:
        raise InputError("per_edge must be a positive integer")
    verts = [as_state(v) for v in vertices]
    if len(verts) < 2:
        raise InputError("need at least 2 vertices")
    chunks = []
    for k, a in enumerate(verts):
        b = verts[(k + 1) % len(verts)]
        o = overlap(a, b)
        r = abs(o)
        if r >= 1.0 - 1e-12:
            chunks.append(a[None, :])
            continue
        b_aligned = b * np.exp(-1j * np.angle(o)) if r > 0 else b
        perp = b_aligned - r * a
        perp = perp / np.linalg.norm(perp)
        sigma = np.arccos(min(1.0, r))
        s = sigma * np.arange(int(per_edge)) / float(per_edge)
        chunks.append(np.outer(np.cos(s), a) + np.outer(np.sin(s), perp))
    return StateLoop(np.concatenate(chunks, axis=0))


def rotation_loop(psi0, axis, total_angle: float, n: int) -> StateLoop:
    """Samples exp(-i (axis.S) total_angle k/n) psi0, k = 0..n-1."""
    if int(n) != n or n < 3:
        raise InputError("need at least 3 samples")
    psi0 = as_state(psi0)
    step = spin_rotation(axis, float(total_angle) / float(n))
    out = np.empty((int(n), 3), dtype=complex)
    out[0] = psi0
    for k in range(1, int(n)):
        out[k] = step @ out[k - 1]
    return StateLoop(out)


def star_axis_of(psi) -> np.ndarray:
    """Unit star axis of a quadrupolar state (sign arbitrary)."""
    psi = as_state(psi)
    if not is_quadrupolar(psi):
        raise NotQuadrupolarError("state has nonzero spin expectation")
    u = star_vectors_of_states(psi[None, :])[0]
    return u[0]


def exchange_loop(psi_q, n: int, axis=None) -> StateLoop:
    """Half-turn loop about an axis orthogonal to the star axis.

    The two antipodal stars swap, the ray closes, and the loop phase
    is pi. With axis=None a deterministic orthogonal axis is chosen.
    """
    psi_q = as_state(psi_q)
    a = star_axis_of(psi_q)
    if axis is None:
        e = np.zeros(3)
        e[int(np.argmin(np.abs(a)))] = 1.0
        axis = np.cross(a, e)
        axis /= np.linalg.norm(axis)
    else:
        axis = np.asarray(axis, dtype=float)
        axis = axis / np.linalg.norm(axis)
        if abs(float(axis @ a)) > 1e-9:
            raise InputError("exchange axis must be orthogonal to the "
                             "star axis")
    return rotation_loop(psi_q, axis, np.pi, n)


def individual_loop(psi_q, n: int, axis=(0.0, 0.0, 1.0)) -> StateLoop:
    """Full-turn loop: each star traces its own closed circle, total
    solid angle 4 pi (= 0 mod 4 pi), loop phase 0."""
    psi_q = as_state(psi_q)
    if not is_quadrupolar(psi_q):
        raise NotQuadrupolarError("state has nonzero spin expectation")
    return rotation_loop(psi_q, axis, 2.0 * np.pi, n)


# ---- star tracking ----

@dataclass(frozen=True, eq=False)
class StarTrajectory:
    """Matched star paths along a loop.

    positions has shape (N+1, 2, 3): row k holds the two star unit
    vectors of sample k with consistent strand identity; row N repeats
    sample 0's stars, permuted by the closure. closure is "identity"
    or "swap".
    """

    positions: np.ndarray
    closure: str
    loop: StateLoop


def track_stars(loop: StateLoop) -> StarTrajectory:
    """Follow both stars around the loop by per-step nearest matching.

    Exact cost ties happen when a step straddles a double root of the
    star polynomial: the two stars leave the crossing point turned a
    quarter-turn from how they entered, so the four straddle points
    are cost-degenerate under either pairing. A double root is a
    branch point of the root pair, so no continuation of the
    individual strands through it is intrinsic; the resolution is a
    convention, fixed here as follows. Outside the real subspace a
    tied step reconnects with a fixed handedness, both strands turning
    counterclockwise seen from outside the sphere, so symmetric
    crossings resolve identically no matter how the root solver orders
    its output. For a loop confined to the real subspace the
    correlation term vanishes and the phase is quantized, which makes
    the decomposition exact for one closure and corner-cut for the
    other; the tied steps are then resolved jointly by whichever
    combination reproduces the overlap-route phase best. Both branches
    are deterministic.
    """
    states = loop.states
    n = states.shape[0]
    o = np.abs(np.sum(np.conj(states) * np.roll(states, -1, axis=0), axis=1))
    ray_step = np.sqrt(np.maximum(0.0, 1.0 - o * o))
    k = int(np.argmax(ray_step))
    if ray_step[k] > DELTA_MAX:
        raise StepTooCoarseError(
            f"ray step {ray_step[k]:.3f} at sample {k} exceeds {DELTA_MAX}")

    u = star_vectors_of_states(states)
    sep = np.linalg.norm(u[:, 0, :] - u[:, 1, :], axis=1)
    if sep.min() < COLLISION_MIN and sep.max() > COLLISION_SPREAD:
        raise StarCollisionError(
            f"stars collide near sample {int(np.argmin(sep))} "
            f"(separation {sep.min():.2e}); matching is ambiguous there")

    u_ext = np.concatenate([u, u[:1]], axis=0)
    d_same = (np.linalg.norm(u_ext[:-1, 0] - u_ext[1:, 0], axis=1)
              + np.linalg.norm(u_ext[:-1, 1] - u_ext[1:, 1], axis=1))
    d_cross = (np.linalg.norm(u_ext[:-1, 0] - u_ext[1:, 1], axis=1)
               + np.linalg.norm(u_ext[:-1, 1] - u_ext[1:, 0], axis=1))
    swap = (d_cross < d_same).astype(int)

    ties = np.nonzero(np.abs(d_same - d_cross) <= TIE_TOL)[0]
    for t in ties:
        swap[t] = _resolve_tie(u_ext, swap, int(t), n)
    if 0 < ties.size <= TIE_COMBO_MAX and _batch_real_ray(states):
        _select_tied_combo(states, u_ext, swap, ties)

    positions, end_parity = _matched_positions(u_ext, swap)

    disp = np.linalg.norm(positions[1:] - positions[:-1], axis=2)
    worst = float(disp.max())
    if worst >= 2.0 * np.sin(STEP_MAX_STAR / 2.0):
        raise StepTooCoarseError(
            f"star step of chord {worst:.3f} exceeds the {STEP_MAX_STAR:.3f}"
            " great-circle bound; sample the loop more densely")

    closure = "identity" if end_parity == 0 else "swap"
    return StarTrajectory(positions=positions, closure=closure, loop=loop)


def _matched_positions(u_ext, swap):
    """Apply per-step pairing flags; final parity is the closure."""
    parity = np.concatenate([[0], np.cumsum(swap) % 2])
    positions = u_ext.copy()
    flip = parity.astype(bool)
    positions[flip] = positions[flip][:, ::-1, :]
    return positions, int(parity[-1])


def _resolve_tie(u_ext, swap, t: int, n: int) -> int:
    """Fixed-handedness reconnection for a cost-tied matching step.

    For each candidate raw pairing s, both strands turn from their
    incoming direction to the outgoing one; the summed signed turn
    about the outward normal, position . (incoming x outgoing), has
    opposite signs for the two pairings at a square crossing. Pick the
    counterclockwise one. Incoming directions follow the raw flag of
    the previous step (cyclic), so the selected reconnection is a
    property of the strand geometry, not of row order.
    """
    t_prev = (t - 1) % n
    p = u_ext[t]
    v_in = p - u_ext[t_prev][[swap[t_prev], 1 - swap[t_prev]], :]
    keys = []
    for s in (0, 1):
        v_out = u_ext[t + 1][[s, 1 - s], :] - p
        keys.append(float(np.sum(
            np.einsum("ij,ij->i", p, np.cross(v_in, v_out)))))
    return 0 if keys[0] >= keys[1] else 1


def _select_tied_combo(states, u_ext, swap, ties) -> None:
    """Joint tie resolution for loops in the real subspace.

    There the correlation term vanishes and the phase sits at 0 or pi,
    so the decomposition reproduces the overlap-route phase to
    rounding for the right set of crossing choices while the others
    pick up corner-cut solid angle; score every combination of the
    tied steps by that consistency and keep the winner. The margin is
    orders of magnitude, so the selection is stable. Mutates swap.
    """
    gamma = discrete_geometric_phase(states)
    best_miss, best_bits = np.inf, 0
    for bits in range(2 ** ties.size):
        for j, t in enumerate(ties):
            swap[t] = (bits >> j) & 1
        positions, end_parity = _matched_positions(u_ext, swap)
        raw = _rigid_raw(positions, end_parity == 0)
        miss = abs(wrap_pi(
            wrap_pi(-0.5 * raw) + _gamma_correlation(positions) - gamma))
        if miss < best_miss:
            best_miss, best_bits = miss, bits
    for j, t in enumerate(ties):
        swap[t] = (best_bits >> j) & 1


# ---- solid angle and the correlation correction ----

def solid_angle(path) -> float:
    """Oriented solid angle of a closed path of unit vectors.

    Midpoint-weighted azimuth increments: sum of (1 - cos th_mid) dphi
    with dphi wrapped to (-pi, pi]. The raw sum is reduced mod 4 pi
    into (-2 pi, 2 pi]. Counterclockwise around +z is positive.
    """
    p = np.asarray(path, dtype=float)
    if p.ndim != 2 or p.shape[1] != 3 or p.shape[0] < 3:
        raise InputError(f"need a (M, 3) path, got {p.shape}")
    norms = np.linalg.norm(p, axis=1)
    if np.max(np.abs(norms - 1.0)) > 1e-9:
        raise InputError("path points must be unit vectors")
    p = p / norms[:, None]
    if np.linalg.norm(p[0] - p[-1]) > 1e-9:
        raise NotClosedError("path does not return to its start")
    dots = np.sum(p[:-1] * p[1:], axis=1)
    if dots.min() < np.cos(STEP_MAX_STAR):
        raise StepTooCoarseError("path step exceeds the great-circle bound")
    theta = np.arccos(np.clip(p[:, 2], -1.0, 1.0))
    phi = np.arctan2(p[:, 1], p[:, 0])
    dphi = np.array([wrap_pi(d) for d in np.diff(phi)])
    weight = 1.0 - np.cos(0.5 * (theta[:-1] + theta[1:]))
    raw = float(np.sum(weight * dphi))
    r = raw % (4.0 * np.pi)
    if r > 2.0 * np.pi:
        r -= 4.0 * np.pi
    return r


def _solid_angle_raw(path: np.ndarray) -> float:
    """Unreduced accumulator of solid_angle (same quadrature)."""
    theta = np.arccos(np.clip(path[:, 2], -1.0, 1.0))
    phi = np.arctan2(path[:, 1], path[:, 0])
    dphi = np.array([wrap_pi(d) for d in np.diff(phi)])
    weight = 1.0 - np.cos(0.5 * (theta[:-1] + theta[1:]))
    return float(np.sum(weight * dphi))


def correlation_factor(u1, u2) -> float:
    """Weight of the correlation correction at star distance d.

    d = 1 - u1.u2; the symmetrized-pair squared norm is N^2 = 4 - d,
    and the weight is -(d/N^2) dN^2/dd = d / (4 - d): zero for
    coincident stars, one for antipodal stars.
    """
    u1 = np.asarray(u1, dtype=float)
    u2 = np.asarray(u2, dtype=float)
    d = 1.0 - float(u1 @ u2)
    return d / (4.0 - d)


def _gamma_correlation(positions: np.ndarray) -> float:
    """Correlation part of the phase along matched star paths.

    One half the integral of (u1 x u2) . d(u2 - u1) / (4 - d): the
    weight's 1/d and the relative solid-angle form's 1/d cancel, so
    the integrand stays regular through collisions. Midpoint rule.
    """
    u1 = positions[:, 0, :]
    u2 = positions[:, 1, :]
    cross = np.cross(u1, u2)
    mid_cross = 0.5 * (cross[:-1] + cross[1:])
    rel = u2 - u1
    d_rel = rel[1:] - rel[:-1]
    d = 1.0 - np.sum(u1 * u2, axis=1)
    den = 4.0 - 0.5 * (d[:-1] + d[1:])
    return float(0.5 * np.sum(np.sum(mid_cross * d_rel, axis=1) / den))


# ---- reports ----

@dataclass(frozen=True)
class PhaseReport:
    """Phases of one closed loop.

    gamma: discrete overlap-product phase, in (-pi, pi].
    gamma0: rigid solid-angle part, -Omega/2 wrapped to (-pi, pi].
    gamma_c: correlation correction (unwrapped).
    classification: "Exchange" (stars swap) or "IndividualLoops".
    quantized: 0.0 or pi when the loop lies in a protected subspace
    and the phase lands there within TOL_QUANT; otherwise None.
    """

    gamma: float
    gamma0: float
    gamma_c: float
    classification: str
    quantized: float | None


def _rigid_raw(positions: np.ndarray, individually_closed: bool) -> float:
    """Unreduced swept solid angle of the matched strand paths.

    Two separate closed paths when the strands close individually, one
    concatenated circuit when the closure exchanges them.
    """
    if individually_closed:
        return (_solid_angle_raw(positions[:, 0, :])
                + _solid_angle_raw(positions[:, 1, :]))
    return _solid_angle_raw(np.concatenate(
        [positions[:, 0, :], positions[1:, 1, :]], axis=0))


def gamma_decomposition(traj: StarTrajectory) -> PhaseReport:
    """Both phase routes for a tracked loop, no consistency check."""
    gamma = discrete_geometric_phase(traj.loop)
    raw = _rigid_raw(traj.positions, traj.closure == "identity")
    gamma0 = wrap_pi(-0.5 * raw)
    gamma_c = _gamma_correlation(traj.positions)
    classification = ("Exchange" if traj.closure == "swap"
                      else "IndividualLoops")
    return PhaseReport(gamma=gamma, gamma0=gamma0, gamma_c=gamma_c,
                       classification=classification, quantized=None)


def _batch_quadrupolar(states: np.ndarray, tol: float = 1e-9) -> bool:
    for m in (_SX, _SY, _SZ):
        e = np.einsum("ni,ij,nj->n", np.conj(states), m, states).real
        if float(np.max(np.abs(e))) > tol:
            return False
    return True


def _batch_real_ray(states: np.ndarray, tol: float = 1e-9) -> bool:
    # |<conj psi | psi>| = 1 exactly when psi is a real vector up to
    # a global phase
    v = np.abs(np.sum(states * states, axis=1))
    return float(np.min(v)) >= 1.0 - tol


def classify_and_verify(loop: StateLoop,
                        tol_consistency: float = TOL_CONSISTENCY,
                        tol_quant: float = TOL_QUANT) -> PhaseReport:
    """Track stars, compute both phase routes, assert they agree.

    Raises InconsistentPhasesError when the decomposition misses the
    overlap-product phase by more than tol_consistency (mod 2 pi).
    The quantized field is set only for loops lying entirely in the
    zero-spin or real subspaces, where the phase provably sits at 0 or
    pi.
    """
    traj = track_stars(loop)
    rep = gamma_decomposition(traj)
    miss = abs(wrap_pi(rep.gamma0 + rep.gamma_c - rep.gamma))
    if miss > tol_consistency:
        raise InconsistentPhasesError(
            f"solid-angle + correlation route differs from the overlap "
            f"route by {miss:.2e} (> {tol_consistency:.0e}); "
            f"resample the loop more densely")
    quantized = None
    if _batch_quadrupolar(loop.states) or _batch_real_ray(loop.states):
        g = rep.gamma
        if abs(wrap_pi(g)) <= tol_quant:
            quantized = 0.0
        elif abs(wrap_pi(g - np.pi)) <= tol_quant:
            quantized = float(np.pi)
    return replace(rep, quantized=quantized)


# ---- eigenstate families ----

def morph_loop(alpha: float, n: int = 4096,
               theta_offset: float | None = None) -> StateLoop:
    """Top-band eigenstate loop of the conjugated equatorial family.

    h(theta) = V(alpha)^dag (cos(theta) q_x2-y2 + sin(theta) q_xy)
    V(alpha) with V the interpolating unitary; theta runs over one
    period. The top band is V^dag (z/|z|, 0, 1)/sqrt(2) for
    z = cos(theta) - i sin(theta)/2 (the tests check this against the
    generic eigensolver), so the loop is built in closed form.

    The default grid is the midpoint grid theta_k = 2 pi (k+1/2)/n,
    which stays clear of the parameter values where the two stars of
    this family collide; pass theta_offset to use the shifted grid
    theta_k = theta_offset + 2 pi k/n instead. Steps that straddle a
    collision produce matching ties, resolved by the conventions in
    track_stars; n >= 4096 keeps the decomposition residual of the
    alpha = 1 loop inside TOL_CONSISTENCY.
    """
    if int(n) != n or n < 3:
        raise InputError("need at least 3 samples")
    thetas = 2.0 * np.pi * (np.arange(int(n)) + 0.5) / float(n)
    if theta_offset is not None:
        thetas += float(theta_offset) - np.pi / float(n)
    z = np.cos(thetas) - 0.5j * np.sin(thetas)
    band = np.zeros((int(n), 3), dtype=complex)
    band[:, 0] = z / np.abs(z)
    band[:, 2] = 1.0
    band /= np.sqrt(2.0)
    return StateLoop(band @ np.conj(interpolating_unitary(alpha)))


def eigenfamily_topology(hams, gap_min: float = 1e-6,
                         tol_quant: float = TOL_QUANT) -> tuple:
    """Loop phases (snapped to {0, pi}) of the three eigenstate bands
    of a closed path of quadrupole Hamiltonians.

    hams: (M, 3, 3) Hermitian samples of one period, no repeated
    endpoint. Every sample must be a pure quadrupole combination
    (traceless and orthogonal to all spin components). Band order is
    ascending eigenvalue; a closing gap raises GapClosureError.
    """
    h = np.asarray(hams, dtype=complex)
    if h.ndim != 3 or h.shape[1:] != (3, 3) or h.shape[0] < 3:
        raise InputError(f"need (M, 3, 3) samples, got {h.shape}")
    for k, hk in enumerate(h):
        scale = max(1.0, float(np.linalg.norm(hk)))
        if abs(complex(np.trace(hk))) > 1e-9 * scale:
            raise PhysicsError(f"sample {k} is not traceless")
        for m in (_SX, _SY, _SZ):
            if abs(complex(np.trace(hk @ m))) > 1e-9 * scale:
                raise PhysicsError(
                    f"sample {k} has a spin-dipole component")
    m_count = h.shape[0]
    w = np.empty((m_count, 3))
    v = np.empty((m_count, 3, 3), dtype=complex)
    for k in range(m_count):
        w[k], v[k] = eig_hermitian3(h[k])
    gap_lo = float(np.min(w[:, 1] - w[:, 0]))
    gap_hi = float(np.min(w[:, 2] - w[:, 1]))
    if min(gap_lo, gap_hi) < gap_min:
        raise GapClosureError(
            f"band gap closes to {min(gap_lo, gap_hi):.2e} along the path")
    phases = []
    for band in range(3):
        chain = v[:, :, band]
        o = np.sum(np.conj(chain) * np.roll(chain, -1, axis=0), axis=1)
        small = np.abs(o)
        if float(small.min()) <= EPS_OVERLAP:
            raise OrthogonalNeighborsError(
                f"band {band} overlap vanishes; path sampled too coarsely")
        g = wrap_pi(-float(np.angle(np.prod(o))))
        snapped = 0.0 if abs(g) <= tol_quant else np.pi
        if abs(wrap_pi(g - snapped)) > tol_quant:
            raise InconsistentPhasesError(
                f"band {band} phase {g:.4f} is not within {tol_quant} of "
                f"0 or pi; refine the path sampling")
        phases.append(float(snapped))
    return tuple(phases)
