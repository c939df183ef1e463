"""Acceptance suite: the twelve numbered checks this build must pass.

Every criterion is a standalone function taking a Generator; the
runner seeds criterion k with (seed, k), so a criterion reruns
identically whether it is invoked alone or inside a suite. Results
carry the measured numbers next to their bounds, so a failure is
diagnosable from the report alone, and a criterion that raises is
converted into a failed result instead of killing the run.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .berry import (
    StateLoop,
    bargmann_invariant,
    classify_and_verify,
    correlation_factor,
    discrete_geometric_phase,
    eigenfamily_topology,
    exchange_loop,
    gamma_decomposition,
    geodesic_loop,
    individual_loop,
    morph_loop,
    piecewise_geodesic_loop,
    solid_angle,
    star_axis_of,
    track_stars,
)
from .dynamics import SpinFieldReal, aa_cycle, evolve_closed_form, evolve_numeric
from .errors import GapClosureError, InputError
from .majorana import (
    StarSet,
    star_from_unit,
    star_vectors_of_states,
    stars_from_state,
    state_from_stars,
    symmetrized_pair_norm_sq,
    symmetrized_two_qubit,
)
from .numerics import eig_hermitian3, wrap_pi
from .operators import (
    anti_unitary_theta,
    global_unitary,
    interpolating_unitary,
    quadrupole_ops,
    quadrupolar_hamiltonian,
    triplet_time_reversal,
    unitary_family_projectors,
)
from .states import (
    angles_of_quadrupolar,
    as_state,
    canonical_quadrupolar,
    is_quadrupolar,
    overlap,
    quadrupolar_from_angles,
    random_quadrupolar,
    random_real_state,
    random_state,
    random_unit_vector,
)

_Q_KEYS = ("xy", "yz", "zx", "zz", "x2-y2")
_PI = np.pi


# ---- results ----

@dataclass(frozen=True)
class CriterionResult:
    """Verdict of one numbered criterion.

    checks maps a short key to (measured, bound); the criterion passes
    when every measured value is <= its bound. Checks that are really
    counts (misclassifications etc.) use bound 0.0.
    """

    cid: int
    name: str
    passed: bool
    checks: dict[str, tuple[float, float]]
    note: str = ""

    def line(self) -> str:
        verdict = "pass" if self.passed else "FAIL"
        return f"[{self.cid:2d}] {verdict}  {self.name}"


_NAMES = {
    1: "closed-geodesic overlap product",
    2: "equatorial-family top eigenvalue law",
    3: "zero-spin star antipodality and closed forms",
    4: "real mapping and conjugation symmetries",
    5: "loop phase quantization",
    6: "two-route phase decomposition",
    7: "exchange sweep solid angle",
    8: "eigenstate star-axis orthogonality",
    9: "band phases of closed operator paths",
    10: "spin-field evolution and cyclic phases",
    11: "interpolated family classification",
    12: "symmetrized pair purity",
}


def _result(cid: int, checks: dict, note: str = "") -> CriterionResult:
    passed = all(m <= b for m, b in checks.values())
    return CriterionResult(cid=cid, name=_NAMES[cid], passed=passed,
                           checks=checks, note=note)


def _nondegenerate_real_pair(rng) -> tuple[np.ndarray, np.ndarray]:
    while True:
        a = random_real_state(rng)
        b = random_real_state(rng)
        r = abs(overlap(a, b))
        if 1e-3 < r < 1.0 - 1e-3:
            return a, b


# ---- 1: cyclic overlap product on closed geodesics ----

def criterion_1(rng) -> CriterionResult:
    worst = 0.0
    triangle = 0.0
    for n in range(3, 13):
        target = np.cos(_PI / n) ** (n - 1) * np.cos(_PI - _PI / n)
        for _ in range(5):
            a, b = _nondegenerate_real_pair(rng)
            got = bargmann_invariant(geodesic_loop(a, b, n))
            worst = max(worst, abs(got - target))
            if n == 3:
                triangle = max(triangle, abs(got - (-0.125)))
    return _result(1, {
        "product_error": (worst, 1e-12),
        "triangle_error": (triangle, 1e-12),
    })


# ---- 2: top eigenvalue along the equatorial operator family ----

def criterion_2(rng) -> CriterionResult:
    worst = 0.0
    for th in rng.uniform(0.0, 2.0 * _PI, size=100):
        h = quadrupolar_hamiltonian({"x2-y2": np.cos(th), "xy": np.sin(th)})
        w, _ = eig_hermitian3(h)
        lam = np.sqrt(5.0 + 3.0 * np.cos(2.0 * th)) / (2.0 * np.sqrt(2.0))
        worst = max(worst, abs(float(w[2]) - lam))
    return _result(2, {"eigenvalue_error": (worst, 1e-10)})


# ---- 3: antipodal stars and the angle parametrization ----

def criterion_3(rng) -> CriterionResult:
    worst_dot = -1.0
    worst_axis = 0.0
    worst_ray = 0.0
    for _ in range(1000):
        psi = random_quadrupolar(rng, random_phase=True)
        u = star_vectors_of_states(psi[None, :])[0]
        worst_dot = max(worst_dot, float(u[0] @ u[1]))
        ang = angles_of_quadrupolar(psi)
        half = 0.5 * ang.theta
        axis = np.array([np.sin(half) * np.cos(ang.phi),
                         -np.sin(half) * np.sin(ang.phi),
                         -np.cos(half)])
        worst_axis = max(worst_axis, min(
            float(np.linalg.norm(u[0] - axis)),
            float(np.linalg.norm(u[0] + axis))))
        rebuilt = quadrupolar_from_angles(ang.theta, ang.phi)
        worst_ray = max(worst_ray, 1.0 - abs(overlap(psi, rebuilt)))
    return _result(3, {
        "star_dot_product": (worst_dot, -1.0 + 1e-9),
        "closed_form_axis_error": (worst_axis, 1e-9),
        "angle_roundtrip_ray_error": (worst_ray, 1e-9),
    })


# ---- 4: real image, conjugation fixed points, pair reversal ----

def criterion_4(rng) -> CriterionResult:
    u_map = global_unitary()
    conj_op = anti_unitary_theta()
    reversal = triplet_time_reversal()
    squared_off = 0.0 if np.array_equal(
        conj_op.applied_twice(), np.eye(3, dtype=complex)) else 1.0
    worst_imag = 0.0
    worst_fix = 0.0
    worst_flip = 0.0
    converse = 1.0
    for _ in range(1000):
        psi = random_quadrupolar(rng, random_phase=True)
        can = canonical_quadrupolar(psi)
        worst_imag = max(worst_imag, float(np.abs((u_map @ can).imag).max()))
        worst_fix = max(worst_fix, 1.0 - abs(overlap(psi, conj_op.apply(psi))))
        worst_flip = max(worst_flip,
                         float(np.linalg.norm(reversal.apply(can) + can)))
        gen = random_state(rng)
        if not is_quadrupolar(gen):
            converse = min(converse, 1.0 - abs(overlap(gen, reversal.apply(gen))))
    return _result(4, {
        "conjugation_squared": (squared_off, 0.0),
        "real_image_max_imag": (worst_imag, 1e-12),
        "fixed_ray_error": (worst_fix, 1e-12),
        "reversal_eigen_error": (worst_flip, 1e-12),
        # iff, converse direction: every generic state must keep a
        # visible distance from the flipped-eigenvector condition
        "reversal_converse_margin": (-converse, -1e-9),
    })


# ---- 5: quantization of loop phases ----

def criterion_5(rng) -> CriterionResult:
    def quant_miss(g: float) -> float:
        return min(abs(g), abs(wrap_pi(g - _PI)))

    worst_zero_spin = 0.0
    for _ in range(1000):
        verts = [random_quadrupolar(rng) for _ in range(3)]
        loop = piecewise_geodesic_loop(verts, per_edge=140)
        worst_zero_spin = max(worst_zero_spin,
                              quant_miss(discrete_geometric_phase(loop)))
    worst_real = 0.0
    for _ in range(1000):
        verts = [random_real_state(rng) for _ in range(3)]
        loop = piecewise_geodesic_loop(verts, per_edge=140)
        worst_real = max(worst_real,
                         quant_miss(discrete_geometric_phase(loop)))
    misclass = 0
    worst_pi = 0.0
    worst_null = 0.0
    for _ in range(100):
        psi = random_quadrupolar(rng)
        rep = classify_and_verify(exchange_loop(psi, 400))
        if rep.classification != "Exchange":
            misclass += 1
        worst_pi = max(worst_pi, abs(wrap_pi(rep.gamma - _PI)))
        rep = classify_and_verify(
            individual_loop(psi, 400, axis=random_unit_vector(rng)))
        if rep.classification != "IndividualLoops":
            misclass += 1
        worst_null = max(worst_null, abs(rep.gamma))
    return _result(5, {
        "zero_spin_loop_quant_miss": (worst_zero_spin, 1e-3),
        "real_loop_quant_miss": (worst_real, 1e-3),
        "constructed_misclassifications": (float(misclass), 0.0),
        "exchange_phase_miss": (worst_pi, 1e-3),
        "individual_phase_miss": (worst_null, 1e-3),
    })


# ---- 6: rigid + correlation decomposition against the product ----

def _planar_star_loop(rng, n: int = 400) -> StateLoop:
    """Loop whose two stars ride the x-z great circle at a fixed lag.

    Both stars stay in the mirror plane the whole way round, the
    extreme case of the vanishing-correlation claim for real loops.
    """
    lag = float(rng.uniform(0.5, 2.5))
    t0 = float(rng.uniform(0.0, 2.0 * _PI))
    ts = t0 + 2.0 * _PI * np.arange(n) / n
    states = np.empty((n, 3), dtype=complex)
    for k, t in enumerate(ts):
        s1 = star_from_unit([np.cos(t), 0.0, np.sin(t)])
        s2 = star_from_unit([np.cos(t + lag), 0.0, np.sin(t + lag)])
        states[k] = state_from_stars(StarSet(stars=(s1, s2)))
    return StateLoop(states)


def criterion_6(rng) -> CriterionResult:
    worst_miss = 0.0
    worst_c_zero_spin = 0.0
    worst_c_real = 0.0
    worst_crossing_miss = 0.0

    def decompose(loop: StateLoop) -> tuple[float, float, float]:
        traj = track_stars(loop)
        rep = gamma_decomposition(traj)
        min_plane = float(np.abs(traj.positions[:, :, 1]).min())
        return (abs(wrap_pi(rep.gamma0 + rep.gamma_c - rep.gamma)),
                abs(rep.gamma_c), min_plane)

    for _ in range(200):
        verts = [random_quadrupolar(rng) for _ in range(3)]
        miss, corr, _ = decompose(piecewise_geodesic_loop(verts, per_edge=140))
        worst_miss = max(worst_miss, miss)
        worst_c_zero_spin = max(worst_c_zero_spin, corr)

    # real loops split by whether the stars reach the mirror plane: a
    # plane touching is a genuine star collision in the continuum, and
    # a fixed grid straddling it corrupts the split between the two
    # terms (their sum stays good) at O(step), so the pointwise
    # correlation bound is checked on plane-clear loops and the
    # crossing loops get a sum check plus a refinement check instead
    clear = 0
    crossing = []
    while clear < 150 or len(crossing) < 50:
        verts = [random_real_state(rng) for _ in range(3)]
        loop = piecewise_geodesic_loop(verts, per_edge=250)
        miss, corr, min_plane = decompose(loop)
        if min_plane > 0.05 and clear < 150:
            clear += 1
            worst_miss = max(worst_miss, miss)
            worst_c_real = max(worst_c_real, corr)
        elif min_plane <= 0.05 and len(crossing) < 50:
            crossing.append((verts, corr))
            worst_crossing_miss = max(worst_crossing_miss, miss)

    # the crossing-loop correlation artifact must die off under grid
    # refinement; anything that persists would falsify the claim. The
    # per-loop artifact is O(step) times a factor set by where the
    # grid lands relative to the touching, so the decay is checked on
    # the ensemble mean, which averages the grid phase out.
    coarse_sum = 0.0
    fine_sum = 0.0
    for verts, coarse in crossing[:20]:
        coarse_sum += coarse
        _, fine, _ = decompose(piecewise_geodesic_loop(verts, per_edge=1000))
        fine_sum += fine
    decay = fine_sum / max(coarse_sum, 1e-300)

    for _ in range(30):
        miss, corr, _ = decompose(_planar_star_loop(rng))
        worst_miss = max(worst_miss, miss)
        worst_c_real = max(worst_c_real, corr)

    for _ in range(100):
        psi = random_quadrupolar(rng)
        miss, corr, _ = decompose(exchange_loop(psi, 400))
        worst_miss = max(worst_miss, miss)
        worst_c_zero_spin = max(worst_c_zero_spin, corr)
        miss, corr, _ = decompose(
            individual_loop(psi, 400, axis=random_unit_vector(rng)))
        worst_miss = max(worst_miss, miss)
        worst_c_zero_spin = max(worst_c_zero_spin, corr)

    # correlation weight: analytic d/(4-d) against a central difference
    # of log N^2 through actual star pairs at controlled separation
    worst_beta = 0.0
    step = 1e-5
    for _ in range(100):
        d = rng.uniform(0.05, 1.95)
        u1 = random_unit_vector(rng)
        t = np.cross(u1, random_unit_vector(rng))
        while np.linalg.norm(t) < 1e-3:
            t = np.cross(u1, random_unit_vector(rng))
        t /= np.linalg.norm(t)

        def norm_sq(dd: float) -> float:
            chi = np.arccos(1.0 - dd)
            u2 = np.cos(chi) * u1 + np.sin(chi) * t
            return symmetrized_pair_norm_sq(
                StarSet(stars=(star_from_unit(u1), star_from_unit(u2))))

        fd = -d * (np.log(norm_sq(d + step))
                   - np.log(norm_sq(d - step))) / (2.0 * step)
        chi = np.arccos(1.0 - d)
        beta = correlation_factor(u1, np.cos(chi) * u1 + np.sin(chi) * t)
        worst_beta = max(worst_beta, abs(beta - fd))
    return _result(6, {
        "route_mismatch": (worst_miss, 5e-3),
        "crossing_loop_route_mismatch": (worst_crossing_miss, 5e-3),
        "crossing_correlation_decay": (decay, 0.6),
        "zero_spin_correlation": (worst_c_zero_spin, 1e-10),
        "real_loop_correlation": (worst_c_real, 1e-6),
        "weight_vs_difference": (worst_beta, 1e-6),
    })


# ---- 7: solid angle of the combined exchange circuit ----

def criterion_7(rng) -> CriterionResult:
    worst = 0.0
    not_swapped = 0
    for _ in range(25):
        psi = random_quadrupolar(rng)
        axis_dir = star_axis_of(psi)
        e = np.cross(axis_dir, random_unit_vector(rng))
        while np.linalg.norm(e) < 1e-3:
            e = np.cross(axis_dir, random_unit_vector(rng))
        traj = track_stars(exchange_loop(psi, 4096,
                                         axis=e / np.linalg.norm(e)))
        if traj.closure != "swap":
            not_swapped += 1
            continue
        circuit = np.concatenate([traj.positions[:, 0, :],
                                  traj.positions[1:, 1, :]], axis=0)
        worst = max(worst, abs(abs(solid_angle(circuit)) - 2.0 * _PI))
    return _result(7, {
        "non_exchange_closures": (float(not_swapped), 0.0),
        "solid_angle_error": (worst, 1e-6),
    })


# ---- 8: orthogonal star axes of generic operator eigenstates ----

def criterion_8(rng) -> CriterionResult:
    worst = 0.0
    done = 0
    while done < 200:
        coeffs = dict(zip(_Q_KEYS, rng.standard_normal(5)))
        w, v = eig_hermitian3(quadrupolar_hamiltonian(coeffs))
        if min(w[1] - w[0], w[2] - w[1]) < 1e-3:
            continue
        axes = [star_axis_of(v[:, k]) for k in range(3)]
        for i in range(3):
            for j in range(i + 1, 3):
                worst = max(worst, abs(float(axes[i] @ axes[j])))
        done += 1
    return _result(8, {"axis_dot_product": (worst, 1e-8)})


# ---- 9: band phases around closed operator paths ----

def criterion_9(rng) -> CriterionResult:
    ops = quadrupole_ops()
    basis = np.stack([ops[k] for k in _Q_KEYS])
    grid = 2.0 * _PI * np.arange(512) / 512.0

    def band_pi_count(coeff_rows: np.ndarray) -> int:
        hams = np.einsum("nk,kij->nij", coeff_rows, basis)
        phases = eigenfamily_topology(hams, gap_min=1e-3)
        return sum(1 for p in phases if p > 1.0)

    # one period of the double-angle family is half a turn of its
    # parameter; a full turn would traverse the operator loop twice
    # and wind every pi band back to zero
    half = 0.5 * grid
    double = np.zeros((grid.size, 5))
    double[:, _Q_KEYS.index("x2-y2")] = np.cos(2.0 * half)
    double[:, _Q_KEYS.index("xy")] = np.sin(2.0 * half)
    double_count = band_pi_count(double)

    bad = 0
    done = 0
    attempts = 0
    while done < 50 and attempts < 500:
        attempts += 1
        base = rng.standard_normal(5)
        cos_amp = rng.standard_normal(5)
        sin_amp = rng.standard_normal(5)
        rows = (base[None, :]
                + cos_amp[None, :] * np.cos(grid)[:, None]
                + sin_amp[None, :] * np.sin(grid)[:, None])
        try:
            n_pi = band_pi_count(rows)
        except GapClosureError:
            continue
        if n_pi not in (0, 2):
            bad += 1
        done += 1
    return _result(9, {
        "count_violations": (float(bad), 0.0),
        "paths_unfinished": (float(50 - done), 0.0),
        "double_winding_count_error": (abs(float(double_count - 2)), 0.0),
    })


# ---- 10: closed-form evolution, cyclic returns, phase split ----

def _random_field(rng) -> SpinFieldReal:
    while True:
        a, b, c = rng.standard_normal(3)
        if np.hypot(np.hypot(a, b), c) > 0.1:
            return SpinFieldReal(a=float(a), b=float(b), c=float(c))


def _unit_perp_to(rng, n: np.ndarray) -> np.ndarray:
    while True:
        w = random_unit_vector(rng)
        w = w - float(w @ n) * n
        r = np.linalg.norm(w)
        if r > 1e-3:
            return w / r


def criterion_10(rng) -> CriterionResult:
    worst_prop = 0.0
    worst_return = 0.0
    worst_fit = 0.0
    for _ in range(500):
        fld = _random_field(rng)
        psi0 = random_unit_vector(rng)
        period = 2.0 * _PI / fld.omega
        for tau in rng.uniform(0.0, 4.0 * period, size=4):
            diff = (evolve_closed_form(fld, psi0, float(tau))
                    - evolve_numeric(fld, psi0, float(tau)))
            worst_prop = max(worst_prop, float(np.linalg.norm(diff)))
        back = evolve_closed_form(fld, psi0, period)
        worst_return = max(worst_return,
                           float(np.linalg.norm(back - psi0)))
        ts = np.linspace(0.0, period, 32)
        dist_sq = np.linalg.norm(
            evolve_closed_form(fld, psi0, ts) + psi0[None, :], axis=1) ** 2
        design = np.stack([np.ones_like(ts), np.cos(fld.omega * ts)], axis=1)
        coef, *_ = np.linalg.lstsq(design, dist_sq, rcond=None)
        worst_fit = max(worst_fit,
                        float(np.abs(design @ coef - dist_sq).max()))

    worst_half = 0.0
    for _ in range(100):
        fld = _random_field(rng)
        psi0 = _unit_perp_to(rng, fld.rotation_axis)
        half = evolve_closed_form(fld, psi0, _PI / fld.omega)
        worst_half = max(worst_half, float(np.linalg.norm(half + psi0)))

    u_dag = global_unitary().conj().T
    worst_cyc = 0.0
    worst_dyn = 0.0
    for k in range(60):
        fld = _random_field(rng)
        n = fld.rotation_axis
        if k % 2 == 0:
            w = _unit_perp_to(rng, n)
            expect = _PI
        else:
            w = random_unit_vector(rng)
            while not 0.05 < abs(float(w @ n)) < 0.95:
                w = random_unit_vector(rng)
            expect = 0.0
        cyc = aa_cycle(fld, u_dag @ w.astype(complex))
        geo = wrap_pi(cyc.total_phase - cyc.dynamical_phase)
        worst_cyc = max(worst_cyc, abs(wrap_pi(geo - expect)))
        worst_dyn = max(worst_dyn, abs(cyc.dynamical_phase))
    return _result(10, {
        "closed_form_vs_propagator": (worst_prop, 1e-8),
        "return_error": (worst_return, 1e-10),
        "half_period_flip_error": (worst_half, 1e-10),
        "distance_fit_residual": (worst_fit, 1e-9),
        "cyclic_phase_quant_miss": (worst_cyc, 1e-6),
        "dynamical_phase": (worst_dyn, 1e-10),
    })


# ---- 11: classification along the interpolated family ----

def criterion_11(rng) -> CriterionResult:
    eye = np.eye(3, dtype=complex)
    endpoint0 = float(np.abs(interpolating_unitary(0.0) - eye).max())
    endpoint1 = float(np.abs(interpolating_unitary(1.0)
                             - global_unitary()).max())
    projs = unitary_family_projectors()
    alg = 0.0
    for p in projs:
        alg = max(alg, float(np.abs(p @ p - p).max()))
        alg = max(alg, float(np.abs(p - p.conj().T).max()))
    for i in range(3):
        for j in range(i + 1, 3):
            alg = max(alg, float(np.abs(projs[i] @ projs[j]).max()))
    alg = max(alg, float(np.abs(sum(projs) - eye).max()))

    misclass = 0
    for alpha in (0.0, 0.2, 0.5, 0.75, 0.9, 0.99, 0.999):
        rep = classify_and_verify(morph_loop(alpha))
        if rep.classification != "Exchange":
            misclass += 1
    rep = classify_and_verify(morph_loop(1.0))
    if rep.classification != "IndividualLoops":
        misclass += 1

    # the closed-form band used by morph_loop really is the top
    # eigenvector of the conjugated operator
    band_err = 0.0
    for alpha in (0.0, float(rng.uniform(0.1, 0.9)), 1.0):
        v = interpolating_unitary(alpha)
        for th in rng.uniform(0.0, 2.0 * _PI, size=16):
            h = v.conj().T @ quadrupolar_hamiltonian(
                {"x2-y2": np.cos(th), "xy": np.sin(th)}) @ v
            _, vecs = eig_hermitian3(h)
            z = np.cos(th) - 0.5j * np.sin(th)
            closed = v.conj().T @ (
                np.array([z / abs(z), 0.0, 1.0]) / np.sqrt(2.0))
            band_err = max(band_err,
                           1.0 - abs(complex(np.vdot(vecs[:, 2], closed))))
    return _result(11, {
        "identity_endpoint_error": (endpoint0, 1e-12),
        "real_map_endpoint_error": (endpoint1, 1e-12),
        "projector_algebra_error": (alg, 1e-12),
        "misclassified_alphas": (float(misclass), 0.0),
        "band_closed_form_ray_error": (band_err, 1e-10),
    })


# ---- 12: purity of the symmetrized pair ----

def criterion_12(rng) -> CriterionResult:
    worst_half = 0.0
    for _ in range(200):
        psi = random_quadrupolar(rng, random_phase=True)
        _, purity = symmetrized_two_qubit(stars_from_state(psi))
        worst_half = max(worst_half, abs(purity - 0.5))
    worst_one = 0.0
    for _ in range(20):
        s = star_from_unit(random_unit_vector(rng))
        _, purity = symmetrized_two_qubit(StarSet(stars=(s, s)))
        worst_one = max(worst_one, abs(purity - 1.0))
    _, purity = symmetrized_two_qubit(
        stars_from_state(as_state([1.0, 0.0, 0.0])))
    worst_one = max(worst_one, abs(purity - 1.0))
    return _result(12, {
        "antipodal_purity_error": (worst_half, 1e-10),
        "coincident_purity_error": (worst_one, 1e-10),
    })


# ---- runner ----

_CRITERIA = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
    5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8,
    9: criterion_9, 10: criterion_10, 11: criterion_11, 12: criterion_12,
}

SUITES = {
    "all": tuple(range(1, 13)),
    "quantization": (1, 5, 6, 7, 9),
    "geometry": (2, 3, 4, 8, 12),
    "dynamics": (10,),
    "morph": (11,),
}


def run_criterion(cid: int, seed: int = 0) -> CriterionResult:
    if cid not in _CRITERIA:
        raise InputError(f"no criterion {cid}; valid ids are 1..12")
    rng = np.random.default_rng([int(seed), int(cid)])
    try:
        return _CRITERIA[cid](rng)
    except Exception as exc:  # noqa: BLE001 - reported, not swallowed
        return CriterionResult(
            cid=cid, name=_NAMES[cid], passed=False,
            checks={"exception_raised": (1.0, 0.0)},
            note=f"{type(exc).__name__}: {exc}")


def run_suite(suite: str = "all", seed: int = 0) -> list[CriterionResult]:
    if suite not in SUITES:
        raise InputError(
            f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    return [run_criterion(cid, seed) for cid in SUITES[suite]]
