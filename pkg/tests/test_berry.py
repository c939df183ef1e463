"""Loop phases by both routes, star tracking, and the operator family."""

import numpy as np
import pytest

from qberry.berry import (
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
from qberry.errors import (
    DegeneratePairError,
    InconsistentPhasesError,
    InputError,
    NotClosedError,
    OrthogonalNeighborsError,
    StarCollisionError,
)
from qberry.numerics import eig_hermitian3, wrap_pi
from qberry.operators import (
    interpolating_unitary,
    quadrupolar_hamiltonian,
    quadrupole_ops,
)
from qberry.states import random_quadrupolar, random_real_state

RNG = np.random.default_rng(33550336)


def _real_pair(rng):
    while True:
        a = random_real_state(rng)
        b = random_real_state(rng)
        o = abs(np.vdot(a, b))
        if 1e-2 < o < 1.0 - 1e-2:
            return a, b


# ---- discrete route ----

def test_three_point_geodesic_product_is_minus_one_eighth():
    for _ in range(10):
        a, b = _real_pair(RNG)
        binv = bargmann_invariant(geodesic_loop(a, b, 3).states)
        assert abs(binv - (-0.125)) < 1e-12


@pytest.mark.parametrize("n", [4, 6, 9])
def test_geodesic_product_follows_the_closed_form(n):
    a, b = _real_pair(RNG)
    binv = bargmann_invariant(geodesic_loop(a, b, n).states)
    target = (np.cos(np.pi / n) ** (n - 1)) * np.cos(np.pi - np.pi / n)
    assert abs(binv - target) < 1e-12
    g = discrete_geometric_phase(geodesic_loop(a, b, n))
    assert abs(wrap_pi(g - np.pi)) < 1e-12  # negative real product


def test_geodesic_loop_rejects_degenerate_endpoints():
    a, _ = _real_pair(RNG)
    with pytest.raises(DegeneratePairError):
        geodesic_loop(a, a, 8)
    b = np.array([0.0, 1.0, 0.0], dtype=complex)
    c = np.array([1.0, 0.0, 0.0], dtype=complex)
    with pytest.raises(DegeneratePairError):
        geodesic_loop(b, c, 8)


def test_piecewise_geodesic_loops_quantize_on_real_vertices():
    for _ in range(10):
        verts = [random_real_state(RNG) for _ in range(3)]
        try:
            loop = piecewise_geodesic_loop(verts, per_edge=200)
        except DegeneratePairError:
            continue
        g = discrete_geometric_phase(loop)
        assert min(abs(wrap_pi(g)), abs(wrap_pi(g - np.pi))) < 1e-3


# ---- solid angle ----

def _slerp_arc(u, v, n):
    u = np.asarray(u, float)
    v = np.asarray(v, float)
    ang = np.arccos(np.clip(u @ v, -1.0, 1.0))
    ts = np.linspace(0.0, 1.0, n, endpoint=False)
    return np.stack([(np.sin((1 - t) * ang) * u + np.sin(t * ang) * v)
                     / np.sin(ang) for t in ts])


def _octant_path(n):
    x, y, z = np.identity(3)
    return np.concatenate([_slerp_arc(x, y, n), _slerp_arc(y, z, n),
                           _slerp_arc(z, x, n), [x]])


def test_octant_circuit_subtends_one_eighth_of_the_sphere():
    err = abs(abs(solid_angle(_octant_path(256))) - np.pi / 2.0)
    assert err < 1e-5
    # second-order scheme: doubling the sampling quarters the error
    err_fine = abs(abs(solid_angle(_octant_path(512))) - np.pi / 2.0)
    assert err_fine < 0.3 * err


def test_solid_angle_requires_a_closed_path():
    x, y, _ = np.identity(3)
    with pytest.raises(NotClosedError):
        solid_angle(_slerp_arc(x, y, 16))


def test_correlation_factor_endpoints():
    assert correlation_factor([0, 0, 1], [0, 0, 1]) == pytest.approx(0.0)
    assert correlation_factor([0, 0, 1], [0, 0, -1]) == pytest.approx(1.0)


# ---- the two canonical loop families ----

def test_exchange_loops_carry_phase_pi():
    for _ in range(5):
        psi = random_quadrupolar(RNG, random_phase=True)
        rep = classify_and_verify(exchange_loop(psi, 400))
        assert rep.classification == "Exchange"
        assert rep.quantized == pytest.approx(np.pi)
        assert abs(wrap_pi(rep.gamma - np.pi)) < 1e-3


def test_individual_loops_carry_phase_zero():
    for _ in range(5):
        psi = random_quadrupolar(RNG, random_phase=True)
        rep = classify_and_verify(individual_loop(psi, 400))
        assert rep.classification == "IndividualLoops"
        assert rep.quantized == pytest.approx(0.0)
        assert abs(wrap_pi(rep.gamma)) < 1e-3


def test_exchange_circuit_covers_half_the_sphere():
    psi = random_quadrupolar(RNG)
    traj = track_stars(exchange_loop(psi, 2048))
    assert traj.closure == "swap"
    circuit = np.concatenate([traj.positions[:, 0, :],
                              traj.positions[1:, 1, :]])
    assert abs(abs(solid_angle(circuit)) - 2.0 * np.pi) < 1e-6


def test_tracked_positions_close_on_individual_loops():
    psi = random_quadrupolar(RNG)
    traj = track_stars(individual_loop(psi, 512))
    assert traj.closure == "identity"
    assert np.max(np.abs(traj.positions[-1] - traj.positions[0])) < 1e-12


def test_zero_spin_loops_have_negligible_correlation_term():
    psi = random_quadrupolar(RNG)
    rep = gamma_decomposition(track_stars(exchange_loop(psi, 400)))
    assert abs(rep.gamma_c) < 1e-10
    assert abs(wrap_pi(rep.gamma0 + rep.gamma_c - rep.gamma)) < 5e-3


def test_star_axis_of_matches_the_tracked_pair():
    psi = random_quadrupolar(RNG)
    axis = star_axis_of(psi)
    u = track_stars(individual_loop(psi, 64)).positions[0]
    assert min(np.linalg.norm(u[0] - axis), np.linalg.norm(u[0] + axis)) < 1e-9


# ---- interpolated operator family ----

MORPH_TABLE = [
    (0.0, "Exchange"),
    (0.2, "Exchange"),
    (0.5, "Exchange"),
    (0.99, "Exchange"),
    (1.0, "IndividualLoops"),
]


@pytest.mark.parametrize("alpha,expected", MORPH_TABLE)
def test_morph_classification_table(alpha, expected):
    rep = classify_and_verify(morph_loop(alpha, 4096))
    assert rep.classification == expected
    assert abs(wrap_pi(rep.gamma - np.pi)) < 1e-3  # phase stays pi throughout


def test_morph_loop_states_are_top_band_eigenvectors():
    q = quadrupole_ops()
    for alpha in (0.0, 0.37, 1.0):
        n = 64
        loop = morph_loop(alpha, n)
        v = interpolating_unitary(alpha)
        thetas = 2.0 * np.pi * (np.arange(n) + 0.5) / n
        for k in range(0, n, 7):
            h0 = (np.cos(thetas[k]) * q["x2-y2"]
                  + np.sin(thetas[k]) * q["xy"])
            h = v.conj().T @ h0 @ v
            w, vecs = eig_hermitian3(h)
            top = vecs[:, 2]
            assert 1.0 - abs(np.vdot(top, loop.states[k])) < 1e-10


def test_morph_collision_grid_raises():
    # the shifted grid starting at zero lands exactly on a star
    # collision of the endpoint family
    with pytest.raises(StarCollisionError):
        track_stars(morph_loop(1.0, 4096, theta_offset=0.0))


def test_morph_coarse_sampling_fails_loudly_not_wrongly():
    # at 1024 samples the two routes disagree beyond tolerance for the
    # endpoint loop; the check must raise instead of reporting junk
    with pytest.raises(InconsistentPhasesError):
        classify_and_verify(morph_loop(1.0, 1024))


def test_morph_loop_validates_sample_count():
    with pytest.raises(InputError):
        morph_loop(0.5, 2)


# ---- operator path topology ----

def test_double_angle_operator_path_has_two_pi_bands():
    q = quadrupole_ops()
    n = 256
    half = np.pi * np.arange(n) / n  # one period is half a turn
    hams = np.stack([np.cos(2 * t) * q["x2-y2"] + np.sin(2 * t) * q["xy"]
                     for t in half])
    phases = eigenfamily_topology(hams, gap_min=1e-3)
    count = sum(1 for p in phases if abs(wrap_pi(p - np.pi)) < 1e-6)
    assert count == 2


def test_full_turn_doubles_the_winding_and_clears_the_bands():
    q = quadrupole_ops()
    n = 512
    grid = 2.0 * np.pi * np.arange(n) / n
    hams = np.stack([np.cos(2 * t) * q["x2-y2"] + np.sin(2 * t) * q["xy"]
                     for t in grid])
    phases = eigenfamily_topology(hams, gap_min=1e-3)
    assert all(abs(wrap_pi(p)) < 1e-6 for p in phases)


# ---- loop container ----

def test_state_loop_rejects_orthogonal_neighbors():
    e0 = np.array([0.0, 1.0, 0.0], dtype=complex)
    ep = np.array([1.0, 0.0, 0.0], dtype=complex)
    mix = np.array([1.0, 1.0, 0.0], dtype=complex) / np.sqrt(2.0)
    with pytest.raises(OrthogonalNeighborsError):
        StateLoop(np.stack([e0, ep, mix]))
