"""Star finding, reconstruction, pair geometry, and the symmetrized
two-qubit embedding."""

import numpy as np
import pytest

from qberry.majorana import (
    StarSet,
    are_antipodal,
    majorana_polynomial,
    mirror_pair_check,
    star_at_infinity,
    star_from_root,
    star_from_unit,
    star_vectors_of_states,
    stars_from_state,
    state_from_stars,
    symmetrized_pair_norm_sq,
    symmetrized_two_qubit,
)
from qberry.states import (
    overlap,
    random_quadrupolar,
    random_real_state,
    random_state,
)

RNG = np.random.default_rng(90210)

E_PLUS = np.array([1.0, 0.0, 0.0], dtype=complex)
E_ZERO = np.array([0.0, 1.0, 0.0], dtype=complex)
E_MINUS = np.array([0.0, 0.0, 1.0], dtype=complex)


def _ray_equal(a, b, tol=1e-12):
    return 1.0 - abs(overlap(a, b)) < tol


# ---- single stars ----

def test_star_from_root_covers_the_sphere():
    north = star_from_root(0.0)
    assert north.theta == pytest.approx(0.0, abs=1e-15)
    equator = star_from_root(1.0)
    assert equator.theta == pytest.approx(np.pi / 2.0)
    assert equator.phi == pytest.approx(0.0, abs=1e-15)
    south = star_at_infinity()
    assert south.theta == pytest.approx(np.pi)


def test_star_unit_vector_roundtrip():
    for _ in range(100):
        v = RNG.standard_normal(3)
        v /= np.linalg.norm(v)
        s = star_from_unit(v)
        np.testing.assert_allclose(s.unit_vector, v, atol=1e-12)


# ---- stars of states ----

def test_basis_state_stars():
    ss = stars_from_state(E_ZERO)
    thetas = sorted(s.theta for s in ss.stars)
    assert thetas == pytest.approx([0.0, np.pi])  # the two poles
    both_north = stars_from_state(E_PLUS)
    assert all(s.theta == pytest.approx(0.0, abs=1e-15)
               for s in both_north.stars)
    both_south = stars_from_state(E_MINUS)
    assert all(s.theta == pytest.approx(np.pi) for s in both_south.stars)


def test_polynomial_roots_are_the_stars():
    for _ in range(50):
        psi = random_state(RNG)
        coeffs = majorana_polynomial(psi)
        rs = np.roots(coeffs)  # np.roots as an independent oracle
        got = sorted(stars_from_state(psi).stars, key=lambda s: s.theta)
        ref = sorted((star_from_root(complex(r)) for r in rs),
                     key=lambda s: s.theta)
        for g, r in zip(got, ref):
            np.testing.assert_allclose(g.unit_vector, r.unit_vector,
                                       atol=1e-8)


def test_state_reconstruction_roundtrip():
    for _ in range(200):
        psi = random_state(RNG)
        back = state_from_stars(stars_from_state(psi))
        assert _ray_equal(psi, back, tol=1e-10)


def test_reconstruction_handles_stars_at_infinity():
    ss = StarSet(stars=(star_from_unit([0.0, 0.0, 1.0]), star_at_infinity()))
    assert _ray_equal(state_from_stars(ss), E_ZERO)


def test_batch_star_vectors_agree_with_scalar_path():
    states = np.stack([random_state(RNG) for _ in range(40)])
    batch = star_vectors_of_states(states)
    assert batch.shape == (40, 2, 3)
    for k in range(40):
        scalar = stars_from_state(states[k]).unit_vectors()
        # same pair, possibly listed in the other order
        direct = np.max(np.abs(batch[k] - scalar))
        swapped = np.max(np.abs(batch[k] - scalar[::-1]))
        assert min(direct, swapped) < 1e-10


# ---- pair geometry ----

def test_zero_spin_states_have_antipodal_stars():
    for _ in range(200):
        ss = stars_from_state(random_quadrupolar(RNG, random_phase=True))
        assert are_antipodal(ss)
        u = ss.unit_vectors()
        assert float(u[0] @ u[1]) <= -1.0 + 1e-9


def test_real_states_have_mirror_star_pairs():
    # conjugate Majorana roots: reflection through the x-z plane,
    # with both-real roots (stars in the plane) as the boundary case
    for _ in range(200):
        ss = stars_from_state(random_real_state(RNG))
        assert mirror_pair_check(ss)


def test_generic_states_are_neither():
    hits = 0
    for _ in range(50):
        ss = stars_from_state(random_state(RNG))
        hits += int(are_antipodal(ss) or mirror_pair_check(ss))
    assert hits == 0


# ---- symmetrized two-qubit embedding ----

def test_pair_purity_half_for_antipodal_one_for_coincident():
    for _ in range(100):
        ss = stars_from_state(random_quadrupolar(RNG))
        _, purity = symmetrized_two_qubit(ss)
        assert abs(purity - 0.5) < 1e-10
    star = star_from_unit([0.6, 0.0, 0.8])
    _, purity = symmetrized_two_qubit(StarSet(stars=(star, star)))
    assert abs(purity - 1.0) < 1e-12


def test_symmetrized_norm_interpolates_between_the_extremes():
    # raw unnormalized pair: 3 + u1.u2, so 4 coincident, 2 antipodal
    star = star_from_unit([0.0, 0.0, 1.0])
    assert symmetrized_pair_norm_sq(StarSet(stars=(star, star))) == (
        pytest.approx(4.0))
    anti = StarSet(stars=(star, star_from_unit([0.0, 0.0, -1.0])))
    assert symmetrized_pair_norm_sq(anti) == pytest.approx(2.0)
    for _ in range(50):
        u1 = RNG.standard_normal(3)
        u2 = RNG.standard_normal(3)
        u1 /= np.linalg.norm(u1)
        u2 /= np.linalg.norm(u2)
        ss = StarSet(stars=(star_from_unit(u1), star_from_unit(u2)))
        assert symmetrized_pair_norm_sq(ss) == (
            pytest.approx(3.0 + float(u1 @ u2), abs=1e-12))


def test_star_set_matches_is_order_insensitive():
    a = star_from_unit([1.0, 0.0, 0.0])
    b = star_from_unit([0.0, 1.0, 0.0])
    assert StarSet(stars=(a, b)).matches(StarSet(stars=(b, a)))
