"""State constructors, the zero-spin test, and canonical gauge."""

import numpy as np
import pytest

from qberry.errors import NotNormalizedError, NotQuadrupolarError
from qberry.states import (
    angles_of_quadrupolar,
    as_state,
    canonical_quadrupolar,
    gauge_fix_quadrupolar,
    is_quadrupolar,
    normalize,
    overlap,
    quadrupolar_from_angles,
    quadrupolar_from_axis,
    random_quadrupolar,
    random_real_state,
    random_state,
    spin_expectation,
)

RNG = np.random.default_rng(7011)

E_PLUS = np.array([1.0, 0.0, 0.0], dtype=complex)
E_ZERO = np.array([0.0, 1.0, 0.0], dtype=complex)


def _ray_defect(a, b):
    # 1 - |<a|b>|: zero iff equal rays, quadratic near coincidence so
    # it does not amplify last-ulp rounding the way a chordal distance would
    return 1.0 - abs(overlap(a, b))


# ---- construction and validation ----

def test_as_state_accepts_normalized_rejects_otherwise():
    as_state(E_ZERO)
    with pytest.raises(NotNormalizedError):
        as_state([1.0, 1.0, 0.0])
    with pytest.raises(NotNormalizedError):
        as_state([0.0, 0.0, 0.0])


def test_normalize_produces_unit_vectors():
    for _ in range(20):
        z = RNG.standard_normal(3) + 1j * RNG.standard_normal(3)
        assert abs(np.linalg.norm(normalize(z)) - 1.0) < 1e-14


# ---- zero-spin membership ----

def test_basis_states_split_as_expected():
    assert is_quadrupolar(E_ZERO)
    assert not is_quadrupolar(E_PLUS)
    assert np.max(np.abs(spin_expectation(E_ZERO))) < 1e-15
    np.testing.assert_allclose(spin_expectation(E_PLUS), [0.0, 0.0, 1.0],
                               atol=1e-15)


def test_random_quadrupolar_states_have_zero_spin():
    for _ in range(100):
        psi = random_quadrupolar(RNG, random_phase=True)
        assert is_quadrupolar(psi)
        assert np.max(np.abs(spin_expectation(psi))) < 1e-12


def test_real_states_are_quadrupolar_after_nothing_at_all():
    # real rays sit in the image of the zero-spin subspace only after
    # the basis change; as raw spin states they generally carry spin
    found_spinful = False
    for _ in range(20):
        psi = random_real_state(RNG)
        assert np.max(np.abs(psi.imag)) == 0.0
        if not is_quadrupolar(psi):
            found_spinful = True
    assert found_spinful


# ---- angle parametrization ----

def test_angles_roundtrip_on_random_states():
    for _ in range(200):
        psi = random_quadrupolar(RNG, random_phase=True)
        ang = angles_of_quadrupolar(psi)
        back = quadrupolar_from_angles(ang.theta, ang.phi)
        assert _ray_defect(psi, back) < 1e-12


def test_axis_construction_matches_angles():
    for _ in range(100):
        theta = float(RNG.uniform(0.05, np.pi - 0.05))
        phi = float(RNG.uniform(0.0, 2.0 * np.pi))
        psi = quadrupolar_from_angles(theta, phi)
        ang = angles_of_quadrupolar(psi)
        assert abs(ang.theta - theta) < 1e-12
        assert abs(np.angle(np.exp(1j * (ang.phi - phi)))) < 1e-12


def test_quadrupolar_from_axis_is_normalized_and_zero_spin():
    for _ in range(50):
        v = RNG.standard_normal(3)
        psi = quadrupolar_from_axis(v / np.linalg.norm(v))
        assert abs(np.linalg.norm(psi) - 1.0) < 1e-14
        assert is_quadrupolar(psi)


# ---- canonical gauge ----

def test_canonical_gauge_makes_overlaps_real():
    # middle component real and nonnegative, ends conjugate-opposite;
    # overlaps of two such states then have no imaginary part
    for _ in range(100):
        a = canonical_quadrupolar(random_quadrupolar(RNG, random_phase=True))
        b = canonical_quadrupolar(random_quadrupolar(RNG, random_phase=True))
        assert abs(a[1].imag) < 1e-15 and a[1].real >= 0.0
        assert abs(a[2] + np.conj(a[0])) < 1e-14
        assert abs(overlap(a, b).imag) < 1e-13


def test_gauge_fix_restores_the_canonical_representative():
    for _ in range(50):
        psi = random_quadrupolar(RNG)
        rotated = psi * np.exp(1j * RNG.uniform(0.0, 2.0 * np.pi))
        fixed = gauge_fix_quadrupolar(rotated)
        assert np.max(np.abs(fixed - canonical_quadrupolar(psi))) < 1e-12


def test_canonical_rejects_spinful_states():
    with pytest.raises(NotQuadrupolarError):
        canonical_quadrupolar(E_PLUS)


# ---- random draws ----

def test_random_state_is_normalized():
    for _ in range(20):
        assert abs(np.linalg.norm(random_state(RNG)) - 1.0) < 1e-14
