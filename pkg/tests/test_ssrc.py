import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import dict_distance, random_orthonormal_pair, ssrc_oracle
from ssrc_bqc.fock import fock_in_mode
from ssrc_bqc.modes import ModeError, ModeVector
from ssrc_bqc.ssrc import (
    GateSpec,
    SSRCError,
    SSRCState,
    apply_gate,
    binomial_state,
    coherent_limit_exact,
    cv_to_ssrc,
    gate_unitary,
    jordan_schwinger,
    number_state,
    poisson_amplitude,
    spin_coherent,
    spin_coherent_mode,
    ssrc_to_cv,
    ssrc_to_fock,
)


def _random_ssrc(N, rng):
    c = rng.normal(size=N + 1) + 1j * rng.normal(size=N + 1)
    return SSRCState(N, c / np.linalg.norm(c))


def test_operators_n1():
    # basis (|0>_A|1>_R, |1>_A|0>_R), so Jz = -sigma_z/2 and Jy = -sigma_y/2
    ops = jordan_schwinger(1)
    assert np.allclose(ops.jx, [[0, 0.5], [0.5, 0]])
    assert np.allclose(ops.jy, [[0, 0.5j], [-0.5j, 0]])
    assert np.allclose(ops.jz, [[-0.5, 0], [0, 0.5]])


def test_n0_is_trivial():
    ops = jordan_schwinger(0)
    assert ops.jx.shape == (1, 1)
    assert np.allclose(ops.casimir(), 0)


@pytest.mark.parametrize("N", [1, 2, 5, 12, 20])
def test_algebra(N):
    ops = jordan_schwinger(N)
    for a, b, c in ((ops.jx, ops.jy, ops.jz), (ops.jy, ops.jz, ops.jx), (ops.jz, ops.jx, ops.jy)):
        assert np.max(np.abs(a @ b - b @ a - 1j * c)) < 1e-10
    j = N / 2
    assert np.max(np.abs(ops.casimir() - j * (j + 1) * np.eye(N + 1))) < 1e-9
    for m in (ops.jx, ops.jy, ops.jz):
        assert np.allclose(m, m.conj().T)


@pytest.mark.parametrize("kind", ["rotation", "kerr"])
@pytest.mark.parametrize("axis", ["x", "y", "z"])
def test_gates_unitary_and_invertible(kind, axis):
    N = 6
    u = gate_unitary(N, GateSpec(kind, axis, 0.37))
    assert np.max(np.abs(u @ u.conj().T - np.eye(N + 1))) < 1e-12
    s = _random_ssrc(N, np.random.default_rng(0))
    back = apply_gate(apply_gate(s, GateSpec(kind, axis, 0.37)), GateSpec(kind, axis, -0.37))
    assert np.max(np.abs(back.c - s.c)) < 1e-12


def test_rotation_by_2pi_on_odd_n_flips_sign():
    s = _random_ssrc(3, np.random.default_rng(1))
    out = apply_gate(s, GateSpec("rotation", "x", 2 * math.pi))
    assert np.allclose(out.c, -s.c)


def test_kerr_z_phases():
    s = SSRCState(2, np.ones(3) / math.sqrt(3))
    out = apply_gate(s, GateSpec("kerr", "z", 0.25))
    # Jz eigenvalues -1, 0, 1
    expected = np.exp(1j * np.array([1.0, 0.0, 1.0])) / math.sqrt(3)
    assert np.allclose(out.c, expected)


def test_apply_gate_rejects_unnormalized():
    with pytest.raises(SSRCError):
        apply_gate(SSRCState(1, [1, 1]), GateSpec("rotation", "x", 0.1))


def test_gate_spec_validation():
    with pytest.raises(SSRCError):
        GateSpec("squeeze", "x", 0.1)
    with pytest.raises(SSRCError):
        GateSpec("rotation", "w", 0.1)
    with pytest.raises(SSRCError):
        GateSpec("kerr", "z", float("nan"))


@pytest.mark.parametrize("N", [1, 2, 3])
@pytest.mark.parametrize("dim", [2, 3, 4])
def test_ssrc_to_fock_matches_term_oracle(N, dim):
    rng = np.random.default_rng(7 * N + dim)
    s = _random_ssrc(N, rng)
    q, w = random_orthonormal_pair(dim, rng)
    got = ssrc_to_fock(s, ModeVector(q), ModeVector(w)).as_dict()
    assert dict_distance(got, ssrc_oracle(s.c, q, w)) < 1e-12


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 4), st.integers(0, 2**31))
def test_ssrc_to_fock_is_isometric(N, seed):
    rng = np.random.default_rng(seed)
    s = _random_ssrc(N, rng)
    q, w = random_orthonormal_pair(3, rng)
    assert ssrc_to_fock(s, ModeVector(q), ModeVector(w)).is_normalized()


def test_ssrc_to_fock_requires_orthogonal():
    with pytest.raises(ModeError):
        ssrc_to_fock(number_state(1, 1), ModeVector([1, 0]), ModeVector([0.6, 0.8]))


def test_binomial_is_fock_in_mode():
    rng = np.random.default_rng(2)
    q, w = random_orthonormal_pair(3, rng)
    u = (0.6, 0.8j)
    a = ssrc_to_fock(binomial_state(3, *u), ModeVector(q), ModeVector(w))
    b = fock_in_mode(ModeVector(u[0] * q + u[1] * w), 3)
    assert dict_distance(a.as_dict(), b.as_dict()) < 1e-12


@pytest.mark.parametrize("theta,phi", [(0.0, 0.0), (0.4, 1.1), (math.pi / 2, -0.3), (2.5, 2.0)])
def test_spin_coherent_is_rotated_mode(theta, phi):
    N = 4
    s = spin_coherent(N, theta, phi)
    u = binomial_state(N, *spin_coherent_mode(theta, phi))
    assert abs(abs(np.vdot(u.c, s.c)) - 1) < 1e-12


def test_cv_round_trip_and_json():
    s = _random_ssrc(3, np.random.default_rng(5))
    assert np.array_equal(cv_to_ssrc(ssrc_to_cv(s)).c, s.c)
    t = SSRCState.from_json(json.loads(json.dumps(s.to_json())))
    assert np.array_equal(t.c, s.c)


def test_state_validation():
    with pytest.raises(SSRCError):
        SSRCState(2, [1, 0])
    with pytest.raises(SSRCError):
        SSRCState(0, [0]).normalize()


def test_coherent_limit_frozen_value():
    # sqrt(100) * 0.1 * 0.99**49.5
    assert abs(coherent_limit_exact(100, 1.0, 1) - 10 * 0.1 * 0.99**49.5) < 1e-14
    assert abs(coherent_limit_exact(100, 1.0, 1) - 0.60805) < 1e-5


def test_coherent_limit_matches_direct_formula():
    alpha = 0.7 * np.exp(0.4j)
    for k in range(6):
        direct = (
            math.sqrt(math.comb(20, k))
            * (alpha / math.sqrt(20)) ** k
            * (1 - abs(alpha) ** 2 / 20) ** ((20 - k) / 2)
        )
        assert abs(coherent_limit_exact(20, alpha, k) - direct) < 1e-14


def test_coherent_limit_normalized():
    total = sum(abs(coherent_limit_exact(30, 1.3, k)) ** 2 for k in range(31))
    assert abs(total - 1) < 1e-12


def test_coherent_limit_errors():
    with pytest.raises(SSRCError):
        coherent_limit_exact(4, 2.0, 0)
    with pytest.raises(SSRCError):
        coherent_limit_exact(4, 1.0, 5)


def test_poisson():
    assert abs(poisson_amplitude(2.0, 0) - math.exp(-2)) < 1e-15
    assert abs(poisson_amplitude(1.0, 3) - math.exp(-0.5) / math.sqrt(6)) < 1e-15
    assert poisson_amplitude(0, 0) == 1
    assert poisson_amplitude(0, 2) == 0
