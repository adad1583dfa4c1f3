import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import overlap_by_summation, random_orthonormal_pair
from ssrc_bqc.modes import (
    ModeError,
    ModeVector,
    balanced_decomposition,
    balanced_pair,
    basis_mode,
    canonical_phase,
    mode_overlap,
    orthonormal_complete,
    random_mode,
)


def test_overlap_identity_and_orthogonal():
    assert mode_overlap(basis_mode(3, 0), basis_mode(3, 0)) == 1
    assert mode_overlap(basis_mode(3, 0), basis_mode(3, 1)) == 0


def test_overlap_matches_summation():
    rng = np.random.default_rng(1)
    q, w = random_mode(6, rng), random_mode(6, rng)
    assert abs(mode_overlap(q, w) - overlap_by_summation(q.coeffs, w.coeffs)) < 1e-12


def test_overlap_dim_mismatch():
    with pytest.raises(ModeError):
        mode_overlap(basis_mode(2, 0), basis_mode(3, 0))


complex_vec = st.lists(
    st.tuples(st.floats(-3, 3), st.floats(-3, 3)), min_size=1, max_size=6
)


@given(complex_vec, complex_vec)
def test_overlap_conjugate_symmetric(a, b):
    n = min(len(a), len(b))
    q = ModeVector([complex(*x) for x in a[:n]])
    w = ModeVector([complex(*x) for x in b[:n]])
    assert abs(mode_overlap(q, w) - np.conj(mode_overlap(w, q))) < 1e-12


def test_normalize():
    v = ModeVector([3, 4j]).normalize()
    assert abs(v.norm() - 1) < 1e-12
    with pytest.raises(ModeError):
        ModeVector([0, 0]).normalize()


def test_complete_small_cases():
    out = orthonormal_complete([basis_mode(2, 0)], 2)
    assert np.allclose(out[1].coeffs, [0, 1])

    out = orthonormal_complete([ModeVector([1, 1]).normalize()], 2)
    second = canonical_phase(out[1].coeffs)
    assert np.allclose(second, np.array([1, -1]) / np.sqrt(2))

    out = orthonormal_complete([], 3)
    assert np.allclose(np.stack([v.coeffs for v in out]), np.eye(3))


def test_complete_errors():
    with pytest.raises(ModeError):
        orthonormal_complete([ModeVector([1, 1])], 2)
    with pytest.raises(ModeError):
        orthonormal_complete([basis_mode(1, 0), basis_mode(1, 0)], 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7), st.integers(0, 3), st.integers(0, 2**31))
def test_complete_is_orthonormal(dim, k, seed):
    rng = np.random.default_rng(seed)
    k = min(k, dim)
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    qmat, _ = np.linalg.qr(z)
    partial = [ModeVector(qmat[:, j]) for j in range(k)]
    out = orthonormal_complete(partial, dim)
    mat = np.stack([v.coeffs for v in out], axis=1)
    assert len(out) == dim
    assert np.max(np.abs(mat.conj().T @ mat - np.eye(dim))) < 1e-10
    for j in range(k):
        assert np.array_equal(out[j].coeffs, partial[j].coeffs)


def test_balanced_n1():
    dec = balanced_decomposition(basis_mode(2, 0), basis_mode(2, 1), 1)
    assert np.allclose(dec.to_sites(basis_mode(2, 0)).coeffs, np.array([1, 1]) / np.sqrt(2))
    assert np.allclose(dec.to_sites(basis_mode(2, 1)).coeffs, np.array([1, -1]) / np.sqrt(2))


def test_balanced_recovers_two_site_pair():
    # a_q1 = (b1(0)+b1(1)+b2(0)+b2(1))/2, a_w = (b1(0)-b1(1)+b2(0)-b2(1))/2
    q1, w = balanced_pair(2)
    dec = balanced_decomposition(q1, w, 2)
    assert np.allclose(dec.basis, np.eye(4), atol=1e-12)


@pytest.mark.parametrize("N", [1, 2, 3, 4])
@pytest.mark.parametrize("dim", [None, 9])
def test_balanced_random(N, dim):
    rng = np.random.default_rng(N)
    d = dim or 2 * N
    q, w = random_orthonormal_pair(d, rng)
    dec = balanced_decomposition(ModeVector(q), ModeVector(w), N)
    plus, minus = balanced_pair(N)
    # apply the basis change: site modes times expected coefficients rebuild q, w
    rebuilt_q = dec.site_modes @ plus.coeffs
    rebuilt_w = dec.site_modes @ minus.coeffs
    assert np.max(np.abs(rebuilt_q - ModeVector(q).padded(dec.basis.shape[0]).coeffs)) < 1e-12
    assert np.max(np.abs(rebuilt_w - ModeVector(w).padded(dec.basis.shape[0]).coeffs)) < 1e-12
    b = dec.basis
    assert np.max(np.abs(b @ b.conj().T - np.eye(b.shape[0]))) < 1e-10


def test_balanced_rejects_overlap():
    with pytest.raises(ModeError):
        balanced_decomposition(ModeVector([1, 0]), ModeVector([1, 1]).normalize(), 1)


def test_json_round_trip():
    v = ModeVector([0.6, 0.8j])
    data = json.loads(json.dumps(v.to_json()))
    assert data["dim"] == 2
    assert np.array_equal(ModeVector.from_json(data).coeffs, v.coeffs)


def test_canonical_phase():
    v = ModeVector([0, -1j, 1]).canonical()
    assert v.coeffs[1] == 1
    assert np.allclose(v.coeffs, [0, 1, 1j])
