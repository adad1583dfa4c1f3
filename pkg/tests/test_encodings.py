import math

import numpy as np
import pytest

from ssrc_bqc.bqc import entanglement_entropy, ghz_state, phase_aligned_distance
from ssrc_bqc.encodings import (
    EncodingError,
    cat_normalization,
    cat_to_bqc,
    fock_overlap,
    fock_overlap_gaussian,
    orthogonal_embedding,
    overlap_rows,
    plus_minus_modes,
)
from ssrc_bqc.extraction import SiteLayout
from ssrc_bqc.fock import fock_in_mode, inner


@pytest.mark.parametrize("N", [1, 2, 3, 4])
@pytest.mark.parametrize("a2_frac", [0.0, 0.1, 0.5, 0.9, 1.0])
def test_overlap_closed_form(N, a2_frac):
    alpha = math.sqrt(a2_frac * N)
    bp, bm = plus_minus_modes(N, alpha)
    direct = inner(fock_in_mode(bp, N), fock_in_mode(bm, N))
    assert abs(direct - fock_overlap(N, alpha)) < 1e-12


def test_overlap_zero_at_half():
    for N in range(1, 8):
        # only the rounding of sqrt(N/2)**2 survives
        assert abs(fock_overlap(N, math.sqrt(N / 2))) < 1e-15


def test_overlap_tends_to_gaussian():
    errs = [abs(fock_overlap(N, 0.8) - fock_overlap_gaussian(0.8)) for N in (10, 100, 1000)]
    assert errs[0] > errs[1] > errs[2]


def test_alpha_too_large():
    with pytest.raises(EncodingError):
        plus_minus_modes(2, 2.0)


def test_cat_normalization():
    assert cat_normalization(2, 1.0, 1) == pytest.approx(2)
    assert cat_normalization(4, 0.0, -1) == 0
    with pytest.raises(EncodingError):
        cat_normalization(2, 1.0, 0)


def test_overlap_rows():
    rows = overlap_rows(2, [0.0, 1.0])
    assert rows[0]["overlap_exact"] == 1
    assert rows[1]["overlap_exact"] == 0
    assert set(rows[0]) == {"N", "alpha_sq", "overlap_exact", "overlap_gaussian_approx"}


@pytest.mark.parametrize("N", [2, 3, 4])
def test_embedding_is_isometry(N):
    e = orthogonal_embedding(N, SiteLayout(N))
    assert np.allclose(e.conj().T @ e, np.eye(2))


@pytest.mark.parametrize("N", [2, 3, 4, 5])
@pytest.mark.parametrize("sign", [1, -1])
def test_cat_gives_ghz(N, sign):
    res = cat_to_bqc(N, sign)
    assert phase_aligned_distance(res.qubits, ghz_state(N, sign)) < 1e-12
    for k in range(1, N):
        assert abs(entanglement_entropy(res.qubits, range(1, k + 1)) - 1) < 1e-9
    assert res.probability == pytest.approx(math.factorial(N) / N**N)


def test_cat_errors():
    with pytest.raises(EncodingError):
        cat_to_bqc(1, 1)
    with pytest.raises(EncodingError):
        cat_to_bqc(3, 1, SiteLayout(2))
