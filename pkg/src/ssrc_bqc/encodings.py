"""Cat-code states seen as Fock states in opposite-phase modes.

Modes are written in the two-dimensional basis ``(a_(N), b_(N))``, index 0
being ``a_(N)``.
"""

import math

import numpy as np

from .extraction import ExtractionResult, SiteLayout, project_bqc
from .fock import fock_in_mode
from .modes import ModeVector, mode_overlap

ORTHO_TOL = 1e-12


class EncodingError(ValueError):
    pass


def _check_alpha(N: int, alpha: complex) -> float:
    a2 = abs(complex(alpha)) ** 2
    if N < 1:
        raise EncodingError("N must be positive")
    if a2 > N * (1 + 1e-12):
        raise EncodingError(f"|alpha|^2 = {a2} exceeds N = {N}")
    return min(a2, float(N))


def plus_minus_modes(N: int, alpha: complex) -> tuple[ModeVector, ModeVector]:
    """``b_+^+ = sqrt(1-|a|^2/N) b^+ + (a/sqrt N) a^+`` and ``b_-^+`` with the sign flipped."""
    a2 = _check_alpha(N, alpha)
    keep = math.sqrt(1 - a2 / N)
    shift = complex(alpha) / math.sqrt(N)
    return ModeVector([shift, keep]), ModeVector([-shift, keep])


def fock_overlap(N: int, alpha: complex) -> float:
    """``<N|_+ |N>_- = (1 - 2|alpha|^2/N)^N``."""
    a2 = _check_alpha(N, alpha)
    return (1 - 2 * a2 / N) ** N


def fock_overlap_gaussian(alpha: complex) -> float:
    """Coherent-state value ``exp(-2|alpha|^2)``."""
    return math.exp(-2 * abs(complex(alpha)) ** 2)


def cat_normalization(N: int, alpha: complex, sign: int) -> float:
    """Normalization ``2(1 +/- Re overlap)`` of ``|N>_+ +/- |N>_-``."""
    if sign not in (1, -1):
        raise EncodingError("sign must be +1 or -1")
    return 2 * (1 + sign * fock_overlap(N, alpha))


def overlap_rows(N: int, alpha_sq_grid) -> list[dict]:
    rows = []
    for a2 in alpha_sq_grid:
        alpha = math.sqrt(a2)
        rows.append(
            {
                "N": N,
                "alpha_sq": float(a2),
                "overlap_exact": fock_overlap(N, alpha),
                "overlap_gaussian_approx": fock_overlap_gaussian(alpha),
            }
        )
    return rows


def orthogonal_embedding(N: int, layout: SiteLayout) -> np.ndarray:
    """Isometry ``(2N, 2)`` taking ``(a_(N), b_(N))`` into site coordinates.

    At ``|alpha|^2 = N/2`` (alpha real) it sends ``b_+`` to ``sum_i b_i(0)/sqrt N``
    and ``b_-`` to ``sum_i b_i(1)/sqrt N``.
    """
    bp, bm = plus_minus_modes(N, math.sqrt(N / 2))
    pm = np.stack([bp.coeffs, bm.coeffs], axis=1)
    targets = np.zeros((layout.n_modes, 2), dtype=np.complex128)
    targets[0::2, 0] = 1 / math.sqrt(N)
    targets[1::2, 1] = 1 / math.sqrt(N)
    return targets @ pm.conj().T


def cat_to_bqc(N: int, sign: int, layout: SiteLayout | None = None, cap: int | None = None) -> ExtractionResult:
    """Extract the NOON state ``(|N>_+ |0>_- +/- |0>_+ |N>_-)/sqrt 2``.

    Uses the orthogonal point ``|alpha|^2 = N/2`` with real alpha; the result
    is the GHZ state ``(|0..0> +/- |1..1>)/sqrt 2``.
    """
    if N < 2:
        raise EncodingError("cat extraction needs N >= 2")
    if sign not in (1, -1):
        raise EncodingError("sign must be +1 or -1")
    layout = layout or SiteLayout(N)
    if layout.N != N:
        raise EncodingError("layout size must equal N")
    bp, bm = plus_minus_modes(N, math.sqrt(N / 2))
    if abs(mode_overlap(bp, bm)) > ORTHO_TOL:
        raise EncodingError("b_+ and b_- are not orthogonal")
    embed = orthogonal_embedding(N, layout)
    sp = ModeVector(embed @ bp.coeffs)
    sm = ModeVector(embed @ bm.coeffs)
    noon = (fock_in_mode(sp, N, cap=cap) + sign * fock_in_mode(sm, N, cap=cap)) / math.sqrt(2)
    return project_bqc(noon, layout)
