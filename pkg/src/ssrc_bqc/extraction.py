"""Projection of N-photon states over 2N site modes onto the N-qubit register.

The projector keeps the terms with exactly one photon per site; a surviving
term with the photon of site ``i`` in internal state ``p_i`` becomes the
basis ket ``|x>`` with bit ``x_i = p_i`` and ``x_1`` the most significant.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .bqc import QubitState, product_state
from .config import check_cap
from .fock import FockState, fock_in_mode
from .modes import ModeVector, balanced_pair, site_index
from .ssrc import GateSpec, apply_gate, binomial_state, ssrc_to_fock


class ExtractionError(ValueError):
    pass


@dataclass(frozen=True)
class SiteLayout:
    """N dual-rail sites over 2N modes, ``mode_index(i, p) = 2(i-1) + p``."""

    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ExtractionError("a layout needs at least one site")

    @property
    def n_modes(self) -> int:
        return 2 * self.N

    def mode_index(self, i: int, p: int) -> int:
        if not 1 <= i <= self.N or p not in (0, 1):
            raise ExtractionError(f"no site mode ({i}, {p}) in a {self.N}-site layout")
        return site_index(i, p)


@dataclass(frozen=True, eq=False)
class ExtractionResult:
    qubits: QubitState
    probability: float
    site_params: list | None = field(default=None)

    @property
    def succeeded(self) -> bool:
        return self.probability > 0.0

    def to_json(self) -> dict:
        out = {"probability": self.probability, "qubits": self.qubits.to_json()}
        if self.site_params is not None:
            out["site_params"] = [{"theta": t, "phi": p} for t, p in self.site_params]
        return out


def survivor_filter(state: FockState, layout: SiteLayout) -> FockState:
    """The projected (unnormalized) Fock state: one photon on every site."""
    if state.n_modes != layout.n_modes:
        raise ExtractionError(f"state has {state.n_modes} modes, layout needs {layout.n_modes}")
    if state.is_zero:
        return state
    mask, _ = kernels.KERNELS["survivors"](state.occs, layout.N)
    return FockState(state.n_modes, state.occs[mask], state.amps[mask], state.number_definite)


def project_bqc(state: FockState, layout: SiteLayout) -> ExtractionResult:
    if state.n_modes != layout.n_modes:
        raise ExtractionError(f"state has {state.n_modes} modes, layout needs {layout.n_modes}")
    totals = state.occs.sum(axis=1)
    if state.number_definite not in (None, layout.N) or np.any(totals != layout.N):
        raise ExtractionError(f"projection needs exactly {layout.N} photons")
    amps = np.zeros(2**layout.N, dtype=np.complex128)
    if not state.is_zero:
        mask, index = kernels.KERNELS["survivors"](state.occs, layout.N)
        amps[index[mask]] = state.amps[mask]
    probability = float(np.sum(np.abs(amps) ** 2))
    if probability > 0.0:
        amps = amps / math.sqrt(probability)
    return ExtractionResult(QubitState(layout.N, amps), probability)


def extraction_params(q: ModeVector, layout: SiteLayout) -> list[tuple[float, float, float]]:
    """Per-site ``(theta_k, phi_k, r_k)`` of the product state extracted from ``|N>_q``.

    With ``a_q^+ = sum_k q_k(0) b_k^+(0) + q_k(1) b_k^+(1)`` the extracted
    state is ``sqrt(N!) prod_k r_k (cos theta_k |0> + e^{i phi_k} sin theta_k |1>)``
    up to a global phase, where ``r_k = |(q_k(0), q_k(1))|``,
    ``theta_k = atan2(|q_k(1)|, |q_k(0)|)`` and ``phi_k = arg q_k(1) - arg q_k(0)``.
    A site with ``r_k = 0`` makes the projection vanish.
    """
    if q.dim != layout.n_modes:
        raise ExtractionError(f"mode of dim {q.dim} does not match {layout.N} sites")
    params = []
    for i in range(1, layout.N + 1):
        a = q.coeffs[layout.mode_index(i, 0)]
        b = q.coeffs[layout.mode_index(i, 1)]
        r = math.hypot(abs(a), abs(b))
        theta = math.atan2(abs(b), abs(a))
        phi = float(np.angle(b) - np.angle(a)) if r > 0 else 0.0
        params.append((theta, phi, r))
    return params


def extraction_probability(q: ModeVector, layout: SiteLayout) -> float:
    """Success probability ``N! prod_k r_k^2`` of projecting ``|N>_q``."""
    params = extraction_params(q, layout)
    return math.factorial(layout.N) * math.prod(r * r for _, _, r in params)


def predicted_qubits(q: ModeVector, layout: SiteLayout) -> QubitState:
    factors = [
        np.array([math.cos(t), np.exp(1j * p) * math.sin(t)]) for t, p, _ in extraction_params(q, layout)
    ]
    return product_state(factors)


def project_fock_mode(q: ModeVector, layout: SiteLayout, cap: int | None = None) -> ExtractionResult:
    """Extract ``|N>_q`` and attach the per-site ``(theta, phi)``."""
    res = project_bqc(fock_in_mode(q, layout.N, cap=cap), layout)
    params = [(t, p) for t, p, _ in extraction_params(q, layout)]
    return ExtractionResult(res.qubits, res.probability, params)


def kerr_state(N: int, eta: float):
    """``exp(4i eta Jz^2) |N>_q`` with ``q = (q1 + w)/sqrt(2)``, as SSRC coefficients."""
    start = binomial_state(N, 1 / math.sqrt(2), 1 / math.sqrt(2))
    return apply_gate(start, GateSpec("kerr", "z", eta))


def kerr_then_project(N: int, eta: float, cap: int | None = None) -> ExtractionResult:
    """Kerr gate on ``|N>_{(q1+w)/sqrt 2}`` followed by extraction.

    ``q1`` and ``w`` use the balanced site decomposition
    ``a_q1 = sum_i (b_i(0)+b_i(1))/sqrt(2N)``, ``a_w = sum_i (b_i(0)-b_i(1))/sqrt(2N)``.
    """
    if N < 2:
        raise ExtractionError("the Kerr extraction needs N >= 2")
    check_cap(N, cap, "Kerr extraction")
    q1, w = balanced_pair(N)
    fock = ssrc_to_fock(kerr_state(N, eta), q1, w, cap=cap)
    return project_bqc(fock, SiteLayout(N))
