"""Fixed-N two-mode states ``sum_n c_n |n>_A |N-n>_R`` and their gates.

``c[n]`` is the amplitude of ``n`` photons in the system mode A and ``N-n`` in
the reference mode R, n ascending. In that basis the Jordan-Schwinger operators
are ``Jz = (n_A - n_R)/2``, ``Jx = (a_A^+ a_R + a_R^+ a_A)/2`` and
``Jy = -i(a_A^+ a_R - a_R^+ a_A)/2``. The sign of ``Jy`` is the one that makes
``[Jx, Jy] = i Jz`` with ``a_A^+ a_R`` as the raising operator.
"""

import cmath
import functools
import math
from dataclasses import dataclass

import numpy as np

from .config import NORM_TOL, check_cap
from .fock import FockState, create, vacuum
from .modes import ORTHO_TOL, ModeError, ModeVector, mode_overlap

AXES = ("x", "y", "z")


class SSRCError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SSRCState:
    N: int
    c: np.ndarray

    def __post_init__(self):
        c = np.array(self.c, dtype=np.complex128).reshape(-1)
        if self.N < 0:
            raise SSRCError("N must be non-negative")
        if c.shape[0] != self.N + 1:
            raise SSRCError(f"expected {self.N + 1} coefficients, got {c.shape[0]}")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    def norm(self) -> float:
        return float(np.linalg.norm(self.c))

    def normalize(self) -> "SSRCState":
        n = self.norm()
        if n == 0.0:
            raise SSRCError("cannot normalize the zero vector")
        return SSRCState(self.N, self.c / n)

    def to_json(self) -> dict:
        return {"N": self.N, "c": [{"re": float(x.real), "im": float(x.imag)} for x in self.c]}

    @classmethod
    def from_json(cls, data: dict) -> "SSRCState":
        return cls(int(data["N"]), [complex(x["re"], x["im"]) for x in data["c"]])


def number_state(N: int, n: int) -> SSRCState:
    """``|n>_A |N-n>_R``."""
    c = np.zeros(N + 1, dtype=np.complex128)
    c[n] = 1.0
    return SSRCState(N, c)


def binomial_state(N: int, u_a: complex, u_r: complex) -> SSRCState:
    """``|N>`` in the mode ``u_a A + u_r R`` (``|u_a|^2+|u_r|^2 = 1``)."""
    n = np.arange(N + 1)
    logbin = 0.5 * np.array([_log_binom(N, k) for k in n])
    c = np.exp(logbin) * np.power(complex(u_a), n) * np.power(complex(u_r), N - n)
    return SSRCState(N, c)


@dataclass(frozen=True, eq=False)
class AngularMomentumOps:
    N: int
    jx: np.ndarray
    jy: np.ndarray
    jz: np.ndarray

    def axis(self, name: str) -> np.ndarray:
        try:
            return {"x": self.jx, "y": self.jy, "z": self.jz}[name]
        except KeyError:
            raise SSRCError(f"unknown axis {name!r}") from None

    def casimir(self) -> np.ndarray:
        return self.jx @ self.jx + self.jy @ self.jy + self.jz @ self.jz


@functools.lru_cache(maxsize=128)
def jordan_schwinger(N: int) -> AngularMomentumOps:
    if N < 0:
        raise SSRCError("N must be non-negative")
    n = np.arange(N + 1, dtype=float)
    # <n+1| a_A^+ a_R |n> = sqrt((n+1)(N-n))
    raise_a = np.diag(np.sqrt((n[:-1] + 1) * (N - n[:-1])), k=-1).astype(np.complex128)
    lower_a = raise_a.conj().T
    jx = 0.5 * (raise_a + lower_a)
    jy = -0.5j * (raise_a - lower_a)
    jz = np.diag((2 * n - N) / 2).astype(np.complex128)
    for m in (jx, jy, jz):
        m.setflags(write=False)
    return AngularMomentumOps(N, jx, jy, jz)


@dataclass(frozen=True)
class GateSpec:
    """``rotation``: ``exp(i*parameter*J_axis)``; ``kerr``: ``exp(4i*parameter*J_axis^2)``."""

    kind: str
    axis: str
    parameter: float

    def __post_init__(self):
        if self.kind not in ("rotation", "kerr"):
            raise SSRCError(f"unknown gate kind {self.kind!r}")
        if self.axis not in AXES:
            raise SSRCError(f"unknown axis {self.axis!r}")
        if not math.isfinite(self.parameter):
            raise SSRCError("gate parameter must be finite")


def gate_unitary(N: int, gate: GateSpec) -> np.ndarray:
    ops = jordan_schwinger(N)
    if gate.axis == "z":
        m = np.real(np.diag(ops.jz))
        phase = gate.parameter * m if gate.kind == "rotation" else 4 * gate.parameter * m**2
        return np.diag(np.exp(1j * phase))
    evals, evecs = np.linalg.eigh(ops.axis(gate.axis))
    if gate.kind == "rotation":
        phase = gate.parameter * evals
    else:
        phase = 4 * gate.parameter * evals**2
    return (evecs * np.exp(1j * phase)) @ evecs.conj().T


def apply_gate(state: SSRCState, gate: GateSpec) -> SSRCState:
    if abs(state.norm() - 1.0) > NORM_TOL:
        raise SSRCError("input state is not normalized")
    if gate.axis == "z":
        m = np.real(np.diag(jordan_schwinger(state.N).jz))
        phase = gate.parameter * m if gate.kind == "rotation" else 4 * gate.parameter * m**2
        return SSRCState(state.N, np.exp(1j * phase) * state.c)
    return SSRCState(state.N, gate_unitary(state.N, gate) @ state.c)


def ssrc_to_fock(
    state: SSRCState, q: ModeVector, w: ModeVector, cap: int | None = None
) -> FockState:
    """``sum_n c_n (a_q^+)^n (a_w^+)^(N-n) / sqrt(n!(N-n)!) |vac>``.

    Evaluated by Horner's rule in ``a_q^+`` so only ``2N`` ladder
    applications are needed.
    """
    if q.dim != w.dim:
        raise ModeError(f"dimension mismatch: {q.dim} vs {w.dim}")
    if abs(mode_overlap(q, w)) > ORTHO_TOL:
        raise ModeError("system and reference modes must be orthogonal")
    N = state.N
    if np.count_nonzero(q.coeffs) + np.count_nonzero(w.coeffs) > 2:
        check_cap(N, cap, "SSRC-to-Fock expansion")
    dim = q.dim
    scaled = [
        state.c[n] / math.sqrt(math.factorial(n) * math.factorial(N - n)) for n in range(N + 1)
    ]
    # powers[m] = (a_w^+)^m |vac>
    powers = [vacuum(dim)]
    for _ in range(N):
        powers.append(create(powers[-1], w))
    acc = scaled[N] * powers[0]
    for n in range(N - 1, -1, -1):
        acc = create(acc, q) + scaled[n] * powers[N - n]
    return FockState(acc.n_modes, acc.occs, acc.amps, N)


def spin_coherent(N: int, theta: float, phi: float) -> SSRCState:
    """``exp(-i phi Jz) exp(-i theta Jy)`` on the ``Jz = -N/2`` ket ``|0>_A|N>_R``.

    Equals ``|N>`` in the mode ``sin(theta/2) A - e^{i phi} cos(theta/2) R`` up
    to a global phase. (The ``-theta`` compensates the opposite sign
    convention ``Jy -> -Jy`` under which that mode is usually quoted.)
    """
    start = number_state(N, 0)
    rotated = apply_gate(start, GateSpec("rotation", "y", -theta))
    return apply_gate(rotated, GateSpec("rotation", "z", -phi))


def spin_coherent_mode(theta: float, phi: float) -> tuple[complex, complex]:
    """Coefficients ``(u_A, u_R)`` of the rotated mode of :func:`spin_coherent`."""
    return math.sin(theta / 2), -cmath.exp(1j * phi) * math.cos(theta / 2)


def ssrc_to_cv(state: SSRCState) -> np.ndarray:
    """Fock amplitudes ``<n|_G`` once the ``|N>_K`` reference is traced out."""
    return np.array(state.c, dtype=np.complex128)


def cv_to_ssrc(amps) -> SSRCState:
    amps = np.asarray(amps, dtype=np.complex128)
    return SSRCState(amps.shape[0] - 1, amps)


def _log_binom(N: int, k: int) -> float:
    return math.lgamma(N + 1) - math.lgamma(k + 1) - math.lgamma(N - k + 1)


def coherent_limit_exact(N: int, alpha: complex, k: int) -> complex:
    """Amplitude of ``|k>|N-k>`` when ``|N>`` of the reference is split by the
    alpha-dependent mode pair:
    ``sqrt(C(N,k)) (alpha/sqrt(N))^k (1-|alpha|^2/N)^((N-k)/2)``.
    """
    alpha = complex(alpha)
    a2 = abs(alpha) ** 2
    if not a2 < N:
        raise SSRCError(f"|alpha|^2 = {a2} must be below N = {N}")
    if not 0 <= k <= N:
        raise SSRCError(f"k = {k} outside 0..{N}")
    if k == 0:
        return complex(math.exp(0.5 * N * math.log1p(-a2 / N)))
    if alpha == 0:
        return 0j
    log_mag = (
        0.5 * _log_binom(N, k)
        + k * (math.log(abs(alpha)) - 0.5 * math.log(N))
        + 0.5 * (N - k) * math.log1p(-a2 / N)
    )
    return cmath.rect(math.exp(log_mag), k * cmath.phase(alpha))


def poisson_amplitude(alpha: complex, k: int) -> complex:
    """Glauber coefficient ``exp(-|alpha|^2/2) alpha^k / sqrt(k!)``."""
    if k < 0:
        raise SSRCError("k must be non-negative")
    alpha = complex(alpha)
    if alpha == 0:
        return 1.0 + 0j if k == 0 else 0j
    log_mag = -0.5 * abs(alpha) ** 2 + k * math.log(abs(alpha)) - 0.5 * math.lgamma(k + 1)
    return cmath.rect(math.exp(log_mag), k * cmath.phase(alpha))
