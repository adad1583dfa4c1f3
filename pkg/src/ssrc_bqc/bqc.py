"""Dense N-qubit register of the dual-rail bosonic computer.

Amplitude index ``x`` has site 1 as its most significant bit, so the
statevector reshaped to ``(2,)*N`` carries site ``i`` on axis ``i-1``.
"""

from dataclasses import dataclass

import numpy as np

UNITARY_TOL = 1e-10
ENTROPY_FLOOR = 1e-12

PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}
HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)


class QubitError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class QubitState:
    N: int
    amps: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amps, dtype=np.complex128).reshape(-1)
        if amps.shape[0] != 2**self.N:
            raise QubitError(f"{self.N} qubits need {2**self.N} amplitudes, got {amps.shape[0]}")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @property
    def is_zero(self) -> bool:
        return not np.any(self.amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def normalize(self) -> "QubitState":
        n = self.norm()
        if n == 0.0:
            raise QubitError("the zero state cannot be normalized")
        return QubitState(self.N, self.amps / n)

    def tensor(self) -> np.ndarray:
        return self.amps.reshape((2,) * self.N)

    def to_json(self) -> dict:
        return {"N": self.N, "amps": [{"re": float(a.real), "im": float(a.imag)} for a in self.amps]}

    @classmethod
    def from_json(cls, data: dict) -> "QubitState":
        return cls(int(data["N"]), [complex(a["re"], a["im"]) for a in data["amps"]])


def basis_state(N: int, x: int) -> QubitState:
    amps = np.zeros(2**N, dtype=np.complex128)
    amps[x] = 1.0
    return QubitState(N, amps)


def ghz_state(N: int, sign: int = 1) -> QubitState:
    amps = np.zeros(2**N, dtype=np.complex128)
    amps[0] = 1 / np.sqrt(2)
    amps[-1] = sign / np.sqrt(2)
    return QubitState(N, amps)


def product_state(factors) -> QubitState:
    amps = np.ones(1, dtype=np.complex128)
    for f in factors:
        amps = np.kron(amps, np.asarray(f, dtype=np.complex128))
    return QubitState(len(factors), amps)


def phase_aligned_distance(a, b) -> float:
    """Max abs difference after rotating ``b`` onto ``a``'s global phase.

    The phase is fixed on the largest-magnitude amplitude of ``a``.
    """
    a = a.amps if isinstance(a, QubitState) else np.asarray(a, dtype=np.complex128)
    b = b.amps if isinstance(b, QubitState) else np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape:
        raise QubitError("states have different sizes")
    j = int(np.argmax(np.abs(a)))
    if abs(b[j]) == 0.0:
        return float(np.max(np.abs(a - b)))
    rot = (a[j] / abs(a[j])) / (b[j] / abs(b[j]))
    return float(np.max(np.abs(a - rot * b)))


@dataclass(frozen=True, eq=False)
class LocalGate:
    """Single-qubit unitary on site ``site`` (1-based)."""

    site: int
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.complex128)
        if m.shape != (2, 2):
            raise QubitError("local gates are 2x2")
        if np.max(np.abs(m @ m.conj().T - np.eye(2))) > UNITARY_TOL:
            raise QubitError("local gate is not unitary")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_generator(cls, site: int, eta: complex, zeta: float) -> "LocalGate":
        """Site rotation ``exp(eta b(0) b^+(1) - eta* b^+(0) b(1) + i zeta (n(0) - n(1)))``.

        Restricted to one photon on the site, the exponent acts on
        ``(|0>, |1>)`` as the anti-Hermitian matrix ``[[i zeta, -eta*], [eta, -i zeta]]``.
        """
        eta = complex(eta)
        gen = np.array([[1j * zeta, -np.conj(eta)], [eta, -1j * zeta]], dtype=np.complex128)
        # gen = i H with H Hermitian
        evals, evecs = np.linalg.eigh(-1j * gen)
        return cls(site, (evecs * np.exp(1j * evals)) @ evecs.conj().T)

    def inverse(self) -> "LocalGate":
        return LocalGate(self.site, self.matrix.conj().T)


def random_unitary_2x2(rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def _apply_matrix(state: QubitState, site: int, matrix: np.ndarray) -> QubitState:
    if not 1 <= site <= state.N:
        raise QubitError(f"site {site} outside 1..{state.N}")
    t = np.tensordot(matrix, state.tensor(), axes=([1], [site - 1]))
    t = np.moveaxis(t, 0, site - 1)
    return QubitState(state.N, t.reshape(-1))


def apply_local(state: QubitState, gate: LocalGate) -> QubitState:
    m = np.asarray(gate.matrix)
    if np.max(np.abs(m @ m.conj().T - np.eye(2))) > UNITARY_TOL:
        raise QubitError("local gate is not unitary")
    return _apply_matrix(state, gate.site, m)


def collective_op(state: QubitState, axis: str, angle: float, sites) -> QubitState:
    """``exp(i angle sigma_axis)`` on each listed site.

    On the one-photon-per-site subspace the first-quantized collective
    operator ``sum_j (sigma_{axis,i})_j`` acts as the Pauli on qubit ``i``.
    """
    sites = list(sites)
    if len(set(sites)) != len(sites):
        raise QubitError("duplicate sites")
    if axis not in PAULI:
        raise QubitError(f"unknown axis {axis!r}")
    u = np.cos(angle) * np.eye(2) + 1j * np.sin(angle) * PAULI[axis]
    for s in sites:
        state = _apply_matrix(state, s, u)
    return state


def _split(state: QubitState, subset) -> np.ndarray:
    subset = sorted(set(subset))
    if not subset or len(subset) >= state.N:
        raise QubitError("bipartition must be a nonempty proper subset of sites")
    if subset[0] < 1 or subset[-1] > state.N:
        raise QubitError("bipartition has sites out of range")
    axes_a = [s - 1 for s in subset]
    axes_b = [k for k in range(state.N) if k not in axes_a]
    t = np.transpose(state.tensor(), axes_a + axes_b)
    return t.reshape(2 ** len(axes_a), 2 ** len(axes_b))


def schmidt_coefficients(state: QubitState, subset) -> np.ndarray:
    return np.linalg.svd(_split(state, subset), compute_uv=False)


def entanglement_entropy(state: QubitState, subset) -> float:
    """Von Neumann entropy in bits of the sites in ``subset`` (1-based)."""
    s = schmidt_coefficients(state, subset)
    s = s[s >= ENTROPY_FLOOR]
    p = s**2 / np.sum(s**2)
    return float(max(0.0, -np.sum(p * np.log2(p))))


def reduced_site(state: QubitState, site: int) -> np.ndarray:
    m = _split(state, [site]) if state.N > 1 else state.amps.reshape(2, 1)
    return m @ m.conj().T


def is_product(state: QubitState, tol: float = 1e-10):
    """``(True, factors)`` when every single-site reduced state is pure within tol.

    Factors are the dominant eigenvectors of the reduced states, each with
    its first non-negligible entry made real positive; returns
    ``(False, None)`` otherwise.
    """
    if state.is_zero:
        return False, None
    st = state.normalize()
    factors = []
    for site in range(1, st.N + 1):
        rho = reduced_site(st, site)
        purity = float(np.real(np.trace(rho @ rho)))
        if purity < 1 - tol:
            return False, None
        evals, evecs = np.linalg.eigh(rho)
        v = evecs[:, -1]
        lead = v[np.flatnonzero(np.abs(v) > 1e-10)[0]]
        factors.append(v * (abs(lead) / lead))
    return True, factors


def plus_minus_amplitudes(state: QubitState) -> np.ndarray:
    """Amplitudes in the per-site basis ``|+/->`` with ``+`` as bit 0."""
    t = state.tensor()
    for axis in range(state.N):
        t = np.moveaxis(np.tensordot(HADAMARD, t, axes=([1], [axis])), 0, axis)
    return t.reshape(-1)


def controlled_phase_extract(state: QubitState, sites=(1, 2), tol: float = 1e-10) -> float:
    """Local-phase-invariant controlled phase between two sites.

    ``arg A++ - arg A+- - arg A-+ + arg A--`` in the per-site ``(+, -)`` basis,
    reduced to ``[0, 2pi)``. Sites other than the two probed ones are held at
    ``+``.
    """
    i, j = sites
    if i == j:
        raise QubitError("need two distinct sites")
    t = plus_minus_amplitudes(state).reshape((2,) * state.N)
    index = [0] * state.N
    amps = {}
    for a in (0, 1):
        for b in (0, 1):
            index[i - 1], index[j - 1] = a, b
            amps[a, b] = t[tuple(index)]
    if min(abs(v) for v in amps.values()) < tol:
        raise QubitError("a (+,-) amplitude vanishes; the controlled phase is undefined")
    phi = (
        np.angle(amps[0, 0]) - np.angle(amps[0, 1]) - np.angle(amps[1, 0]) + np.angle(amps[1, 1])
    )
    return float(np.mod(phi, 2 * np.pi))


def phase_distance(a: float, b: float) -> float:
    """Distance between two angles on the circle."""
    d = np.mod(a - b, 2 * np.pi)
    return float(min(d, 2 * np.pi - d))


def local_gate_to_mode(gates, q1, layout):
    """Mode ``q`` whose extracted Fock state equals ``gates`` applied after
    extracting ``|N>_{q1}``.

    Extraction of ``|N>_q`` is proportional to ``prod_i (q_i(0)|0> + q_i(1)|1>)``,
    so a gate on site ``i`` acts directly on the pair ``(q_i(0), q_i(1))``.
    """
    from .modes import ModeVector

    if q1.dim != 2 * layout.N:
        raise QubitError(f"mode of dim {q1.dim} does not match {layout.N} sites")
    coeffs = np.array(q1.coeffs)
    seen = set()
    for g in gates:
        if g.site in seen:
            raise QubitError(f"more than one gate on site {g.site}")
        if not 1 <= g.site <= layout.N:
            raise QubitError(f"site {g.site} outside 1..{layout.N}")
        seen.add(g.site)
        pair = [layout.mode_index(g.site, 0), layout.mode_index(g.site, 1)]
        coeffs[pair] = g.matrix @ coeffs[pair]
    return ModeVector(coeffs)
