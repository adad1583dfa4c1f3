"""Collective modes as complex coefficient vectors.

A :class:`ModeVector` ``q`` over an orthonormal basis ``b_0 .. b_{M-1}`` stands
for the creation operator ``a_q^dagger = sum_k q[k] b_k^dagger``. With that
convention the bosonic commutator ``[a_q, a_w^dagger]`` is the plain inner
product ``sum_k conj(q[k]) w[k]``.

Site modes of a dual-rail register use the index ``m = 2*(i-1) + p`` for site
``i`` in ``1..N`` and internal state ``p`` in ``{0, 1}``.
"""

from dataclasses import dataclass

import numpy as np

GS_TOL = 1e-10
ORTHO_TOL = 1e-9
PHASE_TOL = 1e-10


class ModeError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ModeVector:
    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.array(self.coeffs, dtype=np.complex128).reshape(-1)
        if arr.shape[0] < 1:
            raise ModeError("a mode needs at least one component")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def dim(self) -> int:
        return self.coeffs.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def normalize(self) -> "ModeVector":
        n = self.norm()
        if n == 0.0:
            raise ModeError("cannot normalize the zero mode")
        return ModeVector(self.coeffs / n)

    def padded(self, dim: int) -> "ModeVector":
        if dim < self.dim:
            raise ModeError(f"cannot pad a dim-{self.dim} mode down to {dim}")
        out = np.zeros(dim, dtype=np.complex128)
        out[: self.dim] = self.coeffs
        return ModeVector(out)

    def canonical(self) -> "ModeVector":
        """Same mode with its first non-negligible coefficient real positive."""
        return ModeVector(canonical_phase(self.coeffs))

    def __len__(self):
        return self.dim

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "coeffs": [{"re": float(c.real), "im": float(c.imag)} for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ModeVector":
        coeffs = [complex(c["re"], c["im"]) for c in data["coeffs"]]
        if len(coeffs) != int(data["dim"]):
            raise ModeError("dim does not match the number of coefficients")
        return cls(np.array(coeffs))


def basis_mode(dim: int, index: int) -> ModeVector:
    """Canonical unit vector ``e_index`` (0-based)."""
    v = np.zeros(dim, dtype=np.complex128)
    v[index] = 1.0
    return ModeVector(v)


def canonical_phase(v: np.ndarray, tol: float = PHASE_TOL) -> np.ndarray:
    v = np.asarray(v, dtype=np.complex128)
    big = np.flatnonzero(np.abs(v) > tol)
    if big.size == 0:
        return v.copy()
    lead = v[big[0]]
    return v * (abs(lead) / lead)


def random_mode(dim: int, rng: np.random.Generator) -> ModeVector:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return ModeVector(v).normalize()


def mode_overlap(q: ModeVector, w: ModeVector) -> complex:
    """Commutator ``[a_q, a_w^dagger] = sum_k conj(q_k) w_k``."""
    if q.dim != w.dim:
        raise ModeError(f"dimension mismatch: {q.dim} vs {w.dim}")
    return complex(np.vdot(q.coeffs, w.coeffs))


def orthonormal_complete(partial, dim: int) -> list[ModeVector]:
    """Extend mutually orthonormal modes to a full basis of size ``dim``.

    Candidates are the canonical vectors ``e_0, e_1, ...`` in index order,
    Gram-Schmidt'ed against everything kept so far; a candidate whose
    residual norm falls below ``1e-10`` is skipped. Deterministic.
    """
    partial = list(partial)
    if len(partial) > dim:
        raise ModeError(f"{len(partial)} vectors cannot live in dimension {dim}")
    for v in partial:
        if v.dim != dim:
            raise ModeError(f"mode of dim {v.dim} given for dimension {dim}")
    if partial:
        mat = np.stack([v.coeffs for v in partial], axis=1)
        gram = mat.conj().T @ mat
        if np.max(np.abs(gram - np.eye(len(partial)))) > ORTHO_TOL:
            raise ModeError("input modes are not orthonormal")

    basis = [v.coeffs.copy() for v in partial]
    for j in range(dim):
        if len(basis) == dim:
            break
        cand = np.zeros(dim, dtype=np.complex128)
        cand[j] = 1.0
        # two passes of modified Gram-Schmidt keep the result orthogonal to 1e-15
        for _ in range(2):
            for b in basis:
                cand = cand - np.vdot(b, cand) * b
        nrm = np.linalg.norm(cand)
        if nrm < GS_TOL:
            continue
        basis.append(cand / nrm)
    return [ModeVector(b) for b in basis]


def site_index(i: int, p: int) -> int:
    """Ambient index of site ``i`` (1-based), internal state ``p``."""
    return 2 * (i - 1) + p


@dataclass(frozen=True, eq=False)
class BalancedDecomposition:
    """Site modes that split a pair of orthogonal modes evenly.

    ``basis`` is a unitary whose column ``m`` (for ``m < 2N``) is the site mode
    ``b_i(p)`` with ``m = 2(i-1)+p``, written in the ambient basis of the
    input modes. Remaining columns, if any, complete the unitary.
    """

    n_sites: int
    basis: np.ndarray

    @property
    def site_modes(self) -> np.ndarray:
        return self.basis[:, : 2 * self.n_sites]

    def to_sites(self, v: ModeVector) -> ModeVector:
        """Coordinates of ``v`` on the 2N site modes."""
        vec = v.padded(self.basis.shape[0]).coeffs
        coords = self.basis.conj().T @ vec
        return ModeVector(coords[: 2 * self.n_sites])


def _dft(n: int) -> np.ndarray:
    idx = np.arange(n)
    return np.exp(2j * np.pi * np.outer(idx, idx) / n) / np.sqrt(n)


def balanced_decomposition(q: ModeVector, w: ModeVector, N: int) -> BalancedDecomposition:
    """Site modes with ``a_q = sum_i (b_i(0)+b_i(1))/sqrt(2N)`` and
    ``a_w = sum_i (b_i(0)-b_i(1))/sqrt(2N)``.

    The sum ``p = (q+w)/sqrt(2)`` and difference ``k = (q-w)/sqrt(2)`` are
    each spread evenly over N site modes by a discrete Fourier transform
    acting on an orthonormal block that starts with ``p`` (resp. ``k``).
    Modes shorter than ``2N`` are zero-padded first.
    """
    if N < 1:
        raise ModeError("need at least one site")
    if q.dim != w.dim:
        raise ModeError(f"dimension mismatch: {q.dim} vs {w.dim}")
    for v in (q, w):
        if abs(v.norm() - 1.0) > ORTHO_TOL:
            raise ModeError("modes must be unit norm")
    if abs(mode_overlap(q, w)) > ORTHO_TOL:
        raise ModeError("modes must be orthogonal")

    dim = max(q.dim, 2 * N)
    q, w = q.padded(dim), w.padded(dim)
    p = ModeVector((q.coeffs + w.coeffs) / np.sqrt(2))
    k = ModeVector((q.coeffs - w.coeffs) / np.sqrt(2))
    full = orthonormal_complete([p, k], dim)
    rest = [v.coeffs for v in full[2:]]
    block_p = np.stack([p.coeffs] + rest[: N - 1], axis=1)
    block_k = np.stack([k.coeffs] + rest[N - 1 : 2 * N - 2], axis=1)
    fourier = _dft(N)
    sites0 = block_p @ fourier.T
    sites1 = block_k @ fourier.T

    basis = np.empty((dim, dim), dtype=np.complex128)
    basis[:, 0 : 2 * N : 2] = sites0
    basis[:, 1 : 2 * N : 2] = sites1
    if dim > 2 * N:
        basis[:, 2 * N :] = np.stack(rest[2 * N - 2 :], axis=1)
    return BalancedDecomposition(n_sites=N, basis=basis)


def balanced_pair(N: int) -> tuple[ModeVector, ModeVector]:
    """The pair ``(sum_i (b_i(0)+b_i(1)), sum_i (b_i(0)-b_i(1)))/sqrt(2N)`` in site coordinates."""
    plus = np.zeros(2 * N, dtype=np.complex128)
    minus = np.zeros(2 * N, dtype=np.complex128)
    plus[:] = 1.0
    minus[0::2] = 1.0
    minus[1::2] = -1.0
    scale = 1.0 / np.sqrt(2 * N)
    return ModeVector(plus * scale), ModeVector(minus * scale)
