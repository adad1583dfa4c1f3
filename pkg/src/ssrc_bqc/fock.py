"""Sparse multimode Fock states.

A :class:`FockState` keeps its nonzero terms as two aligned arrays: an
``(T, M)`` integer array of occupation vectors, sorted lexicographically, and
the matching complex amplitudes. Amplitudes below ``1e-12`` in magnitude are
pruned after every operator application. The zero vector (e.g. annihilating
the vacuum) is a state with no terms.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .config import NORM_TOL, PRUNE_TOL, check_cap
from .modes import ModeError, ModeVector


class FockError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FockState:
    n_modes: int
    occs: np.ndarray
    amps: np.ndarray
    number_definite: int | None = None

    def __post_init__(self):
        occs = np.asarray(self.occs, dtype=np.int64).reshape(-1, self.n_modes)
        amps = np.asarray(self.amps, dtype=np.complex128).reshape(-1)
        if occs.shape[0] != amps.shape[0]:
            raise FockError("occupations and amplitudes differ in length")
        if np.any(occs < 0):
            raise FockError("negative occupation")
        occs.setflags(write=False)
        amps.setflags(write=False)
        object.__setattr__(self, "occs", occs)
        object.__setattr__(self, "amps", amps)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_terms(cls, n_modes: int, terms, number_definite="infer") -> "FockState":
        """Build from a mapping or iterable of ``(occupation, amplitude)``.

        Repeated occupations are summed; the result is sorted and pruned.
        ``number_definite="infer"`` sets N when all terms share a total.
        """
        items = terms.items() if hasattr(terms, "items") else terms
        occ_list, amp_list = [], []
        for occ, amp in items:
            occ = tuple(int(x) for x in occ)
            if len(occ) != n_modes:
                raise FockError(f"occupation {occ} has wrong length for {n_modes} modes")
            occ_list.append(occ)
            amp_list.append(complex(amp))
        occs = np.array(occ_list, dtype=np.int64).reshape(-1, n_modes)
        amps = np.array(amp_list, dtype=np.complex128)
        state = _canonicalize(n_modes, occs, amps)
        if number_definite == "infer":
            totals = set(state.occs.sum(axis=1).tolist())
            number_definite = totals.pop() if len(totals) == 1 else None
            if state.occs.shape[0] == 0:
                number_definite = None
        elif number_definite is not None:
            if np.any(state.occs.sum(axis=1) != number_definite):
                raise FockError("terms outside the declared number sector")
        return FockState(n_modes, state.occs, state.amps, number_definite)

    # -- basic queries ----------------------------------------------------

    @property
    def n_terms(self) -> int:
        return self.amps.shape[0]

    @property
    def is_zero(self) -> bool:
        return self.n_terms == 0

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def normalize(self) -> "FockState":
        n = self.norm()
        if n == 0.0:
            raise FockError("the zero state cannot be normalized")
        return FockState(self.n_modes, self.occs, self.amps / n, self.number_definite)

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm() - 1.0) <= tol

    def as_dict(self) -> dict[tuple[int, ...], complex]:
        return {tuple(int(x) for x in o): complex(a) for o, a in zip(self.occs, self.amps)}

    def amplitude(self, occ) -> complex:
        occ = np.asarray(occ, dtype=np.int64)
        hit = np.flatnonzero(np.all(self.occs == occ[None, :], axis=1))
        return complex(self.amps[hit[0]]) if hit.size else 0j

    # -- arithmetic -------------------------------------------------------

    def __mul__(self, scalar) -> "FockState":
        scalar = complex(scalar)
        return _canonicalize(self.n_modes, self.occs, self.amps * scalar, self.number_definite)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "FockState":
        return self * (1.0 / complex(scalar))

    def __add__(self, other: "FockState") -> "FockState":
        if other.n_modes != self.n_modes:
            raise FockError("cannot add states over different mode counts")
        nd = self.number_definite if self.number_definite == other.number_definite else None
        if self.is_zero:
            nd = other.number_definite
        elif other.is_zero:
            nd = self.number_definite
        occs = np.concatenate([self.occs, other.occs])
        amps = np.concatenate([self.amps, other.amps])
        return _canonicalize(self.n_modes, occs, amps, nd)

    def __sub__(self, other: "FockState") -> "FockState":
        return self + (-1.0) * other

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n_modes": self.n_modes,
            "number_definite": self.number_definite,
            "terms": [
                {"occ": [int(x) for x in o], "re": float(a.real), "im": float(a.imag)}
                for o, a in zip(self.occs, self.amps)
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FockState":
        terms = [(t["occ"], complex(t["re"], t["im"])) for t in data["terms"]]
        state = cls.from_terms(int(data["n_modes"]), terms, number_definite=None)
        nd = data.get("number_definite")
        if nd is not None and np.any(state.occs.sum(axis=1) != nd):
            raise FockError("terms outside the declared number sector")
        return FockState(state.n_modes, state.occs, state.amps, nd)


def _canonicalize(n_modes, occs, amps, number_definite=None) -> FockState:
    """Sort terms lexicographically, merge duplicates and prune tiny amplitudes."""
    if occs.shape[0] == 0:
        return FockState(n_modes, occs, amps, number_definite)
    base = int(occs.max()) + 1
    if kernels.key_fits(base, n_modes):
        k = kernels.KERNELS
        keys, merged = k["merge"](k["encode"](occs, base), amps, PRUNE_TOL)
        return FockState(n_modes, k["decode"](keys, base, n_modes), merged, number_definite)
    return _canonicalize_rows(n_modes, occs, amps, number_definite)


def _canonicalize_rows(n_modes, occs, amps, number_definite=None) -> FockState:
    # fallback when occupations are too large to pack into int64 keys
    uniq, inv = np.unique(occs, axis=0, return_inverse=True)
    inv = inv.reshape(-1)
    re = np.bincount(inv, weights=amps.real, minlength=uniq.shape[0])
    im = np.bincount(inv, weights=amps.imag, minlength=uniq.shape[0])
    summed = re + 1j * im
    keep = np.abs(summed) >= PRUNE_TOL
    return FockState(n_modes, uniq[keep], summed[keep], number_definite)


def vacuum(n_modes: int) -> FockState:
    return FockState(n_modes, np.zeros((1, n_modes), dtype=np.int64), np.ones(1), 0)


def zero_state(n_modes: int, number_definite: int | None = None) -> FockState:
    return FockState(n_modes, np.zeros((0, n_modes), dtype=np.int64), np.zeros(0), number_definite)


def _check_dims(state: FockState, mode: ModeVector):
    if mode.dim != state.n_modes:
        raise ModeError(f"mode of dim {mode.dim} applied to {state.n_modes}-mode state")


def _ladder(state: FockState, mode: ModeVector, raising: bool) -> FockState:
    nd = state.number_definite
    if nd is not None:
        nd = nd + 1 if raising else nd - 1
        if nd < 0:
            nd = 0
    if state.is_zero:
        return zero_state(state.n_modes, nd)
    top = int(state.occs.sum(axis=1).max()) + 1
    base = top + 1
    if state.number_definite is not None and kernels.key_fits(base, state.n_modes):
        occs, amps = kernels.KERNELS["ladder_sector"](
            state.occs, state.amps, mode.coeffs, raising, nd, PRUNE_TOL
        )
        return FockState(state.n_modes, occs, amps, nd)
    if not kernels.key_fits(base, state.n_modes):
        return _ladder_rows(state, mode, raising, nd)
    k = kernels.KERNELS
    op = k["raise"] if raising else k["lower"]
    keys, amps = op(state.occs, state.amps, mode.coeffs, base)
    keys, amps = k["merge"](keys, amps, PRUNE_TOL)
    return FockState(state.n_modes, k["decode"](keys, base, state.n_modes), amps, nd)


def _ladder_rows(state, mode, raising, nd):
    nz = np.flatnonzero(mode.coeffs)
    occs, amps = [], []
    for k in nz:
        shifted = state.occs.copy()
        if raising:
            factor = mode.coeffs[k] * np.sqrt(shifted[:, k] + 1.0)
            shifted[:, k] += 1
            occs.append(shifted)
            amps.append(state.amps * factor)
        else:
            keep = shifted[:, k] > 0
            factor = np.conj(mode.coeffs[k]) * np.sqrt(shifted[keep, k].astype(float))
            shifted = shifted[keep]
            shifted[:, k] -= 1
            occs.append(shifted)
            amps.append(state.amps[keep] * factor)
    if not occs:
        return zero_state(state.n_modes, nd)
    return _canonicalize_rows(state.n_modes, np.concatenate(occs), np.concatenate(amps), nd)


def create(state: FockState, mode: ModeVector) -> FockState:
    """Apply ``a_mode^dagger = sum_k mode_k b_k^dagger``."""
    _check_dims(state, mode)
    return _ladder(state, mode, raising=True)


def annihilate(state: FockState, mode: ModeVector) -> FockState:
    """Apply ``a_mode = sum_k conj(mode_k) b_k``."""
    _check_dims(state, mode)
    return _ladder(state, mode, raising=False)


def fock_in_mode(mode: ModeVector, N: int, cap: int | None = None) -> FockState:
    """``|N>_mode = (a_mode^dagger)^N / sqrt(N!) |vac>``."""
    if N < 0:
        raise FockError("photon number must be non-negative")
    if abs(mode.norm() - 1.0) > NORM_TOL:
        raise FockError("mode must be unit norm")
    if np.count_nonzero(mode.coeffs) > 2:
        check_cap(N, cap, "Fock-state expansion")
    state = vacuum(mode.dim)
    for _ in range(N):
        state = create(state, mode)
    return state / math.sqrt(math.factorial(N))


def inner(a: FockState, b: FockState) -> complex:
    """``<a|b>`` over the common terms."""
    if a.n_modes != b.n_modes:
        raise FockError(f"mode count mismatch: {a.n_modes} vs {b.n_modes}")
    if a.is_zero or b.is_zero:
        return 0j
    if (
        a.number_definite is not None
        and b.number_definite is not None
        and a.number_definite != b.number_definite
    ):
        return 0j
    base = int(max(a.occs.max(), b.occs.max())) + 1
    if kernels.key_fits(base, a.n_modes):
        enc = kernels.KERNELS["encode"]
        ka, kb = enc(a.occs, base), enc(b.occs, base)
        _, ia, ib = np.intersect1d(ka, kb, assume_unique=True, return_indices=True)
    else:
        da = {tuple(o): i for i, o in enumerate(a.occs.tolist())}
        pairs = [(da[tuple(o)], j) for j, o in enumerate(b.occs.tolist()) if tuple(o) in da]
        ia = np.array([p[0] for p in pairs], dtype=np.int64)
        ib = np.array([p[1] for p in pairs], dtype=np.int64)
    return complex(np.sum(np.conj(a.amps[ia]) * b.amps[ib]))


def number_expectation(state: FockState, mode: ModeVector) -> complex:
    """``<s| a_mode^dagger a_mode |s>``."""
    return inner(state, create(annihilate(state, mode), mode))


def random_sparse_state(
    n_modes: int, N: int, n_terms: int, rng: np.random.Generator
) -> FockState:
    """Normalized random state in the N-photon sector with up to ``n_terms`` terms."""
    terms = {}
    for _ in range(n_terms):
        occ = np.bincount(rng.integers(0, n_modes, size=N), minlength=n_modes)
        terms[tuple(occ)] = rng.normal() + 1j * rng.normal()
    return FockState.from_terms(n_modes, terms, number_definite=N).normalize()
