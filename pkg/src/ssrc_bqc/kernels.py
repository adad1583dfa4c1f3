"""Hot loops of the sparse Fock-space layer.

Occupation vectors are packed into int64 keys ``sum(occ[k] * base**(M-1-k))``.
With ``base`` larger than any single occupation, sorting keys is the same as
sorting occupation vectors lexicographically, so merged states come out in
canonical order.

Every kernel has a numba implementation and a pure-numpy one with identical
signatures. The numba path is used unless numba is missing or the environment
variable ``SSRC_BQC_NO_NUMBA`` is set to a non-empty value other than ``0``.
Both paths sum duplicate amplitudes in input order, so they agree bit for bit.
"""

import logging
import os

import numpy as np

from .config import NO_NUMBA_ENV

logger = logging.getLogger(__name__)

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

def key_fits(base: int, n_modes: int) -> bool:
    """True when every occupation below ``base`` packs into an int64 key."""
    return n_modes * np.log2(max(base, 2)) < 62.5


def place_values(base: int, n_modes: int) -> np.ndarray:
    return base ** np.arange(n_modes - 1, -1, -1, dtype=np.int64)


# ---------------------------------------------------------------------------
# numpy reference path
# ---------------------------------------------------------------------------

def _encode_np(occs, base):
    return occs @ place_values(base, occs.shape[1])


def _decode_np(keys, base, n_modes):
    occs = np.empty((keys.shape[0], n_modes), dtype=np.int64)
    rem = keys.copy()
    for k in range(n_modes - 1, -1, -1):
        occs[:, k] = rem % base
        rem //= base
    return occs


def _scaled_product_np(a, m, s):
    # (a * m) * s in explicit real arithmetic so both backends round alike
    re = (a.real * m.real - a.imag * m.imag) * s
    im = (a.real * m.imag + a.imag * m.real) * s
    return re + 1j * im


def _raise_np(occs, amps, mode, base):
    nz = np.flatnonzero(mode)
    pv = place_values(base, occs.shape[1])
    keys = (_encode_np(occs, base)[:, None] + pv[nz][None, :]).ravel()
    out = _scaled_product_np(
        amps[:, None], mode[nz][None, :], np.sqrt(occs[:, nz] + 1.0)
    ).ravel()
    return keys, out


def _lower_np(occs, amps, mode, base):
    nz = np.flatnonzero(mode)
    pv = place_values(base, occs.shape[1])
    sub = occs[:, nz]
    keep = (sub > 0).ravel()
    keys = (_encode_np(occs, base)[:, None] - pv[nz][None, :]).ravel()
    out = _scaled_product_np(
        amps[:, None], np.conj(mode[nz])[None, :], np.sqrt(sub.astype(np.float64))
    ).ravel()
    return keys[keep], out[keep]


def _merge_np(keys, amps, tol):
    if keys.shape[0] == 0:
        return keys.copy(), amps.copy()
    uniq, inv = np.unique(keys, return_inverse=True)
    re = np.bincount(inv, weights=amps.real, minlength=uniq.shape[0])
    im = np.bincount(inv, weights=amps.imag, minlength=uniq.shape[0])
    summed = re + 1j * im
    keep = np.abs(summed) >= tol
    return uniq[keep], summed[keep]


def _survivors_np(occs, n_sites):
    t = occs.shape[0]
    pairs = occs.reshape(t, n_sites, 2)
    mask = np.all(pairs.sum(axis=2) == 1, axis=1)
    weights = np.left_shift(1, np.arange(n_sites - 1, -1, -1)).astype(np.int64)
    index = pairs[:, :, 1] @ weights
    return mask, index


def _ladder_sector_np(occs, amps, mode, raising, total_out, tol):
    base = total_out + 1
    op = _raise_np if raising else _lower_np
    keys, out = op(occs, amps, mode, base)
    keys, out = _merge_np(keys, out, tol)
    return _decode_np(keys, base, occs.shape[1]), out


NUMPY_KERNELS = {
    "encode": _encode_np,
    "decode": _decode_np,
    "raise": _raise_np,
    "lower": _lower_np,
    "merge": _merge_np,
    "survivors": _survivors_np,
    "ladder_sector": _ladder_sector_np,
}


# ---------------------------------------------------------------------------
# numba path
# ---------------------------------------------------------------------------

def _build_numba_kernels():
    njit = numba.njit(cache=True, nogil=True)

    @njit
    def encode(occs, base):
        t, m = occs.shape
        keys = np.empty(t, dtype=np.int64)
        for i in range(t):
            acc = 0
            for k in range(m):
                acc = acc * base + occs[i, k]
            keys[i] = acc
        return keys

    @njit
    def decode(keys, base, n_modes):
        t = keys.shape[0]
        occs = np.empty((t, n_modes), dtype=np.int64)
        for i in range(t):
            rem = keys[i]
            for k in range(n_modes - 1, -1, -1):
                occs[i, k] = rem % base
                rem //= base
        return occs

    @njit
    def _pv(base, m):
        pv = np.empty(m, dtype=np.int64)
        acc = 1
        for k in range(m - 1, -1, -1):
            pv[k] = acc
            acc *= base
        return pv

    @njit
    def scaled_product(a, m, s):
        re = (a.real * m.real - a.imag * m.imag) * s
        im = (a.real * m.imag + a.imag * m.real) * s
        return complex(re, im)

    @njit
    def raise_(occs, amps, mode, base):
        t, m = occs.shape
        nz = np.flatnonzero(mode)
        pv = _pv(base, m)
        key_in = encode(occs, base)
        nk = nz.shape[0]
        keys = np.empty(t * nk, dtype=np.int64)
        out = np.empty(t * nk, dtype=np.complex128)
        for i in range(t):
            for j in range(nk):
                k = nz[j]
                keys[i * nk + j] = key_in[i] + pv[k]
                out[i * nk + j] = scaled_product(amps[i], mode[k], np.sqrt(occs[i, k] + 1.0))
        return keys, out

    @njit
    def lower(occs, amps, mode, base):
        t, m = occs.shape
        nz = np.flatnonzero(mode)
        pv = _pv(base, m)
        key_in = encode(occs, base)
        nk = nz.shape[0]
        keys = np.empty(t * nk, dtype=np.int64)
        out = np.empty(t * nk, dtype=np.complex128)
        n = 0
        for i in range(t):
            for j in range(nk):
                k = nz[j]
                if occs[i, k] > 0:
                    keys[n] = key_in[i] - pv[k]
                    out[n] = scaled_product(amps[i], np.conj(mode[k]), np.sqrt(np.float64(occs[i, k])))
                    n += 1
        return keys[:n], out[:n]

    @njit
    def merge(keys, amps, tol):
        n = keys.shape[0]
        order = np.argsort(keys, kind="mergesort")
        out_keys = np.empty(n, dtype=np.int64)
        out_amps = np.empty(n, dtype=np.complex128)
        u = -1
        last = 0
        for j in range(n):
            i = order[j]
            if u < 0 or keys[i] != last:
                u += 1
                out_keys[u] = keys[i]
                out_amps[u] = 0.0
                last = keys[i]
            out_amps[u] = out_amps[u] + amps[i]
        count = u + 1
        keep = np.empty(count, dtype=np.bool_)
        for j in range(count):
            keep[j] = np.abs(out_amps[j]) >= tol
        return out_keys[:count][keep], out_amps[:count][keep]

    @njit
    def survivors(occs, n_sites):
        t = occs.shape[0]
        mask = np.empty(t, dtype=np.bool_)
        index = np.zeros(t, dtype=np.int64)
        for i in range(t):
            ok = True
            x = 0
            for s in range(n_sites):
                if occs[i, 2 * s] + occs[i, 2 * s + 1] != 1:
                    ok = False
                x = 2 * x + occs[i, 2 * s + 1]
            mask[i] = ok
            index[i] = x
        return mask, index

    @njit
    def compositions(total, n_modes):
        # table[r, m] = number of ways to put r photons in m modes
        table = np.zeros((total + 1, n_modes + 1), dtype=np.int64)
        table[0, 0] = 1
        for m in range(1, n_modes + 1):
            for r in range(total + 1):
                acc = 0
                for v in range(r + 1):
                    acc += table[r - v, m - 1]
                table[r, m] = acc
        return table

    @njit
    def prefix_counts(table, total, n_modes):
        # cum[r, m, v] = number of vectors of total r over m+1 modes whose
        # leading entry is below v
        cum = np.zeros((total + 1, n_modes, total + 2), dtype=np.int64)
        for r in range(total + 1):
            for m in range(n_modes):
                acc = 0
                for v in range(r + 1):
                    cum[r, m, v] = acc
                    acc += table[r - v, m]
                cum[r, m, r + 1] = acc
        return cum

    @njit
    def rank(occ, total, cum):
        # lexicographic position of occ among vectors with the same total
        m = occ.shape[0]
        r = total
        pos = 0
        for k in range(m - 1):
            pos += cum[r, m - k - 1, occ[k]]
            r -= occ[k]
        return pos

    @njit
    def unrank(pos, total, n_modes, table, out):
        r = total
        for k in range(n_modes - 1):
            v = 0
            while pos >= table[r - v, n_modes - k - 1]:
                pos -= table[r - v, n_modes - k - 1]
                v += 1
            out[k] = v
            r -= v
        out[n_modes - 1] = r

    @njit
    def ladder_sector(occs, amps, mode, raising, total_out, tol):
        # dense accumulation over the ranked number sector: no sort needed and
        # the summation order matches the key-merge path
        t, m = occs.shape
        table = compositions(total_out, m)
        cum = prefix_counts(table, total_out, m)
        size = table[total_out, m]
        acc = np.zeros(size, dtype=np.complex128)
        nz = np.flatnonzero(mode)
        work = np.empty(m, dtype=np.int64)
        for i in range(t):
            for j in range(nz.shape[0]):
                k = nz[j]
                for c in range(m):
                    work[c] = occs[i, c]
                if raising:
                    amp = scaled_product(amps[i], mode[k], np.sqrt(work[k] + 1.0))
                    work[k] += 1
                else:
                    if work[k] == 0:
                        continue
                    amp = scaled_product(amps[i], np.conj(mode[k]), np.sqrt(np.float64(work[k])))
                    work[k] -= 1
                acc[rank(work, total_out, cum)] += amp
        count = 0
        for p in range(size):
            if np.abs(acc[p]) >= tol:
                count += 1
        out_occs = np.empty((count, m), dtype=np.int64)
        out_amps = np.empty(count, dtype=np.complex128)
        n = 0
        for p in range(size):
            if np.abs(acc[p]) >= tol:
                unrank(p, total_out, m, table, out_occs[n])
                out_amps[n] = acc[p]
                n += 1
        return out_occs, out_amps

    return {
        "ladder_sector": ladder_sector,
        "encode": encode,
        "decode": decode,
        "raise": raise_,
        "lower": lower,
        "merge": merge,
        "survivors": survivors,
    }


def _numba_requested() -> bool:
    flag = os.environ.get(NO_NUMBA_ENV, "")
    return flag in ("", "0")


NUMBA_KERNELS = _build_numba_kernels() if numba is not None else None

if NUMBA_KERNELS is not None and _numba_requested():
    BACKEND = "numba"
    KERNELS = NUMBA_KERNELS
else:
    if numba is None:
        logger.warning("numba unavailable; using the numpy kernels")
    BACKEND = "numpy"
    KERNELS = NUMPY_KERNELS


def kernels_for(backend: str | None = None) -> dict:
    """Kernel table for ``backend`` ('numba' or 'numpy'); default is active."""
    if backend is None:
        return KERNELS
    if backend == "numpy":
        return NUMPY_KERNELS
    if backend == "numba":
        if NUMBA_KERNELS is None:
            raise RuntimeError("numba backend requested but numba is not installed")
        return NUMBA_KERNELS
    raise ValueError(f"unknown backend {backend!r}")
