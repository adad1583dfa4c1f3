"""Brute-force reference computations, independent of the ladder-operator code."""

import itertools
import math

import numpy as np


def overlap_by_summation(q, w):
    total = 0j
    for a, b in zip(q, w):
        total += complex(a).conjugate() * complex(b)
    return total


def expand_product(mode_list, n_modes):
    """``prod_j a^+_{m_j} |vac>`` as ``{occ: amplitude}`` by enumerating every
    ordered choice of basis mode per factor."""
    sums = {}
    supports = [[k for k in range(n_modes) if abs(m[k]) > 0] for m in mode_list]
    for seq in itertools.product(*supports):
        coeff = 1 + 0j
        for m, k in zip(mode_list, seq):
            coeff *= complex(m[k])
        occ = [0] * n_modes
        for k in seq:
            occ[k] += 1
        occ = tuple(occ)
        sums[occ] = sums.get(occ, 0j) + coeff
    # prod b_k^+ |vac> = sqrt(prod occ_k!) |occ>
    return {
        occ: amp * math.sqrt(math.prod(math.factorial(o) for o in occ))
        for occ, amp in sums.items()
    }


def fock_in_mode_oracle(mode, N):
    n_modes = len(mode)
    raw = expand_product([mode] * N, n_modes)
    scale = 1 / math.sqrt(math.factorial(N))
    return {occ: a * scale for occ, a in raw.items() if abs(a) > 1e-15}


def ssrc_oracle(c, q, w):
    """``sum_n c_n (a_q^+)^n (a_w^+)^(N-n)/sqrt(n!(N-n)!)``, term by term."""
    N = len(c) - 1
    out = {}
    for n in range(N + 1):
        if c[n] == 0:
            continue
        raw = expand_product([q] * n + [w] * (N - n), len(q))
        scale = c[n] / math.sqrt(math.factorial(n) * math.factorial(N - n))
        for occ, amp in raw.items():
            out[occ] = out.get(occ, 0j) + scale * amp
    return {occ: a for occ, a in out.items() if abs(a) > 1e-15}


def project_oracle(terms, N):
    """Keep one-photon-per-site terms; bit i is the internal state of site i+1."""
    amps = np.zeros(2**N, dtype=complex)
    for occ, amp in terms.items():
        pairs = [(occ[2 * i], occ[2 * i + 1]) for i in range(N)]
        if all(a + b == 1 for a, b in pairs):
            x = 0
            for _, b in pairs:
                x = 2 * x + b
            amps[x] += amp
    return amps


def dict_distance(a, b):
    keys = set(a) | set(b)
    return max((abs(a.get(k, 0) - b.get(k, 0)) for k in keys), default=0.0)


def random_mode(dim, rng):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_orthonormal_pair(dim, rng):
    z = rng.normal(size=(dim, 2)) + 1j * rng.normal(size=(dim, 2))
    qmat, _ = np.linalg.qr(z)
    return qmat[:, 0], qmat[:, 1]


def entropy_bits(probs):
    probs = np.asarray([p for p in probs if p > 0])
    probs = probs / probs.sum()
    return float(-np.sum(probs * np.log2(probs)))
