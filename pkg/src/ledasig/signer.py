"""Signature generation.

A signature on m is sigma = (e + c) . S^T together with the 64-bit salt
Theta* that produced it.  The syndrome s = CW(H([m|Theta]), r, w) is
redrawn with fresh salts until it lies in the kernel of the rank-z part
of Q, which makes Q.s a pure permutation of s; the error vector is then
e = [0_k | (M.s)^T] and c is a random sparse codeword of weight close to
m_g * w_g.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

from .drbg import Xof, fresh_xof
from .errors import RetryExhausted, ThetaExhausted
from .keygen import PrivateKey, apply_s, _genperm_apply_np
from .params import SysParams
from .qc import DenseBitMatrix, SparseVector

THETA_MAX = (1 << 64) - 1
_THETA_ITER_CAP = 1 << 32
_CODEWORD_RETRY_CAP = 256

_HASHES = {1: hashlib.sha3_256, 3: hashlib.sha3_384, 5: hashlib.sha3_512}


@dataclass(frozen=True)
class Signature:
    sigma: SparseVector
    theta_star: int

    def __post_init__(self):
        if not 0 <= self.theta_star <= THETA_MAX:
            raise ValueError("theta must fit in 64 bits")


def hash_digest(message: bytes, theta: int, params: SysParams) -> bytes:
    """Category-matched digest of message || theta (8 bytes little-endian)."""
    h = _HASHES[params.category]()
    h.update(message)
    h.update(int(theta).to_bytes(8, "little"))
    return h.digest()


def cw_encode(digest: bytes, length: int, weight: int) -> SparseVector:
    """Deterministic constant-weight encoding of a digest.

    The digest keys a SHAKE-256 stream feeding a partial Fisher-Yates
    shuffle over [0, length); the multiply-shift reduction keeps every
    draw rejection-free with bias below 2^-64 per position.
    """
    if weight > length:
        raise ValueError("weight cannot exceed length")
    if weight == 0:
        return SparseVector(length, ())
    stream = hashlib.shake_256(digest).digest(8 * weight)
    swapped: dict[int, int] = {}
    support = []
    for i in range(weight):
        u = int.from_bytes(stream[8 * i:8 * i + 8], "little")
        j = i + ((u * (length - i)) >> 64)
        vi = swapped.get(i, i)
        support.append(swapped.get(j, j))
        swapped[j] = vi
    return SparseVector(length, tuple(sorted(support)))


@dataclass(frozen=True)
class CwEncoder:
    """Constant-weight encoder bound to a target length and weight."""

    target_length: int
    target_weight: int

    def __call__(self, digest: bytes) -> SparseVector:
        return cw_encode(digest, self.target_length, self.target_weight)


def kernel_check(bt: DenseBitMatrix, s: SparseVector, p: int) -> bool:
    """True iff (B^T x 1_{1xp}) . s = 0.

    Column i of B selects length-p chunks of s; the condition holds when
    each selected chunk-weight sum is even.
    """
    parity = 0
    wt = np.zeros(bt.rows, dtype=np.int64)
    np.add.at(wt, np.asarray(s.support, dtype=np.int64) // p, 1)
    for j in np.flatnonzero(wt & 1):
        parity |= 1 << int(j)
    for i in range(bt.cols):
        col = sum(((bt.row_bits[j] >> i) & 1) << j for j in range(bt.rows))
        if (parity & col).bit_count() & 1:
            return False
    return True


def codeword_weight_floor(params: SysParams) -> int:
    """Smallest accepted codeword weight.

    Summing m_g generator rows loses 2 bits per overlapping pair; the
    overlap count is close to Poisson with mean mu = C(m_g,2)(w_g-1)^2/r,
    so the floor allows m_g + mu + 3*sqrt(mu) cancellations.  For the
    sparsest instances mu is well above m_g, which makes a fixed
    m_g-cancellation window unreachable.
    """
    m_g, w_g = params.m_g, params.w_g
    mu = m_g * (m_g - 1) / 2 * (w_g - 1) ** 2 / params.r
    slack = m_g + math.ceil(mu + 3 * math.sqrt(mu))
    return max(m_g, m_g * w_g - 2 * slack)


def gen_codeword(sk: PrivateKey, xof: Xof) -> np.ndarray:
    """Support of a random codeword with weight close to m_g * w_g."""
    prm = sk.params
    p, k, r = prm.p, prm.k, prm.r
    target = prm.m_g * prm.w_g
    floor = codeword_weight_floor(prm)
    cols, rots = sk.v_row_structure
    for _ in range(_CODEWORD_RETRY_CAP):
        u = xof.distinct(k, prm.m_g)
        counts = np.zeros(r, dtype=np.int16)
        for pos in u:
            b, o = divmod(pos, p)
            np.add.at(counts, cols[b] * p + (rots[b] + o) % p, 1)
        right = np.flatnonzero(counts & 1).astype(np.int64)
        weight = prm.m_g + len(right)
        if floor <= weight <= target:
            u_arr = np.array(sorted(u), dtype=np.int64)
            return np.concatenate((u_arr, right + k))
    raise RetryExhausted(
        f"no codeword reached weight window after {_CODEWORD_RETRY_CAP} draws")


def gen_error(sk: PrivateKey, message: bytes, xof: Xof):
    """Salt search: returns (theta_star, e support, syndrome s)."""
    prm = sk.params
    for _ in range(_THETA_ITER_CAP):
        theta = xof.u64()
        digest = hash_digest(message, theta, prm)
        s = cw_encode(digest, prm.r, prm.w)
        if kernel_check(sk.q.b, s, prm.p):
            s_perm = _genperm_apply_np(
                sk.m_perm, np.asarray(s.support, dtype=np.int64))
            return theta, s_perm + prm.k, s
    raise ThetaExhausted("no salt passed the kernel test")


def sign(sk: PrivateKey, message: bytes, rng: Xof | None = None) -> Signature:
    """Produce a signature; rng only controls salt and codeword choice."""
    xof = rng if rng is not None else fresh_xof()
    prm = sk.params
    c_sup = gen_codeword(sk, xof)
    theta_star, e_sup, _ = gen_error(sk, message, xof)
    x = np.setxor1d(c_sup, e_sup)
    sigma = apply_s(sk, x)
    return Signature(
        SparseVector(prm.n, tuple(int(i) for i in sigma)), theta_star)
