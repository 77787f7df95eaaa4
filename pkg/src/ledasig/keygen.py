"""Key generation: sparse generator, structured scrambling factors and
the dense quasi-cyclic public key.

The private key is kept in factored form.  S = PiLambda . (E x I_p) . PiPhi
with E an invertible circulant over n0 and PiLambda/PiPhi generalized
permutations, so S^-1 costs one small polynomial inversion.  Q = M + R with
M a generalized permutation and R = (A . B^T) x 1_{pxp} of rank at most z;
Q^-1 = M^T + (Pi^T A D^-1 B^T Pi^T) x 1_{pxp} via the Woodbury identity,
where D = I_z + B^T Pi^T A for odd p and D = I_z for even p.

Everything is derived deterministically from a seed: the sampler call
order below is fixed and replaying a seed reproduces the key bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .drbg import Xof
from .errors import NotInvertible, Singular
from .packed import PackedQc
from .params import SysParams
from .qc import (DenseBitMatrix, GenPermutation, QcMatrix, dense_invert,
                 genperm_from_left, genperm_from_right, inverse_int,
                 mask_of, rotl_int)


@dataclass(frozen=True)
class SFactors:
    """Factors of the row/column scrambler S (all sizes over n0 blocks)."""

    lam_rots: tuple[int, ...]
    phi_rots: tuple[int, ...]
    perm1: tuple[int, ...]
    perm2: tuple[int, ...]
    e_poly: int
    e_inv: int


@dataclass(frozen=True)
class QFactors:
    """Factors of the syndrome scrambler Q (all sizes over r0 blocks)."""

    perm: tuple[int, ...]
    psi_rots: tuple[int, ...]
    a: DenseBitMatrix          # r0 x z
    b: DenseBitMatrix          # r0 x z
    d_inv: DenseBitMatrix      # z x z


@dataclass(eq=False)
class PrivateKey:
    """Factored private key; treated as immutable after construction."""

    params: SysParams
    seed: bytes
    v: QcMatrix                # k0 x r0 grid of circulant permutations
    s: SFactors
    q: QFactors

    def __eq__(self, other):
        return (isinstance(other, PrivateKey)
                and (self.params, self.seed, self.v, self.s, self.q)
                == (other.params, other.seed, other.v, other.s, other.q))

    @cached_property
    def pi_lambda(self) -> GenPermutation:
        return genperm_from_left(list(self.s.perm1), list(self.s.lam_rots),
                                 self.params.p)

    @cached_property
    def pi_phi(self) -> GenPermutation:
        return genperm_from_right(list(self.s.perm2), list(self.s.phi_rots),
                                  self.params.p)

    @cached_property
    def m_perm(self) -> GenPermutation:
        return genperm_from_right(list(self.q.perm), list(self.q.psi_rots),
                                  self.params.p)

    @cached_property
    def v_row_structure(self):
        """Per block row: (block column indices, rotation exponents)."""
        cols, rots = [], []
        for row in self.v.blocks:
            cc = np.array([j for j, b in enumerate(row) if b], dtype=np.int64)
            tt = np.array([row[j].bit_length() - 1 for j in cc], dtype=np.int64)
            cols.append(cc)
            rots.append(tt)
        return cols, rots


@dataclass(eq=False)
class PublicKey:
    params: SysParams
    hp: QcMatrix               # r0 x n0 grid of dense circulant blocks
    _packed: PackedQc | None = field(default=None, repr=False, compare=False)

    @property
    def packed(self) -> PackedQc:
        if self._packed is None:
            self._packed = PackedQc(self.hp)
        return self._packed

    def __eq__(self, other):
        return (isinstance(other, PublicKey)
                and self.params == other.params and self.hp == other.hp)


# ---------------------------------------------------------------------------
# generation of the individual factors


def gen_v(params: SysParams, xof: Xof) -> QcMatrix:
    """Sparse k0 x r0 grid with w_g - 1 circulant permutations per row."""
    rows = []
    for _ in range(params.k0):
        row = [0] * params.r0
        for col in xof.distinct(params.r0, params.w_g - 1):
            row[col] = 1 << xof.rotation(params.p)
        rows.append(tuple(row))
    return QcMatrix(params.k0, params.r0, params.p, tuple(rows))


def gen_s(params: SysParams, xof: Xof) -> SFactors:
    n0 = params.n0
    while True:
        e_poly = xof.sparse_poly(n0, params.m_S)
        try:
            e_inv = inverse_int(e_poly, n0)
        except NotInvertible:
            # unreachable when ord_{n0}(2) = n0 - 1 and m_S is odd
            continue
        break
    perm1 = tuple(xof.permutation(n0))
    perm2 = tuple(xof.permutation(n0))
    lam, phi = [], []
    for _ in range(n0):
        lam.append(xof.rotation(params.p))
        phi.append(xof.rotation(params.p))
    return SFactors(tuple(lam), tuple(phi), perm1, perm2, e_poly, e_inv)


def compute_d(params: SysParams, perm, a: DenseBitMatrix,
              b: DenseBitMatrix) -> DenseBitMatrix:
    """D = I_z + B^T Pi^T A for odd p, I_z for even p."""
    z = params.z
    if params.p % 2 == 0:
        return DenseBitMatrix.identity(z)
    inv_perm = _invert_perm(perm)
    d_rows = []
    for i in range(z):
        row = 0
        for j in range(z):
            acc = 1 if i == j else 0
            for k in range(params.r0):
                acc ^= ((b.row_bits[k] >> i)
                        & (a.row_bits[inv_perm[k]] >> j) & 1)
            row |= acc << j
        d_rows.append(row)
    return DenseBitMatrix.from_rows(d_rows, z)


def gen_q(params: SysParams, xof: Xof) -> QFactors:
    r0, z, p = params.r0, params.z, params.p
    while True:
        perm = tuple(xof.permutation(r0))
        a = DenseBitMatrix.from_rows(xof.bit_matrix(r0, z), z)
        b = DenseBitMatrix.from_rows(xof.bit_matrix(r0, z), z)
        try:
            d_inv = dense_invert(compute_d(params, perm, a, b))
        except Singular:
            continue
        psi = tuple(xof.rotation(p) for _ in range(r0))
        return QFactors(perm, psi, a, b, d_inv)


def _invert_perm(perm) -> list[int]:
    inv = [0] * len(perm)
    for i, j in enumerate(perm):
        inv[j] = i
    return inv


# ---------------------------------------------------------------------------
# application procedures for S, S^-1, M and Q^-1 on sparse supports


def _kron_blockmix_apply(poly: int, n0: int, p: int, pos: np.ndarray) -> np.ndarray:
    """Support of (C(poly) x I_p) . x for x given by support `pos`.

    C(poly) is the n0 x n0 circulant of `poly`; output block i collects
    input blocks (i + d) % n0 over the support d of poly.
    """
    offs = np.array([d for d in range(n0) if (poly >> d) & 1], dtype=np.int64)
    blk, o = pos // p, pos % p
    out_blk = (blk[:, None] - offs[None, :]) % n0
    flat = (out_blk * p + o[:, None]).ravel()
    counts = np.zeros(n0 * p, dtype=np.int32)
    np.add.at(counts, flat, 1)
    return np.flatnonzero(counts & 1).astype(np.int64)


def _genperm_apply_np(perm: GenPermutation, pos: np.ndarray,
                      transpose: bool = False) -> np.ndarray:
    p = perm.p
    bp = np.array(perm.block_perm, dtype=np.int64)
    rot = np.array(perm.rotations, dtype=np.int64)
    blk, o = pos // p, pos % p
    if not transpose:
        out = bp[blk] * p + (o + rot[blk]) % p
    else:
        inv = np.empty_like(bp)
        inv[bp] = np.arange(len(bp), dtype=np.int64)
        src = inv[blk]
        out = src * p + (o - rot[src]) % p
    return np.sort(out)


def apply_s(sk: PrivateKey, pos: np.ndarray) -> np.ndarray:
    """Support of S . x^T (column action) for x given by support."""
    prm = sk.params
    pos = _genperm_apply_np(sk.pi_phi, pos)
    pos = _kron_blockmix_apply(sk.s.e_poly, prm.n0, prm.p, pos)
    return _genperm_apply_np(sk.pi_lambda, pos)


def invert_s(sk: PrivateKey):
    """Application procedure for S^-1 (column action on supports)."""
    prm = sk.params

    def apply_s_inv(pos: np.ndarray) -> np.ndarray:
        out = _genperm_apply_np(sk.pi_lambda, pos, transpose=True)
        out = _kron_blockmix_apply(sk.s.e_inv, prm.n0, prm.p, out)
        return _genperm_apply_np(sk.pi_phi, out, transpose=True)

    return apply_s_inv


def q_correction_mask(q: QFactors, r0: int) -> np.ndarray:
    """Dense r0 x r0 matrix K = Pi^T A D^-1 B^T Pi^T of the rank-z term."""
    z = q.a.cols
    inv_perm = _invert_perm(q.perm)
    pa = np.array([[q.a.get(inv_perm[k], j) for j in range(z)]
                   for k in range(r0)], dtype=np.uint8)
    dinv = np.array([[q.d_inv.get(i, j) for j in range(z)]
                     for i in range(z)], dtype=np.uint8)
    btp = np.array([[q.b.get(q.perm[j], i) for j in range(r0)]
                    for i in range(z)], dtype=np.uint8)
    return (pa @ dinv @ btp) & 1


def invert_q(sk: PrivateKey):
    """Application procedure for Q^-1 (column action on supports)."""
    prm = sk.params
    p, r0 = prm.p, prm.r0
    kmat = q_correction_mask(sk.q, r0)
    m_perm = sk.m_perm

    def apply_q_inv(pos: np.ndarray) -> np.ndarray:
        out = _genperm_apply_np(m_perm, pos, transpose=True)
        # rank-z correction: block parities in, all-ones blocks out
        parities = np.zeros(r0, dtype=np.uint8)
        np.add.at(parities, pos // p, 1)
        flagged = (kmat @ (parities & 1)) & 1
        if flagged.any():
            ones = np.flatnonzero(flagged).astype(np.int64)
            full = (ones[:, None] * p + np.arange(p)[None, :]).ravel()
            counts = np.zeros(r0 * p, dtype=np.int32)
            np.add.at(counts, out, 1)
            np.add.at(counts, full, 1)
            out = np.flatnonzero(counts & 1).astype(np.int64)
        return out

    return apply_q_inv


# ---------------------------------------------------------------------------
# public key


def build_public_key(sk: PrivateKey) -> PublicKey:
    """Dense grid [Q^-1 V^T | Q^-1] . S^-1 built without expanding Q^-1.

    Intermediate blocks are kept as (single coefficient, all-ones flag)
    pairs until the final dense mixing step; the all-ones polynomial is
    invariant under rotations, so the flags just travel along.
    """
    prm = sk.params
    p, n0, r0, k0 = prm.p, prm.n0, prm.r0, prm.k0
    kmat = q_correction_mask(sk.q, r0)
    inv_perm = _invert_perm(sk.q.perm)

    # X = [M^T V^T | M^T] as single-coefficient positions, -1 for null
    pos = np.full((r0, n0), -1, dtype=np.int64)
    for i in range(r0):
        ki = inv_perm[i]
        vi = sk.q.psi_rots[i]
        for j in range(k0):
            blk = sk.v.blocks[j][ki]
            if blk:
                t = blk.bit_length() - 1
                pos[i, j] = (-vi - t) % p
        pos[i, k0 + ki] = (-vi) % p

    # all-ones flags from the rank-z part of Q^-1
    nzv = np.array([[1 if sk.v.blocks[j][k] else 0 for k in range(r0)]
                    for j in range(k0)], dtype=np.uint8)
    jf = np.empty((r0, n0), dtype=np.uint8)
    jf[:, :k0] = (kmat @ nzv.T) & 1
    jf[:, k0:] = kmat

    # right-multiply by PiPhi^T: permute block columns, add rotations
    pos, jf = _mul_genperm_t_cols(pos, jf, sk.pi_phi, p)

    # right-multiply by (E^-1 x I_p): scatter single coefficients, then
    # carry the flags through the circulant of E^-1
    e_inv = sk.s.e_inv
    offs = np.array([d for d in range(n0) if (e_inv >> d) & 1], dtype=np.int64)
    einv_circ = _circulant_bits(e_inv, n0)
    jf = (jf @ einv_circ) & 1

    bits_rows = []
    for i in range(r0):
        counts = np.zeros(n0 * p, dtype=np.int16)
        src = np.flatnonzero(pos[i] >= 0)
        if len(src):
            tgt = ((src[:, None] + offs[None, :]) % n0) * p
            flat = (tgt + pos[i, src][:, None]).ravel()
            np.add.at(counts, flat, 1)
        bits_rows.append((counts & 1).astype(np.uint8).reshape(n0, p))

    # right-multiply by PiLambda^T on dense blocks
    inv2 = np.empty(n0, dtype=np.int64)
    bp2 = np.array(sk.pi_lambda.block_perm, dtype=np.int64)
    inv2[bp2] = np.arange(n0)
    rot2 = np.array(sk.pi_lambda.rotations, dtype=np.int64)
    full_mask = mask_of(p)

    rows = []
    for i in range(r0):
        packed = np.packbits(bits_rows[i], axis=1, bitorder="little")
        ints = [int.from_bytes(packed[jb].tobytes(), "little")
                for jb in range(n0)]
        row = []
        for j in range(n0):
            src = inv2[j]
            val = rotl_int(ints[src], int(rot2[src]), p)
            if jf[i, src]:
                val ^= full_mask
            row.append(val)
        rows.append(tuple(row))
    return PublicKey(prm, QcMatrix(r0, n0, p, tuple(rows)))


def _mul_genperm_t_cols(pos, jf, perm: GenPermutation, p: int):
    """Columns of X . P^T: output column j = column inv(j), rotated."""
    n = len(perm.block_perm)
    inv = np.empty(n, dtype=np.int64)
    inv[np.array(perm.block_perm)] = np.arange(n)
    rot = np.array(perm.rotations, dtype=np.int64)[inv]
    new_pos = pos[:, inv].copy()
    live = new_pos >= 0
    new_pos[live] = (new_pos[live] + np.broadcast_to(rot, new_pos.shape)[live]) % p
    return new_pos, jf[:, inv]


def _circulant_bits(poly: int, n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=np.uint8)
    sup = [d for d in range(n) if (poly >> d) & 1]
    for k in range(n):
        for d in sup:
            out[k, (k + d) % n] = 1
    return out


# ---------------------------------------------------------------------------
# seed expansion


def keypair_from_seed(seed: bytes, params: SysParams) -> tuple[PrivateKey, PublicKey]:
    """Deterministic keypair: same seed and params give identical bits."""
    if len(seed) != params.seed_bytes:
        raise ValueError(
            f"seed must be {params.seed_bytes} bytes for category "
            f"{params.category}, got {len(seed)}")
    xof = Xof(seed)
    v = gen_v(params, xof)
    s = gen_s(params, xof)
    q = gen_q(params, xof)
    sk = PrivateKey(params=params, seed=bytes(seed), v=v, s=s, q=q)
    return sk, build_public_key(sk)


def private_key_from_seed(seed: bytes, params: SysParams) -> PrivateKey:
    """Expand only the private half (verification key not materialized)."""
    if len(seed) != params.seed_bytes:
        raise ValueError("seed length does not match category")
    xof = Xof(seed)
    v = gen_v(params, xof)
    s = gen_s(params, xof)
    q = gen_q(params, xof)
    return PrivateKey(params=params, seed=bytes(seed), v=v, s=s, q=q)
