"""Dense GF(2) oracles used to cross-check the structured fast paths.

Everything here expands matrices to dense row-int form and multiplies
naively; it is only meant for toy-sized parameters.
"""

import numpy as np

from ledasig.keygen import PrivateKey, q_correction_mask
from ledasig.qc import (GenPermutation, QcMatrix, circulant_rows,
                        mask_of)


def dense_mul(a: list[int], b: list[int], cols_b: int) -> list[int]:
    """Rows-of-int product of a (rows x len(b)) and b (len(b) x cols_b)."""
    out = []
    for row in a:
        acc = 0
        rr = row
        while rr:
            low = rr & -rr
            acc ^= b[low.bit_length() - 1]
            rr ^= low
        out.append(acc)
    return out


def dense_eye(n: int) -> list[int]:
    return [1 << i for i in range(n)]


def dense_vec_mul(rows: list[int], v: int) -> int:
    out = 0
    for i, r in enumerate(rows):
        if (r & v).bit_count() & 1:
            out |= 1 << i
    return out


def kron_with_identity(rows: list[int], ncols: int, p: int) -> list[int]:
    """Dense rows of M x I_p given dense rows of M."""
    out = []
    for row in rows:
        for o in range(p):
            v = 0
            rr = row
            while rr:
                low = rr & -rr
                j = low.bit_length() - 1
                v |= 1 << (j * p + o)
                rr ^= low
            out.append(v)
    return out


def kron_all_ones(mat_rows: list[int], ncols: int, p: int) -> list[int]:
    """Dense rows of M x 1_{pxp}."""
    ones = mask_of(p)
    out = []
    for row in mat_rows:
        v = 0
        rr = row
        while rr:
            low = rr & -rr
            v |= ones << ((low.bit_length() - 1) * p)
            rr ^= low
        out.extend([v] * p)
    return out


def genperm_dense(perm: GenPermutation) -> list[int]:
    return perm.to_dense_rows()


def s_dense(sk: PrivateKey) -> list[int]:
    """Dense S = PiLambda . (E x I_p) . PiPhi."""
    prm = sk.params
    e_rows = circulant_rows(sk.s.e_poly, prm.n0)
    ekron = kron_with_identity(e_rows, prm.n0, prm.p)
    lam = genperm_dense(sk.pi_lambda)
    phi = genperm_dense(sk.pi_phi)
    return dense_mul(dense_mul(lam, ekron, prm.n), phi, prm.n)


def s_inv_dense(sk: PrivateKey) -> list[int]:
    prm = sk.params
    e_rows = circulant_rows(sk.s.e_inv, prm.n0)
    ekron = kron_with_identity(e_rows, prm.n0, prm.p)
    lam_t = dense_transpose(genperm_dense(sk.pi_lambda), prm.n)
    phi_t = dense_transpose(genperm_dense(sk.pi_phi), prm.n)
    return dense_mul(dense_mul(phi_t, ekron, prm.n), lam_t, prm.n)


def q_dense(sk: PrivateKey) -> list[int]:
    """Dense Q = M + (A B^T) x 1_{pxp}."""
    prm = sk.params
    m_rows = genperm_dense(sk.m_perm)
    ab = []
    for i in range(prm.r0):
        row = 0
        for j in range(prm.r0):
            acc = 0
            for t in range(prm.z):
                acc ^= sk.q.a.get(i, t) & sk.q.b.get(j, t)
            row |= acc << j
        ab.append(row)
    r_rows = kron_all_ones(ab, prm.r0, prm.p)
    return [m ^ r for m, r in zip(m_rows, r_rows)]


def q_inv_dense(sk: PrivateKey) -> list[int]:
    prm = sk.params
    m_t = dense_transpose(genperm_dense(sk.m_perm), prm.r)
    k = q_correction_mask(sk.q, prm.r0)
    k_rows = [int("".join(str(b) for b in reversed(k[i])), 2) if k[i].any() else 0
              for i in range(prm.r0)]
    corr = kron_all_ones(k_rows, prm.r0, prm.p)
    return [m ^ c for m, c in zip(m_t, corr)]


def h_dense(sk: PrivateKey) -> list[int]:
    """Dense H = [V^T | I_r]."""
    prm = sk.params
    vt = qc_dense(sk.v.transpose())
    return [row | (1 << (prm.k + i)) for i, row in enumerate(vt)]


def g_dense(sk: PrivateKey) -> list[int]:
    """Dense G = [I_k | V]."""
    prm = sk.params
    v_rows = qc_dense(sk.v)
    return [(1 << i) | (v_rows[i] << prm.k) for i in range(prm.k)]


def qc_dense(mat: QcMatrix) -> list[int]:
    return mat.to_dense_rows()


def dense_transpose(rows: list[int], ncols: int) -> list[int]:
    out = [0] * ncols
    for i, row in enumerate(rows):
        rr = row
        while rr:
            low = rr & -rr
            out[low.bit_length() - 1] |= 1 << i
            rr ^= low
    return out


def support_to_int(support) -> int:
    v = 0
    for i in support:
        v |= 1 << int(i)
    return v


def int_to_support(v: int) -> np.ndarray:
    out = []
    while v:
        low = v & -v
        out.append(low.bit_length() - 1)
        v ^= low
    return np.array(out, dtype=np.int64)
