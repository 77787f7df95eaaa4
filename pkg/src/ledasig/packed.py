"""Word-packed syndrome computation for dense quasi-cyclic matrices.

The public-key action H' . sigma^T is evaluated by grouping the set bits
of sigma by their offset inside a circulant block: every offset t selects
a subset of block columns, whose packed rows are XOR-reduced and then
shifted by t into an unreduced 2p-bit accumulator, folded once at the end.

Cost is weight(sigma) * r0 * ceil(p/64) word operations.  A numba kernel
parallelized over block rows is used when available; the numpy fallback
implements the identical accumulation.
"""

from __future__ import annotations

import warnings

import numpy as np

from .qc import QcMatrix, mask_of

try:
    # the TBB-version probe warns on some hosts; the omp/workqueue
    # fallback layers are fine for this workload
    warnings.filterwarnings(
        "ignore", message=".*TBB.*", module="numba.np.ufunc.parallel")
    import numba

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None
    _HAVE_NUMBA = False

# incremented once per syndrome product; lets tests observe that the
# verifier's weight gate short-circuits before any matrix work
COUNTERS = {"syndrome_products": 0}


if _HAVE_NUMBA:

    @numba.njit(parallel=True, cache=True)
    def _accumulate_numba(ht, blk_sorted, offsets, starts, acc):
        # pragma: no cover - jitted
        r0, _, nw = ht.shape
        ngroups = offsets.shape[0]
        for i in numba.prange(r0):
            u = np.zeros(nw, dtype=np.uint64)
            for g in range(ngroups):
                for wd in range(nw):
                    u[wd] = np.uint64(0)
                for idx in range(starts[g], starts[g + 1]):
                    j = blk_sorted[idx]
                    for wd in range(nw):
                        u[wd] ^= ht[i, j, wd]
                t = offsets[g]
                q = t // 64
                s = np.uint64(t % 64)
                if s == np.uint64(0):
                    for wd in range(nw):
                        acc[i, q + wd] ^= u[wd]
                else:
                    sr = np.uint64(64) - s
                    for wd in range(nw):
                        v = u[wd]
                        acc[i, q + wd] ^= v << s
                        acc[i, q + wd + 1] ^= v >> sr


def _offset_groups(blk, off):
    """Sort support by in-block offset; returns groups of equal offsets."""
    order = np.argsort(off, kind="stable")
    off_sorted = off[order]
    blk_sorted = blk[order]
    cuts = np.flatnonzero(np.diff(off_sorted)) + 1
    starts = np.concatenate(([0], cuts, [len(off_sorted)]))
    offsets = off_sorted[starts[:-1]]
    return blk_sorted, offsets, starts


def _accumulate_numpy(ht_by_col, blk_sorted, offsets, starts, acc, nw):
    for g in range(len(offsets)):
        sel = blk_sorted[starts[g]:starts[g + 1]]
        if len(sel) == 1:
            u = ht_by_col[sel[0]]
        else:
            u = np.bitwise_xor.reduce(ht_by_col[sel], axis=0)
        u = u.reshape(-1, nw)
        q, s = divmod(int(offsets[g]), 64)
        if s == 0:
            acc[:, q:q + nw] ^= u
        else:
            acc[:, q:q + nw] ^= u << np.uint64(s)
            acc[:, q + 1:q + 1 + nw] ^= u >> np.uint64(64 - s)


class PackedQc:
    """Transposed, word-packed image of a QC matrix for column actions."""

    def __init__(self, mat: QcMatrix, use_numba: bool | None = None):
        self.rows_blocks = mat.rows_blocks
        self.cols_blocks = mat.cols_blocks
        self.p = mat.p
        self.words = (mat.p + 63) // 64
        self.use_numba = _HAVE_NUMBA if use_numba is None else use_numba
        self._build(mat)

    def _build(self, mat: QcMatrix):
        p, nw = self.p, self.words
        r0, n0 = self.rows_blocks, self.cols_blocks
        rev = (p - np.arange(p)) % p
        packed = np.empty((r0, n0, nw), dtype=np.uint64)
        chunk = max(1, (1 << 25) // max(1, n0 * p))
        for lo in range(0, r0, chunk):
            hi = min(r0, lo + chunk)
            buf = b"".join(
                b.to_bytes(nw * 8, "little")
                for i in range(lo, hi) for b in mat.blocks[i])
            raw = np.frombuffer(buf, dtype=np.uint8).reshape(hi - lo, n0, nw * 8)
            bits = np.unpackbits(raw, axis=2, bitorder="little")[:, :, :p]
            tbits = bits[:, :, rev]
            pad = np.zeros((hi - lo, n0, nw * 64 - p), dtype=np.uint8)
            full = np.concatenate((tbits, pad), axis=2)
            packed[lo:hi] = np.packbits(
                full, axis=2, bitorder="little").view(np.uint64)
        self.by_row = np.ascontiguousarray(packed)
        self.by_col = np.ascontiguousarray(
            packed.transpose(1, 0, 2).reshape(n0, r0 * nw))

    def mul_support(self, support) -> int:
        """H . v^T for v given by its support; returns packed r-bit int."""
        COUNTERS["syndrome_products"] += 1
        p, nw, r0 = self.p, self.words, self.rows_blocks
        pos = np.asarray(support, dtype=np.int64)
        acc = np.zeros((r0, 2 * nw + 1), dtype=np.uint64)
        if len(pos):
            blk_sorted, offsets, starts = _offset_groups(pos // p, pos % p)
            if self.use_numba:
                _accumulate_numba(self.by_row, blk_sorted, offsets, starts, acc)
            else:
                _accumulate_numpy(self.by_col, blk_sorted, offsets, starts,
                                  acc, nw)
        mask = mask_of(p)
        out = 0
        shift = 0
        for i in range(r0):
            x = int.from_bytes(acc[i].tobytes(), "little")
            x = (x & mask) ^ (x >> p)
            x = (x & mask) ^ (x >> p)
            out |= x << shift
            shift += p
        return out
