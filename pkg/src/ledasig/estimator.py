"""Attack work factors and key-lifetime bounds, all in the log2 domain.

Covers: information-set decoding costs (quantum Stern with Grover
iteration counts, and the 2^(c*w) classical approximation), signature
space and collision bounds, forgery attacks built from linear
combinations of signatures (LCA) and from support intersections (SIA),
and the statistical key-recovery lifetime bound based on bit-pair
coincidence counting.

Binomials of size C(~30000, ~900) appear throughout, so probabilities
are carried as log2 values and sums use max-shifted exponential sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from .params import SysParams

LN2 = math.log(2.0)
NEG_INF = float("-inf")
_cache = lru_cache(maxsize=None)


# ---------------------------------------------------------------------------
# log-domain basics


def log2_binom(n: float, k: float) -> float:
    """log2 C(n, k); exact integer arithmetic for n <= 64."""
    if k < 0 or k > n:
        raise ValueError(f"binomial C({n}, {k}) undefined")
    if float(n).is_integer() and n <= 64:
        return math.log2(math.comb(int(n), int(round(k))))
    return (math.lgamma(n + 1) - math.lgamma(k + 1)
            - math.lgamma(n - k + 1)) / LN2


def _lb(n: float, k: float) -> float:
    """log2 C(n, k) with -inf for infeasible arguments."""
    if k < 0 or n < 0 or k > n:
        return NEG_INF
    return (math.lgamma(n + 1) - math.lgamma(k + 1)
            - math.lgamma(n - k + 1)) / LN2


def log2_sum(values) -> float:
    """log2 of a sum of 2^v terms, max-shifted for stability."""
    vals = [v for v in values if v != NEG_INF]
    if not vals:
        return NEG_INF
    m = max(vals)
    return m + math.log2(sum(2.0 ** (v - m) for v in vals))


# ---------------------------------------------------------------------------
# AND / XOR weight distributions of independent fixed-weight vectors


def _pair_and_dist(n: int, w1: int, w2: int) -> np.ndarray:
    """log2 P[wt(v1 & v2) = x] over x = 0..min(w1, w2)."""
    out = np.full(min(w1, w2) + 1, NEG_INF)
    denom = _lb(n, w2)
    for x in range(max(0, w1 + w2 - n), min(w1, w2) + 1):
        out[x] = _lb(w1, x) + _lb(n - w1, w2 - x) - denom
    return out


def and_weight_dist(n: int, weights) -> np.ndarray:
    """log2 distribution of wt(v1 & ... & vm) for independent vectors."""
    weights = list(weights)
    dist = np.full(weights[0] + 1, NEG_INF)
    dist[weights[0]] = 0.0
    for w in weights[1:]:
        new = np.full(len(dist), NEG_INF)
        for x in range(len(dist)):
            if dist[x] == NEG_INF:
                continue
            pair = _pair_and_dist(n, x, w)
            stop = min(len(pair), len(new))
            new[:stop] = np.logaddexp2(new[:stop], dist[x] + pair[:stop])
        dist = new[:max(1, min(weights) + 1)]
    return dist


@_cache
def _iterated_and_dist(n: int, w: int, count: int) -> np.ndarray:
    return and_weight_dist(n, [w] * count)


def p_and(n: int, weights, y: int) -> float:
    """log2 P[wt(AND of the given weight-w_i vectors) = y]."""
    dist = and_weight_dist(n, weights)
    return float(dist[y]) if y < len(dist) else NEG_INF


def _pair_xor_dist(n: int, w1: int, w2: int) -> np.ndarray:
    """log2 P[wt(v1 ^ v2) = y] over y = 0..n (parity-constrained)."""
    out = np.full(n + 1, NEG_INF)
    denom = _lb(n, w2)
    for y in range(abs(w1 - w2), min(w1 + w2, n) + 1):
        if (w1 + w2 - y) % 2:
            continue
        x = (w1 + w2 - y) // 2
        out[y] = _lb(w1, x) + _lb(n - w1, w2 - x) - denom
    return out


def xor_weight_dist(n: int, weights) -> np.ndarray:
    weights = list(weights)
    dist = np.full(n + 1, NEG_INF)
    dist[weights[0]] = 0.0
    for w in weights[1:]:
        new = np.full(n + 1, NEG_INF)
        for x in range(n + 1):
            if dist[x] == NEG_INF:
                continue
            pair = _pair_xor_dist(n, x, w)
            live = np.flatnonzero(pair != NEG_INF)
            new[live] = np.logaddexp2(new[live], dist[x] + pair[live])
        dist = new
    return dist


def p_xor(n: int, weights, y: int) -> float:
    """log2 P[wt(XOR of the given weight-w_i vectors) = y]."""
    if y > n or y < 0:
        return NEG_INF
    return float(xor_weight_dist(n, weights)[y])


# ---------------------------------------------------------------------------
# information-set decoding


@dataclass(frozen=True)
class SternParams:
    l: int
    j: int


@dataclass(frozen=True)
class IsdTarget:
    """One decoding / codeword-finding problem instance."""

    n: int
    k: int
    w_target: int
    multiplicity: int = 1          # equivalent solutions (speedup divisor)
    qc_order: int | None = None    # circulant size, for the sqrt(p) speedup


def stern_success_log2(n: int, k: int, w: int, sp: SternParams) -> float:
    """log2 of the per-iteration success probability of Stern's algorithm."""
    l, j = sp.l, sp.j
    num = (_lb(w, 2 * j) + _lb(n - w, k - 2 * j) + _lb(2 * j, j)
           + _lb(n - k - w + 2 * j, l))
    den = 2 * j + _lb(n, k) + _lb(n - k, l)
    if num == NEG_INF or den == NEG_INF:
        return NEG_INF
    return min(num - den, 0.0)


def _stern_iteration_cost_log2(n: int, k: int, sp: SternParams) -> float:
    """log2 of c_it + c_inv for one (reversible) Stern iteration."""
    l, j = sp.l, sp.j
    half_k = k / 2.0
    c_inv = math.log2(0.5 * (n - k) ** 3 + k * (n - k) ** 2)
    terms = [c_inv]
    if j > 0:
        lbkj = _lb(half_k, j)
        if l > 0:
            terms.append(math.log2(2 * l * j) + lbkj)
        terms.append(math.log2(2 * j * (n - k)) + 2 * lbkj - l)
    return log2_sum(terms)


_P_INV_LOG2 = math.log2(0.29)
_GROVER_PREFACTOR_LOG2 = math.log2(math.pi / 4.0)


def _stern_wf_at(n: int, k: int, w: int, sp: SternParams) -> float:
    pe = stern_success_log2(n, k, w, sp)
    if pe == NEG_INF:
        return math.inf
    iters = _GROVER_PREFACTOR_LOG2 + 0.5 * (-_P_INV_LOG2 - pe)
    return iters + _stern_iteration_cost_log2(n, k, sp)


def quantum_stern_wf(target: IsdTarget) -> tuple[float, SternParams]:
    """Grover-accelerated Stern cost, minimized over (l, j).

    A coarse grid (j <= min(w/2, 40), l <= 120) is refined by hill
    climbing with growing steps, so optima beyond the grid edge are
    still found.
    """
    n, k, w = target.n, target.k, target.w_target
    best = (math.inf, SternParams(0, 0))
    for j in range(0, min(w // 2, 40) + 1):
        for l in range(0, 121, 4):
            wf = _stern_wf_at(n, k, w, SternParams(l, j))
            if wf < best[0]:
                best = (wf, SternParams(l, j))
    improved = True
    while improved:
        improved = False
        l0, j0 = best[1].l, best[1].j
        for dl in (-64, -16, -4, -1, 1, 4, 16, 64):
            for dj in (-2, -1, 0, 1, 2):
                l, j = l0 + dl, j0 + dj
                if l < 0 or j < 0 or 2 * j > w or l > n - k:
                    continue
                wf = _stern_wf_at(n, k, w, SternParams(l, j))
                if wf < best[0] - 1e-12:
                    best = (wf, SternParams(l, j))
                    improved = True
    wf = best[0] - _speedup_log2(target)
    return wf, best[1]


def _speedup_log2(target: IsdTarget) -> float:
    out = math.log2(target.multiplicity)
    if target.qc_order:
        out += 0.5 * math.log2(target.qc_order)
    return out


def bjmm_approx_wf(target: IsdTarget) -> float:
    """Classical ISD cost approximation 2^(c*w), c = log2(1/(1 - k/n)).

    This is a rate-only shortcut, not the finite-length estimate; report
    consumers flag it as approximate.
    """
    if target.k >= target.n:
        raise ValueError("code rate must be below 1")
    c = math.log2(target.n / (target.n - target.k))
    return c * target.w_target - _speedup_log2(target)


def decoding_attack_target(params: SysParams, quantum: bool = True) -> IsdTarget:
    """Syndrome decoding of the public code at weight m_S * w.

    The reference work-factor table applies the sqrt(p) quasi-cyclic
    speedup to the classical decoding cost only; its quantum Stern
    entries carry no extra discount.
    """
    return IsdTarget(params.n, params.k, params.m_S * params.w,
                     multiplicity=1,
                     qc_order=None if quantum else params.p)


def key_recovery_target(params: SysParams, quantum: bool = True) -> IsdTarget:
    """Low-weight codeword search for rows of the scrambled generator.

    The k sparse rows of the public generator split into k0 distinct
    cyclic orbits of p shifts each; the quantum entries of the reference
    table discount by k0 * sqrt(p) (orbit count times the quasi-cyclic
    factor), the classical ones by the plain row multiplicity k.
    """
    w_target = params.w_g * params.m_S
    if quantum:
        return IsdTarget(params.n, params.k, w_target,
                         multiplicity=params.k0, qc_order=params.p)
    return IsdTarget(params.n, params.k, w_target,
                     multiplicity=params.k, qc_order=None)


def unique_decoding_radius(params: SysParams) -> int:
    """Half the public-code minimum-distance estimate w_g * m_S."""
    return params.w * params.m_S + (params.m_S - 1) // 2


# ---------------------------------------------------------------------------
# signature space and collision bounds


@dataclass(frozen=True)
class SignatureSpace:
    n_s_log2: float           # distinct admissible syndromes
    a_wc_log2: float          # easily reachable sparse codewords
    collision_classical_log2: float
    collision_quantum_log2: float


def signature_space(params: SysParams) -> SignatureSpace:
    ns = log2_binom(params.r, params.w) - params.z
    awc = log2_binom(params.k, params.m_g)
    return SignatureSpace(ns, awc, ns / 2.0, ns / 3.0)


# ---------------------------------------------------------------------------
# forgery by linear combinations of signatures


@dataclass(frozen=True)
class LcaEstimate:
    wf_log2: float
    wf_sqrt_log2: float      # theoretical full-Grover variant
    combinations: int        # minimizing L


def lca_wf(params: SysParams, max_combinations: int = 8) -> LcaEstimate:
    w, r, k, m_g = params.w, params.r, params.k, params.m_g
    w_sigma = (params.w + params.w_c) * params.m_S
    best, best_l = math.inf, 2
    for ell in range(2, max_combinations + 1):
        p_syndrome = p_xor(r, [w] * ell, w)
        dist = xor_weight_dist(k, [m_g] * ell)
        p_info = log2_sum(dist[:m_g + 1])
        if p_syndrome == NEG_INF or p_info == NEG_INF:
            continue
        cost = math.log2((ell - 1) * w + (ell - 1) * w_sigma)
        wf = cost - p_syndrome - p_info
        if wf < best:
            best, best_l = wf, ell
    return LcaEstimate(best, best / 2.0, best_l)


# ---------------------------------------------------------------------------
# forgery by support intersection


@dataclass(frozen=True)
class SiaInputs:
    collected: int            # L, number of intersected signature pairs
    w_l: int                  # intersected syndrome weight
    d_b: int                  # minimum distance of the code spanned by B
    params: SysParams = field(repr=False, default=None)

    @property
    def w_l_wide(self) -> int:
        return self.params.m_S * self.w_l

    @property
    def l_col(self) -> int:
        return int(math.floor(self.params.m_S * self.params.r
                              / self.params.n + 0.5))


@dataclass(frozen=True)
class SiaProbabilities:
    p_i1: float               # linear-domain probabilities
    p_i2_keep: float
    p_i2_flip: float
    p_i: float
    p_j1: float
    p_j: float
    p_i_counts_log2: tuple    # P[bit in I set exactly x times], x = 0..L
    p_j_counts_log2: tuple
    p_i_ge_log2: tuple        # all I-bits set >= x times (one exactly x)
    p_j_le_log2: tuple        # all J-bits set <= x times
    p_i_ge_j_log2: float
    p_and_log2: float
    p_sia_log2: float


def _parity_sum(n_pool: int, ones: int, draws: int, parity: int,
                kmax: int | None = None) -> float:
    """P[# drawn marked elements has given parity], hypergeometric."""
    if draws < 0:
        return 0.0 if parity else 1.0
    denom = _lb(n_pool, draws)
    total = NEG_INF
    top = min(ones, draws) if kmax is None else min(kmax, ones, draws)
    for i in range(parity, top + 1, 2):
        total = np.logaddexp2(
            total, _lb(ones, i) + _lb(n_pool - ones, draws - i) - denom)
    return float(2.0 ** total) if total != NEG_INF else 0.0


def sia_probabilities(params: SysParams, inputs: SiaInputs) -> SiaProbabilities:
    if inputs.w_l < inputs.d_b:
        raise ValueError("intersected weight below the distance of B's code")
    n, r, w = params.n, params.r, params.w
    m_s, w_c = params.m_S, params.w_c
    ell, w_l = inputs.collected, inputs.w_l
    lcol = inputs.l_col
    wlw = inputs.w_l_wide

    # survival of a tracked set bit through the sum of w syndrome-selected
    # rows (even overlaps keep it) with column weight lcol in the last r rows
    p_i1 = _parity_sum(r - w_l, lcol - 1, w - w_l, 0)
    # effect of the codeword rows: even selections keep the bit
    def p_even_rows(x, y):
        return _parity_sum(n - 1, y, x, 0)
    p_i2_keep = p_even_rows(w_c, m_s - 1)
    p_i2_flip = p_even_rows(w_c - 1, m_s - 1)
    frac = w_c / n
    p_i = ((p_i1 * p_i2_keep + (1 - p_i1) * (1 - p_i2_keep)) * (1 - frac)
           + (p_i1 * (1 - p_i2_flip) + (1 - p_i1) * p_i2_flip) * frac)
    p_j1 = _parity_sum(r - w_l, lcol, w - w_l, 1)
    p_i2_j = p_even_rows(w_c, m_s)
    p_j = p_j1 * p_i2_j + (1 - p_j1) * (1 - p_i2_j)

    pi_counts = [_lb(ell, x) + x * _safe_log2(p_i)
                 + (ell - x) * _safe_log2(1 - p_i) for x in range(ell + 1)]
    pj_counts = [_lb(ell, x) + x * _safe_log2(p_j)
                 + (ell - x) * _safe_log2(1 - p_j) for x in range(ell + 1)]

    # tails: P[all w'_L I-bits >= x (one exactly x)], P[all n-w'_L J-bits <= x]
    pi_tail = [log2_sum(pi_counts[x:]) for x in range(ell + 2)]
    pi_ge = []
    for x in range(ell + 1):
        hi, lo = pi_tail[x], pi_tail[x + 1]
        pi_ge.append(_log2_pow_diff(hi, lo, wlw))
    pj_cdf = [log2_sum(pj_counts[:x + 1]) for x in range(ell + 1)]
    pj_le = [min(0.0, (n - wlw) * c) if c != NEG_INF else NEG_INF
             for c in pj_cdf]

    p_i_ge_j = log2_sum(
        pj_le[i] + pi_ge[i + 1] for i in range(ell) if pi_ge[i + 1] != NEG_INF)
    p_and = p_and_intersection(params, ell, w_l)
    return SiaProbabilities(
        p_i1=p_i1, p_i2_keep=p_i2_keep, p_i2_flip=p_i2_flip, p_i=p_i,
        p_j1=p_j1, p_j=p_j,
        p_i_counts_log2=tuple(pi_counts), p_j_counts_log2=tuple(pj_counts),
        p_i_ge_log2=tuple(pi_ge), p_j_le_log2=tuple(pj_le),
        p_i_ge_j_log2=p_i_ge_j, p_and_log2=p_and,
        p_sia_log2=p_and + p_i_ge_j)


def p_and_intersection(params: SysParams, ell: int, w_l: int) -> float:
    """log2 P[wt(AND of ell weight-w syndromes) = w_l]."""
    dist = _iterated_and_dist(params.r, params.w, ell)
    return float(dist[w_l]) if w_l < len(dist) else NEG_INF


def _safe_log2(x: float) -> float:
    return math.log2(x) if x > 0 else NEG_INF


def _log2_pow_diff(hi: float, lo: float, power: float) -> float:
    """log2(2^(hi*power) - 2^(lo*power)) for hi >= lo, both <= 0."""
    if hi == NEG_INF:
        return NEG_INF
    if lo == NEG_INF:
        return power * hi
    a, b = power * hi, power * lo
    if b - a < -60:
        return a
    diff = -math.expm1((b - a) * LN2)
    if diff <= 0.0:
        return NEG_INF
    return a + math.log2(diff)


@dataclass(frozen=True)
class SiaEstimate:
    wf_log2: float
    wf_sqrt_log2: float
    collected: int
    w_l: int


def sia_wf(params: SysParams, d_b: int | None = None,
           max_collected: int = 16, max_w_l: int | None = None) -> SiaEstimate:
    """Total support-intersection work factor, minimized over (L, w_L).

    For w_L not dividing w, the cheaper of the two last-step strategies
    is taken: an unconstrained-position final step, or a final step that
    re-finds previously located positions.
    """
    if d_b is None:
        d_b = params.z
    w = params.w
    if max_w_l is None:
        max_w_l = w
    best = (math.inf, 2, d_b)
    for ell in range(2, max_collected + 1):
        for w_l in range(d_b, max_w_l + 1):
            wf = _sia_wf_at(params, ell, w_l, d_b)
            if wf < best[0]:
                best = (wf, ell, w_l)
    return SiaEstimate(best[0], best[0] / 2.0, best[1], best[2])


def _sia_wf_at(params: SysParams, ell: int, w_l: int, d_b: int) -> float:
    w, r, n = params.w, params.r, params.n
    probs = sia_probabilities(params, SiaInputs(ell, w_l, d_b, params))
    p_and_log2 = probs.p_and_log2
    if p_and_log2 == NEG_INF:
        return math.inf
    p_igej = probs.p_i_ge_j_log2
    if p_igej == NEG_INF:
        return math.inf
    wlw = params.m_S * w_l
    c_s1 = math.log2((ell - 1) * w)
    c_s2 = math.log2(w_l)
    c_ij = math.log2((ell - 1) * n * math.ceil(math.log2(ell)) + wlw * r)
    inner = log2_sum([c_s1 - p_and_log2, c_s2])
    lb_r_wl = _lb(r, w_l)

    steps = w // w_l
    rem = w - steps * w_l
    full_steps = [inner + lb_r_wl - _lb(w - (i - 1) * w_l, w_l)
                  for i in range(1, steps + 1)]
    per_step = [log2_sum([s, c_ij]) - p_igej for s in full_steps]
    if rem == 0:
        return log2_sum(per_step)
    # strategy 1: floor(w/w_l) steps, last one with free positions
    alt_last = log2_sum([inner + lb_r_wl, c_ij]) - p_igej
    total1 = log2_sum(per_step[:-1] + [alt_last])
    # strategy 2: an extra step hitting rem new and w_l - rem known positions
    extra = (log2_sum([inner + lb_r_wl - _lb(steps * w_l, w_l - rem), c_ij])
             - p_igej)
    total2 = log2_sum(per_step + [extra])
    return min(total1, total2)


# ---------------------------------------------------------------------------
# statistical attack: signature bit model and key lifetime


def signature_bit_probability(params: SysParams) -> float:
    """Expected value of a single signature bit under the sparse-sum model."""
    n, m_s = params.n, params.m_S
    wprime = params.w + params.m_g * params.w_g
    total = NEG_INF
    for l in range(1, m_s + 1, 2):
        total = np.logaddexp2(
            total, _lb(m_s, l) + _lb(n - m_s, wprime - l) - _lb(n, wprime))
    return float(2.0 ** total)


def _pair_coincidence_probs(params: SysParams) -> tuple[float, float]:
    """(same-column pair probability, disjoint pair probability)."""
    n, m_s = params.n, params.m_S
    wp = params.w + params.m_g * params.w_g

    shared = NEG_INF
    for l in range(0, m_s, 2):
        for u in range(0, m_s, 2):
            t = (_lb(m_s - 1, l) + _lb(m_s - 1, u)
                 + _lb(n + 1 - 2 * m_s, wp - l - u - 1) - _lb(n - 1, wp - 1))
            shared = np.logaddexp2(shared, t)
    rho_shared = (wp / n) * float(2.0 ** shared)

    unshared = NEG_INF
    for l in range(1, m_s - 1, 2):
        for u in range(1, m_s - 1, 2):
            t = (_lb(m_s - 1, l) + _lb(m_s - 1, u)
                 + _lb(n + 1 - 2 * m_s, wp - l - u) - _lb(n - 1, wp))
            unshared = np.logaddexp2(unshared, t)
    rho_unshared = ((n - wp) / n) * float(2.0 ** unshared)

    rho1 = rho_shared + rho_unshared

    disjoint = NEG_INF
    for l in range(1, m_s + 1, 2):
        for u in range(1, m_s + 1, 2):
            t = (_lb(m_s, l) + _lb(m_s, u)
                 + _lb(n - 2 * m_s, wp - l - u) - _lb(n, wp))
            disjoint = np.logaddexp2(disjoint, t)
    rho0 = float(2.0 ** disjoint)
    return rho1, rho0


def _binom_logpmf(count: int, prob: float) -> np.ndarray:
    x = np.arange(count + 1, dtype=np.float64)
    return (gammaln(count + 1) - gammaln(x + 1) - gammaln(count - x + 1)
            + x * math.log(prob) + (count - x) * math.log1p(-prob))


def _coincidence_separation(params: SysParams, collected: int
                            ) -> tuple[float, float]:
    """(1 - rho_v, rho_v): probability that no/some pair from one column
    of the scrambler beats every background pair count."""
    rho1, rho0 = _pair_coincidence_probs(params)
    n = params.n
    m2 = params.m_S * (params.m_S - 1) // 2
    n_bg = n * (n - 1) // 2 - n * m2

    logpmf1 = _binom_logpmf(collected, rho1)
    # natural-log CDFs, inclusive and exclusive
    cdf1_incl = np.logaddexp.accumulate(logpmf1)
    cdf1_incl = np.minimum(cdf1_incl, 0.0)
    cdf1_excl = np.concatenate(([-np.inf], cdf1_incl[:-1]))
    # row maximum over m2 pair counts: pmf via stable power difference
    with np.errstate(invalid="ignore"):
        delta = np.where(cdf1_excl == -np.inf, -np.inf, cdf1_excl - cdf1_incl)
    pmf_max = np.exp(m2 * cdf1_incl) * (-np.expm1(
        np.where(delta == -np.inf, -np.inf, m2 * delta)))

    logpmf0 = _binom_logpmf(collected, rho0)
    tail0 = np.logaddexp.accumulate(logpmf0[::-1])[::-1]
    tail0 = np.minimum(tail0, 0.0)      # log P[X0 >= x]
    with np.errstate(divide="ignore"):
        log_rho_prime = np.log1p(-np.exp(tail0))     # log P[X0 < x]
    exponent = n_bg * log_rho_prime
    below_all = np.exp(exponent)                  # rho** per threshold
    above_some = -np.expm1(exponent)

    q_v = float(np.sum(pmf_max * above_some))
    rho_v = float(np.sum(pmf_max * below_all))
    return q_v, rho_v


def _log2_graph_cover_prob(params: SysParams, collected: int,
                           quasi_cyclic: bool) -> float:
    """log2 P[the coincidence graph keeps an edge for every column]."""
    q_v, rho_v = _coincidence_separation(params, collected)
    if quasi_cyclic:
        if rho_v <= 0.0:
            return NEG_INF
        log_q = math.log1p(-rho_v) if rho_v < 0.5 else _safe_ln(q_v)
        if log_q == NEG_INF:
            return 0.0 * params.n0    # q_v = 0: cover certain
        qvp = params.p * log_q
        if qvp < -1e-8:
            log_ptilde = math.log(-math.expm1(qvp))
        else:
            log_ptilde = math.log(params.p) + math.log(-log_q)
        return params.n0 * log_ptilde / LN2
    if rho_v <= 0.0:
        return NEG_INF
    log_rho = math.log1p(-q_v) if q_v < 0.5 else _safe_ln(rho_v)
    return params.n * log_rho / LN2


def _safe_ln(x: float) -> float:
    return math.log(x) if x > 0 else NEG_INF


def stat_lifetime(params: SysParams, security_exponent: float
                  ) -> tuple[int, int]:
    """(N_lambda, N_lambda_qc): largest signature counts keeping the
    statistical attack success probability below 2^-lambda."""
    plain = _scan_max_count(
        lambda n: _log2_graph_cover_prob(params, n, False), security_exponent)
    qc = _scan_max_count(
        lambda n: _log2_graph_cover_prob(params, n, True), security_exponent)
    return plain, qc


def _scan_max_count(f_log2, lam: float, start: int = 1024) -> int:
    """Largest N with f(N) < -lam, by doubling bracket then bisection."""
    threshold = -lam
    if f_log2(1) >= threshold:
        return 0
    lo, hi = 1, start
    prev = f_log2(lo)
    while True:
        val = f_log2(hi)
        if val > prev + 1e-9 or val >= threshold:
            assert val >= prev - 1e-6, "cover probability must grow with N"
        if val >= threshold:
            break
        lo, prev = hi, val
        hi *= 2
        if hi > 1 << 40:
            raise RuntimeError("lifetime scan failed to bracket")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if f_log2(mid) < threshold:
            lo = mid
        else:
            hi = mid
    return lo


# ---------------------------------------------------------------------------
# full report


@dataclass(frozen=True)
class AttackReport:
    instance: str
    security_exponent: float
    n_s_log2: float
    a_wc_log2: float
    wf_sia_log2: float
    wf_lca_log2: float
    wf_da_quantum_log2: float
    wf_kra_quantum_log2: float
    wf_da_classical_approx_log2: float
    wf_kra_classical_approx_log2: float
    collision_classical_log2: float
    collision_quantum_log2: float
    lifetime_qc: int
    lifetime: int
    sia_detail: SiaEstimate
    lca_detail: LcaEstimate
    da_stern: SternParams
    kra_stern: SternParams
    classical_is_approximate: bool = True

    @property
    def min_wf_log2(self) -> float:
        return min(self.wf_sia_log2, self.wf_lca_log2,
                   self.wf_da_quantum_log2, self.wf_kra_quantum_log2)

    @property
    def passes(self) -> bool:
        return self.min_wf_log2 >= self.security_exponent

    @property
    def passes_grover_forgery(self) -> bool:
        """Pass even granting full Grover speedup to SIA and LCA."""
        return min(self.wf_sia_log2 / 2.0, self.wf_lca_log2 / 2.0,
                   self.wf_da_quantum_log2,
                   self.wf_kra_quantum_log2) >= self.security_exponent

    def to_dict(self) -> dict:
        return {
            "instance": self.instance,
            "lambda": self.security_exponent,
            "log2_n_s": round(self.n_s_log2, 2),
            "log2_a_wc": round(self.a_wc_log2, 2),
            "wf_sia": round(self.wf_sia_log2, 2),
            "wf_lca": round(self.wf_lca_log2, 2),
            "wf_da_pq": round(self.wf_da_quantum_log2, 2),
            "wf_kra_pq": round(self.wf_kra_quantum_log2, 2),
            "wf_da_cl_approx": round(self.wf_da_classical_approx_log2, 2),
            "wf_kra_cl_approx": round(self.wf_kra_classical_approx_log2, 2),
            "collision_cl": round(self.collision_classical_log2, 2),
            "collision_pq": round(self.collision_quantum_log2, 2),
            "lifetime_qc": self.lifetime_qc,
            "lifetime": self.lifetime,
            "classical_is_approximate": self.classical_is_approximate,
            "pass": self.passes,
        }


def full_report(params: SysParams, security_exponent: float | None = None
                ) -> AttackReport:
    lam = (params.security_level if security_exponent is None
           else security_exponent)
    space = signature_space(params)
    sia = sia_wf(params)
    lca = lca_wf(params)
    if params.m_S * params.w > unique_decoding_radius(params):
        raise ValueError("decoding target outside the unique-decoding radius")
    wf_da, sp_da = quantum_stern_wf(decoding_attack_target(params))
    wf_kra, sp_kra = quantum_stern_wf(key_recovery_target(params))
    lifetime, lifetime_qc = stat_lifetime(params, lam)
    return AttackReport(
        instance=params.name,
        security_exponent=lam,
        n_s_log2=space.n_s_log2,
        a_wc_log2=space.a_wc_log2,
        wf_sia_log2=sia.wf_log2,
        wf_lca_log2=lca.wf_log2,
        wf_da_quantum_log2=wf_da,
        wf_kra_quantum_log2=wf_kra,
        wf_da_classical_approx_log2=bjmm_approx_wf(
            decoding_attack_target(params, quantum=False)),
        wf_kra_classical_approx_log2=bjmm_approx_wf(
            key_recovery_target(params, quantum=False)),
        collision_classical_log2=space.collision_classical_log2,
        collision_quantum_log2=space.collision_quantum_log2,
        lifetime_qc=lifetime_qc,
        lifetime=lifetime,
        sia_detail=sia,
        lca_detail=lca,
        da_stern=sp_da,
        kra_stern=sp_kra)


def render_table(reports) -> str:
    header = (f"{'inst':8s} {'N_s':>8s} {'A_wc':>8s} {'SIA':>8s} {'LCA':>8s} "
              f"{'DA_pq':>8s} {'KRA_pq':>8s} {'DA_cl~':>8s} {'KRA_cl~':>8s} "
              f"{'life_qc':>8s} {'pass':>5s}")
    lines = [header]
    for rep in reports:
        lines.append(
            f"{rep.instance:8s} {rep.n_s_log2:8.2f} {rep.a_wc_log2:8.2f} "
            f"{rep.wf_sia_log2:8.2f} {rep.wf_lca_log2:8.2f} "
            f"{rep.wf_da_quantum_log2:8.2f} {rep.wf_kra_quantum_log2:8.2f} "
            f"{rep.wf_da_classical_approx_log2:8.2f} "
            f"{rep.wf_kra_classical_approx_log2:8.2f} "
            f"{rep.lifetime_qc:8d} {'PASS' if rep.passes else 'FAIL':>5s}")
    return "\n".join(lines)
