"""Monte-Carlo checks of the attack-probability building blocks."""

import math

import numpy as np

from ledasig import toy_params
from ledasig.estimator import SiaInputs, sia_probabilities


TOY = toy_params("siatoy", n0=12, r0=6, p=2, z=2, m_S=3, w=4, w_g=3, m_g=2)


def test_sia_counting_attack_monte_carlo():
    """Frequency of min(I-counts) > max(J-counts) vs the closed form."""
    inputs = SiaInputs(2, 2, 2, TOY)
    probs = sia_probabilities(TOY, inputs)
    ell = inputs.collected
    wlw = inputs.w_l_wide
    n_j = TOY.n - wlw
    p_ref = 2.0 ** probs.p_i_ge_j_log2

    rng = np.random.default_rng(7)
    trials = 100_000
    i_counts = rng.binomial(ell, probs.p_i, size=(trials, wlw))
    j_counts = rng.binomial(ell, probs.p_j, size=(trials, n_j))
    wins = (i_counts.min(axis=1) > j_counts.max(axis=1)).mean()
    sigma = math.sqrt(p_ref * (1 - p_ref) / trials)
    assert abs(wins - p_ref) <= 3 * sigma


def test_sia_survival_probability_monte_carlo():
    """Hypergeometric even-overlap survival vs its Monte-Carlo estimate."""
    inputs = SiaInputs(2, 2, 2, TOY)
    probs = sia_probabilities(TOY, inputs)
    r, w, w_l = TOY.r, TOY.w, inputs.w_l
    lcol = inputs.l_col

    rng = np.random.default_rng(11)
    trials = 100_000
    pool = r - w_l
    marked = lcol - 1
    hits = np.array([
        (rng.choice(pool, size=w - w_l, replace=False) < marked).sum()
        for _ in range(trials)])
    freq = (hits % 2 == 0).mean()
    sigma = math.sqrt(probs.p_i1 * (1 - probs.p_i1) / trials)
    assert abs(freq - probs.p_i1) <= 3 * sigma


def test_sia_codeword_interplay_monte_carlo():
    """Even selections among the codeword rows vs the closed form."""
    inputs = SiaInputs(2, 2, 2, TOY)
    probs = sia_probabilities(TOY, inputs)
    n, m_s, w_c = TOY.n, TOY.m_S, TOY.w_c

    rng = np.random.default_rng(13)
    trials = 100_000
    hits = np.array([
        (rng.choice(n - 1, size=w_c, replace=False) < m_s - 1).sum()
        for _ in range(trials)])
    freq = (hits % 2 == 0).mean()
    sigma = math.sqrt(probs.p_i2_keep * (1 - probs.p_i2_keep) / trials)
    assert abs(freq - probs.p_i2_keep) <= 3 * sigma
