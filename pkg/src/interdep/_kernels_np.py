"""Pure-NumPy cascade kernels (the fallback backend).

Operates on the flattened network layout built by cascade.compile_network:
entity i owns minterms [mt_start[i], mt_end[i]); minterm m owns literals
[lit_start[m], lit_end[m]) inside the flat ``lits`` index array.  Each time
step is vectorized with cumulative-sum segment reductions, so ragged
minterm/literal blocks never need explicit loops.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np


def fail_times(mt_start, mt_end, lit_start, lit_end, lits, initial, immune, horizon):
    """Failure step per entity: 0 for attacked, t >= 1 induced, -1 never."""
    n = initial.shape[0]
    times = np.where(initial != 0, 0, -1).astype(np.int32)
    if n == 0:
        return times
    failed = initial != 0
    cand = np.nonzero((mt_end > mt_start) & (immune == 0))[0]
    if cand.size == 0 or lits.size == 0:
        return times
    c_start = mt_start[cand]
    c_end = mt_end[cand]
    c_span = (c_end - c_start).astype(np.int64)
    for t in range(1, horizon + 1):
        lc = np.zeros(lits.size + 1, dtype=np.int64)
        np.cumsum(failed[lits], out=lc[1:])
        mt_hit = (lc[lit_end] - lc[lit_start]) > 0
        mc = np.zeros(mt_hit.size + 1, dtype=np.int64)
        np.cumsum(mt_hit, out=mc[1:])
        all_hit = (mc[c_end] - mc[c_start]) == c_span
        new = cand[all_hit & ~failed[cand]]
        if new.size == 0:
            break
        failed[new] = True
        times[new] = t
    return times


def final_count(mt_start, mt_end, lit_start, lit_end, lits, initial, immune, horizon):
    """Number of entities failed at the fixed point (attacked included)."""
    t = fail_times(mt_start, mt_end, lit_start, lit_end, lits, initial, immune, horizon)
    return int((t >= 0).sum())


def best_attack_subset(mt_start, mt_end, lit_start, lit_end, lits, immune, horizon, k):
    """Size-k initial-failure set maximizing the final failure count.

    Ties keep the first (index-lexicographic) winner.
    """
    n = mt_start.shape[0]
    initial = np.zeros(n, dtype=np.uint8)
    best_combo = None
    best_count = -1
    for combo in combinations(range(n), k):
        initial[:] = 0
        for i in combo:
            initial[i] = 1
        cnt = final_count(mt_start, mt_end, lit_start, lit_end, lits, initial, immune, horizon)
        if cnt > best_count:
            best_count = cnt
            best_combo = combo
    return np.asarray(best_combo, dtype=np.int32), best_count


def best_immune_subset(
    mt_start, mt_end, lit_start, lit_end, lits, initial, base_immune, horizon, candidates, s
):
    """Positions of the s candidates to immunize minimizing final failures.

    Ties keep the first (position-lexicographic) winner.
    """
    if s == 0:
        cnt = final_count(
            mt_start, mt_end, lit_start, lit_end, lits, initial, base_immune, horizon
        )
        return np.empty(0, dtype=np.int32), cnt
    immune = base_immune.copy()
    best_pos = None
    best_count = mt_start.shape[0] + 1
    for combo in combinations(range(candidates.shape[0]), s):
        sel = candidates[list(combo)]
        saved = immune[sel].copy()
        immune[sel] = 1
        cnt = final_count(mt_start, mt_end, lit_start, lit_end, lits, initial, immune, horizon)
        immune[sel] = saved
        if cnt < best_count:
            best_count = cnt
            best_pos = combo
    return np.asarray(best_pos, dtype=np.int32), best_count
