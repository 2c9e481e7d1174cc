"""Numba-compiled cascade kernels (the default backend).

Same signatures and results as _kernels_np; plain nested loops that numba
turns into tight machine code.  The enumerators iterate k-combinations
in-place so millions of cascade evaluations never leave nopython mode.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _run(mt_start, mt_end, lit_start, lit_end, lits, initial, immune, horizon, times):
    n = initial.shape[0]
    failed = np.zeros(n, dtype=np.uint8)
    count = 0
    for i in range(n):
        times[i] = -1
        if initial[i]:
            failed[i] = 1
            times[i] = 0
            count += 1
    new_idx = np.empty(n, dtype=np.int32)
    for t in range(1, horizon + 1):
        n_new = 0
        for i in range(n):
            if failed[i] or immune[i] or mt_start[i] == mt_end[i]:
                continue
            all_hit = True
            for m in range(mt_start[i], mt_end[i]):
                hit = False
                for p in range(lit_start[m], lit_end[m]):
                    if failed[lits[p]]:
                        hit = True
                        break
                if not hit:
                    all_hit = False
                    break
            if all_hit:
                new_idx[n_new] = i
                n_new += 1
        if n_new == 0:
            break
        for j in range(n_new):
            failed[new_idx[j]] = 1
            times[new_idx[j]] = t
        count += n_new
    return count


@njit(cache=True)
def fail_times(mt_start, mt_end, lit_start, lit_end, lits, initial, immune, horizon):
    times = np.empty(initial.shape[0], dtype=np.int32)
    _run(mt_start, mt_end, lit_start, lit_end, lits, initial, immune, horizon, times)
    return times


@njit(cache=True)
def final_count(mt_start, mt_end, lit_start, lit_end, lits, initial, immune, horizon):
    times = np.empty(initial.shape[0], dtype=np.int32)
    return _run(mt_start, mt_end, lit_start, lit_end, lits, initial, immune, horizon, times)


@njit(cache=True)
def best_attack_subset(mt_start, mt_end, lit_start, lit_end, lits, immune, horizon, k):
    n = mt_start.shape[0]
    idx = np.empty(k, dtype=np.int32)
    for j in range(k):
        idx[j] = j
    best = np.empty(k, dtype=np.int32)
    best_count = -1
    initial = np.zeros(n, dtype=np.uint8)
    times = np.empty(n, dtype=np.int32)
    while True:
        for j in range(k):
            initial[idx[j]] = 1
        cnt = _run(mt_start, mt_end, lit_start, lit_end, lits, initial, immune, horizon, times)
        for j in range(k):
            initial[idx[j]] = 0
        if cnt > best_count:
            best_count = cnt
            best[:] = idx
        # advance to the next k-combination of range(n)
        j = k - 1
        while j >= 0 and idx[j] == n - k + j:
            j -= 1
        if j < 0:
            break
        idx[j] += 1
        for l in range(j + 1, k):
            idx[l] = idx[l - 1] + 1
    return best, best_count


@njit(cache=True)
def best_immune_subset(
    mt_start, mt_end, lit_start, lit_end, lits, initial, base_immune, horizon, candidates, s
):
    n = mt_start.shape[0]
    times = np.empty(n, dtype=np.int32)
    if s == 0:
        cnt = _run(
            mt_start, mt_end, lit_start, lit_end, lits, initial, base_immune, horizon, times
        )
        return np.empty(0, dtype=np.int32), cnt
    m = candidates.shape[0]
    idx = np.empty(s, dtype=np.int32)
    for j in range(s):
        idx[j] = j
    best = np.empty(s, dtype=np.int32)
    best_count = n + 1
    immune = base_immune.copy()
    while True:
        for j in range(s):
            immune[candidates[idx[j]]] = 1
        cnt = _run(mt_start, mt_end, lit_start, lit_end, lits, initial, immune, horizon, times)
        for j in range(s):
            c = candidates[idx[j]]
            immune[c] = base_immune[c]
        if cnt < best_count:
            best_count = cnt
            best[:] = idx
        j = s - 1
        while j >= 0 and idx[j] == m - s + j:
            j -= 1
        if j < 0:
            break
        idx[j] += 1
        for l in range(j + 1, s):
            idx[l] = idx[l - 1] + 1
    return best, best_count
