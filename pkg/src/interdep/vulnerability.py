"""Finding the k entities whose initial failure hurts the most.

The exact search enumerates every size-k attack set (guarded by an
evaluation cap); the greedy variant picks one entity at a time and scales
to instances where enumeration is hopeless.  Ties always resolve to the
lexicographically smallest canonical attack set, so results are
reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import kernels
from .cascade import compile_network, simulate_compiled
from .kernels import DEFAULT_ENUMERATION_CAP, EnumerationCapExceeded
from .model import Network

__all__ = ["VulnerabilityResult", "most_vulnerable_exact", "most_vulnerable_greedy"]


@dataclass(frozen=True)
class VulnerabilityResult:
    k: int
    attacked: frozenset
    total_failed: int
    failed_set: frozenset


def _validate_k(net: Network, k: int) -> int:
    n = len(net.universe)
    if not isinstance(k, int) or isinstance(k, bool) or not 1 <= k <= n:
        raise ValueError(f"k must be an integer in [1, {n}], got {k!r}")
    return n


def _result(comp, attacked: frozenset, k: int) -> VulnerabilityResult:
    trace = simulate_compiled(comp, attacked)
    failed = trace.failed_set()
    return VulnerabilityResult(k=k, attacked=attacked, total_failed=len(failed), failed_set=failed)


def most_vulnerable_exact(
    net: Network, k: int, *, max_evaluations: int = DEFAULT_ENUMERATION_CAP
) -> VulnerabilityResult:
    """Exhaustive search over all C(|A|+|B|, k) attack sets."""
    n = _validate_k(net, k)
    need = math.comb(n, k)
    if need > max_evaluations:
        raise EnumerationCapExceeded(
            f"exact search needs {need} cascade evaluations (cap {max_evaluations})"
        )
    comp = compile_network(net)
    combo, _ = kernels.best_attack_subset(
        comp.mt_start,
        comp.mt_end,
        comp.lit_start,
        comp.lit_end,
        comp.lits,
        comp.base_immune,
        comp.horizon,
        k,
    )
    attacked = frozenset(comp.entities[i] for i in combo)
    return _result(comp, attacked, k)


def most_vulnerable_greedy(net: Network, k: int) -> VulnerabilityResult:
    """Greedy attack-set construction: k rounds of best marginal damage."""
    _validate_k(net, k)
    comp = compile_network(net)
    chosen: list = []
    mask = comp.initial_mask(())
    for _ in range(k):
        best_i, best_count = -1, -1
        for i in range(len(comp.entities)):
            if mask[i]:
                continue
            mask[i] = 1
            cnt = kernels.final_count(
                comp.mt_start,
                comp.mt_end,
                comp.lit_start,
                comp.lit_end,
                comp.lits,
                mask,
                comp.base_immune,
                comp.horizon,
            )
            mask[i] = 0
            if cnt > best_count:
                best_i, best_count = i, cnt
        mask[best_i] = 1
        chosen.append(comp.entities[best_i])
    return _result(comp, frozenset(chosen), k)
