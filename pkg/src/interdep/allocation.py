"""Budgeted rule hardening: protection sets, scores, and allocation solvers.

Hardening a rule adds one never-failing disjunct (an auxiliary) so its
target can no longer fail through the cascade; initially attacked entities
stay dead regardless.  Given an attack set and a budget of s rules, the
solvers pick which rules to harden so that as many entities as possible are
protected from induced failure:

* solve_unit_greedy: per-pair greedy for unit-rule networks (every rule a
  single size-1 minterm, each entity on at most one right-hand side); picks
  concrete (rule, auxiliary) pairs and updates protection sets by set
  subtraction.
* solve_greedy: general greedy; each round hardens the rule with the
  largest current protection set, breaking ties by cumulative fractional
  hit value, then by target name, and marks protected entities permanently
  operational before the next round.
* solve_exact: exhaustive search over all C(P, s) rule subsets, capped.

Every solver re-simulates the fully modified network and reports the
verified protected set, never the running tally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .cascade import compile_network, simulate_cascade, simulate_compiled
from .kernels import DEFAULT_ENUMERATION_CAP, EnumerationCapExceeded
from .model import (
    ALWAYS_ALIVE,
    DependencyRule,
    EntityId,
    Minterm,
    Modification,
    Network,
    ValidationError,
    apply_modification,
)

__all__ = [
    "ProtectionSet",
    "AllocationSolution",
    "RuleScore",
    "SetCoverReduction",
    "auxiliary_protection_set",
    "eligible_auxiliaries",
    "entity_hit_value",
    "fractional_hit_value",
    "cumulative_hit_value",
    "score_rules",
    "solve_unit_greedy",
    "solve_greedy",
    "solve_exact",
    "reduce_setcover",
]


@dataclass(frozen=True)
class ProtectionSet:
    """Entities one hardening saves from induced failure under one attack."""

    idr_label: int
    auxiliary: object
    protected: frozenset


@dataclass(frozen=True)
class AllocationSolution:
    method: str  # "alg1", "heuristic", or "exact"
    s: int
    modifications: tuple
    protected: frozenset
    induced_before: int
    induced_after: int

    @property
    def protected_count(self) -> int:
        return len(self.protected)


@dataclass(frozen=True)
class RuleScore:
    """Per-rule diagnostics for one attack: |AP| and the hit values."""

    idr_label: int
    target: EntityId
    protection_size: int
    fractional_hit: Fraction
    cumulative_hit: Fraction


@dataclass(frozen=True)
class SetCoverReduction:
    network: Network
    attacked: frozenset
    s: int
    p_f_target: int


def eligible_auxiliaries(net: Network, idr_label: int, attacked: Iterable[EntityId]) -> frozenset:
    """Entities usable as the rule's auxiliary under this attack.

    Excludes everything that fails (initially or by cascade) and the rule's
    own footprint.
    """
    rule = net.rule_by_label(idr_label)
    failed = simulate_cascade(net, attacked).failed_set()
    return net.universe - failed - rule.entities


def auxiliary_protection_set(
    net: Network, idr_label: int, auxiliary, attacked: Iterable[EntityId]
) -> ProtectionSet:
    """Simulate with and without the hardening; return the induced-failure difference."""
    rule = net.rule_by_label(idr_label)
    attacked = frozenset(attacked)
    before = simulate_cascade(net, attacked)
    if auxiliary is not ALWAYS_ALIVE:
        if not isinstance(auxiliary, EntityId) or auxiliary not in net.universe:
            raise ValidationError(f"auxiliary {auxiliary!r} is not a network entity")
        if auxiliary in before.failed_set():
            raise ValidationError(
                f"auxiliary {auxiliary} fails under this attack and cannot protect anything"
            )
        if auxiliary in rule.entities:
            raise ValidationError(
                f"auxiliary {auxiliary} already appears in the rule for {rule.target}"
            )
    modified = apply_modification(net, Modification(idr_label, auxiliary))
    after = simulate_cascade(modified, attacked)
    return ProtectionSet(
        idr_label=idr_label,
        auxiliary=auxiliary,
        protected=before.induced_set() - after.induced_set(),
    )


def entity_hit_value(net: Network, entity: EntityId) -> Fraction:
    """Sum of 1/|minterm| over every minterm anywhere that contains the entity."""
    total = Fraction(0)
    for rule in net.rules:
        for mt in rule.minterms:
            if entity in mt.literals:
                total += Fraction(1, mt.size)
    return total


def fractional_hit_value(net: Network, idr_label: int) -> Fraction:
    """Hit value of the labeled rule's target: how often other rules lean on it."""
    return entity_hit_value(net, net.rule_by_label(idr_label).target)


def cumulative_hit_value(net: Network, idr_label: int, attacked: Iterable[EntityId]) -> Fraction:
    """Sum of hit values over the entities this hardening would protect.

    Protected entities without a rule of their own still contribute through
    their appearances in other rules' minterms.
    """
    ap = auxiliary_protection_set(net, idr_label, ALWAYS_ALIVE, attacked).protected
    return sum((entity_hit_value(net, e) for e in ap), Fraction(0))


def score_rules(net: Network, attacked: Iterable[EntityId]) -> tuple:
    """RuleScore for every rule, in label order."""
    attacked = frozenset(attacked)
    hit = {e: entity_hit_value(net, e) for e in net.universe}
    out = []
    for rule in net.rules:
        ap = auxiliary_protection_set(net, rule.label, ALWAYS_ALIVE, attacked).protected
        out.append(
            RuleScore(
                idr_label=rule.label,
                target=rule.target,
                protection_size=len(ap),
                fractional_hit=hit[rule.target],
                cumulative_hit=sum((hit[e] for e in ap), Fraction(0)),
            )
        )
    return tuple(out)


def _verified_solution(
    net: Network, attacked: frozenset, mods: tuple, method: str, s: int
) -> AllocationSolution:
    """Assemble a solution whose protected set comes from re-simulation."""
    before = simulate_cascade(net, attacked)
    modified = net
    for mod in mods:
        modified = apply_modification(modified, mod)
    after = simulate_cascade(modified, attacked)
    induced_before = before.induced_set()
    induced_after = after.induced_set()
    return AllocationSolution(
        method=method,
        s=s,
        modifications=mods,
        protected=induced_before - induced_after,
        induced_before=len(induced_before),
        induced_after=len(induced_after),
    )


def _check_budget(net: Network, s: int, *, allow_zero: bool = False) -> None:
    low = 0 if allow_zero else 1
    if not isinstance(s, int) or isinstance(s, bool) or s < low:
        raise ValueError(f"budget s must be an integer >= {low}, got {s!r}")
    if s > len(net.rules):
        raise ValueError(f"budget s={s} exceeds the rule count {len(net.rules)}")


def solve_unit_greedy(net: Network, attacked: Iterable[EntityId], s: int) -> AllocationSolution:
    """Greedy (rule, auxiliary) selection for unit-rule networks.

    Requires every rule to be a single size-1 minterm with each entity on at
    most one right-hand side.  Each round takes the pair with the largest
    remaining protection set and subtracts the winner from every other
    protection set; any non-failing auxiliary of a rule protects the same
    entities, so one representative (the lexicographically smallest) is
    evaluated per rule.
    """
    seen_rhs: set = set()
    for rule in net.rules:
        mts = list(rule.minterms)
        if len(mts) != 1 or mts[0].size != 1 or mts[0].never_fails:
            raise ValidationError(
                f"rule for {rule.target} is not a single size-1 minterm; "
                "this solver only handles unit-rule networks"
            )
        (lit,) = mts[0].entities
        if lit in seen_rhs:
            raise ValidationError(
                f"entity {lit} appears on more than one right-hand side; "
                "this solver only handles unit-rule networks"
            )
        seen_rhs.add(lit)
    _check_budget(net, s)
    attacked = frozenset(attacked)
    failed = simulate_cascade(net, attacked).failed_set()

    aux_rep: dict = {}
    ap: dict = {}
    for rule in net.rules:
        pool = net.universe - failed - rule.entities
        if not pool:
            continue
        aux_rep[rule.label] = min(pool)
        ap[rule.label] = set(
            auxiliary_protection_set(net, rule.label, aux_rep[rule.label], attacked).protected
        )
    if s > len(ap):
        raise ValueError(f"budget s={s} exceeds the {len(ap)} rules with an eligible auxiliary")

    chosen: list = []
    remaining = dict(ap)
    for _ in range(s):
        label = min(
            remaining,
            key=lambda l: (-len(remaining[l]), net.rule_by_label(l).target.name, aux_rep[l].name),
        )
        won = remaining.pop(label)
        chosen.append(Modification(label, aux_rep[label]))
        for other in remaining:
            remaining[other] -= won
    return _verified_solution(net, attacked, tuple(chosen), "alg1", s)


def solve_greedy(net: Network, attacked: Iterable[EntityId], s: int) -> AllocationSolution:
    """General greedy hardening with ALWAYS_ALIVE auxiliaries.

    Assumes the restricted setting where enough never-failing auxiliaries
    exist to cover the budget, so only the rule choice matters.  After each
    pick the protected entities are marked permanently operational, which
    prunes them out of every later protection set.
    """
    _check_budget(net, s)
    attacked = frozenset(attacked)
    comp = compile_network(net)
    initial = comp.initial_mask(attacked)
    hit = {e: entity_hit_value(net, e) for e in comp.entities}

    def induced(immune: np.ndarray) -> frozenset:
        trace = simulate_compiled(comp, attacked, immune=immune)
        return trace.induced_set()

    immune = comp.base_immune.copy()
    chosen: list = []
    taken: set = set()
    for _ in range(s):
        current = induced(immune)
        best_key = None
        best = None
        for rule in net.rules:
            if rule.label in taken:
                continue
            ti = comp.target_index[rule.label]
            saved = immune[ti]
            immune[ti] = 1
            protected = current - induced(immune)
            immune[ti] = saved
            acf = sum((hit[e] for e in protected), Fraction(0))
            key = (-len(protected), -acf, rule.target.name)
            if best_key is None or key < best_key:
                best_key = key
                best = (rule.label, ti, protected)
        label, ti, protected = best
        taken.add(label)
        chosen.append(Modification(label, ALWAYS_ALIVE))
        immune[ti] = 1
        for e in protected:
            immune[comp.index[e]] = 1
    return _verified_solution(net, attacked, tuple(chosen), "heuristic", s)


def solve_exact(
    net: Network,
    attacked: Iterable[EntityId],
    s: int,
    *,
    max_evaluations: int = DEFAULT_ENUMERATION_CAP,
) -> AllocationSolution:
    """Exhaustive search over all s-subsets of rule labels.

    Minimizes induced failures (equivalently maximizes the protected set);
    ties resolve to the lexicographically smallest label tuple.
    """
    _check_budget(net, s, allow_zero=True)
    attacked = frozenset(attacked)
    labels = net.labels()
    need = math.comb(len(labels), s)
    if need > max_evaluations:
        raise EnumerationCapExceeded(
            f"exact allocation needs {need} cascade evaluations (cap {max_evaluations})"
        )
    comp = compile_network(net)
    initial = comp.initial_mask(attacked)
    candidates = np.asarray([comp.target_index[l] for l in labels], dtype=np.int32)
    positions, _ = kernels.best_immune_subset(
        comp.mt_start,
        comp.mt_end,
        comp.lit_start,
        comp.lit_end,
        comp.lits,
        initial,
        comp.base_immune,
        comp.horizon,
        candidates,
        s,
    )
    mods = tuple(Modification(labels[p], ALWAYS_ALIVE) for p in positions)
    return _verified_solution(net, attacked, mods, "exact", s)


def reduce_setcover(universe: Iterable, subsets: Sequence[Iterable], x: int) -> SetCoverReduction:
    """Encode a set-cover instance as a hardening problem.

    One "b" entity per subset (failing with its private "a" trigger), one
    "a" entity per universe element (failing once all its covering subsets'
    entities fail), x spare dependency-free "a" entities, and the attack
    kills every trigger.  A cover of size <= x exists exactly when hardening
    x rules can protect x + |universe| entities; meaningful for
    1 <= x <= len(subsets).
    """
    if not isinstance(x, int) or isinstance(x, bool) or x < 1:
        raise ValueError(f"x must be a positive integer, got {x!r}")
    elems = sorted(set(universe), key=repr)
    if not elems:
        raise ValueError("the universe must not be empty")
    sets = [frozenset(sub) for sub in subsets]
    for i, sub in enumerate(sets):
        extra = sub - set(elems)
        if extra:
            raise ValidationError(f"subset {i + 1} contains non-universe elements {sorted(map(repr, extra))}")
    n, m = len(elems), len(sets)

    element_ents = {e: EntityId("a", i + 1) for i, e in enumerate(elems)}
    subset_ents = [EntityId("b", j + 1) for j in range(m)]
    trigger_ents = [EntityId("a", n + j + 1) for j in range(m)]
    spare_ents = [EntityId("a", n + m + i + 1) for i in range(x)]

    rules = []
    label = 0
    for i, e in enumerate(elems):
        covering = [subset_ents[j] for j in range(m) if e in sets[j]]
        if not covering:
            raise ValidationError(f"element {e!r} is in no subset")
        label += 1
        rules.append(
            DependencyRule(element_ents[e], {Minterm([b]) for b in covering}, label)
        )
    for j in range(m):
        label += 1
        rules.append(DependencyRule(subset_ents[j], {Minterm([trigger_ents[j]])}, label))

    net = Network(
        list(element_ents.values()) + trigger_ents + spare_ents,
        subset_ents,
        rules,
    )
    return SetCoverReduction(
        network=net,
        attacked=frozenset(trigger_ents),
        s=x,
        p_f_target=x + n,
    )
