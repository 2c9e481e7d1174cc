"""Entities, minterms, dependency rules, and two-sided networks.

A network couples a power side ("a" entities) with a communication side
("b" entities).  Each entity may carry at most one dependency rule: a
disjunction of minterms, where a minterm is a conjunction of other
entities.  The entity stays operational while at least one of its minterms
has every literal operational.

Every ordering and tie-break in this package is lexicographic on the
canonical entity name ("a10" sorts before "a2").
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Iterable, Optional

__all__ = [
    "ALWAYS_ALIVE",
    "EntityId",
    "Minterm",
    "DependencyRule",
    "Network",
    "Modification",
    "ValidationError",
    "apply_modification",
]


class ValidationError(ValueError):
    """A structural invariant of the model does not hold."""


class _AlwaysAlive:
    """Synthetic literal that is operational forever.

    Used as the auxiliary when hardening a rule without naming a concrete
    spare entity: a rule that gains an ``{ALWAYS_ALIVE}`` minterm can never
    fail through the cascade (initial attacks still apply).
    """

    __slots__ = ()
    _instance: Optional["_AlwaysAlive"] = None

    def __new__(cls) -> "_AlwaysAlive":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ALWAYS_ALIVE"


ALWAYS_ALIVE = _AlwaysAlive()

_ENTITY_NAME = re.compile(r"[ab][1-9][0-9]*\Z")


@functools.total_ordering
@dataclass(frozen=True)
class EntityId:
    """One entity, addressed by side letter plus positive index, e.g. "b3"."""

    side: str
    index: int

    def __post_init__(self) -> None:
        if self.side not in ("a", "b"):
            raise ValidationError(f"entity side must be 'a' or 'b', not {self.side!r}")
        if not isinstance(self.index, int) or isinstance(self.index, bool) or self.index < 1:
            raise ValidationError(f"entity index must be a positive int, not {self.index!r}")

    @classmethod
    def parse(cls, name: str) -> "EntityId":
        if not isinstance(name, str) or not _ENTITY_NAME.match(name):
            raise ValidationError(f"invalid entity name {name!r} (expected e.g. 'a3' or 'b12')")
        return cls(name[0], int(name[1:]))

    @property
    def name(self) -> str:
        return f"{self.side}{self.index}"

    def __str__(self) -> str:
        return self.name

    def __lt__(self, other: "EntityId") -> bool:
        if not isinstance(other, EntityId):
            return NotImplemented
        return self.name < other.name


class Minterm:
    """A conjunction of literals: entities, possibly the ALWAYS_ALIVE token.

    Set semantics throughout: literal order never matters for equality.
    """

    __slots__ = ("literals",)

    def __init__(self, literals: Iterable) -> None:
        lits = frozenset(literals)
        if not lits:
            raise ValidationError("a minterm must contain at least one literal")
        for lit in lits:
            if not isinstance(lit, EntityId) and lit is not ALWAYS_ALIVE:
                raise ValidationError(f"invalid minterm literal {lit!r}")
        self.literals = lits

    @property
    def size(self) -> int:
        return len(self.literals)

    @property
    def entities(self) -> frozenset:
        """The real-entity literals (ALWAYS_ALIVE excluded)."""
        return frozenset(l for l in self.literals if isinstance(l, EntityId))

    @property
    def never_fails(self) -> bool:
        return ALWAYS_ALIVE in self.literals

    def sort_key(self) -> tuple:
        names = tuple(sorted(e.name for e in self.entities))
        return (self.size, names)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Minterm) and self.literals == other.literals

    def __hash__(self) -> int:
        return hash(self.literals)

    def __repr__(self) -> str:
        parts = sorted(e.name for e in self.entities)
        if self.never_fails:
            parts.append("ALWAYS_ALIVE")
        return f"Minterm({' '.join(parts)})"


class DependencyRule:
    """One rule: the target fails once every minterm has a failed literal."""

    __slots__ = ("target", "minterms", "label")

    def __init__(self, target: EntityId, minterms: Iterable[Minterm], label: int) -> None:
        if not isinstance(target, EntityId):
            raise ValidationError(f"rule target must be an EntityId, not {target!r}")
        if not isinstance(label, int) or isinstance(label, bool) or label < 1:
            raise ValidationError(f"rule label must be a positive int, not {label!r}")
        mts = frozenset(minterms)
        for mt in mts:
            if not isinstance(mt, Minterm):
                raise ValidationError(f"expected a Minterm, got {mt!r}")
            if target in mt.literals:
                raise ValidationError(f"rule for {target} references its own target")
        self.target = target
        self.minterms = mts
        self.label = label

    @property
    def entities(self) -> frozenset:
        """The rule's footprint: target plus every entity literal."""
        out = {self.target}
        for mt in self.minterms:
            out |= mt.entities
        return frozenset(out)

    @property
    def hardened(self) -> bool:
        """True once any minterm contains the ALWAYS_ALIVE literal."""
        return any(mt.never_fails for mt in self.minterms)

    def sorted_minterms(self) -> tuple:
        return tuple(sorted(self.minterms, key=Minterm.sort_key))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, DependencyRule)
            and self.target == other.target
            and self.minterms == other.minterms
            and self.label == other.label
        )

    def __hash__(self) -> int:
        return hash((self.target, self.minterms, self.label))

    def __repr__(self) -> str:
        return f"DependencyRule({self.target} <- {sorted(map(repr, self.minterms))}, label={self.label})"


class Network:
    """An interdependent two-sided network plus its dependency rules.

    Immutable once built; every operation returns a new network.  Rules with
    an empty minterm list mean "no dependency" and are normalized away at
    construction (the target entity itself is kept).

    Equality is structural and ignores rule labels: two networks are equal
    when they have the same entities and the same target -> minterm-set map.
    """

    __slots__ = ("entities_a", "entities_b", "_by_target", "_by_label")

    def __init__(
        self,
        entities_a: Iterable[EntityId],
        entities_b: Iterable[EntityId],
        rules: Iterable[DependencyRule] = (),
    ) -> None:
        self.entities_a = frozenset(entities_a)
        self.entities_b = frozenset(entities_b)
        for e in self.entities_a:
            if not isinstance(e, EntityId) or e.side != "a":
                raise ValidationError(f"{e!r} cannot live on side 'a'")
        for e in self.entities_b:
            if not isinstance(e, EntityId) or e.side != "b":
                raise ValidationError(f"{e!r} cannot live on side 'b'")
        universe = self.entities_a | self.entities_b
        by_target: dict = {}
        by_label: dict = {}
        for rule in rules:
            if not isinstance(rule, DependencyRule):
                raise ValidationError(f"expected a DependencyRule, got {rule!r}")
            if not rule.minterms:
                continue
            if rule.target in by_target:
                raise ValidationError(f"duplicate rule for target {rule.target}")
            if rule.label in by_label:
                raise ValidationError(f"duplicate rule label {rule.label}")
            if rule.target not in universe:
                raise ValidationError(f"rule target {rule.target} is not a declared entity")
            for ent in rule.entities:
                if ent not in universe:
                    raise ValidationError(
                        f"rule for {rule.target} references unknown entity {ent}"
                    )
            by_target[rule.target] = rule
            by_label[rule.label] = rule
        self._by_target = by_target
        self._by_label = by_label

    @property
    def universe(self) -> frozenset:
        return self.entities_a | self.entities_b

    def entities(self) -> tuple:
        """All entities in canonical (name) order."""
        return tuple(sorted(self.universe))

    @property
    def rules(self) -> tuple:
        """All rules in label order."""
        return tuple(self._by_label[l] for l in sorted(self._by_label))

    def labels(self) -> tuple:
        return tuple(sorted(self._by_label))

    def rule_for(self, target: EntityId) -> Optional[DependencyRule]:
        return self._by_target.get(target)

    def rule_by_label(self, label: int) -> DependencyRule:
        try:
            return self._by_label[label]
        except KeyError:
            raise ValidationError(f"unknown rule label {label!r}") from None

    def _shape(self) -> tuple:
        rules = frozenset((r.target, r.minterms) for r in self._by_target.values())
        return (self.entities_a, self.entities_b, rules)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Network) and self._shape() == other._shape()

    def __hash__(self) -> int:
        return hash(self._shape())

    def __repr__(self) -> str:
        return (
            f"Network(|A|={len(self.entities_a)}, |B|={len(self.entities_b)}, "
            f"rules={len(self._by_target)})"
        )


@dataclass(frozen=True)
class Modification:
    """Add one size-1 disjunct (the auxiliary) to the rule with this label."""

    idr_label: int
    auxiliary: object  # EntityId or ALWAYS_ALIVE


def apply_modification(net: Network, mod: Modification) -> Network:
    """Return a new network whose labeled rule gains the auxiliary as a minterm.

    The auxiliary must be ALWAYS_ALIVE or a network entity outside the rule's
    own footprint (target and existing literals).  Whether it survives the
    attack at hand is the caller's concern; see
    allocation.auxiliary_protection_set for the attack-aware check.
    """
    rule = net.rule_by_label(mod.idr_label)
    aux = mod.auxiliary
    if aux is ALWAYS_ALIVE:
        if rule.hardened:
            raise ValidationError(f"rule for {rule.target} is already hardened")
    else:
        if not isinstance(aux, EntityId):
            raise ValidationError(f"auxiliary must be an EntityId or ALWAYS_ALIVE, not {aux!r}")
        if aux not in net.universe:
            raise ValidationError(f"auxiliary {aux} is not part of the network")
        if aux == rule.target:
            raise ValidationError(f"auxiliary {aux} is the rule's own target")
        if aux in rule.entities:
            raise ValidationError(f"auxiliary {aux} already appears in the rule for {rule.target}")
    new_rule = DependencyRule(rule.target, set(rule.minterms) | {Minterm([aux])}, rule.label)
    new_rules = [new_rule if r.label == rule.label else r for r in net.rules]
    return Network(net.entities_a, net.entities_b, new_rules)
