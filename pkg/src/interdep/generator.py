"""Seeded synthetic network generation.

Real infrastructure datasets are proprietary, so experiments run on
generated instances instead.  Generation is fully deterministic per config
(including the seed), minterms only reference the opposite side, and every
entity is declared whether or not it carries a rule.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .model import DependencyRule, EntityId, Minterm, Network, ValidationError

__all__ = ["GeneratorConfig", "gen_network", "parse_config_text"]


@dataclass(frozen=True)
class GeneratorConfig:
    n_a: int
    n_b: int
    max_minterms: int = 2
    max_minterm_size: int = 2
    idr_probability: float = 0.8
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_a < 1 or self.n_b < 1:
            raise ValidationError("entity counts must be at least 1")
        if self.max_minterms < 1 or self.max_minterm_size < 1:
            raise ValidationError("max_minterms and max_minterm_size must be at least 1")
        if not 0.0 <= self.idr_probability <= 1.0:
            raise ValidationError("idr_probability must lie in [0, 1]")


def gen_network(config: GeneratorConfig) -> Network:
    rng = random.Random(config.seed)
    side_a = [EntityId("a", i + 1) for i in range(config.n_a)]
    side_b = [EntityId("b", j + 1) for j in range(config.n_b)]
    opposite = {"a": sorted(side_b), "b": sorted(side_a)}

    rules = []
    label = 0
    for target in sorted(side_a + side_b):
        if rng.random() >= config.idr_probability:
            continue
        pool = opposite[target.side]
        minterms = set()
        for _ in range(rng.randint(1, config.max_minterms)):
            size = rng.randint(1, min(config.max_minterm_size, len(pool)))
            minterms.add(Minterm(rng.sample(pool, size)))
        label += 1
        rules.append(DependencyRule(target, minterms, label))
    return Network(side_a, side_b, rules)


_CONFIG_KEYS = {
    "n_a": int,
    "n_b": int,
    "max_minterms": int,
    "max_minterm_size": int,
    "idr_probability": float,
    "seed": int,
}


def parse_config_text(text: str) -> dict:
    """Parse a flat key=value file; returns raw values, '#' starts a comment.

    Generator keys are converted to their types; extra keys (k, s_list,
    seeds, ...) are kept as strings for the caller.
    """
    out: dict = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {line_no}: expected key=value, got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in _CONFIG_KEYS:
            try:
                out[key] = _CONFIG_KEYS[key](value)
            except ValueError:
                raise ValueError(f"config line {line_no}: bad value for {key}: {value!r}") from None
        else:
            out[key] = value
    return out
