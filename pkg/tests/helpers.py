"""Shared fixtures-in-code for the test suite: the worked example network,
entity shorthand, and the seeded random instance corpus."""

from __future__ import annotations

from interdep import GeneratorConfig, gen_network, most_vulnerable_greedy
from interdep.model import EntityId

# The 8-entity worked example: five power entities, three communication
# entities, seven rules (a5 has no dependency).
TABLE1 = """\
a1 <- b1 + b2
a2 <- b1 b2
a3 <- b2 + b1 b3
a4 <- b3
a5
b1 <- a2
b2 <- a2
b3 <- a4
"""


def E(name: str) -> EntityId:
    return EntityId.parse(name)


def ents(*names: str) -> frozenset:
    return frozenset(E(n) for n in names)


def names(entities) -> list:
    return sorted(e.name for e in entities)


def corpus_instances(count: int, *, min_rules: int = 3) -> list:
    """Deterministic seeded instances: (net, attacked, k) triples.

    Sizes stay at |A|+|B| <= 23 and k <= 4; instances with fewer than
    min_rules rules are skipped so every solver budget in the tests is
    feasible.
    """
    out = []
    i = 0
    while len(out) < count:
        cfg = GeneratorConfig(
            n_a=3 + i % 10,
            n_b=3 + (i // 10) % 9,
            max_minterms=1 + i % 3,
            max_minterm_size=1 + (i // 3) % 3,
            idr_probability=0.5 + 0.1 * ((i // 9) % 5),
            seed=i,
        )
        i += 1
        net = gen_network(cfg)
        if len(net.rules) < min_rules:
            continue
        k = 1 + (i % 4)
        attacked = most_vulnerable_greedy(net, k).attacked
        out.append((net, attacked, k))
    return out
