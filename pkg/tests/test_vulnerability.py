from itertools import combinations

import pytest
from helpers import ents, names

from interdep import (
    EnumerationCapExceeded,
    GeneratorConfig,
    gen_network,
    most_vulnerable_exact,
    most_vulnerable_greedy,
    parse_network,
    simulate_cascade,
)


def brute_force_best(net, k):
    """Independent oracle: max final-failure count and all argmax attack sets."""
    best, winners = -1, []
    for combo in combinations(sorted(net.universe), k):
        cnt = len(simulate_cascade(net, combo).failed_set())
        if cnt > best:
            best, winners = cnt, [frozenset(combo)]
        elif cnt == best:
            winners.append(frozenset(combo))
    return best, winners


class TestExact:
    def test_table1_k2(self, table1):
        result = most_vulnerable_exact(table1, 2)
        assert result.total_failed == 7
        best, winners = brute_force_best(table1, 2)
        assert best == 7
        # the worked example's {b2, b3} is among the optimal attacks
        assert ents("b2", "b3") in winners
        assert len(simulate_cascade(table1, ents("b2", "b3")).failed_set()) == 7
        # the returned set is the lexicographically smallest optimum
        assert result.attacked == min(winners, key=names)
        assert result.attacked == ents("a2", "a4")

    def test_table1_k1_tie_break(self, table1):
        result = most_vulnerable_exact(table1, 1)
        best, winners = brute_force_best(table1, 1)
        assert result.total_failed == best == 5
        assert result.attacked == min(winners, key=names) == ents("a2")

    def test_no_rules(self):
        net = parse_network("a1\na2\nb1")
        result = most_vulnerable_exact(net, 1)
        assert result.total_failed == 1
        assert result.attacked == ents("a1")  # lexicographic tie-break

    def test_result_invariants(self, table1):
        result = most_vulnerable_exact(table1, 2)
        assert result.attacked <= result.failed_set
        assert result.total_failed == len(result.failed_set)
        assert simulate_cascade(table1, result.attacked).failed_set() == result.failed_set

    def test_nondecreasing_in_k(self, table1):
        totals = [most_vulnerable_exact(table1, k).total_failed for k in range(1, 5)]
        assert totals == sorted(totals)

    def test_k_out_of_range(self, table1):
        for bad in (0, -1, 9):
            with pytest.raises(ValueError):
                most_vulnerable_exact(table1, bad)

    def test_cap_guard(self, table1):
        with pytest.raises(EnumerationCapExceeded):
            most_vulnerable_exact(table1, 4, max_evaluations=10)


class TestGreedy:
    def test_table1_k2_lower_bounded(self, table1):
        greedy = most_vulnerable_greedy(table1, 2)
        assert greedy.total_failed >= 5
        assert greedy.total_failed <= most_vulnerable_exact(table1, 2).total_failed

    def test_no_rules_k2(self):
        net = parse_network("a1\na2\nb1")
        assert most_vulnerable_greedy(net, 2).total_failed == 2

    def test_attack_everything(self, table1):
        result = most_vulnerable_greedy(table1, 8)
        assert result.total_failed == 8
        assert result.attacked == table1.universe

    def test_exact_dominates_greedy_everywhere(self):
        for seed in range(40):
            net = gen_network(
                GeneratorConfig(n_a=4 + seed % 4, n_b=4 + seed % 3, max_minterms=2,
                                max_minterm_size=2, idr_probability=0.7, seed=seed)
            )
            k = 1 + seed % 3
            exact = most_vulnerable_exact(net, k)
            greedy = most_vulnerable_greedy(net, k)
            assert exact.total_failed >= greedy.total_failed
            assert simulate_cascade(net, greedy.attacked).failed_set() == greedy.failed_set

    def test_k_out_of_range(self, table1):
        with pytest.raises(ValueError):
            most_vulnerable_greedy(table1, 0)
