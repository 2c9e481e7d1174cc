import pytest
from helpers import E, ents
from hypothesis import given, settings
from hypothesis import strategies as st

from interdep import (
    ALWAYS_ALIVE,
    GeneratorConfig,
    Modification,
    ValidationError,
    apply_modification,
    gen_network,
    induced_failure_set,
    simulate_cascade,
    trace_csv,
)

# Table-style expected trace for the worked example under {b2, b3}:
# one row per entity, 0 = operational, columns t0..t7.
EXPECTED_TRACE_CSV = """\
entity,t0,t1,t2,t3,t4,t5,t6,t7
a1,0,0,0,1,1,1,1,1
a2,0,1,1,1,1,1,1,1
a3,0,1,1,1,1,1,1,1
a4,0,1,1,1,1,1,1,1
a5,0,0,0,0,0,0,0,0
b1,0,0,1,1,1,1,1,1
b2,1,1,1,1,1,1,1,1
b3,1,1,1,1,1,1,1,1
"""


class TestWorkedExample:
    def test_fail_times(self, table1):
        trace = simulate_cascade(table1, ents("b2", "b3"))
        assert trace.horizon == 7
        assert trace.fail_time == {
            E("b2"): 0,
            E("b3"): 0,
            E("a2"): 1,
            E("a3"): 1,
            E("a4"): 1,
            E("b1"): 2,
            E("a1"): 3,
        }
        assert trace.time_of(E("a5")) is None
        assert trace.failed_set() == ents("a1", "a2", "a3", "a4", "b1", "b2", "b3")

    def test_induced_failures(self, table1):
        trace = simulate_cascade(table1, ents("b2", "b3"))
        assert induced_failure_set(trace) == ents("a1", "a2", "a3", "a4", "b1")

    def test_trace_csv(self, table1):
        trace = simulate_cascade(table1, ents("b2", "b3"))
        assert trace_csv(trace) == EXPECTED_TRACE_CSV

    def test_empty_initial(self, table1):
        trace = simulate_cascade(table1, ())
        assert trace.failed_set() == frozenset()
        assert induced_failure_set(trace) == frozenset()

    def test_modified_network(self, table1):
        label = table1.rule_for(E("b1")).label
        modified = apply_modification(table1, Modification(label, E("a5")))
        trace = simulate_cascade(modified, ents("b2", "b3"))
        assert trace.failed_set() == ents("a2", "a3", "a4", "b2", "b3")
        assert induced_failure_set(trace) == ents("a2", "a3", "a4")


class TestEdges:
    def test_unknown_initial_entity(self, table1):
        with pytest.raises(ValidationError):
            simulate_cascade(table1, ents("a9"))

    def test_zero_steps_keeps_only_initial(self, table1):
        trace = simulate_cascade(table1, ents("b2", "b3"), steps=0)
        assert trace.failed_set() == ents("b2", "b3")

    def test_hardened_rule_does_not_revive_attacked_entity(self, table1):
        label = table1.rule_for(E("b2")).label
        modified = apply_modification(table1, Modification(label, ALWAYS_ALIVE))
        trace = simulate_cascade(modified, ents("b2", "b3"))
        assert trace.time_of(E("b2")) == 0

    def test_entities_without_rules_never_fail(self):
        from interdep import parse_network

        net = parse_network("a1\na2\nb1")
        trace = simulate_cascade(net, ents("a1"))
        assert trace.failed_set() == ents("a1")


def _instance(draw_seed: int, n_a: int, n_b: int, p: float):
    return gen_network(
        GeneratorConfig(n_a=n_a, n_b=n_b, max_minterms=2, max_minterm_size=3,
                        idr_probability=p, seed=draw_seed)
    )


@settings(max_examples=80, deadline=None)
@given(
    seed=st.integers(0, 10_000),
    n_a=st.integers(1, 9),
    n_b=st.integers(1, 8),
    p=st.sampled_from([0.4, 0.8, 1.0]),
    attack=st.data(),
)
def test_monotone_and_fixed_point(seed, n_a, n_b, p, attack):
    net = _instance(seed, n_a, n_b, p)
    universe = sorted(net.universe)
    initial = frozenset(attack.draw(st.sets(st.sampled_from(universe), max_size=4)))
    trace = simulate_cascade(net, initial)
    # attacked entities fail at 0; everything else strictly later, within horizon
    for e, t in trace.fail_time.items():
        if e in initial:
            assert t == 0
        else:
            assert 1 <= t <= trace.horizon
    # rows of the CSV never go 1 -> 0 (failed entities stay failed)
    for row in trace_csv(trace).splitlines()[1:]:
        cells = row.split(",")[1:]
        assert "".join(cells).find("10") == -1
    # running twice as long changes nothing
    longer = simulate_cascade(net, initial, steps=2 * max(trace.horizon, 1))
    assert longer.fail_time == trace.fail_time


@settings(max_examples=60, deadline=None)
@given(
    seed=st.integers(0, 10_000),
    n_a=st.integers(2, 8),
    n_b=st.integers(2, 8),
    data=st.data(),
)
def test_modification_monotonicity(seed, n_a, n_b, data):
    net = _instance(seed, n_a, n_b, 0.8)
    if not net.rules:
        return
    universe = sorted(net.universe)
    initial = frozenset(data.draw(st.sets(st.sampled_from(universe), max_size=3)))
    label = data.draw(st.sampled_from([r.label for r in net.rules]))
    modified = apply_modification(net, Modification(label, ALWAYS_ALIVE))
    failed_before = simulate_cascade(net, initial).failed_set()
    failed_after = simulate_cascade(modified, initial).failed_set()
    assert failed_after <= failed_before
