"""Backend equivalence: the numba kernels must match the NumPy fallback."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from interdep import GeneratorConfig, compile_network, gen_network
from interdep import _kernels_np as knp

knb = pytest.importorskip("interdep._kernels_nb")


def _args(comp):
    return (comp.mt_start, comp.mt_end, comp.lit_start, comp.lit_end, comp.lits)


def _compiled(seed, n_a=7, n_b=6, p=0.8):
    net = gen_network(
        GeneratorConfig(n_a=n_a, n_b=n_b, max_minterms=2, max_minterm_size=3,
                        idr_probability=p, seed=seed)
    )
    return compile_network(net)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 100_000), data=st.data())
def test_fail_times_equivalent(seed, data):
    comp = _compiled(seed)
    n = len(comp.entities)
    initial = np.zeros(n, dtype=np.uint8)
    for i in data.draw(st.sets(st.integers(0, n - 1), max_size=4)):
        initial[i] = 1
    t_np = knp.fail_times(*_args(comp), initial, comp.base_immune, comp.horizon)
    t_nb = knb.fail_times(*_args(comp), initial, comp.base_immune, comp.horizon)
    assert np.array_equal(t_np, t_nb)
    assert knp.final_count(*_args(comp), initial, comp.base_immune, comp.horizon) == knb.final_count(
        *_args(comp), initial, comp.base_immune, comp.horizon
    )


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 100_000), k=st.integers(1, 3))
def test_best_attack_equivalent(seed, k):
    comp = _compiled(seed, n_a=5, n_b=5)
    got_np = knp.best_attack_subset(*_args(comp), comp.base_immune, comp.horizon, k)
    got_nb = knb.best_attack_subset(*_args(comp), comp.base_immune, comp.horizon, k)
    assert np.array_equal(got_np[0], got_nb[0])
    assert got_np[1] == got_nb[1]


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 100_000), s=st.integers(0, 3), data=st.data())
def test_best_immune_equivalent(seed, s, data):
    comp = _compiled(seed, n_a=6, n_b=5, p=0.9)
    candidates = np.asarray(sorted(comp.target_index.values()), dtype=np.int32)
    if candidates.size < s:
        return
    n = len(comp.entities)
    initial = np.zeros(n, dtype=np.uint8)
    for i in data.draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=3)):
        initial[i] = 1
    got_np = knp.best_immune_subset(
        *_args(comp), initial, comp.base_immune, comp.horizon, candidates, s
    )
    got_nb = knb.best_immune_subset(
        *_args(comp), initial, comp.base_immune, comp.horizon, candidates, s
    )
    assert np.array_equal(got_np[0], got_nb[0])
    assert got_np[1] == got_nb[1]


def test_degenerate_networks():
    from interdep import Network

    for net in [Network((), ()), gen_network(GeneratorConfig(n_a=2, n_b=2, idr_probability=0.0))]:
        comp = compile_network(net)
        n = len(comp.entities)
        initial = np.zeros(n, dtype=np.uint8)
        t_np = knp.fail_times(*_args(comp), initial, comp.base_immune, comp.horizon)
        t_nb = knb.fail_times(*_args(comp), initial, comp.base_immune, comp.horizon)
        assert np.array_equal(t_np, t_nb)
        assert (t_np == -1).all()
