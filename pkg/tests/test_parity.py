import random

import pytest
from hypothesis import given, settings, strategies as st

from ksforge.coloring import is_noncolorable
from ksforge.iso import are_isomorphic
from ksforge.mmp import renormalize
from ksforge.parity import (
    brute_force_parity_subsets, covered_vertices, parity_proof, parity_subgraphs, parity_subset_search,
)

from conftest import CORPUS, hypergraphs


@pytest.mark.parametrize("name", list(CORPUS))
def test_parity_verdicts(name):
    e = CORPUS[name]
    h = e.hypergraph
    assert parity_proof(h).holds == e.parity


def test_42_24_fails_at_vertex_2():
    v = parity_proof(CORPUS["42-24"].hypergraph)
    assert not v.holds
    assert not v.edge_count_odd
    assert 1 in v.offending_vertices  # label '2'


def test_even_tetrad_count_rejected():
    with pytest.raises(ValueError):
        list(parity_subset_search(CORPUS["26-13"].hypergraph, 4))


@pytest.fixture(scope="module")
def first_solution():
    h = CORPUS["60-75"].hypergraph
    return next(parity_subset_search(h, 13))


def _mixed(seed, first_solution, extra=7):
    h = CORPUS["60-75"].hypergraph
    rng = random.Random(seed)
    rest = [j for j in range(h.block_count) if j not in first_solution]
    return renormalize(h.subgraph(sorted(list(first_solution) + rng.sample(rest, extra))))


@pytest.mark.parametrize("seed", range(3))
def test_matches_brute_force_b20(seed, first_solution):
    h = _mixed(seed, first_solution)
    assert h.block_count == 20
    for t in (1, 3, 11, 13, 15):
        assert sorted(parity_subset_search(h, t)) == brute_force_parity_subsets(h, t)


@settings(max_examples=100, deadline=None)
@given(hypergraphs(max_vertices=14, max_edges=12), st.sampled_from([1, 3, 5, 7]))
def test_random_matches_brute_force(h, t):
    if t > h.block_count:
        return
    got = list(parity_subset_search(h, t))
    assert len(got) == len(set(got))
    assert sorted(got) == brute_force_parity_subsets(h, t)


def test_solutions_are_parity_proofs(first_solution):
    h = CORPUS["60-75"].hypergraph
    sub = h.subgraph(first_solution)
    v = parity_proof(renormalize(sub))
    assert v.holds
    assert len(covered_vertices(h, first_solution)) == 26
    assert is_noncolorable(sub)
    assert are_isomorphic(renormalize(sub), CORPUS["26-13"].hypergraph) is not None


def test_parity_subgraphs_yield_t_edges():
    h = CORPUS["30-15a"].hypergraph
    subs = list(parity_subgraphs(h, 15))
    assert len(subs) == 1 and subs[0].block_count == 15


def test_first_edges_shard_union(first_solution):
    h = _mixed(0, first_solution)
    whole = sorted(parity_subset_search(h, 13))
    parts = []
    for lo in range(0, 20, 5):
        parts += parity_subset_search(h, 13, range(lo, lo + 5))
    assert sorted(parts) == whole
