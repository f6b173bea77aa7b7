import random

import pytest
from hypothesis import strategies as st

from ksforge.corpus import load_corpus
from ksforge.mmp import Hypergraph, MmpError, make_hypergraph

CORPUS = load_corpus()
CRITICAL_NAMES = [n for n, e in CORPUS.items() if e.critical]


@pytest.fixture(scope="session")
def corpus():
    return CORPUS


def random_relabel(h: Hypergraph, rng: random.Random) -> Hypergraph:
    perm = list(range(h.vertex_count))
    rng.shuffle(perm)
    edges = [tuple(rng.sample(e, len(e))) for e in h.relabel(perm).edges]
    rng.shuffle(edges)
    return Hypergraph(h.vertex_count, tuple(edges))


@st.composite
def hypergraphs(draw, max_vertices=12, max_edges=6, min_edges=1):
    """Valid 4-uniform hypergraphs; edges share at most two vertices."""
    n = draw(st.integers(4, max_vertices))
    k = draw(st.integers(min_edges, max_edges))
    edges: list[tuple[int, ...]] = []
    for _ in range(k):
        e = tuple(draw(st.lists(st.integers(0, n - 1), min_size=4, max_size=4, unique=True)))
        s = set(e)
        if all(len(s & set(f)) <= 2 for f in edges):
            edges.append(e)
    try:
        return make_hypergraph(edges, n)
    except MmpError:  # pragma: no cover
        return make_hypergraph(edges[:1], n)


def small_bank(count: int = 1500, seed: int = 7) -> list[Hypergraph]:
    """Deterministic bank of hypergraphs with at most 6 edges.

    Half are validated MMP hypergraphs; the rest may share three vertices
    between edges, which is where tiny non-colorable instances live.
    """
    rng = random.Random(seed)
    bank = []
    while len(bank) < count:
        strict = len(bank) % 2 == 0
        n = rng.randint(4, 11 if strict else 7)
        k = rng.randint(1, 6)
        edges: list[tuple[int, ...]] = []
        for _ in range(k):
            e = tuple(rng.sample(range(n), 4))
            if any(set(e) == set(f) for f in edges):
                continue
            if strict and any(len(set(e) & set(f)) > 2 for f in edges):
                continue
            edges.append(e)
        bank.append(make_hypergraph(edges, n, validate=strict))
    return bank


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
