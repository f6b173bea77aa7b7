"""Acceptance criteria 1-10, each reported as one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (the summary lines are
printed at the end of the session) or ``python tests/test_acceptance.py``.
"""

import random
import time
from itertools import combinations
from math import comb

import pytest

from ksforge.coloring import brute_force_colorable, find_coloring, is_noncolorable
from ksforge.geometry import find_assignment, generate_600cell, verify_assignment
from ksforge.iso import canonical_form
from ksforge.loops import max_loop_order
from ksforge.mmp import degrees, renormalize
from ksforge.parity import covered_vertices, parity_proof, parity_subset_search
from ksforge.pipeline import CensusConfig, census, is_critical, seeded_census
from ksforge.strip import StripPlan, rank_combination, unrank_combination

from conftest import CORPUS, CRITICAL_NAMES, random_relabel, small_bank

RESULTS: dict[int, str] = {}

# census settings used for criterion 9
CENSUS_SEED = 1
CENSUS_K = 30
CENSUS_FIRST_SAMPLES = 2000
CENSUS_CONFIG = CensusConfig(target_blocks=15, sample_size=100, seed=CENSUS_SEED,
                             sample_schedule=((26, 300), (22, 1000)), critical_max_blocks=19, weighting="lineage")


@pytest.fixture(autouse=True)
def _line_even_on_error(request):
    n = int(request.node.name.split("_")[1])
    yield
    if n not in RESULTS:
        RESULTS[n] = f"criterion {n:2d}: FAIL  raised before reporting"


def report(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


def test_01_corpus_regression():
    problems = []
    for name, e in CORPUS.items():
        h = e.hypergraph
        if (h.vertex_count, h.block_count) != (e.vertices, e.blocks):
            problems.append(name)
    d26 = set(degrees(CORPUS["26-13"].hypergraph))
    d60 = set(degrees(CORPUS["60-75"].hypergraph))
    h60 = CORPUS["60-75"].hypergraph
    ok = not problems and d26 == {2} and d60 == {5} and (h60.vertex_count, h60.block_count) == (60, 75)
    report(1, ok, f"{len(CORPUS)} strings parse; 26-13 degrees {sorted(d26)}; 60-75 degrees {sorted(d60)}"
           + (f"; shape mismatch {problems}" if problems else ""))


def test_02_noncolorability():
    bad = [n for n in CORPUS if not is_noncolorable(CORPUS[n].hypergraph)]
    still = []
    for n in CRITICAL_NAMES:
        h = CORPUS[n].hypergraph
        still += [(n, j) for j in range(h.block_count) if find_coloring(h.without_edges([j])) is None]
    report(2, not bad and not still,
           f"{len(CORPUS) - len(bad)}/{len(CORPUS)} non-colorable; one-block removals of {len(CRITICAL_NAMES)} "
           f"critical sets all colorable: {not still}")


def test_03_criticality():
    wrong = [n for n in CRITICAL_NAMES if not is_critical(CORPUS[n].hypergraph)]
    c60 = is_critical(CORPUS["60-75"].hypergraph)
    report(3, not wrong and not c60, f"critical: {len(CRITICAL_NAMES) - len(wrong)}/{len(CRITICAL_NAMES)}; "
           f"60-75 critical={c60}")


def test_04_max_loops():
    expected = {n: e.max_loop for n, e in CORPUS.items() if e.max_loop is not None}
    t = time.time()
    got = {n: max_loop_order(CORPUS[n].hypergraph) for n in expected}
    wrong = {n: (got[n], expected[n]) for n in expected if got[n] != expected[n]}
    detail = f"{len(expected) - len(wrong)}/{len(expected)} match in {time.time() - t:.1f}s"
    if wrong:
        detail += "; mismatches (found, expected): " + ", ".join(f"{n} {v}" for n, v in wrong.items())
    report(4, not wrong, detail)


def test_05_parity():
    names = ["26-13", "30-15a", "30-15b", "30-15c", "34-17a", "34-17b", "34-17c", "34-17d", "34-17e"]
    fails = [n for n in names if not parity_proof(CORPUS[n].hypergraph).holds]
    v42 = parity_proof(CORPUS["42-24"].hypergraph)
    ok = not fails and not v42.holds and 1 in v42.offending_vertices
    report(5, ok, f"parity holds for {len(names) - len(fails)}/{len(names)} N=2T sets; "
           f"42-24 fails={not v42.holds}, vertex '2' odd={1 in v42.offending_vertices}")


def test_06_600cell():
    pool = generate_600cell()
    deg = set(pool.orthogonality_degrees())
    mem = set(pool.tetrad_membership())
    ok = len(pool.rays) == 60 and len(pool.tetrads) == 75 and deg == {15} and mem == {5}
    report(6, ok, f"{len(pool.rays)} rays, {len(pool.tetrads)} tetrads, orthogonality degrees {sorted(deg)}, "
           f"membership {sorted(mem)}")


def test_07_realizability():
    pool = generate_600cell()
    res = {}
    for n in ("60-75", "26-13", "30-15a"):
        h = CORPUS[n].hypergraph
        m = find_assignment(h, pool)
        res[n] = m is not None and verify_assignment(h, m)
    report(7, all(res.values()), ", ".join(f"{n}: {'ok' if v else 'none'}" for n, v in res.items()))


def test_08_parity_search():
    h = CORPUS["60-75"].hypergraph
    t = time.time()
    small = {T: sum(1 for _ in parity_subset_search(h, T)) for T in (7, 9, 11)}
    subs = list(parity_subset_search(h, 13))
    ray_sets = {covered_vertices(h, s) for s in subs}
    f26 = canonical_form(CORPUS["26-13"].hypergraph)
    non_iso = sum(1 for s in subs if canonical_form(renormalize(h.subgraph(s))) != f26)
    ok = all(v == 0 for v in small.values()) and len(ray_sets) == 1800 and non_iso == 0
    report(8, ok, f"T=7,9,11 -> {list(small.values())}; T=13 -> {len(subs)} subsets, {len(ray_sets)} distinct "
           f"ray sets, {non_iso} not isomorphic to 26-13 ({time.time() - t:.1f}s)")


def test_09_census():
    h = CORPUS["60-75"].hypergraph
    t0 = time.time()
    names = {canonical_form(e.hypergraph): n for n, e in CORPUS.items()}
    # (a) sampled descent from 60-75 to 15 blocks
    inc = comb(75, CENSUS_K) // CENSUS_FIRST_SAMPLES
    recs = census(h, 15, StripPlan(CENSUS_K, increment=inc, drop_disconnected=True), CENSUS_CONFIG)
    crit = [r for r in recs if r.critical]
    found = sorted({names.get(canonical_form(renormalize(_parse(r.mmp))), f"{r.vertex_count}-{r.block_count}")
                    for r in crit})
    got_30_15 = [n for n in found if n.startswith("30-15")]
    shapes19 = sorted({(r.vertex_count, r.block_count) for r in crit if r.block_count == 19})
    ok19 = all(v in (36, 37, 38) for v, _ in shapes19)
    t1 = time.time()
    # (b) parity-seeded census at 13 blocks
    seeds = [renormalize(h.subgraph(s)) for s in parity_subset_search(h, 13)]
    recs13 = seeded_census(seeds, CensusConfig(target_blocks=12, critical_max_blocks=13))
    found13 = {names.get(canonical_form(_parse(r.mmp))) for r in recs13 if r.critical and r.block_count == 13}
    below13 = [r for r in recs13 if r.block_count <= 12]
    # (c) nothing with <= 12 blocks: parity search for T <= 11 is empty, and
    #     every 26-13 seed loses non-colorability when any block goes
    t_small = [sum(1 for _ in parity_subset_search(h, T)) for T in range(1, 12, 2)]
    ok = bool(got_30_15) and ok19 and found13 == {"26-13"} and not below13 and not any(t_small)
    report(9, ok, f"descent to 15: critical classes {found} ({t1 - t0:.0f}s); 19-block critical shapes "
           f"{[f'{v}-{b}' for v, b in shapes19]}; parity seeding: {sorted(map(str, found13))}, "
           f"{len(below13)} sets below 13 blocks; T<=11 solutions {sum(t_small)}")


def _parse(s):
    from ksforge.mmp import parse

    return parse(s)


def test_10_property_suites():
    bank = small_bank()
    mism = sum((find_coloring(h) is not None) != brute_force_colorable(h) for h in bank)
    rank_bad = 0
    for n in range(21):
        for k in range(n + 1):
            for r, c in enumerate(combinations(range(n), k), 1):
                if unrank_combination(n, k, r) != c or rank_combination(n, c) != r:
                    rank_bad += 1
    rng = random.Random(10)
    canon_bad = []
    for name, e in CORPUS.items():
        h = e.hypergraph
        f = canonical_form(h)
        if any(canonical_form(random_relabel(h, rng)) != f for _ in range(100)):
            canon_bad.append(name)
    ok = mism == 0 and rank_bad == 0 and not canon_bad
    report(10, ok, f"coloring bank {len(bank)} instances, {mism} mismatches; unranking B<=20 "
           f"{rank_bad} failures; canonical invariance failures {canon_bad or 'none'}")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
