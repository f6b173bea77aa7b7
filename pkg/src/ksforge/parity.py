"""Parity proofs and the search for N-T parity subsets.

If a hypergraph has an odd number of edges and every vertex lies in an
even number of them, no 0/1 coloring exists: summing the single 1 of each
edge gives an odd total, while counting per vertex gives an even one.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional

from .mmp import Hypergraph, degrees


@dataclass(frozen=True)
class ParityVerdict:
    holds: bool
    edge_count_odd: bool
    offending_vertices: tuple[int, ...]


def parity_proof(h: Hypergraph) -> ParityVerdict:
    odd_b = h.block_count % 2 == 1
    bad = tuple(v for v, d in enumerate(degrees(h)) if d % 2)
    return ParityVerdict(odd_b and not bad, odd_b, bad)


def parity_subset_search(
    h: Hypergraph, tetrads: int, first_edges: Optional[range] = None
) -> Iterator[tuple[int, ...]]:
    """Yield every set of ``tetrads`` edges in which each covered vertex has degree exactly 2.

    Subsets come out as sorted edge-index tuples, each exactly once, in
    a deterministic order. The search grows one connected component at a
    time from its lowest edge: an unsaturated vertex (degree 1 so far) must
    be closed by exactly one more edge through it, so branching on that
    edge never visits a subset twice. Further components start at a higher
    root and must avoid every vertex already used.

    ``first_edges`` restricts the root of the first component, which lets
    callers shard the search.
    """
    b = h.block_count
    if tetrads % 2 == 0 or not 1 <= tetrads <= b:
        raise ValueError(f"tetrad count must be odd and in [1, {b}], got {tetrads}")
    masks = [sum(1 << v for v in e) for e in h.edges]
    inc = h.incidence()
    roots = range(b) if first_edges is None else first_edges

    chosen: list[int] = []

    def grow(root: int, covered: int, twice: int, min_root: int) -> Iterator[tuple[int, ...]]:
        # covered: vertices of degree >= 1; twice: degree 2
        open_ = covered & ~twice
        if not open_:
            if len(chosen) == tetrads:
                yield tuple(sorted(chosen))
            elif len(chosen) < tetrads:
                # start another component strictly above the previous root
                for r in range(root + 1, b):
                    if masks[r] & covered:
                        continue
                    chosen.append(r)
                    yield from grow(r, covered | masks[r], twice, r)
                    chosen.pop()
            return
        left = tetrads - len(chosen)
        # each new edge closes at most four open vertices
        if left * 4 < bin(open_).count("1"):
            return
        v = (open_ & -open_).bit_length() - 1
        for j in inc[v]:
            if j <= min_root or j in chosen:
                continue
            m = masks[j]
            if m & twice:
                continue
            chosen.append(j)
            yield from grow(root, covered | m, twice | (m & covered), min_root)
            chosen.pop()

    for r in roots:
        chosen.append(r)
        yield from grow(r, masks[r], 0, r)
        chosen.pop()


def parity_subgraphs(h: Hypergraph, tetrads: int) -> Iterator[Hypergraph]:
    """Like :func:`parity_subset_search` but yielding the sub-hypergraphs."""
    for sub in parity_subset_search(h, tetrads):
        yield h.subgraph(sub)


def covered_vertices(h: Hypergraph, sub: tuple[int, ...]) -> frozenset:
    return frozenset(v for j in sub for v in h.edges[j])


def brute_force_parity_subsets(h: Hypergraph, tetrads: int) -> list[tuple[int, ...]]:
    """Filter all C(B, T) subsets directly. Small B only."""
    out = []
    for sub in combinations(range(h.block_count), tetrads):
        deg: dict[int, int] = {}
        for j in sub:
            for v in h.edges[j]:
                deg[v] = deg.get(v, 0) + 1
        if all(d == 2 for d in deg.values()):
            out.append(sub)
    return out
