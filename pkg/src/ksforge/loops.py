"""Maximal loops of MMP hypergraphs.

A loop of order m is a cyclic sequence of m >= 3 distinct edges in which
cyclically consecutive edges meet in exactly one vertex, non-consecutive
edges are disjoint, and the m meeting vertices are pairwise distinct. In
other words an induced cycle of the edge-intersection graph. The 26-13 set
has a maximal loop of order 8 (an octagon), 42-24 one of order 14.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .mmp import Hypergraph


class BudgetExceeded(RuntimeError):
    """The loop search hit its node budget before finishing."""


@dataclass(frozen=True)
class Loop:
    edges: tuple[int, ...]
    junctions: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class LoopSearch:
    order: int
    witness: Optional[Loop]
    complete: bool
    nodes: int


def _meets(h: Hypergraph) -> list[list[int]]:
    sets = h.edge_sets()
    b = len(sets)
    return [[len(sets[i] & sets[j]) if i != j else 4 for j in range(b)] for i in range(b)]


def search_loops(h: Hypergraph, budget: Optional[int] = None) -> LoopSearch:
    """Depth-first induced-cycle search with the smallest edge index as anchor.

    ``budget`` caps the number of search nodes; when hit, the result has
    ``complete=False`` and holds the best loop found so far.
    """
    sets = h.edge_sets()
    b = len(sets)
    meet = _meets(h)
    touching = [{j for j in range(b) if j != i and meet[i][j]} for i in range(b)]
    best: list[tuple[int, ...]] = [()]
    nodes = 0

    def extend(path: list[int], banned: set[int], start: int) -> None:
        nonlocal nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExceeded
        last = path[-1]
        # edges still eligible: above the anchor, not touching the interior
        avail = [j for j in range(start + 1, b) if j not in banned]
        if len(path) + len(avail) <= len(best[0]):
            return
        for j in avail:
            if meet[last][j] != 1:
                continue
            if meet[start][j]:
                if len(path) < 2 or meet[start][j] != 1:
                    continue
                if len(path) == 2 and (sets[start] & sets[j]) <= sets[path[1]]:
                    continue
                if len(path) + 1 > len(best[0]):
                    best[0] = tuple(path + [j])
                continue
            if len(path) >= 2 and any(meet[p][j] for p in path[1:-1]):
                continue
            new_banned = banned | touching[last] | {j}
            path.append(j)
            extend(path, new_banned, start)
            path.pop()

    complete = True
    try:
        for s in range(b):
            if b - s <= len(best[0]):
                break
            for j in range(s + 1, b):
                if meet[s][j] != 1:
                    continue
                banned = {s, j}
                extend([s, j], banned, s)
    except BudgetExceeded:
        complete = False

    witness = _as_loop(h, best[0]) if best[0] else None
    if witness is not None and not verify_loop(h, witness):
        raise AssertionError("loop search produced an invalid witness")
    return LoopSearch(len(best[0]), witness, complete, nodes)


def _as_loop(h: Hypergraph, edges: tuple[int, ...]) -> Loop:
    sets = h.edge_sets()
    m = len(edges)
    junctions = []
    for k in range(m):
        common = sets[edges[k]] & sets[edges[(k + 1) % m]]
        junctions.append(min(common))
    return Loop(tuple(edges), tuple(junctions))


def verify_loop(h: Hypergraph, loop: Loop) -> bool:
    """Recount all loop conditions from scratch."""
    sets = h.edge_sets()
    m = len(loop.edges)
    if m < 3 or len(set(loop.edges)) != m or len(loop.junctions) != m:
        return False
    if len(set(loop.junctions)) != m:
        return False
    for a in range(m):
        for c in range(a + 1, m):
            common = sets[loop.edges[a]] & sets[loop.edges[c]]
            if c == a + 1 or (a == 0 and c == m - 1):
                if len(common) != 1:
                    return False
            elif common:
                return False
    for k in range(m):
        if sets[loop.edges[k]] & sets[loop.edges[(k + 1) % m]] != {loop.junctions[k]}:
            return False
    return True


def max_loop_order(h: Hypergraph, budget: Optional[int] = None) -> int:
    """Order of the largest loop, 0 if there is none.

    Raises :class:`BudgetExceeded` if ``budget`` nodes are not enough.
    """
    res = search_loops(h, budget)
    if not res.complete:
        raise BudgetExceeded(f"loop search stopped after {res.nodes} nodes (best so far {res.order})")
    return res.order


def find_max_loop(h: Hypergraph, budget: Optional[int] = None) -> Optional[Loop]:
    res = search_loops(h, budget)
    if not res.complete:
        raise BudgetExceeded(f"loop search stopped after {res.nodes} nodes (best so far {res.order})")
    return res.witness


def brute_force_max_loop(h: Hypergraph) -> int:
    """Check every edge subset. Exponential; for B <= ~12."""
    sets = h.edge_sets()
    best = 0
    for m in range(3, len(sets) + 1):
        for sub in combinations(range(len(sets)), m):
            if _subset_is_loop(sets, sub):
                best = m
                break
    return best


def _subset_is_loop(sets, sub) -> bool:
    nbrs: dict[int, list[int]] = {i: [] for i in sub}
    for a, c in combinations(sub, 2):
        k = len(sets[a] & sets[c])
        if k > 1:
            return False
        if k == 1:
            nbrs[a].append(c)
            nbrs[c].append(a)
    if any(len(v) != 2 for v in nbrs.values()):
        return False
    # one cycle through every member?
    start = sub[0]
    prev, cur, seen = None, start, 1
    while True:
        nxt = nbrs[cur][0] if nbrs[cur][0] != prev else nbrs[cur][1]
        if nxt == start:
            break
        prev, cur = cur, nxt
        seen += 1
    if seen != len(sub):
        return False
    if len(sub) == 3:
        a, c, d = sub
        js = {min(sets[a] & sets[c]), min(sets[c] & sets[d]), min(sets[a] & sets[d])}
        return len(js) == 3
    return True
