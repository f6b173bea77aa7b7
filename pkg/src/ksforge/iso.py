"""Canonical labeling and isomorphism rejection for MMP hypergraphs.

``canonical_form`` is an individualization/refinement search in the style
of nauty: vertex colors are refined to an equitable-ish fixpoint, the
first smallest non-trivial cell is split by individualizing each of its
vertices in turn, and the lexicographically smallest relabelled edge list
over all discrete leaves wins. Automorphisms found along the way (two
leaves with the same form) prune sibling branches in the same orbit.

``are_isomorphic`` is a separate witness-producing matcher that shares no
code with the refinement search; the two cross-check each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .mmp import Hypergraph


@dataclass(frozen=True, order=True)
class CanonicalForm:
    vertex_count: int
    edges: tuple[tuple[int, ...], ...]

    def to_bytes(self) -> bytes:
        body = ";".join(",".join(map(str, e)) for e in self.edges)
        return f"{self.vertex_count}:{body}".encode()

    def hypergraph(self) -> Hypergraph:
        return Hypergraph(self.vertex_count, self.edges)


def _refine(colors: list[int], inc: list[list[tuple[int, ...]]]) -> list[int]:
    """Split color classes by the colors seen through incident edges.

    Repeats until the number of classes stops growing. New color numbers
    are ranks of sorted signatures, so the result does not depend on the
    vertex numbering.
    """
    n_classes = len(set(colors))
    while True:
        sigs = []
        for v, edges in enumerate(inc):
            nb = sorted(tuple(sorted(colors[u] for u in e if u != v)) for e in edges)
            sigs.append((colors[v], tuple(nb)))
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [ranks[s] for s in sigs]
        if len(ranks) == n_classes:
            return colors
        n_classes = len(ranks)


def _individualize(colors: list[int], v: int) -> list[int]:
    c = colors[v]
    return [2 * x + (1 if x == c and u != v else 0) for u, x in enumerate(colors)]


def _target_cell(colors: list[int]) -> list[int]:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    nontrivial = [(len(vs), c) for c, vs in cells.items() if len(vs) > 1]
    _, c = min(nontrivial)
    return cells[c]


def _orbits(n: int, gens: Sequence[Sequence[int]]) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                parent[a] = b
    return [find(v) for v in range(n)]


def canonical_labeling(h: Hypergraph) -> tuple[list[int], CanonicalForm]:
    """Return ``(perm, form)`` with ``form`` the edges of ``h.relabel(perm)``, sorted."""
    n = h.vertex_count
    inc: list[list[tuple[int, ...]]] = [[] for _ in range(n)]
    for e in h.edges:
        for v in e:
            inc[v].append(e)
    edges = h.edges

    best: list = [None, None]  # form edges, perm
    autos: list[list[int]] = []

    def leaf(colors: list[int]) -> None:
        form = tuple(sorted(tuple(sorted(colors[v] for v in e)) for e in edges))
        if best[0] is None or form < best[0]:
            best[0], best[1] = form, colors
        elif form == best[0]:
            inv = [0] * n
            for v, c in enumerate(best[1]):
                inv[c] = v
            autos.append([inv[colors[v]] for v in range(n)])

    def search(colors: list[int], fixed: list[int]) -> None:
        colors = _refine(colors, inc)
        if len(set(colors)) == n:
            leaf(colors)
            return
        cell = _target_cell(colors)
        done: list[int] = []
        for v in cell:
            if done:
                stab = [g for g in autos if all(g[u] == u for u in fixed)]
                if stab:
                    orb = _orbits(n, stab)
                    if any(orb[v] == orb[w] for w in done):
                        continue
            fixed.append(v)
            search(_individualize(colors, v), fixed)
            fixed.pop()
            done.append(v)

    search([0] * n, [])
    return list(best[1]), CanonicalForm(n, best[0])


def canonical_form(h: Hypergraph) -> CanonicalForm:
    """Label-invariant form; equal forms iff isomorphic hypergraphs."""
    return canonical_labeling(h)[1]


def canonical_hypergraph(h: Hypergraph) -> Hypergraph:
    return canonical_form(h).hypergraph()


def _cooccurrence(h: Hypergraph) -> list[list[int]]:
    n = h.vertex_count
    cnt = [[0] * n for _ in range(n)]
    for e in h.edges:
        for u in e:
            for v in e:
                if u != v:
                    cnt[u][v] += 1
    return cnt


def are_isomorphic(h1: Hypergraph, h2: Hypergraph) -> Optional[list[int]]:
    """A vertex bijection ``perm`` with ``h1.relabel(perm)`` edge-equal to ``h2``, or None.

    Direct backtracking: every mapped pair must keep its number of common
    edges, which for 4-uniform hypergraphs sharing at most two vertices per
    edge pair pins the edges down; the final map is checked edge by edge.
    """
    n = h1.vertex_count
    if n != h2.vertex_count or h1.block_count != h2.block_count:
        return None
    c1, c2 = _cooccurrence(h1), _cooccurrence(h2)
    prof1 = [sorted(row) for row in c1]
    prof2 = [sorted(row) for row in c2]
    if sorted(prof1) != sorted(prof2):
        return None
    maxk = max((max(r) for r in c1), default=0)
    # by_count[x][k]: vertices y of h2 sharing exactly k edges with x
    by_count = [[0] * (maxk + 1) for _ in range(n)]
    for x in range(n):
        for y in range(n):
            if x != y and c2[x][y] <= maxk:
                by_count[x][c2[x][y]] |= 1 << y
    same_prof = {}
    for y, pr in enumerate(prof2):
        same_prof[tuple(pr)] = same_prof.get(tuple(pr), 0) | (1 << y)

    # BFS order over h1 so each new vertex is constrained by mapped neighbours
    order: list[int] = []
    seen = [False] * n
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        queue = [s]
        while queue:
            u = queue.pop(0)
            order.append(u)
            for v in range(n):
                if c1[u][v] and not seen[v]:
                    seen[v] = True
                    queue.append(v)

    perm = [-1] * n

    def search(i: int, used: int) -> bool:
        if i == n:
            return verify_mapping(h1, h2, perm)
        v = order[i]
        cand = same_prof[tuple(prof1[v])] & ~used
        for u in order[:i]:
            cand &= by_count[perm[u]][c1[u][v]]
            if not cand:
                return False
        while cand:
            low = cand & -cand
            perm[v] = low.bit_length() - 1
            if search(i + 1, used | low):
                return True
            cand ^= low
        perm[v] = -1
        return False

    if not search(0, 0):
        return None
    return list(perm)


def verify_mapping(h1: Hypergraph, h2: Hypergraph, perm: Sequence[int]) -> bool:
    """Translate every edge of h1 through ``perm`` and compare edge sets."""
    if sorted(perm) != list(range(h2.vertex_count)) or len(perm) != h1.vertex_count:
        return False
    image = {frozenset(perm[v] for v in e) for e in h1.edges}
    return image == set(h2.edge_sets()) and len(image) == h1.block_count


def dedupe_iso(stream: Iterable[Hypergraph]) -> Iterator[Hypergraph]:
    """Keep the first hypergraph of each isomorphism class, in input order."""
    seen: set[CanonicalForm] = set()
    for h in stream:
        f = canonical_form(h)
        if f not in seen:
            seen.add(f)
            yield h
