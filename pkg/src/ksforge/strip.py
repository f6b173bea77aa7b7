"""Block stripping: enumerate sub-hypergraphs with k edges removed.

The removed k-combinations are visited in lexicographic order and are
rank-addressable (1-based), so a run can be split into ``[start, end]``
shards or resumed without generating what came before.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, Optional

from .mmp import Hypergraph, is_connected, renormalize


class PlanError(ValueError):
    pass


@dataclass(frozen=True)
class StripPlan:
    k: int
    start: int = 1
    end: Optional[int] = None  # None = last rank
    increment: int = 1
    drop_disconnected: bool = False
    renormalize_output: bool = True

    def resolved_end(self, blocks: int) -> int:
        return comb(blocks, self.k) if self.end is None else self.end

    def validate(self, blocks: int) -> None:
        if not 0 <= self.k <= blocks:
            raise PlanError(f"k={self.k} outside [0, {blocks}]")
        total = comb(blocks, self.k)
        end = self.resolved_end(blocks)
        if not 1 <= self.start <= end <= total:
            raise PlanError(f"need 1 <= start <= end <= {total}, got start={self.start} end={end}")
        if self.increment < 1:
            raise PlanError("increment must be >= 1")

    def ranks(self, blocks: int) -> range:
        self.validate(blocks)
        return range(self.start, self.resolved_end(blocks) + 1, self.increment)


def count_strips(h: Hypergraph, k: int) -> int:
    if not 0 <= k <= h.block_count:
        raise PlanError(f"k={k} outside [0, {h.block_count}]")
    return comb(h.block_count, k)


def unrank_combination(n: int, k: int, rank: int) -> tuple[int, ...]:
    """The ``rank``-th (1-based) k-subset of ``range(n)`` in lexicographic order."""
    total = comb(n, k)
    if not 1 <= rank <= total:
        raise ValueError(f"rank {rank} outside [1, {total}]")
    r = rank - 1
    out = []
    x = 0
    for i in range(k, 0, -1):
        # skip first elements whose blocks lie entirely before r
        while True:
            block = comb(n - x - 1, i - 1)
            if r < block:
                break
            r -= block
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


def rank_combination(n: int, combo: Iterable[int]) -> int:
    """Inverse of :func:`unrank_combination`."""
    c = list(combo)
    k = len(c)
    r = 0
    prev = -1
    for i, x in enumerate(c):
        for y in range(prev + 1, x):
            r += comb(n - y - 1, k - i - 1)
        prev = x
    return r + 1


def _next_combination(c: list[int], n: int) -> bool:
    k = len(c)
    i = k - 1
    while i >= 0 and c[i] == n - k + i:
        i -= 1
    if i < 0:
        return False
    c[i] += 1
    for j in range(i + 1, k):
        c[j] = c[j - 1] + 1
    return True


def removal_sets(blocks: int, plan: StripPlan) -> Iterator[tuple[int, tuple[int, ...]]]:
    """Yield ``(rank, removed_indices)`` selected by the plan.

    Unranks once at ``start`` and then steps lexicographically; large
    increments jump by unranking instead of stepping.
    """
    ranks = plan.ranks(blocks)
    if not ranks:
        return
    c = list(unrank_combination(blocks, plan.k, ranks[0]))
    rank = ranks[0]
    for target in ranks:
        if target - rank > 64:
            c = list(unrank_combination(blocks, plan.k, target))
        else:
            while rank < target:
                _next_combination(c, blocks)
                rank += 1
        rank = target
        yield target, tuple(c)


def enumerate_strips(h: Hypergraph, plan: StripPlan) -> Iterator[Hypergraph]:
    for sub, _removed in enumerate_strips_ranked(h, plan):
        yield sub


def enumerate_strips_ranked(h: Hypergraph, plan: StripPlan) -> Iterator[tuple[Hypergraph, tuple[int, ...]]]:
    """Like :func:`enumerate_strips` but also yields the removed edge indices."""
    for _, removed in removal_sets(h.block_count, plan):
        sub = h.without_edges(removed)
        if plan.drop_disconnected and not is_connected(sub):
            continue
        if plan.renormalize_output:
            sub = renormalize(sub)
        yield sub, removed


def dedupe_exact(stream: Iterable[Hypergraph]) -> Iterator[Hypergraph]:
    """Drop repeats of the same labelled edge set (after renormalization)."""
    seen: set = set()
    for h in stream:
        key = renormalize(h).edge_key()
        if key not in seen:
            seen.add(key)
            yield h
