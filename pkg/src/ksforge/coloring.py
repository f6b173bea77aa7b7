"""0/1 colorability of MMP hypergraphs.

A coloring puts 1 on exactly one vertex of every edge and 0 on the other
three. A hypergraph with no such coloring (and a vector realization) is a
Kochen-Specker set.

The search is a small DPLL: unit propagation over edges, then branching on
the free vertex that occurs in the most edges not yet holding a 1, trying
the value 1 first. State is kept as two bitmasks so propagation is cheap.
"""

from __future__ import annotations

from typing import Optional

from .mmp import Hypergraph

Coloring = tuple[int, ...]


class _Conflict(Exception):
    pass


def _propagate(masks: list[int], ones: int, zeros: int) -> tuple[int, int]:
    """Apply the edge rules until nothing changes.

    * an edge holding a 1 forces its other vertices to 0
    * an edge with three 0s forces the last vertex to 1
    * four 0s, or two 1s, in one edge is a conflict
    """
    changed = True
    while changed:
        changed = False
        for m in masks:
            o = m & ones
            if o:
                if o & (o - 1):
                    raise _Conflict
                rest = m & ~o
                if rest & ~zeros:
                    zeros |= rest
                    changed = True
            else:
                free = m & ~zeros
                if not free:
                    raise _Conflict
                if not free & (free - 1):
                    ones |= free
                    changed = True
    return ones, zeros


def _pick_vertex(masks: list[int], ones: int, zeros: int) -> int:
    """Free vertex in the most unsatisfied edges; ties go to the lowest vertex.

    Counts are kept bit-sliced: ``planes[i]`` holds bit i of every
    vertex's count, so one edge is added with a ripple of ANDs and XORs.
    """
    assigned = ones | zeros
    planes: list[int] = []
    for m in masks:
        if m & ones:
            continue
        carry = m & ~assigned
        for i in range(len(planes)):
            if not carry:
                break
            p = planes[i]
            planes[i] = p ^ carry
            carry &= p
        if carry:
            planes.append(carry)
    cand = 0
    for p in planes:
        cand |= p
    for p in reversed(planes):
        x = cand & p
        if x:
            cand = x
    return cand & -cand


def _search(masks: list[int], full: int, ones: int, zeros: int) -> Optional[int]:
    try:
        ones, zeros = _propagate(masks, ones, zeros)
    except _Conflict:
        return None
    if (ones | zeros) & full == full:
        return ones
    if all(m & ones for m in masks):
        # every edge satisfied; remaining free vertices can be 0
        return ones
    bit = _pick_vertex(masks, ones, zeros)
    found = _search(masks, full, ones | bit, zeros)
    if found is not None:
        return found
    return _search(masks, full, ones, zeros | bit)


def find_coloring(h: Hypergraph) -> Optional[Coloring]:
    """Return an admissible 0/1 coloring of ``h``, or None if none exists.

    Vertices outside every edge are colored 0.
    """
    masks = sorted({sum(1 << v for v in e) for e in h.edges})
    used = 0
    for m in masks:
        used |= m
    ones = _search(masks, used, 0, 0)
    if ones is None:
        return None
    coloring = tuple((ones >> v) & 1 for v in range(h.vertex_count))
    if not is_admissible(h, coloring):
        raise AssertionError("coloring search returned an inadmissible witness")
    return coloring


def is_noncolorable(h: Hypergraph) -> bool:
    return find_coloring(h) is None


def is_admissible(h: Hypergraph, coloring: Coloring) -> bool:
    """Exactly one 1 on every edge."""
    return all(sum(coloring[v] for v in e) == 1 for e in h.edges)


def brute_force_colorable(h: Hypergraph) -> bool:
    """Enumerate all 2**N assignments. Only for tiny hypergraphs."""
    used = sorted({v for e in h.edges for v in e})
    if len(used) > 24:
        raise ValueError("brute force limited to 24 vertices")
    pos = {v: i for i, v in enumerate(used)}
    masks = [sum(1 << pos[v] for v in e) for e in h.edges]
    return any(all((bits & m).bit_count() == 1 for m in masks) for bits in range(1 << len(used)))
