"""MMP hypergraphs: data model and textual notation.

A hypergraph is a vertex count plus an ordered list of 4-vertex edges
(tetrads). Vertices are integers ``0..N-1``; the textual notation writes
vertex ``i`` with the single character ``ALPHABET[i]``, edges separated by
commas and the whole line terminated by a period::

    1234,4567,789A.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

ALPHABET = "123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz"
MAX_TEXT_VERTICES = len(ALPHABET)
EDGE_SIZE = 4

_LABEL_INDEX = {ch: i for i, ch in enumerate(ALPHABET)}


class MmpError(ValueError):
    """Malformed MMP text or an invalid hypergraph."""


class MissingTerminatorWarning(UserWarning):
    """MMP line without the terminal period; accepted anyway."""


Edge = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class Hypergraph:
    """Immutable 4-uniform hypergraph.

    Edges keep the vertex order they were given in (for faithful
    round-tripping of hand-written strings) but compare as sets.
    Equality is edge-order sensitive; use :meth:`edge_key` for
    order-free comparison.
    """

    vertex_count: int
    edges: tuple[Edge, ...]
    _sets: tuple[frozenset, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "_sets", tuple(frozenset(e) for e in self.edges))

    @property
    def block_count(self) -> int:
        return len(self.edges)

    def edge_sets(self) -> tuple[frozenset, ...]:
        return self._sets

    def edge_key(self) -> tuple[Edge, ...]:
        """Exact (labelled) form: sorted edges of sorted vertices."""
        return tuple(sorted(tuple(sorted(e)) for e in self.edges))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self._sets == other._sets

    def __hash__(self) -> int:
        return hash((self.vertex_count, self._sets))

    def __len__(self) -> int:
        return len(self.edges)

    def __str__(self) -> str:
        if self.vertex_count <= MAX_TEXT_VERTICES:
            return serialize(self)
        return f"Hypergraph(N={self.vertex_count}, B={self.block_count})"

    def incidence(self) -> list[list[int]]:
        """For each vertex, the indices of the edges containing it."""
        inc: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for j, e in enumerate(self.edges):
            for v in e:
                inc[v].append(j)
        return inc

    def without_edges(self, removed: Iterable[int]) -> "Hypergraph":
        """Copy with the edges at the given indices removed (no relabelling)."""
        drop = set(removed)
        return Hypergraph(
            self.vertex_count, tuple(e for j, e in enumerate(self.edges) if j not in drop)
        )

    def subgraph(self, kept: Iterable[int]) -> "Hypergraph":
        """Copy keeping only the edges at the given indices, in the given order."""
        return Hypergraph(self.vertex_count, tuple(self.edges[j] for j in kept))

    def relabel(self, perm: Sequence[int]) -> "Hypergraph":
        """Apply the vertex map ``v -> perm[v]``."""
        return Hypergraph(len(perm), tuple(tuple(perm[v] for v in e) for e in self.edges))


def make_hypergraph(
    edges: Iterable[Iterable[int]],
    vertex_count: int | None = None,
    validate: bool = True,
) -> Hypergraph:
    """Build a hypergraph from integer edges, checking the structural invariants."""
    es = tuple(tuple(e) for e in edges)
    n = vertex_count
    if n is None:
        n = max((max(e) for e in es if e), default=-1) + 1
    check_edges(es, n, validate=validate)
    return Hypergraph(n, es)


def check_edges(edges: Sequence[Edge], vertex_count: int, validate: bool = True) -> None:
    seen: dict[frozenset, int] = {}
    for j, e in enumerate(edges):
        if len(e) != EDGE_SIZE:
            raise MmpError(f"edge {j} has {len(e)} vertices, expected {EDGE_SIZE}")
        s = frozenset(e)
        if len(s) != EDGE_SIZE:
            raise MmpError(f"edge {j} repeats a vertex")
        for v in e:
            if not 0 <= v < vertex_count:
                raise MmpError(f"edge {j}: vertex {v} outside [0, {vertex_count})")
        if s in seen:
            raise MmpError(f"edge {j} duplicates edge {seen[s]}")
        seen[s] = j
    if validate:
        sets = list(seen)
        for a in range(len(sets)):
            for b in range(a + 1, len(sets)):
                if len(sets[a] & sets[b]) > 2:
                    raise MmpError("two edges share more than two vertices")


def parse(text: str, validate: bool = True) -> Hypergraph:
    """Parse one MMP line.

    Whitespace is ignored. A missing terminal period is tolerated with a
    :class:`MissingTerminatorWarning`. With ``validate`` (default) two edges
    may share at most two vertices.
    """
    body = "".join(text.split())
    if not body:
        raise MmpError("empty MMP text")
    if body.endswith("."):
        body = body[:-1]
    else:
        warnings.warn(f"MMP text lacks terminal period: {body[:20]!r}", MissingTerminatorWarning, stacklevel=2)
    if "." in body:
        raise MmpError("period inside MMP text")
    edges = []
    for group in body.split(","):
        try:
            edges.append(tuple(_LABEL_INDEX[ch] for ch in group))
        except KeyError as exc:
            raise MmpError(f"character {exc.args[0]!r} outside the MMP alphabet") from None
    n = max(max(e) for e in edges if e) + 1 if any(edges) else 0
    check_edges(edges, n, validate=validate)
    return Hypergraph(n, tuple(edges))


def serialize(h: Hypergraph) -> str:
    """Inverse of :func:`parse`; keeps within-edge and edge order."""
    if h.vertex_count > MAX_TEXT_VERTICES:
        raise MmpError(f"{h.vertex_count} vertices exceed the {MAX_TEXT_VERTICES}-label alphabet")
    return ",".join("".join(ALPHABET[v] for v in e) for e in h.edges) + "."


def label(v: int) -> str:
    return ALPHABET[v]


def renormalize(h: Hypergraph) -> Hypergraph:
    """Relabel vertices 0.. in order of first appearance; drop unused ones."""
    mapping: dict[int, int] = {}
    for e in h.edges:
        for v in e:
            if v not in mapping:
                mapping[v] = len(mapping)
    return Hypergraph(len(mapping), tuple(tuple(mapping[v] for v in e) for e in h.edges))


def degrees(h: Hypergraph) -> list[int]:
    deg = [0] * h.vertex_count
    for e in h.edges:
        for v in e:
            deg[v] += 1
    return deg


def is_connected(h: Hypergraph) -> bool:
    """True iff the vertex/edge incidence structure is a single component.

    Vertices not in any edge are ignored; an empty hypergraph counts as
    connected.
    """
    if not h.edges:
        return True
    parent = list(range(h.vertex_count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in h.edges:
        r = find(e[0])
        for v in e[1:]:
            s = find(v)
            if s != r:
                parent[s] = r
    roots = {find(v) for e in h.edges for v in e}
    return len(roots) == 1


def read_mmp_lines(lines: Iterable[str], validate: bool = True) -> Iterator[Hypergraph]:
    """Parse an MMP file: one hypergraph per line, ``#`` comments and blanks skipped."""
    for line in lines:
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        yield parse(s, validate=validate)


def write_mmp_lines(hs: Iterable[Hypergraph]) -> Iterator[str]:
    for h in hs:
        yield serialize(h) + "\n"
