"""Exact 600-cell ray geometry and vector assignment.

All arithmetic is done in Q(phi), phi = (1 + sqrt 5)/2, with rational
coefficients, so orthogonality is an exact zero test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from itertools import combinations, permutations, product
from typing import Mapping, Optional, Sequence

from .mmp import Hypergraph, label


@dataclass(frozen=True)
class QExt:
    """The number ``a + b*phi`` with rational ``a`` and ``b``; phi**2 == phi + 1."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @classmethod
    def coerce(cls, x: "QExt | int | Fraction") -> "QExt":
        return x if isinstance(x, QExt) else cls(Fraction(x))

    def __add__(self, other):
        o = QExt.coerce(other)
        return QExt(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QExt(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-QExt.coerce(other))

    def __rsub__(self, other):
        return QExt.coerce(other) - self

    def __mul__(self, other):
        o = QExt.coerce(other)
        return QExt(self.a * o.a + self.b * o.b, self.a * o.b + o.a * self.b + self.b * o.b)

    __rmul__ = __mul__

    def conjugate(self) -> "QExt":
        # phi -> 1 - phi
        return QExt(self.a + self.b, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a + self.a * self.b - self.b * self.b

    def inverse(self) -> "QExt":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QExt zero has no inverse")
        c = self.conjugate()
        return QExt(c.a / n, c.b / n)

    def __truediv__(self, other):
        return self * QExt.coerce(other).inverse()

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def sign(self) -> int:
        """Sign of the real number a + b*phi, decided exactly."""
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        # a + b*phi > 0  <=>  2a + b > -b*sqrt5
        lhs, rhs = 2 * a + b, -b
        if lhs >= 0 and rhs <= 0:
            return 1
        if lhs <= 0 and rhs >= 0:
            return -1
        if lhs > 0:  # both positive
            return 1 if lhs * lhs > 5 * rhs * rhs else -1
        return 1 if lhs * lhs < 5 * rhs * rhs else -1

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * (1 + math.sqrt(5)) / 2

    def __str__(self) -> str:
        if not self.b:
            return str(self.a)
        bpart = f"{self.b}*phi"
        if not self.a:
            return bpart
        if self.b < 0:
            return f"{self.a}-{-self.b}*phi"
        return f"{self.a}+{bpart}"


PHI = QExt(0, 1)
ZERO = QExt()
ONE = QExt(1)


def dot(u: Sequence[QExt], v: Sequence[QExt]) -> QExt:
    return reduce(lambda acc, t: acc + t[0] * t[1], zip(u, v), ZERO)


@dataclass(frozen=True)
class Ray:
    """A 1-dim subspace, stored by its canonical representative.

    Canonical: scaled so the first nonzero component is a positive integer
    and all coefficients are coprime integers.
    """

    components: tuple[QExt, ...]

    @classmethod
    def from_vector(cls, vec: Sequence["QExt | int | Fraction"]) -> "Ray":
        v = [QExt.coerce(x) for x in vec]
        pivot = next((x for x in v if x), None)
        if pivot is None:
            raise ValueError("zero vector is not a ray")
        inv = pivot.inverse()
        v = [x * inv for x in v]
        den = math.lcm(*(q.denominator for x in v for q in (x.a, x.b)))
        ints = [int(q * den) for x in v for q in (x.a, x.b)]
        g = math.gcd(*ints)
        v = [QExt(Fraction(x.a * den, g), Fraction(x.b * den, g)) for x in v]
        return cls(tuple(v))

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"


@dataclass(frozen=True)
class RaySystem:
    rays: tuple[Ray, ...]
    tetrads: tuple[tuple[int, ...], ...]

    @cached_property
    def orthogonal_masks(self) -> tuple[int, ...]:
        """Bit ``j`` of entry ``i`` is set iff rays i and j are orthogonal."""
        n = len(self.rays)
        masks = [0] * n
        for i, j in combinations(range(n), 2):
            if not dot(self.rays[i].components, self.rays[j].components):
                masks[i] |= 1 << j
                masks[j] |= 1 << i
        return tuple(masks)

    def orthogonality_degrees(self) -> list[int]:
        return [bin(m).count("1") for m in self.orthogonal_masks]

    def tetrad_membership(self) -> list[int]:
        counts = [0] * len(self.rays)
        for t in self.tetrads:
            for i in t:
                counts[i] += 1
        return counts

    def as_hypergraph(self) -> Hypergraph:
        return Hypergraph(len(self.rays), tuple(self.tetrads))


def _is_even(p: Sequence[int]) -> bool:
    inversions = sum(1 for i, j in combinations(range(len(p)), 2) if p[i] > p[j])
    return inversions % 2 == 0


def cell600_vertices() -> list[tuple[QExt, ...]]:
    """The 120 vertices of the 600-cell, scaled to radius 2."""
    verts: set[tuple[QExt, ...]] = set()
    for i in range(4):
        for s in (2, -2):
            v = [ZERO] * 4
            v[i] = QExt(s)
            verts.add(tuple(v))
    for signs in product((1, -1), repeat=4):
        verts.add(tuple(QExt(s) for s in signs))
    base = (PHI, ONE, PHI - 1, ZERO)
    for perm in permutations(range(4)):
        if not _is_even(perm):
            continue
        for signs in product((1, -1), repeat=3):
            vals = [base[0] * signs[0], base[1] * signs[1], base[2] * signs[2], ZERO]
            v = [ZERO] * 4
            for src, dst in enumerate(perm):
                v[dst] = vals[src]
            verts.add(tuple(v))
    return sorted(verts, key=lambda v: [(float(x), x.a, x.b) for x in v])


def generate_600cell() -> RaySystem:
    """60 rays (antipodal vertex pairs) and their 75 orthogonal tetrads."""
    rays: list[Ray] = []
    seen: set[Ray] = set()
    for v in cell600_vertices():
        r = Ray.from_vector(v)
        if r not in seen:
            seen.add(r)
            rays.append(r)
    system = RaySystem(tuple(rays), ())
    masks = system.orthogonal_masks
    tetrads = []
    n = len(rays)
    for a in range(n):
        for b in _bits(masks[a] >> (a + 1) << (a + 1)):
            common = masks[a] & masks[b]
            for c in _bits(common >> (b + 1) << (b + 1)):
                for d in _bits((common & masks[c]) >> (c + 1) << (c + 1)):
                    tetrads.append((a, b, c, d))
    out = RaySystem(tuple(rays), tuple(tetrads))
    out.__dict__["orthogonal_masks"] = masks
    return out


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def find_assignment(h: Hypergraph, pool: RaySystem) -> Optional[dict[int, Ray]]:
    """Injectively map the vertices of ``h`` onto rays of ``pool``.

    Every edge must land on four mutually orthogonal rays. Returns None
    when the pool admits no such map (which says nothing about other
    pools). Vertices are assigned most-constrained first.
    """
    masks = pool.orthogonal_masks
    n_rays = len(pool.rays)
    verts = sorted({v for e in h.edges for v in e})
    nbrs: dict[int, set[int]] = {v: set() for v in verts}
    for e in h.edges:
        for v in e:
            nbrs[v].update(u for u in e if u != v)
    if any(len(nbrs[v]) > max((bin(m).count("1") for m in masks), default=0) for v in verts):
        return None
    assign: dict[int, int] = {}
    all_rays = (1 << n_rays) - 1

    def candidates(v: int, used: int) -> int:
        c = all_rays & ~used
        for u in nbrs[v]:
            if u in assign:
                c &= masks[assign[u]]
        return c

    def pick(used: int) -> tuple[int, int]:
        best = None
        for v in verts:
            if v in assign:
                continue
            c = candidates(v, used)
            key = (bin(c).count("1"), -sum(1 for u in nbrs[v] if u in assign), -len(nbrs[v]), v)
            if best is None or key < best[0]:
                best = (key, v, c)
        return best[1], best[2]

    def search(used: int) -> bool:
        if len(assign) == len(verts):
            return True
        v, cands = pick(used)
        for r in _bits(cands):
            assign[v] = r
            if search(used | (1 << r)):
                return True
            del assign[v]
        return False

    if not search(0):
        return None
    mapping = {v: pool.rays[r] for v, r in assign.items()}
    if not verify_assignment(h, mapping):
        raise AssertionError("vector assignment failed exact re-verification")
    return mapping


def assignment_indices(h: Hypergraph, pool: RaySystem, mapping: Mapping[int, Ray]) -> dict[int, int]:
    index = {r: i for i, r in enumerate(pool.rays)}
    return {v: index[r] for v, r in mapping.items()}


def verify_assignment(h: Hypergraph, mapping: Mapping[int, Ray]) -> bool:
    """Injective, and every edge pairwise orthogonal (exact inner products)."""
    verts = {v for e in h.edges for v in e}
    if not verts <= set(mapping):
        return False
    rays = [mapping[v] for v in verts]
    if len(set(rays)) != len(rays):
        return False
    for e in h.edges:
        for u, w in combinations(e, 2):
            if dot(mapping[u].components, mapping[w].components):
                return False
    return True


def format_assignment(mapping: Mapping[int, Ray]) -> list[str]:
    """Lines ``label : (c1, c2, c3, c4)``."""
    return [f"{label(v)} : {mapping[v]}" for v in sorted(mapping)]
