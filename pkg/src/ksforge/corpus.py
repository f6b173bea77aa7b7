"""Golden data: the named KS sets with their published properties.

``data/corpus.tsv`` holds one set per line: name, vertex and block count,
critical flag, maximal loop order (``-`` if unknown), parity flag, MMP
string.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

from .coloring import is_noncolorable
from .iso import canonical_form
from .loops import BudgetExceeded, max_loop_order
from .mmp import Hypergraph, MmpError, degrees, is_connected, parse
from .parity import parity_proof
from .pipeline import is_critical


class CorpusError(RuntimeError):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    vertices: int
    blocks: int
    critical: bool
    max_loop: Optional[int]
    parity: bool
    text: str

    @property
    def hypergraph(self) -> Hypergraph:
        return parse(self.text)


def default_path() -> Path:
    return Path(str(resources.files("ksforge") / "data" / "corpus.tsv"))


def load_corpus(path: Optional[Path] = None) -> dict[str, CorpusEntry]:
    p = Path(path) if path is not None else default_path()
    if not p.exists():
        raise CorpusError(f"corpus file {p} not found")
    out: dict[str, CorpusEntry] = {}
    with open(p, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip() or line.startswith("#"):
                continue
            f = line.rstrip("\n").split("\t")
            if len(f) != 7:
                raise CorpusError(f"{p}:{lineno}: expected 7 tab-separated fields, got {len(f)}")
            name = f[0]
            if name in out:
                name = f"{name}#{lineno}"
            try:
                out[name] = CorpusEntry(
                    name, int(f[1]), int(f[2]), f[3] == "1",
                    None if f[4] == "-" else int(f[4]), f[5] == "1", f[6],
                )
            except ValueError as exc:
                raise CorpusError(f"{p}:{lineno}: {exc}") from None
    return out


@dataclass(frozen=True)
class Check:
    name: str
    prop: str
    ok: bool
    detail: str = ""

    def __str__(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name:8s} {self.prop:14s} {self.detail}"


def verify_corpus(path: Optional[Path] = None, loop_budget: Optional[int] = 2_000_000,
                  skip_loops_above: int = 30) -> list[Check]:
    """Re-derive every recorded property of every corpus set."""
    entries = load_corpus(path)
    checks: list[Check] = []
    forms: dict = {}
    for name, ent in entries.items():
        try:
            h = ent.hypergraph
        except MmpError as exc:
            checks.append(Check(name, "parse", False, str(exc)))
            continue
        checks.append(Check(name, "parse", True))
        shape = (h.vertex_count, h.block_count)
        checks.append(Check(name, "shape", shape == (ent.vertices, ent.blocks), f"{shape[0]}-{shape[1]}"))
        checks.append(Check(name, "connected", is_connected(h)))
        nc = is_noncolorable(h)
        checks.append(Check(name, "noncolorable", nc))
        crit = is_critical(h) if nc else False
        checks.append(Check(name, "critical", crit == ent.critical, f"critical={crit}"))
        pv = parity_proof(h)
        checks.append(Check(name, "parity", pv.holds == ent.parity, f"holds={pv.holds}"))
        if ent.max_loop is not None and h.block_count <= skip_loops_above:
            try:
                m = max_loop_order(h, loop_budget)
                checks.append(Check(name, "max_loop", m == ent.max_loop, f"found {m}, expected {ent.max_loop}"))
            except BudgetExceeded as exc:
                checks.append(Check(name, "max_loop", False, str(exc)))
        f = canonical_form(h)
        dup = forms.get(f)
        checks.append(Check(name, "distinct", dup is None, f"isomorphic to {dup}" if dup else ""))
        forms.setdefault(f, name)
    return checks


def degree_summary(h: Hypergraph) -> dict[int, int]:
    out: dict[int, int] = {}
    for d in degrees(h):
        out[d] = out.get(d, 0) + 1
    return out
