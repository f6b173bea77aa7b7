"""The stripping census: strip, dedupe, drop colorables, drop isomorphs.

A run starts from one hypergraph (normally 60-75). The first level strips
``plan.k`` blocks at once, sampled by the plan's increment; every later
level removes one more block from each survivor. Each level goes through

1. exact dedupe of the stripped children,
2. the non-colorability filter,
3. isomorphism dedupe,

and is then thinned to at most ``sample_size`` survivors (or the size the
schedule gives for that block count) by seeded weighted sampling of the
isomorphism classes; see :meth:`Census.reduce`. Survivors at or below
``critical_max_blocks`` are checked for criticality and recorded. Every
finished level is written to the output directory, so an interrupted run
resumes from the last level on disk.
"""

from __future__ import annotations

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .coloring import find_coloring, is_noncolorable
from .iso import CanonicalForm, canonical_form
from .mmp import Hypergraph, read_mmp_lines, renormalize, serialize
from .parity import parity_proof
from .loops import BudgetExceeded, max_loop_order
from .strip import StripPlan, enumerate_strips

log = logging.getLogger(__name__)


def is_critical(h: Hypergraph) -> bool:
    """Non-colorable, and colorable again after removing any single edge."""
    if not is_noncolorable(h):
        return False
    return all(find_coloring(h.without_edges([j])) is not None for j in range(h.block_count))


@dataclass(frozen=True)
class CensusConfig:
    target_blocks: int
    sample_size: int = 200
    seed: int = 0
    # (max_blocks, size) pairs overriding sample_size at and below max_blocks
    sample_schedule: tuple[tuple[int, int], ...] = ()
    critical_max_blocks: int = 25
    loop_budget: int = 200_000
    jobs: int = 1
    # class weight when thinning: "children" counts distinct labelled children
    # (uniform strip sampling); "lineage" gives every parent total weight 1
    weighting: str = "lineage"

    def __post_init__(self) -> None:
        if self.weighting not in ("children", "lineage"):
            raise ValueError(f"unknown weighting {self.weighting!r}")

    def sample_size_at(self, blocks: int) -> int:
        size = self.sample_size
        for max_blocks, n in sorted(self.sample_schedule, reverse=True):
            if blocks <= max_blocks:
                size = n
        return size


@dataclass(frozen=True)
class CensusRecord:
    mmp: str
    vertex_count: int
    block_count: int
    max_loop_order: Optional[int]
    parity: bool
    critical: bool
    level: int
    seed: int

    FIELDS = ("mmp", "vertex_count", "block_count", "max_loop_order", "parity", "critical", "level", "seed")

    def to_tsv(self) -> str:
        loop = "-" if self.max_loop_order is None else str(self.max_loop_order)
        return "\t".join(
            [self.mmp, str(self.vertex_count), str(self.block_count), loop,
             str(int(self.parity)), str(int(self.critical)), str(self.level), str(self.seed)]
        )

    @classmethod
    def from_tsv(cls, line: str) -> "CensusRecord":
        f = line.rstrip("\n").split("\t")
        return cls(f[0], int(f[1]), int(f[2]), None if f[3] == "-" else int(f[3]),
                   f[4] == "1", f[5] == "1", int(f[6]), int(f[7]))


def make_record(h: Hypergraph, level: int, seed: int, critical: bool, loop_budget: Optional[int] = None) -> CensusRecord:
    """Record in canonical labelling, so the MMP line is its own canonical fixpoint."""
    canon = canonical_form(renormalize(h)).hypergraph()
    try:
        loop: Optional[int] = max_loop_order(canon, loop_budget)
    except BudgetExceeded:
        loop = None
    return CensusRecord(
        serialize(canon), canon.vertex_count, canon.block_count, loop,
        parity_proof(canon).holds, critical, level, seed,
    )


def _children(args: tuple[Hypergraph, StripPlan]) -> list[Hypergraph]:
    """Strip one parent and keep the non-colorable children (map stage)."""
    h, plan = args
    return [c for c in enumerate_strips(h, plan) if is_noncolorable(c)]


def _canon_many(hs: Sequence[Hypergraph]) -> list[CanonicalForm]:
    return [canonical_form(h) for h in hs]


def shard_plan(plan: StripPlan, blocks: int, shards: int) -> list[StripPlan]:
    """Split a plan's rank comb into contiguous sub-plans; union = original."""
    ranks = plan.ranks(blocks)
    n = len(ranks)
    if n == 0:
        return []
    shards = max(1, min(shards, n))
    out = []
    for i in range(shards):
        lo, hi = i * n // shards, (i + 1) * n // shards
        if lo < hi:
            out.append(StripPlan(plan.k, ranks[lo], ranks[hi - 1], plan.increment,
                                 plan.drop_disconnected, plan.renormalize_output))
    return out


class Census:
    """Level-by-level descent; ``out_dir`` (optional) holds per-level MMP files."""

    def __init__(self, config: CensusConfig, out_dir: Optional[Path] = None) -> None:
        self.config = config
        self.out_dir = Path(out_dir) if out_dir is not None else None
        self.records: list[CensusRecord] = []
        self.level_sizes: dict[int, int] = {}

    # persistence ---------------------------------------------------------

    def _level_path(self, blocks: int) -> Path:
        assert self.out_dir is not None
        return self.out_dir / f"level_{blocks:03d}.mmp"

    def _save_level(self, blocks: int, survivors: Sequence[Hypergraph], records: Sequence[CensusRecord]) -> None:
        if self.out_dir is None:
            return
        self.out_dir.mkdir(parents=True, exist_ok=True)
        tmp = self._level_path(blocks).with_suffix(".tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(f"# level {blocks} seed {self.config.seed}\n")
            fh.writelines(serialize(h) + "\n" for h in survivors)
        with open(self.out_dir / "records.tsv", "a", encoding="utf-8") as fh:
            fh.writelines(r.to_tsv() + "\n" for r in records)
        # the level file appears only after its records are written
        tmp.replace(self._level_path(blocks))

    def load_resume(self) -> Optional[tuple[int, list[Hypergraph]]]:
        """Survivors of the last finished level on disk, or None."""
        if self.out_dir is None or not self.out_dir.exists():
            return None
        levels = sorted(int(p.stem.split("_")[1]) for p in self.out_dir.glob("level_*.mmp"))
        if not levels:
            return None
        last = levels[0]
        with open(self._level_path(last), encoding="utf-8") as fh:
            survivors = list(read_mmp_lines(fh))
        rec_path = self.out_dir / "records.tsv"
        recs = []
        if rec_path.exists():
            with open(rec_path, encoding="utf-8") as fh:
                recs = [CensusRecord.from_tsv(l) for l in fh if l.strip()]
        # records of a level that never finished are dropped and redone
        self.records = [r for r in recs if r.level >= last]
        if len(self.records) != len(recs):
            with open(rec_path, "w", encoding="utf-8") as fh:
                fh.writelines(r.to_tsv() + "\n" for r in self.records)
        for lv in levels:
            with open(self._level_path(lv), encoding="utf-8") as fh:
                self.level_sizes[lv] = sum(1 for _ in read_mmp_lines(fh))
        return last, survivors

    # stages --------------------------------------------------------------

    def _map(self, tasks: list) -> list[list[Hypergraph]]:
        if self.config.jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(self.config.jobs) as ex:
                return list(ex.map(_children, tasks, chunksize=max(1, len(tasks) // (4 * self.config.jobs))))
        return [_children(t) for t in tasks]

    def _forms(self, hs: list[Hypergraph]) -> list[CanonicalForm]:
        if self.config.jobs > 1 and len(hs) > 50:
            n = self.config.jobs * 4
            chunks = [hs[i::n] for i in range(n)]
            with ProcessPoolExecutor(self.config.jobs) as ex:
                parts = list(ex.map(_canon_many, chunks))
            out: list = [None] * len(hs)
            for i, part in enumerate(parts):
                out[i::n] = part
            return out
        return [canonical_form(h) for h in hs]

    def reduce(self, batches: Iterable[list[Hypergraph]], blocks: int, per_parent: bool = False) -> list[Hypergraph]:
        """Exact dedupe, iso dedupe, seeded thinning. Independent of shard order.

        Thinning keeps each isomorphism class with a weight. By default
        the weight is the number of distinct labelled children in the
        class, which is what uniform sampling of strips followed by
        iso-dedupe gives. With ``weighting="lineage"`` and one batch per
        parent (``per_parent``), each parent splits weight 1 evenly over
        its children instead, as a random one-block descent would.
        """
        lineage = per_parent and self.config.weighting == "lineage"
        exact: dict = {}
        for batch in batches:
            share = Fraction(1, len(batch)) if lineage and batch else Fraction(1)
            for h in batch:
                key = renormalize(h).edge_key()
                if key in exact:
                    if lineage:
                        exact[key][1] += share
                else:
                    exact[key] = [h, share]
        hs = [v[0] for v in exact.values()]
        weight: dict[CanonicalForm, Fraction] = {}
        for f, (_, w) in zip(self._forms(hs), exact.values()):
            weight[f] = weight.get(f, 0) + w
        classes = sorted(weight)
        log.info("level %d: %d children, %d classes", blocks, len(hs), len(classes))
        cap = self.config.sample_size_at(blocks)
        if len(classes) > cap:
            rng = random.Random(f"{self.config.seed}:{blocks}")
            # weighted sampling without replacement (exponential keys)
            keys = [rng.expovariate(1.0) / float(weight[f]) for f in classes]
            keep = sorted(sorted(range(len(classes)), key=keys.__getitem__)[:cap])
            classes = [classes[i] for i in keep]
        return [f.hypergraph() for f in classes]

    def _record_level(self, blocks: int, survivors: Sequence[Hypergraph]) -> list[CensusRecord]:
        if blocks > self.config.critical_max_blocks:
            return []
        recs = []
        for h in survivors:
            crit = is_critical(h)
            if crit or blocks == self.config.target_blocks:
                recs.append(make_record(h, blocks, self.config.seed, crit, self.config.loop_budget))
        return recs

    def _finish_level(self, blocks: int, survivors: list[Hypergraph]) -> None:
        recs = self._record_level(blocks, survivors)
        self.records.extend(recs)
        self.level_sizes[blocks] = len(survivors)
        self._save_level(blocks, survivors, recs)
        log.info("level %d: %d survivors, %d critical", blocks, len(survivors), sum(r.critical for r in recs))

    def descend(self, survivors: list[Hypergraph], blocks: int) -> list[CensusRecord]:
        """Remove one block per level from ``survivors`` down to the target."""
        one = StripPlan(1, drop_disconnected=True)
        while blocks > self.config.target_blocks and survivors:
            blocks -= 1
            survivors = self.reduce(self._map([(h, one) for h in survivors]), blocks, per_parent=True)
            self._finish_level(blocks, survivors)
        self.records.sort(key=lambda r: (r.level, r.mmp))
        return self.records

    def run(self, start: Hypergraph, plan: StripPlan) -> list[CensusRecord]:
        if self.config.target_blocks >= start.block_count:
            raise ValueError("target_blocks must be below the starting block count")
        plan.validate(start.block_count)
        resumed = self.load_resume()
        if resumed is not None:
            blocks, survivors = resumed
            log.info("resuming at level %d with %d survivors", blocks, len(survivors))
            return self.descend(survivors, blocks)
        first = plan
        if plan.end is None and plan.start == 1 and plan.increment > 1:
            # the seed picks the phase of the sampling comb
            first = StripPlan(plan.k, 1 + self.config.seed % plan.increment, None, plan.increment,
                              plan.drop_disconnected, plan.renormalize_output)
        blocks = start.block_count - first.k
        shards = shard_plan(first, start.block_count, max(1, self.config.jobs) * 4)
        survivors = self.reduce(self._map([(start, s) for s in shards]), blocks)
        self._finish_level(blocks, survivors)
        return self.descend(survivors, blocks)


def census(start: Hypergraph, target_blocks: int, plan: StripPlan, config: Optional[CensusConfig] = None,
           out_dir: Optional[Path] = None) -> list[CensusRecord]:
    """Run the strip/dedupe/filter/iso-dedupe procedure from ``start`` down to ``target_blocks``."""
    cfg = replace(config, target_blocks=target_blocks) if config else CensusConfig(target_blocks)
    return Census(cfg, out_dir).run(start, plan)


def seeded_census(seeds: Iterable[Hypergraph], config: CensusConfig) -> list[CensusRecord]:
    """Census over supplied seeds (e.g. parity-search solutions) of equal block count."""
    c = Census(config)
    seeds = [h for h in seeds if is_noncolorable(h)]
    if not seeds:
        return []
    blocks = seeds[0].block_count
    if any(h.block_count != blocks for h in seeds):
        raise ValueError("seeds must share one block count")
    hs = c.reduce([seeds], blocks)
    c._finish_level(blocks, hs)
    return c.descend(hs, blocks)
