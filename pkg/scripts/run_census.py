"""Sampled census from 60-75 down to a target block count.

Prints the critical classes found per block count and writes per-level
MMP files plus records.tsv to --out (rerun with the same --out to resume).
"""

import argparse
import logging
import time
from collections import Counter
from math import comb
from pathlib import Path

from ksforge.corpus import load_corpus
from ksforge.iso import canonical_form
from ksforge.mmp import parse
from ksforge.pipeline import Census, CensusConfig
from ksforge.strip import StripPlan


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--target", type=int, default=15)
    ap.add_argument("-k", type=int, default=30, help="blocks removed by the first sampled strip")
    ap.add_argument("--first-samples", type=int, default=2000)
    ap.add_argument("--sample-size", type=int, default=100)
    ap.add_argument("--schedule", default="", help="e.g. '25:400,20:1000' (max_blocks:size)")
    ap.add_argument("--critical-max-blocks", type=int, default=19)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--weighting", choices=("children", "lineage"), default="lineage")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", type=Path, default=None)
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")

    corpus = load_corpus()
    names = {canonical_form(e.hypergraph): n for n, e in corpus.items()}
    schedule = tuple(tuple(int(x) for x in part.split(":")) for part in args.schedule.split(",") if part)
    cfg = CensusConfig(args.target, args.sample_size, args.seed, schedule, args.critical_max_blocks, jobs=args.jobs,
                       weighting=args.weighting)
    start = corpus["60-75"].hypergraph
    inc = max(1, comb(start.block_count, args.k) // args.first_samples)
    plan = StripPlan(args.k, increment=inc, drop_disconnected=True)

    t = time.time()
    recs = Census(cfg, args.out).run(start, plan)
    print(f"census finished in {time.time() - t:.0f}s")
    tally = Counter()
    for r in recs:
        if r.critical:
            name = names.get(canonical_form(parse(r.mmp)), "")
            tally[(r.block_count, f"{r.vertex_count}-{r.block_count}", name)] += 1
    for (b, shape, name), n in sorted(tally.items()):
        print(f"{b:3d} blocks  {shape}x{n}  {name}")


if __name__ == "__main__":
    main()
