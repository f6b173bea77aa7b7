"""Parity-proof subsets of 60-75 and the census seeded from them.

For each odd T, counts the T-tetrad subsets in which every covered ray
lies in exactly two tetrads, their distinct ray sets and isomorphism
classes, and which of them are KS sets.
"""

import argparse
import time

from ksforge.coloring import is_noncolorable
from ksforge.corpus import load_corpus
from ksforge.iso import canonical_form
from ksforge.mmp import renormalize
from ksforge.parity import covered_vertices, parity_subset_search
from ksforge.pipeline import CensusConfig, seeded_census


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-t", type=int, default=15)
    ap.add_argument("--descend-to", type=int, default=12, help="seeded census target for T=13")
    args = ap.parse_args()
    corpus = load_corpus()
    h = corpus["60-75"].hypergraph
    names = {canonical_form(e.hypergraph): n for n, e in corpus.items()}

    for t in range(1, args.max_t + 1, 2):
        t0 = time.time()
        subs = list(parity_subset_search(h, t))
        rays = {covered_vertices(h, s) for s in subs}
        forms = {canonical_form(renormalize(h.subgraph(s))) for s in subs}
        ks = sum(is_noncolorable(h.subgraph(s)) for s in subs)
        labels = sorted(names.get(f, f"{f.vertex_count}-{len(f.edges)}") for f in forms)
        print(f"T={t:2d}: {len(subs):6d} subsets, {len(rays):6d} ray sets, {ks:6d} KS, classes {labels} "
              f"({time.time() - t0:.1f}s)")

    seeds = [renormalize(h.subgraph(s)) for s in parity_subset_search(h, 13)]
    recs = seeded_census(seeds, CensusConfig(args.descend_to, critical_max_blocks=13))
    for r in recs:
        print(f"seeded census: {r.vertex_count}-{r.block_count} critical={int(r.critical)} {r.mmp}")
    print(f"seeded census below 13 blocks: {sum(r.block_count < 13 for r in recs)} sets")


if __name__ == "__main__":
    main()
