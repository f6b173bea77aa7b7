"""``ksforge`` command line.

Every verb reads MMP lines (file argument or ``-`` for stdin) and writes
one result per input line. Exit status: 0 all good, 1 a property check
failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from math import comb
from pathlib import Path
from typing import Iterator, Optional, TextIO

from . import coloring, corpus, geometry, iso, loops, mmp, parity, pipeline, strip

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _open_input(name: str) -> TextIO:
    return sys.stdin if name == "-" else open(name, encoding="utf-8")


def _read(name: str) -> Iterator[mmp.Hypergraph]:
    fh = _open_input(name)
    try:
        yield from mmp.read_mmp_lines(fh)
    finally:
        if fh is not sys.stdin:
            fh.close()


def _emit(line: str) -> None:
    sys.stdout.write(line + "\n")


def cmd_parse(args) -> int:
    for h in _read(args.input):
        d = mmp.degrees(h)
        _emit(f"{h.vertex_count}-{h.block_count}\tconnected={int(mmp.is_connected(h))}\t"
              f"degrees={min(d)}..{max(d)}\t{mmp.serialize(mmp.renormalize(h))}")
    return EXIT_OK


def cmd_strip(args) -> int:
    for h in _read(args.input):
        if args.count:
            _emit(str(strip.count_strips(h, args.k)))
            continue
        plan = strip.StripPlan(args.k, args.start, args.end, args.increment,
                               args.drop_disconnected, not args.no_renormalize)
        for sub in strip.enumerate_strips(h, plan):
            _emit(mmp.serialize(sub))
    return EXIT_OK


def cmd_color(args) -> int:
    for h in _read(args.input):
        c = coloring.find_coloring(h)
        _emit("K" if c is None else "".join(map(str, c)))
    return EXIT_OK


def cmd_canon(args) -> int:
    for h in _read(args.input):
        _emit(mmp.serialize(iso.canonical_hypergraph(h)))
    return EXIT_OK


def cmd_isodedupe(args) -> int:
    for h in iso.dedupe_iso(_read(args.input)):
        _emit(mmp.serialize(h))
    return EXIT_OK


def cmd_loops(args) -> int:
    status = EXIT_OK
    for h in _read(args.input):
        res = loops.search_loops(h, args.budget)
        line = f"order {res.order}" + ("" if res.complete else " (budget exceeded)")
        if args.witness and res.witness:
            line += "\t" + ",".join("".join(mmp.label(v) for v in h.edges[j]) for j in res.witness.edges)
        if not res.complete:
            status = EXIT_FAIL
        _emit(line)
    return status


def cmd_parity(args) -> int:
    status = EXIT_OK
    for h in _read(args.input):
        v = parity.parity_proof(h)
        odd = "".join(mmp.label(x) for x in v.offending_vertices)
        _emit(f"{'holds' if v.holds else 'fails'}\tB_odd={int(v.edge_count_odd)}\todd_degree={odd or '-'}")
        if not v.holds:
            status = EXIT_FAIL
    return status


def cmd_paritysearch(args) -> int:
    for h in _read(args.input):
        for sub in parity.parity_subset_search(h, args.tetrads):
            _emit(mmp.serialize(mmp.renormalize(h.subgraph(sub))))
    return EXIT_OK


def cmd_realize(args) -> int:
    pool = geometry.generate_600cell()
    status = EXIT_OK
    for h in _read(args.input):
        m = geometry.find_assignment(h, pool)
        if m is None:
            _emit("no assignment in the 600-cell pool")
            status = EXIT_FAIL
            continue
        for line in geometry.format_assignment(m):
            _emit(line)
        _emit("")
    return status


def cmd_critical(args) -> int:
    status = EXIT_OK
    for h in _read(args.input):
        crit = pipeline.is_critical(h)
        _emit("critical" if crit else "not-critical")
        if not crit:
            status = EXIT_FAIL
    return status


def _schedule(text: str) -> tuple[tuple[int, int], ...]:
    try:
        return tuple((int(a), int(b)) for a, b in (part.split(":") for part in text.split(",") if part))
    except ValueError:
        raise ValueError(f"bad --schedule {text!r}; expected e.g. 26:300,22:1000") from None


def cmd_census(args) -> int:
    hs = list(_read(args.input))
    if len(hs) != 1:
        print("census takes exactly one starting hypergraph", file=sys.stderr)
        return EXIT_USAGE
    start = hs[0]
    cfg = pipeline.CensusConfig(args.target, args.sample_size, args.seed, _schedule(args.schedule),
                                args.critical_max_blocks, jobs=args.jobs, weighting=args.weighting)
    if args.parity_seed is not None:
        seeds = [mmp.renormalize(h) for h in parity.parity_subgraphs(start, args.parity_seed)]
        recs = pipeline.seeded_census(seeds, cfg)
    else:
        k = args.k if args.k is not None else start.block_count - args.target - 1
        k = min(k, start.block_count - args.target)
        inc = args.increment or max(1, comb(start.block_count, k) // args.first_samples)
        plan = strip.StripPlan(k, increment=inc, drop_disconnected=True)
        recs = pipeline.Census(cfg, args.resume).run(start, plan)
    for r in recs:
        _emit(r.to_tsv())
    return EXIT_OK


def cmd_verify_corpus(args) -> int:
    checks = corpus.verify_corpus(args.corpus)
    for ch in checks:
        _emit(str(ch))
    return EXIT_OK if all(ch.ok for ch in checks) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ksforge", description="Kochen-Specker MMP hypergraph toolkit")
    p.add_argument("-v", "--verbose", action="store_true")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        if name != "verify-corpus":
            sp.add_argument("input", nargs="?", default="-", help="MMP file, '-' for stdin")
        return sp

    verb("parse", cmd_parse, "validate and summarize")
    sp = verb("strip", cmd_strip, "remove k blocks in all (or sampled) ways")
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--start", type=int, default=1)
    sp.add_argument("--end", type=int)
    sp.add_argument("--increment", type=int, default=1)
    sp.add_argument("--drop-disconnected", action="store_true")
    sp.add_argument("--no-renormalize", action="store_true")
    sp.add_argument("--count", action="store_true", help="only print how many outputs there would be")
    verb("color", cmd_color, "print K (non-colorable) or a 0/1 witness")
    verb("canon", cmd_canon, "canonical relabelling")
    verb("isodedupe", cmd_isodedupe, "drop isomorphic repeats")
    sp = verb("loops", cmd_loops, "maximal loop order")
    sp.add_argument("--witness", action="store_true")
    sp.add_argument("--budget", type=int, default=None)
    verb("parity", cmd_parity, "parity-proof verdict")
    sp = verb("paritysearch", cmd_paritysearch, "subsets of T tetrads with every ray twice")
    sp.add_argument("--tetrads", "-T", type=int, required=True)
    verb("realize", cmd_realize, "assign 600-cell rays")
    verb("critical", cmd_critical, "criticality check")
    sp = verb("census", cmd_census, "strip/filter/dedupe descent to a target block count")
    sp.add_argument("--target", type=int, required=True)
    sp.add_argument("-k", type=int, default=None, help="blocks removed by the first sampled strip")
    sp.add_argument("--increment", type=int, default=None)
    sp.add_argument("--first-samples", type=int, default=2000)
    sp.add_argument("--sample-size", type=int, default=200)
    sp.add_argument("--critical-max-blocks", type=int, default=25)
    sp.add_argument("--schedule", default="", help="larger samples at low block counts, e.g. 26:300,22:1000")
    sp.add_argument("--weighting", choices=("lineage", "children"), default="lineage",
                    help="class weight when thinning a level")
    sp.add_argument("--resume", type=Path, default=None, help="run directory (created, or resumed)")
    sp.add_argument("--parity-seed", type=int, default=None, metavar="T",
                    help="seed the census with the T-tetrad parity subsets of the input instead of a strip")
    sp = verb("verify-corpus", cmd_verify_corpus, "re-check the built-in golden corpus")
    sp.add_argument("--corpus", type=Path, default=None)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.fn(args)
    except (mmp.MmpError, strip.PlanError, ValueError, OSError, corpus.CorpusError) as exc:
        print(f"ksforge: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
