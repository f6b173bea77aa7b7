"""Re-derive every recorded property of the built-in corpus and print a table."""

import argparse
import sys
from pathlib import Path

from ksforge.corpus import load_corpus, verify_corpus


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--corpus", type=Path, default=None)
    args = ap.parse_args()
    checks = verify_corpus(args.corpus)
    for c in checks:
        print(c)
    bad = [c for c in checks if not c.ok]
    print(f"{len(checks) - len(bad)}/{len(checks)} checks pass over {len(load_corpus(args.corpus))} sets")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
