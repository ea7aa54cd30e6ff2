#!/usr/bin/env python3
"""Sweep exponent vectors through the power-relation pipeline.

Enumerates every exponent vector over {0..kmax} for each conjugating word
up to the length bound, normalizes, certifies, verifies, and reports the
distribution of normalized chain sizes.

    python scripts/corollary_grid.py --m 3 --max-len 4 --kmax 3
"""

import argparse
import itertools
import sys
import time
from collections import Counter

from lotcert import (
    CorollarySpec,
    Word,
    certify_corollary,
    format_word,
    normalize_exponents,
    verify,
)
from soundness_sweep import reduced_words


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--m", type=int, default=3)
    parser.add_argument("--max-len", type=int, default=4)
    parser.add_argument("--kmax", type=int, default=3)
    args = parser.parse_args(argv)

    words = [Word(p) for p in reduced_words(args.m, args.max_len)]
    sizes = Counter()
    count = 0
    t0 = time.time()
    for exponents in itertools.product(range(args.kmax + 1), repeat=args.m - 1):
        for u in words:
            cspec = CorollarySpec(args.m, u, exponents)
            lot, _ = normalize_exponents(cspec)
            cert = certify_corollary(cspec)
            report = verify(cert)
            if not report.accepted:
                print(
                    f"REJECTED m={args.m} U={format_word(u)} k={exponents}: "
                    f"{report.failure}",
                    file=sys.stderr,
                )
                return 1
            sizes[lot.m] += 1
            count += 1
    dt = time.time() - t0
    print(f"{count} accepted certificates in {dt:.1f}s ({1000 * dt / count:.2f} ms each)")
    print(f"normalized chain sizes: {dict(sorted(sizes.items()))}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
