#!/usr/bin/env python3
"""Exhaustive certify+verify sweep over all conjugating words.

For each (m, max_len) pair, enumerate every freely reduced word over
x1..xm up to the length bound, certify it, and run the independent
verifier.  Prints throughput and the leaf-kind histogram; exits nonzero
on the first rejected certificate.

    python scripts/soundness_sweep.py --range 3:6 --range 4:4
"""

import argparse
import sys
import time
from collections import Counter

from lotcert import LotSpec, Word, certify, format_word, verify


def reduced_words(m, max_len):
    letters = [(f"x{i}", s) for i in range(1, m + 1) for s in (1, -1)]
    level = [[]]
    yield []
    for _ in range(max_len):
        nxt = []
        for w in level:
            for name, sign in letters:
                if w and w[-1] == (name, -sign):
                    continue
                nw = w + [(name, sign)]
                nxt.append(nw)
                yield nw
        level = nxt


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--range",
        action="append",
        default=None,
        metavar="M:LEN",
        help="chain size and maximum word length (repeatable; default 3:6, 4:4)",
    )
    args = parser.parse_args(argv)
    ranges = []
    for item in args.range or ["3:6", "4:4"]:
        m, max_len = item.split(":")
        ranges.append((int(m), int(max_len)))

    grand_total = 0
    t0 = time.time()
    for m, max_len in ranges:
        leaves = Counter()
        rounds = Counter()
        count = 0
        t1 = time.time()
        for pairs in reduced_words(m, max_len):
            spec = LotSpec(m, Word(pairs))
            cert = certify(spec)
            report = verify(cert)
            if not report.accepted:
                print(
                    f"REJECTED m={m} U={format_word(spec.u)}: {report.failure}",
                    file=sys.stderr,
                )
                return 1
            leaves[cert.leaf.kind] += 1
            rounds[cert.round_count()] += 1
            count += 1
        dt = time.time() - t1
        grand_total += count
        print(
            f"m={m} len<={max_len}: {count} certificates accepted in {dt:.1f}s "
            f"({1000 * dt / count:.2f} ms each)"
        )
        print(f"  leaves: {dict(sorted(leaves.items()))}")
        print(f"  rounds: {dict(sorted(rounds.items()))}")
    print(f"total: {grand_total} certificates in {time.time() - t0:.1f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
