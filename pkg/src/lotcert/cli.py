"""Command-line interface.

Exit codes: 0 success / certificate accepted, 1 usage or parse errors,
2 unsupported input (negative exponents), 3 verification failure.
"""

from __future__ import annotations

import argparse
import random as _random
import sys

from .certificates import deserialize, serialize, verify
from .errors import LotcertError, NegativeExponent, SchemaError
from .pipeline import CorollarySpec, certify, certify_corollary, normalize_exponents
from .presentations import LotSpec, chain_presentation
from .words import Word, decompose, format_word, parse_word


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 by default; 2 is reserved for unsupported input
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lotcert", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="decomposability of a conjugating word")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--word", required=True)

    p = sub.add_parser("certify", help="produce a reduction certificate")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--out", default=None)

    p = sub.add_parser("verify", help="replay and check a certificate file")
    p.add_argument("--cert", required=True)
    p.add_argument("--strict", action="store_true",
                   help="treat invariant-factor drift as a failure")

    p = sub.add_parser("corollary", help="certify a power-exponent chain")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--exponents", required=True, help="comma-separated integers")
    p.add_argument("--out", default=None)

    p = sub.add_parser("snf", help="print the invariant-factor trace of a certificate")
    p.add_argument("--cert", required=True)

    p = sub.add_parser("random", help="fuzz loop: certify then verify random words")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)

    return parser


def _parse_spec(m: int, text: str) -> LotSpec:
    return LotSpec(m, parse_word(text))


def _cmd_analyze(args) -> int:
    spec = _parse_spec(args.m, args.word)
    split = decompose(spec.u, spec.m)
    if split is None:
        print("decomposable: no; (C1) applies")
    else:
        print(
            f"decomposable: yes; split: u2={format_word(split.u2)}"
            f" u1={format_word(split.u1)} k={split.split_index};"
            " (C1) does not apply"
        )
    print(chain_presentation(spec).text())
    return 0


def _cmd_certify(args) -> int:
    spec = _parse_spec(args.m, args.word)
    cert = certify(spec)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(serialize(cert))
    print(f"rounds: {cert.round_count()}; leaf: {cert.leaf.kind}")
    return 0


def _cmd_verify(args) -> int:
    with open(args.cert, "rb") as fh:
        data = fh.read()
    try:
        cert = deserialize(data)
    except SchemaError as e:
        print(f"accepted: no\nfailure: {e}")
        return 3
    report = verify(cert, strict=args.strict)
    print(report.summary())
    return 0 if report.accepted else 3


def _cmd_corollary(args) -> int:
    try:
        exponents = tuple(int(tok) for tok in args.exponents.split(","))
    except ValueError as e:
        raise _UsageError(f"bad exponent list: {e}") from e
    cspec = CorollarySpec(args.m, parse_word(args.word), exponents)
    try:
        lot, _ = normalize_exponents(cspec)
        cert = certify_corollary(cspec)
    except NegativeExponent as e:
        print(f"unsupported: {e}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(serialize(cert))
    print(
        f"rounds: {cert.round_count()}; leaf: {cert.leaf.kind};"
        f" normalized-m: {lot.m}"
    )
    return 0


def _cmd_snf(args) -> int:
    with open(args.cert, "rb") as fh:
        data = fh.read()
    try:
        cert = deserialize(data)
    except SchemaError as e:
        print(f"accepted: no\nfailure: {e}")
        return 3
    report = verify(cert)
    for entry in report.snf_trace:
        factors = " ".join(str(d) for d in entry["factors"]) or "-"
        print(f"{entry['label']}: factors [{factors}] free-rank {entry['free_rank']}")
    if not report.accepted:
        print(f"accepted: no ({report.failure})")
        return 3
    return 0


def _random_reduced_word(rng: _random.Random, m: int, max_len: int) -> Word:
    length = rng.randint(0, max_len)
    letters: list[tuple[str, int]] = []
    while len(letters) < length:
        name = f"x{rng.randint(1, m)}"
        sign = rng.choice((1, -1))
        if letters and letters[-1] == (name, -sign):
            continue
        letters.append((name, sign))
    return Word(letters)


def _cmd_random(args) -> int:
    rng = _random.Random(args.seed)
    for n in range(args.count):
        word = _random_reduced_word(rng, args.m, args.max_len)
        cert = certify(LotSpec(args.m, word))
        report = verify(deserialize(serialize(cert)))
        if not report.accepted:
            print(
                f"rejected: m={args.m} word={format_word(word)}"
                f" failure={report.failure}"
            )
            return 3
    print(f"ok: {args.count} certificates accepted (m={args.m}, seed={args.seed})")
    return 0


_COMMANDS = {
    "analyze": _cmd_analyze,
    "certify": _cmd_certify,
    "verify": _cmd_verify,
    "corollary": _cmd_corollary,
    "snf": _cmd_snf,
    "random": _cmd_random,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (LotcertError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
