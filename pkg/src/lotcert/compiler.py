"""Compile composite rewriting steps into verified elementary move sequences.

The central device is the consequence witness: an explicit product of
conjugated relators.  Composites multiply a target relator by such a
product one factor at a time, restoring every helper relator, so the net
effect touches exactly one relator and each emitted move is locally
checkable by the kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import ChainMismatch, CompileError, IndexOutOfRange, SelfReference
from .moves import Conjugate, Invert, Move, MultiplyRight
from .presentations import Presentation, chain_relator
from .words import (
    EMPTY,
    Word,
    _base_of_id,
    concat,
    generator_name,
    intern_generator,
    invert,
    conjugate,
)


class WitnessFactor(NamedTuple):
    conj: Word
    rel: int
    sign: int


@dataclass(frozen=True)
class Witness:
    """Product of conjugated relators certifying a consequence word."""

    factors: tuple[WitnessFactor, ...]

    def __len__(self) -> int:
        return len(self.factors)

    def as_json(self) -> list[dict]:
        from .words import format_word

        return [
            {"conj": format_word(f.conj), "rel": f.rel, "sign": f.sign}
            for f in self.factors
        ]


def evaluate_witness(wit: Witness, p: Presentation) -> Word:
    """The freely reduced product the witness denotes."""
    acc = EMPTY
    n = len(p.relators)
    for conj, rel, sign in wit.factors:
        if not 0 <= rel < n:
            raise IndexOutOfRange(f"witness factor cites relator {rel}")
        t = p.relators[rel]
        if sign < 0:
            t = invert(t)
        acc = concat(acc, conjugate(t, conj))
    return acc


def invert_witness(wit: Witness) -> Witness:
    return Witness(
        tuple(
            WitnessFactor(f.conj, f.rel, -f.sign) for f in reversed(wit.factors)
        )
    )


def conjugate_witness(wit: Witness, c: Word) -> Witness:
    """Witness for c * (consequence) * c^-1."""
    return Witness(
        tuple(WitnessFactor(concat(c, f.conj), f.rel, f.sign) for f in wit.factors)
    )


def conjugation_derivation(
    p: Presentation, chain: list[int], c: Word, w: Word, m: int
) -> Witness:
    """Witness that c * w * c^-1 equals the index-shifted w, letter by letter.

    ``chain[i-1]`` must point at the relator c x_i c^-1 x_{i+1}^-1 for each
    i in 1..m-1, and w must be a word in x1..x_{m-1}.  The witness evaluates
    to free_reduce(c * w * c^-1 * shift_up(w)^-1): each letter of w is
    rewritten through its chain relator while the already-shifted prefix
    accumulates as the conjugator.
    """
    if len(chain) != m - 1:
        raise ChainMismatch(f"expected {m - 1} chain relators, got {len(chain)}")
    nrel = len(p.relators)
    for i in range(1, m):
        idx = chain[i - 1]
        if not 0 <= idx < nrel:
            raise ChainMismatch(f"chain index {idx} out of range")
        if p.relators[idx] != chain_relator(c, i):
            raise ChainMismatch(
                f"relator {idx} is not the conjugation relator for x{i}"
            )
    factors: list[WitnessFactor] = []
    prefix = EMPTY  # shifted image of the processed prefix of w
    for x in w.ls:
        b = _base_of_id(x)
        if b is None or b >= m:
            raise IndexOutOfRange(
                f"derivation word letter {generator_name(x)} not in x1..x{m - 1}"
            )
        up = intern_generator(f"x{b + 1}")
        if x > 0:
            factors.append(WitnessFactor(prefix, chain[b - 1], 1))
            prefix = concat(prefix, Word._of((up,)))
        else:
            shifted = Word._of((-up,))
            factors.append(WitnessFactor(concat(prefix, shifted), chain[b - 1], -1))
            prefix = concat(prefix, shifted)
    return Witness(tuple(factors))


def multiply_by_conjugate(i: int, j: int, conj: Word, sign: int) -> list[Move]:
    """Moves realizing R_i <- R_i * (conj * R_j^sign * conj^-1).

    Relator j is transformed, consumed through one right multiplication,
    then restored exactly, so the net effect touches relator i only.
    """
    if i == j:
        raise SelfReference("multiply_by_conjugate: helper equals target")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    moves: list[Move] = []
    if conj:
        moves.append(Conjugate(j, conj))
    if sign < 0:
        moves.append(Invert(j))
    moves.append(MultiplyRight(i, j))
    if sign < 0:
        moves.append(Invert(j))
    if conj:
        moves.append(Conjugate(j, invert(conj)))
    return moves


def multiply_by_witness(i: int, wit: Witness) -> list[Move]:
    """Moves realizing R_i <- R_i * evaluate_witness(wit), factor by factor."""
    moves: list[Move] = []
    for conj, rel, sign in wit.factors:
        if rel == i:
            raise SelfReference(
                f"witness factor cites the target relator {i} itself"
            )
        moves.extend(multiply_by_conjugate(i, rel, conj, sign))
    return moves


def eliminate_occurrences(
    p: Presentation, i: int, g: str, z_index: int
) -> list[Move]:
    """Moves cancelling every occurrence of g in relator i against the
    single-letter relator g at ``z_index``, left to right."""
    if i == z_index:
        raise CompileError("eliminate_occurrences: target is the helper relator")
    if not 0 <= i < len(p.relators) or not 0 <= z_index < len(p.relators):
        raise CompileError("eliminate_occurrences: relator index out of range")
    gid = intern_generator(g)
    if p.relators[z_index].ls != (gid,):
        raise CompileError(
            f"eliminate_occurrences: relator {z_index} is not the single letter {g}"
        )
    moves: list[Move] = []
    cur = p.relators[i]
    while True:
        pos = next((k for k, x in enumerate(cur.ls) if abs(x) == gid), None)
        if pos is None:
            break
        eps = 1 if cur.ls[pos] > 0 else -1
        suffix = Word._of(cur.ls[pos + 1 :])
        # append suffix^-1 * g^-eps * suffix: exactly deletes this occurrence
        moves.extend(multiply_by_conjugate(i, z_index, invert(suffix), -eps))
        cur = concat(Word._of(cur.ls[:pos]), suffix)
    return moves
