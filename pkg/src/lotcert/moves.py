"""The elementary move alphabet and its application/replay kernel.

This module is the trusted base: certificates are checked by replaying
these moves only.  It depends on the word algebra and the presentation
model and on nothing else.  Every illegal application raises MoveError and
leaves the input untouched (all values are immutable).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .errors import MoveError, ReplayError
from .presentations import Presentation, _mk_presentation
from .words import Word, concat, conjugate, intern_generator, invert, support, valid_generator_name


@dataclass(frozen=True, slots=True)
class Invert:
    """R_i <- R_i^-1."""

    i: int


@dataclass(frozen=True, slots=True)
class MultiplyRight:
    """R_i <- R_i * R_j, i != j."""

    i: int
    j: int


@dataclass(frozen=True, slots=True)
class Conjugate:
    """R_i <- w * R_i * w^-1."""

    i: int
    w: Word


@dataclass(frozen=True, slots=True)
class Swap:
    """Exchange relator positions i and j."""

    i: int
    j: int


@dataclass(frozen=True, slots=True)
class Stabilize:
    """Append a fresh generator g together with the relator g."""

    g: str


@dataclass(frozen=True, slots=True)
class Destabilize:
    """Remove generator g and relator i, which must be exactly g or g^-1."""

    g: str
    i: int


@dataclass(frozen=True, slots=True)
class ElimGenerator:
    """Generalized Tietze elimination: drop g and relator i when g occurs
    exactly once across all relators, in relator i, with exponent +-1."""

    g: str
    i: int


@dataclass(frozen=True, slots=True)
class AddGenerator:
    """Inverse of ElimGenerator: adjoin a fresh generator g with a defining
    relator in which g occurs exactly once with exponent +-1.

    The relator is inserted at index ``rel_at`` and the generator at
    position ``gen_at`` of the generator list.
    """

    g: str
    relator: Word
    rel_at: int
    gen_at: int


@dataclass(frozen=True, slots=True)
class Rename:
    """Simultaneous bijective renaming; ``mapping`` holds (old, new) pairs."""

    mapping: tuple[tuple[str, str], ...]

    @classmethod
    def of(cls, table: dict[str, str]) -> "Rename":
        return cls(tuple(sorted(table.items())))


Move = Union[
    Invert,
    MultiplyRight,
    Conjugate,
    Swap,
    Stabilize,
    Destabilize,
    ElimGenerator,
    AddGenerator,
    Rename,
]

MOVE_TAGS: dict[type, str] = {
    Invert: "invert",
    MultiplyRight: "mul_right",
    Conjugate: "conjugate",
    Swap: "swap",
    Stabilize: "stabilize",
    Destabilize: "destabilize",
    ElimGenerator: "elim_gen",
    AddGenerator: "add_gen",
    Rename: "rename",
}


def _check_index(p: Presentation, i: int, what: str) -> None:
    if not isinstance(i, int) or not 0 <= i < len(p.relators):
        raise MoveError("index", f"{what}: relator index {i} out of range")


def _replace(p: Presentation, i: int, rel: Word) -> Presentation:
    rels = p.relators
    return _mk_presentation(p.generators, rels[:i] + (rel,) + rels[i + 1 :])


def _apply_invert(p: Presentation, mv: Invert) -> Presentation:
    _check_index(p, mv.i, "invert")
    return _replace(p, mv.i, invert(p.relators[mv.i]))


def _apply_mul_right(p: Presentation, mv: MultiplyRight) -> Presentation:
    _check_index(p, mv.i, "mul_right")
    _check_index(p, mv.j, "mul_right")
    if mv.i == mv.j:
        raise MoveError("index", "mul_right: relator indices must differ")
    return _replace(p, mv.i, concat(p.relators[mv.i], p.relators[mv.j]))


def _apply_conjugate(p: Presentation, mv: Conjugate) -> Presentation:
    _check_index(p, mv.i, "conjugate")
    stray = support(mv.w) - set(p.generators)
    if stray:
        raise MoveError(
            "support", f"conjugate: word uses unknown generators {sorted(stray)}"
        )
    return _replace(p, mv.i, conjugate(p.relators[mv.i], mv.w))


def _apply_swap(p: Presentation, mv: Swap) -> Presentation:
    _check_index(p, mv.i, "swap")
    _check_index(p, mv.j, "swap")
    if mv.i == mv.j:
        return p
    rels = list(p.relators)
    rels[mv.i], rels[mv.j] = rels[mv.j], rels[mv.i]
    return _mk_presentation(p.generators, tuple(rels))


def _apply_stabilize(p: Presentation, mv: Stabilize) -> Presentation:
    if not valid_generator_name(mv.g):
        raise MoveError("name", f"stabilize: invalid generator name {mv.g!r}")
    if mv.g in p.generators:
        raise MoveError("fresh", f"stabilize: generator {mv.g} already present")
    gid = intern_generator(mv.g)
    return _mk_presentation(
        p.generators + (mv.g,), p.relators + (Word._of((gid,)),)
    )


def _apply_destabilize(p: Presentation, mv: Destabilize) -> Presentation:
    _check_index(p, mv.i, "destabilize")
    if mv.g not in p.generators:
        raise MoveError("name", f"destabilize: unknown generator {mv.g}")
    gid = intern_generator(mv.g)
    if p.relators[mv.i].ls not in ((gid,), (-gid,)):
        raise MoveError(
            "destab", f"destabilize: relator {mv.i} is not the single letter {mv.g}"
        )
    for j, rel in enumerate(p.relators):
        if j != mv.i and any(abs(x) == gid for x in rel.ls):
            raise MoveError(
                "destab", f"destabilize: {mv.g} still occurs in relator {j}"
            )
    gens = tuple(g for g in p.generators if g != mv.g)
    rels = p.relators[: mv.i] + p.relators[mv.i + 1 :]
    return _mk_presentation(gens, rels)


def _apply_elim_generator(p: Presentation, mv: ElimGenerator) -> Presentation:
    _check_index(p, mv.i, "elim_gen")
    if mv.g not in p.generators:
        raise MoveError("name", f"elim_gen: unknown generator {mv.g}")
    gid = intern_generator(mv.g)
    total = 0
    in_target = 0
    for j, rel in enumerate(p.relators):
        n = sum(1 for x in rel.ls if abs(x) == gid)
        total += n
        if j == mv.i:
            in_target = n
    if total != 1 or in_target != 1:
        raise MoveError(
            "elim",
            f"elim_gen: {mv.g} must occur exactly once overall, in relator {mv.i}"
            f" (found {total} occurrences, {in_target} in target)",
        )
    gens = tuple(g for g in p.generators if g != mv.g)
    rels = p.relators[: mv.i] + p.relators[mv.i + 1 :]
    return _mk_presentation(gens, rels)


def _apply_add_generator(p: Presentation, mv: AddGenerator) -> Presentation:
    if not valid_generator_name(mv.g):
        raise MoveError("name", f"add_gen: invalid generator name {mv.g!r}")
    if mv.g in p.generators:
        raise MoveError("fresh", f"add_gen: generator {mv.g} already present")
    if not isinstance(mv.rel_at, int) or not 0 <= mv.rel_at <= len(p.relators):
        raise MoveError("index", f"add_gen: relator position {mv.rel_at} out of range")
    if not isinstance(mv.gen_at, int) or not 0 <= mv.gen_at <= len(p.generators):
        raise MoveError("index", f"add_gen: generator position {mv.gen_at} out of range")
    gid = intern_generator(mv.g)
    occurrences = sum(1 for x in mv.relator.ls if abs(x) == gid)
    if occurrences != 1:
        raise MoveError(
            "add",
            f"add_gen: defining relator must mention {mv.g} exactly once"
            f" (found {occurrences})",
        )
    stray = support(mv.relator) - set(p.generators) - {mv.g}
    if stray:
        raise MoveError(
            "support", f"add_gen: relator uses unknown generators {sorted(stray)}"
        )
    gens = p.generators[: mv.gen_at] + (mv.g,) + p.generators[mv.gen_at :]
    rels = p.relators[: mv.rel_at] + (mv.relator,) + p.relators[mv.rel_at :]
    return _mk_presentation(gens, rels)


def _apply_rename(p: Presentation, mv: Rename) -> Presentation:
    table = dict(mv.mapping)
    if len(table) != len(mv.mapping):
        raise MoveError("rename", "rename: duplicate source names")
    for old in table:
        if old not in p.generators:
            raise MoveError("rename", f"rename: unknown source generator {old}")
    targets = list(table.values())
    if len(set(targets)) != len(targets):
        raise MoveError("rename", "rename: duplicate target names")
    for new in targets:
        if not valid_generator_name(new):
            raise MoveError("rename", f"rename: invalid target name {new!r}")
    untouched = {g for g in p.generators if g not in table}
    collision = untouched.intersection(targets)
    if collision:
        raise MoveError(
            "rename", f"rename: targets collide with untouched names {sorted(collision)}"
        )
    idmap = {
        intern_generator(old): intern_generator(new) for old, new in table.items()
    }
    gens = tuple(table.get(g, g) for g in p.generators)

    def remap(rel: Word) -> Word:
        # bijective letter map: free reducedness is preserved
        return Word._of(
            tuple(
                (idmap[x] if x > 0 else -idmap[-x]) if abs(x) in idmap else x
                for x in rel.ls
            )
        )

    return _mk_presentation(gens, tuple(remap(r) for r in p.relators))


_DISPATCH = {
    Invert: _apply_invert,
    MultiplyRight: _apply_mul_right,
    Conjugate: _apply_conjugate,
    Swap: _apply_swap,
    Stabilize: _apply_stabilize,
    Destabilize: _apply_destabilize,
    ElimGenerator: _apply_elim_generator,
    AddGenerator: _apply_add_generator,
    Rename: _apply_rename,
}


def apply(p: Presentation, mv: Move) -> Presentation:
    """Apply one elementary move; raise MoveError if it is illegal."""
    handler = _DISPATCH.get(type(mv))
    if handler is None:
        raise MoveError("unknown", f"unknown move {mv!r}")
    return handler(p, mv)


def replay(p0: Presentation, moves: Iterable[Move]) -> Presentation:
    """Left fold of apply; raises ReplayError with the failing step index."""
    p = p0
    for step, mv in enumerate(moves):
        try:
            p = apply(p, mv)
        except MoveError as e:
            raise ReplayError(step, e) from e
    return p
