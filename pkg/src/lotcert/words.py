"""Free-group word algebra over named generators.

Words are kept freely reduced at all times; the empty word is the identity.
Generator names are interned process-wide so a letter is a single signed
integer and word operations are plain tuple manipulations.  Base chain
generators are named ``x1``, ``x2``, ... and carry a recoverable integer
index; every other valid identifier (``z1``, ``x2_1``, ...) is an auxiliary.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import ForeignGenerator, IndexOutOfRange, WordSyntaxError

_NAME_RE = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")
_BASE_RE = re.compile(r"x([1-9][0-9]*)\Z")
_TERM_RE = re.compile(r"([a-z][a-zA-Z0-9_]*)(?:\^([+-]?[0-9]+))?\Z")

_name_to_id: dict[str, int] = {}
_id_to_name: list[str] = [""]  # slot 0 unused so ids are nonzero
_id_to_base: list[int | None] = [None]


def valid_generator_name(name: str) -> bool:
    return bool(_NAME_RE.match(name))


def intern_generator(name: str) -> int:
    """Return the positive letter id for ``name``, interning it if new."""
    gid = _name_to_id.get(name)
    if gid is not None:
        return gid
    if not _NAME_RE.match(name):
        raise ValueError(f"invalid generator name {name!r}")
    gid = len(_id_to_name)
    _name_to_id[name] = gid
    _id_to_name.append(name)
    m = _BASE_RE.match(name)
    _id_to_base.append(int(m.group(1)) if m else None)
    return gid


def generator_name(gid: int) -> str:
    return _id_to_name[abs(gid)]


def base_index(name: str) -> int | None:
    """Chain index of a base generator name (``x7`` -> 7), else None."""
    m = _BASE_RE.match(name)
    return int(m.group(1)) if m else None


def _base_of_id(gid: int) -> int | None:
    return _id_to_base[abs(gid)]


def _reduce_ids(seq: Iterable[int]) -> tuple[int, ...]:
    stack: list[int] = []
    push = stack.append
    pop = stack.pop
    for x in seq:
        if stack and stack[-1] == -x:
            pop()
        else:
            push(x)
    return tuple(stack)


class Word:
    """A freely reduced word; immutable and hashable.

    Construct from (name, sign) pairs, from text via :func:`parse_word`,
    or with the ``*`` / ``~`` operators on existing words.
    """

    __slots__ = ("ls",)

    ls: tuple[int, ...]

    def __init__(self, letters: Iterable[tuple[str, int]] = ()):
        ids = []
        for name, sign in letters:
            if sign not in (1, -1):
                raise ValueError(f"letter sign must be +1 or -1, got {sign}")
            ids.append(sign * intern_generator(name))
        object.__setattr__(self, "ls", _reduce_ids(ids))

    @classmethod
    def _of(cls, ls: tuple[int, ...]) -> "Word":
        # trusted constructor: ls must already be freely reduced
        w = object.__new__(cls)
        object.__setattr__(w, "ls", ls)
        return w

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @property
    def letters(self) -> tuple[tuple[str, int], ...]:
        return tuple((generator_name(x), 1 if x > 0 else -1) for x in self.ls)

    def __len__(self) -> int:
        return len(self.ls)

    def __bool__(self) -> bool:
        return bool(self.ls)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.ls == other.ls

    def __hash__(self) -> int:
        return hash(self.ls)

    def __iter__(self) -> Iterator[tuple[str, int]]:
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, k: int) -> "Word":
        return power(self, k)

    def __repr__(self) -> str:
        return format_word(self)

    @property
    def is_identity(self) -> bool:
        return not self.ls


EMPTY = Word._of(())


def letter(name: str, sign: int = 1) -> Word:
    """One-letter word."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return Word._of((sign * intern_generator(name),))


def free_reduce(raw: Iterable[tuple[str, int]] | Word) -> Word:
    """Freely reduce a raw letter sequence; idempotent on words."""
    if isinstance(raw, Word):
        return raw
    return Word(raw)


def concat(a: Word, b: Word) -> Word:
    """Product a*b, reduced.  Both inputs being reduced, only the seam cancels."""
    if not a.ls:
        return b
    if not b.ls:
        return a
    stack = list(a.ls)
    for x in b.ls:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return Word._of(tuple(stack))


def invert(w: Word) -> Word:
    """Inverse word: reversed letters with flipped signs."""
    return Word._of(tuple(-x for x in reversed(w.ls)))


def conjugate(w: Word, c: Word) -> Word:
    """Conjugate c * w * c^-1, reduced."""
    if not w.ls:
        return EMPTY
    return concat(concat(c, w), invert(c))


def power(w: Word, k: int) -> Word:
    if k < 0:
        return power(invert(w), -k)
    out = EMPTY
    for _ in range(k):
        out = concat(out, w)
    return out


def substitute(w: Word, mapping: dict[str, str]) -> Word:
    """Replace generators by name (not necessarily injective), then reduce."""
    idmap = {intern_generator(old): intern_generator(new) for old, new in mapping.items()}
    return Word._of(
        _reduce_ids(
            (idmap[x] if x > 0 else -idmap[-x]) if abs(x) in idmap else x for x in w.ls
        )
    )


def shift_up(w: Word, m: int) -> Word:
    """Raise the chain index of every letter by one.

    Every letter must be a base generator with index <= m-1; the result is a
    word in x2..xm.  Letter-wise injective, so reducedness is preserved.
    """
    out = []
    for x in w.ls:
        b = _base_of_id(x)
        if b is None or b >= m:
            raise IndexOutOfRange(
                f"shift_up: letter {generator_name(x)} not in x1..x{m - 1}"
            )
        nid = intern_generator(f"x{b + 1}")
        out.append(nid if x > 0 else -nid)
    return Word._of(tuple(out))


def reindex(w: Word, delta: int) -> Word:
    """Shift every base index by ``delta``; indices must stay >= 1."""
    out = []
    for x in w.ls:
        b = _base_of_id(x)
        if b is None:
            raise IndexOutOfRange(f"reindex: {generator_name(x)} is not a base generator")
        if b + delta < 1:
            raise IndexOutOfRange(f"reindex: x{b} shifted by {delta} leaves the chain")
        nid = intern_generator(f"x{b + delta}")
        out.append(nid if x > 0 else -nid)
    return Word._of(tuple(out))


def support(w: Word) -> set[str]:
    """Set of generator names occurring in the word."""
    return {generator_name(x) for x in w.ls}


@dataclass(frozen=True)
class Split:
    """A factorization u = u2 * u1 with u1 free of x_m and u2 free of x_1."""

    u2: Word
    u1: Word
    split_index: int


def decompose(u: Word, m: int) -> Split | None:
    """Split u into u2 * u1 with u1 over x1..x_{m-1} and u2 over x2..xm.

    Returns the split with the smallest valid index (just after the last
    occurrence of x_m), or None when no position works.  The word must use
    base generators x1..xm only.
    """
    first_x1 = len(u.ls)
    last_xm = -1
    for pos, x in enumerate(u.ls):
        b = _base_of_id(x)
        if b is None or b > m:
            raise ForeignGenerator(
                f"decompose: letter {generator_name(x)} outside x1..x{m}"
            )
        if b == 1 and pos < first_x1:
            first_x1 = pos
        if b == m:
            last_xm = pos
    if last_xm >= first_x1:
        return None
    k = last_xm + 1
    return Split(Word._of(u.ls[:k]), Word._of(u.ls[k:]), k)


# hostile documents must not be able to force huge power expansions
_MAX_PARSED_LETTERS = 1_000_000


def parse_word(text: str) -> Word:
    """Parse word text: terms separated by whitespace or '*'.

    A term is ``name`` or ``name^exp``; ``1`` (alone) and the empty string
    denote the identity.  Powers are expanded and the result reduced.
    """
    cleaned = text.replace("*", " ")
    tokens = list(re.finditer(r"\S+", cleaned))
    if not tokens:
        return EMPTY
    if len(tokens) == 1 and tokens[0].group() == "1":
        return EMPTY
    ids: list[int] = []
    for tok in tokens:
        m = _TERM_RE.match(tok.group())
        if m is None:
            raise WordSyntaxError(f"invalid term {tok.group()!r}", tok.start())
        name, exp_text = m.group(1), m.group(2)
        exp = 1 if exp_text is None else int(exp_text)
        if len(ids) + abs(exp) > _MAX_PARSED_LETTERS:
            raise WordSyntaxError("word expands beyond the size limit", tok.start())
        gid = intern_generator(name)
        if exp >= 0:
            ids.extend([gid] * exp)
        else:
            ids.extend([-gid] * (-exp))
    return Word._of(_reduce_ids(ids))


def format_word(w: Word) -> str:
    """Inverse of parse_word on reduced words; identity prints as '1'."""
    if not w.ls:
        return "1"
    return " ".join(
        generator_name(x) if x > 0 else generator_name(x) + "^-1" for x in w.ls
    )
