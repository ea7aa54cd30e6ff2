"""Finite presentations, chain-presentation constructors, and integer
abelianization diagnostics (Smith invariant factors)."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ForeignGenerator, NotDecomposable
from .words import (
    Split,
    Word,
    base_index,
    concat,
    intern_generator,
    invert,
    shift_up,
    support,
    valid_generator_name,
)

AbelianMatrix = list[list[int]]


@dataclass(frozen=True, slots=True)
class Presentation:
    """Ordered generator names plus ordered, freely reduced relators."""

    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        seen = set()
        for g in self.generators:
            if not valid_generator_name(g):
                raise ValueError(f"invalid generator name {g!r}")
            if g in seen:
                raise ValueError(f"duplicate generator {g!r}")
            seen.add(g)
        for idx, rel in enumerate(self.relators):
            for name in support(rel):
                if name not in seen:
                    raise ValueError(
                        f"relator {idx} uses unlisted generator {name!r}"
                    )

    def text(self) -> str:
        """Canonical text form: one header line, one line per relator."""
        lines = ["gens: " + " ".join(self.generators)]
        for i, rel in enumerate(self.relators):
            lines.append(f"rel[{i}]: {rel!r}")
        return "\n".join(lines)


def _mk_presentation(gens: tuple[str, ...], rels: tuple[Word, ...]) -> Presentation:
    # trusted constructor for the move kernel: invariants hold inductively
    p = object.__new__(Presentation)
    object.__setattr__(p, "generators", gens)
    object.__setattr__(p, "relators", rels)
    return p


@dataclass(frozen=True)
class LotSpec:
    """Chain size m >= 2 and a conjugating word over x1..xm."""

    m: int
    u: Word

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 2:
            raise ValueError(f"chain size must be an integer >= 2, got {self.m!r}")
        for name in support(self.u):
            b = base_index(name)
            if b is None or b > self.m:
                raise ForeignGenerator(
                    f"conjugator letter {name} outside x1..x{self.m}"
                )


def chain_generators(m: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(1, m + 1))


def chain_relator(c: Word, i: int) -> Word:
    """Relator saying c * x_i * c^-1 = x_{i+1}, stored as a single word."""
    xi = intern_generator(f"x{i}")
    xj = intern_generator(f"x{i + 1}")
    return concat(concat(c, Word._of((xi,))), concat(invert(c), Word._of((-xj,))))


def chain_presentation(spec: LotSpec) -> Presentation:
    """The chain presentation: relator i conjugates x_i to x_{i+1} by u."""
    gens = chain_generators(spec.m)
    rels = tuple(chain_relator(spec.u, i) for i in range(1, spec.m))
    return _mk_presentation(gens, rels)


def validate_split(u: Word, m: int, split: Split) -> None:
    """Check the split's own invariants against u; raise NotDecomposable."""
    if split.u2.ls + split.u1.ls != u.ls:
        raise NotDecomposable("split parts do not concatenate to the word")
    if split.split_index != len(split.u2.ls):
        raise NotDecomposable("split index does not match the seam")
    if "x1" in support(split.u2):
        raise NotDecomposable("left part mentions x1")
    if f"x{m}" in support(split.u1):
        raise NotDecomposable(f"right part mentions x{m}")


def split_conjugator(split: Split, m: int) -> Word:
    """The rebuilt conjugator: shifted right part times left part."""
    return concat(shift_up(split.u1, m), split.u2)


def split_chain_presentation(spec: LotSpec, split: Split) -> Presentation:
    """Chain presentation whose conjugator is rebuilt from a split of u."""
    validate_split(spec.u, spec.m, split)
    d = split_conjugator(split, spec.m)
    return chain_presentation(LotSpec(spec.m, d))


def abelian_matrix(p: Presentation) -> AbelianMatrix:
    """Exponent-sum matrix: one row per relator, one column per generator."""
    col = {intern_generator(g): j for j, g in enumerate(p.generators)}
    mat = []
    for rel in p.relators:
        row = [0] * len(p.generators)
        for x in rel.ls:
            if x > 0:
                row[col[x]] += 1
            else:
                row[col[-x]] -= 1
        mat.append(row)
    return mat


def smith_invariant_factors(mat: AbelianMatrix) -> list[int]:
    """Invariant factors d1 | d2 | ... of an integer matrix.

    Exact arbitrary-precision arithmetic; unit factors are included, zero
    rows and columns contribute nothing.  The presented abelian group is
    Z^(cols - len(factors)) + sum of Z/d_i.
    """
    a = [list(row) for row in mat]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    if any(len(row) != nc for row in a):
        raise ValueError("ragged matrix")
    factors: list[int] = []
    s = 0
    while s < nr and s < nc:
        # move the smallest nonzero entry of the trailing block to (s, s)
        pi = pj = -1
        best = 0
        for i in range(s, nr):
            row = a[i]
            for j in range(s, nc):
                v = row[j]
                if v and (best == 0 or -best < v < best):
                    best = abs(v)
                    pi, pj = i, j
        if pi < 0:
            break
        a[s], a[pi] = a[pi], a[s]
        if pj != s:
            for row in a:
                row[s], row[pj] = row[pj], row[s]
        while True:
            # clear column s by euclidean row steps: reduce each entry mod
            # the pivot, swapping the remainder up when it is nonzero
            for i in range(s + 1, nr):
                while a[i][s]:
                    q = a[i][s] // a[s][s]
                    if q:
                        ai = a[i]
                        rs = a[s]
                        for j in range(s, nc):
                            ai[j] -= q * rs[j]
                    if a[i][s]:
                        a[s], a[i] = a[i], a[s]
            # clear row s the same way with column steps
            for j in range(s + 1, nc):
                while a[s][j]:
                    q = a[s][j] // a[s][s]
                    if q:
                        for i in range(s, nr):
                            a[i][j] -= q * a[i][s]
                    if a[s][j]:
                        for i in range(s, nr):
                            a[i][s], a[i][j] = a[i][j], a[i][s]
            if any(a[i][s] for i in range(s + 1, nr)):
                continue  # column ops refilled the pivot column
            p = a[s][s]
            bad = None
            for i in range(s + 1, nr):
                row = a[i]
                for j in range(s + 1, nc):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # pull a non-divisible row up so the pivot shrinks to the gcd
            rs = a[s]
            rb = a[bad]
            for j in range(s, nc):
                rs[j] += rb[j]
        factors.append(abs(a[s][s]))
        s += 1
    return factors


def nonunit_factors(factors: list[int]) -> tuple[int, ...]:
    """The multiset (sorted) of invariant factors different from 1."""
    return tuple(sorted(d for d in factors if d != 1))
