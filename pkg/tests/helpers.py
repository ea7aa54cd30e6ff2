"""Independent oracles and generators shared by the test suite.

Everything here is deliberately written over plain (name, sign) letter
pairs and Python lists, not over the package's own word type, so these
implementations stay independent of the code paths they check.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

Pair = tuple[str, int]


# ---------------------------------------------------------------------------
# free-group oracle over letter pairs


def reduce_pairs(pairs: list[Pair]) -> list[Pair]:
    out: list[Pair] = []
    for name, sign in pairs:
        if out and out[-1][0] == name and out[-1][1] == -sign:
            out.pop()
        else:
            out.append((name, sign))
    return out


def invert_pairs(pairs: list[Pair]) -> list[Pair]:
    return [(name, -sign) for name, sign in reversed(pairs)]


def mul_pairs(*parts: list[Pair]) -> list[Pair]:
    flat: list[Pair] = []
    for part in parts:
        flat.extend(part)
    return reduce_pairs(flat)


def shift_pairs(pairs: list[Pair]) -> list[Pair]:
    return [(f"x{int(n[1:]) + 1}", s) for n, s in pairs]


# ---------------------------------------------------------------------------
# decomposition oracle: enumerate every split position


def brute_force_decompose(pairs: list[Pair], m: int) -> int | None:
    """Smallest k so that pairs[:k] avoids x1 and pairs[k:] avoids x_m."""
    n = len(pairs)
    no_x1_prefix = [True] * (n + 1)
    for k in range(n):
        no_x1_prefix[k + 1] = no_x1_prefix[k] and pairs[k][0] != "x1"
    no_xm_suffix = [True] * (n + 1)
    for k in range(n - 1, -1, -1):
        no_xm_suffix[k] = no_xm_suffix[k + 1] and pairs[k][0] != f"x{m}"
    for k in range(n + 1):
        if no_x1_prefix[k] and no_xm_suffix[k]:
            return k
    return None


# ---------------------------------------------------------------------------
# word enumeration / generation


def alphabet(m: int) -> list[Pair]:
    letters: list[Pair] = []
    for i in range(1, m + 1):
        letters.append((f"x{i}", 1))
        letters.append((f"x{i}", -1))
    return letters


def reduced_words(m: int, max_len: int):
    """All freely reduced words over x1..xm up to the given length."""
    letters = alphabet(m)
    level: list[list[Pair]] = [[]]
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


def random_reduced_word(rng: random.Random, m: int, max_len: int) -> list[Pair]:
    length = rng.randint(0, max_len)
    letters = alphabet(m)
    out: list[Pair] = []
    while len(out) < length:
        name, sign = rng.choice(letters)
        if out and out[-1] == (name, -sign):
            continue
        out.append((name, sign))
    return out


# ---------------------------------------------------------------------------
# Smith-form oracle: determinant divisors via minor enumeration


def _det(mat: list[list[Fraction]]) -> Fraction:
    n = len(mat)
    a = [row[:] for row in mat]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = Fraction(1) / a[col][col]
        for r in range(col + 1, n):
            factor = a[r][col] * inv
            if factor:
                for c in range(col, n):
                    a[r][c] -= factor * a[col][c]
    return det


def invariant_factors_by_minors(mat: list[list[int]]) -> list[int]:
    """d_k = gcd of all k x k minors; invariant factors are the quotients."""
    import math

    nr = len(mat)
    nc = len(mat[0]) if nr else 0
    factors = []
    prev = 1
    for k in range(1, min(nr, nc) + 1):
        g = 0
        for rows in itertools.combinations(range(nr), k):
            for cols in itertools.combinations(range(nc), k):
                sub = [[Fraction(mat[r][c]) for c in cols] for r in rows]
                g = math.gcd(g, abs(int(_det(sub))))
        if g == 0:
            break
        factors.append(g // prev)
        prev = g
    return factors


def random_matrix(rng: random.Random, max_dim: int = 6, bound: int = 5) -> list[list[int]]:
    nr = rng.randint(1, max_dim)
    nc = rng.randint(1, max_dim)
    return [[rng.randint(-bound, bound) for _ in range(nc)] for _ in range(nr)]


def apply_random_unimodular_ops(
    rng: random.Random, mat: list[list[int]], steps: int = 12
) -> list[list[int]]:
    """Row/column swaps, negations, and integer shears: SNF-invariant."""
    a = [row[:] for row in mat]
    nr, nc = len(a), len(a[0])
    for _ in range(steps):
        kind = rng.randrange(6)
        if kind == 0 and nr > 1:
            i, j = rng.sample(range(nr), 2)
            a[i], a[j] = a[j], a[i]
        elif kind == 1 and nc > 1:
            i, j = rng.sample(range(nc), 2)
            for row in a:
                row[i], row[j] = row[j], row[i]
        elif kind == 2:
            i = rng.randrange(nr)
            a[i] = [-v for v in a[i]]
        elif kind == 3:
            j = rng.randrange(nc)
            for row in a:
                row[j] = -row[j]
        elif kind == 4 and nr > 1:
            i, j = rng.sample(range(nr), 2)
            q = rng.randint(-3, 3)
            a[i] = [v + q * w for v, w in zip(a[i], a[j])]
        elif kind == 5 and nc > 1:
            i, j = rng.sample(range(nc), 2)
            q = rng.randint(-3, 3)
            for row in a:
                row[i] += q * row[j]
    return a
