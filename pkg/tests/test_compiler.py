import random

import pytest

from lotcert.compiler import (
    Witness,
    WitnessFactor,
    conjugate_witness,
    conjugation_derivation,
    eliminate_occurrences,
    evaluate_witness,
    invert_witness,
    multiply_by_conjugate,
    multiply_by_witness,
)
from lotcert.errors import ChainMismatch, CompileError, SelfReference
from lotcert.moves import replay
from lotcert.presentations import LotSpec, Presentation, chain_presentation
from lotcert.words import (
    EMPTY,
    Word,
    concat,
    conjugate,
    invert,
    letter,
    parse_word,
    shift_up,
    support,
)

from helpers import random_reduced_word, reduced_words


def pres(gens, *rels):
    return Presentation(tuple(gens), tuple(parse_word(r) for r in rels))


def wit(*factors):
    return Witness(
        tuple(WitnessFactor(parse_word(c), r, s) for c, r, s in factors)
    )


def derivation_target(c, w, m):
    # the independent expectation: c * w * c^-1 * shift_up(w)^-1
    return concat(conjugate(w, c), invert(shift_up(w, m)))


# --- evaluate_witness ---------------------------------------------------------

def test_evaluate_single_factor():
    p = pres(["x1", "x2"], "x1 x2^-1")
    assert evaluate_witness(wit(("1", 0, 1)), p) == parse_word("x1 x2^-1")


def test_evaluate_cancelling_pair():
    p = pres(["x1", "x2"], "x1 x2^-1")
    assert evaluate_witness(wit(("1", 0, 1), ("1", 0, -1)), p) == EMPTY


def test_evaluate_conjugated_factor():
    p = pres(["x1", "x2"], "x1 x2^-1")
    got = evaluate_witness(wit(("x2", 0, 1)), p)
    assert got == parse_word("x2 x1 x2^-1 x2^-1")


def test_invert_and_conjugate_witness():
    p = pres(["x1", "x2"], "x1 x2^-1", "x2 x1")
    w = wit(("x2", 0, 1), ("1", 1, -1))
    value = evaluate_witness(w, p)
    assert evaluate_witness(invert_witness(w), p) == invert(value)
    c = parse_word("x1 x2")
    assert evaluate_witness(conjugate_witness(w, c), p) == conjugate(value, c)


# --- conjugation_derivation -----------------------------------------------------

def test_derivation_single_positive_letter():
    p = chain_presentation(LotSpec(3, parse_word("x2")))
    w = conjugation_derivation(p, [0, 1], parse_word("x2"), parse_word("x1"), 3)
    assert w.factors == (WitnessFactor(EMPTY, 0, 1),)
    assert evaluate_witness(w, p) == parse_word("x2 x1 x2^-1 x2^-1")


def test_derivation_empty_word():
    p = chain_presentation(LotSpec(3, parse_word("x2")))
    w = conjugation_derivation(p, [0, 1], parse_word("x2"), EMPTY, 3)
    assert w.factors == ()
    assert evaluate_witness(w, p) == EMPTY


def test_derivation_single_negative_letter():
    p = chain_presentation(LotSpec(3, parse_word("x2")))
    c, word = parse_word("x2"), parse_word("x1^-1")
    w = conjugation_derivation(p, [0, 1], c, word, 3)
    assert len(w.factors) == 1 and w.factors[0].sign == -1
    assert evaluate_witness(w, p) == derivation_target(c, word, 3)
    assert evaluate_witness(w, p) == parse_word("x2 x1^-1")


def test_derivation_rejects_wrong_chain():
    p = chain_presentation(LotSpec(3, parse_word("x2")))
    with pytest.raises(ChainMismatch):
        conjugation_derivation(p, [1, 0], parse_word("x2"), parse_word("x1"), 3)
    with pytest.raises(ChainMismatch):
        conjugation_derivation(p, [0], parse_word("x2"), parse_word("x1"), 3)


@pytest.mark.parametrize(
    "m,c_text", [(2, ""), (2, "x2 x1"), (3, ""), (3, "x2"), (3, "x3 x1 x2^-1")]
)
def test_derivation_exhaustive_small(m, c_text):
    c = parse_word(c_text)
    p = chain_presentation(LotSpec(m, c))
    chain = list(range(m - 1))
    for pairs in reduced_words(m - 1, 4):
        w = Word(pairs)
        witness = conjugation_derivation(p, chain, c, w, m)
        assert evaluate_witness(witness, p) == derivation_target(c, w, m)


def test_derivation_random_instances():
    rng = random.Random(4)
    for _ in range(250):
        m = rng.randint(2, 5)
        c = Word(random_reduced_word(rng, m, 8))
        p = chain_presentation(LotSpec(m, c))
        w = Word(random_reduced_word(rng, m - 1, 8))
        witness = conjugation_derivation(p, list(range(m - 1)), c, w, m)
        assert evaluate_witness(witness, p) == derivation_target(c, w, m)


# --- multiply_by_conjugate -------------------------------------------------------

def test_multiply_by_conjugate_plain():
    p = pres(["x1", "x2"], "x1", "x2")
    q = replay(p, multiply_by_conjugate(0, 1, EMPTY, 1))
    assert [repr(r) for r in q.relators] == ["x1 x2", "x2"]


def test_multiply_by_conjugate_inverse_sign():
    p = pres(["x1", "x2"], "x1", "x2")
    q = replay(p, multiply_by_conjugate(0, 1, EMPTY, -1))
    assert [repr(r) for r in q.relators] == ["x1 x2^-1", "x2"]


def test_multiply_by_conjugate_restores_helper():
    p = chain_presentation(LotSpec(3, parse_word("x2")))
    conj = parse_word("x2")
    q = replay(p, multiply_by_conjugate(0, 1, conj, 1))
    assert q.relators[1] == p.relators[1]
    expected = concat(p.relators[0], conjugate(p.relators[1], conj))
    assert q.relators[0] == expected


def test_multiply_by_conjugate_random_net_effect():
    rng = random.Random(17)
    for _ in range(450):
        m = rng.randint(2, 5)
        p = chain_presentation(LotSpec(m, Word(random_reduced_word(rng, m, 10))))
        n = len(p.relators)
        i = rng.randrange(n)
        j = rng.randrange(n)
        if i == j:
            j = (j + 1) % n
        if i == j:
            continue
        conj = Word(random_reduced_word(rng, m, 6))
        sign = rng.choice((1, -1))
        q = replay(p, multiply_by_conjugate(i, j, conj, sign))
        t = p.relators[j] if sign > 0 else invert(p.relators[j])
        assert q.relators[i] == concat(p.relators[i], conjugate(t, conj))
        for k in range(n):
            if k != i:
                assert q.relators[k] == p.relators[k]


def test_multiply_by_conjugate_rejects_self():
    with pytest.raises(SelfReference):
        multiply_by_conjugate(1, 1, EMPTY, 1)


# --- multiply_by_witness ----------------------------------------------------------

def test_multiply_by_empty_witness():
    assert multiply_by_witness(0, Witness(())) == []


def test_multiply_by_witness_single_factor_matches_composite():
    p = pres(["x1", "x2"], "x1", "x2")
    a = replay(p, multiply_by_witness(0, wit(("1", 1, 1))))
    b = replay(p, multiply_by_conjugate(0, 1, EMPTY, 1))
    assert a == b


def test_multiply_by_witness_net_effect_random():
    rng = random.Random(29)
    for _ in range(350):
        m = rng.randint(2, 4)
        p = chain_presentation(LotSpec(m, Word(random_reduced_word(rng, m, 8))))
        n = len(p.relators)
        target = rng.randrange(n)
        factors = []
        for _ in range(rng.randint(0, 4)):
            r = rng.randrange(n)
            if r == target:
                continue
            factors.append(
                WitnessFactor(
                    Word(random_reduced_word(rng, m, 5)), r, rng.choice((1, -1))
                )
            )
        witness = Witness(tuple(factors))
        q = replay(p, multiply_by_witness(target, witness))
        assert q.relators[target] == concat(
            p.relators[target], evaluate_witness(witness, p)
        )
        for k in range(n):
            if k != target:
                assert q.relators[k] == p.relators[k]


def test_multiply_by_witness_rejects_self_reference():
    with pytest.raises(SelfReference):
        multiply_by_witness(0, wit(("1", 0, 1)))


# --- eliminate_occurrences ----------------------------------------------------------

def test_eliminate_occurrences_two_cancellations():
    p = pres(["x1", "x2", "g"], "g", "g x1 g^-1 x2^-1")
    moves = eliminate_occurrences(p, 1, "g", 0)
    q = replay(p, moves)
    assert q.relators[1] == parse_word("x1 x2^-1")
    assert q.relators[0] == parse_word("g")
    assert "g" not in support(q.relators[1])


def test_eliminate_occurrences_noop():
    p = pres(["x1", "g"], "g", "x1")
    assert eliminate_occurrences(p, 1, "g", 0) == []


def test_eliminate_occurrences_guards():
    p = pres(["x1", "g"], "g", "x1")
    with pytest.raises(CompileError):
        eliminate_occurrences(p, 0, "g", 0)
    bad = pres(["x1", "g"], "g g", "x1")
    with pytest.raises(CompileError):
        eliminate_occurrences(bad, 1, "g", 0)


def test_eliminate_occurrences_random():
    rng = random.Random(31)
    for _ in range(250):
        m = rng.randint(2, 4)
        gens = [f"x{i}" for i in range(1, m + 1)] + ["g"]
        raw = random_reduced_word(rng, m, 6)
        for _ in range(rng.randint(0, 3)):
            pos = rng.randint(0, len(raw))
            raw = raw[:pos] + [("g", rng.choice((1, -1)))] + raw[pos:]
        target = Word(raw)
        p = Presentation(tuple(gens), (letter("g"), target))
        q = replay(p, eliminate_occurrences(p, 1, "g", 0))
        assert "g" not in support(q.relators[1])
        # deleting the letters directly gives the same reduced word
        expected = Word([(n, s) for n, s in target.letters if n != "g"])
        assert q.relators[1] == expected
        assert q.relators[0] == letter("g")
