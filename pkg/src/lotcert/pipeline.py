"""The recursive reduction and the power-relation preprocessing pipeline.

One round rewrites a chain presentation with conjugator u = u2*u1 into the
chain presentation over one fewer generator whose conjugator is the
reindexed shift_up(u1)*u2, through eight named stages of elementary moves.
Iterating yields a complete certificate ending in a cited leaf: either a
two-generator one-relator presentation or a non-splittable conjugator.

The pipeline drives its own state through the kernel's ``apply``; every
stage ends with a consistency check against independently rebuilt
presentations, so a compilation bug surfaces here, never in a certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .certificates import (
    Certificate,
    FORMAT_VERSION,
    LEAF_C1,
    LEAF_CITATIONS,
    LEAF_ONE_RELATOR,
    Leaf,
    StageSegment,
)
from .compiler import (
    Witness,
    conjugate_witness,
    conjugation_derivation,
    eliminate_occurrences,
    invert_witness,
    multiply_by_conjugate,
    multiply_by_witness,
)
from .errors import CompileError, MoveError, NegativeExponent, NotDecomposable
from .moves import (
    AddGenerator,
    Conjugate,
    Destabilize,
    ElimGenerator,
    Move,
    Rename,
    Stabilize,
    Swap,
    apply,
)
from .presentations import (
    LotSpec,
    Presentation,
    chain_presentation,
    chain_relator,
    split_chain_presentation,
    split_conjugator,
)
from .words import (
    EMPTY,
    Split,
    Word,
    concat,
    conjugate,
    decompose,
    invert,
    letter,
    power,
    reindex,
    shift_up,
    substitute,
)


@dataclass
class RoundPlan:
    """Stage-by-stage move blocks for one reduction round."""

    spec: LotSpec
    split: Split
    conjugator: Word  # shift_up(u1) * u2, the successor's conjugator pre-reindex
    successor: LotSpec
    stages: list[tuple[str, list[Move]]] = field(default_factory=list)
    seed_witness: Witness | None = None
    collapse_witness: Witness | None = None
    final_presentation: Presentation | None = None

    def moves(self) -> list[Move]:
        return [mv for _, block in self.stages for mv in block]


def _run(p: Presentation, moves: list[Move], stage: str) -> Presentation:
    try:
        for mv in moves:
            p = apply(p, mv)
    except MoveError as e:  # a compiled move must never be illegal
        raise CompileError(f"stage {stage!r} emitted an illegal move: {e}") from e
    return p


def reduce_once(spec: LotSpec, aux_name: str = "z1") -> tuple[RoundPlan, LotSpec]:
    """Compile one reduction round for a splittable conjugator, m > 2.

    Stages, in order: stabilize (fresh relator z in front), seed-consequence
    (z picks up the conjugator-swap consequence), conjugator-swap (each chain
    relator rewritten to the new conjugator), collapse-R (z's relator shrinks
    back to the single letter z), z-elimination (z cancelled out of the chain
    relators), destabilize, x1-elimination, rename.
    """
    m, u = spec.m, spec.u
    if m <= 2:
        raise ValueError("reduce_once needs chain size > 2")
    split = decompose(u, m)
    if split is None:
        raise NotDecomposable(f"{u!r} has no split for chain size {m}")
    u1 = split.u1
    d = split_conjugator(split, m)
    p = chain_presentation(spec)
    plan = RoundPlan(spec, split, d, LotSpec(m - 1, reindex(d, -1)))

    def run(stage: str, moves: list[Move]) -> None:
        nonlocal p
        p = _run(p, moves, stage)
        plan.stages.append((stage, moves))

    def check(cond: bool, stage: str) -> None:
        if not cond:
            raise CompileError(f"stage {stage!r} left an unexpected presentation")

    # (1) fresh generator z with relator z, rotated to the front so the
    # chain relator for x_i sits at index i for the rest of the round
    run(
        "stabilize",
        [Stabilize(aux_name)] + [Swap(k, k - 1) for k in range(m - 1, 0, -1)],
    )
    z = letter(aux_name)
    chain = list(range(1, m))

    # (2) z's relator becomes z * d * u^-1: right-multiply by the inverse of
    # the derived consequence u*u1*u^-1 = shift_up(u1)
    derivation = conjugation_derivation(p, chain, u, u1, m)
    plan.seed_witness = invert_witness(derivation)
    run("seed-consequence", multiply_by_witness(0, plan.seed_witness))
    r0 = p.relators[0]
    check(r0 == concat(concat(z, d), invert(u)), "seed-consequence")

    # (3) each chain relator switches conjugator from u to c = z*d via
    # R_i' = (R0 R_i R0^-1) * R0 * (x_{i+1} R0^-1 x_{i+1}^-1)
    c = concat(z, d)
    moves3: list[Move] = []
    for i in range(1, m):
        moves3.append(Conjugate(i, r0))
        moves3.extend(multiply_by_conjugate(i, 0, EMPTY, 1))
        moves3.extend(multiply_by_conjugate(i, 0, letter(f"x{i + 1}"), -1))
    run("conjugator-swap", moves3)
    check(
        all(p.relators[i] == chain_relator(c, i) for i in range(1, m)),
        "conjugator-swap",
    )

    # (4) shrink R0 back to z: right-multiply by R0^-1 * W^-1 * R0 where
    # W = c u1^-1 c^-1 shift_up(u1) is derived from the new chain relators,
    # then conjugate away the leftover shift_up(u1)
    derivation2 = conjugation_derivation(p, chain, c, invert(u1), m)
    plan.collapse_witness = conjugate_witness(invert_witness(derivation2), invert(r0))
    moves4: list[Move] = multiply_by_witness(0, plan.collapse_witness)
    if u1:
        moves4.append(Conjugate(0, shift_up(u1, m)))
    run("collapse-R", moves4)
    check(p.relators[0] == z, "collapse-R")

    # (5) cancel z out of every chain relator against the z relator
    moves5: list[Move] = []
    for i in range(1, m):
        moves5.extend(eliminate_occurrences(p, i, aux_name, 0))
    run("z-elimination", moves5)
    check(
        all(p.relators[i] == chain_relator(d, i) for i in range(1, m)),
        "z-elimination",
    )

    # (6) the z relator is again the bare letter and z occurs nowhere else
    run("destabilize", [Destabilize(aux_name, 0)])
    check(p == split_chain_presentation(spec, split), "destabilize")

    # (7) d avoids x1, so x1 survives only in the first chain relator
    run("x1-elimination", [ElimGenerator("x1", 0)])

    # (8) shift every generator name down by one
    run("rename", [Rename.of({f"x{i}": f"x{i - 1}" for i in range(2, m + 1)})])
    check(p == chain_presentation(plan.successor), "rename")

    plan.final_presentation = p
    return plan, plan.successor


def _leaf_for(spec: LotSpec, p: Presentation) -> Leaf | None:
    if spec.m == 2:
        return Leaf(LEAF_ONE_RELATOR, LEAF_CITATIONS[LEAF_ONE_RELATOR], 2, spec.u, p)
    if decompose(spec.u, spec.m) is None:
        return Leaf(LEAF_C1, LEAF_CITATIONS[LEAF_C1], spec.m, spec.u, p)
    return None


def certify(spec: LotSpec) -> Certificate:
    """Reduce until a cited leaf is reached; at most m-2 rounds."""
    initial = chain_presentation(spec)
    current = initial
    cur_spec = spec
    segments: list[StageSegment] = []
    round_no = 1
    while True:
        leaf = _leaf_for(cur_spec, current)
        if leaf is not None:
            return Certificate(FORMAT_VERSION, initial, segments, leaf, current)
        plan, cur_spec = reduce_once(cur_spec, aux_name=f"z{round_no}")
        for stage, moves in plan.stages:
            annotations = None
            if stage == "seed-consequence":
                annotations = {
                    "witness": {"target": 0, "factors": plan.seed_witness.as_json()}
                }
            elif stage == "collapse-R":
                annotations = {
                    "witness": {"target": 0, "factors": plan.collapse_witness.as_json()}
                }
            segments.append(StageSegment(round_no, stage, moves, annotations))
        current = plan.final_presentation
        round_no += 1


def swap_identity_witness(spec: LotSpec, split: Split) -> Witness:
    """Diagnostic: over the rebuilt-conjugator presentation, the original
    conjugator u2*u1 equals shift_up(u1)*u2.

    The returned witness evaluates to d*u1*d^-1*shift_up(u1)^-1 over that
    presentation, which rearranges to exactly the swap identity.
    """
    p3 = split_chain_presentation(spec, split)
    d = split_conjugator(split, spec.m)
    return conjugation_derivation(p3, list(range(spec.m - 1)), d, split.u1, spec.m)


# ---------------------------------------------------------------------------
# power-relation preprocessing


@dataclass(frozen=True)
class CorollarySpec:
    """Chain presentation variant with per-edge conjugation exponents."""

    m: int
    u: Word
    exponents: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 2:
            raise ValueError(f"chain size must be >= 2, got {self.m!r}")
        if len(self.exponents) != self.m - 1:
            raise ValueError(
                f"need {self.m - 1} exponents, got {len(self.exponents)}"
            )
        LotSpec(self.m, self.u)  # validates the conjugator's alphabet


def power_chain_presentation(cspec: CorollarySpec) -> Presentation:
    """Presentation with relators u^k_i x_i u^-k_i x_{i+1}^-1."""
    rels = tuple(
        chain_relator(power(cspec.u, cspec.exponents[i - 1]), i)
        for i in range(1, cspec.m)
    )
    return Presentation(tuple(f"x{i}" for i in range(1, cspec.m + 1)), rels)


def _compile_split(
    p: Presentation,
    power_idx: int,
    u: Word,
    k: int,
    left: str,
    right: str,
    edge: int,
) -> tuple[list[Move], Presentation, list[str]]:
    """Split the power relator at ``power_idx`` into k conjugation relators.

    Each new letter y gets a defining relator u*prev*u^-1*y^-1 inserted just
    before the power relator (and y goes right after prev in the generator
    list), then one conjugated multiplication shortens the power by one.
    """
    moves: list[Move] = []
    fresh: list[str] = []
    prev = left
    for j in range(1, k):
        y = f"x{edge}_{j}"
        fresh.append(y)
        prev_w = letter(prev)
        w_def = concat(conjugate(prev_w, u), letter(y, -1))
        gen_at = p.generators.index(prev) + 1
        step = [AddGenerator(y, w_def, power_idx, gen_at)]
        a = k - j + 1  # remaining exponent on the power relator
        conj = concat(
            concat(letter(right), power(u, a - 1)), conjugate(invert(prev_w), u)
        )
        step.extend(multiply_by_conjugate(power_idx + 1, power_idx, conj, -1))
        p = _run(p, step, f"split-edge-{edge}")
        moves.extend(step)
        expected = chain_relator_named(u, y, right, k - j)
        if p.relators[power_idx + 1] != expected:
            raise CompileError(f"split of edge {edge} missed its target relator")
        power_idx += 1
        prev = y
    return moves, p, fresh


def chain_relator_named(u: Word, left: str, right: str, k: int = 1) -> Word:
    """Relator u^k * left * u^-k * right^-1 over named endpoints."""
    c = power(u, k)
    return concat(conjugate(letter(left), c), letter(right, -1))


def _compile_merge(
    p: Presentation, e_idx: int, left: str, right: str, edge: int
) -> tuple[list[Move], Presentation]:
    """Contract the identification relator left*right^-1 at ``e_idx``:
    rewrite every other occurrence of ``right`` to ``left``, then eliminate
    the generator together with its relator."""
    moves: list[Move] = []
    expected = concat(letter(left), letter(right, -1))
    if p.relators[e_idx] != expected:
        raise CompileError(f"merge of edge {edge}: unexpected relator shape")
    gid_right = letter(right).ls[0]
    for j in range(len(p.relators)):
        if j == e_idx:
            continue
        while True:
            rel = p.relators[j]
            pos = next((k for k, x in enumerate(rel.ls) if abs(x) == gid_right), None)
            if pos is None:
                break
            suffix = Word._of(rel.ls[pos + 1 :])
            if rel.ls[pos] > 0:
                step = multiply_by_conjugate(
                    j, e_idx, invert(concat(letter(right), suffix)), 1
                )
            else:
                step = multiply_by_conjugate(j, e_idx, invert(suffix), -1)
            p = _run(p, step, f"merge-edge-{edge}")
            moves.extend(step)
    step = [ElimGenerator(right, e_idx)]
    p = _run(p, step, f"merge-edge-{edge}")
    moves.extend(step)
    return moves, p


def split_power_relation(cspec: CorollarySpec, i: int) -> list[Move]:
    """Standalone compilation splitting edge i of the power presentation."""
    k = cspec.exponents[i - 1]
    if k < 2:
        raise ValueError(f"edge {i} has exponent {k}; only k >= 2 splits")
    p = power_chain_presentation(cspec)
    moves, _, _ = _compile_split(p, i - 1, cspec.u, k, f"x{i}", f"x{i + 1}", i)
    return moves


def normalize_exponents(
    cspec: CorollarySpec,
) -> tuple[LotSpec, list[tuple[str, list[Move]]]]:
    """Turn every edge exponent into 1 by splitting and merging edges.

    Returns the resulting chain spec (after the final renaming) and the
    named move blocks that transform the power presentation into the chain
    presentation of that spec.  All-zero exponent vectors contract to the
    two-generator identity chain; negative exponents are unsupported.
    """
    if any(k < 0 for k in cspec.exponents):
        raise NegativeExponent(f"exponents {list(cspec.exponents)} contain k < 0")
    p = power_chain_presentation(cspec)
    segments: list[tuple[str, list[Move]]] = []
    u = cspec.u
    all_zero = all(k == 0 for k in cspec.exponents)
    chain_names = ["x1"]
    host = "x1"
    cursor = 0  # relators of processed edges occupy indices < cursor
    for i in range(1, cspec.m):
        k = cspec.exponents[i - 1]
        right = f"x{i + 1}"
        if all_zero and i == cspec.m - 1:
            # keep one identification relator; it is the empty-conjugator edge
            chain_names.append(right)
            cursor += 1
        elif k == 0:
            moves, p = _compile_merge(p, cursor, host, right, i)
            segments.append((f"merge-edge-{i}", moves))
            u = substitute(u, {right: host})
        elif k == 1:
            chain_names.append(right)
            host = right
            cursor += 1
        else:
            moves, p, fresh = _compile_split(p, cursor, u, k, host, right, i)
            segments.append((f"split-edge-{i}", moves))
            chain_names.extend(fresh)
            chain_names.append(right)
            host = right
            cursor += k
    if list(p.generators) != chain_names:
        raise CompileError("normalized generator list is not in chain order")
    table = {
        old: f"x{n + 1}" for n, old in enumerate(chain_names) if old != f"x{n + 1}"
    }
    if table:
        moves = [Rename.of(table)]
        p = _run(p, moves, "relabel")
        segments.append(("relabel", moves))
    final_u = EMPTY if all_zero else substitute(u, table)
    lot = LotSpec(len(chain_names), final_u)
    if p != chain_presentation(lot):
        raise CompileError("normalization did not reach the chain presentation")
    return lot, segments


def certify_corollary(cspec: CorollarySpec) -> Certificate:
    """Normalize the exponents, then certify; one combined certificate."""
    lot, segments = normalize_exponents(cspec)
    inner = certify(lot)
    rounds = [
        StageSegment(0, stage, moves) for stage, moves in segments
    ] + inner.rounds
    return Certificate(
        FORMAT_VERSION, power_chain_presentation(cspec), rounds, inner.leaf, inner.final
    )
