"""Certificate data model, canonical JSON serialization, and the
independent verifier.

The verifier replays elementary moves through the kernel, checks the final
presentation and the leaf side conditions, and records invariant-factor
diagnostics at round boundaries.  It tolerates hostile input: every failure
lands in the report, nothing is raised.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .errors import LotcertError, MoveError, SchemaError
from .moves import (
    MOVE_TAGS,
    AddGenerator,
    Conjugate,
    Destabilize,
    ElimGenerator,
    Invert,
    Move,
    MultiplyRight,
    Rename,
    Stabilize,
    Swap,
    apply,
)
from .presentations import (
    LotSpec,
    Presentation,
    abelian_matrix,
    chain_presentation,
    nonunit_factors,
    smith_invariant_factors,
)
from .words import Word, decompose, format_word, parse_word

FORMAT_VERSION = "1"

LEAF_ONE_RELATOR = "one-relator"
LEAF_C1 = "c1"

LEAF_CITATIONS = {
    LEAF_ONE_RELATOR: "Lyndon, via [LS77]",
    LEAF_C1: "claim (C1), [IK01]",
}


@dataclass
class Leaf:
    """Terminal record of a certificate: what the final presentation is and
    which cited result covers it."""

    kind: str
    citation: str
    m: int
    conjugator: Word
    final_presentation: Presentation | None = None


@dataclass
class StageSegment:
    """One named stage of one round: a move block plus optional annotations
    (witness commentary the verifier ignores)."""

    round_index: int
    stage: str
    moves: list[Move]
    annotations: dict | None = None


@dataclass
class Certificate:
    version: str
    initial: Presentation
    rounds: list[StageSegment]
    leaf: Leaf
    final: Presentation

    def all_moves(self) -> list[Move]:
        return [mv for seg in self.rounds for mv in seg.moves]

    def round_count(self) -> int:
        return max((seg.round_index for seg in self.rounds), default=0)


@dataclass
class VerificationReport:
    accepted: bool
    failing_step: int | None = None
    failure: str | None = None
    snf_trace: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    strict: bool = False

    def summary(self) -> str:
        lines = [f"accepted: {'yes' if self.accepted else 'no'}"]
        if self.failure is not None:
            where = "" if self.failing_step is None else f" at step {self.failing_step}"
            lines.append(f"failure{where}: {self.failure}")
        for entry in self.snf_trace:
            factors = " ".join(str(d) for d in entry["factors"]) or "-"
            lines.append(
                f"snf {entry['label']}: factors [{factors}] free-rank {entry['free_rank']}"
            )
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# serialization


def _presentation_to_json(p: Presentation) -> dict:
    return {
        "gens": list(p.generators),
        "rels": [format_word(r) for r in p.relators],
    }


def _move_to_json(mv: Move) -> dict:
    tag = MOVE_TAGS[type(mv)]
    if isinstance(mv, Invert):
        return {"op": tag, "i": mv.i}
    if isinstance(mv, MultiplyRight):
        return {"op": tag, "i": mv.i, "j": mv.j}
    if isinstance(mv, Conjugate):
        return {"op": tag, "i": mv.i, "w": format_word(mv.w)}
    if isinstance(mv, Swap):
        return {"op": tag, "i": mv.i, "j": mv.j}
    if isinstance(mv, Stabilize):
        return {"op": tag, "g": mv.g}
    if isinstance(mv, Destabilize):
        return {"op": tag, "g": mv.g, "i": mv.i}
    if isinstance(mv, ElimGenerator):
        return {"op": tag, "g": mv.g, "i": mv.i}
    if isinstance(mv, AddGenerator):
        return {
            "op": tag,
            "g": mv.g,
            "w": format_word(mv.relator),
            "rel_at": mv.rel_at,
            "gen_at": mv.gen_at,
        }
    if isinstance(mv, Rename):
        return {"op": tag, "map": {old: new for old, new in mv.mapping}}
    raise TypeError(f"unknown move {mv!r}")


def serialize(cert: Certificate) -> bytes:
    """Canonical JSON document; byte-stable given identical input."""
    doc: dict[str, Any] = {
        "version": cert.version,
        "initial": _presentation_to_json(cert.initial),
        "rounds": [],
        "leaf": {
            "kind": cert.leaf.kind,
            "citation": cert.leaf.citation,
            "m": cert.leaf.m,
            "conjugator": format_word(cert.leaf.conjugator),
        },
        "final": _presentation_to_json(cert.final),
    }
    for seg in cert.rounds:
        entry: dict[str, Any] = {
            "round": seg.round_index,
            "stage": seg.stage,
            "moves": [_move_to_json(mv) for mv in seg.moves],
        }
        if seg.annotations is not None:
            entry["annotations"] = seg.annotations
        doc["rounds"].append(entry)
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


def _expect(cond: bool, message: str, loc: str) -> None:
    if not cond:
        raise SchemaError(message, loc)


def _get(obj: dict, key: str, loc: str) -> Any:
    _expect(isinstance(obj, dict), "expected an object", loc)
    _expect(key in obj, f"missing field {key!r}", loc)
    return obj[key]


def _get_int(obj: dict, key: str, loc: str) -> int:
    v = _get(obj, key, loc)
    _expect(type(v) is int, f"field {key!r} must be an integer", f"{loc}.{key}")
    return v


def _get_str(obj: dict, key: str, loc: str) -> str:
    v = _get(obj, key, loc)
    _expect(type(v) is str, f"field {key!r} must be a string", f"{loc}.{key}")
    return v


def _word_from_json(text: str, loc: str) -> Word:
    try:
        return parse_word(text)
    except LotcertError as e:
        raise SchemaError(f"bad word: {e}", loc) from e


def _presentation_from_json(obj: Any, loc: str) -> Presentation:
    gens = _get(obj, "gens", loc)
    rels = _get(obj, "rels", loc)
    _expect(isinstance(gens, list), "gens must be a list", f"{loc}.gens")
    _expect(isinstance(rels, list), "rels must be a list", f"{loc}.rels")
    for k, g in enumerate(gens):
        _expect(type(g) is str, "generator names must be strings", f"{loc}.gens[{k}]")
    words = tuple(
        _word_from_json(
            r if type(r) is str else _schema_fail(f"{loc}.rels[{k}]"),
            f"{loc}.rels[{k}]",
        )
        for k, r in enumerate(rels)
    )
    try:
        return Presentation(tuple(gens), words)
    except (ValueError, LotcertError) as e:
        raise SchemaError(f"invalid presentation: {e}", loc) from e


def _schema_fail(loc: str):
    raise SchemaError("expected a string", loc)


def _move_from_json(obj: Any, loc: str) -> Move:
    op = _get_str(obj, "op", loc)
    if op == "invert":
        return Invert(_get_int(obj, "i", loc))
    if op == "mul_right":
        return MultiplyRight(_get_int(obj, "i", loc), _get_int(obj, "j", loc))
    if op == "conjugate":
        return Conjugate(
            _get_int(obj, "i", loc), _word_from_json(_get_str(obj, "w", loc), f"{loc}.w")
        )
    if op == "swap":
        return Swap(_get_int(obj, "i", loc), _get_int(obj, "j", loc))
    if op == "stabilize":
        return Stabilize(_get_str(obj, "g", loc))
    if op == "destabilize":
        return Destabilize(_get_str(obj, "g", loc), _get_int(obj, "i", loc))
    if op == "elim_gen":
        return ElimGenerator(_get_str(obj, "g", loc), _get_int(obj, "i", loc))
    if op == "add_gen":
        return AddGenerator(
            _get_str(obj, "g", loc),
            _word_from_json(_get_str(obj, "w", loc), f"{loc}.w"),
            _get_int(obj, "rel_at", loc),
            _get_int(obj, "gen_at", loc),
        )
    if op == "rename":
        table = _get(obj, "map", loc)
        _expect(isinstance(table, dict), "map must be an object", f"{loc}.map")
        for old, new in table.items():
            _expect(
                type(old) is str and type(new) is str,
                "map entries must be strings",
                f"{loc}.map",
            )
        return Rename(tuple(sorted(table.items())))
    raise SchemaError(f"unknown move tag {op!r}", f"{loc}.op")


def deserialize(data: bytes | str) -> Certificate:
    """Parse and structurally validate a certificate document."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise SchemaError(f"not utf-8: {e}") from e
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid json: {e}") from e
    _expect(isinstance(doc, dict), "top level must be an object", "document")
    version = _get_str(doc, "version", "document")
    _expect(version == FORMAT_VERSION, f"unsupported version {version!r}", "version")
    initial = _presentation_from_json(_get(doc, "initial", "document"), "initial")
    final = _presentation_from_json(_get(doc, "final", "document"), "final")
    rounds_json = _get(doc, "rounds", "document")
    _expect(isinstance(rounds_json, list), "rounds must be a list", "rounds")
    segments: list[StageSegment] = []
    for k, seg in enumerate(rounds_json):
        loc = f"rounds[{k}]"
        round_index = _get_int(seg, "round", loc)
        stage = _get_str(seg, "stage", loc)
        moves_json = _get(seg, "moves", loc)
        _expect(isinstance(moves_json, list), "moves must be a list", f"{loc}.moves")
        moves = [
            _move_from_json(mv, f"{loc}.moves[{n}]") for n, mv in enumerate(moves_json)
        ]
        annotations = seg.get("annotations")
        if annotations is not None:
            _expect(
                isinstance(annotations, dict),
                "annotations must be an object",
                f"{loc}.annotations",
            )
        segments.append(StageSegment(round_index, stage, moves, annotations))
    leaf_json = _get(doc, "leaf", "document")
    kind = _get_str(leaf_json, "kind", "leaf")
    _expect(kind in LEAF_CITATIONS, f"unknown leaf kind {kind!r}", "leaf.kind")
    leaf = Leaf(
        kind=kind,
        citation=_get_str(leaf_json, "citation", "leaf"),
        m=_get_int(leaf_json, "m", "leaf"),
        conjugator=_word_from_json(
            _get_str(leaf_json, "conjugator", "leaf"), "leaf.conjugator"
        ),
        final_presentation=final,
    )
    return Certificate(version, initial, segments, leaf, final)


# ---------------------------------------------------------------------------
# verification


def _snf_entry(label: str, p: Presentation) -> dict:
    factors = smith_invariant_factors(abelian_matrix(p))
    return {
        "label": label,
        "factors": factors,
        "free_rank": len(p.generators) - len(factors),
        "nonunit": list(nonunit_factors(factors)),
    }


def verify(cert: Certificate, strict: bool = False) -> VerificationReport:
    """Replay every move through the kernel and check all gates.

    Gates: each move legal, final presentation reproduced byte-for-byte,
    leaf rebuilds the final presentation and satisfies its side condition.
    Invariant-factor constancy at round boundaries is a diagnostic unless
    ``strict`` is set.  Witness annotations are ignored.
    """
    report = VerificationReport(accepted=False, strict=strict)
    p = cert.initial
    report.snf_trace.append(_snf_entry("initial", p))
    step = 0
    for k, seg in enumerate(cert.rounds):
        for mv in seg.moves:
            try:
                p = apply(p, mv)
            except MoveError as e:
                report.failing_step = step
                report.failure = f"move rejected ({e.kind}): {e}"
                return report
            step += 1
        nxt = cert.rounds[k + 1].round_index if k + 1 < len(cert.rounds) else None
        if nxt != seg.round_index:
            report.snf_trace.append(_snf_entry(f"after round {seg.round_index}", p))
    if p != cert.final:
        report.failure = "final presentation mismatch after replay"
        return report
    leaf = cert.leaf
    try:
        rebuilt = chain_presentation(LotSpec(leaf.m, leaf.conjugator))
    except (ValueError, LotcertError) as e:
        report.failure = f"leaf spec invalid: {e}"
        return report
    if rebuilt != cert.final:
        report.failure = "leaf does not rebuild the final presentation"
        return report
    if leaf.final_presentation is not None and leaf.final_presentation != cert.final:
        report.failure = "leaf final presentation differs from certificate final"
        return report
    if leaf.kind == LEAF_ONE_RELATOR:
        if leaf.m != 2:
            report.failure = "one-relator leaf must have chain size 2"
            return report
    elif leaf.kind == LEAF_C1:
        try:
            split = decompose(leaf.conjugator, leaf.m)
        except LotcertError as e:
            report.failure = f"leaf conjugator invalid: {e}"
            return report
        if split is not None:
            report.failure = "c1 leaf conjugator admits a split"
            return report
    else:
        report.failure = f"unknown leaf kind {leaf.kind!r}"
        return report
    if any(not rel for rel in cert.final.relators):
        report.notes.append("final presentation contains an empty relator")
    first = report.snf_trace[0]["nonunit"]
    drift = [e["label"] for e in report.snf_trace if e["nonunit"] != first]
    if drift:
        msg = f"non-unit invariant factors drift at: {', '.join(drift)}"
        if strict:
            report.failure = msg
            return report
        report.notes.append(msg)
    report.accepted = True
    return report
