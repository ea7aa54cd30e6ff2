"""Certified Andrews-Curtis reduction of chain-conjugation presentations.

The package builds machine-checkable certificates showing that a chain
presentation (every relator conjugates one generator to the next by a fixed
word) reduces, through elementary moves only, to a presentation covered by
a cited asphericity result; an independent kernel replays and checks them.
"""

from .certificates import (
    Certificate,
    FORMAT_VERSION,
    LEAF_C1,
    LEAF_CITATIONS,
    LEAF_ONE_RELATOR,
    Leaf,
    StageSegment,
    VerificationReport,
    deserialize,
    serialize,
    verify,
)
from .compiler import (
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
from .errors import (
    ChainMismatch,
    CompileError,
    ForeignGenerator,
    IndexOutOfRange,
    LotcertError,
    MoveError,
    NegativeExponent,
    NotDecomposable,
    ReplayError,
    SchemaError,
    SelfReference,
    WordSyntaxError,
)
from .moves import (
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
    replay,
)
from .pipeline import (
    CorollarySpec,
    RoundPlan,
    certify,
    certify_corollary,
    normalize_exponents,
    power_chain_presentation,
    reduce_once,
    split_power_relation,
    swap_identity_witness,
)
from .presentations import (
    LotSpec,
    Presentation,
    abelian_matrix,
    chain_presentation,
    chain_relator,
    nonunit_factors,
    smith_invariant_factors,
    split_chain_presentation,
    split_conjugator,
)
from .words import (
    EMPTY,
    Split,
    Word,
    base_index,
    concat,
    conjugate,
    decompose,
    format_word,
    free_reduce,
    invert,
    letter,
    parse_word,
    power,
    reindex,
    shift_up,
    substitute,
    support,
)

__version__ = "0.1.0"
