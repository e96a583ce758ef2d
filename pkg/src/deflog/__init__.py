"""deflog: a toolkit for propositional defeasible logic.

Parse defeasible theories, compute their definite and defeasible
conclusions, apply the conclusion-preserving transformations (normal form,
defeater elimination, superiority elimination), classify outcomes and check
conclusion equivalence.
"""

from .analysis import (
    Outcome,
    PairStatus,
    PairVerdict,
    classify,
    classify_pair,
    dump_failure,
    equivalent,
    gen_theory,
    pair_table,
)
from .core import (
    Atom,
    DeflogError,
    GroundingError,
    Literal,
    NormalFormReport,
    PreconditionError,
    Rule,
    RuleKind,
    Sigma,
    Tag,
    TaggedLiteral,
    Theory,
    TheoryError,
    WellFormedReport,
    check_normal,
    check_well_formed,
    complement,
    ground,
    rules_for,
    theory_union,
)
from .engine import (
    ConclusionSet,
    Derivation,
    DerivationLine,
    Mode,
    conclusions,
    prove,
    replay,
)
from .parser import ParseError, parse, print_theory
from .transform import TransformError, TransformReport, elim_dft, elim_sup, normal, pipeline

__version__ = "0.1.0"

__all__ = [
    "Atom",
    "ConclusionSet",
    "DeflogError",
    "Derivation",
    "DerivationLine",
    "GroundingError",
    "Literal",
    "Mode",
    "NormalFormReport",
    "Outcome",
    "PairStatus",
    "PairVerdict",
    "ParseError",
    "PreconditionError",
    "Rule",
    "RuleKind",
    "Sigma",
    "Tag",
    "TaggedLiteral",
    "Theory",
    "TheoryError",
    "TransformError",
    "TransformReport",
    "WellFormedReport",
    "check_normal",
    "check_well_formed",
    "classify",
    "classify_pair",
    "complement",
    "conclusions",
    "dump_failure",
    "elim_dft",
    "elim_sup",
    "equivalent",
    "gen_theory",
    "ground",
    "normal",
    "pair_table",
    "parse",
    "pipeline",
    "print_theory",
    "prove",
    "replay",
    "rules_for",
    "theory_union",
]
