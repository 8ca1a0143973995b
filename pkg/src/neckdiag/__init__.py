"""Necklace-diagram toolkit.

Cyclic words over four stone types whose stone-wise PSL(2,Z) monodromy
multiplies to the identity, with enumeration up to rotation/mirror
symmetry, the necklace calculus (sums, flip-flops, metamorphoses),
refinements, and algebraicity screening.
"""

from .psl2 import (
    Decoration,
    DyadicMat,
    NonIntegralError,
    ProjMat,
    conjugate_to_psl,
    decoration_matrix,
)
from .diagrams import (
    CanonicalMode,
    LengthMismatchError,
    NecklaceDiagram,
    ParseError,
    Stone,
    StoneCounts,
    TopInvariants,
    canonical_word,
    stone_monodromy,
    word_monodromy,
)
from .enumeration import (
    EnumQuery,
    HalfProductTable,
    ResourceLimitError,
    brute_force_count,
    count_by_profile,
    enumerate_classes,
    iter_valid_words,
    mitm_count,
    transfer_count,
)
from .calculus import (
    HarshTable,
    NoMatchError,
    RewriteRule,
    RuleTag,
    TableMissError,
    apply_rewrite,
    decompose,
    default_catalog,
    default_harsh_table,
    derive_rewrite_catalog,
    harsh_sum,
    mild_sum,
    reachable,
)
from .refine import (
    Mark,
    RefineConvention,
    RefinedDiagram,
    RefinedStone,
    UnknownProfileError,
    calibrate,
    count_refined_classes,
    has_real_section,
    refinements,
)
from .screen import (
    DEFAULT_CLASSIFIER,
    ScreenVerdict,
    SegmentClassifier,
    algebraicity_obstructed,
    essential_count,
)
from .dessin import (
    DessinMap,
    DessinReport,
    EdgeKind,
    MalformedMapError,
    VertexColor,
    parse_dessin,
    validate_dessin,
)

__version__ = "0.1.0"
