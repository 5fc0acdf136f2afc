"""Schützenberger complexes of sparse one-relator inverse monoids.

Tools for the presentation M = Inv<X | w=1> with w a sparse word:
polygon-folding construction of the Schützenberger complex of 1, the
word problem, face types and vertex classes, the deterministic
pushdown automata for the identity and R-class languages, and the
geodesic automaton with its cone-type minimization.
"""

from .automata import (
    PDA,
    GeodesicFSA,
    MinimizedDFA,
    PDARun,
    build_geodesic_fsa,
    build_pda,
    minimize,
    pda_run,
    stack_oracle,
)
from .complexes import (
    Complex,
    Face,
    import_complex,
    init_complex,
)
from .errors import (
    AlreadySaturated,
    IncompleteTable,
    NotSparse,
    PolyfoldError,
    ResourceLimit,
    StaleDistances,
    StructureViolation,
    WordParseError,
)
from .estimators import GeodesicRecognizer, WordProblemSolver
from .facetypes import (
    BASE_CLASS,
    ClassTable,
    FaceType,
    VertexClass,
    build_class_table,
    enumerate_classes,
    face_type,
    import_class_table,
    vertex_class,
)
from .solver import (
    IDENTITY,
    NOT_IDENTITY,
    NOT_IN_RCLASS,
    WpVerdict,
    in_r_class,
    is_identity,
    solve,
    solve_on,
    trace,
)
from .validation import check_positive_int, check_relator, check_words
from .words import (
    CyclicSubword,
    SparseReport,
    cyclic_conjugate,
    cyclic_subword,
    free_reduce,
    is_cyclically_reduced,
    is_freely_reduced,
    is_primitive,
    is_sparse,
    parse_word,
    word_to_str,
)

__all__ = [
    "AlreadySaturated",
    "BASE_CLASS",
    "ClassTable",
    "Complex",
    "CyclicSubword",
    "Face",
    "FaceType",
    "GeodesicFSA",
    "GeodesicRecognizer",
    "IDENTITY",
    "IncompleteTable",
    "MinimizedDFA",
    "NOT_IDENTITY",
    "NOT_IN_RCLASS",
    "NotSparse",
    "PDA",
    "PDARun",
    "PolyfoldError",
    "ResourceLimit",
    "SparseReport",
    "StaleDistances",
    "StructureViolation",
    "VertexClass",
    "WordParseError",
    "WordProblemSolver",
    "WpVerdict",
    "build_class_table",
    "build_geodesic_fsa",
    "build_pda",
    "check_positive_int",
    "check_relator",
    "check_words",
    "cyclic_conjugate",
    "cyclic_subword",
    "enumerate_classes",
    "face_type",
    "free_reduce",
    "import_class_table",
    "import_complex",
    "in_r_class",
    "init_complex",
    "is_cyclically_reduced",
    "is_freely_reduced",
    "is_identity",
    "is_primitive",
    "is_sparse",
    "minimize",
    "parse_word",
    "pda_run",
    "solve",
    "solve_on",
    "stack_oracle",
    "trace",
    "vertex_class",
    "word_to_str",
]

__version__ = "0.1.0"
