"""Exact arithmetic for splice diagrams of graph links in S^3: Dedekind sums,
the invariant S(Gamma), Tristram-Levine signature functions and the
average signature."""
from .dedekind import dedekind_sum, dedekind_sum_fast, reciprocity_defect, sawtooth
from .errors import DiagramParseError, DomainError, InvariantFailure, SpliceCompatibilityError
from .graph import (
    Edge,
    SpliceDiagram,
    ValidationReport,
    Vertex,
    linking_number,
    load_diagram,
    make_diagram,
    parse_diagram,
    serialize,
    validate,
    vertex_multiplicity,
    vertex_weight,
)
from .kernels import BACKEND
from .ops import (
    CutResult,
    build_family,
    completion,
    cut_edge,
    decompose,
    elementary,
    generate_random,
    iterated_torus,
    splice,
    star,
    torus,
)
from .sgamma import SGammaBreakdown, TheoremReport, check_main_theorem, s_gamma
from .signatures import (
    StepFunction,
    average_elementary,
    average_routes,
    average_signature,
    equivariant_signature,
    family2_average_oracle,
    signature_function,
)

__version__ = "0.1.0"
