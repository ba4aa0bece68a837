"""Constructions and exhaustive certificates for multipartite Ramsey bounds
on complete bipartite graphs K_{2,m}."""

from .errors import (
    AsymmetricMatrix,
    BudgetExceeded,
    DegenerateInput,
    DeletionTooLarge,
    HypothesisFailed,
    InternalAssertionFailure,
    InvalidInput,
    NotStronglyRegular,
    RamseyForgeError,
    UnsupportedField,
    WrongResidue,
)
from .gf import FieldElement, FieldSpec, field_create, field_mul, quad_char
from .hadamard import (
    AlphaProfile,
    PairPartition,
    SignMatrix,
    alpha_of,
    delete_general,
    delete_symmetric,
    equiv_transform,
    is_alpha_hadamard,
    pair_partition,
    paley_double,
    paley_one_hadamard,
    sylvester,
)
from .srg import (
    Graph,
    NeighborhoodPartition,
    SrgParams,
    complement_params,
    named_graph,
    neighborhood_partition,
    paley_graph,
    srg_params,
    theta,
    theta_ratio,
)
from .coloring import (
    AvoidanceCertificate,
    MultipartiteColoring,
    build_psi,
    certify_avoidance,
    delta,
    exhaustive_ramsey,
    find_mono_biclique,
)
from .bounds import (
    BoundReport,
    Scenario,
    counting_gate,
    exact_set_ramsey,
    family_report,
    psi_bounds,
    set_ramsey_upper,
    size_ramsey_upper,
)

__version__ = "0.1.0"
