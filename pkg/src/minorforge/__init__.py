"""minorforge: constructive graph-minor extraction with certificates.

Everything here computes witnesses, not just verdicts: minor models as
explicit branch sets, path families with endpoint contracts, separations
with both sides, and exact-rational density checks throughout.
"""

from .build import (
    HittingSetResult,
    bipartite_random_contraction,
    build_dense_minor,
    build_dense_minor_bipartite,
    build_dense_minor_in_dense_graph,
    connect_within,
    hitting_set_check,
    sample_hitting_set,
)
from .coloring import (
    chromatic_number_exact,
    is_chromatic_separable,
    two_coloring,
)
from .config import Caps, active_caps
from .connectivity import vertex_connectivity, vertex_connectivity_with_cutset
from .flow import pair_vertex_cut
from .errors import (
    AttemptsExhaustedError,
    ConstructionFailedError,
    DensityNotMetError,
    DisconnectedHostError,
    ExtractionFailedError,
    HypothesisViolatedError,
    InfeasibleError,
    InsufficientError,
    InternalInfeasibleError,
    InvalidBipartitionError,
    InvalidModelError,
    LinkageFailedError,
    MinorforgeError,
    NeighborsUnavailableError,
    NotAnEdgeError,
    NotDisjointError,
    NotRootedError,
    OrderTooSmallError,
    ParseError,
    PathTooLongError,
    TooLargeError,
    UnknownVertexError,
    WovennessFailedError,
)
from .extract import (
    ExtractionTrace,
    dense_connected_minor,
    dense_connected_minor_with_trace,
    disjoint_k_connected_collection,
    k_connected_subgraph,
    mader_min_degree_minor,
    mader_min_degree_minor_with_trace,
    peel_dense_subset,
    replay_extraction,
)
from .graph import (
    Graph,
    average_degree,
    complement_max_degree,
    complete_graph,
    contract_edge,
    contract_edge_mapped,
    edge_density,
    graph_from_edge_list,
    greedy_dense_subgraph,
    induced_subgraph,
    is_eps_t_dense,
    mask_of,
    mask_vertices,
    random_bipartite,
    random_graph,
)
from .graphio import (
    parse_fraction,
    parse_graph,
    parse_model,
    serialize_graph,
    serialize_model,
    to_dot,
)
from .model import (
    MinorModel,
    ModelReport,
    anticomplete,
    compose_models,
    contract_model,
    is_attached_to,
    is_core,
    is_rooted_at,
    is_tangent,
    pattern_graph,
    require_valid,
    sub_model,
    validate_model,
)
from .params import (
    DensityParams,
    degree_target,
    power_hypothesis,
    undominated_bound,
)
from .paths import (
    PathFamily,
    Separation,
    audit_path_family,
    combine_redundant,
    container,
    doubled_menger,
    find_linkage,
    knit_connect,
    menger,
    ordered_path_through,
    require_paths,
)
from .rng import Rng, derive_seed
from .rooted import (
    attached_model_search,
    find_separation_avoiding,
    rooted_from_minor,
)
from .woven import (
    WovenReport,
    WovenTriple,
    check_wovenness,
    realize_woven_from_dense_minor,
    weave,
)

__version__ = "0.1.0"
