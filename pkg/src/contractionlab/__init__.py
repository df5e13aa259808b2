"""Graph-contraction workbench: exact solvers, constructive reductions and
class recognizers for edge-contraction decision problems, built so each
reduction's correctness can be verified empirically at desk scale."""

from .classes import CLASS_IDS, brute_force_oracle, recognize
from .errors import GuardExceeded, InvariantError, ParseError
from .graphs import (
    Graph,
    ProperColoring,
    complement,
    connected_components,
    contract,
    chromatic_number,
    clique_number,
    greedy_proper_coloring,
    induced_subgraph,
    is_clique,
    square,
)
from .harness import ChainReport, random_graph, run_chain, verify_hop
from .problems import (
    Assignment,
    CliqueContractionInstance,
    CrossMatchingInstance,
    FContractionInstance,
    HadwigerInstance,
    ListInstance,
    StructuredInstance,
    ThreeColoringInstance,
)
from .reductions import (
    Grouping,
    build_grouping,
    cc_to_hadwiger,
    check_solution_shape,
    cross_matching_to_structured,
    lsh_to_lsi_stream,
    lsi_to_cross_matching,
    reduce_3col_to_lsh,
    structured_to_class,
)
from .solvers import (
    compute_noise_set,
    solve_3coloring,
    solve_clique_contraction,
    solve_cross_matching,
    solve_f_contraction,
    solve_hadwiger,
    solve_list_embedding,
    solve_structured,
)
from .textio import parse_graph_text, parse_instance, serialize_graph_text, serialize_instance

__version__ = "0.1.0"
