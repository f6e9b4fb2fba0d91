"""Exact simulation machinery for the three formulations of the Ising model.

The spins world lives on nodes, the subgraphs (high-temperature
expansion) and random-cluster worlds live on edges.  This package
provides exact single-draw conversions between all three, cluster-update
Markov chains built from them, perfect sampling by monotone coupling
from the past, and a brute-force enumeration oracle that verifies every
distributional claim on small graphs.
"""

__version__ = "0.1.0"

from .cftp import (
    CftpRun,
    CftpSchedule,
    cftp_rc_run,
    cftp_rc_sample,
    heat_bath_rc_step,
    perfect_subs_sample,
)
from .chains import ChainState, ChainTrace, initial_state, run_chain, sw_classic_step, sw_subgraphs_step
from .errors import (
    CapExceededError,
    GraphFormatError,
    InvalidConfigError,
    InvalidParameterError,
    IsingError,
    NoCoalescenceError,
    UnknownStatisticError,
    UnsupportedFieldError,
)
from .exact import (
    EvenCountReport,
    ExactTables,
    IdentityReport,
    KernelMatrix,
    WorldTable,
    check_even_subgraph_count,
    check_rc_normalizer,
    check_relate_identity,
    empirical_distribution,
    enumerate_world,
    exact_kernel_matrix,
    exact_tables,
    kernel_stationarity_error,
    sample_from_table,
    tv_distance,
)
from .graph import (
    FieldReduction,
    WeightedGraph,
    beta_to_lambda,
    beta_to_p,
    lambda_to_beta,
    p_to_beta,
    reduce_unidirectional_field,
)
from .graphio import graph_to_json_dict, graph_to_text, load_graph, read_graph_json, read_graph_text, save_graph
from .reductions import rc_to_spins, rc_to_subs, spins_to_rc, spins_to_subs, subs_to_rc, subs_to_spins
from .rng import RngStream
from .worlds import (
    ClusterPartition,
    RcConfig,
    SpinConfig,
    SubgraphConfig,
    clusters,
    config_from_string,
    config_to_string,
    degree_parity,
    weight_rc,
    weight_rc_log,
    weight_spins,
    weight_spins_field,
    weight_spins_field_log,
    weight_spins_log,
    weight_subs,
    weight_subs_log,
)

__all__ = [
    "__version__",
    "CapExceededError",
    "ChainState",
    "ChainTrace",
    "CftpRun",
    "CftpSchedule",
    "ClusterPartition",
    "EvenCountReport",
    "ExactTables",
    "FieldReduction",
    "GraphFormatError",
    "IdentityReport",
    "InvalidConfigError",
    "InvalidParameterError",
    "IsingError",
    "KernelMatrix",
    "NoCoalescenceError",
    "RcConfig",
    "RngStream",
    "SpinConfig",
    "SubgraphConfig",
    "UnknownStatisticError",
    "UnsupportedFieldError",
    "WeightedGraph",
    "WorldTable",
    "beta_to_lambda",
    "beta_to_p",
    "cftp_rc_run",
    "cftp_rc_sample",
    "check_even_subgraph_count",
    "check_rc_normalizer",
    "check_relate_identity",
    "clusters",
    "config_from_string",
    "config_to_string",
    "degree_parity",
    "empirical_distribution",
    "enumerate_world",
    "exact_kernel_matrix",
    "exact_tables",
    "graph_to_json_dict",
    "graph_to_text",
    "heat_bath_rc_step",
    "initial_state",
    "kernel_stationarity_error",
    "lambda_to_beta",
    "load_graph",
    "p_to_beta",
    "perfect_subs_sample",
    "rc_to_spins",
    "rc_to_subs",
    "read_graph_json",
    "read_graph_text",
    "reduce_unidirectional_field",
    "run_chain",
    "sample_from_table",
    "save_graph",
    "spins_to_rc",
    "spins_to_subs",
    "subs_to_rc",
    "subs_to_spins",
    "sw_classic_step",
    "sw_subgraphs_step",
    "tv_distance",
    "weight_rc",
    "weight_rc_log",
    "weight_spins",
    "weight_spins_field",
    "weight_spins_field_log",
    "weight_spins_log",
    "weight_subs",
    "weight_subs_log",
]
