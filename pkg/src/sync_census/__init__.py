"""Exact census of synchronizing colorings of k-out-regular digraphs."""

from .analysis import (
    SccDecomposition,
    SinkReduction,
    is_aperiodic,
    is_primitive,
    is_strongly_connected,
    scc_decomposition,
    sink_reduction,
)
from .census import (
    BudgetError,
    CensusResult,
    census,
    census_naive,
    count_distinct_automata,
    count_via_sink,
    digraph_weight,
    enumerate_distinct_automata,
    is_totally_synchronizing,
)
from .digraph import (
    Automaton,
    Digraph,
    ParseError,
    digraph_from_json,
    digraph_from_lists,
    digraph_of_automaton,
    digraph_to_json,
    format_digraph,
    multiplicity_profile,
    parse_digraph,
    validate,
    validate_automaton,
)
from .experiments import (
    GapTable,
    RandomModelConfig,
    StatsRecord,
    gap_distribution,
    iter_random_digraphs,
    random_experiment,
    sample_random_digraph,
    scan_class,
    table1_stats,
    table2_counts,
)
from .families import FamilySpec, build_family, cerny_digraph, expected_ratio, g30, gnk, hdnk
from .isoenum import (
    SimpleGraph,
    canonical_key,
    digraph_from_key,
    enumerate_primitive_classes,
    enumerate_primitive_digraphs,
    enumerate_simple_graphs,
    orient_and_multiply,
    shuffle_digraph,
)
from .sync import (
    apply_word,
    is_synchronizing,
    reset_threshold,
    shortest_reset_word,
)

__version__ = "0.1.0"
