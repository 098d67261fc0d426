"""Graph pebbling: exact solvers, pebbling numbers and hardness-reduction generators."""

from .core import (
    Disconnected,
    Graph,
    IllegalAt,
    InsufficientPebbles,
    InvalidDistribution,
    InvalidGraph,
    NotAnEdge,
    PebblingError,
    Signature,
    apply_move,
    apply_sequence,
    balance,
    complete_graph,
    cycle_graph,
    path_graph,
    signature_of,
    star_graph,
    weight,
)
from .numbers import cover_number_brute, gamma, pi, pi_hat, pi_r
from .orderability import extract_ordering, is_orderable, normalize_witness, orderable
from .solvers import (
    BudgetExceeded,
    SearchBudget,
    SearchReport,
    annihilation,
    coverable,
    greedy_tree_max,
    is_determinative,
    max_reachable,
    nonrepetitive_reachable,
    reachable,
)

__version__ = "0.1.0"
