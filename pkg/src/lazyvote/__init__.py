"""Exact equilibrium solvers for plurality voting with abstentions.

Voters may abstain to save an arbitrarily small voting cost, so payoffs are
ordered by outcome value first and participation second.  The package decides
existence of and constructs pure Nash equilibria of simultaneous elections,
computes subgame-perfect equilibrium play of sequential elections, and ships
brute-force oracles, instance generators, and an exact-cover reduction as a
hard-instance factory.
"""

from .errors import BoundExceeded, ProfileError
from .model import (
    ABSTAIN,
    NEG_INF,
    Payoff,
    Profile,
    Tally,
    ValidationReport,
    Violation,
    compare_rationals,
    expected_utility,
    outcome,
    outcome_ranks,
    payoff,
    tally,
    validate_profile,
)
from .simultaneous import (
    PneCheck,
    PneWitness,
    TopChoicePartition,
    check_pne,
    check_tie_set,
    enumerate_pne_outcomes,
    find_pne,
    is_pne,
    unanimous_top,
)
from .sequential import (
    CountStateSolver,
    SpneResult,
    TwoCandidatePrediction,
    mandate_permutation,
    prefers_a,
    spne_counts,
    spne_history,
    two_candidate_ballot,
    two_candidate_play,
    winner_mandate,
)
from .oracle import brute_force_pne, tree_spne
from .instances import (
    ReductionOutput,
    X3cInstance,
    ranked_profile,
    ranking_from_letters,
    random_profile,
    rank_to_utilities,
    three_candidate_utilities,
    two_candidate_profile,
    two_equilibrium_profile,
    x3c_reduce,
    x3c_solve_bruteforce,
    x3c_thickness,
)

__version__ = "1.0.0"

__all__ = [
    "ABSTAIN",
    "NEG_INF",
    "BoundExceeded",
    "CountStateSolver",
    "Payoff",
    "PneCheck",
    "PneWitness",
    "Profile",
    "ProfileError",
    "ReductionOutput",
    "SpneResult",
    "Tally",
    "TopChoicePartition",
    "TwoCandidatePrediction",
    "ValidationReport",
    "Violation",
    "X3cInstance",
    "brute_force_pne",
    "check_pne",
    "check_tie_set",
    "compare_rationals",
    "enumerate_pne_outcomes",
    "expected_utility",
    "find_pne",
    "is_pne",
    "mandate_permutation",
    "outcome",
    "outcome_ranks",
    "payoff",
    "prefers_a",
    "ranked_profile",
    "ranking_from_letters",
    "random_profile",
    "rank_to_utilities",
    "spne_counts",
    "spne_history",
    "tally",
    "three_candidate_utilities",
    "tree_spne",
    "two_candidate_ballot",
    "two_candidate_play",
    "two_candidate_profile",
    "two_equilibrium_profile",
    "unanimous_top",
    "validate_profile",
    "winner_mandate",
    "x3c_reduce",
    "x3c_solve_bruteforce",
    "x3c_thickness",
]
