"""Core election semantics shared by every solver.

Candidates are integers in [0, m).  A ballot is either a candidate index or
``ABSTAIN``.  The outcome of a ballot vector is the set of vote-count
maximizers, empty exactly when nobody cast a vote.  A voter's preferences are
an integer utility per candidate; ties among winners are valued at the exact
expected utility (a rational), and the empty outcome at negative infinity.

Casting any ballot carries a cost smaller than every gap between outcome
values, so payoffs are ordered lexicographically: outcome value first, and on
equal value the abstaining voter is strictly better off.  The cost itself is
never represented numerically.
"""

from __future__ import annotations

import functools
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence, Union

from .errors import ProfileError

#: Ballot value for a voter who casts no vote.
ABSTAIN = -1

#: Value of the empty outcome.  Comparisons against Fraction are exact.
NEG_INF = float("-inf")

Ballot = int
BallotVector = Sequence[int]
Outcome = frozenset
UtilityVector = Sequence[int]


class Tally(NamedTuple):
    counts: tuple
    cast: int


@dataclass(frozen=True)
class Profile:
    """An election: ``m`` candidates and one utility vector per voter."""

    m: int
    utilities: tuple
    candidate_names: Optional[tuple] = None
    voter_names: Optional[tuple] = None

    def __post_init__(self):
        try:
            # index() rejects floats instead of truncating them
            rows = tuple(tuple(operator.index(v) for v in u) for u in self.utilities)
        except TypeError as exc:
            raise ProfileError(f"utilities must be integers: {exc}") from exc
        object.__setattr__(self, "utilities", rows)
        if self.candidate_names is not None:
            object.__setattr__(self, "candidate_names", tuple(self.candidate_names))
        if self.voter_names is not None:
            object.__setattr__(self, "voter_names", tuple(self.voter_names))

    @property
    def n(self) -> int:
        return len(self.utilities)

    def candidate_name(self, j: int) -> str:
        if self.candidate_names is not None:
            return self.candidate_names[j]
        return f"c{j + 1}"

    def voter_name(self, i: int) -> str:
        if self.voter_names is not None:
            return self.voter_names[i]
        return f"v{i + 1}"


@functools.total_ordering
@dataclass(frozen=True)
class Payoff:
    """Lexicographic payoff: outcome value, then abstained-beats-voted.

    ``value`` is an exact Fraction or ``NEG_INF``.  Two payoffs with equal
    value differ exactly when their participation flags differ, in which case
    the non-voter wins.
    """

    value: Union[Fraction, float]
    voted: bool

    def _key(self):
        return (self.value, 0 if self.voted else 1)

    def __eq__(self, other) -> bool:
        return self._key() == other._key()

    def __lt__(self, other) -> bool:
        return self._key() < other._key()


def tally(ballots: BallotVector, m: int) -> Tally:
    """Count votes per candidate.  ``cast`` is the number of non-abstentions."""
    counts = [0] * m
    cast = 0
    for b in ballots:
        if b == ABSTAIN:
            continue
        if not 0 <= b < m:
            raise ProfileError(f"ballot {b} out of range for {m} candidates")
        counts[b] += 1
        cast += 1
    return Tally(tuple(counts), cast)


def outcome(t: Tally) -> Outcome:
    """Winners: the argmax set of the tally, empty iff nothing was cast."""
    if t.cast == 0:
        return frozenset()
    top = max(t.counts)
    return frozenset(j for j, c in enumerate(t.counts) if c == top)


def expected_utility(u: UtilityVector, o: Outcome):
    """Exact expected utility of an outcome under uniform tie-breaking."""
    if not o:
        return NEG_INF
    return Fraction(sum(u[j] for j in o), len(o))


def payoff(u: UtilityVector, o: Outcome, voted: bool) -> Payoff:
    return Payoff(expected_utility(u, o), voted)


def compare_rationals(p: int, q: int, r: int, s: int) -> int:
    """Sign of p/q - r/s by cross-multiplication; q, s must be positive."""
    lhs = p * s
    rhs = r * q
    if lhs > rhs:
        return 1
    if lhs < rhs:
        return -1
    return 0


def mask_of(winners: Iterable[int]) -> int:
    mask = 0
    for j in winners:
        mask |= 1 << j
    return mask


def winners_of_mask(mask: int) -> Outcome:
    out = []
    j = 0
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return frozenset(out)


def subset_sums(u: UtilityVector) -> list:
    """sums[mask] = total utility of the candidates in ``mask``."""
    m = len(u)
    sums = [0] * (1 << m)
    for mask in range(1, 1 << m):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + u[low.bit_length() - 1]
    return sums


def outcome_ranks(u: UtilityVector) -> list:
    """Rank every outcome mask by exact expected utility.

    Returns a table of length 2^m: ranks[mask] is the position of that
    outcome in the ascending order of expected utilities (so larger rank
    means strictly better), and ranks[0] = -1 places the empty outcome below
    everything.  Raises ProfileError if two outcomes tie, since every solver
    relies on the strict order.
    """
    m = len(u)
    sums = subset_sums(u)
    keyed = sorted(
        range(1, 1 << m), key=lambda mask: Fraction(sums[mask], _popcount(mask))
    )
    ranks = [0] * (1 << m)
    ranks[0] = -1
    prev = None
    for pos, mask in enumerate(keyed):
        val = Fraction(sums[mask], _popcount(mask))
        if prev is not None and val == prev:
            raise ProfileError(
                f"utilities {tuple(u)} value two outcomes equally "
                f"({winners_of_mask(keyed[pos - 1])} and {winners_of_mask(mask)})"
            )
        prev = val
        ranks[mask] = pos
    return ranks


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Violation:
    voter: int
    outcome_a: Outcome
    outcome_b: Outcome


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple

    def __bool__(self) -> bool:
        return self.ok


@functools.lru_cache(maxsize=4096)
def _multiset_outcomes_distinct(sorted_utils: tuple) -> bool:
    # Outcome distinctness only depends on the utility multiset: subsets of
    # candidates and subsets of positions range over the same value sets.
    m = len(sorted_utils)
    sums = subset_sums(sorted_utils)
    seen = set()
    for mask in range(1, 1 << m):
        val = Fraction(sums[mask], _popcount(mask))
        if val in seen:
            return False
        seen.add(val)
    return True


def _first_collision(u: UtilityVector):
    sums = subset_sums(u)
    keyed = sorted(
        range(1, 1 << len(u)), key=lambda mask: Fraction(sums[mask], _popcount(mask))
    )
    for a, b in zip(keyed, keyed[1:]):
        if compare_rationals(sums[a], _popcount(a), sums[b], _popcount(b)) == 0:
            return winners_of_mask(a), winners_of_mask(b)
    return None


def validate_profile(p: Profile, max_check_m: int = 20) -> ValidationReport:
    """Check that every voter values all nonempty outcomes distinctly.

    Structural problems (no candidates, no voters, ragged or negative
    utilities) raise ProfileError.  The exponential distinctness check is
    skipped for m > max_check_m.
    """
    if p.m < 1:
        raise ProfileError("election needs at least one candidate")
    if p.n < 1:
        raise ProfileError("election needs at least one voter")
    for i, u in enumerate(p.utilities):
        if len(u) != p.m:
            raise ProfileError(
                f"voter {i} has {len(u)} utilities, expected {p.m}"
            )
        if any(v < 0 for v in u):
            raise ProfileError(f"voter {i} has a negative utility")
    if p.m > max_check_m:
        return ValidationReport(True, ())
    violations = []
    for i, u in enumerate(p.utilities):
        if not _multiset_outcomes_distinct(tuple(sorted(u))):
            pair = _first_collision(u)
            violations.append(Violation(i, pair[0], pair[1]))
    return ValidationReport(not violations, tuple(violations))
