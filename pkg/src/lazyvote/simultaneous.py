"""Pure-Nash-equilibrium analysis of simultaneous plurality voting.

Existence and construction follow the two-part characterization: a singleton
outcome is an equilibrium exactly when its candidate is everyone's top choice
(one voter casts the only vote), and a tie set C* of size k works exactly when
k divides n, each member of C* is the within-C* favorite of exactly n/k
voters, and every voter prefers the full tie to any other member of C*
winning alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple, Optional

from . import model
from .errors import ProfileError
from .model import ABSTAIN, Profile


@dataclass(frozen=True)
class TopChoicePartition:
    """Voters grouped by their favorite candidate inside a tie set."""

    tie_set: frozenset
    groups: dict

    def group_of(self, candidate: int) -> frozenset:
        return self.groups[candidate]


@dataclass(frozen=True)
class PneWitness:
    ballots: tuple
    outcome: frozenset


class PneCheck(NamedTuple):
    is_pne: bool
    voter: Optional[int]
    better_ballot: Optional[int]


def check_pne(p: Profile, ballots) -> PneCheck:
    """Test the no-profitable-deviation condition, returning a witness on failure.

    Voters are scanned in ascending order and alternative ballots
    abstain-first then candidates ascending, so the witness is deterministic.
    """
    ballots = tuple(ballots)
    if len(ballots) != p.n:
        raise ProfileError(f"{len(ballots)} ballots for {p.n} voters")
    t = model.tally(ballots, p.m)
    current = model.outcome(t)
    counts = list(t.counts)
    for i, b in enumerate(ballots):
        u = p.utilities[i]
        here = model.payoff(u, current, b != ABSTAIN)
        for alt in (ABSTAIN, *range(p.m)):
            if alt == b:
                continue
            if b != ABSTAIN:
                counts[b] -= 1
            if alt != ABSTAIN:
                counts[alt] += 1
            cast = t.cast - (b != ABSTAIN) + (alt != ABSTAIN)
            there = model.outcome(model.Tally(tuple(counts), cast))
            if alt != ABSTAIN:
                counts[alt] -= 1
            if b != ABSTAIN:
                counts[b] += 1
            if model.payoff(u, there, alt != ABSTAIN) > here:
                return PneCheck(False, i, alt)
    return PneCheck(True, None, None)


def is_pne(p: Profile, ballots) -> bool:
    return check_pne(p, ballots).is_pne


def unanimous_top(p: Profile) -> Optional[int]:
    """The candidate ranked strictly first by every voter, if any."""
    first = p.utilities[0]
    top = max(range(p.m), key=lambda j: first[j])
    for u in p.utilities:
        if any(u[j] >= u[top] for j in range(p.m) if j != top):
            return None
    return top


def check_tie_set(p: Profile, tie_set) -> Optional[TopChoicePartition]:
    """Test one candidate subset against the tie characterization.

    Passes iff the subset's size divides the voter count, each member is the
    within-subset favorite of an equal share of voters, and every voter
    prefers the full tie to any other member winning alone.  When each member
    holds exactly one vote and candidates outside the subset exist, a voter
    could also swap their vote to an outsider and create a new tie, so each
    voter must additionally rank their own candidate above every outsider.
    """
    tie = frozenset(tie_set)
    if not tie <= set(range(p.m)):
        raise ProfileError(f"tie set {sorted(tie_set)} not a subset of candidates")
    k = len(tie)
    if k < 2:
        raise ProfileError("tie sets have at least two candidates")
    if p.n % k != 0:
        return None
    members = sorted(tie)
    groups = {c: set() for c in members}
    for i, u in enumerate(p.utilities):
        favorite = max(members, key=lambda j: u[j])
        groups[favorite].add(i)
    if any(len(g) != p.n // k for g in groups.values()):
        return None
    outside = [c for c in range(p.m) if c not in tie] if p.n == k else []
    for c, voters in groups.items():
        for i in voters:
            u = p.utilities[i]
            tie_sum = sum(u[j] for j in members)
            for other in members:
                if other == c:
                    continue
                sign = model.compare_rationals(tie_sum, k, u[other], 1)
                if sign == 0:
                    raise ProfileError(
                        f"voter {i} values the tie {members} and candidate "
                        f"{other} equally; the profile violates outcome "
                        "distinctness"
                    )
                if sign < 0:
                    return None
            for out in outside:
                # swapping i's vote to the outsider replaces c with out in the
                # tie; preferring that swap is a profitable deviation, and the
                # swap comparison reduces to u[c] vs u[out]
                sign = model.compare_rationals(u[c], 1, u[out], 1)
                if sign == 0:
                    raise ProfileError(
                        f"voter {i} values candidates {c} and {out} equally; "
                        "the profile violates outcome distinctness"
                    )
                if sign < 0:
                    return None
    return TopChoicePartition(tie, {c: frozenset(g) for c, g in groups.items()})


def find_pne(p: Profile) -> Optional[PneWitness]:
    """Construct one pure Nash equilibrium, or None when none exists.

    The unanimous-top construction is tried first (lowest-index voter casts
    the single vote); otherwise candidate subsets are scanned by size then
    lexicographically and the first passing tie set is realized by each voter
    voting for their group's candidate.
    """
    top = unanimous_top(p)
    if top is not None:
        ballots = tuple(top if i == 0 else ABSTAIN for i in range(p.n))
        return PneWitness(ballots, frozenset({top}))
    for k in range(2, p.m + 1):
        if p.n % k != 0:
            continue
        for subset in combinations(range(p.m), k):
            part = check_tie_set(p, subset)
            if part is None:
                continue
            ballots = [ABSTAIN] * p.n
            for c, voters in part.groups.items():
                for i in voters:
                    ballots[i] = c
            return PneWitness(tuple(ballots), part.tie_set)
    return None


def enumerate_pne_outcomes(p: Profile) -> set:
    """All outcomes achievable in some pure Nash equilibrium."""
    outcomes = set()
    top = unanimous_top(p)
    if top is not None:
        outcomes.add(frozenset({top}))
    for k in range(2, p.m + 1):
        if p.n % k != 0:
            continue
        for subset in combinations(range(p.m), k):
            if check_tie_set(p, subset) is not None:
                outcomes.add(frozenset(subset))
    return outcomes
