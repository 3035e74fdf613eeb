"""Subgame-perfect equilibrium computation for sequential plurality voting.

Voters move one per round in a fixed order, observing all earlier ballots.
Two solvers compute the equilibrium on-path vote vector and outcome: a
history-table backward induction over all (m+1)^n partial ballot sequences,
and a count-state dynamic program whose states are (votes so far, round).
Both share one tie-break: among payoff-equal actions the mover abstains if
possible, otherwise votes for the earliest candidate in the tie-break order
(ascending index by default), so their results are identical vote by vote.

Two-candidate elections additionally get a closed-form round-by-round rule
(vote exactly when your side's remaining support ties or trails the other
side's by one) and the order constructions that realize any winner mandate
between 1 and (number of minority voters + 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

import numpy as np

from . import backend, model
from .errors import BoundExceeded, ProfileError
from .model import ABSTAIN, Profile

#: History solver limit on (m+1)^n.
DEFAULT_MAX_STATES = 4 ** 14

#: Count solver limit on n * (n+1)^m table entries.
DEFAULT_MAX_TABLE = 10 ** 8

#: Outcome masks and per-voter rank tables cover 2^m outcomes.
MAX_MASK_CANDIDATES = 30

VotingOrder = Sequence[int]


@dataclass(frozen=True)
class SpneResult:
    """On-path play of the computed equilibrium."""

    outcome: frozenset
    votes: tuple
    engine: str
    states: int
    tables: Optional["HistoryTables"] = field(default=None, compare=False)


class HistoryTables:
    """Winner/action memo tables of the history solver, keyed by history.

    Histories are tuples of ballots in round order (candidate index or
    ABSTAIN).  ``winners`` gives the equilibrium outcome reached from the
    history; ``action`` the mover's equilibrium ballot at it.  Intended for
    debugging and inspection, so lookups favor clarity over speed.
    """

    def __init__(self, winners, offsets, profile, tie_break, order):
        self._winners = winners
        self._offsets = offsets
        self._profile = profile
        self._tie_break = tie_break
        self._order = order

    def _code(self, history) -> int:
        if len(history) >= len(self._order):
            raise ProfileError("history must be shorter than the round count")
        inverse = {c: a + 1 for a, c in enumerate(self._tie_break)}
        code = 0
        for b in history:
            code = code * (self._profile.m + 1) + (0 if b == ABSTAIN else inverse[b])
        return code

    def winners(self, history) -> frozenset:
        history = tuple(history)
        mask = self._winners[self._offsets[len(history)] + self._code(history)]
        return _unpermute_mask(int(mask), self._tie_break)

    def _continuation(self, history) -> frozenset:
        if len(history) < len(self._order):
            return self.winners(history)
        return model.outcome(model.tally(history, self._profile.m))

    def action(self, history) -> int:
        """The mover's equilibrium ballot at the history (recomputed argmax)."""
        history = tuple(history)
        mover = self._order[len(history)]
        u = self._profile.utilities[mover]
        best_ballot, best = None, None
        for b in (ABSTAIN, *self._tie_break):
            reached = self._continuation(history + (b,))
            value = model.payoff(u, reached, b != ABSTAIN)
            if best is None or value > best:
                best_ballot, best = b, value
        return best_ballot

    def __len__(self) -> int:
        return len(self._winners)


def normalize_order(order, n) -> tuple:
    if order is None:
        return tuple(range(n))
    order = tuple(order)
    if sorted(order) != list(range(n)):
        raise ProfileError(f"order {order} is not a permutation of {n} voters")
    return order


def normalize_tie_break(tie_break, m) -> tuple:
    if tie_break is None:
        return tuple(range(m))
    tie_break = tuple(tie_break)
    if sorted(tie_break) != list(range(m)):
        raise ProfileError(
            f"tie break {tie_break} is not a permutation of {m} candidates"
        )
    return tie_break


def _permuted_rank_array(p: Profile, tie_break) -> np.ndarray:
    """Per-voter outcome ranks with candidates relabeled to tie-break order."""
    if p.m > MAX_MASK_CANDIDATES:
        raise BoundExceeded("candidate count for mask tables", p.m, MAX_MASK_CANDIDATES)
    rows = []
    for u in p.utilities:
        relabeled = tuple(u[c] for c in tie_break)
        rows.append(model.outcome_ranks(relabeled))
    return np.array(rows, dtype=np.int32)


def _unpermute_mask(mask: int, tie_break) -> frozenset:
    return frozenset(tie_break[j] for j in range(len(tie_break)) if mask >> j & 1)


def spne_history(
    p: Profile,
    order: VotingOrder = None,
    tie_break=None,
    max_states: int = DEFAULT_MAX_STATES,
    keep_tables: bool = False,
) -> SpneResult:
    """Equilibrium play via backward induction over full histories."""
    order = normalize_order(order, p.n)
    tie_break = normalize_tie_break(tie_break, p.m)
    states = (p.m + 1) ** p.n
    if states > max_states:
        raise BoundExceeded("history state space (m+1)^n", states, max_states)
    ranks = _permuted_rank_array(p, tie_break)
    ker = backend.kernels()
    root_mask, actions, n_entries, winners, offsets = ker.history_solve(
        np.array(order, dtype=np.int64), p.m, ranks
    )
    votes = tuple(
        ABSTAIN if a == 0 else tie_break[a - 1] for a in actions.tolist()
    )
    tables = None
    if keep_tables:
        tables = HistoryTables(winners, offsets, p, tie_break, order)
    return SpneResult(
        _unpermute_mask(int(root_mask), tie_break),
        votes,
        "history",
        int(n_entries),
        tables,
    )


class CountStateSolver:
    """Backward induction over (per-candidate counts, round) states.

    The mover's best response depends on the history only through the tally,
    so one table per round suffices.  ``winners_after(counts, t)`` exposes the
    equilibrium outcome of any subgame, which also serves continuation
    queries (what happens after a forced deviation).
    """

    def __init__(
        self,
        p: Profile,
        order: VotingOrder = None,
        tie_break=None,
        max_entries: int = DEFAULT_MAX_TABLE,
    ):
        self.profile = p
        self.order = normalize_order(order, p.n)
        self.tie_break = normalize_tie_break(tie_break, p.m)
        n, m = p.n, p.m
        if m > MAX_MASK_CANDIDATES:
            raise BoundExceeded(
                "candidate count for mask tables", m, MAX_MASK_CANDIDATES
            )
        worst = (n + 1) ** m * max(n, 1)
        if worst > max_entries:
            raise BoundExceeded("count table n*(n+1)^m", worst, max_entries)
        ranks = [
            model.outcome_ranks(tuple(u[c] for c in self.tie_break))
            for u in p.utilities
        ]
        # winners[t][counts] and actions[t][counts], counts in relabeled space
        self.winners = [dict() for _ in range(n + 1)]
        self.actions = [dict() for _ in range(n)]
        self.states = 0
        for counts in _count_states(m, n):
            self.winners[n][counts] = _winners_mask(counts)
            self.states += 1
        for t in range(n - 1, -1, -1):
            mover = self.order[t]
            rank_row = ranks[mover]
            nxt = self.winners[t + 1]
            here_w = self.winners[t]
            here_a = self.actions[t]
            for counts in _count_states(m, t):
                # abstain first; a vote must strictly improve the rank
                best_a = 0
                best_mask = nxt[counts]
                best_rank = rank_row[best_mask]
                for a in range(1, m + 1):
                    bumped = list(counts)
                    bumped[a - 1] += 1
                    child = nxt[tuple(bumped)]
                    r = rank_row[child]
                    if r > best_rank:
                        best_rank = r
                        best_a = a
                        best_mask = child
                here_w[counts] = best_mask
                here_a[counts] = best_a
                self.states += 1

    def result(self) -> SpneResult:
        counts = tuple([0] * self.profile.m)
        votes = []
        for t in range(self.profile.n):
            a = self.actions[t][counts]
            if a == 0:
                votes.append(ABSTAIN)
            else:
                votes.append(self.tie_break[a - 1])
                bumped = list(counts)
                bumped[a - 1] += 1
                counts = tuple(bumped)
        mask = self.winners[0][tuple([0] * self.profile.m)]
        return SpneResult(
            _unpermute_mask(mask, self.tie_break),
            tuple(votes),
            "counts",
            self.states,
        )

    def winners_after(self, counts, t: int) -> frozenset:
        """Equilibrium outcome of the round-t subgame after a given tally."""
        relabeled = tuple(counts[c] for c in self.tie_break)
        return _unpermute_mask(self.winners[t][relabeled], self.tie_break)


def _winners_mask(counts) -> int:
    if not any(counts):
        return 0
    top = max(counts)
    mask = 0
    for j, c in enumerate(counts):
        if c == top:
            mask |= 1 << j
    return mask


def _count_states(m: int, total: int):
    """All count vectors of length m with sum at most total."""
    counts = [0] * m

    def rec(pos: int, left: int):
        if pos == m:
            yield tuple(counts)
            return
        for v in range(left + 1):
            counts[pos] = v
            yield from rec(pos + 1, left - v)
        counts[pos] = 0

    yield from rec(0, total)


def spne_counts(
    p: Profile,
    order: VotingOrder = None,
    tie_break=None,
    max_entries: int = DEFAULT_MAX_TABLE,
) -> SpneResult:
    """Equilibrium play via the count-state dynamic program."""
    return CountStateSolver(p, order, tie_break, max_entries).result()


class TwoCandidatePrediction(NamedTuple):
    """Running tallies and remaining-supporter counts before a round."""

    p_a: int
    p_b: int
    f_a: int
    f_b: int


def prefers_a(u) -> bool:
    """Whether a two-candidate voter prefers candidate 0 (A) to 1 (B)."""
    if u[0] == u[1]:
        raise ProfileError("two-candidate voter with equal utilities")
    return u[0] > u[1]


def two_candidate_ballot(pred: TwoCandidatePrediction, mover_is_a: bool) -> int:
    """Closed-form equilibrium ballot for one round of a two-candidate race.

    The mover votes exactly when their side's cast-plus-future support equals
    the other side's, or trails it by one; in every other case they abstain.
    """
    if mover_is_a:
        own = pred.p_a + pred.f_a
        opp = pred.p_b + pred.f_b
        choice = 0
    else:
        own = pred.p_b + pred.f_b
        opp = pred.p_a + pred.f_a
        choice = 1
    if own == opp or own == opp - 1:
        return choice
    return ABSTAIN


def two_candidate_play(p: Profile, order: VotingOrder = None) -> SpneResult:
    """Simulate the closed-form strategies round by round (m = 2 only)."""
    if p.m != 2:
        raise ProfileError(f"two-candidate play needs m = 2, got m = {p.m}")
    order = normalize_order(order, p.n)
    types_a = [prefers_a(p.utilities[i]) for i in order]
    future_a = sum(types_a)
    future_b = p.n - future_a
    cast_a = cast_b = 0
    votes = []
    for t in range(p.n):
        if types_a[t]:
            future_a -= 1
        else:
            future_b -= 1
        pred = TwoCandidatePrediction(cast_a, cast_b, future_a, future_b)
        ballot = two_candidate_ballot(pred, types_a[t])
        votes.append(ballot)
        if ballot == 0:
            cast_a += 1
        elif ballot == 1:
            cast_b += 1
    final = model.outcome(model.tally(votes, 2))
    return SpneResult(final, tuple(votes), "closed-form", p.n)


def mandate_permutation(n_a: int, n_b: int, k: int) -> tuple:
    """Voting order giving the majority candidate exactly k votes.

    Voters 0..n_a-1 are A-voters and n_a..n_a+n_b-1 are B-voters (as built by
    ``instances.two_candidate_profile``).  The order opens with a block of
    n_a - n_b + k - 1 A-voters, then all B-voters, then the remaining
    A-voters; exactly the last k of the opening block end up voting.
    """
    if n_b < 0 or n_a <= n_b:
        raise ProfileError("need more A-voters than B-voters")
    if not 1 <= k <= n_b + 1:
        raise ProfileError(f"mandate {k} outside [1, {n_b + 1}]")
    lead = n_a - n_b + k - 1
    a_voters = list(range(n_a))
    b_voters = list(range(n_a, n_a + n_b))
    return tuple(a_voters[:lead] + b_voters + a_voters[lead:])


def winner_mandate(
    p: Profile,
    order: VotingOrder = None,
    tie_break=None,
    max_states: int = DEFAULT_MAX_STATES,
    max_entries: int = DEFAULT_MAX_TABLE,
):
    """Equilibrium outcome plus the vote count of the winners."""
    if (p.m + 1) ** p.n <= max_states:
        res = spne_history(p, order, tie_break, max_states)
    else:
        res = spne_counts(p, order, tie_break, max_entries)
    counts = model.tally(res.votes, p.m).counts
    return res.outcome, max(counts[j] for j in res.outcome)
