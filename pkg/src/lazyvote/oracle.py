"""Brute-force references the optimized solvers are validated against.

These trade speed for transparency: the PNE oracle literally enumerates all
(m+1)^n ballot vectors, and the game-tree oracle recurses over the full tree
comparing exact rationals by cross-multiplication, sharing no rank tables or
dynamic programming with the solvers it checks.
"""

from __future__ import annotations

from itertools import product
import numpy as np

from . import backend, model, simultaneous
from .errors import BoundExceeded
from .model import ABSTAIN, Profile
from .sequential import SpneResult, VotingOrder, normalize_order, normalize_tie_break
from .simultaneous import PneWitness

DEFAULT_MAX_PROFILES = 10 ** 7
DEFAULT_MAX_TREE_VOTERS = 10


def brute_force_pne(p: Profile, max_profiles: int = DEFAULT_MAX_PROFILES) -> list:
    """All PNE ballot vectors, in lexicographic enumeration order.

    Per-voter ballots enumerate abstain-first then candidates ascending, with
    voter 0 as the most significant position.  Under the numba backend the
    scan runs in the compiled kernel; the python backend checks every vector
    through ``simultaneous.check_pne`` instead, which keeps the two paths
    algorithmically independent.
    """
    total = (p.m + 1) ** p.n
    if total > max_profiles:
        raise BoundExceeded("ballot vector count (m+1)^n", total, max_profiles)
    ker = backend.kernels()
    if ker.name == "numba" and p.m <= 30:
        ranks = np.array([model.outcome_ranks(u) for u in p.utilities], np.int32)
        codes = ker.pne_scan(p.n, p.m, ranks)
        witnesses = []
        for code in codes.tolist():
            ballots = _decode(code, p.n, p.m)
            witnesses.append(
                PneWitness(ballots, model.outcome(model.tally(ballots, p.m)))
            )
        return witnesses
    witnesses = []
    for ballots in product((ABSTAIN, *range(p.m)), repeat=p.n):
        if simultaneous.check_pne(p, ballots).is_pne:
            witnesses.append(
                PneWitness(ballots, model.outcome(model.tally(ballots, p.m)))
            )
    return witnesses


def _decode(code: int, n: int, m: int) -> tuple:
    digits = []
    for _ in range(n):
        digits.append(code % (m + 1))
        code //= m + 1
    digits.reverse()
    return tuple(ABSTAIN if d == 0 else d - 1 for d in digits)


def tree_spne(
    p: Profile,
    order: VotingOrder = None,
    tie_break=None,
    max_voters: int = DEFAULT_MAX_TREE_VOTERS,
) -> SpneResult:
    """Unmemoized depth-first backward induction over the game tree."""
    if p.n > max_voters:
        raise BoundExceeded("tree oracle voters", p.n, max_voters)
    order = normalize_order(order, p.n)
    tie_break = normalize_tie_break(tie_break, p.m)
    actions = (ABSTAIN, *tie_break)
    counts = [0] * p.m
    visited = 0

    def beats(sum_a, size_a, voted_a, sum_b, size_b, voted_b) -> bool:
        # (expected value, then abstaining wins) with empty outcomes bottom
        if size_a == 0:
            return size_b == 0 and voted_b and not voted_a
        if size_b == 0:
            return True
        sign = model.compare_rationals(sum_a, size_a, sum_b, size_b)
        if sign != 0:
            return sign > 0
        return voted_b and not voted_a

    def solve(t: int, cast: int):
        nonlocal visited
        visited += 1
        if t == p.n:
            if cast == 0:
                return frozenset(), ()
            top = max(counts)
            return frozenset(j for j, c in enumerate(counts) if c == top), ()
        u = p.utilities[order[t]]
        best = None
        for b in actions:
            if b != ABSTAIN:
                counts[b] += 1
            reached, suffix = solve(t + 1, cast + (b != ABSTAIN))
            if b != ABSTAIN:
                counts[b] -= 1
            s = sum(u[j] for j in reached)
            voted = b != ABSTAIN
            if best is None or beats(s, len(reached), voted, *best[:3]):
                best = (s, len(reached), voted, reached, (b, *suffix))
        return best[3], best[4]

    winners, votes = solve(0, 0)
    return SpneResult(winners, votes, "tree", visited)
