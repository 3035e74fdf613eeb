"""Instance construction: rank-derived utilities, three-candidate voter
archetypes, seeded random profiles, and the exact-cover election reduction
used as a hard-instance factory.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from . import model
from .errors import BoundExceeded, ProfileError
from .model import Profile

#: Utility patterns (top, middle, bottom) for the two three-candidate
#: archetypes.  A top-bottom voter prefers a first/third tie to their middle
#: candidate alone ((8+2)/2 > 3); a centrist prefers the opposite
#: ((8+1)/2 < 5).
TOP_BOTTOM_PATTERN = (8, 3, 2)
CENTRIST_PATTERN = (8, 5, 1)


def ranking_from_letters(letters: str, names: Sequence[str] = None) -> tuple:
    """Parse a ranking like "ACB" into candidate indices, best first."""
    if names is None:
        names = [chr(ord("A") + j) for j in range(len(letters))]
    index = {name: j for j, name in enumerate(names)}
    try:
        order = tuple(index[ch] for ch in letters)
    except KeyError as exc:
        raise ProfileError(f"unknown candidate letter {exc.args[0]!r}") from exc
    _require_permutation(order, len(letters))
    return order


def _require_permutation(order, m):
    if sorted(order) != list(range(m)):
        raise ProfileError(f"{order} is not a permutation of 0..{m - 1}")


@functools.lru_cache(maxsize=64)
def _power_utilities_ok(m: int) -> bool:
    # Distinctness of the power pattern is permutation-invariant, so one
    # check per m covers every ranking.
    canonical = tuple((m + 1) ** (m - j) for j in range(1, m + 1))
    return model._multiset_outcomes_distinct(tuple(sorted(canonical)))


def rank_to_utilities(ranking) -> tuple:
    """Utilities (m+1)^(m-j) for the j-th most preferred candidate (1-based j).

    The powers grow fast enough that every pair of distinct outcomes gets a
    distinct expected utility; that property is re-verified (once per m) and
    a failure raises rather than emitting an unusable vector.
    """
    ranking = tuple(ranking)
    m = len(ranking)
    _require_permutation(ranking, m)
    if not _power_utilities_ok(m):
        raise ProfileError(
            f"power utilities for m={m} unexpectedly value two outcomes equally"
        )
    utilities = [0] * m
    for pos, candidate in enumerate(ranking):
        utilities[candidate] = (m + 1) ** (m - 1 - pos)
    return tuple(utilities)


def three_candidate_utilities(ranking, kind: str) -> tuple:
    """Place a three-candidate archetype pattern onto a ranking."""
    ranking = tuple(ranking)
    if len(ranking) != 3:
        raise ProfileError("archetypes are defined for exactly 3 candidates")
    _require_permutation(ranking, 3)
    patterns = {"top-bottom": TOP_BOTTOM_PATTERN, "centrist": CENTRIST_PATTERN}
    if kind not in patterns:
        raise ProfileError(f"kind must be one of {sorted(patterns)}, not {kind!r}")
    pattern = patterns[kind]
    utilities = [0, 0, 0]
    for pos, candidate in enumerate(ranking):
        utilities[candidate] = pattern[pos]
    return tuple(utilities)


def ranked_profile(rankings: Iterable, candidate_names=None) -> Profile:
    """Profile whose voters hold rank-derived power utilities.

    Rankings may be letter strings ("ACB") or index tuples.
    """
    parsed = []
    for r in rankings:
        if isinstance(r, str):
            r = ranking_from_letters(r, candidate_names)
        parsed.append(tuple(r))
    if not parsed:
        raise ProfileError("need at least one voter")
    m = len(parsed[0])
    if candidate_names is None and m <= 26:
        candidate_names = tuple(chr(ord("A") + j) for j in range(m))
    return Profile(
        m,
        tuple(rank_to_utilities(r) for r in parsed),
        tuple(candidate_names) if candidate_names else None,
    )


def random_profile(n: int, m: int, seed: int) -> Profile:
    """n uniformly random rankings through rank_to_utilities; seed-deterministic."""
    if n < 1 or m < 1:
        raise ProfileError("need n >= 1 voters and m >= 1 candidates")
    rng = random.Random(seed)
    rows = []
    for _ in range(n):
        ranking = list(range(m))
        rng.shuffle(ranking)
        rows.append(rank_to_utilities(ranking))
    names = tuple(chr(ord("A") + j) for j in range(m)) if m <= 26 else None
    return Profile(m, tuple(rows), names)


def two_candidate_profile(types) -> Profile:
    """Profile for an A/B voter string like "ABABA" (A prefers candidate 0)."""
    rows = []
    for ch in types:
        if ch in ("A", 0, True):
            rows.append(rank_to_utilities((0, 1)))
        elif ch in ("B", 1, False):
            rows.append(rank_to_utilities((1, 0)))
        else:
            raise ProfileError(f"voter type must be A or B, not {ch!r}")
    if not rows:
        raise ProfileError("need at least one voter")
    return Profile(2, tuple(rows), ("A", "B"))


def two_equilibrium_profile() -> Profile:
    """Four voters, three candidates, two equilibrium outcomes.

    Everyone ranks A first, but B and C split the remaining support evenly,
    so both "one vote for A" and the B/C tie are equilibria.  Also serves as
    the canonical yes-instance for the exact-cover reduction shortcut.
    """
    return Profile(
        3,
        ((5, 2, 1), (5, 2, 1), (5, 1, 2), (5, 1, 2)),
        ("A", "B", "C"),
        ("v1", "v2", "v3", "v4"),
    )


@dataclass(frozen=True)
class X3cInstance:
    """Exact-cover-by-3-sets input: ground 0..ground_size-1 and 3-element sets."""

    ground_size: int
    sets: tuple

    def __post_init__(self):
        if self.ground_size < 3 or self.ground_size % 3 != 0:
            raise ProfileError(
                f"ground size {self.ground_size} must be a positive multiple of 3"
            )
        normalized = []
        for s in self.sets:
            s = tuple(sorted(s))
            if len(s) != 3 or len(set(s)) != 3:
                raise ProfileError(f"set {s} must contain exactly 3 distinct elements")
            if not all(0 <= g < self.ground_size for g in s):
                raise ProfileError(f"set {s} has an element outside the ground set")
            normalized.append(s)
        if len(set(normalized)) != len(normalized):
            raise ProfileError("duplicate sets are not allowed")
        if not normalized:
            raise ProfileError("need at least one set")
        object.__setattr__(self, "sets", tuple(normalized))


def x3c_thickness(x: X3cInstance) -> tuple:
    """Per-element cover thickness: how many sets contain each element."""
    f = [0] * x.ground_size
    for s in x.sets:
        for g in s:
            f[g] += 1
    return tuple(f)


@dataclass(frozen=True)
class ReductionOutput:
    """Election produced from an exact-cover instance.

    For non-shortcut outputs, candidates 0..N'-1 stand for (renumbered)
    ground elements and the following M' for the sets, with m = N' + M' and
    n = 2N' + 3M'.  ``renumbering[new] = original element label``; gadget
    elements carry labels >= the original ground size.
    """

    profile: Profile
    d_candidates: range
    e_candidates: range
    renumbering: tuple
    gadget_added: bool
    shortcut: bool


def x3c_reduce(x: X3cInstance) -> ReductionOutput:
    """Build an election that has a PNE iff the instance has an exact cover.

    Uniform thickness 1 instances are trivially coverable, so they map to the
    fixed two-equilibrium demo election.  Uniform thickness > 1 instances
    first get three fresh elements plus the set of them (which preserves the
    answer and breaks uniformity).  Elements are then renumbered by
    non-increasing thickness, and the election gets one element-candidate per
    ground element (two dedicated top votes each) and one set-candidate per
    set (three top votes each), with all remaining ranking positions filled
    in index order.
    """
    thickness = x3c_thickness(x)
    if all(f == 1 for f in thickness):
        return ReductionOutput(
            two_equilibrium_profile(), range(0), range(0), (), False, True
        )
    ground = list(range(x.ground_size))
    sets = list(x.sets)
    gadget_added = False
    if len(set(thickness)) == 1:
        fresh = [x.ground_size, x.ground_size + 1, x.ground_size + 2]
        ground.extend(fresh)
        sets.append(tuple(fresh))
        gadget_added = True
        thickness = thickness + (1, 1, 1)
    # renumber by non-increasing thickness, stable on ties
    renumbering = tuple(sorted(ground, key=lambda g: (-thickness[g], g)))
    new_index = {g: i for i, g in enumerate(renumbering)}
    n_elems = len(ground)
    n_sets = len(sets)
    m = n_elems + n_sets
    d_range = range(0, n_elems)
    e_range = range(n_elems, m)

    rankings = []
    voter_names = []
    for i in range(n_elems):
        tail_d = [d for d in d_range if d != i]
        ranking = tuple([i] + tail_d + list(e_range))
        for copy in (1, 2):
            rankings.append(ranking)
            voter_names.append(f"u{i + 1}.{copy}")
    for j, s in enumerate(sets):
        e_j = n_elems + j
        other_e = [e for e in e_range if e != e_j]
        for t in sorted(new_index[g] for g in s):
            tail_d = [d for d in d_range if d != t]
            rankings.append(tuple([e_j, t] + tail_d + other_e))
            voter_names.append(f"w{j + 1}.{t + 1}")
    names = tuple(
        [f"d{i + 1}" for i in range(n_elems)] + [f"e{j + 1}" for j in range(n_sets)]
    )
    profile = Profile(
        m,
        tuple(rank_to_utilities(r) for r in rankings),
        names,
        tuple(voter_names),
    )
    return ReductionOutput(
        profile, d_range, e_range, renumbering, gadget_added, False
    )


def x3c_solve_bruteforce(
    x: X3cInstance, max_ground: int = 12, max_sets: int = 12
) -> bool:
    """Decide exact coverability by trying every N/3-subset of the sets."""
    if x.ground_size > max_ground:
        raise BoundExceeded("exact-cover ground size", x.ground_size, max_ground)
    if len(x.sets) > max_sets:
        raise BoundExceeded("exact-cover set count", len(x.sets), max_sets)
    need = x.ground_size // 3
    everything = frozenset(range(x.ground_size))
    for chosen in combinations(x.sets, need):
        union = set()
        for s in chosen:
            union.update(s)
        if len(union) == x.ground_size and union == everything:
            return True
    return False
