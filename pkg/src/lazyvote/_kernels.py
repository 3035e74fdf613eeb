"""Hot inner loops, written to run either interpreted or under numba.

Both kernels operate on precomputed per-voter outcome-rank tables
(``ranks[i, mask]`` = position of outcome ``mask`` in voter i's ascending
preference order, with the empty outcome at -1), so they only ever compare
small integers.  Payoffs are compared lexicographically: rank first, then
not-having-voted wins; actions are scanned abstain-first and candidates
ascending, and only strict improvements replace the incumbent, which realizes
the global tie-break order.

Ballot encoding inside kernels: action 0 is abstain, action a >= 1 is a vote
for candidate a - 1.  Ballot vectors are base-(m+1) codes with round 0 (or
voter 0) as the most significant digit, so code order is the lexicographic
enumeration order.

The functions are deliberately self-contained (no helper calls, loops over
plain arrays) so that ``numba.njit`` accepts them unchanged; see backend.py
for the dispatch.
"""

import numpy as np


def pne_scan(n, m, ranks):
    """Return the base-(m+1) codes of all ballot vectors that are PNE.

    Scans every (m+1)^n ballot vector in lexicographic order, maintaining the
    tally incrementally, and keeps the vectors where no single voter has a
    strictly better alternative ballot.
    """
    acts = m + 1
    total = 1
    for _ in range(n):
        total *= acts
    digits = np.zeros(n, dtype=np.int64)
    counts = np.zeros(m, dtype=np.int64)
    cast = 0
    found = np.empty(64, dtype=np.int64)
    n_found = 0
    for code in range(total):
        # outcome of the current vector
        if cast == 0:
            base_mask = 0
        else:
            mx = 0
            for j in range(m):
                if counts[j] > mx:
                    mx = counts[j]
            base_mask = 0
            for j in range(m):
                if counts[j] == mx:
                    base_mask |= 1 << j
        is_eq = True
        for i in range(n):
            d = digits[i]
            cur_rank = ranks[i, base_mask]
            cur_notvoted = 1 if d == 0 else 0
            for a in range(acts):
                if a == d:
                    continue
                new_cast = cast
                if d > 0:
                    new_cast -= 1
                if a > 0:
                    new_cast += 1
                if new_cast == 0:
                    new_mask = 0
                else:
                    mx2 = 0
                    for j in range(m):
                        c = counts[j]
                        if d > 0 and j == d - 1:
                            c -= 1
                        if a > 0 and j == a - 1:
                            c += 1
                        if c > mx2:
                            mx2 = c
                    new_mask = 0
                    for j in range(m):
                        c = counts[j]
                        if d > 0 and j == d - 1:
                            c -= 1
                        if a > 0 and j == a - 1:
                            c += 1
                        if c == mx2:
                            new_mask |= 1 << j
                new_rank = ranks[i, new_mask]
                new_notvoted = 1 if a == 0 else 0
                if new_rank > cur_rank or (
                    new_rank == cur_rank and new_notvoted > cur_notvoted
                ):
                    is_eq = False
                    break
            if not is_eq:
                break
        if is_eq:
            if n_found == found.shape[0]:
                grown = np.empty(found.shape[0] * 2, dtype=np.int64)
                grown[:n_found] = found[:n_found]
                found = grown
            found[n_found] = code
            n_found += 1
        # odometer: advance the last voter's ballot, carrying leftward
        pos = n - 1
        while pos >= 0:
            old = digits[pos]
            if old > 0:
                counts[old - 1] -= 1
                cast -= 1
            if old + 1 < acts:
                digits[pos] = old + 1
                counts[old] += 1
                cast += 1
                break
            digits[pos] = 0
            pos -= 1
    return found[:n_found].copy()


def history_solve(order, m, ranks):
    """Backward induction over all histories of the sequential game.

    ``order[t]`` is the voter moving in round t.  Fills one winner table slot
    per history (round-0 history first), then replays the equilibrium path.
    Returns (root winner mask, per-round actions, number of table entries,
    winner table, per-depth offsets).
    """
    n = order.shape[0]
    acts = m + 1
    offsets = np.empty(n, dtype=np.int64)
    off = 0
    size = 1
    for i in range(n):
        offsets[i] = off
        off += size
        size *= acts
    total = off
    winners = np.zeros(total, dtype=np.int32)

    # deepest level: the last mover compares terminal outcomes directly
    depth = n - 1
    mover = order[depth]
    digits = np.zeros(depth + 1, dtype=np.int64)  # +1 pads the n == 1 case
    counts = np.zeros(m, dtype=np.int64)
    cast = 0
    level = 1
    for _ in range(depth):
        level *= acts
    base = offsets[depth]
    for code in range(level):
        best_mask = 0
        best_rank = np.int32(-2)
        best_notvoted = 0
        for a in range(acts):
            new_cast = cast + (1 if a > 0 else 0)
            if new_cast == 0:
                new_mask = 0
            else:
                mx = 0
                for j in range(m):
                    c = counts[j]
                    if a > 0 and j == a - 1:
                        c += 1
                    if c > mx:
                        mx = c
                new_mask = 0
                for j in range(m):
                    c = counts[j]
                    if a > 0 and j == a - 1:
                        c += 1
                    if c == mx:
                        new_mask |= 1 << j
            r = ranks[mover, new_mask]
            nv = 1 if a == 0 else 0
            if r > best_rank or (r == best_rank and nv > best_notvoted):
                best_rank = r
                best_notvoted = nv
                best_mask = new_mask
        winners[base + code] = best_mask
        pos = depth - 1
        while pos >= 0:
            old = digits[pos]
            if old > 0:
                counts[old - 1] -= 1
                cast -= 1
            if old + 1 < acts:
                digits[pos] = old + 1
                counts[old] += 1
                cast += 1
                break
            digits[pos] = 0
            pos -= 1

    # inner levels only look one round ahead
    for i in range(n - 2, -1, -1):
        mover = order[i]
        base = offsets[i]
        child_base = offsets[i + 1]
        level = 1
        for _ in range(i):
            level *= acts
        for code in range(level):
            row = child_base + code * acts
            best_mask = 0
            best_rank = np.int32(-2)
            best_notvoted = 0
            for a in range(acts):
                child_mask = winners[row + a]
                r = ranks[mover, child_mask]
                nv = 1 if a == 0 else 0
                if r > best_rank or (r == best_rank and nv > best_notvoted):
                    best_rank = r
                    best_notvoted = nv
                    best_mask = child_mask
            winners[base + code] = best_mask

    # replay the equilibrium path
    actions = np.zeros(n, dtype=np.int64)
    for j in range(m):
        counts[j] = 0
    cast = 0
    code = 0
    for i in range(n):
        mover = order[i]
        best_a = 0
        best_rank = np.int32(-2)
        best_notvoted = 0
        for a in range(acts):
            if i < n - 1:
                child_mask = winners[offsets[i + 1] + code * acts + a]
            else:
                new_cast = cast + (1 if a > 0 else 0)
                if new_cast == 0:
                    child_mask = np.int32(0)
                else:
                    mx = 0
                    for j in range(m):
                        c = counts[j]
                        if a > 0 and j == a - 1:
                            c += 1
                        if c > mx:
                            mx = c
                    child_mask = np.int32(0)
                    for j in range(m):
                        c = counts[j]
                        if a > 0 and j == a - 1:
                            c += 1
                        if c == mx:
                            child_mask |= np.int32(1 << j)
            r = ranks[mover, child_mask]
            nv = 1 if a == 0 else 0
            if r > best_rank or (r == best_rank and nv > best_notvoted):
                best_rank = r
                best_notvoted = nv
                best_a = a
        actions[i] = best_a
        if best_a > 0:
            counts[best_a - 1] += 1
            cast += 1
        code = code * acts + best_a
    return winners[0], actions, total, winners, offsets
