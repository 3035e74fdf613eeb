"""Command-line front end: JSON elections in, JSON results out.

Election schema::

    {"candidates": ["A", "B", "C"],
     "voters": [{"name": "v1", "utilities": [5, 2, 1]}, ...],
     "order": ["v2", "v1", ...]}        # optional; names or 0-based indices

Exact-cover schema::

    {"ground_size": 6, "sets": [[0, 1, 2], [3, 4, 5]]}

Results are printed to stdout as JSON; a one-line human summary goes to
stderr.  Exit codes: 0 success, 2 input error, 3 bound exceeded, 4 no PNE
exists (pne-find only).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from typing import Optional

from . import backend, instances, model, oracle, sequential, simultaneous
from .errors import BoundExceeded, ProfileError
from .model import ABSTAIN, Profile

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BOUND = 3
EXIT_NO_PNE = 4


@dataclass(frozen=True)
class ElectionDocument:
    profile: Profile
    order: Optional[tuple]


def parse_election(text: str, skip_validate: bool = False) -> ElectionDocument:
    """Parse and validate an election document."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProfileError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ProfileError("top level must be a JSON object")
    candidates = raw.get("candidates")
    if not isinstance(candidates, list) or not candidates:
        raise ProfileError("field 'candidates' must be a non-empty list of names")
    if any(not isinstance(c, str) or not c for c in candidates):
        raise ProfileError("field 'candidates' must contain non-empty strings")
    if len(set(candidates)) != len(candidates):
        raise ProfileError("candidate names must be unique")
    voters = raw.get("voters")
    if not isinstance(voters, list) or not voters:
        raise ProfileError("field 'voters' must be a non-empty list")
    m = len(candidates)
    rows, names = [], []
    for i, voter in enumerate(voters):
        if not isinstance(voter, dict):
            raise ProfileError(f"voters[{i}] must be an object")
        name = voter.get("name", f"v{i + 1}")
        utilities = voter.get("utilities")
        if not isinstance(utilities, list) or not all(
            isinstance(v, int) and not isinstance(v, bool) and v >= 0
            for v in utilities
        ):
            raise ProfileError(
                f"voter {name!r}: 'utilities' must be a list of non-negative integers"
            )
        if len(utilities) != m:
            raise ProfileError(
                f"voter {name!r} has {len(utilities)} utilities for {m} candidates"
            )
        rows.append(tuple(utilities))
        names.append(str(name))
    if len(set(names)) != len(names):
        raise ProfileError("voter names must be unique")
    profile = Profile(m, tuple(rows), tuple(candidates), tuple(names))
    order = None
    if raw.get("order") is not None:
        if not isinstance(raw["order"], list):
            raise ProfileError("field 'order' must be a list of voter names/indices")
        by_name = {name: i for i, name in enumerate(names)}
        resolved = []
        for entry in raw["order"]:
            if isinstance(entry, str):
                if entry not in by_name:
                    raise ProfileError(f"order names unknown voter {entry!r}")
                resolved.append(by_name[entry])
            elif isinstance(entry, int) and not isinstance(entry, bool):
                if not 0 <= entry < len(names):
                    raise ProfileError(f"order index {entry} out of range")
                resolved.append(entry)
            else:
                raise ProfileError("order entries must be voter names or indices")
        if sorted(resolved) != list(range(len(names))):
            raise ProfileError("field 'order' must list every voter exactly once")
        order = tuple(resolved)
    if not skip_validate:
        report = model.validate_profile(profile)
        if not report.ok:
            parts = []
            for v in report.violations:
                a = _outcome_names(profile, v.outcome_a)
                b = _outcome_names(profile, v.outcome_b)
                parts.append(f"voter {profile.voter_name(v.voter)}: {a} vs {b}")
            raise ProfileError(
                "profile violates outcome distinctness: " + "; ".join(parts)
            )
    return ElectionDocument(profile, order)


def parse_x3c(text: str) -> instances.X3cInstance:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProfileError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ProfileError("top level must be a JSON object")
    if not isinstance(raw.get("ground_size"), int):
        raise ProfileError("field 'ground_size' must be an integer")
    sets = raw.get("sets")
    if not isinstance(sets, list) or not all(isinstance(s, list) for s in sets):
        raise ProfileError("field 'sets' must be a list of 3-element integer lists")
    return instances.X3cInstance(raw["ground_size"], tuple(tuple(s) for s in sets))


def election_to_json(profile: Profile, order=None) -> dict:
    doc = {
        "candidates": [profile.candidate_name(j) for j in range(profile.m)],
        "voters": [
            {"name": profile.voter_name(i), "utilities": list(profile.utilities[i])}
            for i in range(profile.n)
        ],
    }
    if order is not None:
        doc["order"] = [profile.voter_name(i) for i in order]
    return doc


def _outcome_names(profile: Profile, winners) -> list:
    return [profile.candidate_name(j) for j in sorted(winners)]


def _ballot_name(profile: Profile, ballot: int) -> str:
    return "ABSTAIN" if ballot == ABSTAIN else profile.candidate_name(ballot)


def _ballot_from_name(profile: Profile, name: str) -> int:
    if name == "ABSTAIN":
        return ABSTAIN
    for j in range(profile.m):
        if profile.candidate_name(j) == name:
            return j
    raise ProfileError(f"unknown candidate {name!r} in ballots")


def _votes_doc(profile: Profile, order, votes) -> list:
    return [
        {
            "round": t,
            "voter": profile.voter_name(order[t]),
            "ballot": _ballot_name(profile, votes[t]),
        }
        for t in range(len(votes))
    ]


def _witness_doc(profile: Profile, witness) -> dict:
    return {
        "ballots": [
            {"voter": profile.voter_name(i), "ballot": _ballot_name(profile, b)}
            for i, b in enumerate(witness.ballots)
        ],
        "outcome": _outcome_names(profile, witness.outcome),
    }


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ProfileError(f"cannot read {path}: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lazyvote",
        description="Exact equilibrium solvers for plurality voting with "
        "abstentions and lazy voters.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--no-timing", action="store_true", help="omit timing fields")
    common.add_argument(
        "--threads", type=int, default=1, help="reserved; echoed in diagnostics"
    )

    election = argparse.ArgumentParser(add_help=False, parents=[common])
    election.add_argument("file", help="election JSON file, or - for stdin")
    election.add_argument(
        "--skip-validate",
        action="store_true",
        help="skip the exponential outcome-distinctness check",
    )

    sub.add_parser("validate", parents=[election], help="check an election file")

    p = sub.add_parser(
        "pne-check", parents=[election], help="test one ballot vector for PNE"
    )
    p.add_argument(
        "--ballots",
        required=True,
        help="comma-separated ballots by voter, e.g. A,ABSTAIN,B",
    )

    sub.add_parser(
        "pne-find", parents=[election], help="construct a PNE (exit 4 if none)"
    )
    sub.add_parser(
        "pne-enum", parents=[election], help="all PNE outcomes by characterization"
    )
    p = sub.add_parser(
        "pne-brute", parents=[election], help="all PNE ballot vectors by brute force"
    )
    p.add_argument("--max-states", type=int, default=oracle.DEFAULT_MAX_PROFILES)

    p = sub.add_parser("spne", parents=[election], help="sequential equilibrium")
    p.add_argument("--engine", choices=["history", "counts", "tree"])
    p.add_argument("--max-states", type=int, default=sequential.DEFAULT_MAX_STATES)
    p.add_argument("--max-table", type=int, default=sequential.DEFAULT_MAX_TABLE)

    sub.add_parser(
        "spne-oracle", parents=[election], help="sequential equilibrium (tree oracle)"
    )

    p = sub.add_parser(
        "two-cand", parents=[common], help="closed-form two-candidate play"
    )
    p.add_argument("file", nargs="?", help="election JSON with two candidates")
    p.add_argument("--types", help="voter string like ABABA instead of a file")
    p.add_argument("--skip-validate", action="store_true")

    p = sub.add_parser(
        "mandate", parents=[common], help="order giving the winner k votes"
    )
    p.add_argument("--na", type=int, required=True, help="number of A-voters")
    p.add_argument("--nb", type=int, required=True, help="number of B-voters")
    p.add_argument("--k", type=int, required=True, help="target winner vote count")

    p = sub.add_parser(
        "reduce-x3c", parents=[common], help="exact-cover instance to election"
    )
    p.add_argument("file", help="exact-cover JSON file, or - for stdin")

    p = sub.add_parser("gen", parents=[common], help="seeded random election")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _diagnostics(args, t0: float, **extra) -> dict:
    diag = {"backend": backend.backend_name(), "threads": args.threads}
    diag.update(extra)
    if not args.no_timing:
        diag["time_ms"] = round((time.perf_counter() - t0) * 1000.0, 3)
    return diag


def run(args) -> int:
    t0 = time.perf_counter()
    command = args.command

    if command == "gen":
        profile = instances.random_profile(args.n, args.m, args.seed)
        doc = {
            "command": "gen",
            "seed": args.seed,
            "election": election_to_json(profile),
            "diagnostics": _diagnostics(args, t0),
        }
        return _emit(doc, f"generated {args.n} voters over {args.m} candidates")

    if command == "mandate":
        order = sequential.mandate_permutation(args.na, args.nb, args.k)
        profile = instances.two_candidate_profile("A" * args.na + "B" * args.nb)
        res = sequential.two_candidate_play(profile, order)
        counts = model.tally(res.votes, 2).counts
        types = "".join("A" if i < args.na else "B" for i in order)
        doc = {
            "command": "mandate",
            "order": list(order),
            "order_types": types,
            "outcome": _outcome_names(profile, res.outcome),
            "votes": _votes_doc(profile, order, res.votes),
            "mandate": max(counts),
            "diagnostics": _diagnostics(args, t0),
        }
        return _emit(doc, f"winner A with mandate {max(counts)} under {types}")

    if command == "reduce-x3c":
        inst = parse_x3c(_read_input(args.file))
        red = instances.x3c_reduce(inst)
        doc = {
            "command": "reduce-x3c",
            "election": election_to_json(red.profile),
            "d_candidates": [
                red.profile.candidate_name(j) for j in red.d_candidates
            ],
            "e_candidates": [
                red.profile.candidate_name(j) for j in red.e_candidates
            ],
            "provenance": {
                "shortcut": red.shortcut,
                "gadget_added": red.gadget_added,
                "renumbering": list(red.renumbering),
            },
            "diagnostics": _diagnostics(args, t0),
        }
        return _emit(
            doc,
            f"reduced to {red.profile.n} voters over {red.profile.m} candidates"
            + (" (trivial yes-instance shortcut)" if red.shortcut else ""),
        )

    if command == "two-cand":
        if args.types:
            profile = instances.two_candidate_profile(args.types)
            order = None
        elif args.file:
            doc_in = parse_election(_read_input(args.file), args.skip_validate)
            profile, order = doc_in.profile, doc_in.order
        else:
            raise ProfileError("two-cand needs a file or --types")
        res = sequential.two_candidate_play(profile, order)
        order = sequential.normalize_order(order, profile.n)
        doc = {
            "command": "two-cand",
            "outcome": _outcome_names(profile, res.outcome),
            "votes": _votes_doc(profile, order, res.votes),
            "diagnostics": _diagnostics(args, t0),
        }
        return _emit(doc, f"outcome {_outcome_names(profile, res.outcome)}")

    # remaining commands read an election file; validate always validates
    skip = args.skip_validate and command != "validate"
    doc_in = parse_election(_read_input(args.file), skip)
    profile, order = doc_in.profile, doc_in.order

    if command == "validate":
        doc = {
            "command": "validate",
            "valid": True,
            "candidates": profile.m,
            "voters": profile.n,
            "diagnostics": _diagnostics(args, t0),
        }
        return _emit(doc, f"valid: {profile.n} voters over {profile.m} candidates")

    if command == "pne-check":
        ballots = tuple(
            _ballot_from_name(profile, name.strip())
            for name in args.ballots.split(",")
        )
        check = simultaneous.check_pne(profile, ballots)
        doc = {
            "command": "pne-check",
            "is_pne": check.is_pne,
            "deviation": None
            if check.is_pne
            else {
                "voter": profile.voter_name(check.voter),
                "better_ballot": _ballot_name(profile, check.better_ballot),
            },
            "diagnostics": _diagnostics(args, t0),
        }
        return _emit(doc, "PNE" if check.is_pne else "not a PNE")

    if command == "pne-find":
        witness = simultaneous.find_pne(profile)
        if witness is None:
            doc = {
                "command": "pne-find",
                "found": False,
                "diagnostics": _diagnostics(args, t0),
            }
            _emit(doc, "no PNE exists")
            return EXIT_NO_PNE
        doc = {
            "command": "pne-find",
            "found": True,
            "witness": _witness_doc(profile, witness),
            "outcome": _outcome_names(profile, witness.outcome),
            "diagnostics": _diagnostics(args, t0),
        }
        return _emit(doc, f"PNE with outcome {_outcome_names(profile, witness.outcome)}")

    if command == "pne-enum":
        outcomes = simultaneous.enumerate_pne_outcomes(profile)
        rendered = sorted(
            (_outcome_names(profile, o) for o in outcomes),
            key=lambda names: (len(names), names),
        )
        doc = {
            "command": "pne-enum",
            "outcomes": rendered,
            "diagnostics": _diagnostics(args, t0),
        }
        return _emit(doc, f"{len(rendered)} PNE outcome(s)")

    if command == "pne-brute":
        witnesses = oracle.brute_force_pne(profile, args.max_states)
        doc = {
            "command": "pne-brute",
            "count": len(witnesses),
            "witnesses": [_witness_doc(profile, w) for w in witnesses],
            "diagnostics": _diagnostics(
                args, t0, scanned=(profile.m + 1) ** profile.n
            ),
        }
        return _emit(doc, f"{len(witnesses)} PNE ballot vector(s)")

    if command == "spne":
        engine = args.engine
        if engine is None:
            engine = (
                "history"
                if (profile.m + 1) ** profile.n <= args.max_states
                else "counts"
            )
        if engine == "history":
            res = sequential.spne_history(profile, order, max_states=args.max_states)
        elif engine == "counts":
            res = sequential.spne_counts(profile, order, max_entries=args.max_table)
        else:
            res = oracle.tree_spne(profile, order)
        order = sequential.normalize_order(order, profile.n)
        doc = {
            "command": "spne",
            "outcome": _outcome_names(profile, res.outcome),
            "votes": _votes_doc(profile, order, res.votes),
            "diagnostics": _diagnostics(
                args, t0, engine=res.engine, states=res.states
            ),
        }
        return _emit(doc, f"outcome {_outcome_names(profile, res.outcome)}")

    if command == "spne-oracle":
        res = oracle.tree_spne(profile, order)
        order = sequential.normalize_order(order, profile.n)
        doc = {
            "command": "spne-oracle",
            "outcome": _outcome_names(profile, res.outcome),
            "votes": _votes_doc(profile, order, res.votes),
            "diagnostics": _diagnostics(args, t0, engine="tree", states=res.states),
        }
        return _emit(doc, f"outcome {_outcome_names(profile, res.outcome)}")

    raise AssertionError(f"unhandled command {command}")


def _emit(doc: dict, summary: str) -> int:
    print(json.dumps(doc, indent=2))
    print(f"lazyvote {doc['command']}: {summary}", file=sys.stderr)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except BoundExceeded as exc:
        print(f"lazyvote: bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (ProfileError, ValueError) as exc:
        print(f"lazyvote: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
