import json
import subprocess
import sys

from lazyvote import cli

DEMO = {
    "candidates": ["A", "B", "C"],
    "voters": [
        {"name": "v1", "utilities": [5, 2, 1]},
        {"name": "v2", "utilities": [5, 2, 1]},
        {"name": "v3", "utilities": [5, 1, 2]},
        {"name": "v4", "utilities": [5, 1, 2]},
    ],
}

MIXED_FOUR = {
    "candidates": ["A", "B", "C"],
    "voters": [
        {"name": "v1", "utilities": [8, 1, 5]},
        {"name": "v2", "utilities": [1, 8, 5]},
        {"name": "v3", "utilities": [2, 8, 3]},
        {"name": "v4", "utilities": [5, 1, 8]},
    ],
}

NO_PNE = {
    "candidates": ["A", "B", "C"],
    "voters": [
        {"utilities": [16, 4, 1]},
        {"utilities": [16, 1, 4]},
        {"utilities": [4, 16, 1]},
    ],
}


def write(tmp_path, doc, name="election.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    payload = json.loads(captured.out) if captured.out.strip() else None
    return code, payload, captured.err


class TestParsing:
    def test_round_trip(self, tmp_path, capsys):
        path = write(tmp_path, DEMO)
        code, doc, _ = run_cli(capsys, "validate", path, "--no-timing")
        assert code == 0
        assert doc["valid"] and doc["voters"] == 4 and doc["candidates"] == 3

    def test_bad_json_is_input_error(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{nope")
        code, _, err = run_cli(capsys, "validate", str(path))
        assert code == cli.EXIT_INPUT
        assert "line" in err

    def test_wrong_row_length_names_the_voter(self, tmp_path, capsys):
        doc = {"candidates": ["A", "B"], "voters": [{"name": "vx", "utilities": [1]}]}
        code, _, err = run_cli(capsys, "validate", write(tmp_path, doc))
        assert code == cli.EXIT_INPUT
        assert "vx" in err

    def test_duplicate_order_entry(self, tmp_path, capsys):
        doc = dict(DEMO, order=["v1", "v1", "v3", "v4"])
        code, _, err = run_cli(capsys, "validate", write(tmp_path, doc))
        assert code == cli.EXIT_INPUT
        assert "order" in err

    def test_indistinct_profile_rejected_with_report(self, tmp_path, capsys):
        doc = {"candidates": ["A", "B"], "voters": [{"utilities": [1, 1]}]}
        code, _, err = run_cli(capsys, "validate", write(tmp_path, doc))
        assert code == cli.EXIT_INPUT
        assert "v1" in err and "distinct" in err

    def test_skip_validate_lets_solvers_run(self, tmp_path, capsys):
        # skipping the exponential check is allowed for well-formed files
        path = write(tmp_path, DEMO)
        code, doc, _ = run_cli(capsys, "pne-find", path, "--skip-validate")
        assert code == 0 and doc["found"]


class TestSimultaneousCommands:
    def test_pne_find(self, tmp_path, capsys):
        code, doc, _ = run_cli(capsys, "pne-find", write(tmp_path, DEMO))
        assert code == 0
        assert doc["outcome"] == ["A"]
        assert [b["ballot"] for b in doc["witness"]["ballots"]] == [
            "A", "ABSTAIN", "ABSTAIN", "ABSTAIN",
        ]

    def test_pne_find_exit_code_when_none(self, tmp_path, capsys):
        code, doc, _ = run_cli(capsys, "pne-find", write(tmp_path, NO_PNE))
        assert code == cli.EXIT_NO_PNE
        assert doc["found"] is False

    def test_pne_enum(self, tmp_path, capsys):
        code, doc, _ = run_cli(capsys, "pne-enum", write(tmp_path, DEMO))
        assert code == 0
        assert doc["outcomes"] == [["A"], ["B", "C"]]

    def test_pne_brute(self, tmp_path, capsys):
        code, doc, _ = run_cli(capsys, "pne-brute", write(tmp_path, DEMO))
        assert code == 0
        assert doc["count"] == 5
        rendered = {
            tuple(b["ballot"] for b in w["ballots"]) for w in doc["witnesses"]
        }
        assert ("B", "B", "C", "C") in rendered

    def test_pne_check(self, tmp_path, capsys):
        path = write(tmp_path, DEMO)
        code, doc, _ = run_cli(
            capsys, "pne-check", path, "--ballots", "B,B,C,C"
        )
        assert code == 0 and doc["is_pne"]
        code, doc, _ = run_cli(
            capsys, "pne-check", path, "--ballots", "A,A,ABSTAIN,ABSTAIN"
        )
        assert code == 0 and not doc["is_pne"]
        assert doc["deviation"] == {"voter": "v1", "better_ballot": "ABSTAIN"}

    def test_brute_bound_exit(self, tmp_path, capsys):
        code, _, err = run_cli(
            capsys, "pne-brute", write(tmp_path, DEMO), "--max-states", "5"
        )
        assert code == cli.EXIT_BOUND
        assert "exceeds" in err


class TestSequentialCommands:
    def test_spne_default_engine(self, tmp_path, capsys):
        code, doc, _ = run_cli(capsys, "spne", write(tmp_path, MIXED_FOUR))
        assert code == 0
        assert doc["outcome"] == ["C"]
        assert [v["ballot"] for v in doc["votes"]] == ["A", "ABSTAIN", "C", "C"]
        assert doc["diagnostics"]["engine"] == "history"

    def test_spne_engines_agree(self, tmp_path, capsys):
        path = write(tmp_path, MIXED_FOUR)
        results = {}
        for engine in ("history", "counts", "tree"):
            code, doc, _ = run_cli(
                capsys, "spne", path, "--engine", engine, "--no-timing"
            )
            assert code == 0
            results[engine] = (doc["outcome"], [v["ballot"] for v in doc["votes"]])
        assert len(set(map(str, results.values()))) == 1

    def test_spne_auto_falls_back_to_counts(self, tmp_path, capsys):
        code, doc, _ = run_cli(
            capsys, "spne", write(tmp_path, MIXED_FOUR), "--max-states", "10"
        )
        assert code == 0
        assert doc["diagnostics"]["engine"] == "counts"
        assert doc["outcome"] == ["C"]

    def test_forced_engine_bound_exit(self, tmp_path, capsys):
        code, _, _ = run_cli(
            capsys, "spne", write(tmp_path, MIXED_FOUR),
            "--engine", "history", "--max-states", "10",
        )
        assert code == cli.EXIT_BOUND

    def test_order_field_is_respected(self, tmp_path, capsys):
        doc = dict(MIXED_FOUR, order=["v4", "v3", "v2", "v1"])
        code, payload, _ = run_cli(capsys, "spne", write(tmp_path, doc))
        assert code == 0
        assert [v["voter"] for v in payload["votes"]] == ["v4", "v3", "v2", "v1"]

    def test_spne_oracle_matches(self, tmp_path, capsys):
        path = write(tmp_path, MIXED_FOUR)
        _, a, _ = run_cli(capsys, "spne", path, "--no-timing")
        _, b, _ = run_cli(capsys, "spne-oracle", path, "--no-timing")
        assert a["outcome"] == b["outcome"]
        assert [v["ballot"] for v in a["votes"]] == [v["ballot"] for v in b["votes"]]

    def test_two_cand_types(self, capsys):
        code, doc, _ = run_cli(capsys, "two-cand", "--types", "ABABA")
        assert code == 0
        assert doc["outcome"] == ["A"]
        assert [v["ballot"] for v in doc["votes"]] == [
            "A", "ABSTAIN", "ABSTAIN", "ABSTAIN", "ABSTAIN",
        ]

    def test_mandate(self, capsys):
        code, doc, _ = run_cli(
            capsys, "mandate", "--na", "4", "--nb", "2", "--k", "3"
        )
        assert code == 0
        assert doc["order_types"] == "AAAABB"
        assert doc["outcome"] == ["A"]
        assert doc["mandate"] == 3

    def test_mandate_rejects_bad_k(self, capsys):
        code, _, _ = run_cli(capsys, "mandate", "--na", "2", "--nb", "1", "--k", "9")
        assert code == cli.EXIT_INPUT


class TestGeneratorsAndReduction:
    def test_gen_is_deterministic(self, capsys):
        _, a, _ = run_cli(capsys, "gen", "--n", "3", "--m", "3", "--seed", "7",
                          "--no-timing")
        _, b, _ = run_cli(capsys, "gen", "--n", "3", "--m", "3", "--seed", "7",
                          "--no-timing")
        assert a == b
        assert len(a["election"]["voters"]) == 3

    def test_gen_feeds_other_commands(self, tmp_path, capsys):
        _, doc, _ = run_cli(capsys, "gen", "--n", "4", "--m", "2", "--seed", "1")
        path = write(tmp_path, doc["election"], "gen.json")
        code, _, _ = run_cli(capsys, "validate", path)
        assert code == 0

    def test_reduce_x3c_output_is_an_election(self, tmp_path, capsys):
        x3c = {"ground_size": 6, "sets": [[0, 1, 2], [0, 1, 3], [3, 4, 5]]}
        path = tmp_path / "cover.json"
        path.write_text(json.dumps(x3c))
        code, doc, _ = run_cli(capsys, "reduce-x3c", str(path))
        assert code == 0
        assert len(doc["election"]["candidates"]) == 9
        assert len(doc["election"]["voters"]) == 21
        assert doc["d_candidates"] == ["d1", "d2", "d3", "d4", "d5", "d6"]
        election = write(tmp_path, doc["election"], "reduced.json")
        code, found, _ = run_cli(capsys, "pne-find", election)
        assert code == 0 and found["found"]

    def test_reduce_x3c_rejects_bad_sets(self, tmp_path, capsys):
        path = tmp_path / "cover.json"
        path.write_text(json.dumps({"ground_size": 6, "sets": [[0, 1]]}))
        code, _, _ = run_cli(capsys, "reduce-x3c", str(path))
        assert code == cli.EXIT_INPUT


class TestDeterminism:
    def test_byte_identical_without_timing(self, tmp_path, capsys):
        path = write(tmp_path, MIXED_FOUR)
        outputs = []
        for _ in range(2):
            cli.main(["spne", path, "--no-timing"])
            outputs.append(capsys.readouterr().out)
        assert outputs[0] == outputs[1]

    def test_timing_present_by_default(self, tmp_path, capsys):
        code, doc, _ = run_cli(capsys, "validate", write(tmp_path, DEMO))
        assert code == 0
        assert "time_ms" in doc["diagnostics"]
        code, doc, _ = run_cli(
            capsys, "validate", write(tmp_path, DEMO), "--no-timing"
        )
        assert "time_ms" not in doc["diagnostics"]

    def test_threads_flag_echoed(self, tmp_path, capsys):
        code, doc, _ = run_cli(
            capsys, "validate", write(tmp_path, DEMO), "--threads", "4"
        )
        assert code == 0
        assert doc["diagnostics"]["threads"] == 4

    def test_console_entry_point(self, tmp_path):
        path = write(tmp_path, DEMO)
        proc = subprocess.run(
            [sys.executable, "-m", "lazyvote", "pne-enum", path, "--no-timing"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["outcomes"] == [["A"], ["B", "C"]]

    def test_reads_stdin_with_dash(self):
        proc = subprocess.run(
            [sys.executable, "-m", "lazyvote", "pne-find", "-", "--no-timing"],
            input=json.dumps(DEMO),
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["outcome"] == ["A"]
