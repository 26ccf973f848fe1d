import json
import subprocess
import sys

import pytest


def run_cli(*args, cwd=None):
    proc = subprocess.run(
        [sys.executable, "-m", "wallman_lab", *args],
        capture_output=True,
        text=True,
        cwd=cwd,
    )
    return proc


def report_of(proc):
    assert proc.returncode in (0, 1), proc.stderr
    return json.loads(proc.stdout)


def masked(report):
    out = dict(report)
    out["elapsed_ms"] = 0
    return out


@pytest.fixture
def fixtures(tmp_path):
    def dump(name, payload):
        path = tmp_path / name
        path.write_text(json.dumps(payload))
        return str(path)

    ba4 = dump(
        "ba4.json",
        {
            "elements": ["bot", "a", "b", "top"],
            "meet": [[0, 0, 0, 0], [0, 1, 0, 1], [0, 0, 2, 2], [0, 1, 2, 3]],
            "join": [[0, 1, 2, 3], [1, 1, 3, 3], [2, 3, 2, 3], [3, 3, 3, 3]],
            "bottom": 0,
            "top": 3,
        },
    )
    chain_poset = dump("chain3.json", {"poset": {"size": 3, "le": [[0, 1], [1, 2]]}})
    m3 = dump(
        "m3.json",
        {
            "elements": ["bot", "p", "q", "r", "top"],
            "meet": [
                [0, 0, 0, 0, 0],
                [0, 1, 0, 0, 1],
                [0, 0, 2, 0, 2],
                [0, 0, 0, 3, 3],
                [0, 1, 2, 3, 4],
            ],
            "join": [
                [0, 1, 2, 3, 4],
                [1, 1, 4, 4, 4],
                [2, 4, 2, 4, 4],
                [3, 4, 4, 3, 4],
                [4, 4, 4, 4, 4],
            ],
            "bottom": 0,
            "top": 4,
        },
    )
    x3 = dump(
        "x3.json",
        {"points": 3, "closed": [[], [0], [1], [2], [0, 1], [0, 2], [1, 2], [0, 1, 2]]},
    )
    y2 = dump("y2.json", {"points": 2, "closed": [[], [0], [1], [0, 1]]})
    theory = dump(
        "theory.json",
        {"constants": ["a"], "sentences": ["!(a = 0)", "!(a = 1)"]},
    )
    bad_theory = dump(
        "bad_theory.json",
        {"constants": [], "sentences": ["A x. (!(x = 0) & !(x = 1))"]},
    )
    broken = dump("broken.json", {"elements": ["only"]})
    not_json = tmp_path / "not.json"
    not_json.write_text("{nope")
    return {
        "ba4": ba4,
        "chain3": chain_poset,
        "m3": m3,
        "x3": x3,
        "y2": y2,
        "theory": theory,
        "bad_theory": bad_theory,
        "broken": broken,
        "not_json": str(not_json),
        "tmp": tmp_path,
    }


class TestCheck:
    def test_full_predicate_map(self, fixtures):
        proc = run_cli("check", fixtures["ba4"])
        report = report_of(proc)
        outcome = report["outcome"]
        assert set(outcome) == {
            "connected",
            "dim_le1",
            "disjunctive",
            "distributive",
            "hi",
            "normal",
        }
        assert outcome["distributive"]["holds"] is True
        assert outcome["connected"]["holds"] is False
        assert outcome["connected"]["witness"] is not None

    def test_predicate_subset(self, fixtures):
        report = report_of(run_cli("check", fixtures["ba4"], "--predicates", "normal"))
        assert list(report["outcome"]) == ["normal"]

    def test_unknown_predicate_is_input_error(self, fixtures):
        proc = run_cli("check", fixtures["ba4"], "--predicates", "bogus")
        assert proc.returncode == 2
        assert "input error" in proc.stderr

    def test_assert_failure_exit_code(self, fixtures):
        proc = run_cli("check", fixtures["ba4"], "--predicates", "connected", "--assert")
        assert proc.returncode == 1
        assert report_of(proc)["outcome"]["connected"]["holds"] is False

    def test_assert_success_exit_code(self, fixtures):
        proc = run_cli("check", fixtures["ba4"], "--predicates", "normal", "--assert")
        assert proc.returncode == 0

    def test_non_distributive_input_still_checks(self, fixtures):
        report = report_of(run_cli("check", fixtures["m3"], "--predicates", "distributive"))
        assert report["outcome"]["distributive"]["holds"] is False


class TestInputHandling:
    def test_missing_file(self, fixtures):
        proc = run_cli("check", str(fixtures["tmp"] / "absent.json"))
        assert proc.returncode == 2

    def test_malformed_json(self, fixtures):
        proc = run_cli("check", fixtures["not_json"])
        assert proc.returncode == 2

    def test_incomplete_lattice_tables(self, fixtures):
        proc = run_cli("check", str(fixtures["broken"]))
        assert proc.returncode == 2

    def test_poset_format_expands_to_downset_lattice(self, fixtures):
        # a 3-element chain poset has 4 down-sets
        report = report_of(run_cli("wallman", fixtures["chain3"]))
        assert len(report["outcome"]["base"]) == 4

    def test_bad_formula_is_input_error(self, fixtures):
        proc = run_cli("eval", fixtures["ba4"], "x ^ = 0")
        assert proc.returncode == 2


class TestWallmanAndStone:
    def test_wallman_points_of_boolean_four(self, fixtures):
        report = report_of(run_cli("wallman", fixtures["ba4"]))
        assert report["outcome"]["points"] == [[1, 3], [2, 3]]
        assert report["outcome"]["base"]["top"] == [0, 1]

    def test_wallman_rejects_m3(self, fixtures):
        proc = run_cli("wallman", fixtures["m3"])
        assert proc.returncode == 2

    def test_stone_agrees_on_boolean_input(self, fixtures):
        a = report_of(run_cli("wallman", fixtures["ba4"]))
        b = report_of(run_cli("stone", fixtures["ba4"]))
        assert a["outcome"] == b["outcome"]

    def test_stone_rejects_non_boolean(self, fixtures):
        proc = run_cli("stone", fixtures["chain3"])
        assert proc.returncode == 2

    def test_dot_emission(self, fixtures):
        out = fixtures["tmp"] / "w.dot"
        report_of(run_cli("wallman", fixtures["ba4"], "--dot", str(out)))
        text = out.read_text()
        assert "digraph hasse" in text and "graph wallman" in text
        assert text.count("->") == 4  # the Hasse diagram of a 4-element square


class TestEval:
    def test_closed_formula(self, fixtures):
        report = report_of(run_cli("eval", fixtures["ba4"], "A x. x ^ 1 = x"))
        assert report["outcome"]["value"] is True

    def test_let_binding(self, fixtures):
        report = report_of(run_cli("eval", fixtures["ba4"], "a ^ b = 0", "--let", "a=1", "--let", "b=2"))
        assert report["outcome"]["value"] is True

    def test_assert_on_false_formula(self, fixtures):
        proc = run_cli("eval", fixtures["ba4"], "0 = 1", "--assert")
        assert proc.returncode == 1

    def test_unbound_name_is_input_error(self, fixtures):
        proc = run_cli("eval", fixtures["ba4"], "a = 0")
        assert proc.returncode == 2


class TestEf:
    def test_inequivalent_pair_reports_sentence(self, fixtures):
        proc = run_cli("ef", fixtures["ba4"], fixtures["chain3"], "--rounds", "3")
        report = report_of(proc)
        assert report["outcome"]["equivalent"] is False
        assert "separating_sentence" in report["outcome"]

    def test_equivalent_at_zero_rounds(self, fixtures):
        report = report_of(run_cli("ef", fixtures["ba4"], fixtures["chain3"], "--rounds", "0"))
        assert report["outcome"]["equivalent"] is True

    def test_assert_flag(self, fixtures):
        proc = run_cli("ef", fixtures["ba4"], fixtures["chain3"], "--rounds", "3", "--assert")
        assert proc.returncode == 1


class TestFindModel:
    def test_model_report_is_a_loadable_lattice(self, fixtures):
        report = report_of(run_cli("find-model", fixtures["theory"], "--max-size", "4"))
        outcome = report["outcome"]
        assert outcome["result"] == "model"
        # round trip: feed the emitted tables straight back in
        again = fixtures["tmp"] / "again.json"
        again.write_text(
            json.dumps(
                {
                    "elements": outcome["elements"],
                    "meet": outcome["meet"],
                    "join": outcome["join"],
                    "bottom": outcome["bottom"],
                    "top": outcome["top"],
                }
            )
        )
        assert run_cli("check", str(again)).returncode == 0

    def test_exhausted_reported(self, fixtures):
        report = report_of(run_cli("find-model", fixtures["bad_theory"], "--max-size", "2"))
        assert report["outcome"]["result"] != "model"

    def test_degenerate_size_bound_is_input_error(self, fixtures):
        proc = run_cli("find-model", fixtures["theory"], "--max-size", "1")
        assert proc.returncode == 2

    def test_assert_on_no_model(self, fixtures):
        proc = run_cli(
            "find-model", fixtures["bad_theory"], "--max-size", "2", "--assert"
        )
        assert proc.returncode == 1


class TestSurject:
    def test_three_points_onto_two(self, fixtures):
        report = report_of(run_cli("surject", fixtures["x3"], fixtures["y2"]))
        outcome = report["outcome"]
        assert outcome["found"] and outcome["continuous"] and outcome["surjective"]
        assert sorted(set(outcome["map"])) == [0, 1]

    def test_two_onto_three_absent(self, fixtures):
        report = report_of(run_cli("surject", fixtures["y2"], fixtures["x3"]))
        assert report["outcome"] == {"found": False}

    def test_assert_flag(self, fixtures):
        proc = run_cli("surject", fixtures["y2"], fixtures["x3"], "--assert")
        assert proc.returncode == 1


class TestEmbed:
    def test_chain_into_boolean(self, fixtures):
        report = report_of(run_cli("embed", fixtures["chain3"], fixtures["ba4"]))
        # the chain poset expands to a 4-chain, which does not fit in 2^2
        assert report["outcome"] == {"found": False}

    def test_identity_embedding(self, fixtures):
        report = report_of(run_cli("embed", fixtures["ba4"], fixtures["ba4"]))
        assert report["outcome"]["found"]
        assert report["outcome"]["assignment"]["bot"] == "bot"


class TestDeterminism:
    def test_reports_identical_across_runs(self, fixtures):
        runs = [report_of(run_cli("check", fixtures["ba4"])) for _ in range(3)]
        assert masked(runs[0]) == masked(runs[1]) == masked(runs[2])

    def test_reports_identical_across_job_counts(self, fixtures):
        serial = report_of(run_cli("--jobs", "1", "check", fixtures["ba4"]))
        parallel = report_of(run_cli("--jobs", "4", "check", fixtures["ba4"]))
        # the echoed command line differs by construction; everything else must not
        for r in (serial, parallel):
            r.pop("command")
        assert masked(serial) == masked(parallel)

    def test_report_shape(self, fixtures):
        report = report_of(run_cli("check", fixtures["ba4"]))
        assert set(report) == {"command", "inputs", "outcome", "elapsed_ms", "version"}
        assert list(report["inputs"].values())[0] == __import__("hashlib").sha256(
            open(fixtures["ba4"], "rb").read()
        ).hexdigest()
