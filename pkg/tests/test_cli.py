import json

import pytest

from globflow import cli


SEGMENT = {
    "skeleton0": ["0", "1"],
    "steps": [{"cells": ["u"], "boundary": [], "endpoints": ["0", "1"], "boundary_map": {}}],
}
TWO_STEP = {
    "skeleton0": ["s", "m", "t"],
    "steps": [
        {"cells": ["v"], "boundary": [], "endpoints": ["s", "m"], "boundary_map": {}},
        {"cells": ["w"], "boundary": [], "endpoints": ["m", "t"], "boundary_map": {}},
    ],
}
WEDGE = {
    "skeleton0": ["a", "b", "c"],
    "steps": [
        {"cells": ["u"], "boundary": [], "endpoints": ["a", "b"], "boundary_map": {}},
        {"cells": ["v"], "boundary": [], "endpoints": ["a", "c"], "boundary_map": {}},
    ],
}
FORK = {
    "skeleton0": ["A", "m", "B", "C"],
    "steps": [
        {"cells": ["x"], "boundary": [], "endpoints": ["A", "m"], "boundary_map": {}},
        {"cells": ["y"], "boundary": [], "endpoints": ["m", "B"], "boundary_map": {}},
        {"cells": ["z"], "boundary": [], "endpoints": ["m", "C"], "boundary_map": {}},
    ],
}


@pytest.fixture
def docs(tmp_path):
    paths = {}
    for name, doc in {
        "segment": SEGMENT,
        "two_step": TWO_STEP,
        "wedge": WEDGE,
        "fork": FORK,
    }.items():
        target = tmp_path / f"{name}.json"
        target.write_text(json.dumps(doc), encoding="utf-8")
        paths[name] = str(target)
    return paths


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBuild:
    def test_summary(self, docs, capsys):
        code, out, _ = run(capsys, "build", docs["two_step"])
        assert code == 0
        payload = json.loads(out)
        assert payload["path_count"] == 3
        assert payload["states"] == ["m", "s", "t"]

    def test_parse_error_exit_code(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"skeleton0": []}', encoding="utf-8")
        code, _, err = run(capsys, "build", str(bad))
        assert code == 2
        assert "skeleton0" in err

    def test_missing_file_exit_code(self, capsys, tmp_path):
        code, _, err = run(capsys, "build", str(tmp_path / "ghost.json"))
        assert code == 2


class TestAnalyze:
    def test_fork_deadlock(self, docs, capsys):
        code, out, _ = run(
            capsys, "analyze", docs["fork"], "--init", "A", "--final", "B"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["reachability"]["deadlocks"] == ["C"]
        assert payload["summary"]["per_state"]["m"]["minus_classes"] == 2

    def test_defaults_to_computed_endpoints(self, docs, capsys):
        code, out, _ = run(capsys, "analyze", docs["segment"])
        assert code == 0
        payload = json.loads(out)
        assert payload["reachability"]["clean"] is True


class TestCompare:
    def test_iso_verdict_true(self, docs, capsys, tmp_path):
        relabeled = tmp_path / "seg2.json"
        relabeled.write_text(
            json.dumps(
                {
                    "skeleton0": ["p", "q"],
                    "steps": [
                        {"cells": ["e"], "boundary": [], "endpoints": ["p", "q"], "boundary_map": {}}
                    ],
                }
            ),
            encoding="utf-8",
        )
        code, out, _ = run(capsys, "compare", docs["segment"], str(relabeled))
        assert code == 0
        assert json.loads(out)["verdict"] is True

    def test_iso_verdict_false(self, docs, capsys):
        code, out, _ = run(capsys, "compare", docs["segment"], docs["two_step"])
        assert code == 1
        assert json.loads(out)["verdict"] is False

    def test_t_homotopy_witness(self, docs, capsys):
        code, out, _ = run(
            capsys, "compare", docs["segment"], docs["two_step"], "--mode", "t-homotopy"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["verdict"] is True
        assert payload["state_map"] == {"0": "s", "1": "t"}

    def test_budget_exceeded_exit_code(self, docs, capsys, tmp_path):
        big = tmp_path / "big.json"
        big.write_text(
            json.dumps({"skeleton0": [f"s{i:02d}" for i in range(13)], "steps": []}),
            encoding="utf-8",
        )
        code, _, err = run(
            capsys, "compare", docs["segment"], str(big), "--mode", "t-homotopy"
        )
        assert code == 3
        assert "budget" in err

    def test_t_homotopy_failure_names_condition_two_at_m(self, docs, capsys):
        code, out, _ = run(
            capsys, "compare", docs["wedge"], docs["fork"], "--mode", "t-homotopy"
        )
        assert code == 1
        payload = json.loads(out)
        assert payload["verdict"] is False
        nearest = payload["nearest"]["report"]
        assert nearest["condition1"]["passed"] is True
        assert nearest["condition2"]["passed"] is False
        assert nearest["condition2"]["offenders"][0]["state"] == "m"
        assert nearest["condition2"]["offenders"][0]["minus_classes"] == 2


class TestExport:
    def test_dot_output(self, docs, capsys):
        code, out, _ = run(capsys, "export", docs["two_step"], "--format", "dot")
        assert code == 0
        assert out.startswith("graph underlying {")
        assert '"m" -- "s";' in out

    def test_json_round_trip_isomorphic(self, docs, capsys, tmp_path):
        code, out, _ = run(capsys, "export", docs["fork"], "--format", "json")
        assert code == 0
        dumped = tmp_path / "dump.json"
        dumped.write_text(out, encoding="utf-8")
        code, verdict_out, _ = run(capsys, "compare", docs["fork"], str(dumped))
        assert code == 0
        assert json.loads(verdict_out)["verdict"] is True


class TestDeterminism:
    @pytest.mark.parametrize(
        "argv",
        [
            ("build", "fork"),
            ("analyze", "fork", "--init", "A", "--final", "B"),
            ("export", "fork", "--format", "dot"),
            ("export", "fork", "--format", "json"),
            ("compare", "wedge", "fork", "--mode", "t-homotopy"),
        ],
    )
    def test_byte_identical_across_runs(self, docs, capsys, argv):
        resolved = [docs.get(a, a) for a in argv]
        first_code, first_out, _ = run(capsys, *resolved)
        second_code, second_out, _ = run(capsys, *resolved)
        assert first_code == second_code
        assert first_out.encode() == second_out.encode()
