import csv
import io
import json
import subprocess
import sys

import pytest

from fockcb import cli, verify
from fockcb.laurent import LaurentPoly, from_text


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    data = json.loads(out)
    assert data["schema"] == 1 and data["command"] == argv[0]
    return code, data


@pytest.mark.parametrize("argv, expected", [
    (("decomp", "--e", "3", "--lambda", "2,2", "--mu", "4"), "q"),
    (("remove-runner", "--e", "4", "--k", "1", "--lambda", "7,4,2,1,1"), "5,3,2,1"),
    (("decomp", "--e", "2", "--lambda", "3", "--mu", "1,1"), "0"),
    (("decomp", "--e", "4", "--lambda", "7,4,2,1,1", "--mu", "11,2,1,1"), "q^2"),
    (("mull", "--e", "3", "--mu", "6,3,1", "--conjugate"), "5,3,2"),
    (("ux", "--e", "4", "--k", "1", "--lambda", "11,2,1,1"), "3"),
])
def test_golden_text_output(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.splitlines()[0] == expected


def test_json_matches_text(capsys):
    _, text, _ = run(capsys, "decomp", "--e", "3", "--lambda", "1,1,1,1", "--mu", "2,2")
    _, data = run_json(capsys, "decomp", "--e", "3", "--lambda", "1,1,1,1", "--mu", "2,2")
    assert data["value"]["text"] == text
    assert LaurentPoly.from_json(data["value"]["terms"]) == from_text(text)
    assert data["at_q_equals_1"] == 1

    _, text, _ = run(capsys, "bar", "--e", "3", "--mu", "4")
    _, data = run_json(capsys, "bar", "--e", "3", "--mu", "4")
    rows = [line.split("\t") for line in text.splitlines()]
    assert rows == [[c["lambda"], c["value"]["text"]] for c in data["coefficients"]]
    assert dict(rows) == {"4": "1", "2,2": "-q^-1 + q", "1,1,1,1": "q^-2 - 1"}

    _, text, _ = run(capsys, "core", "--e", "2", "--lambda", "3,3,3", "--r", "5")
    _, data = run_json(capsys, "core", "--e", "2", "--lambda", "3,3,3", "--r", "5")
    assert text.splitlines() == [f"core {data['core']}", f"weight {data['weight']}",
                                 "beta " + " ".join(map(str, data["beta_set"]["entries"]))]
    assert (data["core"], data["weight"], data["beta_set"]["entries"]) == ("1", 4, [7, 6, 5, 1, 0])


def test_block_matrix_csv_and_json(capsys):
    code, text, _ = run(capsys, "block", "--e", "3", "--core", "1", "--weight", "1", "--matrix")
    assert code == 0
    rows = list(csv.reader(io.StringIO(text)))
    assert rows == [["", "4", "2,2", "1,1,1,1"], ["4", "1", "0", "0"], ["2,2", "q", "1", "0"],
                    ["1,1,1,1", "0", "q", "1"]]
    _, data = run_json(capsys, "block", "--e", "3", "--core", "1", "--weight", "1", "--matrix")
    assert [data["labels"]] + data["entries"] == [rows[0][1:]] + [r[1:] for r in rows[1:]]
    _, text, _ = run(capsys, "block", "--e", "2", "--core", "0", "--weight", "1")
    assert text.splitlines() == ["2", "1,1"]


def test_mull_check(capsys):
    code, text, _ = run(capsys, "mull", "--e", "3", "--mu", "4", "--check")
    assert code == 0
    assert text.splitlines()[0] == "2,2"
    assert "agrees" in text
    _, data = run_json(capsys, "mull", "--e", "3", "--mu", "6,3,1", "--check")
    assert data["image"] == "3,3,2,1,1"
    assert data["rim"]["r"] == 16 and data["rim"]["pairs"] == [[21, 18], [17, 13]]
    assert data["rim"]["length"] == 7 and data["rim"]["result"] == "3"
    assert data["ok"] is True


def test_dset_and_scopes(capsys):
    _, text, _ = run(capsys, "dset", "--e", "3", "--weight", "1", "--max-core-size", "4")
    assert text.splitlines() == ["0", "1", "q"]
    _, data = run_json(capsys, "dset", "--e", "3", "--weight", "1", "--max-core-size", "4")
    assert [v["text"] for v in data["values"]] == ["0", "1", "q"]
    assert "smallest k" in data["strategy"]
    _, text, _ = run(capsys, "scopes", "--e", "2", "--core", "1", "--weight", "1")
    assert text.splitlines() == ["1", "-0 (1 nodes) -> 0"]
    _, data = run_json(capsys, "scopes", "--e", "2", "--core", "1", "--weight", "1")
    assert data["result"] == "0" and data["steps"] == [{"k": 0, "removed": 1, "core": "0"}]


def test_verify_command(capsys):
    code, text, _ = run(capsys, "verify", "scopes", "--e-range", "2,3", "--weight-max", "1",
                        "--core-size-max", "3")
    assert code == 0 and text.startswith("scopes: PASS")
    code, data = run_json(capsys, "verify", "mullineux", "--e-range", "3", "--size-max", "8")
    assert code == 0 and data["passed"] and data["params"]["size_max"] == 8


def test_verify_failure_exit_code(capsys, monkeypatch):
    def failing(**kw):
        return verify.SuiteReport("scopes", {}, cases=1, failures=["scopes e=3: forced"])

    monkeypatch.setitem(cli.SUITES, "scopes", failing)
    code, text, _ = run(capsys, "verify", "scopes")
    assert code == 1 and "forced" in text


@pytest.mark.parametrize("argv, needle", [
    (("remove-runner", "--e", "3", "--k", "0", "--lambda", "4"), "not 0-empty"),
    (("remove-runner", "--e", "4", "--k", "9", "--lambda", "4"), "k must lie"),
    (("decomp", "--e", "1", "--lambda", "1", "--mu", "1"), "e must be"),
    (("mull", "--e", "3", "--mu", "1,1,1"), "not 3-regular"),
    (("block", "--e", "3", "--core", "4", "--weight", "1"), "not a core"),
    (("ux", "--e", "3", "--k", "0", "--lambda", "4"), "not 0-empty"),
])
def test_bad_input_exits_with_two(capsys, argv, needle):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert needle in err


def test_malformed_partition_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["decomp", "--e", "3", "--lambda", "1,2", "--mu", "3"])
    assert exc.value.code == 2
    assert "weakly decreasing" in capsys.readouterr().err


def test_r_flag_does_not_change_results(capsys):
    _, a, _ = run(capsys, "remove-runner", "--e", "4", "--k", "1", "--lambda", "11,2,1,1")
    _, b, _ = run(capsys, "remove-runner", "--e", "4", "--k", "1", "--lambda", "11,2,1,1", "--r", "9")
    assert a == b == "8,2,1"
    _, a, _ = run(capsys, "mull", "--e", "3", "--mu", "6,3,1")
    _, b, _ = run(capsys, "mull", "--e", "3", "--mu", "6,3,1", "--r", "11")
    assert a == b


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fockcb", "decomp", "--e", "3", "--lambda", "2,2", "--mu", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "q"
