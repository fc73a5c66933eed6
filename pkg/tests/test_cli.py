import csv
import io
import json

import pytest

from affine_avoid.checks import GOLDEN_24351
from affine_avoid.cli import EXIT_CHECK, EXIT_FIT, EXIT_INPUT, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_series_json(capsys):
    code, out, _ = run(capsys, "series", "-p", "321")
    assert code == 0
    obj = json.loads(out)
    assert obj["schema"] == 1 and obj["command"] == "series"
    assert obj["behavior"]["kind"] == "EventuallyPeriodic"
    assert set(obj["avoiders"]) == {"numerator", "denominator"}


def test_series_csv(capsys):
    code, out, _ = run(capsys, "series", "-p", "321", "--format", "csv", "-L", "6")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["length", "avoiders", "containers", "bott"]
    assert rows[1:4] == [["0", "1", "0", "1"], ["1", "3", "0", "3"], ["2", "6", "0", "6"]]
    assert all(int(a) + int(c) == int(b) for _, a, c, b in rows[1:])


def test_enumerate_matches_series(capsys):
    _, out, _ = run(capsys, "enumerate", "-p", "2431", "-L", "8")
    rows = list(csv.reader(io.StringIO(out)))[1:]
    _, out2, _ = run(capsys, "series", "-p", "2431", "--format", "csv", "-L", "8")
    assert rows == list(csv.reader(io.StringIO(out2)))[1:]


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "-p", "4321")
    obj = json.loads(out)
    assert code == 0 and obj["agreement"] and obj["series"]["kind"] == "Unbounded"


def test_classify_text(capsys):
    code, out, _ = run(capsys, "classify", "-p", "24351", "--format", "text")
    assert code == 0 and "agreement: yes" in out


def test_inspect_golden(capsys):
    code, out, _ = run(capsys, "inspect", "-p", "24351", "--pi", "2,3,2,2,1", "--format", "json")
    assert code == 0
    (rec,) = json.loads(out)["assignments"]
    assert "\n".join(rec["cells"][0]["system"]) == GOLDEN_24351
    assert rec["tight_corner"]["witness"] == 2


def test_inspect_warning(capsys):
    code, out, _ = run(capsys, "inspect", "-p", "7,1,0,4,5,2,8,10,6,9,3", "--all-cells")
    assert code == 0
    assert "feasible in some cell: no (infeasible)" in out
    assert "feasible: yes" not in out


def test_inspect_rejects_unknown_assignment(capsys):
    code, _, err = run(capsys, "inspect", "-p", "321", "--pi", "1,1,1")
    assert code == EXIT_INPUT and "not a strand assignment" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["series", "-p", "1,1"],
        ["series", "-p", "321", "-n", "1"],
        ["enumerate", "-p", "321", "-L", "-1"],
        ["inspect", "-p", "321", "--flattening", "12"],
    ],
)
def test_bad_input(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_INPUT and err.startswith("invalid input")


def test_fit_failure_exit(capsys, monkeypatch):
    from affine_avoid import cli
    from affine_avoid.series import FitError

    def boom(*a, **k):
        raise FitError("forced")

    monkeypatch.setattr(cli, "pattern_series", boom)
    code, _, err = run(capsys, "series", "-p", "321")
    assert code == EXIT_FIT and "fit failed" in err


def test_disagreement_exit(capsys, monkeypatch):
    from affine_avoid import cli
    from affine_avoid.enumeration import Classification

    monkeypatch.setattr(cli, "classify_combinatorial", lambda p, n: Classification("Unbounded", {}))
    code, _, err = run(capsys, "classify", "-p", "321")
    assert code == 3 and "disagree" in err


def test_check_only(capsys):
    code, out, _ = run(capsys, "check", "--only", "golden", "--only", "abacus6")
    lines = out.strip().splitlines()
    assert code == 0 and [ln.split()[:2] for ln in lines] == [["PASS", "golden:"], ["PASS", "abacus6:"]]


def test_check_failure_exit(capsys, monkeypatch):
    from affine_avoid import checks

    monkeypatch.setitem(checks.CRITERIA, "golden", lambda depth: (False, "forced"))
    code, out, _ = run(capsys, "check", "--only", "golden", "--format", "json")
    assert code == EXIT_CHECK and json.loads(out)["passed"] is False


def test_probe(capsys):
    code, out, _ = run(capsys, "probe", "-p", "24351", "--box", "5", "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["experimental"] and obj["cells"] == 12


def test_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("AFFINE_AVOID_THREADS", "2")
    code, out, _ = run(capsys, "series", "-p", "2431", "-j", "1")
    assert code == 0 and json.loads(out)["behavior"]["kind"] == "EventuallyPeriodic"
    monkeypatch.setenv("AFFINE_AVOID_THREADS", "many")
    code, _, _ = run(capsys, "series", "-p", "2431")
    assert code == EXIT_INPUT


def test_series_n2(capsys):
    _, out, _ = run(capsys, "series", "-p", "4321", "-n", "2")
    assert json.loads(out)["avoiders"] == {"numerator": [1, 1], "denominator": [1, -1]}


def test_enumerate_length_zero(capsys):
    _, out, _ = run(capsys, "enumerate", "-p", "321", "-L", "0")
    assert out.splitlines() == ["length,avoiders,containers,bott", "0,1,0,1"]


def test_output_independent_of_parallelism(capsys):
    _, one, _ = run(capsys, "series", "-p", "24351", "-j", "1")
    _, three, _ = run(capsys, "series", "-p", "24351", "-j", "3")
    assert one == three
