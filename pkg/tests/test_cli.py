import json
from fractions import Fraction

import pytest

from localk3 import cli


def run_cli(capsys, *args):
    code = cli.main(list(args))
    return code, capsys.readouterr().out


def test_hilb_json_report(capsys):
    code, out = run_cli(capsys, "hilb", "--max", "5")
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == 1
    assert report["config"]["subcommand"] == "hilb"
    assert report["mismatches"] == []
    assert report["result"]["table"] == ["1", "24", "324", "3200", "25650", "176256"]


def test_reports_are_byte_identical(capsys):
    _, first = run_cli(capsys, "bps", "--q-max", "2")
    _, second = run_cli(capsys, "bps", "--q-max", "2")
    assert first == second


def test_json_round_trips(capsys):
    _, out = run_cli(capsys, "pt", "--y-max", "2", "--z-max", "3")
    report = json.loads(out)
    assert json.dumps(report, sort_keys=True, indent=2) + "\n" == out


def test_jinv_keeps_rational_form(capsys):
    code, out = run_cli(capsys, "jinv", "--vector", "0;2,4;-2")
    assert code == 0
    assert json.loads(out)["result"]["J"] == "176337/1"
    code, out = run_cli(capsys, "jinv", "--vector", "3;0,0;3")
    assert json.loads(out)["result"]["J"] == "1/9"


def test_hilb_csv(capsys):
    _, out = run_cli(capsys, "hilb", "--max", "2", "--format", "csv")
    assert out == "n,chi\n0,1\n1,24\n2,324\n"


def test_pt_csv_quotes_classes(capsys):
    _, out = run_cli(capsys, "pt", "--y-max", "1", "--z-max", "1", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == "class,z,coeff"
    assert '"0,1",1,24' in lines


def test_pt_signed_flag(capsys):
    _, plain = run_cli(capsys, "pt", "--y-max", "2", "--z-max", "3")
    _, signed = run_cli(capsys, "pt", "--y-max", "2", "--z-max", "3", "--signed")
    assert plain != signed
    assert json.loads(signed)["config"]["signed"] is True


def test_xbar_verify_passes(capsys):
    code, out = run_cli(capsys, "xbar-verify", "--y-max", "2", "--z-max", "4")
    assert code == 0
    assert json.loads(out)["mismatches"] == []


def test_ky_verify_passes(capsys):
    code, out = run_cli(capsys, "ky-verify", "--q-max", "3", "--z-window", "6")
    assert code == 0
    assert json.loads(out)["mismatches"] == []


def test_bps_with_gv_comparison(capsys):
    code, out = run_cli(capsys, "bps", "--q-max", "4", "--y-max", "3", "--z-max", "8")
    assert code == 0
    report = json.loads(out)
    assert report["mismatches"] == []
    assert report["result"]["overlap_h"] == [0, 1, 2]
    values = {(row["g"], row["h"]): row["value"] for row in report["result"]["table"]}
    assert values[(0, 1)] == "24/1"
    assert values[(2, 2)] == "3/1"
    assert "conjectural" in report["result"]["notes"]


def test_isometry_invariance(capsys):
    code, out = run_cli(capsys, "isometry", "--vector", "2;0,0;-2", "--samples", "5")
    assert code == 0
    report = json.loads(out)
    assert report["mismatches"] == []
    assert report["result"]["J"] == "176337/1"
    assert report["result"]["checked_vectors"] == 6


def test_out_writes_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code = cli.main(["hilb", "--max", "3", "--out", str(target)])
    assert code == 0
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text())["result"]["table"][3] == "3200"


@pytest.mark.parametrize("argv", [
    ["hilb", "--max", "-1"],
    ["pt", "--y-max", "-2", "--z-max", "3"],
    ["pt", "--y-max", "2", "--z-max", "-3"],
    ["ky-verify", "--q-max", "-2", "--z-window", "4"],
    ["ky-verify", "--q-max", "3", "--z-window", "0"],
    ["bps", "--q-max", "-1"],
    ["bps", "--q-max", "3", "--y-max", "2"],
    ["jinv", "--vector", "not-a-vector"],
    ["jinv", "--vector", "0;0,0;0"],
    ["jinv", "--vector", "1;0,0;1", "--format", "csv"],
    ["unknown-subcommand"],
])
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as info:
        cli.main(argv)
    assert info.value.code == 2


def test_verification_failure_exit_code(monkeypatch, capsys):
    def fake_check(q_max, z_window):
        return [(0, 0, Fraction(1), Fraction(2))]

    monkeypatch.setattr(cli, "ky_identity_check", fake_check)
    code, out = run_cli(capsys, "ky-verify", "--q-max", "1", "--z-window", "2")
    assert code == 1
    assert json.loads(out)["mismatches"] == [
        {"q": 0, "z": 0, "left": "1/1", "right": "2/1"}]


def test_gv_window_error_is_usage_error(capsys):
    # structurally valid flags, but the window cannot support extraction
    code = cli.main(["bps", "--q-max", "2", "--y-max", "3", "--z-max", "1"])
    assert code == 2
