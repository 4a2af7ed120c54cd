"""End-to-end tests of the command-line interface."""

import json
import math

from mpmath import mp

from pulsenest import fn_phases, load_phase_file, symmetric5_phases, to_toggling
from pulsenest.cli import main

PSI = math.acos(-0.25)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_sequence_writes_f1_file(tmp_path, capsys):
    out = tmp_path / "f1.json"
    code, stdout, _ = run(capsys, "sequence", "--family", "fn", "--n", "1",
                          "--sign", "+", "-o", str(out))
    assert code == 0
    assert "# command: sequence" in stdout
    seq = load_phase_file(out)
    assert len(seq) == 5
    assert abs(seq.phases[1] - PSI) < 1e-15
    assert tuple(seq.phases) == tuple(fn_phases(1).phases)
    doc = json.loads(out.read_text())
    assert doc["config"]["family"] == "fn"


def test_sequence_depth_zero(tmp_path, capsys):
    out = tmp_path / "f0.json"
    code, _, _ = run(capsys, "sequence", "--family", "fn", "--n", "0", "-o", str(out))
    assert code == 0
    assert tuple(load_phase_file(out).phases) == (0.0,)


def test_sequence_symmetric5(tmp_path, capsys):
    out = tmp_path / "s5.json"
    code, _, _ = run(capsys, "sequence", "--family", "symmetric5",
                     "--branch", "upper", "-o", str(out))
    assert code == 0
    seq = load_phase_file(out)
    assert tuple(seq.phases) == tuple(symmetric5_phases("upper").phases)


def test_sequence_high_precision_file(tmp_path, capsys):
    out = tmp_path / "f2hp.json"
    code, _, _ = run(capsys, "sequence", "--family", "fn", "--n", "2",
                     "--precision", "50", "-o", str(out))
    assert code == 0
    back = load_phase_file(out, digits=50)
    ref = fn_phases(2, digits=50)
    with mp.workdps(60):
        dev = max(abs(mp.mpf(a) - mp.mpf(b)) for a, b in zip(back.phases, ref.phases))
        assert dev < mp.mpf(10) ** -48


def test_sequence_degrees_display(tmp_path, capsys):
    out = tmp_path / "f1.json"
    code, stdout, _ = run(capsys, "sequence", "--family", "fn", "--n", "1",
                          "--degrees", "-o", str(out))
    assert code == 0
    assert "unit=deg" in stdout
    assert repr(math.degrees(3 * PSI)) in stdout
    # the file itself stays in radians
    assert abs(load_phase_file(out).phases[0] - 3 * PSI) < 1e-14


def test_toggling_command_roundtrip(tmp_path, capsys):
    src = tmp_path / "f1.json"
    tog = tmp_path / "tog.json"
    back = tmp_path / "back.json"
    run(capsys, "sequence", "--family", "fn", "--n", "1", "-o", str(src))
    code, _, _ = run(capsys, "toggling", "--input", str(src), "-o", str(tog))
    assert code == 0
    seq = load_phase_file(tog)
    assert seq.frame.value == "toggling"
    expected = to_toggling(fn_phases(1))
    assert max(abs(a - b) for a, b in zip(seq.phases, expected.phases)) < 1e-13
    code, _, _ = run(capsys, "toggling", "--input", str(tog), "--to", "applied",
                     "-o", str(back))
    assert code == 0
    orig = load_phase_file(src)
    got = load_phase_file(back)
    assert max(abs(a - b) for a, b in zip(got.phases, orig.phases)) < 1e-13


def test_sweep_csv_format_and_values(tmp_path, capsys):
    src = tmp_path / "f1.json"
    csv = tmp_path / "sweep.csv"
    run(capsys, "sequence", "--family", "fn", "--n", "1", "-o", str(src))
    code, _, _ = run(capsys, "sweep", "--input", str(src), "--eps-min", "-1",
                     "--eps-max", "1", "--steps", "401", "-o", str(csv))
    assert code == 0
    lines = csv.read_text().splitlines()
    header = [ln for ln in lines if not ln.startswith("#")]
    assert header[0] == "epsilon,f,fidelity,infidelity"
    rows = [ln.split(",") for ln in header[1:]]
    assert len(rows) == 401
    mid = rows[200]
    assert float(mid[0]) == 0.0
    assert abs(float(mid[2]) - 1) < 1e-14
    assert any(ln.startswith("# steps: 401") for ln in lines)


def test_sweep_single_pulse_half_eps(tmp_path, capsys):
    src = tmp_path / "one.json"
    csv = tmp_path / "one.csv"
    run(capsys, "sequence", "--family", "fn", "--n", "0", "-o", str(src))
    code, _, _ = run(capsys, "sweep", "--input", str(src), "--eps-min", "0.5",
                     "--eps-max", "0.5", "--steps", "2", "-o", str(csv))
    assert code == 0
    rows = [ln for ln in csv.read_text().splitlines() if not ln.startswith(("#", "epsilon"))]
    fid = float(rows[0].split(",")[2])
    assert abs(fid - math.cos(0.25 * math.pi)) < 1e-14


def test_sweep_f2_beats_f1_at_point_three(tmp_path, capsys):
    f1 = tmp_path / "f1.json"
    f2 = tmp_path / "f2.json"
    run(capsys, "sequence", "--family", "fn", "--n", "1", "-o", str(f1))
    run(capsys, "sequence", "--family", "fn", "--n", "2", "-o", str(f2))

    def infid_at_03(src, out):
        run(capsys, "sweep", "--input", str(src), "--eps-min", "0.3",
            "--eps-max", "0.3", "--steps", "2", "-o", str(out))
        row = [ln for ln in out.read_text().splitlines()
               if not ln.startswith(("#", "epsilon"))][0]
        return float(row.split(",")[3])

    assert infid_at_03(f2, tmp_path / "a.csv") < infid_at_03(f1, tmp_path / "b.csv")


def test_sweep_rejects_one_step(tmp_path, capsys):
    src = tmp_path / "f1.json"
    run(capsys, "sequence", "--family", "fn", "--n", "1", "-o", str(src))
    code, _, err = run(capsys, "sweep", "--input", str(src), "--eps-min", "0",
                       "--eps-max", "1", "--steps", "1", "-o", str(tmp_path / "x.csv"))
    assert code == 1
    assert "steps" in err


def test_order_f1_report_and_json(tmp_path, capsys):
    report = tmp_path / "order.json"
    code, stdout, _ = run(capsys, "order", "--family", "fn", "--n", "1",
                          "--json", str(report))
    assert code == 0
    assert "rounded_order: 6" in stdout
    doc = json.loads(report.read_text())
    assert doc["rounded_order"] == 6
    assert abs(doc["exponent"] - 6) < 0.1
    assert doc["residual"] < 0.05
    assert doc["window"][0] < doc["window"][1]
    assert doc["precision"] == 16
    assert doc["config"]["command"] == "order"


def test_order_from_phase_file(tmp_path, capsys):
    src = tmp_path / "f1.json"
    run(capsys, "sequence", "--family", "fn", "--n", "1", "-o", str(src))
    code, stdout, _ = run(capsys, "order", "--input", str(src))
    assert code == 0
    assert "rounded_order: 6" in stdout


def test_order_window_empty_exits_two(capsys):
    code, _, err = run(capsys, "order", "--family", "fn", "--n", "3")
    assert code == 2
    assert "higher precision" in err
    assert "warning" in err  # recommended-precision warning fired too


def test_order_usage_error(capsys):
    code, _, _ = run(capsys, "order", "--family", "fn", "--n", "-1")
    assert code == 1


def test_missing_input_exits_three(tmp_path, capsys):
    code, _, err = run(capsys, "sweep", "--input", str(tmp_path / "nope.json"),
                       "--eps-min", "0", "--eps-max", "1", "--steps", "3",
                       "-o", str(tmp_path / "x.csv"))
    assert code == 3
    assert "cannot read" in err


def test_malformed_input_exits_three(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"frame": "applied"}')
    code, _, err = run(capsys, "order", "--input", str(bad))
    assert code == 3


def test_unknown_command_exits_one(capsys):
    assert run(capsys, "frobnicate")[0] == 1


def test_check_passes(capsys):
    code, stdout, _ = run(capsys, "check")
    assert code == 0
    assert "0 failed" in stdout
    assert stdout.count("PASS") >= 10


def test_check_order_skip_at_low_precision(capsys):
    code, stdout, _ = run(capsys, "check", "--orders", "3")
    assert code == 0
    assert "SKIP fn_order_n3" in stdout
    assert "skipped" in stdout


def test_outputs_are_deterministic(tmp_path, capsys):
    # identical invocations must reproduce identical bytes, so the second
    # pass overwrites the same paths and the results are compared
    seq = tmp_path / "seq.json"
    csv = tmp_path / "sweep.csv"
    rep = tmp_path / "order.json"

    def once():
        run(capsys, "sequence", "--family", "fn", "--n", "1", "-o", str(seq))
        run(capsys, "sweep", "--input", str(seq), "--eps-min", "-0.5",
            "--eps-max", "0.5", "--steps", "21", "-o", str(csv))
        _, stdout, _ = run(capsys, "order", "--family", "fn", "--n", "1",
                           "--json", str(rep))
        return seq.read_text(), csv.read_text(), rep.read_text(), stdout

    first = once()
    second = once()
    assert first == second
