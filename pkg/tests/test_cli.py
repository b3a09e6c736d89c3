import subprocess
import sys
from pathlib import Path

import pytest

from antilist.cli import parse_reals, parse_streams, run
from antilist.powerset import PowersetInstance

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def call(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io

        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_real_ind_paper_list(capsys):
    code, out, _ = call(capsys, "real-ind", "--base", "3", "--depth", "6",
                        "--input", str(FIXTURES / "paper_base3.txt"))
    assert code == 0
    assert "0.211121…_3" in out
    assert "σ|≤6 = 610/729" in out


def test_real_anti_from_digit_streams(capsys):
    code, out, _ = call(capsys, "real-anti", "-b", "3", "-i", str(FIXTURES / "paper_base3_streams.txt"))
    assert code == 0
    assert out.splitlines()[0] == "c = 0.221221…_3"


def test_real_ind_trace_one_line_per_step(capsys):
    code, out, _ = call(capsys, "real-ind", "-b", "3", "--trace",
                        "-i", str(FIXTURES / "paper_base3.txt"))
    rows = out.splitlines()[4:]
    assert code == 0
    assert len(rows) == 6
    assert [r.split()[3] for r in rows] == ["=", "≠", "≠", "≠", "=", "≠"]


def test_pow_stages_single(capsys):
    code, out, _ = call(capsys, "pow-stages", "-e", '{"n":1,"order":[0],"f":[[]]}')
    assert code == 0
    assert "𝓑 = {0}" in out.splitlines()
    assert "in range of f: no" in out


@pytest.mark.parametrize("cmd", ["real-ind", "real-anti"])
def test_base_two_rejected(capsys, cmd):
    code, _, err = call(capsys, cmd, "--base", "2", "-e", "1/2")
    assert code == 2
    assert f"base must exceed 2 for {cmd}" in err


@pytest.mark.parametrize("cmd", ["real-h", "real-pairs", "real-pairind"])
def test_binary_variants_need_base_two(capsys, cmd):
    code, _, err = call(capsys, cmd, "--base", "3", "-e", "1/2")
    assert code == 2
    assert f"base must be 2 for {cmd}" in err


@pytest.mark.parametrize("argv", [
    ["seq-ind", "-e", "1:2"],
    ["real-ind", "-e", "3/2"],
    ["real-ind", "-e", "1/2", "--depth", "2"],
    ["pow-b", "-e", '{"n": 2, "order": [0, 1], "f": [[1]]}'],
    ["pow-b", "-e", '{"n": 1, "order": [0], "f": [[]]}', "--order", "1,0"],
    ["pow-dn", "-e", '{"n": 1, "order": [0], "f": [[]]}', "-k", "-1"],
])
def test_parse_and_precondition_errors_exit_2(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == 2
    assert out == ""
    assert "error:" in err


def test_unknown_subcommand_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["nope"])
    assert exc.value.code == 2


def test_seq_commands(capsys):
    path = str(FIXTURES / "streams.txt")
    assert call(capsys, "seq-ind", "-i", path)[1] == "σ = 011…\n"
    assert call(capsys, "seq-diag", "-i", path)[1] == "c = 011…\n"
    code, out, _ = call(capsys, "seq-ind", "-i", path, "--trace")
    assert len(out.splitlines()) == 1 + 2 + 3


def test_stdin_input(capsys, monkeypatch):
    code, out, _ = call(capsys, "seq-ind", stdin=":1\n:0\n", monkeypatch=monkeypatch)
    assert (code, out) == (0, "σ = 01…\n")


def test_binary_reals(capsys):
    path = str(FIXTURES / "binary_reals.txt")
    assert call(capsys, "real-h", "-i", path)[1].splitlines()[0] == "h = 0.10101001…_2"
    assert call(capsys, "real-pairs", "-i", path)[1].splitlines()[0] == "s = 0.10010101…_2"
    out = call(capsys, "real-pairind", "-i", path, "--depth", "1")[1]
    assert out.splitlines() == ["σ = 0.10…_2", "σ|≤2 = 1/2"]


def test_pow_commands(capsys):
    loop = str(FIXTURES / "instance_loop.json")
    cyc = str(FIXTURES / "instance_cycle.json")
    assert "B = {0}" in call(capsys, "pow-b", "-i", cyc)[1]
    out = call(capsys, "pow-chain", "-i", loop)[1]
    assert "chain = ⟨1⟩" in out and "B = {1}" in out
    out = call(capsys, "pow-chain", "-i", loop, "--condition", "relaxed")[1]
    assert "B = {1}" in out
    assert "D_1 = {1}" in call(capsys, "pow-dn", "-k", "1", "-i", loop)[1]
    assert "D_0 = {1}" in call(capsys, "pow-dn", "-i", loop)[1]
    assert "D_∞ = {}" in call(capsys, "pow-dinf", "-i", cyc)[1]
    out = call(capsys, "pow-b", "-i", loop, "--order", "1,0")[1]
    assert "B = {1}" in out


def test_pow_reports_range_membership(capsys):
    out = call(capsys, "pow-dn", "-e", '{"n": 2, "order": [0, 1], "f": [[], [0]]}')[1]
    assert "D_0 = {0, 1}" in out and "in range of f: no" in out


@pytest.mark.parametrize("cmd,fixture", [
    ("seq-ind", "streams.txt"),
    ("real-ind", "paper_base3.txt"),
    ("real-ind", "paper_base3_streams.txt"),
    ("real-h", "binary_reals.txt"),
    ("pow-stages", "instance_cycle.json"),
    ("pow-chain", "instance_loop.json"),
])
def test_emit_fixture_round_trip(capsys, cmd, fixture):
    code, first, _ = call(capsys, cmd, "--emit-fixture", "-i", str(FIXTURES / fixture))
    assert code == 0
    code, second, _ = call(capsys, cmd, "--emit-fixture", "-e", first)
    assert second == first
    if cmd.startswith("pow"):
        assert PowersetInstance.from_json(first) == PowersetInstance.from_json(
            (FIXTURES / fixture).read_text())
    elif cmd.startswith("seq"):
        assert parse_streams(first) == parse_streams((FIXTURES / fixture).read_text())
    else:
        base = 3 if cmd == "real-ind" else 2
        assert parse_reals(first) == parse_reals((FIXTURES / fixture).read_text(), base)


def test_verify_small_run(capsys):
    import json

    code, out, _ = call(capsys, "verify", "--max-n", "2", "--random", "20", "--real-lists", "10")
    report = json.loads(out)
    assert code == 0
    assert report["ok"] is True and report["failure_count"] == 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "antilist", "real-anti", "-b", "3",
         "-i", str(FIXTURES / "paper_base3.txt")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("c = 0.221221…_3")


def test_verify_failures_exit_1(capsys, monkeypatch):
    from antilist import oracle

    def failing(**kwargs):
        rep = oracle.VerificationReport(instances_checked=1)
        rep.fail("theorem5", "{}", "injected")
        return rep

    monkeypatch.setattr(oracle, "verify_all", failing)
    code, out, _ = call(capsys, "verify")
    assert code == 1
    assert '"failure_count": 1' in out
