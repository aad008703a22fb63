import random
import subprocess
import sys

import pytest

from dupfree.channel import CorruptionTrace, DisjointPlan, apply_disjoint, apply_trace
from dupfree.cli import main
from dupfree.codes import Code, enumerate_code
from dupfree.words import format_word, parse_word


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_enumerate_writes_codeword_file(tmp_path, capsys):
    out = tmp_path / "c.txt"
    code, stdout, _ = run(capsys, "enumerate", "--n", "3", "--q", "2", "--F", "1", "--out", str(out))
    assert code == 0
    assert out.read_text() == "# n=3 q=2 F=1\n010\n101\n"
    assert stdout.strip() == "n=3 q=2 F=1 count=2 rate=0.333333333333"


def test_enumerate_from_length_set(capsys):
    code, stdout, _ = run(capsys, "enumerate", "--n", "5", "--q", "3", "--L", "2", "--mode", "disjoint", "--count-only")
    assert code == 0
    # 198 frozen from the naive filter over all 243 words
    assert "F=2 count=198" in stdout


def test_enumerate_empty_code(tmp_path, capsys):
    out = tmp_path / "e.txt"
    code, stdout, _ = run(capsys, "enumerate", "--n", "4", "--q", "2", "--F", "1,2", "--out", str(out))
    assert code == 0
    assert Code.loads(out.read_text()).members == []
    assert "count=0" in stdout


def test_enumerate_cap_exit_code(capsys):
    code, _, err = run(capsys, "enumerate", "--n", "8", "--q", "3", "--F", "1", "--cap", "5")
    assert code == 3 and "cap" in err


def test_corrupt_is_deterministic(tmp_path, capsys):
    words = tmp_path / "in.txt"
    words.write_text("054213\n012345\n")
    outs = []
    for k in range(2):
        out = tmp_path / f"out{k}.txt"
        code, _, _ = run(
            capsys, "corrupt", "--mode", "equal_length", "--L", "2", "--t", "3", "--seed", "7",
            "--q", "6", "--in", str(words), "--out", str(out),
        )
        assert code == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    lines = outs[0].decode().split()
    assert all(len(w) == 12 for w in lines)
    trace = CorruptionTrace.loads((tmp_path / "out0.txt.traces" / "000001.trace").read_text())
    assert apply_trace(parse_word("054213", 6), trace) == parse_word(lines[0], 6)


def test_corrupt_t0_is_identity(capsys):
    code, out, _ = run(capsys, "corrupt", "--mode", "disjoint", "--L", "1,2", "--t", "0", "--seed", "1", "--q", "3", "0120")
    assert code == 0 and out == "0120\n"


def test_corrupt_disjoint_writes_plans(tmp_path, capsys):
    code, out, _ = run(
        capsys, "corrupt", "--mode", "disjoint", "--L", "2,3", "--t", "2", "--seed", "1", "--q", "3",
        "--trace-dir", str(tmp_path), "01201021",
    )
    assert code == 0
    plan = DisjointPlan.loads((tmp_path / "000001.trace").read_text(), 3)
    assert format_word(apply_disjoint(parse_word("01201021", 3), plan), 3) == out.strip()


def test_corrupt_infeasible_reports_failure(capsys):
    code, _, err = run(capsys, "corrupt", "--mode", "disjoint", "--L", "2", "--t", "3", "--seed", "1", "--q", "3", "0120")
    assert code == 1 and "infeasible" in err


def test_decode_worked_example(capsys):
    code, out, _ = run(capsys, "decode", "--mode", "uniform", "--l", "2", "--n", "6", "--q", "6", "054545421313")
    assert code == 0 and out == "054213\tunique\n"


def test_decode_uncorrupted_codeword(capsys):
    code, out, _ = run(capsys, "decode", "--mode", "equal_length", "--L", "1,2", "--n", "5", "--q", "3", "01021")
    assert code == 0 and out.split()[0] == "01021"


@pytest.mark.parametrize("mode", ["equal_length", "disjoint", "disjoint_equal_length"])
def test_decode_round_trips_corrupt(tmp_path, capsys, mode):
    L = "1,2" if mode != "disjoint" else "2,5"
    spec_F = {"equal_length": {1, 2}, "disjoint": {2, 3, 5}, "disjoint_equal_length": {1, 2}}[mode]
    code_words = enumerate_code(7, 3, spec_F).members
    rng = random.Random(3)
    chosen = [rng.choice(code_words) for _ in range(40)]
    src = tmp_path / "x.txt"
    src.write_text("".join(format_word(w, 3) + "\n" for w in chosen))
    corrupted = tmp_path / "z.txt"
    assert run(capsys, "corrupt", "--mode", mode, "--L", L, "--t", "2", "--seed", "9", "--q", "3",
               "--in", str(src), "--out", str(corrupted))[0] == 0
    decoded = tmp_path / "d.txt"
    code, _, _ = run(capsys, "decode", "--mode", mode, "--L", L, "--n", "7", "--q", "3",
                     "--in", str(corrupted), "--out", str(decoded))
    assert code == 0
    assert [ln.split("\t")[0] for ln in decoded.read_text().splitlines()] == src.read_text().split()


def test_decode_failure_exit_code(capsys):
    code, out, _ = run(capsys, "decode", "--mode", "uniform", "--l", "3", "--n", "6", "--q", "6", "054545421313")
    assert code == 1 and out == "-\tno-candidate\n"


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "2", "--n", "6", "--q", "3", "--L", "2")
    assert code == 0 and "result=pass" in out and "collisions=0" in out


def test_verify_separation_violation(capsys):
    code, _, err = run(capsys, "verify", "--theorem", "2", "--L", "2,3")
    assert code == 2 and "2*2" in err


def test_verify_negative_control(capsys):
    code, out, _ = run(capsys, "verify", "--negative-control", "--n", "4", "--q", "2", "--L", "1,2")
    assert code == 0 and "result=fail" in out
    code, _, _ = run(capsys, "verify", "--negative-control", "--n", "1", "--q", "2", "--L", "1")
    assert code == 1


def test_verify_report_is_byte_stable(capsys):
    argv = ["verify", "--theorem", "3", "--n", "5", "--q", "3", "--L", "1,2", "--t", "2", "--no-timing"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_transform_examples(capsys):
    assert run(capsys, "transform", "--phi", "--l", "2", "--q", "6", "054213")[1] == "054331\n"
    assert run(capsys, "transform", "--inverse", "--l", "2", "--q", "6", "054331")[1] == "054213\n"
    out = run(capsys, "transform", "--parse", "--l", "2", "--q", "6", "054000033100")[1]
    assert out == "prefix=05 runs=0,4,2 blocks=4 331\n"


def test_transform_round_trip_file(tmp_path, capsys):
    rng = random.Random(5)
    words = ["".join(str(rng.randrange(5)) for _ in range(rng.randrange(3, 20))) for _ in range(50)]
    src = tmp_path / "w.txt"
    src.write_text("\n".join(words) + "\n")
    mid = tmp_path / "m.txt"
    run(capsys, "transform", "--phi", "--l", "3", "--q", "5", "--in", str(src), "--out", str(mid))
    _, out, _ = run(capsys, "transform", "--inverse", "--l", "3", "--q", "5", "--in", str(mid))
    assert out.split() == words


def test_bad_word_is_config_error(capsys):
    code, _, err = run(capsys, "transform", "--phi", "--l", "2", "--q", "3", "0159")
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "dupfree", "transform", "--l", "2", "--q", "6", "054213"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "054331\n"
