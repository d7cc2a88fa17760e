import csv
import io
import json
import subprocess
import sys

import pytest

from gfmatch.cli import main
from gfmatch.core import MatchPartition, intern, verify


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def partition_lines(out):
    return [line for line in out.splitlines() if not line.startswith(" ")]


def test_match_whole(capsys):
    code, out, _ = run(capsys, "match", "-p", "aa", "-t", "abab", "--whole")
    assert code == 0
    assert out.splitlines()[0] == "0  ab|ab"
    assert "    a = ab" in out


def test_match_none(capsys):
    code, out, _ = run(capsys, "match", "-p", "ab", "-t", "q", "--whole")
    assert code == 1 and out == ""


@pytest.mark.parametrize("algo", ["baseline", "oracle", "auto"])
def test_algorithms_agree(capsys, algo):
    _, want, _ = run(capsys, "match", "-p", "aba", "-t", "xyx")
    code, got, _ = run(capsys, "match", "-p", "aba", "-t", "xyx", "--algo", algo)
    assert code == 0 and got == want


def test_json_roundtrip(capsys):
    code, out, _ = run(capsys, "match", "-p", "abab", "-t", "xyxyzxyxy", "--json", "--completeness", "full",
                       "--all-gap-splits")
    assert code == 0
    rows = json.loads(out)
    p, t = intern("abab"), intern("xyxyzxyxy")
    assert rows
    for row in rows:
        mp = MatchPartition(row["start"], tuple(row["boundaries"]))
        assert verify(p, t, mp)
        assert "".join(sum(row["pieces"], [])) == "xyxyzxyxy"[mp.start:mp.end]


def test_stdin_and_split_tokens(capsys, monkeypatch):
    code, out, _ = run(capsys, "match", "-p", "A B A", "-t", "-", "--tokens", "split", "--whole",
                       stdin="the cat the\n", monkeypatch=monkeypatch)
    assert code == 0
    assert out.splitlines()[0] == "0  the|cat|the"


def test_instance_file(capsys, tmp_path):
    f = tmp_path / "inst.txt"
    f.write_text("AA\nxyxy\n", encoding="utf-8")
    code, out, _ = run(capsys, "match", "--instance", str(f), "--whole")
    assert code == 0 and out.startswith("0  xy|xy")


def test_errors_exit_two(capsys, tmp_path):
    code, _, err = run(capsys, "match", "-p", "aa", "--text-file", str(tmp_path / "missing"))
    assert code == 2 and "cannot read" in err
    code, _, err = run(capsys, "match", "-p", "aa")
    assert code == 2
    code, _, err = run(capsys, "match", "-p", "", "-t", "ab")
    assert code == 2


def test_config_file_and_flag_precedence(capsys, tmp_path):
    cfg = tmp_path / "c.toml"
    cfg.write_text('whole = true\nalgo = "baseline"\nmax_matches = 1\n', encoding="utf-8")
    code, out, _ = run(capsys, "match", "--config", str(cfg), "-p", "ab", "-t", "xyz")
    assert code == 0 and partition_lines(out) == ["0  x|yz"]
    code, out, _ = run(capsys, "match", "--config", str(cfg), "-p", "ab", "-t", "xyz", "--max-matches", "5")
    assert partition_lines(out) == ["0  x|yz", "0  xy|z"]
    bad = tmp_path / "bad.toml"
    bad.write_text("nonsense = 1\n", encoding="utf-8")
    assert run(capsys, "bench", "--config", str(bad))[0] == 2
    broken = tmp_path / "broken.toml"
    broken.write_text("= = =\n", encoding="utf-8")
    assert run(capsys, "bench", "--config", str(broken))[0] == 2


def test_reps(capsys):
    code, out, _ = run(capsys, "reps", "-t", "abracadabra")
    assert code == 0 and out.splitlines()[0] == "4\t2\t0,7"


def test_viz(capsys, tmp_path):
    target = tmp_path / "d.svg"
    code, _, _ = run(capsys, "viz", "-p", "aa", "-t", "abab", "--whole", "-o", str(target), "--markers", "0,2")
    assert code == 0
    svg = target.read_text(encoding="utf-8")
    assert svg.count('class="match-span"') == 1 and svg.count('class="marker"') == 2
    code, _, err = run(capsys, "viz", "-t", "a" * 6000)
    assert code == 2 and "layout budget" in err


def test_gen(capsys, tmp_path):
    code, _, _ = run(capsys, "gen", "--preset", "fig2", "--seed", "7", "--out-dir", str(tmp_path))
    assert code == 0
    files = sorted(tmp_path.glob("instance_*.txt"))
    assert len(files) == 500
    with open(tmp_path / "manifest.csv", encoding="utf-8") as fh:
        assert len(list(csv.DictReader(fh))) == 500
    code, out, _ = run(capsys, "match", "--instance", str(files[0]), "--max-matches", "1")
    assert code in (0, 1)
    assert run(capsys, "gen", "--pat-len", "2", "--pat-sigma", "3", "--out-dir", str(tmp_path / "x"))[0] == 2


def test_bench_preset_with_plot(capsys, tmp_path):
    out_csv = tmp_path / "b.csv"
    code, _, _ = run(capsys, "bench", "--preset", "fig3", "--count", "3", "--cutoff-ms", "1000",
                     "--out", str(out_csv), "--no-warmup")
    assert code == 0
    rows = list(csv.DictReader(out_csv.open(encoding="utf-8")))
    assert len(rows) == 9
    assert sum(r["algorithm"] == "portfolio" for r in rows) == 3
    assert (tmp_path / "b.png").stat().st_size > 1000


def test_bench_config(capsys, tmp_path):
    cfg = tmp_path / "bench.toml"
    cfg.write_text('text_len = 40\ntext_sigma = "3-4"\npat_len = 4\npat_sigma = 2\ncount = 2\n'
                   'algorithms = "heuristic"\nwarmup = false\n', encoding="utf-8")
    code, out, _ = run(capsys, "bench", "--config", str(cfg))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["text_sigma"] for r in rows] == ["3", "4"]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "gfmatch", "match", "-p", "aa", "-t", "abab", "--whole"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout.startswith("0  ab|ab")
