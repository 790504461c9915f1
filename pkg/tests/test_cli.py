import csv
import json
import subprocess
import sys

import pytest

from hypervec import __version__
from hypervec.cli import SEED_ENV, main


def read_rows(path):
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith(f"# hypervec {__version__} ")
    return list(csv.reader(lines[1:]))


def small_corpus(root):
    data = {
        "en": ["the cat sat on the mat", "a dog barks at night", "the sun is hot today"],
        "de": ["die katze sitzt auf der matte", "ein hund bellt nachts", "die sonne ist heute heiss"],
    }
    for split in ("train", "test"):
        for label, lines in data.items():
            d = root / split / label
            d.mkdir(parents=True)
            (d / "s.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")
    return root


def test_sim_profile(tmp_path):
    out = tmp_path / "p.csv"
    assert main(["sim-profile", "--kind", "level", "--count", "4", "--dim", "2000", "--out", str(out)]) == 0
    rows = read_rows(out)
    assert rows[0] == ["", "0", "1", "2", "3"]
    assert len(rows) == 5
    assert rows[1][1] == "1.000000"
    assert "--kind=level" in out.read_text().splitlines()[0]


def test_bundle_error(tmp_path):
    out = tmp_path / "b.csv"
    assert main(["bundle-error", "--count", "4", "--reps", "2", "--dim", "500", "--out", str(out)]) == 0
    rows = read_rows(out)
    assert rows[0] == ["numOperands", "strategy", "meanCosine"]
    assert len(rows) == 1 + 3 * 4
    assert {r[1] for r in rows[1:]} == {"Bias", "Random", "Auxiliary", "Addition"}
    assert all(r[2] == "1.000000" for r in rows[1:] if r[1] == "Addition")


def test_bundle_error_needs_two_operands(tmp_path, capsys):
    assert main(["bundle-error", "--count", "1", "--out", str(tmp_path / "x.csv")]) == 1
    assert "at least 2" in capsys.readouterr().err


def test_record_demo(tmp_path):
    out = tmp_path / "r.csv"
    assert main(["record-demo", "--dim", "2000", "--out", str(out)]) == 0
    rows = read_rows(out)
    assert rows[0] == ["record", "variable", "index", "member", "similarity", "stored"]
    assert len(rows) == 1 + 3 * (3 + 10 + 4)
    stored = [r for r in rows[1:] if r[0] == "r1" and r[5] == "1"]
    assert [(r[1], r[3]) for r in stored] == [("fruit", "apple"), ("weight", "7"), ("season", "fall")]


def test_langid(tmp_path, capsys):
    root = small_corpus(tmp_path / "corpus")
    out = tmp_path / "m.json"
    model = tmp_path / "model.bin"
    code = main(["langid", "--corpus", str(root), "--dim", "2000", "--out", str(out),
                 "--model", str(model)])
    assert code == 0
    metrics = json.loads(out.read_text())
    assert metrics["accuracy"] == 1.0
    assert metrics["labels"] == ["de", "en"]
    rows = read_rows(tmp_path / "m.confusion.csv")
    assert rows == [["true\\predicted", "de", "en"], ["de", "3", "0"], ["en", "0", "3"]]
    assert model.exists() and (tmp_path / "model.bin.json").exists()
    assert "accuracy 1.0000" in capsys.readouterr().out


def test_langid_missing_corpus(tmp_path):
    assert main(["langid", "--corpus", str(tmp_path / "nope"), "--out", str(tmp_path / "m.json")]) == 2


@pytest.mark.parametrize("argv", [
    [],
    ["sim-profile"],
    ["sim-profile", "--kind", "spiral", "--out", "x.csv"],
    ["sim-profile", "--dim", "0", "--out", "x.csv"],
    ["sim-profile", "--seed", "-1", "--out", "x.csv"],
    ["frobnicate"],
])
def test_usage_errors(argv):
    assert main(argv) == 1


def test_missing_output_directory(tmp_path):
    assert main(["sim-profile", "--out", str(tmp_path / "no" / "p.csv")]) == 1


def test_odd_circular_count_is_data_error(tmp_path):
    assert main(["sim-profile", "--kind", "circular", "--count", "5", "--out", str(tmp_path / "c.csv")]) == 2


def test_seed_from_environment(tmp_path, monkeypatch):
    args = ["sim-profile", "--kind", "random", "--count", "3", "--dim", "300"]
    monkeypatch.setenv(SEED_ENV, "17")
    assert main(args + ["--out", str(tmp_path / "env.csv")]) == 0
    monkeypatch.delenv(SEED_ENV)
    assert main(args + ["--seed", "17", "--out", str(tmp_path / "flag.csv")]) == 0
    assert main(args + ["--out", str(tmp_path / "zero.csv")]) == 0
    env_rows = read_rows(tmp_path / "env.csv")
    assert env_rows == read_rows(tmp_path / "flag.csv")
    assert env_rows != read_rows(tmp_path / "zero.csv")
    monkeypatch.setenv(SEED_ENV, "banana")
    assert main(args + ["--out", str(tmp_path / "bad.csv")]) == 1


@pytest.mark.parametrize("argv", [
    ["sim-profile", "--kind", "circular", "--dim", "1000"],
    ["bundle-error", "--count", "5", "--reps", "2", "--dim", "500"],
    ["record-demo", "--dim", "1000"],
])
def test_reruns_are_byte_identical(tmp_path, argv):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(argv + ["--out", str(a), "--seed", "3"]) == 0
    assert main(argv + ["--out", str(b), "--seed", "3"]) == 0
    body = lambda p: p.read_bytes().split(b"\n", 1)[1]
    assert body(a) == body(b)


def test_console_entry_point(tmp_path):
    out = tmp_path / "p.csv"
    proc = subprocess.run([sys.executable, "-m", "hypervec.cli", "sim-profile", "--count", "3",
                           "--dim", "100", "--out", str(out)], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert out.exists()
