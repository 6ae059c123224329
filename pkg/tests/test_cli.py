import json

import pytest

from suitable import cli
from suitable.cli import main, parse_range
from suitable.constructions import catalog
from suitable.model import is_core, is_suitable_array
from suitable.tableio import format_table, read_table, write_table


@pytest.fixture
def fig2_file(tmp_path):
    return str(write_table(tmp_path / "fig2.txt", catalog("fig2-955").table(), 5))


def test_parse_range():
    assert parse_range("3..5,7") == [3, 4, 5, 7]
    assert parse_range("2") == [2]
    with pytest.raises(cli.UsageError):
        parse_range(",")


def test_verify_exit_codes(fig2_file, tmp_path, capsys):
    assert main(["verify", fig2_file]) == 0
    assert "ok" in capsys.readouterr().out
    assert main(["verify", fig2_file, "--t", "6"]) == 1
    assert "violation" in capsys.readouterr().out
    bad = tmp_path / "bad.txt"
    bad.write_text("2 3 2 core\n1 2 3\n")
    assert main(["verify", str(bad)]) == 2
    assert main(["verify", str(tmp_path / "missing.txt")]) == 2
    assert main(["frobnicate"]) == 2


def test_verify_pattern_fill(tmp_path, capsys):
    path = tmp_path / "fig3.txt"
    assert main(["construct", "catalog", "fig3-1767", "--pattern", "--out", str(path)]) == 0
    assert "*" in path.read_text()
    assert main(["verify", str(path)]) == 0
    assert main(["verify", str(path), "--fill", "random:4"]) == 0
    assert "free entries completed" in capsys.readouterr().err
    assert main(["verify", str(path), "--fill", "shuffle"]) == 2


def test_search_exists(tmp_path, capsys):
    out = tmp_path / "w.txt"
    assert main(["search", "exists", "4", "2", "3", "--out", str(out), "--json"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    report = json.loads(lines[-1])
    assert report["status"] == "found" and report["artifacts"] == [str(out)]
    tf = read_table(out)
    assert is_core(tf.table, 3)
    assert main(["verify", str(out)]) == 0
    assert main(["search", "exists", "3", "2", "3"]) == 3
    assert main(["search", "exists", "9", "5", "5", "--max-nodes", "1"]) == 4
    assert main(["search", "exists", "4", "9", "3"]) == 6


def test_search_exists_default_path(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(["search", "exists", "4", "2", "3"]) == 0
    assert is_core(read_table(tmp_path / "core-4-2-3.txt").table, 3)


def test_search_scn_and_n(capsys):
    assert main(["search", "scn", "5", "8", "--v-cap", "4"]) == 0
    assert "scn(5,8) = 2" in capsys.readouterr().out
    assert main(["search", "n", "5", "3"]) == 0
    assert "N(5,3) = 4" in capsys.readouterr().out
    assert main(["search", "n", "5", "3", "--n-cap", "3"]) == 3


def test_table_scn(capsys):
    assert main(["table", "--t", "3..5", "--N", "0..9"]) == 0
    out = capsys.readouterr().out
    row = [ln for ln in out.splitlines() if ln.split()[:2] == ["5", "8"]]
    assert row and row[0].split()[2:4] == ["2", "exact"]
    assert main(["table", "--t", "5", "--N", "8", "--confirm"]) == 0
    assert "confirmed by search" in capsys.readouterr().out
    assert main(["table", "--t", "", "--N", "3"]) == 2


def test_table_records(capsys):
    assert main(["table", "--t", "7", "--N", "16", "--format", "records"]) == 0
    recs = [json.loads(ln) for ln in capsys.readouterr().out.splitlines()]
    exact = [r for r in recs if r["kind"] == "exact"]
    assert [r["value"] for r in exact] == [5]


def test_table_n(capsys):
    assert main(["table", "--quantity", "n", "--t", "3..4", "--v", "4..5", "--confirm"]) == 0
    assert capsys.readouterr().out.count("confirmed by search") >= 3


def test_transforms_via_cli(fig2_file, tmp_path):
    arr = tmp_path / "arr.txt"
    assert main(["expand", fig2_file, "--out", str(arr)]) == 0
    assert is_suitable_array(read_table(arr).table, 5)
    back = tmp_path / "core.txt"
    assert main(["normalize", str(arr), "--out", str(back)]) == 0
    assert read_table(back).table == catalog("fig2-955").table()
    small = tmp_path / "small.txt"
    assert main(["remove-symbol", fig2_file, "5", "--out", str(small)]) == 0
    assert is_core(read_table(small).table, 5)
    ext = tmp_path / "ext.txt"
    assert main(["extend", fig2_file, "--out", str(ext)]) == 0
    tf = read_table(ext)
    assert (tf.table.n_rows, tf.strength) == (13, 6) and is_core(tf.table, 6)
    assert main(["extend", str(ext), "--t", "7"]) == 6


def test_construct(tmp_path, capsys):
    assert main(["construct", "trivial", "4"]) == 0
    assert capsys.readouterr().out.startswith("4 4 4 array")
    assert main(["construct", "small-core", "3", "5", "9"]) == 0
    assert capsys.readouterr().out.startswith("9 3 5 core")
    assert main(["construct", "small-core", "3", "5", "8"]) == 6
    assert main(["construct", "catalog", "fig5"]) == 2


def test_output_is_reproducible(capsys):
    def run(argv):
        assert main(argv) == 0
        return capsys.readouterr().out
    for argv in (["construct", "catalog", "fig4-2679", "--fill", "random:9"],
                 ["search", "exists", "6", "4", "4", "--out", "/dev/null", "--json"],
                 ["table", "--t", "3..7", "--N", "0..20"]):
        assert run(argv) == run(argv)


def test_normalize_unsuitable(tmp_path):
    path = tmp_path / "a.txt"
    path.write_text("2 3 2 array\n1 2 3\n1 2 3\n")
    assert main(["normalize", str(path)]) == 6
