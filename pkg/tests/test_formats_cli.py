from __future__ import annotations

import json

import pytest

from raneylab import fixtures
from raneylab.cli import main
from raneylab.errors import NotAFrame, ParseError
from raneylab.formats import (
    dumps,
    lattice_to_json,
    lattice_to_text,
    parse_text,
    require_frame,
    space_to_json,
    space_to_text,
)
from raneylab.spaces import sierpinski

C3_TEXT = "lat 3\nlabels 0 a 1\n0 < 1\n1 < 2\n"
SIER_TEXT = "# Sierpinski\nspace 2\nlabels x y\n{}\n{1}\n0b11\n"


def test_lattice_round_trips():
    L = fixtures.L5()
    for text in (lattice_to_text(L), dumps(lattice_to_json(L))):
        M = parse_text(text).value
        assert M.labels == L.labels and M.covers() == L.covers()


def test_space_round_trips():
    X = sierpinski()
    assert parse_text(SIER_TEXT).value == X
    assert parse_text(space_to_text(X)).value == X
    assert parse_text(dumps(space_to_json(X))).value == X


def test_poset_header():
    parsed = parse_text("poset 3\n0 < 1\n0 < 2\n")
    assert parsed.kind == "poset" and parsed.value.n == 3


@pytest.mark.parametrize("text,line,col", [
    ("lat 3\n0 < 1\n1 < x\n", 3, 5),
    ("lat 2\n0 < 7\n", 2, 5),
    ("grid 2\n", 1, 1),
    ("space 2\n{0}\nfoo\n", 3, 1),
    ('{"format": "LAT1", "n": 2,\n "order": [[0, 1]', 2, 18),
])
def test_parse_errors_carry_positions(text, line, col):
    with pytest.raises(ParseError) as exc:
        parse_text(text)
    assert (exc.value.line, exc.value.column) == (line, col)


def test_require_frame_rejects_m3():
    with pytest.raises(NotAFrame):
        require_frame(fixtures.M3())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_analyze_frame(tmp_path, capsys):
    f = tmp_path / "c3.lat"
    f.write_text(C3_TEXT)
    code, out, _ = run(capsys, "analyze", str(f))
    report = json.loads(out)
    assert code == 0
    assert report["primes"] == ["0", "a"] and report["subfit"] is False


def test_cli_analyze_space(tmp_path, capsys):
    f = tmp_path / "sier.spc"
    f.write_text(SIER_TEXT)
    code, out, _ = run(capsys, "analyze", str(f))
    report = json.loads(out)
    assert code == 0 and report["t0"] is True and report["t1"] is False


def test_cli_parse_error(tmp_path, capsys):
    f = tmp_path / "bad.lat"
    f.write_text("lat 3\n0 < 1\n1 < x\n")
    code, _, err = run(capsys, "analyze", str(f))
    assert code == 2
    assert err.startswith(f"{f}:3:5:")


def test_cli_not_a_frame(tmp_path, capsys):
    f = tmp_path / "m3.lat"
    f.write_text(lattice_to_text(fixtures.M3()))
    code, _, err = run(capsys, "analyze", str(f))
    assert code == 2 and "NotAFrame" in err


def test_cli_spectra(tmp_path, capsys):
    f = tmp_path / "c3.lat"
    f.write_text(C3_TEXT)
    code, out, _ = run(capsys, "spectra", str(f))
    report = json.loads(out)
    assert code == 0 and report["pt"]["n"] == 2 and report["interval"]["holds"]


def test_cli_gen(capsys):
    code, out, _ = run(capsys, "gen", "--posets", "3")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(rows) == 5
    assert sorted(r["elements"] for r in rows) == [4, 5, 5, 6, 8]


def test_cli_gen_tsv(capsys):
    code, out, _ = run(capsys, "gen", "--posets", "2", "--format", "tsv")
    lines = out.splitlines()
    assert lines[0] == "hash\tn\telements\tposet" and len(lines) == 3


def test_cli_check_only(capsys):
    code, out, _ = run(capsys, "check", "--only", "manyfacts", "--max-poset", "3")
    lines = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert [r["id"] for r in lines[:-1]] == ["manyfacts"]
    assert lines[-1]["summary"]["ok"] is True


def test_cli_check_unknown_id(capsys):
    code, _, err = run(capsys, "check", "--only", "no-such-check")
    assert code == 2 and "ConfigError" in err


def test_cli_atlas(tmp_path, capsys):
    out_path = tmp_path / "atlas.tsv"
    code, _, _ = run(capsys, "atlas", "--max-poset", "2", "--format", "tsv", "--out", str(out_path))
    lines = out_path.read_text().splitlines()
    assert code == 0
    assert lines[0].split("\t")[:3] == ["hash", "poset_size", "elements"]
    assert len(lines) == 1 + 1 + 1 + 2


def test_cli_env_cap(monkeypatch, capsys):
    monkeypatch.setenv("RANEY_MAX_ELEMENTS", "8")
    code, out, _ = run(capsys, "check", "--only", "manyfacts", "--max-poset", "4")
    summary = json.loads(out.splitlines()[-1])["summary"]
    assert code == 0 and summary["caps"]["max_elements"] == 8
    # posets of size 0..4 whose upset lattice has at most 8 elements: 1 + 1 + 2 + 5 + 9
    assert summary["counts"]["frame"] == 18
