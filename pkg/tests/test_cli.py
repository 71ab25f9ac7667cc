from __future__ import annotations

import json

import pytest

from levelzero.cli import EXIT_BOUND, EXIT_FAIL, EXIT_OK, EXIT_PARSE, main


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_decompose_sl2(tmp_path, capsys):
    spec = write(tmp_path, "sl2.yaml", "preset: SL2\nq: 3\n")
    code, out, _ = run(capsys, "decompose", spec, "-N", "8")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert len(rep["parameters"]) == 3
    assert rep["checks"]["partition"] and rep["checks"]["coherence"]
    assert len(rep["spec_hash"]) == 64


def test_decompose_torus(tmp_path, capsys):
    spec = write(tmp_path, "t.json", json.dumps({
        "name": "T2", "rank": 2, "roots": [], "coroots": [], "simple": [], "theta": [[0, 1], [1, 0]], "q": 5}))
    code, out, _ = run(capsys, "decompose", spec, "-N", "2")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert [f["name"] for f in rep["facets"]] == ["{}"]
    assert all(p["attained"] for p in rep["parameters"])


def test_level_divisible_by_p(tmp_path, capsys):
    spec = write(tmp_path, "sl2.yaml", "preset: SL2\nq: 3\n")
    code, _, err = run(capsys, "decompose", spec, "-N", "6")
    assert code == EXIT_PARSE and "error" in err


def test_parse_errors(tmp_path, capsys):
    bad = write(tmp_path, "bad.yaml", "rank: 1\nroots: [[1]]\ncoroots: [[1]]\nq: 3\n")
    assert run(capsys, "decompose", bad, "-N", "2")[0] == EXIT_PARSE
    junk = write(tmp_path, "junk.yaml", "[unclosed\n")
    assert run(capsys, "decompose", junk, "-N", "2")[0] == EXIT_PARSE
    assert run(capsys, "decompose", str(tmp_path / "missing.yaml"), "-N", "2")[0] == EXIT_PARSE
    assert run(capsys, "decompose")[0] == EXIT_PARSE


def test_weyl_bound(tmp_path, capsys):
    spec = write(tmp_path, "gl3.yaml", "preset: GL3\nq: 5\n")
    code, _, err = run(capsys, "decompose", spec, "-N", "2", "--weyl-bound", "2")
    assert code == EXIT_BOUND and "error" in err


def test_dual_round_trip(tmp_path, capsys):
    spec = write(tmp_path, "sp4.yaml", "preset: Sp4\nq: 3\n")
    d1 = str(tmp_path / "d1.json")
    d2 = str(tmp_path / "d2.json")
    d3 = str(tmp_path / "d3.json")
    assert run(capsys, "dual", spec, "--out", d1)[0] == EXIT_OK
    assert run(capsys, "dual", d1, "--out", d2)[0] == EXIT_OK
    assert run(capsys, "dual", d2, "--out", d3)[0] == EXIT_OK
    assert json.loads(open(d1).read())["name"] == "Sp4-dual"
    assert json.loads(open(d2).read())["name"] == "Sp4"
    assert open(d1, "rb").read() == open(d3, "rb").read()


def test_fibers_gl2(tmp_path, capsys):
    spec = write(tmp_path, "gl2.yaml", "preset: GL2\nq: 7\n")
    code, out, _ = run(capsys, "fibers", spec, "-N", "3", "--levi", "")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["checks"]["round_trip"]
    assert rep["levi"] == []
    # every GL2 parameter restricts to the torus with nonempty fiber
    assert all(r["fibers"] for r in rep["parameters"])
    # regular parameters are not discrete, the witness is the torus
    assert all(not r["discrete"] for r in rep["parameters"])


def test_fibers_bad_levi(tmp_path, capsys):
    spec = write(tmp_path, "gl2.yaml", "preset: GL2\nq: 7\n")
    assert run(capsys, "fibers", spec, "-N", "3", "--levi", "5")[0] == EXIT_PARSE


def test_classical_sp4(tmp_path, capsys):
    spec = write(tmp_path, "sp4.yaml", "preset: Sp4\nq: 3\n")
    code, out, _ = run(capsys, "classical", spec, "-N", "8")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["rows"] and rep["checks"]["compatibility"]


def test_classical_rejects_gl(tmp_path, capsys):
    spec = write(tmp_path, "gl3.yaml", "preset: GL3\nq: 5\n")
    assert run(capsys, "classical", spec, "-N", "2")[0] == EXIT_PARSE


def test_coherence(tmp_path, capsys):
    spec = write(tmp_path, "sp4.yaml", "preset: Sp4\nq: 5\n")
    code, out, _ = run(capsys, "coherence", spec, "-N", "4")
    assert code == EXIT_OK
    assert json.loads(out)["checks"]["composition_law"]


@pytest.mark.parametrize("cmd", ["decompose", "coherence", "fibers", "classical"])
def test_csv_output(tmp_path, capsys, cmd):
    spec = write(tmp_path, "sp4.yaml", "preset: Sp4\nq: 3\n")
    code, out, _ = run(capsys, cmd, spec, "-N", "4", "--format", "csv")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert len(lines) > 1 and "," in lines[0]


def test_figure(tmp_path, capsys):
    spec = write(tmp_path, "sl2.yaml", "preset: SL2\nq: 3\n")
    fig = tmp_path / "s.png"
    assert run(capsys, "decompose", spec, "-N", "8", "--figure", str(fig))[0] == EXIT_OK
    assert fig.stat().st_size > 0


def test_json_deterministic(tmp_path, capsys):
    spec = write(tmp_path, "sp4.yaml", "preset: Sp4\nq: 3\n")
    _, a, _ = run(capsys, "decompose", spec, "-N", "8")
    _, b, _ = run(capsys, "decompose", spec, "-N", "8")
    assert a == b


def test_exit_codes_distinct():
    assert len({EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_BOUND}) == 4
