import io
import json
import subprocess
import sys

import pytest

from fdui.cli import EXIT_CAP, EXIT_DIAG, EXIT_OK, main
from fdui.config import ConfigError, RunConfig, parse_caps

INTRO = "group(diff(x, y + e*x + x^2); diff(x, y + e^2*x + x^3); diff(x, y + e^3*x + x^4))"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_intersect_both():
    code, text = run("intersect", "--method", "both", "curve(t^2; t^3)", "curve(t; 0)")
    assert code == EXIT_OK
    assert json.loads(text) == {"order": {"exact": 3}, "noether": {"exact": 3}}
    assert text.strip() == '{"noether":{"exact":3},"order":{"exact":3}}'


def test_intersect_single_method():
    _, text = run("--method", "order", "intersect", "curve(t; t^2)", "curve(t; t^2)")
    assert json.loads(text) == {"order": {"atLeast": 25}}


def test_exp_prints_diffeo():
    code, text = run("exp", "vf(0; x^2)")
    assert code == 0 and json.loads(text) == {"diffeo": "(x, y + x^2)"}


def test_log():
    _, text = run("log", "diff(x, y + x^3)")
    assert json.loads(text)["vfield"] == "vf(0; x^3)"


def test_fd_check_intro_family():
    code, text = run("fd-check", "--jet", "1", "--ball", "3", INTRO)
    rep = json.loads(text)
    assert code == 0
    assert {k: rep[k] for k in ("determined", "k", "L")} == {"determined": True, "k": 1, "L": 3}


def test_inp_table_and_json():
    _, text = run("inp", "--depth", "2", "curve(t^2; t^3)")
    rep = json.loads(text)
    assert rep["mults"] == [2, 1] and rep["points"][1] == {"chart": 2, "coord": "0"}
    _, table = run("--table", "inp", "--depth", "2", "curve(t^2; t^3)")
    assert table.splitlines()[0].startswith("k")


def test_other_subcommands():
    assert json.loads(run("blowup", "curve(t; -t + t^2)")[1])["point"] == {"chart": 1, "coord": "-1"}
    assert json.loads(run("lift", "diff(x, y + x^2)")[1])["lift"] == "(x, x + y)"
    assert json.loads(run("act", "diff(2*x, y)", "curve(t^2; t^3)")[1])["curve"] == "curve(2*t^2; t^3)"
    m = json.loads(run("jet-matrix", "--jet", "2", "diff(x, y + x^2)")[1])
    assert m["basis"] == ["x", "y", "x^2", "x*y", "y^2"] and m["matrix"][2][1] == "1"
    u = json.loads(run("ui-probe", "--ball", "2", INTRO, "curve(t; 0)")[1])
    assert u["maxExact"] == 1
    o = json.loads(run("orbit-tree", "--ball", "3", "--depth", "4", "group(diff(x, y + x^3))", "curve(t; 0)")[1])
    assert o["maxSharedDepth"] == 2
    d = json.loads(run("derived", "--ball", "1", "group(diff(2*x, y); diff(x, y + x^2))")[1])
    assert set(d["classification"].values()) == {"tangent_to_identity"}


def test_diagnostics():
    code, text = run("exp", "diff(x)")
    assert code == EXIT_DIAG and json.loads(text)["error"] == "expected two components"
    code, text = run("exp", "diff(x, y)")
    assert code == EXIT_DIAG and "vector field" in json.loads(text)["error"]
    code, text = run("log", "diff(2*x, y)")
    assert code == EXIT_DIAG
    code, _ = run("--jet", "30", "exp", "vf(0; x^2)")
    assert code == EXIT_DIAG


def test_resource_cap_exit_code():
    code, text = run("--caps", "words=5", "fd-check", INTRO)
    assert code == EXIT_CAP and json.loads(text)["inconclusive"] is True


def test_determinism():
    args = ("ui-probe", "--ball", "2", INTRO, "curve(t^2; t^3)")
    assert run(*args)[1] == run(*args)[1]


def test_batch(tmp_path):
    f = tmp_path / "cmds.txt"
    f.write_text(
        '# comment\n'
        'intersect "curve(t; t^2)" "curve(t; t^3)"\n'
        '\n'
        'exp "vf(0; x^2)" --trunc 6\n'
        'log "diff(2*x, y)"\n'
    )
    code, text = run("batch", str(f))
    lines = text.splitlines()
    assert code == EXIT_DIAG and len(lines) == 3
    assert json.loads(lines[0]) == {"noether": {"exact": 2}, "order": {"exact": 2}}
    assert "error" in json.loads(lines[2])


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "fdui", "exp", "vf(0; x^2)"], capture_output=True, text=True)
    assert p.returncode == 0 and json.loads(p.stdout) == {"diffeo": "(x, y + x^2)"}


def test_run_config_validation():
    with pytest.raises(ConfigError):
        RunConfig(trunc=4, jet=5)
    with pytest.raises(ConfigError):
        RunConfig(depth=0)
    with pytest.raises(ConfigError):
        RunConfig(method="resultant")
    assert parse_caps("words=10,seconds=2").max_words == 10
    with pytest.raises(ConfigError):
        parse_caps("memory=1")
