"""Command-line interface: exit codes, flags, workspace, stable output."""

import json

import pytest

from bfly.cli import main
from bfly.serialize import loads


@pytest.fixture(scope="module")
def workspace(tmp_path_factory):
    ws = tmp_path_factory.mktemp("ws")
    assert main(["catalog", "generate", "--workspace", str(ws)]) == 0
    return ws


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_catalog_generate_writes_manifest(workspace):
    assert (workspace / "manifest.json").exists()
    docs = sorted(p.name for p in workspace.glob("*.cmodule.json"))
    assert "z2-z2-a0.cmodule.json" in docs
    assert len(docs) == 22


def test_validate_good_document(capsys, workspace):
    code, out, _ = run(capsys, "validate", "z2-z2-a0.cmodule.json",
                       "--workspace", str(workspace))
    assert code == 0
    assert "valid" in out


def test_validate_broken_document(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind":"group","order":2,"table":[[0,1],[1,1]]}')
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 1
    assert "inverse" in err


def test_missing_file_exits_1(capsys):
    code, _, err = run(capsys, "validate", "no-such-file.json")
    assert code == 1
    assert err


def test_unknown_command_exits_2(capsys):
    assert main(["frobnicate"]) == 2
    capsys.readouterr()


def test_global_flags_accepted_in_both_positions(capsys, workspace):
    args = ["oracle", "cohomology", "--module", "z2-z2-a0.cmodule.json",
            "--degree", "2"]
    pre = run(capsys, "--json", "--workspace", str(workspace), *args)
    post = run(capsys, *args, "--json", "--workspace", str(workspace))
    assert pre == post == (0, '{"degree":2,"factors":[2],"order":2}\n', "")


def test_workspace_env_var(capsys, workspace, monkeypatch):
    monkeypatch.setenv("BFLY_WORKSPACE", str(workspace))
    code, out, _ = run(capsys, "oracle", "z1", "--module",
                       "z2-z3-a1.cmodule.json", "--json")
    assert code == 0
    assert json.loads(out)["order"] == 3


def test_h2_unit_emits_parseable_extension(capsys, workspace):
    code, out, _ = run(capsys, "h2", "unit", "--module", "z2-z2-a0.cmodule.json",
                       "--workspace", str(workspace), "--json")
    assert code == 0
    ext = loads(out)
    assert ext.middle.order == 4


def test_oracle_class_of_catalog_xext(capsys, workspace):
    name = next(p.name for p in workspace.glob("*.xext.json") if "splice" in p.name)
    code, out, _ = run(capsys, "oracle", "class", "--in", name,
                       "--workspace", str(workspace), "--json")
    assert code == 0
    assert "coords" in json.loads(out)


def test_butterfly_identity_and_beta(capsys, workspace, tmp_path):
    name = sorted(p.name for p in workspace.glob("*.xext.json"))[0]
    code, out, _ = run(capsys, "butterfly", "identity", "--in", name,
                       "--workspace", str(workspace), "--json")
    assert code == 0
    loads(out)  # a valid butterfly document
    bf_path = tmp_path / "ident.butterfly.json"
    bf_path.write_text(out)
    code, out, _ = run(capsys, "butterfly", "beta", "--in", str(bf_path))
    assert code == 0
    assert "beta" in out or "identity" in out


def test_verify_suite_json_is_byte_stable(capsys):
    one = run(capsys, "verify", "h2-pi1", "--json")
    two = run(capsys, "verify", "h2-pi1", "--json")
    assert one == two
    assert one[0] == 0
    report = json.loads(one[1])
    assert report["passed"] is True
    assert all(c["passed"] for c in report["checks"])


def test_verify_text_has_pass_lines(capsys):
    code, out, _ = run(capsys, "verify", "h2-pi1")
    assert code == 0
    assert out.count("PASS") >= 22


def test_unknown_suite_exits_1(capsys):
    code, _, err = run(capsys, "verify", "no-such-suite")
    assert code == 1
