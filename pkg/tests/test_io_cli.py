import json

import pytest

from equihodge.cli import main
from equihodge.io import DocumentError, load_fixture, parse_document

ALL_FIXTURES = ("fix1", "fix2", "fix3", "fix4p", "fix5", "fix6", "ext3")


def write_doc(tmp_path, doc, name="doc.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_fixtures_parse():
    d1 = parse_document(load_fixture("fix1"))
    assert d1.complex.dim_cochains(0) == 6
    assert d1.complex.dim_cochains(1) == 6
    assert len(d1.group) == 3
    d4 = parse_document(load_fixture("fix4p"))
    assert d4.group.rank == 1
    assert d4.complex.is_periodic
    d5 = parse_document(load_fixture("fix5"))
    assert d5.algebra_kind == "functions"


def test_missing_mult_reports_path():
    doc = load_fixture("fix5")
    del doc["group"]["mult"]
    with pytest.raises(DocumentError) as err:
        parse_document(doc)
    assert err.value.path == "group.mult"


def test_float_rejected():
    doc = load_fixture("fix4p")
    doc["cutoff"]["v0@(0)"] = 0.5
    with pytest.raises(DocumentError) as err:
        parse_document(doc).build_cutoff()
    assert "floating point" in str(err.value)


def test_unknown_vertex_in_simplex():
    doc = load_fixture("fix1")
    doc["space"]["simplices"][0] = ["0", "99"]
    with pytest.raises(DocumentError) as err:
        parse_document(doc)
    assert "space.simplices[0]" in err.value.path


def test_dangling_face_reported():
    doc = load_fixture("fix1")
    doc["space"]["simplices"] = [["0", "1", "2"]]  # no edges: face closure fails
    with pytest.raises(DocumentError) as err:
        parse_document(doc)
    assert "face closure" in str(err.value)


def test_non_action_rejected():
    doc = load_fixture("fix1")
    doc["action"]["r"]["0"] = "1"  # r no longer a rotation: not simplicial/action
    with pytest.raises(DocumentError):
        parse_document(doc)


def test_nontrivial_chi_on_finite_group_rejected():
    doc = load_fixture("fix5")
    doc["group"]["chi"] = {"t": "2"}
    with pytest.raises(DocumentError) as err:
        parse_document(doc)
    assert "chi" in err.value.path


def test_cli_betti_fix1(tmp_path, capsys):
    path = write_doc(tmp_path, load_fixture("fix1"))
    assert main(["betti", path]) == 0
    env = json.loads(capsys.readouterr().out)
    assert env["tables"]["invariant_betti"] == ["1", "1"]
    assert env["tables"]["euler_characteristic"] == ["0"]


def test_cli_cyclic_fix5(tmp_path, capsys):
    path = write_doc(tmp_path, load_fixture("fix5"))
    assert main(["cyclic", "--max-degree", "4", path]) == 0
    env = json.loads(capsys.readouterr().out)
    assert env["tables"]["cyclic_cohomology"] == ["1", "0", "1", "0", "1"]


def test_cli_hodge_fix4p(tmp_path, capsys):
    path = write_doc(tmp_path, load_fixture("fix4p"))
    assert main(["hodge", path]) == 0
    env = json.loads(capsys.readouterr().out)
    assert env["tables"]["harmonic_dims"] == ["1", "1"]
    assert all(c["status"] == "pass" for c in env["checks"])


def test_cli_strict_cutoff_flag(tmp_path, capsys):
    doc = load_fixture("fix4p")
    doc["cutoff"]["v0@(0)"] = "1/2"
    path = write_doc(tmp_path, doc)
    assert main(["hodge", path]) == 0
    capsys.readouterr()
    assert main(["hodge", "--strict-cutoff", path]) == 1
    err = capsys.readouterr().err
    assert "strict" in err


def test_cli_invalid_input_exit_1(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert main(["betti", str(path)]) == 1
    assert main(["betti", str(tmp_path / "missing.json")]) == 1
    doc = load_fixture("fix5")
    p2 = write_doc(tmp_path, doc, "fix5.json")
    assert main(["betti", p2]) == 1  # no simplicial space: incompatible
    capsys.readouterr()


def test_cli_math_failure_exit_2(tmp_path, capsys, monkeypatch):
    from equihodge import cli
    from equihodge.report import Report

    def failing(desc, opts):
        rep = Report("betti")
        rep.add("synthetic check", False, witness="synthetic witness")
        return rep

    monkeypatch.setitem(cli.COMMANDS, "betti", failing)
    path = write_doc(tmp_path, load_fixture("fix1"))
    assert main(["betti", path]) == 2
    env = json.loads(capsys.readouterr().out)
    assert env["checks"][0]["witness"] == "synthetic witness"


def test_cli_duality_declined_is_not_failure(tmp_path, capsys):
    path = write_doc(tmp_path, load_fixture("fix2"))
    assert main(["duality", path]) == 0
    env = json.loads(capsys.readouterr().out)
    assert any(c["status"] == "declined" for c in env["checks"])


def test_cli_tsv_output(tmp_path, capsys):
    path = write_doc(tmp_path, load_fixture("fix1"))
    assert main(["betti", "--output", "tsv", path]) == 0
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert lines[0].startswith("# schema_version")
    table_idx = next(i for i, l in enumerate(lines) if l == "table\tinvariant_betti")
    assert lines[table_idx + 1].startswith("degree\t0\t1")
    assert lines[table_idx + 2] == "value\t1\t1"


def test_cli_deterministic_reports(tmp_path, capsys):
    for name in ALL_FIXTURES:
        path = write_doc(tmp_path, load_fixture(name), f"{name}.json")
        assert main(["all", path]) == 0
        first = capsys.readouterr().out
        assert main(["all", path]) == 0
        second = capsys.readouterr().out
        assert first == second, name


def test_cli_timing_flag(tmp_path, capsys):
    path = write_doc(tmp_path, load_fixture("fix5"))
    assert main(["cyclic", path]) == 0
    env = json.loads(capsys.readouterr().out)
    assert env["timing"] is None
    assert main(["cyclic", "--timing", path]) == 0
    env2 = json.loads(capsys.readouterr().out)
    assert isinstance(env2["timing"], (int, float))


def test_effective_degree_budget():
    from equihodge.cli import effective_cyclic_degree

    desc = parse_document(load_fixture("fix3"))
    alg = desc.build_algebra()
    assert effective_cyclic_degree(desc.group, alg, 4) == 2
    desc5 = parse_document(load_fixture("fix5"))
    alg5 = desc5.build_algebra()
    assert effective_cyclic_degree(desc5.group, alg5, 4) == 4
