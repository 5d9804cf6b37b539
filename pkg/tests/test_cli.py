"""Command line interface: exit codes, report text, determinism."""

from __future__ import annotations

from pathlib import Path

import pytest

from slmc.cli import main
from slmc.fixtures import fixture_files

FIXDIR = Path(__file__).parent.parent / "src/slmc/fixtures"


def fx(name: str) -> str:
    return str(FIXDIR / name)


def run(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_check_algebra_pass(capsys):
    code, out = run(capsys, "check-algebra", fx("a2.slm"))
    assert code == 0
    assert out.startswith("PASS eq:relations")


def test_check_algebra_fail_exact(capsys):
    code, out = run(capsys, "check-algebra", fx("a2_broken.slm"))
    assert code == 1
    assert "FAIL eq:relations" in out
    assert "arity=2" in out and "word=x.y" in out and "witness=1 w2" in out


def test_check_algebra_max_arity_flag(capsys):
    code, out = run(capsys, "check-algebra", fx("a2.slm"), "--max-arity", "3")
    assert code == 0
    assert "max-arity=3" in out


def test_check_morphism(capsys):
    code, out = run(capsys, "check-morphism", fx("f2c.slm"))
    assert code == 0
    code, out = run(capsys, "check-morphism", fx("f2bad.slm"))
    assert code == 1
    assert "witness=-1 z" in out


def test_curv_frozen(capsys):
    code, out = run(capsys, "curv", fx("a2.slm"), "--element", "1 x + 1 y")
    assert code == 0
    assert out.strip() == "1 z"
    code, out = run(capsys, "curv", fx("a2.slm"), "--element", "2 x")
    assert out.strip() == "0"


def test_curv_bad_element_is_input_error(capsys):
    code, out = run(capsys, "curv", fx("a2.slm"), "--element", "1 nope")
    assert code == 2
    assert out.startswith("error:")


def test_missing_file_is_input_error(capsys):
    code, out = run(capsys, "check-algebra", str(FIXDIR / "missing.slm"))
    assert code == 2


def test_twist_renders_algebra(capsys):
    code, out = run(capsys, "twist", fx("a2.slm"), "--mc", "2 x")
    assert code == 0
    assert "algebra a2_twisted" in out
    assert "differential y -> 2 z" in out


def test_twist_non_mc_fails_with_witness(capsys):
    code, out = run(capsys, "twist", fx("a2.slm"), "--mc", "1 x + 1 y")
    assert code == 1
    assert "FAIL" in out


def test_twist_out_writes_parseable_file(tmp_path, capsys):
    dest = tmp_path / "twisted.slm"
    code, out = run(capsys, "twist", fx("a2.slm"), "--mc", "2 x", "--out", str(dest))
    assert code == 0
    from slmc.modelio import parse_model

    alg = parse_model(dest.read_text()).primary_algebra()
    assert alg.table(1)[("y",)].sorted_terms()[0][0] == "z"


def test_push(capsys):
    code, out = run(capsys, "push", fx("incl.slm"), "--element", "1 x + 1 y")
    assert code == 0
    assert out.strip() == "1 x + 1 y"
    code, out = run(capsys, "push", fx("f2c.slm"), "--element", "1 x + 1 y")
    assert out.strip() == "1 x + 1 y + 3/2 w"


def test_compose_plain(capsys):
    code, out = run(capsys, "compose", fx("f2c.slm"), fx("id_a2.slm"))
    assert code == 0
    assert "morphism composite : a2 -> heis_ext" in out
    assert "taylor 2 [ x y ] -> 1 w" in out


def test_compose_enhanced(capsys):
    code, out = run(capsys, "compose", fx("enh_w.slm"), fx("enh_w.slm"), "--enhanced")
    assert code == 0
    assert "enhanced composite : heis_ext -> heis_ext" in out
    assert "mc 2 w" in out


def test_mc_system(capsys):
    code, out = run(capsys, "mc-system", fx("a2.slm"), "--dim", "0", "--poly-degree", "0")
    assert code == 0
    assert out.strip() == "1*c[x]*c[y] = 0"


def test_mc_check_pass(capsys):
    code, out = run(capsys, "mc-check", fx("contractible.slm"), "--simplex", fx("path.slm"))
    assert code == 0
    assert "PASS eq:mc simplex=path" in out


def test_mc_check_fail_with_witness(tmp_path, capsys):
    bad = tmp_path / "bad.slm"
    # drop the h (x) dt term: the path is no longer flat
    bad.write_text("simplex bad : contractible dim 1\nterm 1 e\nterm -1 e t1\n")
    code, out = run(capsys, "mc-check", fx("contractible.slm"), "--simplex", str(bad))
    assert code == 1
    assert "FAIL" in out


def test_fill_horn_dim1(capsys):
    code, out = run(
        capsys, "fill-horn", fx("contractible.slm"),
        "--dim", "1", "--index", "1", "--faces", fx("vertex_e.slm"),
    )
    assert code == 0
    assert "PASS eq:horn dim=1" in out
    assert "simplex filler" in out


def test_fill_horn_dim2(capsys):
    code, out = run(
        capsys, "fill-horn", fx("contractible.slm"),
        "--dim", "2", "--index", "0", "--faces", fx("const_e.slm"), fx("path.slm"),
    )
    assert code == 0
    assert "PASS eq:horn dim=2 index=0" in out


def test_fill_horn_incompatible_is_input_error(tmp_path, capsys):
    # constant path at the wrong endpoint: faces cannot agree
    bad = tmp_path / "const0.slm"
    bad.write_text("simplex const0 : contractible dim 1\nterm 0 e\n")
    code, out = run(
        capsys, "fill-horn", fx("contractible.slm"),
        "--dim", "2", "--index", "0", "--faces", str(bad), fx("path.slm"),
    )
    assert code == 2
    assert "incompatible" in out


def test_pi0_contractible(capsys):
    code, out = run(
        capsys, "pi0", fx("contractible.slm"),
        "--points", fx("pt_e.slm"), fx("pt_0.slm"), "--poly-degree", "3",
    )
    assert code == 0
    assert "classes=1 points=2 poly-degree=3" in out
    assert "class 0 : pt_e pt_0" in out
    assert "certificate pt_e -> pt_0" in out


def test_pi0_a2_three_classes(capsys):
    code, out = run(
        capsys, "pi0", fx("a2.slm"),
        "--points", fx("a2_pt_x.slm"), fx("a2_pt_y.slm"), fx("a2_pt_0.slm"),
        "--poly-degree", "6",
    )
    assert code == 0
    assert "classes=3 points=3 poly-degree=6" in out


def test_pi0_deterministic(capsys):
    args = (
        "pi0", fx("contractible.slm"),
        "--points", fx("pt_e.slm"), fx("pt_0.slm"), "--poly-degree", "3",
    )
    _, first = run(capsys, *args)
    _, second = run(capsys, *args)
    assert first == second


def test_properties_command_deterministic(capsys):
    code, first = run(capsys, "properties", "--seed", "3", "--trials", "4")
    assert code == 0
    code, second = run(capsys, "properties", "--seed", "3", "--trials", "4")
    assert first == second
    assert all(line.startswith("PASS ") for line in first.strip().splitlines())


def test_resource_cap_exit_code(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SLMC_CAPS", "poly=2")
    deep = tmp_path / "deep.slm"
    deep.write_text(
        fixture_files()["contractible.slm"]
        + "\nsimplex deep : contractible dim 1\nterm 1 e t1^3\n"
    )
    code, out = run(capsys, "mc-check", str(deep), "--simplex", str(deep))
    assert code == 3
    assert "resource cap" in out


def test_mc_check_simplex_flag_combines_files(tmp_path, capsys):
    # algebra in the first file, simplex alone in the second
    code, out = run(capsys, "mc-check", fx("mixed.slm"), "--simplex", fx("mixed_path.slm"))
    assert code == 0
    assert "simplex=mixed_path" in out
