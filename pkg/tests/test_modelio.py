"""Text format: parsing, validation errors with line numbers, rendering."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import pytest

from slmc.errors import InputError, ResourceCapError
from slmc.fixtures import fixture_files, fixture_text
from slmc.modelio import (
    parse_element_expr,
    parse_model,
    render_algebra,
    render_element,
    render_model,
)
from slmc.fixtures import a2

A2_TEXT = """\
# comment lines and blank lines are ignored
algebra a2
basis x deg 0 wt 1
basis y deg 0 wt 1   # trailing comments too
basis z deg 1 wt 2
nilpotency 3

bracket 2 [ x y ] -> 1 z
"""


def test_parse_and_render_canonical():
    mf = parse_model(A2_TEXT)
    alg = mf.primary_algebra()
    assert alg.space.symbols() == ("x", "y", "z")
    assert alg.nilpotency == 3
    text = render_model(mf)
    assert "bracket 2 [ x y ] -> 1 z" in text
    # canonical output is a fixed point of parse-render
    assert render_model(parse_model(text)) == text


def test_parse_folds_word_signs():
    # the bracket word is declared out of order; the parser canonicalizes it
    text = A2_TEXT.replace("[ x y ]", "[ y x ]")
    mf = parse_model(text)
    assert mf.primary_algebra().table(2) == parse_model(A2_TEXT).primary_algebra().table(2)


def test_parse_odd_word_sign_folding():
    text = """\
algebra m
basis p deg -1 wt 1
basis q deg -1 wt 1
basis r deg -1 wt 2
nilpotency 3
bracket 2 [ q p ] -> 1 r
"""
    alg = parse_model(text).primary_algebra()
    # q.p = -p.q, so the stored canonical entry is -r
    assert alg.table(2)[("p", "q")].sorted_terms() == [("r", Fraction(-1))]


def test_shipped_fixture_files_in_sync():
    files = fixture_files()
    for fname, text in files.items():
        assert fixture_text(fname) == text, fname
    shipped = {p.name for p in (Path(__file__).parent.parent / "src/slmc/fixtures").iterdir()}
    assert shipped == set(files)


def test_fixture_files_roundtrip():
    files = fixture_files()
    bases = {
        "path.slm": "contractible.slm",
        "mixed_path.slm": "mixed.slm",
        "vertex_e.slm": "contractible.slm",
        "const_e.slm": "contractible.slm",
        "pt_e.slm": "contractible.slm",
        "pt_0.slm": "contractible.slm",
        "a2_pt_x.slm": "a2.slm",
        "a2_pt_y.slm": "a2.slm",
        "a2_pt_0.slm": "a2.slm",
    }
    for fname, text in files.items():
        base = bases.get(fname)
        combined = files[base] + "\n" + text if base else text
        assert render_model(parse_model(combined)) == combined, fname


@pytest.mark.parametrize(
    "text, line, message",
    [
        ("algebra A\nbasis x deg 0 wt 1\nnilpotency 2\nfrobnicate 3\n", 4, "unrecognized statement"),
        ("algebra A\nnilpotency 2\n\nalgebra A\nnilpotency 2\n", 4, "duplicate algebra name"),
        ("taylor 1 [ x ] -> 1 x\n", 1, "outside a morphism block"),
        ("algebra A\nbasis x deg 0 wt 1\nnilpotency 2\ndifferential x -> q x\n", 4, "rational"),
        ("algebra A\nbasis x deg 0 wt 1\nnilpotency 3\nbracket 2 [ x nope ] -> 1 x\n", 4, "unknown basis symbol"),
        ("morphism F : A -> B\n", 1, "not declared"),
        ("algebra A\nbasis x deg 0 wt 1\n", 1, "missing its nilpotency"),
        (
            "algebra M\nbasis p deg -1 wt 1\nbasis r deg -1 wt 2\nnilpotency 3\n"
            "bracket 2 [ p p ] -> 1 r\n",
            5,
            "repeated odd symbol",
        ),
    ],
)
def test_parse_errors_carry_line_numbers(text, line, message):
    with pytest.raises(InputError) as exc:
        parse_model(text)
    assert f"line {line}:" in str(exc.value)
    assert message in str(exc.value)


def test_simplex_term_cap_is_resource_error():
    text = (
        "algebra A\nbasis x deg 0 wt 1\nnilpotency 2\n\n"
        "simplex s : A dim 1\nterm 1 x t1^13\n"
    )
    with pytest.raises(ResourceCapError, match="polynomial degree 13"):
        parse_model(text)


def test_parse_element_expr():
    space = a2().space
    e = parse_element_expr(space, "1 x + -1/2 y")
    assert e.sorted_terms() == [("x", Fraction(1)), ("y", Fraction(-1, 2))]
    assert parse_element_expr(space, "0").is_zero()
    with pytest.raises(InputError):
        parse_element_expr(space, "1 x + + 2 y")
    with pytest.raises(InputError):
        parse_element_expr(space, "1 nope")


def test_render_element_zero():
    assert render_element(a2().zero()) == "0"
    assert render_element(a2().element({"x": Fraction(-1, 3)})) == "-1/3 x"


def test_render_algebra_orders_blocks():
    out = render_algebra(a2(), name="A")
    lines = out.splitlines()
    assert lines[0] == "algebra A"
    assert lines[-1].startswith("bracket 2")


def test_simplex_declaration_parses_terms():
    text = fixture_text("contractible.slm") + "\n" + fixture_text("path.slm")
    mf = parse_model(text)
    decl = mf.primary_simplex()
    assert decl.algebra_name == "contractible"
    assert decl.value.dim == 1
    # 1 - t1 on e and dt1 on h
    forms = dict(decl.value.sorted_terms())
    assert forms["e"].sorted_terms() == [
        (((0,), ()), Fraction(1)),
        (((1,), ()), Fraction(-1)),
    ]
    assert forms["h"].sorted_terms() == [(((0,), (1,)), Fraction(1))]


def test_morphism_file_declares_source_target():
    mf = parse_model(fixture_text("incl.slm"))
    f = mf.primary_morphism()
    assert f.source.space.symbols() == ("x", "y", "z")
    assert f.target.space.symbols() == ("x", "y", "z", "u", "w")


def test_enhanced_file_roundtrip():
    text = fixture_text("enh_w.slm")
    mf = parse_model(text)
    e = mf.primary_enhanced()
    assert e.alpha.sorted_terms() == [("w", Fraction(1))]
    assert render_model(mf) == text
