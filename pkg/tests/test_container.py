"""Wire format: serialize/parse round trips and validation codes."""

import pytest

from crx import (
    AdmissibleGrammar,
    CompressedContainer,
    ContainerFormatError,
    Literal,
    Lz77Factorization,
    Lz78Factorization,
    Reference,
    RleString,
    Term,
    Var,
    make_grammar_container,
    make_lz77_container,
    make_lz78_container,
    make_rle_container,
    make_slp_container,
    parse,
    serialize,
    validate,
)
from helpers import sample_slp


def round_trip(c: CompressedContainer) -> CompressedContainer:
    wire = serialize(c)
    assert wire.endswith("\n")
    back = parse(wire)
    assert serialize(back) == wire
    return back


def test_rle_wire():
    c = make_rle_container(RleString(((0, 1), (1, 2), (0, 3))), 256)
    wire = serialize(c)
    assert wire == "CRX1 rle 256 6\n0 1\n1 2\n0 3\n"
    back = round_trip(c)
    assert back == c
    assert validate(back).ok


def test_lz77_wire_selfref_flag():
    f = Lz77Factorization((Literal(0), Reference(1, 7)), self_referential=True)
    c = make_lz77_container(f, 2)
    wire = serialize(c)
    assert wire.splitlines()[0] == "CRX1 lz77 2 8 selfref"
    assert wire.splitlines()[1:] == ["L 0", "R 1 7"]
    back = round_trip(c)
    assert back.self_referential
    assert validate(back).ok


def test_lz77_wire_non_selfref():
    f = Lz77Factorization((Literal(0), Literal(1), Reference(1, 2)),
                          self_referential=False)
    c = make_lz77_container(f, 2)
    assert serialize(c).splitlines()[0] == "CRX1 lz77 2 4"
    assert not round_trip(c).self_referential


def test_lz78_wire():
    f = Lz78Factorization((1, 1, 2, 4, 3, 5, 5, 4), alphabet_size=2)
    c = make_lz78_container(f)
    assert c.length == 13
    wire = serialize(c)
    assert wire.splitlines()[0] == "CRX1 lz78 2 13"
    assert wire.splitlines()[1:] == ["1", "1", "2", "4", "3", "5", "5", "4"]
    assert validate(round_trip(c)).ok


def test_grammar_wire_sorted_rules():
    g = AdmissibleGrammar({1: (Term(0),), 2: (Var(1), Term(1), Var(1))}, start=2)
    c = make_grammar_container(g, 2)
    wire = serialize(c)
    assert wire == "CRX1 grammar 2 3\n1 -> t0\n2 -> v1 t1 v1\n"
    assert validate(round_trip(c)).ok


def test_grammar_container_canonicalizes_start():
    g = AdmissibleGrammar({3: (Term(0),), 1: (Var(3), Term(1))}, start=1)
    c = make_grammar_container(g, 2)
    assert c.payload.start == max(c.payload.rules)
    assert validate(c).ok


def test_slp_wire_and_to_slp():
    c = make_slp_container(sample_slp(), 2)
    assert c.format == "slp"
    assert c.length == 13
    back = round_trip(c)
    assert validate(back).ok
    s = back.to_slp()
    assert s.n == 7
    assert s.length == 13


def test_to_slp_wrong_format():
    c = make_rle_container(RleString(((0, 1),)), 2)
    with pytest.raises(Exception) as ei:
        c.to_slp()
    assert getattr(ei.value, "code", None) == "wrong-format"


def test_payload_size():
    assert make_rle_container(RleString(((0, 2), (1, 1))), 2).payload_size() == 2
    f = Lz77Factorization((Literal(0), Reference(1, 3)), self_referential=True)
    assert make_lz77_container(f, 2).payload_size() == 2
    assert make_lz78_container(
        Lz78Factorization((1, 2), alphabet_size=1)).payload_size() == 2
    assert make_slp_container(sample_slp(), 2).payload_size() == 12


@pytest.mark.parametrize("bad", [
    "",
    "NOPE rle 2 3\n0 3\n",
    "CRX1 rle 2\n",
    "CRX1 zip 2 3\n",
    "CRX1 rle 2 3 selfref\n0 3\n",
    "CRX1 lz77 2 3 wrong\nL 0\n",
    "CRX1 rle 2 x\n",
    "CRX1 rle 2 3\n0\n",
    "CRX1 rle 2 3\n0 1 2\n",
    "CRX1 lz77 2 3\nQ 0\n",
    "CRX1 lz77 2 3\nL 0 5\n",
    "CRX1 lz78 2 3\nnope\n",
    "CRX1 grammar 2 3\n1 t0\n",
    "CRX1 grammar 2 3\n1 -> x0\n",
    "CRX1 grammar 2 3\n1 -> t0\n1 -> t1\n",
    "CRX1 grammar 2 3\n",
])
def test_parse_rejects(bad):
    with pytest.raises(ContainerFormatError):
        parse(bad)


def V(wire: str):
    return validate(parse(wire))


@pytest.mark.parametrize("wire,code", [
    ("CRX1 rle 2 3\n0 0\n0 3\n", "zero-exponent"),
    ("CRX1 rle 2 3\n5 3\n", "symbol-out-of-range"),
    ("CRX1 rle 2 4\n0 2\n0 2\n", "adjacent-equal-runs"),
    ("CRX1 rle 2 9\n0 2\n1 2\n", "length-mismatch"),
    ("CRX1 lz77 2 1\nL 7\n", "symbol-out-of-range"),
    ("CRX1 lz77 2 2\nL 0\nR 0 1\n", "bad-reference"),
    ("CRX1 lz77 2 2\nL 0\nR 1 0\n", "bad-reference"),
    ("CRX1 lz77 2 3\nL 0\nR 2 2\n", "dangling-reference"),
    ("CRX1 lz77 2 3\nL 0\nR 1 2\n", "dangling-reference"),
    ("CRX1 lz77 2 9\nL 0\nR 1 1\n", "length-mismatch"),
    ("CRX1 lz78 2 3\n9\n", "dangling-reference"),
    ("CRX1 lz78 2 9\n1\n2\n", "length-mismatch"),
    ("CRX1 grammar 2 1\n1 -> t9\n", "symbol-out-of-range"),
    ("CRX1 grammar 2 1\n1 -> v5\n", "undefined-variable"),
    ("CRX1 slp 2 3\n1 -> t0\n2 -> v1 t1\n", "malformed-slp-rule"),
    ("CRX1 slp 2 2\n1 -> t0\n2 -> v2 v1\n", "forward-reference-in-slp"),
    ("CRX1 slp 2 4\n1 -> t0\n3 -> v1 v1\n", "missing-variable"),
    ("CRX1 grammar 2 2\n1 -> v2\n2 -> v1 t0\n", "cyclic-grammar"),
    ("CRX1 grammar 2 3\n1 -> t0\n2 -> t1\n", "unreachable-variable"),
    ("CRX1 grammar 2 9\n1 -> t0 t1\n", "length-mismatch"),
    ("CRX1 slp 2 9\n1 -> t0\n", "length-mismatch"),
])
def test_validate_codes(wire, code):
    rep = V(wire)
    assert not rep.ok
    assert rep.error == code


def test_validate_ok_reports_length():
    rep = V("CRX1 rle 2 5\n0 2\n1 3\n")
    assert rep.ok and rep.length == 5


def test_validate_empty_rule_direct():
    # the parser cannot produce an empty right-hand side, so build one by hand
    g = AdmissibleGrammar({1: ()}, start=1)
    rep = validate(CompressedContainer("grammar", 2, 0, g))
    assert not rep.ok and rep.error == "empty-rule"


def test_validate_bad_start_direct():
    g = AdmissibleGrammar({1: (Term(0),), 2: (Var(1), Var(1))}, start=1)
    rep = validate(CompressedContainer("grammar", 2, 1, g))
    assert not rep.ok and rep.error == "bad-start"
