"""Core value types and the plain expanders."""

import pytest

from crx import (
    AdmissibleGrammar,
    BudgetExceededError,
    EmptyInputError,
    InvalidInputError,
    Literal,
    Lz77Factorization,
    Lz78Factorization,
    Reference,
    RleString,
    Slp,
    Term,
    Text,
    Var,
    canonical_grammar,
    expand_grammar,
    expand_lz77,
    expand_lz78,
    expand_rle,
    expand_slp,
    grammar_derived_length,
    lz78_factor_lengths,
    rle_encode,
    slp_from_grammar_rules,
)
from helpers import T, sample_slp, power_slp


def test_text_round_trips():
    t = T("abbaaacaa")
    assert t.to_str() == "abbaaacaa"
    assert len(t) == 9
    assert t.sub(2, 4).to_str() == "bba"
    assert Text.from_bytes(b"xyz").symbols == (120, 121, 122)


def test_text_char_is_one_based():
    t = T("abc")
    assert [t.char(i) for i in (1, 2, 3)] == list(t.symbols)
    with pytest.raises(IndexError):
        t.char(0)
    with pytest.raises(IndexError):
        t.char(4)


def test_expand_rle():
    r = RleString(((0, 2), (1, 1), (0, 3)))
    assert r.length == 6
    assert expand_rle(r).to_str() == "aabaaa"


def test_expand_rle_budget():
    r = RleString(((0, 10**9),))
    with pytest.raises(BudgetExceededError) as ei:
        expand_rle(r, limit=100)
    assert ei.value.needed == 10**9
    assert ei.value.limit == 100


def test_expand_lz77_non_self():
    f = Lz77Factorization(
        (Literal(0), Literal(1), Reference(1, 2), Reference(2, 3)),
        self_referential=False,
    )
    assert expand_lz77(f).to_str() == "ababbab"


def test_expand_lz77_self_referential():
    f = Lz77Factorization((Literal(0), Reference(1, 7)), self_referential=True)
    assert expand_lz77(f).to_str() == "a" * 8


def test_expand_lz78_basic():
    # seeds for sigma=2 are ids 1,2; entry ids start at 3
    f = Lz78Factorization((1, 1, 2, 4, 3, 5, 5, 4), alphabet_size=2)
    assert expand_lz78(f).to_str() == "aababaababaab"


def test_expand_lz78_self_extending():
    # id 2 names the entry being built: KwK case
    f = Lz78Factorization((1, 2), alphabet_size=1)
    assert expand_lz78(f).to_str() == "aaa"


def test_lz78_factor_lengths_errors():
    with pytest.raises(InvalidInputError) as ei:
        lz78_factor_lengths(Lz78Factorization((5,), alphabet_size=2))
    assert ei.value.code == "dangling-reference"
    with pytest.raises(InvalidInputError) as ei:
        lz78_factor_lengths(Lz78Factorization((0,), alphabet_size=2))
    assert ei.value.code == "dangling-reference"


def test_expand_grammar():
    g = AdmissibleGrammar({1: (Term(0),), 2: (Var(1), Term(1), Var(1))}, start=2)
    assert expand_grammar(g).to_str() == "aba"
    assert g.size == 4


def test_grammar_derived_length_cycle():
    g = AdmissibleGrammar({1: (Var(2),), 2: (Var(1),)}, start=1)
    with pytest.raises(InvalidInputError) as ei:
        grammar_derived_length(g)
    assert ei.value.code == "cyclic-grammar"


def test_grammar_derived_length_undefined_var():
    g = AdmissibleGrammar({1: (Var(7),)}, start=1)
    with pytest.raises(InvalidInputError) as ei:
        grammar_derived_length(g)
    assert ei.value.code == "undefined-variable"


def test_canonical_grammar_renumbers():
    g = AdmissibleGrammar({5: (Term(0), Var(9)), 9: (Term(1),)}, start=5)
    c = canonical_grammar(g)
    assert sorted(c.rules) == [1, 2]
    assert c.start == 2
    assert expand_grammar(c).to_str() == "ab"


def test_canonical_grammar_rejects_unreachable():
    g = AdmissibleGrammar(
        {5: (Term(0), Var(9)), 9: (Term(1),), 3: (Term(2), Term(2))},
        start=5,
    )
    with pytest.raises(InvalidInputError) as ei:
        canonical_grammar(g)
    assert ei.value.code == "unreachable-variable"


def test_slp_build_and_length():
    s = power_slp(4)
    assert s.n == 5
    assert s.length == 16
    assert expand_slp(s).to_str() == "a" * 16


def test_slp_forward_reference_rejected():
    with pytest.raises(InvalidInputError) as ei:
        Slp.build((Term(0), (1, 3), (1, 1)))
    assert ei.value.code == "forward-reference-in-slp"


def test_slp_empty_rejected():
    with pytest.raises(EmptyInputError):
        expand_slp(Slp.build(()))


def test_slp_to_grammar_round_trip():
    s = sample_slp()
    g = s.to_grammar()
    assert expand_grammar(g).to_str() == "aababaababaab"
    again = slp_from_grammar_rules(g)
    assert expand_slp(again).to_str() == "aababaababaab"


def test_expand_slp_budget():
    s = power_slp(30)
    assert s.length == 2**30
    with pytest.raises(BudgetExceededError):
        expand_slp(s, limit=2**20)


def test_empty_text_rle_encode():
    assert rle_encode(T("")).runs == ()
    assert expand_rle(RleString(())).to_str() == ""


def test_rle_encode_frozen():
    assert rle_encode(T("abbaaacaa")).runs == (
        (0, 1), (1, 2), (0, 3), (2, 1), (0, 2),
    )
