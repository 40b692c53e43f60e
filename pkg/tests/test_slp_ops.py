"""Operations that work on straight-line programs without expanding them."""

import random

import pytest

from crx import (
    RleString,
    Slp,
    Term,
    annotate_runs,
    char_at,
    expand_slp,
    first_mismatch,
    occurrences,
    prefix_match,
    rle_encode,
    runext,
    slp_equals,
    slp_runs,
    substring_slp,
)
from helpers import brute_occurrences, sample_slp, power_slp, random_slp, slp_of

SAMPLE = "aababaababaab"


def test_char_at_full_scan():
    s = sample_slp()
    assert "".join("ab"[char_at(s, i)] for i in range(1, 14)) == SAMPLE
    with pytest.raises(IndexError):
        char_at(s, 0)
    with pytest.raises(IndexError):
        char_at(s, 14)


def test_char_at_huge_position():
    s = power_slp(40)
    assert s.length == 2**40
    assert char_at(s, 2**40) == 0


def test_annotate_runs_sample():
    ann = annotate_runs(sample_slp())
    root = 7 - 1
    assert ann.plen[root] == 2
    assert ann.slen[root] == 1
    assert ann.first[root] == 0
    assert ann.last[root] == 1


def test_runext_sample():
    s = sample_slp()
    # SAMPLE = aa b a b aa b a b aa b
    assert runext(s, 1) == (0, 2)
    assert runext(s, 2) == (0, 1)
    assert runext(s, 3) == (1, 1)
    assert runext(s, 6) == (0, 2)
    assert runext(s, 13) == (1, 1)


def test_runext_random():
    rng = random.Random(31)
    for _ in range(60):
        s = random_slp(rng, max_extra=8, sigma=3, max_len=300)
        text = expand_slp(s).to_str()
        ann = annotate_runs(s)
        for _ in range(15):
            pos = rng.randint(1, len(text))
            c = text[pos - 1]
            k = pos
            while k < len(text) and text[k] == c:
                k += 1
            assert runext(s, pos, ann) == (ord(c) - ord("a"), k - pos + 1)


def test_slp_runs_equals_rle_of_expansion():
    s = sample_slp()
    assert slp_runs(s).runs == rle_encode(expand_slp(s)).runs
    assert len(slp_runs(s).runs) == 10


def test_slp_runs_random():
    rng = random.Random(37)
    for _ in range(120):
        s = random_slp(rng, max_extra=9, sigma=3, max_len=1000)
        assert slp_runs(s) == rle_encode(expand_slp(s))


def test_slp_runs_power():
    s = power_slp(30)
    assert slp_runs(s) == RleString(((0, 2**30),))


def test_substring_frozen():
    s = sample_slp()
    assert expand_slp(substring_slp(s, 3, 6)).to_str() == "baba"


def test_substring_all_spans_and_size_bound():
    s = sample_slp()
    n = s.n
    for i in range(1, 14):
        for j in range(i, 14):
            e = substring_slp(s, i, j)
            assert expand_slp(e).to_str() == SAMPLE[i - 1:j]
            assert e.n <= 4 * n


def test_substring_random():
    rng = random.Random(41)
    for _ in range(80):
        s = random_slp(rng, max_extra=8, sigma=3, max_len=400)
        text = expand_slp(s).to_str()
        i = rng.randint(1, len(text))
        j = rng.randint(i, len(text))
        e = substring_slp(s, i, j)
        assert expand_slp(e).to_str() == text[i - 1:j]
        assert e.n <= 4 * s.n


def test_substring_bad_range():
    with pytest.raises(IndexError):
        substring_slp(sample_slp(), 5, 3)
    with pytest.raises(IndexError):
        substring_slp(sample_slp(), 0, 3)
    with pytest.raises(IndexError):
        substring_slp(sample_slp(), 1, 99)


def test_occurrences_sample_frozen():
    occ = occurrences(sample_slp(), slp_of_str("ab"))
    assert occ.count() == 5
    assert occ.min_start() == 2
    assert sorted(occ.positions()) == [2, 4, 7, 9, 12]
    assert occ.membership(7)
    assert not occ.membership(3)
    assert occ.exists_start_in(10, 13)
    assert not occ.exists_start_in(10, 11)
    assert occ.exists_fully_within(1, 3)
    assert not occ.exists_fully_within(1, 2)


def slp_of_str(s: str):
    from crx import Text
    return slp_of(Text.from_str(s))


def test_occurrences_absent_pattern():
    occ = occurrences(sample_slp(), slp_of_str("bb"))
    assert occ.count() == 0
    assert occ.min_start() is None
    assert not occ.membership(1)
    assert not occ.exists_start_in(1, 13)


def test_occurrences_pattern_longer_than_text():
    occ = occurrences(slp_of_str("ab"), slp_of_str("ababab"))
    assert occ.count() == 0


def test_occurrences_random_vs_brute():
    rng = random.Random(43)
    for _ in range(150):
        s = random_slp(rng, max_extra=8, sigma=2, max_len=600)
        text = expand_slp(s).to_str()
        p = random_slp(rng, max_extra=4, sigma=2, max_len=20)
        pat = expand_slp(p).to_str()
        occ = occurrences(s, p)
        want = brute_occurrences(text, pat)
        assert occ.count() == len(want)
        assert occ.min_start() == (want[0] if want else None)
        assert sorted(occ.positions()) == want
        for _ in range(6):
            q = rng.randint(1, len(text))
            assert occ.membership(q) == (q in want)
        lo = rng.randint(1, len(text))
        hi = rng.randint(lo, len(text))
        assert occ.exists_start_in(lo, hi) == any(lo <= w <= hi for w in want)
        L = len(pat)
        assert occ.exists_fully_within(lo, hi) == any(
            lo <= w and w + L - 1 <= hi for w in want)


def test_occurrences_unary_pattern_in_power_text():
    # a^(2^20) contains 2^20 - 2 occurrences of aaa without materializing them
    occ = occurrences(power_slp(20), slp_of_str("aaa"))
    assert occ.count() == 2**20 - 2
    assert occ.min_start() == 1
    assert occ.membership(2**20 - 2)
    assert not occ.membership(2**20 - 1)


def test_occurrence_starts_form_ap_per_anchor():
    # positions of a periodic pattern inside one crossing bucket step by
    # the period; the public check is that membership agrees with the list
    s = slp_of_str("abababababab")
    p = slp_of_str("abab")
    occ = occurrences(s, p)
    pos = sorted(occ.positions())
    assert pos == [1, 3, 5, 7, 9]
    steps = {b - a for a, b in zip(pos, pos[1:])}
    assert steps == {2}


def test_slp_equals():
    a = slp_of_str("abab")
    b = slp_of_str("abab")
    c = slp_of_str("abba")
    d = slp_of_str("ababa")
    assert slp_equals(a, b)
    assert not slp_equals(a, c)
    assert not slp_equals(a, d)
    # same string, structurally different programs
    e = Slp.build((Term(0), Term(1), (1, 2), (3, 3)))
    assert slp_equals(a, e)


def test_prefix_match_frozen():
    s = sample_slp()
    assert prefix_match(s, 4, slp_of_str("ab"))
    assert not prefix_match(s, 1, slp_of_str("b"))
    assert prefix_match(s, 1, slp_of_str("aabab"))
    with pytest.raises(IndexError):
        prefix_match(s, 13, slp_of_str("bb"))


def test_prefix_match_random():
    rng = random.Random(47)
    for _ in range(100):
        s = random_slp(rng, max_extra=7, sigma=2, max_len=300)
        text = expand_slp(s).to_str()
        p = random_slp(rng, max_extra=3, sigma=2, max_len=12)
        pat = expand_slp(p).to_str()
        if len(pat) > len(text):
            continue
        pos = rng.randint(1, len(text) - len(pat) + 1)
        assert prefix_match(s, pos, p) == text[pos - 1:].startswith(pat)


def test_first_mismatch():
    assert first_mismatch(power_slp(2), slp_of_str("aaaa")) is None
    # equal prefix, one longer: mismatch at the first extra position
    assert first_mismatch(power_slp(2), slp_of_str("aaaaa")) == 5
    assert first_mismatch(slp_of_str("abcabc"), slp_of_str("abcxbc")) == 4
    assert first_mismatch(slp_of_str("x"), slp_of_str("y")) == 1


def test_first_mismatch_random():
    rng = random.Random(53)
    for _ in range(80):
        a = random_slp(rng, max_extra=7, sigma=2, max_len=400)
        b = random_slp(rng, max_extra=7, sigma=2, max_len=400)
        x, y = expand_slp(a).to_str(), expand_slp(b).to_str()
        got = first_mismatch(a, b)
        k = 0
        while k < min(len(x), len(y)) and x[k] == y[k]:
            k += 1
        want = None if x == y else k + 1
        assert got == want
