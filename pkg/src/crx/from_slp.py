"""Conversions out of straight-line programs.

Every function here reads only the program: runs, factor lengths and
sources all come from pattern queries on the grammar, never from the
derived string. Outputs are defined to match the reference codecs on the
expansion, which the tests check against the naive implementations.
"""

from __future__ import annotations

from bisect import insort

from .errors import InternalError
from .model import (
    AdmissibleGrammar,
    GrammarItem,
    Literal,
    Lz77Factorization,
    Lz78Factorization,
    Reference,
    RleString,
    Slp,
    Term,
    Var,
)
from .slp_ops import (
    RunLinkAnnotations,
    annotate_runs,
    char_at,
    occurrences,
    prefix_match,
    reachable_vars,
    slp_equals,
    slp_runs,
    substring_slp,
)


def slp_to_rle(s: Slp) -> RleString:
    """Run-length encoding of the derived string."""
    return slp_runs(s)


def slp_to_lz77(s: Slp, self_referential: bool = False) -> Lz77Factorization:
    """Greedy leftmost-longest factorization computed on the program.

    Factor lengths are found by doubling plus binary search on "does this
    window have an admissible earlier occurrence", each probe answered by
    an occurrence query for the window's substring program.
    """
    n = s.length
    factors: list[Literal | Reference] = []
    pos = 1
    while pos <= n:
        rem = n - pos + 1
        cap = rem if self_referential else min(rem, pos - 1)

        def valid(length: int):
            window = substring_slp(s, pos, pos + length - 1)
            occ = occurrences(s, window)
            if self_referential:
                ok = occ.exists_start_in(1, pos - 1)
            else:
                ok = occ.exists_fully_within(1, pos - 1)
            return occ if ok else None

        best = valid(1) if pos > 1 and cap >= 1 else None
        if best is None:
            factors.append(Literal(char_at(s, pos)))
            pos += 1
            continue
        lo, hi = 1, cap + 1  # valid at lo, invalid at hi
        while lo < cap:
            trial = min(lo * 2, cap)
            occ = valid(trial)
            if occ is None:
                hi = trial
                break
            lo, best = trial, occ
        while hi - lo > 1:
            mid = (lo + hi) // 2
            occ = valid(mid)
            if occ is None:
                hi = mid
            else:
                lo, best = mid, occ
        src = best.min_start()
        limit = pos - 1 if self_referential else pos - lo
        if src is None or src > limit:
            raise InternalError("factor source search is inconsistent; "
                                f"got {src} for window at {pos} length {lo}")
        factors.append(Reference(src, lo))
        pos += lo
    return Lz77Factorization(tuple(factors), self_referential)


def slp_to_lz78(s: Slp) -> Lz78Factorization:
    """Dictionary factorization computed on the program.

    Dictionary entries are substring programs of the text. Candidates for
    a position share their first symbol, so they are bucketed by it and
    tried longest first; entries are pairwise distinct strings, hence the
    first hit is the longest match.
    """
    n = s.length
    text_ann = annotate_runs(s)
    sigma = 0
    for v in reachable_vars(s):
        rule = s.rules[v - 1]
        if isinstance(rule, Term):
            sigma = max(sigma, rule.code + 1)
    buckets: dict[int, list[tuple[int, int, Slp, RunLinkAnnotations]]] = {}
    ids: list[int] = []
    entries = 0
    pos = 1
    while pos <= n:
        c = char_at(s, pos)
        rem = n - pos + 1
        flen, fid = 1, c + 1
        for ln, eid, eslp, eann in buckets.get(c, ()):
            if ln > rem:
                continue
            if prefix_match(s, pos, eslp, text_ann, eann):
                flen, fid = ln, eid
                break
        ids.append(fid)
        start = pos
        pos += flen
        if pos <= n:
            entries += 1
            eslp = substring_slp(s, start, pos)
            item = (flen + 1, sigma + entries, eslp, annotate_runs(eslp))
            insort(buckets.setdefault(c, []), item, key=lambda e: -e[0])
    return Lz78Factorization(tuple(ids), sigma)


def slp_to_bisection(s: Slp) -> AdmissibleGrammar:
    """Rebuild the balanced splitting grammar without expanding.

    Spans are deduplicated through buckets keyed by length plus a few
    sampled characters; a bucket hit is confirmed by a program equality
    check, so merges are exact and the rebuilt grammar matches the naive
    one variable for variable.
    """
    n = s.length
    rules: dict[int, tuple[GrammarItem, ...]] = {}
    buckets: dict[tuple, list[tuple[GrammarItem, Slp]]] = {}
    out: dict[tuple[int, int], GrammarItem] = {}
    stack: list[tuple[int, int, bool]] = [(1, n, False)]
    while stack:
        i, j, ready = stack.pop()
        if (i, j) in out:
            continue
        if i == j:
            out[(i, j)] = Term(char_at(s, i))
            continue
        span = j - i + 1
        offs = sorted({0, span - 1, span // 2, span // 4, (3 * span) // 4})
        fp = (span,) + tuple(char_at(s, i + o) for o in offs)
        half = 1
        while half * 2 < span:
            half *= 2
        if not ready:
            sub = substring_slp(s, i, j)
            hit = None
            for item, rep in buckets.get(fp, ()):
                if slp_equals(sub, rep):
                    hit = item
                    break
            if hit is not None:
                out[(i, j)] = hit
                continue
            stack.append((i, j, True))
            stack.append((i + half, j, False))
            stack.append((i, i + half - 1, False))
            continue
        var = len(rules) + 1
        rules[var] = (out[(i, i + half - 1)], out[(i + half, j)])
        out[(i, j)] = Var(var)
        buckets.setdefault(fp, []).append((Var(var), substring_slp(s, i, j)))
    top = out[(1, n)]
    if isinstance(top, Term):
        return AdmissibleGrammar({1: (top,)}, 1)
    return AdmissibleGrammar(rules, top.index)
