"""Conversions out of run-length encoded strings.

The run structure is the only thing ever touched: factor searches walk
runs, compare them through rank LCE queries on the meta text, and count
characters with prefix sums. Outputs match the reference codecs on the
decoded string.
"""

from __future__ import annotations

from bisect import insort
from dataclasses import dataclass

from .errors import EmptyInputError
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
    item_key,
)
from .suffix import MetaText, rank_runs


@dataclass(frozen=True)
class RleCursor:
    """Position inside an RLE string: offset q (1-based) into run u (1-based)."""

    u: int
    q: int

    def position(self, meta: MetaText) -> int:
        return meta.prefix_len[self.u - 1] + self.q


@dataclass(frozen=True)
class RleSpan:
    """A substring described against the run boundaries.

    x trailing symbols of run k-1, then runs k..k+l-1 whole, then y
    leading symbols of run k+l (run indices 1-based). A span touching
    only one run is stored as a single piece: whole (l=1), trailing (x)
    or leading (y), the last also covering strict mid-run spans.
    """

    x: int
    k: int
    l: int
    y: int

    @classmethod
    def from_range(cls, meta: MetaText, i: int, j: int) -> "RleSpan":
        pl = meta.prefix_len
        u = meta.run_of(i)
        w = meta.run_of(j)
        i_al = i == pl[u] + 1
        j_al = j == pl[w + 1]
        if u == w:
            if i_al and j_al:
                span = cls(0, u + 1, 1, 0)
            elif j_al:
                span = cls(j - i + 1, u + 2, 0, 0)
            else:
                span = cls(0, u + 1, 0, j - i + 1)
        else:
            x = 0 if i_al else pl[u + 1] - i + 1
            y = 0 if j_al else j - pl[w]
            fk = u + 1 if i_al else u + 2
            lk = w + 1 if j_al else w
            span = cls(x, fk, lk - fk + 1, y)
        assert span.length(meta) == j - i + 1
        return span

    def length(self, meta: MetaText) -> int:
        pl = meta.prefix_len
        return self.x + (pl[self.k + self.l - 1] - pl[self.k - 1]) + self.y

    def content_key(self, meta: MetaText) -> tuple[tuple, int]:
        """Hashable view of the span's own run-length encoding.

        Returns (key, midpos). Two spans are equal strings iff their keys
        match and their interior whole runs agree, which callers check
        with one meta LCE query anchored at the returned 1-based run
        position. Spans of a single symbol get a self-contained key.
        """
        runs = meta.runs
        total = self.length(meta)
        pieces = (1 if self.x else 0) + self.l + (1 if self.y else 0)
        if pieces == 1:
            if self.x:
                sym = runs[self.k - 2][0]
            elif self.l:
                sym = runs[self.k - 1][0]
            else:
                sym = runs[self.k + self.l - 1][0]
            return ("u", sym, total), 0
        first = (runs[self.k - 2][0], self.x) if self.x else runs[self.k - 1]
        last = ((runs[self.k + self.l - 1][0], self.y) if self.y
                else runs[self.k + self.l - 2])
        mid_lo = self.k if self.x else self.k + 1
        mid_hi = self.k + self.l - 1 if self.y else self.k + self.l - 2
        return (total, first, last, mid_hi - mid_lo + 1), mid_lo


@dataclass
class RepairSimState:
    """Working state of pairwise compression on a run-compressed string."""

    sequence: list[tuple[GrammarItem, int]]
    rules: dict[int, tuple[GrammarItem, ...]]


def rle_to_lz77(r: RleString, self_referential: bool = False) -> Lz77Factorization:
    """Greedy leftmost-longest factorization computed on the runs.

    A factor either stays inside the cursor's run (longest earlier run of
    the same symbol bounds it) or crosses into the next run, in which case
    every admissible source sits head symbols before some run boundary
    whose surrounding runs match; those anchors are scored with one meta
    LCE query each.
    """
    runs = r.runs
    m = len(runs)
    if m == 0:
        return Lz77Factorization((), self_referential)
    meta = rank_runs(r)
    pl = meta.prefix_len
    n = meta.length
    syms = [sym for sym, _ in runs]
    exps = [exp for _, exp in runs]
    by_sym: dict[int, list[int]] = {}
    max_exp: dict[int, int] = {}
    filled = 0  # runs 0..filled-1 lie before the cursor's run
    factors: list[Literal | Reference] = []
    s = 1
    while s <= n:
        u = meta.run_of(s)
        q = s - pl[u]
        cur = RleCursor(u + 1, q)
        assert cur.position(meta) == s
        while filled < u:
            c0 = syms[filled]
            max_exp[c0] = max(max_exp.get(c0, 0), exps[filled])
            by_sym.setdefault(c0, []).append(filled)
            filled += 1
        c = syms[u]
        head = exps[u] - q + 1
        prior = max_exp.get(c, 0)
        if self_referential:
            avail = head if q >= 2 else min(head, prior)
        else:
            avail = min(head, max(prior, q - 1))
        best_len = avail
        best_src = 0
        if avail:
            src = None
            for jr in by_sym.get(c, ()):
                if exps[jr] >= avail:
                    src = pl[jr] + 1
                    break
            best_src = src if src is not None else pl[u] + 1
        if u + 1 < m:
            nxt = syms[u + 1]
            for j in range(1, u + 1):
                if syms[j - 1] != c or exps[j - 1] < head or syms[j] != nxt:
                    continue
                k = pl[j] + 1 - head
                if k < 1 or k >= s:
                    continue
                full = meta.meta_lce(j + 1, u + 2)
                cand = head + (pl[u + 1 + full] - pl[u + 1])
                a, b = j + full, u + 1 + full
                if b < m and syms[a] == syms[b]:
                    cand += min(exps[a], exps[b])
                if not self_referential:
                    cand = min(cand, s - k)
                if cand > best_len:
                    best_len, best_src = cand, k
        if best_len == 0:
            factors.append(Literal(c))
            s += 1
        else:
            factors.append(Reference(best_src, best_len))
            s += best_len
    return Lz77Factorization(tuple(factors), self_referential)


def rle_to_lz78(r: RleString) -> Lz78Factorization:
    """Dictionary factorization computed on the runs.

    Entries are remembered as text intervals; whether one matches at the
    cursor is a single character-level LCE query on the meta text.
    """
    runs = r.runs
    if not runs:
        return Lz78Factorization((), 0)
    meta = rank_runs(r)
    n = meta.length
    sigma = max(sym for sym, _ in runs) + 1
    buckets: dict[int, list[tuple[int, int, int]]] = {}
    ids: list[int] = []
    entries = 0
    pos = 1
    while pos <= n:
        c = runs[meta.run_of(pos)][0]
        rem = n - pos + 1
        flen, fid = 1, c + 1
        for ln, eid, est in buckets.get(c, ()):
            if ln > rem:
                continue
            if meta.char_lce(pos, est) >= ln:
                flen, fid = ln, eid
                break
        ids.append(fid)
        start = pos
        pos += flen
        if pos <= n:
            entries += 1
            insort(buckets.setdefault(c, []), (flen + 1, sigma + entries, start),
                   key=lambda e: -e[0])
    return Lz78Factorization(tuple(ids), sigma)


def _pair_counts(seq: list[tuple[GrammarItem, int]]):
    # left-greedy counts on the expansion: a run of q gives q // 2 for (x, x)
    counts: dict[tuple[GrammarItem, GrammarItem], int] = {}
    for idx, (tok, exp) in enumerate(seq):
        if exp >= 2:
            pair = (tok, tok)
            counts[pair] = counts.get(pair, 0) + exp // 2
        if idx + 1 < len(seq):
            pair = (tok, seq[idx + 1][0])
            counts[pair] = counts.get(pair, 0) + 1
    return counts


def rle_to_repair(r: RleString) -> AdmissibleGrammar:
    """Pairwise grammar compression replayed on run-compressed strings.

    Rounds mirror the reference codec exactly: same counts, same smallest
    pair tie-break, same left-greedy replacement, so the grammars come out
    identical. The working string just never leaves run form.
    """
    if not r.runs:
        raise EmptyInputError("cannot build a grammar for the empty string")
    state = RepairSimState([(Term(sym), exp) for sym, exp in r.runs], {})
    nxt = 1
    while True:
        counts = _pair_counts(state.sequence)
        best_count = 0
        best_pair = None
        for pair, cnt in counts.items():
            if cnt < 2 or cnt < best_count:
                continue
            key = (item_key(pair[0]), item_key(pair[1]))
            if cnt > best_count or key < (item_key(best_pair[0]),
                                          item_key(best_pair[1])):
                best_count, best_pair = cnt, pair
        if best_pair is None:
            break
        state.rules[nxt] = best_pair
        z = Var(nxt)
        left, right = best_pair
        out: list[tuple[GrammarItem, int]] = []
        if left == right:
            for tok, exp in state.sequence:
                if tok == left:
                    if exp // 2:
                        out.append((z, exp // 2))
                    if exp % 2:
                        out.append((tok, 1))
                else:
                    out.append((tok, exp))
        else:
            i = 0
            seq = state.sequence
            while i < len(seq):
                tok, exp = seq[i]
                if tok == left and i + 1 < len(seq) and seq[i + 1][0] == right:
                    rexp = seq[i + 1][1]
                    if exp > 1:
                        out.append((tok, exp - 1))
                    out.append((z, 1))
                    if rexp > 1:
                        out.append((right, rexp - 1))
                    i += 2
                else:
                    out.append((tok, exp))
                    i += 1
        merged: list[tuple[GrammarItem, int]] = []
        for tok, exp in out:
            if merged and merged[-1][0] == tok:
                merged[-1] = (tok, merged[-1][1] + exp)
            else:
                merged.append((tok, exp))
        state.sequence = merged
        nxt += 1
    rhs: list[GrammarItem] = []
    for tok, exp in state.sequence:
        rhs.extend([tok] * exp)
    state.rules[nxt] = tuple(rhs)
    return AdmissibleGrammar(state.rules, nxt)


def rle_to_bisection(r: RleString) -> AdmissibleGrammar:
    """Rebuild the balanced splitting grammar from the runs.

    Spans are deduplicated by their own run-length encoding: first and
    last pieces live in the key, the interior is a stretch of whole runs
    compared with one meta LCE query. That mirrors the naive memo, so the
    grammars match variable for variable.
    """
    if not r.runs:
        raise EmptyInputError("cannot build a grammar for the empty string")
    meta = rank_runs(r)
    pl = meta.prefix_len
    n = meta.length
    rules: dict[int, tuple[GrammarItem, ...]] = {}
    buckets: dict[tuple, list[tuple[GrammarItem, int]]] = {}
    out: dict[tuple[int, int], GrammarItem] = {}
    stack: list[tuple[int, int, bool]] = [(1, n, False)]
    while stack:
        i, j, ready = stack.pop()
        if (i, j) in out:
            continue
        if i == j:
            out[(i, j)] = Term(meta.runs[meta.run_of(i)][0])
            continue
        key, midpos = RleSpan.from_range(meta, i, j).content_key(meta)
        midlen = key[3] if key[0] != "u" else 0
        half = 1
        while half * 2 < j - i + 1:
            half *= 2
        if not ready:
            hit = None
            for item, mp in buckets.get(key, ()):
                if midlen <= 0 or meta.meta_lce(midpos, mp) >= midlen:
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
        buckets.setdefault(key, []).append((Var(var), midpos))
    top = out[(1, n)]
    if isinstance(top, Term):
        return AdmissibleGrammar({1: (top,)}, 1)
    return AdmissibleGrammar(rules, top.index)


def rle_as_slp(r: RleString) -> Slp:
    """Straight-line program deriving the decoded string.

    Each run becomes a power chain of doubling variables, runs then fold
    left to right. Size is O(sum of exponent bit lengths).
    """
    if not r.runs:
        raise EmptyInputError("cannot build a program for the empty string")
    rules: list[Term | tuple[int, int]] = []
    term_of: dict[int, int] = {}

    def term(code: int) -> int:
        if code not in term_of:
            rules.append(Term(code))
            term_of[code] = len(rules)
        return term_of[code]

    run_vars: list[int] = []
    for sym, exp in r.runs:
        powers = [term(sym)]
        while (1 << len(powers)) <= exp:
            rules.append((powers[-1], powers[-1]))
            powers.append(len(rules))
        cur = None
        for bit in range(exp.bit_length()):
            if exp >> bit & 1:
                if cur is None:
                    cur = powers[bit]
                else:
                    rules.append((cur, powers[bit]))
                    cur = len(rules)
        run_vars.append(cur)
    cur = run_vars[0]
    for v in run_vars[1:]:
        rules.append((cur, v))
        cur = len(rules)
    if cur != len(rules):
        # single run ending on a reused variable; restate it on top
        rules.append(rules[cur - 1])
    return Slp.build(tuple(rules))
