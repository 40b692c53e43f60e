"""Primitives over straight line programs that never expand the text.

Occurrence sets are stored per text variable as arithmetic progressions
of starts that cross the variable's left/right boundary, plus terminal
markers for single-character patterns. Every occurrence of a pattern of
length >= 2 crosses exactly one boundary in the derivation tree, so the
progressions with derivation multiplicities cover the set exactly.

All positions are 1-based. Traversals use explicit stacks throughout;
derivation heights can exceed Python's recursion limit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceededError, InternalError
from .model import RleString, Slp, Term


def char_at(s: Slp, i: int) -> int:
    """Symbol at position i of the derived string, in O(height) steps."""
    if not 1 <= i <= s.length:
        raise IndexError(f"position {i} out of range 1..{s.length}")
    v = s.n
    while True:
        rule = s.rules[v - 1]
        if isinstance(rule, Term):
            return rule.code
        l, r = rule
        ll = s.lengths[l - 1]
        if i <= ll:
            v = l
        else:
            i -= ll
            v = r


def reachable_vars(s: Slp) -> list[int]:
    """Variables reachable from the start rule, ascending."""
    seen = bytearray(s.n + 1)
    seen[s.n] = 1
    work = [s.n]
    while work:
        rule = s.rules[work.pop() - 1]
        if not isinstance(rule, Term):
            for c in rule:
                if not seen[c]:
                    seen[c] = 1
                    work.append(c)
    return [v for v in range(1, s.n + 1) if seen[v]]


@dataclass(frozen=True)
class RunLinkAnnotations:
    """Per-variable run geometry, indexed by variable - 1.

    plen/slen are the maximal equal-symbol run lengths at the prefix and
    suffix of each variable's expansion; first/last are the edge symbols.
    llink is the shallowest descendant on the leftmost path whose suffix
    run does not swallow its whole right child (slen <= |right|); rlink
    is the mirror image on the rightmost path (plen <= |left|). Both are
    the variable itself for terminal rules.
    """
    plen: tuple[int, ...]
    slen: tuple[int, ...]
    first: tuple[int, ...]
    last: tuple[int, ...]
    llink: tuple[int, ...]
    rlink: tuple[int, ...]


def annotate_runs(s: Slp) -> RunLinkAnnotations:
    plen = [0] * s.n
    slen = [0] * s.n
    first = [0] * s.n
    last = [0] * s.n
    llink = [0] * s.n
    rlink = [0] * s.n
    for idx, rule in enumerate(s.rules):
        if isinstance(rule, Term):
            plen[idx] = slen[idx] = 1
            first[idx] = last[idx] = rule.code
            llink[idx] = rlink[idx] = idx + 1
            continue
        l, r = rule
        li, ri = l - 1, r - 1
        len_l, len_r = s.lengths[li], s.lengths[ri]
        first[idx] = first[li]
        last[idx] = last[ri]
        p = plen[li]
        if p == len_l and first[ri] == first[li]:
            p = len_l + plen[ri]
        plen[idx] = p
        q = slen[ri]
        if q == len_r and last[li] == last[ri]:
            q = len_r + slen[li]
        slen[idx] = q
        llink[idx] = idx + 1 if q <= len_r else llink[li]
        rlink[idx] = idx + 1 if p <= len_l else rlink[ri]
    return RunLinkAnnotations(tuple(plen), tuple(slen), tuple(first),
                              tuple(last), tuple(llink), tuple(rlink))


def slp_runs(s: Slp, ann: RunLinkAnnotations | None = None) -> RleString:
    """Run-length encoding of the derived string, without expanding it.

    A variable whose prefix run swallows its left child contributes the
    same interior runs as its right child (and symmetrically), so interior
    emission first jumps through rlink/llink, then splits into the two
    children around the run at the cut, which is the only place where two
    runs can merge.
    """
    if ann is None:
        ann = annotate_runs(s)
    root = s.n
    n_chars = s.length
    if ann.plen[root - 1] == n_chars:
        return RleString(((ann.first[root - 1], n_chars),))
    out: list[tuple[int, int]] = [(ann.first[root - 1], ann.plen[root - 1])]
    stack: list[int | tuple[int, int]] = [root]
    while stack:
        item = stack.pop()
        if isinstance(item, tuple):
            out.append(item)
            continue
        v = item
        # interior of v equals the interior of the jump target
        while True:
            l, r = s.rules[v - 1]
            if ann.plen[v - 1] > s.lengths[l - 1]:
                v = ann.rlink[v - 1]
                continue
            if ann.slen[v - 1] > s.lengths[r - 1]:
                v = ann.llink[v - 1]
                continue
            break
        l, r = s.rules[v - 1]
        li, ri = l - 1, r - 1
        l_unary = ann.plen[li] == s.lengths[li]
        r_unary = ann.plen[ri] == s.lengths[ri]
        pushes: list[int | tuple[int, int]] = []
        if ann.last[li] == ann.first[ri]:
            # a swallowed child would have delegated above, so neither is unary
            pushes = [l, (ann.last[li], ann.slen[li] + ann.plen[ri]), r]
        else:
            if not l_unary:
                pushes += [l, (ann.last[li], ann.slen[li])]
            if not r_unary:
                pushes += [(ann.first[ri], ann.plen[ri]), r]
        stack.extend(reversed(pushes))
    out.append((ann.last[root - 1], ann.slen[root - 1]))
    return RleString(tuple(out))


def substring_slp(s: Slp, i: int, j: int) -> Slp:
    """An SLP deriving positions i..j, of size at most |s| + O(height).

    Descends to the deepest variable containing the range, then stitches
    the surviving right siblings of the left cut path and left siblings
    of the right cut path with a left-associative chain of fresh rules.
    """
    if not 1 <= i <= j <= s.length:
        raise IndexError(f"substring [{i}, {j}] out of range 1..{s.length}")
    v, lo, hi = s.n, i, j
    while True:
        rule = s.rules[v - 1]
        if isinstance(rule, Term):
            break
        l, r = rule
        ll = s.lengths[l - 1]
        if hi <= ll:
            v = l
        elif lo > ll:
            lo -= ll
            hi -= ll
            v = r
        else:
            break
    if lo == 1 and hi == s.lengths[v - 1]:
        return Slp.build(s.rules[:v])
    l, r = s.rules[v - 1]
    ll = s.lengths[l - 1]
    suffix_sibs: list[int] = []
    u, p = l, lo
    while p != 1:
        ul, ur = s.rules[u - 1]
        ull = s.lengths[ul - 1]
        if p > ull:
            p -= ull
            u = ur
        else:
            suffix_sibs.append(ur)
            u = ul
    pieces = [u] + suffix_sibs[::-1]
    u, q = r, hi - ll
    while q != s.lengths[u - 1]:
        ul, ur = s.rules[u - 1]
        ull = s.lengths[ul - 1]
        if q <= ull:
            u = ul
        else:
            pieces.append(ul)
            q -= ull
            u = ur
    pieces.append(u)
    rules = list(s.rules)
    cur = pieces[0]
    for nxt in pieces[1:]:
        rules.append((cur, nxt))
        cur = len(rules)
    return Slp.build(tuple(rules))


def runext(s: Slp, pos: int, ann: RunLinkAnnotations | None = None) -> tuple[int, int]:
    """(symbol, length) of the maximal equal-symbol stretch starting at pos."""
    if ann is None:
        ann = annotate_runs(s)
    if not 1 <= pos <= s.length:
        raise IndexError(f"position {pos} out of range 1..{s.length}")
    path: list[tuple[int, int]] = []
    v, p = s.n, pos
    while True:
        rule = s.rules[v - 1]
        if isinstance(rule, Term):
            c = rule.code
            break
        path.append((v, p))
        l, r = rule
        ll = s.lengths[l - 1]
        if p <= ll:
            v = l
        else:
            p -= ll
            v = r
    ext = 1
    for v, p in reversed(path):
        l, r = s.rules[v - 1]
        ll = s.lengths[l - 1]
        if p <= ll and p + ext - 1 == ll and ann.first[r - 1] == c:
            ext += ann.plen[r - 1]
    return c, ext


def _trim_head(runs: list[tuple[int, int]], need: int, cap: int) -> tuple[list[tuple[int, int]], bool]:
    out: list[tuple[int, int]] = []
    before = 0
    for sym, exp in runs:
        if len(out) >= cap or before >= need:
            return out, True
        out.append((sym, exp))
        before += exp
    return out, False


def _merge_runs(a: list[tuple[int, int]], b: list[tuple[int, int]]) -> list[tuple[int, int]]:
    if a and b and a[-1][0] == b[0][0]:
        return a[:-1] + [(a[-1][0], a[-1][1] + b[0][1])] + b[1:]
    return a + b


def _edge_runs(s: Slp, reach: list[int], need: int, cap: int):
    """For every reachable variable, the runs covering its first and last
    `need` characters, truncated to `cap` runs. Exponents are never cut:
    the run straddling the cutoff keeps its full length, so boundary
    matching can rely on true exponents. The flag records whether the list
    covers the variable's whole expansion."""
    head: dict[int, tuple[list[tuple[int, int]], bool]] = {}
    tail: dict[int, tuple[list[tuple[int, int]], bool]] = {}
    for v in reach:
        rule = s.rules[v - 1]
        if isinstance(rule, Term):
            head[v] = ([(rule.code, 1)], True)
            tail[v] = ([(rule.code, 1)], True)
            continue
        l, r = rule
        hl, cl = head[l]
        hr, cr = head[r]
        if not cl:
            head[v] = (hl, False)
        else:
            merged, dropped = _trim_head(_merge_runs(hl, hr), need, cap)
            head[v] = (merged, cr and not dropped)
        tl, dl = tail[l]
        tr, dr = tail[r]
        if not dr:
            tail[v] = (tr, False)
        else:
            merged = _merge_runs(tl, tr)
            rev, dropped = _trim_head([(sym, exp) for sym, exp in reversed(merged)], need, cap)
            tail[v] = ([(sym, exp) for sym, exp in reversed(rev)], dl and not dropped)
    return head, tail


def _kmp_find_all(needle: list, hay: list) -> list[int]:
    if len(needle) > len(hay):
        return []
    fail = [0] * len(needle)
    k = 0
    for i in range(1, len(needle)):
        while k and needle[i] != needle[k]:
            k = fail[k - 1]
        if needle[i] == needle[k]:
            k += 1
        fail[i] = k
    matches = []
    k = 0
    for i, x in enumerate(hay):
        while k and x != needle[k]:
            k = fail[k - 1]
        if x == needle[k]:
            k += 1
        if k == len(needle):
            matches.append(i - k + 1)
            k = fail[k - 1]
    return matches


def _group_aps(positions: list[int]) -> list[tuple[int, int, int]]:
    aps = []
    i = 0
    while i < len(positions):
        if i + 1 == len(positions):
            aps.append((positions[i], 1, 1))
            break
        step = positions[i + 1] - positions[i]
        j = i + 1
        while j + 1 < len(positions) and positions[j + 1] - positions[j] == step:
            j += 1
        aps.append((positions[i], step, j - i + 1))
        i = j + 1
    return aps


class OccRepr:
    """Occurrence starts of one pattern inside one compressed text.

    crossing maps a variable to arithmetic progressions (first, step,
    count) of starts, relative to the variable's own origin, that cross
    its child boundary. term_match lists the terminal variables equal to
    a single-character pattern. Queries combine both with the derivation
    structure; nothing here ever expands the text.
    """

    def __init__(self, text: Slp, pattern_length: int,
                 crossing: dict[int, tuple[tuple[int, int, int], ...]],
                 term_match: frozenset[int]):
        self.text = text
        self.pattern_length = pattern_length
        self.crossing = crossing
        self.term_match = term_match
        self._min = self._min_table()

    def _min_table(self) -> dict[int, int]:
        s = self.text
        mn: dict[int, int] = {}
        for v in range(1, s.n + 1):
            rule = s.rules[v - 1]
            if isinstance(rule, Term):
                if v in self.term_match:
                    mn[v] = 1
                continue
            l, r = rule
            cands = []
            aps = self.crossing.get(v)
            if aps:
                cands.append(aps[0][0])
            if l in mn:
                cands.append(mn[l])
            if r in mn:
                cands.append(s.lengths[l - 1] + mn[r])
            if cands:
                mn[v] = min(cands)
        return mn

    def min_start(self) -> int | None:
        return self._min.get(self.text.n)

    def membership(self, k: int) -> bool:
        s = self.text
        length = self.pattern_length
        if k < 1 or k + length - 1 > s.length:
            return False
        v = s.n
        while True:
            rule = s.rules[v - 1]
            if isinstance(rule, Term):
                return v in self.term_match
            l, r = rule
            ll = s.lengths[l - 1]
            if k + length - 1 <= ll:
                v = l
            elif k > ll:
                k -= ll
                v = r
            else:
                for f, st, c in self.crossing.get(v, ()):
                    if f <= k <= f + st * (c - 1) and (k - f) % st == 0:
                        return True
                return False

    def exists_start_in(self, lo: int, hi: int) -> bool:
        """Some occurrence starts at a position in [lo, hi]."""
        s = self.text
        length = self.pattern_length
        stack = [(s.n, lo, hi)]
        while stack:
            v, a, b = stack.pop()
            vl = s.lengths[v - 1]
            a = max(a, 1)
            b = min(b, vl)
            if a > b or v not in self._min:
                continue
            if a == 1 and b >= vl - length + 1:
                return True
            rule = s.rules[v - 1]
            if isinstance(rule, Term):
                continue
            l, r = rule
            ll = s.lengths[l - 1]
            for f, st, c in self.crossing.get(v, ()):
                last = f + st * (c - 1)
                if last < a or f > b:
                    continue
                hit = f if f >= a else f + ((a - f + st - 1) // st) * st
                if hit <= b:
                    return True
            stack.append((l, a, b))
            if b > ll:
                stack.append((r, a - ll, b - ll))
        return False

    def exists_fully_within(self, lo: int, hi: int) -> bool:
        """Some occurrence lies entirely inside positions [lo, hi]."""
        top = hi - self.pattern_length + 1
        return top >= lo and self.exists_start_in(lo, top)

    def count(self) -> int:
        s = self.text
        voc = [0] * (s.n + 1)
        voc[s.n] = 1
        total = 0
        for v in range(s.n, 0, -1):
            m = voc[v]
            if not m:
                continue
            rule = s.rules[v - 1]
            if isinstance(rule, Term):
                if v in self.term_match:
                    total += m
                continue
            for _, _, c in self.crossing.get(v, ()):
                total += m * c
            l, r = rule
            voc[l] += m
            voc[r] += m
        return total

    def positions(self, max_nodes: int = 1 << 21) -> list[int]:
        """All absolute starts, by walking the derivation tree. Test-scale
        only; the tree has one node per text position."""
        s = self.text
        out: list[int] = []
        nodes = 0
        stack = [(s.n, 0)]
        while stack:
            v, base = stack.pop()
            nodes += 1
            if nodes > max_nodes:
                raise BudgetExceededError(nodes, max_nodes)
            rule = s.rules[v - 1]
            if isinstance(rule, Term):
                if v in self.term_match:
                    out.append(base + 1)
                continue
            for f, st, c in self.crossing.get(v, ()):
                out.extend(base + f + st * k for k in range(c))
            l, r = rule
            stack.append((r, base + s.lengths[l - 1]))
            stack.append((l, base))
        out.sort()
        return out


def occurrences(text: Slp, pattern: Slp) -> OccRepr:
    """Compute the occurrence set of val(pattern) inside val(text).

    For each text variable, candidate crossing starts are anchored at run
    boundaries of a window of runs around the variable's cut: a crossing
    occurrence touches at most r_p runs per side (r_p = pattern run
    count), so windows of r_p + 2 true-exponent runs and pattern length
    minus one characters per side lose nothing. Single-run patterns
    collapse to one progression per window by length arithmetic.
    """
    length = pattern.length
    if length == 1:
        code = char_at(pattern, 1)
        tm = frozenset(v for v in range(1, text.n + 1)
                       if isinstance(text.rules[v - 1], Term)
                       and text.rules[v - 1].code == code)
        return OccRepr(text, 1, {}, tm)
    pruns = list(slp_runs(pattern).runs)
    rp = len(pruns)
    need = length - 1
    cap = rp + 2
    reach = reachable_vars(text)
    head, tail = _edge_runs(text, reach, need, cap)
    interior = pruns[1:-1]
    first_sym, first_exp = pruns[0]
    last_sym, last_exp = pruns[-1]
    crossing: dict[int, tuple[tuple[int, int, int], ...]] = {}
    for v in reach:
        rule = text.rules[v - 1]
        if isinstance(rule, Term) or text.lengths[v - 1] < length:
            continue
        l, r = rule
        b = text.lengths[l - 1]
        window: list[tuple[int, int, int]] = []
        pos = b + 1
        for sym, exp in reversed(tail[l][0]):
            pos -= exp
            window.append((sym, exp, pos))
        window.reverse()
        head_runs = head[r][0]
        nxt = b + 1
        start_idx = 0
        if window and head_runs and window[-1][0] == head_runs[0][0]:
            sym, exp, ws = window[-1]
            window[-1] = (sym, exp + head_runs[0][1], ws)
            nxt += head_runs[0][1]
            start_idx = 1
        for sym, exp in head_runs[start_idx:]:
            window.append((sym, exp, nxt))
            nxt += exp
        aps: list[tuple[int, int, int]] = []
        starts: list[int] = []
        if rp == 1:
            for sym, exp, ws in window:
                if ws <= b and ws + exp - 1 >= b + 1:
                    if sym == first_sym:
                        o_lo = max(ws, b - length + 2)
                        o_hi = min(b, ws + exp - length)
                        if o_lo <= o_hi:
                            aps = [(o_lo, 1, o_hi - o_lo + 1)]
                    break
        else:
            pairs = [(sym, exp) for sym, exp, _ in window]
            if interior:
                anchors = _kmp_find_all(interior, pairs)
            else:
                anchors = range(1, len(window))
            for t in anchors:
                tl_idx = t - 1
                tr_idx = t + rp - 2
                if tl_idx < 0 or tr_idx >= len(window):
                    continue
                psym, pexp, _ = window[tl_idx]
                qsym, qexp, _ = window[tr_idx]
                if psym != first_sym or pexp < first_exp:
                    continue
                if qsym != last_sym or qexp < last_exp:
                    continue
                o = window[t][2] - first_exp
                if o <= b and o + length - 1 >= b + 1:
                    if o < 1 or o + length - 1 > text.lengths[v - 1]:
                        raise InternalError(f"occurrence {o} escapes variable {v}")
                    starts.append(o)
            aps = _group_aps(starts)
        if aps:
            crossing[v] = tuple(aps)
    return OccRepr(text, length, crossing, frozenset())


def slp_equals(a: Slp, b: Slp) -> bool:
    """Do two programs derive the same string?"""
    if a is b:
        return True
    if a.length != b.length:
        return False
    return occurrences(a, b).membership(1)


def prefix_match(text: Slp, pos: int, pattern: Slp,
                 text_ann: RunLinkAnnotations | None = None,
                 pattern_ann: RunLinkAnnotations | None = None) -> bool:
    """Does val(pattern) occur in val(text) starting at pos?

    Memoized simultaneous descent on (pattern variable, text position).
    Pattern variables with a single-symbol expansion compare against the
    text's run extension at the position, which keeps unary chains cheap.
    """
    if pos < 1 or pos + pattern.length - 1 > text.length:
        raise IndexError(f"window [{pos}, {pos + pattern.length - 1}] "
                         f"out of range 1..{text.length}")
    if text_ann is None:
        text_ann = annotate_runs(text)
    if pattern_ann is None:
        pattern_ann = annotate_runs(pattern)
    memo: dict[tuple[int, int], bool] = {}
    root_key = (pattern.n, pos)
    stack = [(pattern.n, pos, False)]
    while stack:
        pv, tp, expanded = stack.pop()
        key = (pv, tp)
        if not expanded and key in memo:
            continue
        if pattern_ann.plen[pv - 1] == pattern.lengths[pv - 1]:
            sym, ext = runext(text, tp, text_ann)
            memo[key] = sym == pattern_ann.first[pv - 1] and ext >= pattern.lengths[pv - 1]
            continue
        l, r = pattern.rules[pv - 1]
        k1 = (l, tp)
        k2 = (r, tp + pattern.lengths[l - 1])
        if expanded:
            memo[key] = memo[k1] and memo.get(k2, False)
            continue
        if memo.get(k1) is False:
            memo[key] = False
            continue
        stack.append((pv, tp, True))
        if k2 not in memo:
            stack.append((k2[0], k2[1], False))
        if k1 not in memo:
            stack.append((k1[0], k1[1], False))
    return memo[root_key]


def first_mismatch(a: Slp, b: Slp) -> int | None:
    """First position where the derived strings differ, or None if equal.

    Binary search over prefix lengths; each probe is one slp_equals on
    substring programs, so the whole search is O(log N) equality checks.
    """
    if slp_equals(a, b):
        return None
    common = min(a.length, b.length)

    def prefixes_equal(m: int) -> bool:
        if m == 0:
            return True
        return slp_equals(substring_slp(a, 1, m), substring_slp(b, 1, m))

    lo, hi = 0, common  # prefixes of length lo match, some prefix <= hi differs
    if prefixes_equal(common):
        return common + 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if prefixes_equal(mid):
            lo = mid
        else:
            hi = mid
    return hi
