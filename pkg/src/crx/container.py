"""Text container format for compressed strings.

Layout: a header line ``CRX1 <format> <alphabet_size> <N> [selfref]``
followed by one payload line per item. Integers are decimal, fields are
separated by single spaces, lines end with a bare newline.

Payload lines by format:

* ``rle``      -- ``<sym> <exp>``
* ``lz77``     -- ``L <sym>`` or ``R <src> <len>``
* ``lz78``     -- ``<id>``
* ``grammar``  -- ``<var> -> <item>+`` with items ``t<code>`` / ``v<index>``
* ``slp``      -- same as grammar, restricted to ``X -> a`` / ``X -> Y Z``
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContainerFormatError, InvalidInputError
from .model import (
    AdmissibleGrammar,
    Literal,
    Lz77Factorization,
    Lz78Factorization,
    Reference,
    RleString,
    Slp,
    Term,
    Var,
    canonical_grammar,
    factor_length,
    grammar_derived_length,
    lz78_factor_lengths,
    slp_from_grammar_rules,
)

MAGIC = "CRX1"
FORMATS = ("rle", "lz77", "lz78", "grammar", "slp")

Payload = RleString | Lz77Factorization | Lz78Factorization | AdmissibleGrammar


@dataclass(frozen=True)
class CompressedContainer:
    format: str
    alphabet_size: int
    length: int
    payload: Payload

    @property
    def self_referential(self) -> bool:
        return (isinstance(self.payload, Lz77Factorization)
                and self.payload.self_referential)

    def payload_size(self) -> int:
        """Item count used as the compressed size: runs, factors, or total
        right-hand-side length for grammars."""
        p = self.payload
        if isinstance(p, RleString):
            return len(p.runs)
        if isinstance(p, Lz77Factorization):
            return len(p.factors)
        if isinstance(p, Lz78Factorization):
            return len(p.factor_ids)
        return p.size

    def to_slp(self) -> Slp:
        if self.format != "slp":
            raise InvalidInputError("wrong-format", "header",
                                    f"expected slp container, got {self.format}")
        return slp_from_grammar_rules(self.payload)


def make_rle_container(r: RleString, alphabet_size: int) -> CompressedContainer:
    return CompressedContainer("rle", alphabet_size, r.length, r)


def make_lz77_container(f: Lz77Factorization, alphabet_size: int) -> CompressedContainer:
    return CompressedContainer("lz77", alphabet_size, f.length, f)


def make_lz78_container(f: Lz78Factorization) -> CompressedContainer:
    n = sum(lz78_factor_lengths(f))
    return CompressedContainer("lz78", f.alphabet_size, n, f)


def make_grammar_container(g: AdmissibleGrammar, alphabet_size: int) -> CompressedContainer:
    if g.start != max(g.rules):
        g = canonical_grammar(g)
    return CompressedContainer("grammar", alphabet_size, grammar_derived_length(g), g)


def make_slp_container(s: Slp, alphabet_size: int) -> CompressedContainer:
    return CompressedContainer("slp", alphabet_size, s.length, s.to_grammar())


def _item_str(item: Term | Var) -> str:
    return f"t{item.code}" if isinstance(item, Term) else f"v{item.index}"


def serialize(c: CompressedContainer) -> str:
    header = f"{MAGIC} {c.format} {c.alphabet_size} {c.length}"
    if c.format == "lz77" and c.payload.self_referential:
        header += " selfref"
    lines = [header]
    p = c.payload
    if c.format == "rle":
        lines.extend(f"{sym} {exp}" for sym, exp in p.runs)
    elif c.format == "lz77":
        for f in p.factors:
            if isinstance(f, Literal):
                lines.append(f"L {f.symbol}")
            else:
                lines.append(f"R {f.src} {f.length}")
    elif c.format == "lz78":
        lines.extend(str(fid) for fid in p.factor_ids)
    elif c.format in ("grammar", "slp"):
        for var in sorted(p.rules):
            rhs = " ".join(_item_str(it) for it in p.rules[var])
            lines.append(f"{var} -> {rhs}")
    else:
        raise ContainerFormatError(f"unknown format {c.format!r}")
    return "\n".join(lines) + "\n"


def _int(tok: str, where: str) -> int:
    if not tok or not (tok.isdigit() or (tok[0] == "-" and tok[1:].isdigit())):
        raise ContainerFormatError(f"{where}: expected integer, got {tok!r}")
    return int(tok)


def parse(data: str) -> CompressedContainer:
    lines = data.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ContainerFormatError("empty container")
    head = lines[0].split(" ")
    if len(head) < 4 or head[0] != MAGIC:
        raise ContainerFormatError(f"bad header {lines[0]!r}")
    fmt = head[1]
    if fmt not in FORMATS:
        raise ContainerFormatError(f"unknown format {fmt!r}")
    alphabet_size = _int(head[2], "header")
    length = _int(head[3], "header")
    self_ref = False
    if len(head) == 5:
        if fmt != "lz77" or head[4] != "selfref":
            raise ContainerFormatError(f"bad header {lines[0]!r}")
        self_ref = True
    elif len(head) != 4:
        raise ContainerFormatError(f"bad header {lines[0]!r}")

    body = lines[1:]
    payload: Payload
    if fmt == "rle":
        runs = []
        for ln, line in enumerate(body, start=2):
            parts = line.split(" ")
            if len(parts) != 2:
                raise ContainerFormatError(f"line {ln}: bad run {line!r}")
            runs.append((_int(parts[0], f"line {ln}"), _int(parts[1], f"line {ln}")))
        payload = RleString(tuple(runs))
    elif fmt == "lz77":
        factors = []
        for ln, line in enumerate(body, start=2):
            parts = line.split(" ")
            if parts[0] == "L" and len(parts) == 2:
                factors.append(Literal(_int(parts[1], f"line {ln}")))
            elif parts[0] == "R" and len(parts) == 3:
                factors.append(Reference(_int(parts[1], f"line {ln}"),
                                         _int(parts[2], f"line {ln}")))
            else:
                raise ContainerFormatError(f"line {ln}: bad factor {line!r}")
        payload = Lz77Factorization(tuple(factors), self_ref)
    elif fmt == "lz78":
        ids = tuple(_int(line, f"line {ln}")
                    for ln, line in enumerate(body, start=2))
        payload = Lz78Factorization(ids, alphabet_size)
    else:
        rules: dict[int, tuple[Term | Var, ...]] = {}
        for ln, line in enumerate(body, start=2):
            parts = line.split(" ")
            if len(parts) < 3 or parts[1] != "->":
                raise ContainerFormatError(f"line {ln}: bad rule {line!r}")
            var = _int(parts[0], f"line {ln}")
            if var in rules:
                raise ContainerFormatError(f"line {ln}: duplicate rule for {var}")
            items: list[Term | Var] = []
            for tok in parts[2:]:
                if tok.startswith("t"):
                    items.append(Term(_int(tok[1:], f"line {ln}")))
                elif tok.startswith("v"):
                    items.append(Var(_int(tok[1:], f"line {ln}")))
                else:
                    raise ContainerFormatError(f"line {ln}: bad item {tok!r}")
            rules[var] = tuple(items)
        if not rules:
            raise ContainerFormatError("grammar container has no rules")
        payload = AdmissibleGrammar(rules, max(rules))
    return CompressedContainer(fmt, alphabet_size, length, payload)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    error: str | None = None
    location: str | None = None
    length: int | None = None


def _fail(code: str, location: str) -> ValidationReport:
    return ValidationReport(False, code, location)


def validate(c: CompressedContainer) -> ValidationReport:
    """Check payload invariants; reports the first violation found."""
    sigma = c.alphabet_size
    p = c.payload
    if c.format == "rle":
        total = 0
        prev = None
        for i, (sym, exp) in enumerate(p.runs, start=1):
            if exp < 1:
                return _fail("zero-exponent", f"run {i}")
            if not 0 <= sym < sigma:
                return _fail("symbol-out-of-range", f"run {i}")
            if sym == prev:
                return _fail("adjacent-equal-runs", f"run {i}")
            prev = sym
            total += exp
        if total != c.length:
            return _fail("length-mismatch", "payload")
        return ValidationReport(True, length=total)
    if c.format == "lz77":
        pos = 1
        for i, f in enumerate(p.factors, start=1):
            if isinstance(f, Literal):
                if not 0 <= f.symbol < sigma:
                    return _fail("symbol-out-of-range", f"factor {i}")
                pos += 1
                continue
            if f.length < 1 or f.src < 1:
                return _fail("bad-reference", f"factor {i}")
            if p.self_referential:
                if f.src >= pos:
                    return _fail("dangling-reference", f"factor {i}")
            elif f.src + f.length - 1 >= pos:
                return _fail("dangling-reference", f"factor {i}")
            pos += f.length
        if pos - 1 != c.length:
            return _fail("length-mismatch", "payload")
        return ValidationReport(True, length=pos - 1)
    if c.format == "lz78":
        try:
            lens = lz78_factor_lengths(p)
        except InvalidInputError as e:
            return _fail(e.code, e.location)
        if sum(lens) != c.length:
            return _fail("length-mismatch", "payload")
        return ValidationReport(True, length=sum(lens))

    # grammar and slp
    n = len(p.rules)
    for var in sorted(p.rules):
        rhs = p.rules[var]
        if not rhs:
            return _fail("empty-rule", f"rule {var}")
        for it in rhs:
            if isinstance(it, Term):
                if not 0 <= it.code < sigma:
                    return _fail("symbol-out-of-range", f"rule {var}")
            elif it.index not in p.rules:
                return _fail("undefined-variable", f"rule {var}")
        if c.format == "slp":
            shape_ok = (len(rhs) == 1 and isinstance(rhs[0], Term)) or (
                len(rhs) == 2 and isinstance(rhs[0], Var) and isinstance(rhs[1], Var))
            if not shape_ok:
                return _fail("malformed-slp-rule", f"rule {var}")
            for it in rhs:
                if isinstance(it, Var) and it.index >= var:
                    return _fail("forward-reference-in-slp", f"rule {var}")
    if c.format == "slp" and set(p.rules) != set(range(1, n + 1)):
        return _fail("missing-variable", "rules")
    if p.start != max(p.rules):
        return _fail("bad-start", "header")
    try:
        derived = grammar_derived_length(p)
    except InvalidInputError as e:
        return _fail(e.code, e.location)
    reachable = {p.start}
    work = [p.start]
    while work:
        for it in p.rules[work.pop()]:
            if isinstance(it, Var) and it.index not in reachable:
                reachable.add(it.index)
                work.append(it.index)
    if len(reachable) != n:
        return _fail("unreachable-variable", "rules")
    if derived != c.length:
        return _fail("length-mismatch", "payload")
    return ValidationReport(True, length=derived)
