"""Round trip a byte string through every codec.

Run with: python3 demos/01_encode_decode.py
"""

from crx import (
    Text,
    expand_grammar,
    expand_lz77,
    expand_lz78,
    expand_rle,
    naive_bisection,
    naive_lz77,
    naive_lz78,
    naive_repair,
    rle_encode,
)

data = b"abracadabra, abracadabra, abracadabra!"
text = Text.from_bytes(data)
print(f"input: {data!r} ({len(data)} bytes)")
print()

r = rle_encode(text)
print(f"rle: {len(r.runs)} runs")
assert expand_rle(r).symbols == text.symbols

z = naive_lz77(text)
print(f"lz77: {len(z.factors)} factors")
assert expand_lz77(z).symbols == text.symbols

zs = naive_lz77(text, self_referential=True)
print(f"lz77 self-referential: {len(zs.factors)} factors")
assert expand_lz77(zs).symbols == text.symbols

f = naive_lz78(text)
print(f"lz78: {len(f.factor_ids)} factors over alphabet {f.alphabet_size}")
assert expand_lz78(f).symbols == text.symbols

g = naive_repair(text)
print(f"pair grammar: {len(g.rules)} rules, total size {g.size}")
assert expand_grammar(g).symbols == text.symbols

b = naive_bisection(text)
print(f"bisection grammar: {len(b.rules)} rules, total size {b.size}")
assert expand_grammar(b).symbols == text.symbols

print()
print("all codecs round-trip the input")
