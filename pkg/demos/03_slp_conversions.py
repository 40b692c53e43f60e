"""Work on a straight-line program without expanding it.

A 31-rule program derives a binary string of length 2^30; we pull out its
run structure, LZ factorizations and a balanced grammar directly.

Run with: python3 demos/03_slp_conversions.py
"""

import time

from crx import Slp, Term, slp_to_lz77, slp_to_lz78, slp_to_rle

# X1 -> a, X_{i+1} -> X_i X_i: doubling all the way to 2^30
rules: list[Term | tuple[int, int]] = [Term(0)]
for i in range(1, 31):
    rules.append((i, i))
s = Slp.build(tuple(rules))
print(f"program: {s.n} rules deriving {s.length:,} characters")
print()

t0 = time.perf_counter()
r = slp_to_rle(s)
print(f"runs: {r.runs}  ({(time.perf_counter() - t0) * 1000:.2f} ms)")

t0 = time.perf_counter()
z = slp_to_lz77(s, self_referential=True)
print(f"lz77: {z.factors}  ({(time.perf_counter() - t0) * 1000:.2f} ms)")

t0 = time.perf_counter()
f = slp_to_lz78(Slp.build(tuple(rules[:21])))  # 2^20 characters
print(f"lz78 of the 2^20 prefix: {len(f.factor_ids)} factors  "
      f"({(time.perf_counter() - t0) * 1000:.0f} ms)")

# a richer program: the classic Fibonacci-flavored example
sample = Slp.build((Term(0), Term(1), (1, 2), (1, 3), (3, 4), (4, 5), (6, 5)))
print()
print(f"second program: {sample.n} rules, {sample.length} characters")
print(f"runs: {slp_to_rle(sample).runs}")
print(f"lz77: {slp_to_lz77(sample).factors}")
print(f"lz78: {slp_to_lz78(sample).factor_ids}")
