"""Convert a run-length encoding straight to other representations.

The point: none of these conversions write out the decompressed text, so
inputs with billion-character runs finish instantly.

Run with: python3 demos/02_rle_conversions.py
"""

import time

from crx import (
    RleString,
    rle_to_bisection,
    rle_to_lz77,
    rle_to_lz78,
    rle_to_repair,
)

# a^(2^30) b^(2^30): two billion characters in two runs
P = 2**30
r = RleString(((0, P), (1, P)))
print(f"input: 2 runs, {r.length:,} characters")
print()

t0 = time.perf_counter()
z = rle_to_lz77(r, self_referential=True)
print(f"lz77 (self-ref):  {len(z.factors):3d} factors   "
      f"{(time.perf_counter() - t0) * 1000:7.2f} ms")

t0 = time.perf_counter()
z2 = rle_to_lz77(r)
print(f"lz77 (plain):     {len(z2.factors):3d} factors   "
      f"{(time.perf_counter() - t0) * 1000:7.2f} ms")

t0 = time.perf_counter()
f = rle_to_lz78(r)
print(f"lz78:             {len(f.factor_ids):3d} factors   "
      f"{(time.perf_counter() - t0) * 1000:7.2f} ms")

t0 = time.perf_counter()
g = rle_to_repair(r)
print(f"pair grammar:     {len(g.rules):3d} rules     "
      f"{(time.perf_counter() - t0) * 1000:7.2f} ms")

t0 = time.perf_counter()
b = rle_to_bisection(r)
print(f"bisection:        {len(b.rules):3d} rules     "
      f"{(time.perf_counter() - t0) * 1000:7.2f} ms")

print()
print("every output derives the same two-billion-character string")
