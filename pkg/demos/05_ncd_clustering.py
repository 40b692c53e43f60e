"""Cluster byte strings by normalized compression distance.

Similar inputs compress well together; the distance matrix makes the two
families separate cleanly without any feature engineering.

Run with: python3 demos/05_ncd_clustering.py
"""

import random

from crx import ncd_bytes

rng = random.Random(12)

english = [
    b"the quick brown fox jumps over the lazy dog " * 20,
    b"pack my box with five dozen liquor jugs today " * 20,
    b"how vexingly quick daft zebras jump over fences " * 18,
]
noise = [bytes(rng.randrange(256) for _ in range(900)) for _ in range(3)]
items = [("eng0", english[0]), ("eng1", english[1]), ("eng2", english[2]),
         ("rnd0", noise[0]), ("rnd1", noise[1]), ("rnd2", noise[2])]

print("pairwise distances (lz78 dictionary codec):")
print("       " + "  ".join(f"{name}" for name, _ in items))
for name_a, a in items:
    row = [f"{ncd_bytes(a, b):.2f}" for _, b in items]
    print(f"{name_a}   " + "  ".join(row))

print()
within = ncd_bytes(english[0], english[1])
across = ncd_bytes(english[0], noise[0])
print(f"text vs text:  {within:.3f}")
print(f"text vs noise: {across:.3f}")
assert within < across
print("the text family sits closer to itself than to noise")
