"""Count and sample matchings of square-octagon boards through urban renewal.

Run: python3 demos/square_octagon_sampling.py
"""

import time
from collections import Counter

from temperley import matching_weight_sum
from temperley.square_octagon import (count_matchings_squareoct, gen_region, pipeline,
                                      sample_squareoct_matching)

print("order   board matchings (brute force)   2^n * trees(F)")
for L, M in [(1, 1), (2, 1), (1, 2), (2, 2)]:
    brute = matching_weight_sum(gen_region(L, M).graph)
    print(f"({L},{M})   {str(brute):>30}   {count_matchings_squareoct(L, M)}")

for L, M in [(4, 4), (8, 8), (16, 16)]:
    print(f"({L},{M})   count {count_matchings_squareoct(L, M)}")

L, M = 1, 1
parts = pipeline(L, M)
total = int(count_matchings_squareoct(L, M))
n = 20 * total
freq = Counter(tuple(sorted(sample_squareoct_matching(L, M, rng_seed=s, parts=parts))) for s in range(n))
print(f"\n{n} samples on order ({L},{M}): {len(freq)} of {total} matchings seen, "
      f"min/max frequency {min(freq.values())}/{max(freq.values())} (expect about 20)")

t0 = time.perf_counter()
parts = pipeline(12, 12)
for s in range(5):
    sample_squareoct_matching(12, 12, rng_seed=s, parts=parts)
print(f"five samples of order (12,12) in {time.perf_counter() - t0:.2f}s including setup")
