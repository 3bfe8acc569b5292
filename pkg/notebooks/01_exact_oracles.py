"""
Exact record statistics for short geometric words
==================================================

Three independent exact computations of the same quantities: the
order-pattern enumeration, the truncated-alphabet DP and the
generating-function expansion.
"""

# %%
from gmpy2 import mpq

from georecords import Mode, ModelParams, RecordQuery
from georecords.oracle import choose_cutoff, dp_oracle, enumerate_oracle, gf_expand, records_of_word

half = ModelParams("1/2")

# %%
# records of a single word: (position, value) pairs
print(records_of_word([2, 1, 3, 3, 5], Mode.STRICT))
print(records_of_word([2, 1, 3, 3, 5], Mode.WEAK))

# %%
# probability that a word of length 2 has two strict records
stats = enumerate_oracle(half, RecordQuery(2, 2, Mode.STRICT))
print(stats.prob_at_least_r, stats.value_partial, stats.tail_bound)

# %%
# the DP cuts the alphabet at M and certifies the ignored mass
dp = dp_oracle(half, RecordQuery(6, 3, Mode.WEAK))
en = enumerate_oracle(half, RecordQuery(6, 3, Mode.WEAK))
print("cutoff", dp.cutoff, "tail", float(dp.tail_bound))
print("pi gap", float(abs(dp.prob_at_least_r - en.prob_at_least_r)))

# %%
# the product over letters is cut at H; same tail bound as the DP
H = choose_cutoff(half, 5, mpq(1, 10**6))
table = gf_expand(half, 5, 3, Mode.STRICT, H, epsilon=mpq(1, 10**6))
for n in range(2, 6):
    print(n, float(table.prob(n, 2)), float(table.prob(n, 3)))
