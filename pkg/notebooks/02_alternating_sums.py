"""
Closed forms as alternating binomial sums
=========================================

Chain sums over 1 = l1 < ... < l_r = k feed alternating binomial sums.
Cancellation is severe, so everything stays in exact rationals.
"""

# %%
import time

from georecords import Mode, ModelParams
from georecords.analytic import (
    DenomKind,
    nested_sum_S,
    pi_analytic,
    position_f,
    position_shifted_partial_analytic,
    value_partial_analytic,
)

half = ModelParams("1/2")

# %%
print(nested_sum_S(half, 2, 2, DenomKind.STRICT_Q))  # 1/3
print(nested_sum_S(half, 3, 3, DenomKind.STRICT_Q))  # 1/21
print(position_f(half, 2, 2, Mode.STRICT))

# %%
# the weak value formula returns the mean of (value - 1); add pi back
raw = value_partial_analytic(half, 2, 2, Mode.WEAK)
print(raw, raw + pi_analytic(half, 2, 2, Mode.WEAK))

# %%
print(position_shifted_partial_analytic(half, 3, 2, Mode.STRICT))
print(position_shifted_partial_analytic(half, 3, 2, Mode.STRICT, corrected=False))  # negative: wrong coefficient

# %%
for n in (64, 256, 1024):
    t0 = time.perf_counter()
    pi = pi_analytic(half, n, 2)
    cond = value_partial_analytic(half, n, 2) / pi
    print(n, float(cond), f"{time.perf_counter() - t0:.2f}s")
