"""
Simulation cross-check
======================

Counter-based RNG streams make the estimate independent of thread count.
"""

# %%
from georecords import Mode, ModelParams, RecordQuery
from georecords.montecarlo import mc_estimate
from georecords.oracle import dp_oracle

half = ModelParams("1/2")
query = RecordQuery(256, 2, Mode.WEAK)

# %%
truth = dp_oracle(half, query)
pi_hat, value_hat, pos_hat = mc_estimate(half, query, 100_000, seed=7)
for name, hat, exact in (
    ("pi", pi_hat, truth.prob_at_least_r),
    ("value", value_hat, truth.value_conditional),
    ("position", pos_hat, truth.position_conditional),
):
    z = (hat.mean - float(exact)) / hat.stderr
    print(f"{name:9s} {hat.mean:.5f} +- {hat.stderr:.5f}  exact {float(exact):.5f}  z={z:+.2f}")

# %%
assert mc_estimate(half, query, 100_000, seed=7, threads=1) == (pi_hat, value_hat, pos_hat)
