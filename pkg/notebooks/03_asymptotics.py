"""
Exact values against leading-order growth
=========================================
"""

# %%
import numpy as np

from georecords import Mode, ModelParams
from georecords.analytic import pi_analytic, position_partial_analytic, value_partial_analytic
from georecords.asymptotic import position_leading, value_limit

half = ModelParams("1/2")
ns = [2**e for e in range(5, 12)]

# %%
for mode in Mode:
    lim = value_limit(half, 2, mode).leading
    vals = []
    for n in ns:
        pi = pi_analytic(half, n, 2, mode)
        v = value_partial_analytic(half, n, 2, mode)
        if mode is Mode.WEAK:
            v += pi
        vals.append(float(v / pi))
    print(mode.value, "limit", lim, np.round(np.array(vals) - float(lim), 4))

# %%
# position grows like log n; the residual settles to a constant plus a small wobble
for mode in Mode:
    resid = []
    for n in ns:
        pi = pi_analytic(half, n, 2, mode)
        cond = float(position_partial_analytic(half, n, 2, mode, pi=pi) / pi)
        resid.append(cond - float(position_leading(half, n, 2, mode).leading))
    slope = np.polyfit(np.log2(ns), resid, 1)[0]
    print(mode.value, np.round(resid, 3), "slope per doubling", round(slope, 4))
