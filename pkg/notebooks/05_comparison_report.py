"""
Comparison report
=================

The same table the ``georecords`` command writes, built in-process.
"""

# %%
from georecords import Mode, ModelParams
from georecords.report import QueryConfig, emit, run_query

cfg = QueryConfig(
    p=ModelParams("1/2"),
    ns=[8, 16, 32],
    r=2,
    modes=[Mode.STRICT, Mode.WEAK],
    paths={"oracle", "analytic", "asymptotic"},
)
report = run_query(cfg)
print("ok:", report.ok)

# %%
# exact cells are full a/b rationals and get long quickly; show floats here
for row in report.rows:
    print(row["mode"], row["n"], float(row["value_conditional"]), float(row["pos_conditional"]),
          row["residuals"]["conditional_vs_asymptotic"])

# %%
emit(report, "json", "comparison.json")

# %%
for row in report.rows:
    print(row["mode"], row["n"], row["notes"])
