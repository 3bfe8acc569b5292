"""Four-way comparison reports (oracle, analytic, asymptotic, Monte Carlo)."""

from __future__ import annotations

import csv
import io
import json
import sys
from dataclasses import dataclass, field
from typing import Optional

import mpmath
from gmpy2 import mpq

from . import __version__
from .analytic import (
    pi_analytic,
    position_shifted_partial_analytic,
    value_partial_analytic,
)
from .asymptotic import position_leading, value_limit
from .model import Mode, ModelParams, RecordQuery
from .montecarlo import RNG_DESCRIPTION, mc_estimate
from .numeric import ExactScalar, exact
from .oracle import DEFAULT_EPS, choose_cutoff, dp_oracle

PATHS = ("oracle", "analytic", "asymptotic", "mc")

CSV_FIELDS = [
    "p", "n", "r", "mode",
    "pi_oracle", "pi_analytic",
    "value_partial_oracle", "value_partial_analytic", "value_conditional", "value_asymptote",
    "pos_partial_oracle", "pos_partial_analytic", "pos_conditional", "pos_asymptote",
    "mc_pi", "mc_value", "mc_position",
    "tail_bound",
]


@dataclass
class QueryConfig:
    p: ModelParams
    ns: list
    r: int
    modes: list = field(default_factory=lambda: [Mode.STRICT])
    paths: frozenset = frozenset({"oracle", "analytic"})
    eps: ExactScalar = DEFAULT_EPS
    trials: int = 100_000
    seed: int = 0
    weak_shift: bool = True
    corrected_f2: bool = True
    threads: Optional[int] = None

    def __post_init__(self):
        self.modes = [Mode.parse(m) for m in self.modes]
        self.paths = frozenset(self.paths)
        unknown = self.paths - set(PATHS)
        if unknown:
            raise ValueError(f"unknown paths: {sorted(unknown)}")
        if not self.paths:
            raise ValueError("no computation paths requested")
        self.eps = exact(self.eps)
        for n in self.ns:
            RecordQuery(n, self.r, Mode.STRICT)  # validates 1 <= r <= n
        if "mc" in self.paths and self.trials < 1:
            raise ValueError("trials must be >= 1")


@dataclass
class ComparisonReport:
    rows: list
    metadata: dict
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _build_row(cfg: QueryConfig, n: int, mode: Mode) -> tuple[dict, Optional[str]]:
    params, r = cfg.p, cfg.r
    query = RecordQuery(n, r, mode)
    row = {"p": params.p, "n": n, "r": r, "mode": mode.value, "notes": []}
    failure = None

    oracle = None
    if "oracle" in cfg.paths:
        M = choose_cutoff(params, n, cfg.eps)
        oracle = dp_oracle(params, query, M)
        row["oracle"] = oracle.summary()

    analytic = None
    if "analytic" in cfg.paths:
        pi = pi_analytic(params, n, r, mode)
        raw_value = value_partial_analytic(params, n, r, mode)
        value = raw_value + pi if (mode is Mode.WEAK and cfg.weak_shift) else raw_value
        shifted = position_shifted_partial_analytic(params, n, r, mode, corrected=cfg.corrected_f2)
        analytic = {
            "pi": pi,
            "value_partial": value,
            "value_partial_formula": raw_value,
            "position_shifted_partial": shifted,
            "position_partial": shifted + r * pi,
        }
        row["analytic"] = analytic

    source = analytic if analytic is not None else (
        {"pi": oracle.prob_at_least_r, "value_partial": oracle.value_partial,
         "position_partial": oracle.position_partial} if oracle is not None else None)
    if source is not None and source["pi"] != 0:
        row["value_conditional"] = source["value_partial"] / source["pi"]
        row["pos_conditional"] = source["position_partial"] / source["pi"]

    if "asymptotic" in cfg.paths:
        vl = value_limit(params, r, mode, corrected=cfg.weak_shift)
        asym = {"value_limit": vl.leading, "value_error_order": vl.error_order}
        if n >= 2:
            pl = position_leading(params, n, r, mode)
            asym["position_leading"] = pl.leading
            asym["position_error_order"] = pl.error_order
        if mode is Mode.WEAK:
            unshifted = value_limit(params, r, mode, corrected=False).leading
            asym["value_limit_unshifted"] = unshifted
            row["notes"].append(
                f"weak value limit reported as 1 + r*q/p = {unshifted + 1}; "
                f"the unshifted constant r*q/p = {unshifted} is the limit of value - 1"
            )
        row["asymptotic"] = asym
        resid = {}
        if "value_conditional" in row:
            resid["value"] = float(row["value_conditional"] - vl.leading)
        if "pos_conditional" in row and "position_leading" in asym:
            resid["position"] = float(row["pos_conditional"]) - float(asym["position_leading"])
        row.setdefault("residuals", {})["conditional_vs_asymptotic"] = resid

    if "mc" in cfg.paths:
        pi_hat, value_hat, pos_hat = mc_estimate(params, query, cfg.trials, cfg.seed, threads=cfg.threads)
        row["mc"] = {"pi_hat": pi_hat.__dict__, "value_hat": value_hat.__dict__,
                     "position_hat": pos_hat.__dict__}

    if oracle is not None and analytic is not None:
        resid = max(
            abs(analytic["pi"] - oracle.prob_at_least_r),
            abs(analytic["value_partial"] - oracle.value_partial),
            abs(analytic["position_partial"] - oracle.position_partial),
        )
        row.setdefault("residuals", {})["analytic_vs_oracle"] = resid
        if resid > oracle.tail_bound:
            failure = (f"p={params.p} n={n} r={r} mode={mode.value}: analytic-vs-oracle residual "
                       f"{float(resid):.3e} exceeds tail bound {float(oracle.tail_bound):.3e}")
    if not cfg.corrected_f2:
        row["notes"].append("position uses the uncorrected (k - r) coefficient")
    if mode is Mode.WEAK and not cfg.weak_shift and analytic is not None:
        row["notes"].append("weak value partial reported without the +pi shift (mean of value - 1)")
    return row, failure


def run_query(cfg: QueryConfig) -> ComparisonReport:
    rows, failures = [], []
    for mode in cfg.modes:
        for n in cfg.ns:
            row, failure = _build_row(cfg, n, mode)
            rows.append(row)
            if failure:
                failures.append(failure)
    rows.sort(key=lambda row: (row["p"], row["mode"], row["r"], row["n"]))
    metadata = {
        "tool_version": __version__,
        "p": cfg.p.p,
        "r": cfg.r,
        "paths": sorted(cfg.paths),
        "epsilon": cfg.eps,
        "cutoffs": {str(row["n"]): row["oracle"]["cutoff"] for row in rows if "oracle" in row},
        "seed": cfg.seed,
        "trials": cfg.trials if "mc" in cfg.paths else None,
        "rng": RNG_DESCRIPTION,
        "weak_shift": cfg.weak_shift,
        "f2_corrected": cfg.corrected_f2,
    }
    return ComparisonReport(rows=rows, metadata=metadata, failures=failures)


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, int):
        return str(x)
    if isinstance(x, type(mpq())):
        return str(x)
    if isinstance(x, (float, mpmath.mpf)):
        return "%.17g" % float(x)
    return str(x)


def _flat(row: dict) -> dict:
    oracle = row.get("oracle") or {}
    analytic = row.get("analytic") or {}
    asym = row.get("asymptotic") or {}
    mc = row.get("mc") or {}

    def mc_mean(key):
        est = mc.get(key)
        return est["mean"] if est and est["available"] else None

    return {
        "p": row["p"], "n": row["n"], "r": row["r"], "mode": row["mode"],
        "pi_oracle": oracle.get("pi"),
        "pi_analytic": analytic.get("pi"),
        "value_partial_oracle": oracle.get("value_partial"),
        "value_partial_analytic": analytic.get("value_partial"),
        "value_conditional": row.get("value_conditional"),
        "value_asymptote": asym.get("value_limit"),
        "pos_partial_oracle": oracle.get("position_partial"),
        "pos_partial_analytic": analytic.get("position_partial"),
        "pos_conditional": row.get("pos_conditional"),
        "pos_asymptote": asym.get("position_leading"),
        "mc_pi": mc_mean("pi_hat"),
        "mc_value": mc_mean("value_hat"),
        "mc_position": mc_mean("position_hat"),
        "tail_bound": oracle.get("tail_bound"),
    }


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, type(mpq())):
        return str(x)
    if isinstance(x, mpmath.mpf):
        return float(x)
    if isinstance(x, float) and x != x:
        return None
    return x


def to_csv(report: ComparisonReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for row in report.rows:
        flat = _flat(row)
        writer.writerow([_cell(flat[k]) for k in CSV_FIELDS])
    return buf.getvalue()


def to_json(report: ComparisonReport) -> str:
    rows = []
    for row in report.rows:
        out = _flat(row)
        for key in ("oracle", "analytic", "asymptotic", "mc", "residuals", "notes"):
            if key in row:
                out[key] = row[key]
        rows.append(out)
    doc = {"metadata": report.metadata, "rows": rows, "failures": report.failures}
    return json.dumps(_jsonable(doc), indent=2)


def emit(report: ComparisonReport, format: str = "csv", out=None) -> None:
    """Write the report as CSV or JSON to ``out`` (a path) or standard output."""
    if format == "csv":
        text = to_csv(report)
    elif format == "json":
        text = to_json(report) + "\n"
    else:
        raise ValueError(f"unknown format {format!r}")
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    with open(out, "w", newline="") as fh:
        fh.write(text)
