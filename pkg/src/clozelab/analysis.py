"""Log-to-table pipeline: join, filter, bucket, fit, emit CSV/JSON/plot data.

The same pipeline backs the ``analyze`` command and the ``/analysis``
endpoint, so both always agree on the same log.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path

from .engine import Config, GameState
from .errors import InsufficientBuckets, SchemaMismatch
from .stats import (
    CSV_COLUMNS, GroupStats, LinearFit, group_by_length, groups_to_csv, linear_fit,
)


@dataclass
class AnalysisResult:
    unit: str
    kind: str
    trial_type: int | None
    z: float
    n_records: int            # records matching the kind/type filters
    n_excluded: int           # vowel-less targets skipped on the syllable axis
    groups: list[GroupStats]
    fit: LinearFit | None
    fit_error: str | None


def run_analysis(
    state: GameState,
    unit: str = "chars",
    kind: str = "all",
    trial_type: int | None = 1,
    z: float = 1.0,
    fit_range: tuple[int, int] | None = None,
    min_bucket_trials: int = 30,
    config: Config | None = None,
) -> AnalysisResult:
    config = config or Config()
    if fit_range is None:
        fit_range = config.fit_range(unit)
    pairs = state.joined_pairs(kind=kind, trial_type=trial_type)
    n_excluded = 0
    if unit == "syllables":
        n_excluded = sum(
            1 for _, trial in pairs if trial.target.length_syllables is None
        )
    groups = group_by_length(pairs, unit, trial_type=trial_type, z=z)
    fit = None
    fit_error = None
    try:
        fit = linear_fit(groups, fit_range, min_bucket_trials)
    except InsufficientBuckets as exc:
        fit_error = str(exc)
    return AnalysisResult(
        unit=unit, kind=kind, trial_type=trial_type, z=z,
        n_records=len(pairs), n_excluded=n_excluded,
        groups=groups, fit=fit, fit_error=fit_error,
    )


def result_csv(result: AnalysisResult) -> str:
    return groups_to_csv(result.groups)


def result_summary(result: AnalysisResult) -> dict:
    """JSON summary; identical between the CLI and the analysis endpoint."""
    return {
        "unit": result.unit,
        "kind": result.kind,
        "trial_type": result.trial_type,
        "z": result.z,
        "n_records": result.n_records,
        "n_excluded_zero_syllable": result.n_excluded,
        "buckets": [
            {
                "length": g.length,
                "n_trials": g.n_trials,
                "n_correct": g.n_correct,
                "p_hat": g.p_hat,
                "U_bits": g.U,
                "ci_low": g.ci_low,
                "ci_high": g.ci_high,
                # interval mapped into U space, so chart clients can plot
                # error bars without recomputing anything
                "U_low": None if g.ci_high <= 0 else -math.log2(g.ci_high),
                "U_high": None if g.ci_low <= 0 else -math.log2(g.ci_low),
                "all_missed": g.all_missed,
            }
            for g in result.groups
        ],
        "fit": None if result.fit is None else {
            "slope": result.fit.slope,
            "intercept": result.fit.intercept,
            "r_squared": result.fit.r_squared,
            "fit_range": list(result.fit.fit_range),
            "n_buckets": result.fit.n_buckets,
        },
        "fit_error": result.fit_error,
    }


# --- figure data -------------------------------------------------------------

FIGURE_COLUMNS = ("length", "n_trials", "p_hat", "err_half", "U_bits", "U_low", "U_high")


def read_analysis_csv(path: str | Path) -> list[dict]:
    """Read an analyze CSV, checking the column contract."""
    text = Path(path).read_text(encoding="utf-8")
    reader = csv.DictReader(io.StringIO(text))
    header = reader.fieldnames or []
    for column in CSV_COLUMNS:
        if column not in header:
            raise SchemaMismatch(f"missing column {column!r} in {path}")
    return list(reader)


def figure_data(rows: list[dict]) -> str:
    """Plot-ready whitespace table: U against length with error bars.

    err_half is the half-width of the rate interval; U_low/U_high map the
    interval ends through -log2 (blank where the end is 0, where U diverges).
    Buckets never guessed (empty U_bits) are skipped.
    """
    lines = ["# " + " ".join(FIGURE_COLUMNS)]
    for row in rows:
        if row["U_bits"] == "":
            continue
        ci_low = float(row["ci_low"])
        ci_high = float(row["ci_high"])
        err_half = (ci_high - ci_low) / 2.0
        u_low = "" if ci_high <= 0 else repr(-math.log2(ci_high))
        u_high = "" if ci_low <= 0 else repr(-math.log2(ci_low))
        lines.append(" ".join([
            row["length"], row["n_trials"], row["p_hat"],
            repr(err_half), row["U_bits"], u_low or "nan", u_high or "nan",
        ]))
    return "\n".join(lines) + "\n"
