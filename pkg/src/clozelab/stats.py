"""Unpredictability and entropy statistics over guess records.

Two summary quantities, both in bits, base-2 logs throughout:

  unpredictability  U = -log2(mean of per-word guess rates)
  entropy           H = mean of -log2(per-word guess rate)

U depends only on how many words get guessed on the first try; H needs a
substitute constant for words never guessed (p=0), where the log diverges.
By Jensen's inequality H >= U, with equality when all rates coincide.

Length buckets carry Wald confidence intervals from the binomial standard
deviation; the U-vs-length line is fitted by inverse-variance weighted
least squares, with var(U) from the delta method.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import AllMissed, InsufficientBuckets, NotNormalized
from .trials import GuessRecord, Trial

LN2_SQUARED = math.log(2) ** 2

CSV_COLUMNS = (
    "unit", "length", "n_trials", "n_correct", "p_hat", "U_bits", "ci_low", "ci_high",
)

UNITS = ("chars", "syllables")


@dataclass(frozen=True)
class GroupStats:
    """Aggregated counts for one word-length bucket."""

    length: int
    unit: str
    n_trials: int
    n_correct: int
    p_hat: float
    U: float | None  # None when no trial in the bucket was answered correctly
    ci_low: float
    ci_high: float

    @property
    def all_missed(self) -> bool:
        return self.n_correct == 0

    @classmethod
    def from_counts(
        cls, length: int, unit: str, n_correct: int, n_trials: int, z: float = 1.0,
    ) -> "GroupStats":
        if not 0 <= n_correct <= n_trials or n_trials < 1:
            raise ValueError("need 0 <= n_correct <= n_trials, n_trials >= 1")
        p = n_correct / n_trials
        low, high = binomial_ci(n_correct, n_trials, z)
        u = -math.log2(p) if n_correct > 0 else None
        return cls(length, unit, n_trials, n_correct, p, u, low, high)


@dataclass(frozen=True)
class PerWordStats:
    """Per-word guess counts; the rates feed the entropy average."""

    word_key: tuple[str, int, int]
    n_trials: int
    n_correct: int
    p_hat: float


@dataclass(frozen=True)
class LinearFit:
    slope: float       # bits per unit length
    intercept: float   # bits
    r_squared: float
    fit_range: tuple[int, int]
    n_buckets: int


def unpredictability(n_correct: int, n_trials: int) -> float:
    """-log2 of the correct-guess rate, in bits."""
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    if not 0 <= n_correct <= n_trials:
        raise ValueError("need 0 <= n_correct <= n_trials")
    if n_correct == 0:
        raise AllMissed("no correct guesses; unpredictability is undefined")
    return -math.log2(n_correct / n_trials)


def unpredictability_mean_rate(per_word: Sequence[PerWordStats]) -> float:
    """-log2 of the plain average of per-word rates (one weight per word)."""
    if not per_word:
        raise ValueError("per-word list is empty")
    mean_rate = math.fsum(w.p_hat for w in per_word) / len(per_word)
    if mean_rate == 0:
        raise AllMissed("no word was ever guessed")
    return -math.log2(mean_rate)


def entropy_mean_log(per_word: Sequence[PerWordStats], zero_guess_constant: float) -> float:
    """Average of per-word -log2 rates; never-guessed words contribute the constant.

    The constant stands in for the unobservable entropy of words with zero
    observed guesses; 10 bits matches wild dictionary guessing, 3 bits is a
    low bound.
    """
    if not per_word:
        raise ValueError("per-word list is empty")
    if zero_guess_constant <= 0:
        raise ValueError("zero_guess_constant must be positive")
    total = math.fsum(
        -math.log2(w.p_hat) if w.p_hat > 0 else zero_guess_constant
        for w in per_word
    )
    return total / len(per_word)


def binomial_ci(n_correct: int, n_trials: int, z: float) -> tuple[float, float]:
    """p_hat +- z * sqrt(p_hat (1 - p_hat) / n), clamped to [0, 1]."""
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    if z <= 0:
        raise ValueError("z must be positive")
    p = n_correct / n_trials
    half = z * math.sqrt(p * (1.0 - p) / n_trials)
    return (max(0.0, p - half), min(1.0, p + half))


def u_variance(p_hat: float, n_trials: int) -> float:
    """Delta-method variance of U = -log2(p_hat): (1-p) / (p n ln^2 2)."""
    if not 0 < p_hat <= 1:
        raise ValueError("p_hat must be in (0, 1]")
    return (1.0 - p_hat) / (p_hat * n_trials * LN2_SQUARED)


def group_by_length(
    pairs: Iterable[tuple[GuessRecord, Trial]],
    unit: str,
    trial_type: int | None = 1,
    z: float = 1.0,
) -> list[GroupStats]:
    """One GroupStats per occupied length bucket, ordered by length.

    Pairs whose trial type differs from ``trial_type`` are skipped (pass
    None to pool all types). On the syllable axis, vowel-less targets are
    skipped; the caller reports how many.
    """
    if unit not in UNITS:
        raise ValueError(f"unit must be one of {UNITS}")
    totals: dict[int, list[int]] = {}
    for record, trial in pairs:
        if trial_type is not None and trial.trial_type != trial_type:
            continue
        length = (
            trial.target.length_chars if unit == "chars"
            else trial.target.length_syllables
        )
        if length is None:
            continue
        bucket = totals.setdefault(length, [0, 0])
        bucket[0] += 1
        bucket[1] += int(record.correct)
    return [
        GroupStats.from_counts(length, unit, n_correct, n_trials, z)
        for length, (n_trials, n_correct) in sorted(totals.items())
    ]


def per_word_stats(
    pairs: Iterable[tuple[GuessRecord, Trial]],
    trial_type: int | None = 1,
) -> list[PerWordStats]:
    """Per-word counts keyed by (fragment id, start, end)."""
    totals: dict[tuple[str, int, int], list[int]] = {}
    for record, trial in pairs:
        if trial_type is not None and trial.trial_type != trial_type:
            continue
        bucket = totals.setdefault(trial.target.key(), [0, 0])
        bucket[0] += 1
        bucket[1] += int(record.correct)
    return [
        PerWordStats(key, n_trials, n_correct, n_correct / n_trials)
        for key, (n_trials, n_correct) in sorted(totals.items())
    ]


def linear_fit(
    groups: Sequence[GroupStats],
    fit_range: tuple[int, int],
    min_bucket_trials: int = 30,
) -> LinearFit:
    """Weighted least squares of U against length.

    Weights are 1/var(U) by the delta method. Only buckets inside fit_range
    with at least min_bucket_trials trials qualify; buckets with p_hat of 0
    or 1 are excluded (U or its variance is degenerate there).
    """
    lo, hi = fit_range
    used = [
        g for g in groups
        if lo <= g.length <= hi
        and g.n_trials >= min_bucket_trials
        and g.U is not None
        and g.p_hat < 1.0
    ]
    if len(used) < 2:
        raise InsufficientBuckets(
            f"{len(used)} usable bucket(s) in range {lo}..{hi}; need at least 2"
        )
    x = np.array([g.length for g in used], dtype=float)
    y = np.array([g.U for g in used], dtype=float)
    w = np.array([1.0 / u_variance(g.p_hat, g.n_trials) for g in used])

    sw = w.sum()
    sx = (w * x).sum()
    sy = (w * y).sum()
    sxx = (w * x * x).sum()
    sxy = (w * x * y).sum()
    delta = sw * sxx - sx * sx
    if delta == 0:
        raise InsufficientBuckets("all qualifying buckets share one length")
    slope = (sw * sxy - sx * sy) / delta
    intercept = (sxx * sy - sx * sxy) / delta

    residual = y - (slope * x + intercept)
    y_mean = sy / sw
    ss_res = float((w * residual**2).sum())
    ss_tot = float((w * (y - y_mean) ** 2).sum())
    r_squared = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return LinearFit(float(slope), float(intercept), r_squared, (lo, hi), len(used))


def word_entropy_from_letter_entropies(h_letters: Sequence[float]) -> list[float]:
    """Cumulative word entropy by length from per-position letter entropies.

    Entry n is the sum of the first n per-letter entropies, so a constant
    per-letter tail turns into a linear cumulative tail with that slope.
    """
    if not h_letters:
        raise ValueError("need at least one per-letter entropy")
    if any(h < 0 for h in h_letters):
        raise ValueError("letter entropies must be non-negative")
    out: list[float] = []
    total = 0.0
    for h in h_letters:
        total += h
        out.append(total)
    return out


def zipf_word_entropy(rank_frequencies: Sequence[float]) -> float:
    """Zeroth-order word entropy -sum p log2 p of a unigram distribution."""
    probs = np.asarray(rank_frequencies, dtype=float)
    if probs.size == 0 or (probs <= 0).any():
        raise NotNormalized("probabilities must be positive")
    total = float(probs.sum())
    if abs(total - 1.0) > 1e-6:
        raise NotNormalized(f"probabilities sum to {total}, not 1")
    return float(-(probs * np.log2(probs)).sum())


def bpc_to_bpw(bits_per_char: float, avg_word_len_chars: float) -> float:
    """Bits per character times average word length, in bits per word."""
    if bits_per_char <= 0 or avg_word_len_chars <= 0:
        raise ValueError("both arguments must be positive")
    return bits_per_char * avg_word_len_chars


def ergodic_sequence_probability(bits_per_char: float, length: int) -> float:
    """Typical probability 2^(-H n) of a length-n sequence from an ergodic source."""
    if bits_per_char < 0:
        raise ValueError("entropy rate must be non-negative")
    if length < 1:
        raise ValueError("length must be >= 1")
    return 2.0 ** (-bits_per_char * length)


def groups_to_csv(groups: Sequence[GroupStats]) -> str:
    """Fixed-schema CSV; U_bits is empty for buckets never guessed."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for g in groups:
        writer.writerow([
            g.unit, g.length, g.n_trials, g.n_correct,
            repr(g.p_hat), "" if g.U is None else repr(g.U),
            repr(g.ci_low), repr(g.ci_high),
        ])
    return buf.getvalue()
