"""Algorithmic subjects that play trials in place of live players.

Each guesser sees only what a human would: the masked text, the shown word
(type 2) or the candidate pair (type 3). The oracle and the planted-curve
subject additionally hold ground truth by design; they exist to calibrate
and validate the statistics pipeline.
"""

from __future__ import annotations

import bisect
import itertools
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import Alphabet, Fragment, extract_words, fold
from .errors import TrainingLeakage, UnknownSubjectKind, UntrainedModel
from .trials import Trial

SUBJECT_KINDS = ("human", "oracle", "uniform", "frequency", "ngram", "planted")


@dataclass(frozen=True)
class SubjectProfile:
    subject_id: str
    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in SUBJECT_KINDS:
            raise UnknownSubjectKind(f"unknown subject kind {self.kind!r}")


class FrequencyDictionary:
    """Word list with normalized relative frequencies.

    File format: UTF-8 lines of ``word<TAB>count``; counts are normalized
    at load. Lookup is case-folded.
    """

    def __init__(self, weights: dict[str, float]):
        if not weights:
            raise ValueError("frequency dictionary is empty")
        folded: dict[str, float] = {}
        for word, w in weights.items():
            if w <= 0:
                raise ValueError(f"non-positive frequency for {word!r}")
            folded[fold(word)] = folded.get(fold(word), 0.0) + float(w)
        total = math.fsum(folded.values())
        self.words: list[str] = list(folded)
        self.freqs: dict[str, float] = {w: folded[w] / total for w in self.words}
        self._cumulative: list[float] = list(
            itertools.accumulate(self.freqs[w] for w in self.words)
        )
        assert abs(self._cumulative[-1] - 1.0) <= 1e-9

    @classmethod
    def load(cls, path: str | Path) -> "FrequencyDictionary":
        weights: dict[str, float] = {}
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            word, _, count = line.partition("\t")
            weights[word.strip()] = weights.get(word.strip(), 0.0) + float(count)
        return cls(weights)

    @classmethod
    def uniform(cls, words: list[str]) -> "FrequencyDictionary":
        return cls({w: 1.0 for w in words})

    def freq(self, word: str) -> float:
        return self.freqs.get(fold(word), 0.0)

    def sample(self, rng: random.Random) -> str:
        idx = bisect.bisect_right(self._cumulative, rng.random())
        return self.words[min(idx, len(self.words) - 1)]

    def __len__(self) -> int:
        return len(self.words)


def weighted_choice(rng: random.Random, items: list[str], weights: list[float]) -> str:
    """One draw proportional to weights, via a single rng.random() call."""
    cumulative = list(itertools.accumulate(weights))
    total = cumulative[-1]
    u = rng.random() * total
    idx = bisect.bisect_right(cumulative, u)
    return items[min(idx, len(items) - 1)]


def oracle_guess(trial: Trial) -> str | int:
    """Always the correct answer; test oracle with ground-truth access."""
    if trial.trial_type == 1:
        return trial.target.surface
    if trial.trial_type == 2:
        return 0 if trial.shows_original else 1
    return 0 if trial.shown_original_first else 1


def frequency_guess(trial: Trial, dictionary: FrequencyDictionary, rng_seed: int) -> str | int:
    """Wild guessing from a frequency dictionary.

    Type 1 samples a word proportional to frequency. Type 3 picks the
    candidate with the higher frequency. Type 2, where only one word is
    visible, calls it original when it is more frequent than the average
    dictionary word. Ties fall to a seeded coin.
    """
    rng = random.Random(rng_seed)
    if trial.trial_type == 1:
        return dictionary.sample(rng)
    if trial.trial_type == 3:
        fa, fb = (dictionary.freq(c) for c in trial.candidates)
        if fa > fb:
            return 0
        if fb > fa:
            return 1
        return 0 if rng.random() < 0.5 else 1
    mean_freq = 1.0 / len(dictionary)
    shown = dictionary.freq(trial.shown_word)
    if shown > mean_freq:
        return 0
    if shown < mean_freq:
        return 1
    return 0 if rng.random() < 0.5 else 1


class NgramModel:
    """Word n-gram model with add-lambda smoothing.

    Default order 2: desk-scale corpora are too small for trigrams. A word
    candidate in a gap is scored in both directions, as the product of its
    probability given the left context and the probability of the right
    neighbor given the candidate. The two factors are treated as independent,
    which is an approximation.
    """

    BOS = "<s>"
    EOS = "</s>"

    def __init__(self, order: int = 2, lam: float = 0.01):
        if order < 2:
            raise ValueError("order must be >= 2")
        self.order = order
        self.lam = lam
        self.counts: dict[tuple[str, ...], Counter] = {}
        self.vocab: set[str] = set()
        self.trained_fragment_ids: set[str] = set()

    def train(self, fragments: list[Fragment], alphabet: Alphabet) -> "NgramModel":
        for fragment in fragments:
            tokens = [
                fold(t.surface)
                for t in extract_words(fragment.text, alphabet, min_len=1)
            ]
            self.vocab.update(tokens)
            padded = [self.BOS] * (self.order - 1) + tokens + [self.EOS]
            for i in range(len(padded) - self.order + 1):
                context = tuple(padded[i : i + self.order - 1])
                nxt = padded[i + self.order - 1]
                self.counts.setdefault(context, Counter())[nxt] += 1
            self.trained_fragment_ids.add(fragment.id)
        return self

    @property
    def is_empty(self) -> bool:
        return not self.counts

    def prob(self, word: str, context: tuple[str, ...]) -> float:
        table = self.counts.get(context)
        v = len(self.vocab) + 1  # +1 for EOS
        seen = table[word] if table else 0
        total = sum(table.values()) if table else 0
        denominator = total + self.lam * v
        if denominator == 0:
            return 0.0
        return (seen + self.lam) / denominator

    def gap_score(self, candidate: str, left: list[str], right: list[str]) -> float:
        """Bidirectional score for a candidate filling the gap."""
        left_context = ([self.BOS] * (self.order - 1) + left)[-(self.order - 1):]
        forward = self.prob(candidate, tuple(left_context))
        with_candidate = (left_context + [candidate])[-(self.order - 1):]
        next_word = right[0] if right else self.EOS
        backward = self.prob(next_word, tuple(with_candidate))
        return forward * backward


def _gap_contexts(trial: Trial, fragment: Fragment, alphabet: Alphabet) -> tuple[list[str], list[str]]:
    """Tokenized context on each side of the target span.

    The scoring function never sees the hidden word: the span is blanked
    before tokenization.
    """
    t = trial.target
    left_text = fragment.text[: t.start]
    right_text = fragment.text[t.end:]
    left = [fold(w.surface) for w in extract_words(left_text, alphabet, min_len=1)]
    right = [fold(w.surface) for w in extract_words(right_text, alphabet, min_len=1)]
    return left, right


def ngram_guess(
    trial: Trial,
    fragment: Fragment,
    model: NgramModel,
    alphabet: Alphabet,
    rng_seed: int,
    *,
    candidates: list[str] | None = None,
    top_k: int = 50,
) -> str | int:
    """Guess from bidirectional n-gram scores over the gap context.

    Type 1 scores every candidate, keeps the top_k, renormalizes and samples.
    Type 3 picks the higher-scoring candidate. Type 2 calls the shown word
    original when it outscores the median candidate in the same gap.
    Refuses to run on a fragment the model was trained on.
    """
    if model.is_empty:
        raise UntrainedModel("n-gram model has no counts")
    if fragment.id in model.trained_fragment_ids:
        raise TrainingLeakage(f"model was trained on fragment {fragment.id}")
    rng = random.Random(rng_seed)
    left, right = _gap_contexts(trial, fragment, alphabet)
    pool = candidates if candidates is not None else sorted(model.vocab)

    if trial.trial_type == 1:
        scored = [(model.gap_score(w, left, right), w) for w in pool]
        positive = [(s, w) for s, w in scored if s > 0]
        if not positive:
            return pool[rng.randrange(len(pool))]
        # stable order: score desc, then word, so equal seeds replay exactly
        positive.sort(key=lambda sw: (-sw[0], sw[1]))
        top = positive[:top_k]
        return weighted_choice(rng, [w for _, w in top], [s for s, _ in top])

    if trial.trial_type == 3:
        a, b = trial.candidates
        sa = model.gap_score(a, left, right)
        sb = model.gap_score(b, left, right)
        if sa > sb:
            return 0
        if sb > sa:
            return 1
        return 0 if rng.random() < 0.5 else 1

    shown_score = model.gap_score(trial.shown_word, left, right)
    all_scores = sorted(model.gap_score(w, left, right) for w in pool)
    median = all_scores[len(all_scores) // 2]
    if shown_score > median:
        return 0
    if shown_score < median:
        return 1
    return 0 if rng.random() < 0.5 else 1


def planted_probability_guess(
    trial: Trial,
    curve,
    rng_seed: int,
    alphabet: Alphabet,
) -> str | int:
    """Correct with probability curve(length_chars), else deterministically wrong.

    The synthetic subject for validating the analysis pipeline: its per-length
    success rate is known by construction.
    """
    p = float(curve(trial.target.length_chars))
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"curve value out of [0, 1]: {p}")
    rng = random.Random(rng_seed)
    if rng.random() < p:
        return oracle_guess(trial)
    if trial.trial_type == 1:
        return _wrong_word(trial.target.surface, alphabet)
    return 1 - int(oracle_guess(trial))


def _wrong_word(surface: str, alphabet: Alphabet) -> str:
    """Same length as the target, guaranteed different in the last letter."""
    folded = fold(surface)
    for letter in sorted(alphabet.letters):
        lower = fold(letter)
        if lower != folded[-1]:
            return folded[:-1] + lower
    raise ValueError("alphabet has a single letter")
