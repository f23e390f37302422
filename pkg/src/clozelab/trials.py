"""The three trial types: generation, rendering, scoring, replacement pool.

Type 1 hides a word behind a constant-width mask. Type 2 highlights a word
that is either the original or a replacement. Type 3 shows a blank and two
candidates. Replacements come from incorrect type-1 answers for the same
target, with an optional fallback word list for cold starts.

Candidate words (type-3 candidates and the type-2 highlight) are displayed
case-folded, so capitalization never betrays which word is original.
"""

from __future__ import annotations

import random
import unicodedata
from dataclasses import dataclass

from .corpus import Alphabet, Fragment, WordToken, fold, DEFAULT_MIN_WORD_LEN
from .errors import MalformedResponse, NoDecoyAvailable, NoEligibleWords

MASK = "____"  # fixed token; its width never depends on the hidden word
HIGHLIGHT_OPEN = "[["
HIGHLIGHT_CLOSE = "]]"

TRIAL_TYPES = (1, 2, 3)


@dataclass(frozen=True)
class Trial:
    """One presentation unit.

    Field use by type:
      type 1: decoy, shows_original, shown_original_first are all None.
      type 2: shows_original set; decoy set only when the replacement is shown.
      type 3: decoy set; shown_original_first records presentation order.
    """

    id: str
    fragment_id: str
    target: WordToken
    trial_type: int
    decoy: str | None = None
    shows_original: bool | None = None
    shown_original_first: bool | None = None
    created_at: str = ""

    def __post_init__(self) -> None:
        if self.trial_type not in TRIAL_TYPES:
            raise ValueError(f"trial_type must be in {TRIAL_TYPES}")
        if self.trial_type == 1:
            if self.decoy is not None:
                raise ValueError("type-1 trial must not carry a decoy")
        elif self.trial_type == 2:
            if self.shows_original is None:
                raise ValueError("type-2 trial must record which word is shown")
            if self.shows_original != (self.decoy is None):
                raise ValueError("type-2 decoy present iff the replacement is shown")
        else:
            if self.decoy is None:
                raise ValueError("type-3 trial needs a decoy")
            if self.shown_original_first is None:
                raise ValueError("type-3 trial must record presentation order")
        if self.decoy is not None and fold(self.decoy) == fold(self.target.surface):
            raise ValueError("decoy equals the target under case folding")

    @property
    def shown_word(self) -> str:
        """The word a type-2 subject sees (case-folded)."""
        if self.trial_type != 2:
            raise ValueError("shown_word is defined for type-2 trials only")
        word = self.target.surface if self.shows_original else self.decoy
        return fold(word)

    @property
    def candidates(self) -> tuple[str, str]:
        """Type-3 candidates in presentation order (case-folded)."""
        if self.trial_type != 3:
            raise ValueError("candidates are defined for type-3 trials only")
        original = fold(self.target.surface)
        decoy = fold(self.decoy)
        return (original, decoy) if self.shown_original_first else (decoy, original)


@dataclass(frozen=True)
class GuessRecord:
    trial_id: str
    subject_id: str
    response: str | int
    correct: bool
    timestamp: str = ""


class ReplacementPool:
    """Incorrect type-1 answers, keyed by target word, reused as decoys.

    Entries are stored case-folded and never equal their target's surface
    under folding. Only letter-only answers of at least ``min_len`` letters
    are admitted.
    """

    def __init__(self, alphabet: Alphabet, min_len: int = DEFAULT_MIN_WORD_LEN):
        self.alphabet = alphabet
        self.min_len = min_len
        self.entries: dict[tuple[str, int, int], set[str]] = {}

    def get(self, target: WordToken) -> set[str]:
        return self.entries.get(target.key(), set())

    def add(self, target: WordToken, word: str) -> bool:
        """Admit one folded word for the target; False if rejected as invalid."""
        w = fold(word)
        if len(w) < self.min_len:
            return False
        if any(ch not in self.alphabet.letters for ch in w):
            return False
        if w == fold(target.surface):
            return False
        self.entries.setdefault(target.key(), set()).add(w)
        return True

    def __len__(self) -> int:
        return sum(len(s) for s in self.entries.values())


def normalize_response(response: str) -> str:
    """Trim, strip surrounding punctuation, case-fold. No stemming."""
    text = response.strip()
    while text and unicodedata.category(text[0]).startswith("P"):
        text = text[1:]
    while text and unicodedata.category(text[-1]).startswith("P"):
        text = text[:-1]
    return fold(text.strip())


def select_target(fragment: Fragment, words: list[WordToken], rng_seed: int) -> WordToken:
    """Uniform choice among the fragment's eligible words, fixed by the seed."""
    if not words:
        raise NoEligibleWords(f"fragment {fragment.id} has no eligible words")
    rng = random.Random(rng_seed)
    return words[rng.randrange(len(words))]


def _draw_decoy(
    target: WordToken,
    pool: ReplacementPool,
    rng: random.Random,
    fallback: list[str] | None,
) -> str:
    """Pool entry first (sorted for determinism), else the fallback list."""
    entry = sorted(pool.get(target))
    if entry:
        return entry[rng.randrange(len(entry))]
    if fallback:
        candidates = [w for w in fallback if fold(w) != fold(target.surface)]
        if candidates:
            return fold(candidates[rng.randrange(len(candidates))])
    raise NoDecoyAvailable(f"no replacement available for {target.surface!r}")


def make_trial(
    fragment: Fragment,
    target: WordToken,
    trial_type: int,
    pool: ReplacementPool,
    rng_seed: int,
    *,
    decoy_fallback: list[str] | None = None,
    trial_id: str = "",
    created_at: str = "",
) -> Trial:
    """Build one trial. Draw order from Random(rng_seed) is fixed:

      type 2: coin for original-vs-replacement, then (if needed) decoy draw.
      type 3: decoy draw, then coin for presentation order.

    Coins are ``rng.random() < 0.5``; draws are ``rng.randrange(len(...))``
    over the sorted pool entry or the fallback list.
    """
    rng = random.Random(rng_seed)
    decoy: str | None = None
    shows_original: bool | None = None
    shown_original_first: bool | None = None
    if trial_type == 2:
        shows_original = rng.random() < 0.5
        if not shows_original:
            decoy = _draw_decoy(target, pool, rng, decoy_fallback)
    elif trial_type == 3:
        decoy = _draw_decoy(target, pool, rng, decoy_fallback)
        shown_original_first = rng.random() < 0.5
    return Trial(
        id=trial_id,
        fragment_id=fragment.id,
        target=target,
        trial_type=trial_type,
        decoy=decoy,
        shows_original=shows_original,
        shown_original_first=shown_original_first,
        created_at=created_at,
    )


def render_trial(trial: Trial, fragment: Fragment) -> str:
    """Display text for the trial.

    Type 1 replaces the target span with MASK, so the output carries no clue
    about the hidden word's length. Type 2 wraps the shown word in highlight
    delimiters. Type 3 masks the target and appends both candidates in the
    recorded order.
    """
    text = fragment.text
    t = trial.target
    before, after = text[: t.start], text[t.end:]
    if trial.trial_type == 1:
        return before + MASK + after
    if trial.trial_type == 2:
        return before + HIGHLIGHT_OPEN + trial.shown_word + HIGHLIGHT_CLOSE + after
    first, second = trial.candidates
    return f"{before}{MASK}{after}\n\n1) {first}\n2) {second}"


def score_guess(
    trial: Trial,
    response: str | int,
    subject_id: str = "anon",
    timestamp: str = "",
) -> GuessRecord:
    """Score one response. The record is returned, never persisted here.

    Type 1 compares the normalized answer with the case-folded target.
    Types 2 and 3 take a choice index: 0/1 mean original/replaced for
    type 2 and first/second candidate for type 3.
    """
    if trial.trial_type == 1:
        if not isinstance(response, str):
            raise MalformedResponse("type-1 answer must be text")
        normalized = normalize_response(response)
        if not normalized:
            raise MalformedResponse("empty type-1 answer")
        correct = normalized == fold(trial.target.surface)
    else:
        if isinstance(response, bool) or not isinstance(response, int):
            raise MalformedResponse("choice must be an integer index")
        if response not in (0, 1):
            raise MalformedResponse(f"choice index out of range: {response}")
        if trial.trial_type == 2:
            correct = (response == 0) == trial.shows_original
        else:
            original_position = 0 if trial.shown_original_first else 1
            correct = response == original_position
    return GuessRecord(
        trial_id=trial.id,
        subject_id=subject_id,
        response=response,
        correct=correct,
        timestamp=timestamp,
    )


def update_pool(pool: ReplacementPool, record: GuessRecord, trial: Trial) -> ReplacementPool:
    """Feed an incorrect, well-formed type-1 answer into the pool.

    Correct answers, non-word answers, and answers that fold to the target
    itself leave the pool unchanged.
    """
    if trial.trial_type != 1:
        raise ValueError("pool updates come from type-1 trials only")
    if record.correct or not isinstance(record.response, str):
        return pool
    normalized = normalize_response(record.response)
    if normalized:
        pool.add(trial.target, normalized)
    return pool
