"""clozelab: measure how predictable words are in context.

Generates cloze trials of three kinds over a text corpus, collects guesses
from algorithmic subjects or live players over HTTP, and computes
unpredictability and entropy statistics as a function of word length.
"""

from .corpus import (
    ALPHABETS, Alphabet, ENGLISH, Fragment, LengthDistribution, RUSSIAN,
    WordToken, count_syllables, extract_words, length_distribution,
    load_fragment, parse_fragment,
)
from .engine import Config, GameEngine, GameState, Session
from .stats import (
    GroupStats, LinearFit, PerWordStats, binomial_ci, bpc_to_bpw,
    entropy_mean_log, ergodic_sequence_probability, group_by_length,
    linear_fit, per_word_stats, unpredictability, unpredictability_mean_rate,
    word_entropy_from_letter_entropies, zipf_word_entropy,
)
from .store import Event, EventLog
from .subjects import (
    FrequencyDictionary, NgramModel, SubjectProfile, frequency_guess,
    ngram_guess, oracle_guess, planted_probability_guess,
)
from .trials import (
    GuessRecord, MASK, ReplacementPool, Trial, make_trial, render_trial,
    score_guess, select_target, update_pool,
)

__version__ = "0.1.0"
