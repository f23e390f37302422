"""Simulation runs: an algorithmic subject plays n trials against the engine.

Stands in for live data collection. A run is fully determined by
(corpus, subject spec, n_trials, seed); the report and the event log
replay identically for the same inputs.
"""

from __future__ import annotations

from .corpus import fold
from .engine import GameEngine
from .errors import CorpusEmpty, UnknownSubjectKind
from .rng import derive_seed
from .subjects import (
    FrequencyDictionary, NgramModel,
    frequency_guess, ngram_guess, oracle_guess, planted_probability_guess,
)
from .trials import Trial


def parse_subject_spec(spec: str) -> tuple[str, str]:
    """Split 'kind' or 'kind:arg' into (kind, arg)."""
    kind, _, arg = spec.partition(":")
    kind = kind.strip().lower()
    if kind == "human":
        raise UnknownSubjectKind("human subjects play via the web UI, not simulation")
    if kind not in ("oracle", "uniform", "frequency", "ngram", "planted"):
        raise UnknownSubjectKind(f"unknown subject kind {kind!r}")
    return kind, arg.strip()


def _ngram_params(arg: str) -> dict:
    params = {"order": 2, "lam": 0.01, "top_k": 50}
    if arg:
        for item in arg.split(","):
            key, _, value = item.partition("=")
            key = key.strip()
            if key not in params:
                raise UnknownSubjectKind(f"unknown ngram parameter {key!r}")
            params[key] = int(value) if key in ("order", "top_k") else float(value)
    return params


def run_simulation(
    engine: GameEngine,
    subject_spec: str,
    n_trials: int,
    seed: int,
    trial_type: int | None = None,
) -> dict:
    """Create one session, play n_trials, return a run report."""
    kind, arg = parse_subject_spec(subject_spec)
    alphabet = engine.config.alphabet

    fragment_restriction = None
    answer = None
    if kind == "oracle":
        def answer(trial: Trial, k: int):
            return oracle_guess(trial)
    elif kind == "uniform":
        vocabulary = sorted({
            fold(t.surface) for toks in engine._tokens.values() for t in toks
        })
        if not vocabulary:
            raise CorpusEmpty("no eligible words to build a uniform dictionary from")
        dictionary = FrequencyDictionary.uniform(vocabulary)

        def answer(trial: Trial, k: int):
            return frequency_guess(trial, dictionary, derive_seed(seed, "answer", k))
    elif kind == "frequency":
        if not arg:
            raise UnknownSubjectKind("frequency subject needs a dictionary path: frequency:PATH")
        dictionary = FrequencyDictionary.load(arg)

        def answer(trial: Trial, k: int):
            return frequency_guess(trial, dictionary, derive_seed(seed, "answer", k))
    elif kind == "ngram":
        params = _ngram_params(arg)
        eligible = engine.eligible_fragment_ids()
        train_ids = eligible[0::2]
        play_ids = tuple(eligible[1::2])
        if not train_ids or not play_ids:
            raise CorpusEmpty("ngram subject needs at least two eligible fragments for a held-out split")
        model = NgramModel(order=params["order"], lam=params["lam"])
        model.train([engine.state.fragments[fid] for fid in train_ids], alphabet)
        fragment_restriction = play_ids
        top_k = params["top_k"]

        def answer(trial: Trial, k: int):
            fragment = engine.state.fragments[trial.fragment_id]
            return ngram_guess(
                trial, fragment, model, alphabet,
                derive_seed(seed, "answer", k), top_k=top_k,
            )
    elif kind == "planted":
        rate = float(arg) if arg else 0.3
        curve = lambda n: 2.0 ** (-rate * n)

        def answer(trial: Trial, k: int):
            return planted_probability_guess(
                trial, curve, derive_seed(seed, "answer", k), alphabet,
            )

    session = engine.create_session(
        kind, subject_id=f"sim-{kind}",
        seed=derive_seed(seed, "session"),
        fragment_ids=fragment_restriction,
    )
    per_type = {1: [0, 0], 2: [0, 0], 3: [0, 0]}
    for k in range(n_trials):
        trial = engine.next_trial(session.session_id, forced_type=trial_type)
        verdict = engine.submit_guess(session.session_id, trial.id, answer(trial, k))
        per_type[trial.trial_type][0] += 1
        per_type[trial.trial_type][1] += int(verdict["correct"])
    total = sum(n for n, _ in per_type.values())
    correct = sum(c for _, c in per_type.values())
    return {
        "subject": subject_spec,
        "session_id": session.session_id,
        "n_trials": total,
        "n_correct": correct,
        "p_hat": correct / total if total else None,
        "per_type": {
            t: {"n_trials": n, "n_correct": c} for t, (n, c) in per_type.items()
        },
    }
