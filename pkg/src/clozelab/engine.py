"""Game orchestration: sessions, trial generation, scoring, persistence.

All mutation flows through the event log; the in-memory state here is the
fold of those events, so a fresh engine opened on the same log reproduces
the same state. Randomness is drawn from substreams derived from the
session seed and the per-session trial counter, which makes whole runs
replayable from one root seed.
"""

from __future__ import annotations

import hashlib
import json
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .corpus import (
    Alphabet, Fragment, RUSSIAN, WordToken,
    DEFAULT_MIN_WORD_LEN, extract_words,
)
from .errors import (
    AlreadyAnswered, CorpusEmpty, NoDecoyAvailable,
    UnknownSession, UnknownTrial, ValidationFailure,
)
from .rng import derive_seed, substream
from .store import Event, EventLog, replay_file
from .trials import (
    GuessRecord, ReplacementPool, Trial,
    make_trial, normalize_response, render_trial, score_guess, select_target,
)

DEFAULT_TYPE_MIX = (1 / 3, 1 / 3, 1 / 3)


@dataclass
class Config:
    alphabet: Alphabet = RUSSIAN
    min_word_len: int = DEFAULT_MIN_WORD_LEN
    type_mix: tuple[float, float, float] = DEFAULT_TYPE_MIX
    seed: int = 0
    z: float = 1.0
    fit_range_chars: tuple[int, int] = (5, 14)
    fit_range_syllables: tuple[int, int] = (1, 5)
    min_bucket_trials: int = 30
    decoy_fallback: list[str] | None = None

    def fit_range(self, unit: str) -> tuple[int, int]:
        return self.fit_range_chars if unit == "chars" else self.fit_range_syllables


@dataclass
class Session:
    session_id: str
    subject_id: str
    subject_kind: str
    created_at: str
    seed: int
    type_mix: tuple[float, float, float] = DEFAULT_TYPE_MIX
    trials_served: int = 0
    fragment_ids: tuple[str, ...] | None = None  # optional restriction, e.g. held-out split


# --- event payload (de)serialization ---------------------------------------

def fragment_to_dict(f: Fragment) -> dict:
    return {"id": f.id, "text": f.text, "kind": f.kind, "title": f.title, "author": f.author}


def fragment_from_dict(d: dict) -> Fragment:
    return Fragment(id=d["id"], text=d["text"], kind=d["kind"],
                    title=d.get("title", ""), author=d.get("author", ""))


def token_to_dict(t: WordToken) -> dict:
    return {
        "fragment_id": t.fragment_id, "start": t.start, "end": t.end,
        "surface": t.surface, "length_chars": t.length_chars,
        "length_syllables": t.length_syllables,
    }


def token_from_dict(d: dict) -> WordToken:
    return WordToken(**d)


def trial_to_dict(t: Trial, session_id: str) -> dict:
    return {
        "id": t.id, "session_id": session_id, "fragment_id": t.fragment_id,
        "trial_type": t.trial_type, "target": token_to_dict(t.target),
        "decoy": t.decoy, "shows_original": t.shows_original,
        "shown_original_first": t.shown_original_first, "created_at": t.created_at,
    }


def trial_from_dict(d: dict) -> tuple[Trial, str]:
    trial = Trial(
        id=d["id"], fragment_id=d["fragment_id"], target=token_from_dict(d["target"]),
        trial_type=d["trial_type"], decoy=d.get("decoy"),
        shows_original=d.get("shows_original"),
        shown_original_first=d.get("shown_original_first"),
        created_at=d.get("created_at", ""),
    )
    return trial, d["session_id"]


def record_to_dict(r: GuessRecord) -> dict:
    return {
        "trial_id": r.trial_id, "subject_id": r.subject_id,
        "response": r.response, "correct": r.correct, "timestamp": r.timestamp,
    }


def record_from_dict(d: dict) -> GuessRecord:
    return GuessRecord(
        trial_id=d["trial_id"], subject_id=d["subject_id"],
        response=d["response"], correct=d["correct"], timestamp=d.get("timestamp", ""),
    )


def session_to_dict(s: Session) -> dict:
    return {
        "session_id": s.session_id, "subject_id": s.subject_id,
        "subject_kind": s.subject_kind, "created_at": s.created_at,
        "seed": s.seed, "type_mix": list(s.type_mix),
        "fragment_ids": list(s.fragment_ids) if s.fragment_ids is not None else None,
    }


def session_from_dict(d: dict) -> Session:
    return Session(
        session_id=d["session_id"], subject_id=d["subject_id"],
        subject_kind=d["subject_kind"], created_at=d.get("created_at", ""),
        seed=d["seed"], type_mix=tuple(d["type_mix"]),
        fragment_ids=tuple(d["fragment_ids"]) if d.get("fragment_ids") is not None else None,
    )


# --- state fold --------------------------------------------------------------

@dataclass
class GameState:
    """Aggregate state as the fold of the event log."""

    fragments: dict[str, Fragment] = field(default_factory=dict)
    sessions: dict[str, Session] = field(default_factory=dict)
    trials: dict[str, Trial] = field(default_factory=dict)
    trial_sessions: dict[str, str] = field(default_factory=dict)
    records: list[GuessRecord] = field(default_factory=list)
    answered: set[str] = field(default_factory=set)
    pool_entries: dict[tuple[str, int, int], set[str]] = field(default_factory=dict)

    def apply(self, event: Event) -> None:
        kind, payload = event.kind, event.payload
        if kind == "fragment_added":
            fragment = fragment_from_dict(payload["fragment"])
            self.fragments[fragment.id] = fragment
        elif kind == "session_created":
            session = session_from_dict(payload["session"])
            self.sessions[session.session_id] = session
        elif kind == "trial_created":
            trial, session_id = trial_from_dict(payload["trial"])
            self.trials[trial.id] = trial
            self.trial_sessions[trial.id] = session_id
            if session_id in self.sessions:
                self.sessions[session_id].trials_served += 1
        elif kind == "guess_recorded":
            record = record_from_dict(payload["record"])
            self.records.append(record)
            self.answered.add(record.trial_id)
        elif kind == "pool_updated":
            key = (payload["fragment_id"], payload["start"], payload["end"])
            self.pool_entries.setdefault(key, set()).add(payload["added"])

    @classmethod
    def from_log(cls, path: str | Path) -> "GameState":
        state = cls()
        for event in replay_file(path):
            state.apply(event)
        return state

    def joined_pairs(
        self, kind: str = "all", trial_type: int | None = None,
    ) -> list[tuple[GuessRecord, Trial]]:
        """Guess records joined to their trials, filtered by fragment kind and type."""
        pairs = []
        for record in self.records:
            trial = self.trials.get(record.trial_id)
            if trial is None:
                continue
            if trial_type is not None and trial.trial_type != trial_type:
                continue
            if kind != "all":
                fragment = self.fragments.get(trial.fragment_id)
                if fragment is None or fragment.kind != kind:
                    continue
            pairs.append((record, trial))
        return pairs

    def state_hash(self) -> str:
        """Digest of the aggregate state, timestamps excluded."""
        canon = {
            "fragments": sorted(
                json.dumps(fragment_to_dict(f), sort_keys=True, ensure_ascii=False)
                for f in self.fragments.values()
            ),
            "trials": sorted(
                json.dumps(
                    {**trial_to_dict(t, self.trial_sessions.get(t.id, "")), "created_at": ""},
                    sort_keys=True, ensure_ascii=False,
                )
                for t in self.trials.values()
            ),
            "records": [
                json.dumps({**record_to_dict(r), "timestamp": ""},
                           sort_keys=True, ensure_ascii=False)
                for r in self.records
            ],
            "pool": sorted(
                (list(key), sorted(words)) for key, words in self.pool_entries.items()
            ),
        }
        blob = json.dumps(canon, sort_keys=True, ensure_ascii=False).encode("utf-8")
        return hashlib.sha256(blob).hexdigest()


# --- engine ------------------------------------------------------------------

class GameEngine:
    """Single-writer game core behind the HTTP service and the CLI."""

    def __init__(
        self,
        log: EventLog,
        config: Config | None = None,
        clock: Callable[[], str] | None = None,
    ):
        self.config = config or Config()
        self.log = log
        if clock is not None:
            self.log.clock = clock
        self.state = GameState()
        self.pool = ReplacementPool(self.config.alphabet, self.config.min_word_len)
        self._tokens: dict[str, list[WordToken]] = {}
        # writer lock: concurrent request handlers serialize all mutation
        self.lock = threading.RLock()
        for event in log.replay():
            self._absorb(event)

    @classmethod
    def open(
        cls, path: str | Path, config: Config | None = None,
        clock: Callable[[], str] | None = None,
    ) -> "GameEngine":
        return cls(EventLog(path), config=config, clock=clock)

    def close(self) -> None:
        self.log.close()

    # -- event plumbing

    def _absorb(self, event: Event) -> None:
        self.state.apply(event)
        if event.kind == "fragment_added":
            fragment = fragment_from_dict(event.payload["fragment"])
            self._tokens[fragment.id] = extract_words(
                fragment.text, self.config.alphabet, self.config.min_word_len,
                fragment_id=fragment.id,
            )
        elif event.kind == "pool_updated":
            p = event.payload
            key = (p["fragment_id"], p["start"], p["end"])
            self.pool.entries.setdefault(key, set()).add(p["added"])

    def _emit(self, kind: str, payload: dict) -> Event:
        event = self.log.append(kind, payload)
        self._absorb(event)
        return event

    # -- corpus

    def ingest_fragment(self, fragment: Fragment) -> bool:
        """Add one fragment; False when its content hash is already present."""
        with self.lock:
            if fragment.id in self.state.fragments:
                return False
            self._emit("fragment_added", {"fragment": fragment_to_dict(fragment)})
            return True

    def eligible_fragment_ids(self, restriction: tuple[str, ...] | None = None) -> list[str]:
        ids = sorted(
            fid for fid, toks in self._tokens.items()
            if toks and (restriction is None or fid in restriction)
        )
        return ids

    # -- sessions and trials

    def create_session(
        self,
        subject_kind: str,
        subject_id: str | None = None,
        seed: int | None = None,
        type_mix: tuple[float, float, float] | None = None,
        fragment_ids: tuple[str, ...] | None = None,
    ) -> Session:
        with self.lock:
            number = len(self.state.sessions) + 1
            mix = _normalized_mix(type_mix or self.config.type_mix)
            session = Session(
                session_id=f"s{number}",
                subject_id=subject_id or f"anon-{number}",
                subject_kind=subject_kind,
                created_at=self.log.clock(),
                seed=seed if seed is not None else derive_seed(self.config.seed, "session", number),
                type_mix=mix,
                fragment_ids=fragment_ids,
            )
            self._emit("session_created", {"session": session_to_dict(session)})
            return self.state.sessions[session.session_id]

    def next_trial(self, session_id: str, forced_type: int | None = None) -> Trial:
        """Generate, persist and return one new trial for the session.

        The fragment is drawn uniformly among fragments with eligible words
        and the type from the session mix. When no decoy exists yet for a
        type-2/3 draw and no fallback list is configured, the trial degrades
        to type 1, which is how the pool bootstraps from a cold start.
        """
        with self.lock:
            return self._next_trial(session_id, forced_type)

    def _next_trial(self, session_id: str, forced_type: int | None) -> Trial:
        session = self.state.sessions.get(session_id)
        if session is None:
            raise UnknownSession(session_id)
        fragment_ids = self.eligible_fragment_ids(session.fragment_ids)
        if not fragment_ids:
            raise CorpusEmpty("no ingested fragment has an eligible word")
        k = session.trials_served
        rng = substream(session.seed, "trial", k)
        fragment = self.state.fragments[fragment_ids[rng.randrange(len(fragment_ids))]]
        trial_type = forced_type if forced_type is not None else _draw_type(rng, session.type_mix)
        target = select_target(
            fragment, self._tokens[fragment.id],
            derive_seed(session.seed, "trial", k, "target"),
        )
        if (
            trial_type in (2, 3)
            and not self.pool.get(target)
            and not self.config.decoy_fallback
        ):
            # no decoy could be drawn: serve type 1 instead of a type-2
            # population biased toward originals
            trial_type = 1
        trial_id = f"t{len(self.state.trials) + 1:06d}"
        try:
            trial = make_trial(
                fragment, target, trial_type, self.pool,
                derive_seed(session.seed, "trial", k, "make"),
                decoy_fallback=self.config.decoy_fallback,
                trial_id=trial_id, created_at=self.log.clock(),
            )
        except NoDecoyAvailable:
            trial = make_trial(
                fragment, target, 1, self.pool,
                derive_seed(session.seed, "trial", k, "make"),
                trial_id=trial_id, created_at=self.log.clock(),
            )
        self._emit("trial_created", {"trial": trial_to_dict(trial, session_id)})
        return trial

    def render(self, trial: Trial) -> str:
        return render_trial(trial, self.state.fragments[trial.fragment_id])

    def submit_guess(
        self, session_id: str, trial_id: str, response: str | int,
        subject_id: str | None = None,
    ) -> dict:
        """Score, persist, update the pool; reveal the answer in the verdict."""
        with self.lock:
            return self._submit_guess(session_id, trial_id, response, subject_id)

    def _submit_guess(
        self, session_id: str, trial_id: str, response: str | int,
        subject_id: str | None,
    ) -> dict:
        session = self.state.sessions.get(session_id)
        if session is None:
            raise UnknownSession(session_id)
        trial = self.state.trials.get(trial_id)
        if trial is None or self.state.trial_sessions.get(trial_id) != session_id:
            raise UnknownTrial(trial_id)
        if trial_id in self.state.answered:
            raise AlreadyAnswered(trial_id)
        record = score_guess(
            trial, response,
            subject_id=subject_id or session.subject_id,
            timestamp=self.log.clock(),
        )
        self._emit("guess_recorded", {"record": record_to_dict(record)})
        if trial.trial_type == 1 and not record.correct and isinstance(response, str):
            word = normalize_response(response)
            if word and self.pool.add(trial.target, word):
                key = trial.target.key()
                self._emit("pool_updated", {
                    "fragment_id": key[0], "start": key[1], "end": key[2], "added": word,
                })
        return {"correct": record.correct, "answer": trial.target.surface}


def _normalized_mix(mix: tuple[float, float, float]) -> tuple[float, float, float]:
    if len(mix) != 3 or any(w < 0 for w in mix):
        raise ValidationFailure("type_mix needs three non-negative weights")
    total = sum(mix)
    if total <= 0:
        raise ValidationFailure("type_mix weights sum to zero")
    return tuple(w / total for w in mix)


def _draw_type(rng, mix: tuple[float, float, float]) -> int:
    u = rng.random()
    if u < mix[0]:
        return 1
    if u < mix[0] + mix[1]:
        return 2
    return 3
