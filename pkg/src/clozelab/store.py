"""Append-only event log: newline-delimited JSON, one event per line.

Events carry contiguous sequence numbers starting at 1 and are immutable
once written. A torn final line (a crash mid-write) is dropped on replay
and truncated away on reopen; a torn line anywhere else is corruption and
raises. All appends go through one lock so arrival order is the log order.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Iterator

from .errors import StorageFailure, ValidationFailure

SCHEMA_VERSION = 1

EVENT_KINDS = (
    "fragment_added",
    "session_created",
    "trial_created",
    "guess_recorded",
    "pool_updated",
)

# required payload keys per kind
_PAYLOAD_KEYS: dict[str, tuple[str, ...]] = {
    "fragment_added": ("fragment",),
    "session_created": ("session",),
    "trial_created": ("trial",),
    "guess_recorded": ("record",),
    "pool_updated": ("fragment_id", "start", "end", "added"),
}


def utc_now() -> str:
    return datetime.now(timezone.utc).isoformat()


@dataclass(frozen=True)
class Event:
    seq: int
    kind: str
    payload: dict
    timestamp: str


def validate_payload(kind: str, payload: dict) -> None:
    if kind not in EVENT_KINDS:
        raise ValidationFailure(f"unknown event kind {kind!r}")
    if not isinstance(payload, dict):
        raise ValidationFailure("payload must be an object")
    missing = [k for k in _PAYLOAD_KEYS[kind] if k not in payload]
    if missing:
        raise ValidationFailure(f"{kind} payload missing keys {missing}")


def _parse_line(line: str) -> Event:
    obj = json.loads(line)
    return Event(
        seq=obj["seq"], kind=obj["kind"],
        payload=obj["payload"], timestamp=obj["timestamp"],
    )


class EventLog:
    """Single-writer, many-reader JSONL log."""

    def __init__(self, path: str | Path, clock: Callable[[], str] = utc_now):
        self.path = Path(path)
        self.clock = clock
        self._lock = threading.Lock()
        self._next_seq = 1
        self._handle = None
        if self.path.exists():
            self._recover()
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._handle = open(self.path, "a", encoding="utf-8")

    def _recover(self) -> None:
        """Find the valid prefix; truncate a torn tail before appending."""
        valid_bytes = 0
        last_seq = 0
        try:
            raw = self.path.read_bytes()
        except OSError as exc:
            raise StorageFailure(str(exc)) from exc
        offset = 0
        while offset < len(raw):
            newline = raw.find(b"\n", offset)
            if newline == -1:
                break  # unterminated tail: torn write
            line = raw[offset : newline]
            try:
                event = _parse_line(line.decode("utf-8"))
            except (ValueError, KeyError, UnicodeDecodeError):
                break  # garbage tail line
            if event.seq != last_seq + 1:
                raise StorageFailure(
                    f"sequence gap: expected {last_seq + 1}, found {event.seq}"
                )
            last_seq = event.seq
            valid_bytes = newline + 1
            offset = newline + 1
        if valid_bytes < len(raw):
            with open(self.path, "r+b") as fh:
                fh.truncate(valid_bytes)
        self._next_seq = last_seq + 1

    def append(self, kind: str, payload: dict) -> Event:
        """Validate, assign the next seq, write and flush before returning."""
        validate_payload(kind, payload)
        with self._lock:
            event = Event(
                seq=self._next_seq, kind=kind,
                payload=payload, timestamp=self.clock(),
            )
            line = json.dumps(
                {
                    "schema_version": SCHEMA_VERSION,
                    "seq": event.seq,
                    "kind": event.kind,
                    "timestamp": event.timestamp,
                    "payload": event.payload,
                },
                ensure_ascii=False,
                sort_keys=True,
            )
            try:
                self._handle.write(line + "\n")
                self._handle.flush()
            except OSError as exc:
                raise StorageFailure(str(exc)) from exc
            self._next_seq += 1
            return event

    def replay(self, from_seq: int = 1) -> Iterator[Event]:
        """Events in seq order; a torn final line is treated as absent."""
        if from_seq < 1:
            raise ValueError("from_seq must be >= 1")
        with self._lock:
            self._handle.flush()
        yield from replay_file(self.path, from_seq)

    def close(self) -> None:
        if self._handle is not None:
            self._handle.close()
            self._handle = None

    def __enter__(self) -> "EventLog":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()


def replay_file(path: str | Path, from_seq: int = 1) -> Iterator[Event]:
    """Replay a log file without opening it for writing."""
    path = Path(path)
    if not path.exists():
        return
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise StorageFailure(str(exc)) from exc
    lines = raw.split(b"\n")
    terminated = len(lines) > 1 and lines[-1] == b""
    if terminated:
        lines = lines[:-1]
    last_seq = 0
    for idx, line in enumerate(lines):
        is_last = idx == len(lines) - 1
        try:
            event = _parse_line(line.decode("utf-8"))
        except (ValueError, KeyError, UnicodeDecodeError) as exc:
            if is_last:
                return  # torn tail from an interrupted append
            raise StorageFailure(f"corrupt event at line {idx + 1}") from exc
        if is_last and not terminated:
            return  # no newline: the append never completed
        if event.seq != last_seq + 1:
            raise StorageFailure(
                f"sequence gap: expected {last_seq + 1}, found {event.seq}"
            )
        last_seq = event.seq
        if event.seq >= from_seq:
            yield event
