"""Corpus ingestion and word extraction.

A fragment is one text excerpt tagged ``poetry`` or ``prose``. A word is a
maximal run of alphabet letters; only runs of at least ``min_len`` letters
are eligible as targets. Word length is measured in letters and, for the
syllable axis, as the number of vowel letters.
"""

from __future__ import annotations

import hashlib
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path

from .errors import MalformedFrontMatter, ZeroSyllables

DEFAULT_MIN_WORD_LEN = 5

KINDS = ("poetry", "prose")


@dataclass(frozen=True)
class Alphabet:
    """Letters that form words, and the vowel subset used for syllables."""

    letters: frozenset[str]
    vowels: frozenset[str]

    def __post_init__(self) -> None:
        if not self.letters or not self.vowels:
            raise ValueError("alphabet letters and vowels must be non-empty")
        if not self.vowels <= self.letters:
            raise ValueError("vowels must be a subset of letters")

    @classmethod
    def from_lower(cls, letters: str, vowels: str) -> "Alphabet":
        """Build from lowercase strings, adding the uppercase forms."""
        both = letters + letters.upper()
        vow = vowels + vowels.upper()
        return cls(frozenset(both), frozenset(vow))


RUSSIAN = Alphabet.from_lower(
    "абвгдеёжзийклмнопрстуфхцчшщъыьэюя", "аеёиоуыэюя"
)
ENGLISH = Alphabet.from_lower("abcdefghijklmnopqrstuvwxyz", "aeiouy")

ALPHABETS = {"russian": RUSSIAN, "english": ENGLISH}


@dataclass(frozen=True)
class Fragment:
    id: str
    text: str
    kind: str
    title: str = ""
    author: str = ""

    def __post_init__(self) -> None:
        if not self.text:
            raise ValueError("fragment text is empty")
        if self.kind not in KINDS:
            raise ValueError(f"fragment kind must be one of {KINDS}, got {self.kind!r}")


@dataclass(frozen=True)
class WordToken:
    """One extracted word with its position inside the fragment text.

    ``length_syllables`` is None for vowel-less words, which are excluded
    from syllable-axis analyses.
    """

    fragment_id: str
    start: int
    end: int
    surface: str
    length_chars: int
    length_syllables: int | None

    def key(self) -> tuple[str, int, int]:
        return (self.fragment_id, self.start, self.end)


@dataclass
class LengthDistribution:
    unit: str  # "chars" or "syllables"
    counts: dict[int, int] = field(default_factory=dict)
    total_types: int = 0


def fold(text: str) -> str:
    """Single case fold used for every comparison and distinct-type count."""
    return text.casefold()


def normalize_text(text: str) -> str:
    """NFC-normalize and strip outer whitespace."""
    return unicodedata.normalize("NFC", text).strip()


def count_syllables(word: str, alphabet: Alphabet) -> int:
    """Number of vowel letters in the word.

    Raises ZeroSyllables when there are none; the caller must keep such
    words off the syllable axis.
    """
    n = sum(1 for ch in word if ch in alphabet.vowels)
    if n == 0:
        raise ZeroSyllables(f"no vowels in {word!r}")
    return n


def extract_words(
    text: str, alphabet: Alphabet, min_len: int = DEFAULT_MIN_WORD_LEN,
    fragment_id: str = "",
) -> list[WordToken]:
    """Maximal letter runs of at least ``min_len`` letters, in document order.

    Runs are delimited by any non-letter, so hyphenated compounds split
    into their parts. Offsets are half-open into ``text``.
    """
    if min_len < 1:
        raise ValueError("min_len must be >= 1")
    tokens: list[WordToken] = []
    letters = alphabet.letters
    i, n = 0, len(text)
    while i < n:
        if text[i] not in letters:
            i += 1
            continue
        j = i
        while j < n and text[j] in letters:
            j += 1
        if j - i >= min_len:
            surface = text[i:j]
            syl = sum(1 for ch in surface if ch in alphabet.vowels)
            tokens.append(WordToken(
                fragment_id=fragment_id,
                start=i,
                end=j,
                surface=surface,
                length_chars=j - i,
                length_syllables=syl if syl >= 1 else None,
            ))
        i = j
    return tokens


def length_distribution(words: list[WordToken], unit: str) -> LengthDistribution:
    """Distinct case-folded word types per length.

    For ``unit="syllables"``, vowel-less words are skipped.
    """
    if unit not in ("chars", "syllables"):
        raise ValueError(f"unit must be 'chars' or 'syllables', got {unit!r}")
    seen: dict[str, int] = {}
    for tok in words:
        length = tok.length_chars if unit == "chars" else tok.length_syllables
        if length is None:
            continue
        seen.setdefault(fold(tok.surface), length)
    dist = LengthDistribution(unit=unit)
    for length in seen.values():
        dist.counts[length] = dist.counts.get(length, 0) + 1
    dist.total_types = len(seen)
    return dist


def fragment_id_for(title: str, author: str, kind: str, text: str) -> str:
    """Content hash used as the fragment id; re-ingesting is a no-op."""
    h = hashlib.sha256()
    for part in (title, author, kind, text):
        h.update(part.encode("utf-8"))
        h.update(b"\x00")
    return h.hexdigest()[:16]


def parse_fragment(raw: str, source: str = "<string>") -> Fragment:
    """Parse one corpus file: title/author/kind header, blank line, body."""
    lines = raw.split("\n")
    header: dict[str, str] = {}
    body_start = None
    for idx, line in enumerate(lines):
        if line.strip() == "":
            body_start = idx + 1
            break
        if ":" not in line:
            raise MalformedFrontMatter(f"{source}: header line without ':': {line!r}")
        key, _, value = line.partition(":")
        header[key.strip().lower()] = value.strip()
    if body_start is None:
        raise MalformedFrontMatter(f"{source}: no blank line after header")
    missing = [k for k in ("title", "author", "kind") if k not in header]
    if missing:
        raise MalformedFrontMatter(f"{source}: missing header fields {missing}")
    kind = header["kind"].lower()
    if kind not in KINDS:
        raise MalformedFrontMatter(f"{source}: kind must be poetry or prose, got {kind!r}")
    text = normalize_text("\n".join(lines[body_start:]))
    if not text:
        raise MalformedFrontMatter(f"{source}: empty body")
    return Fragment(
        id=fragment_id_for(header["title"], header["author"], kind, text),
        text=text,
        kind=kind,
        title=header["title"],
        author=header["author"],
    )


def load_fragment(path: str | Path) -> Fragment:
    p = Path(path)
    return parse_fragment(p.read_text(encoding="utf-8"), source=str(p))
