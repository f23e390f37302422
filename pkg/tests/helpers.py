"""Deterministic synthetic corpora for tests.

Words alternate consonant/vowel, so a length-L word has floor(L/2) vowel
letters, and every word in one fragment has the same letter length, which
keeps any word from being a substring of another in the same text.
"""

from __future__ import annotations

from clozelab.corpus import Fragment, fragment_id_for

CONSONANTS = "бвгджзклмнпрст"
VOWELS = "аеиоуы"
FILLERS = ("и", "но", "а", "у")  # below any sane min_len, never eligible


def make_word(length: int, index: int) -> str:
    """The index-th length-L word under mixed-radix letter encoding."""
    letters = []
    remainder = index
    for pos in range(length):
        pool = CONSONANTS if pos % 2 == 0 else VOWELS
        letters.append(pool[remainder % len(pool)])
        remainder //= len(pool)
    if remainder:
        raise ValueError(f"index {index} too large for length {length}")
    return "".join(letters)


def make_fragment(length: int, n_words: int, kind: str = "poetry",
                  salt: int = 0) -> Fragment:
    words = [make_word(length, salt * n_words + i) for i in range(n_words)]
    pieces = []
    for i, word in enumerate(words):
        pieces.append(word)
        pieces.append(FILLERS[i % len(FILLERS)])
    text = " ".join(pieces)
    title = f"fragment L{length} #{salt}"
    return Fragment(
        id=fragment_id_for(title, "test", kind, text),
        text=text, kind=kind, title=title, author="test",
    )


def build_corpus(lengths=range(5, 15), words_per_fragment: int = 10,
                 kind: str = "poetry") -> list[Fragment]:
    """One fragment per length; all eligible words in it share that length."""
    return [make_fragment(length, words_per_fragment, kind=kind) for length in lengths]
