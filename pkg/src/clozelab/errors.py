"""Exception types shared across the package."""


class ClozelabError(Exception):
    """Base class for all domain errors."""


class ZeroSyllables(ClozelabError):
    """Word contains no vowel letters; it cannot be bucketed by syllables."""


class NoEligibleWords(ClozelabError):
    """Fragment contains no word meeting the minimum-length rule."""


class NoDecoyAvailable(ClozelabError):
    """Replacement pool is empty for the target and no fallback is configured."""


class MalformedResponse(ClozelabError):
    """Empty free-text answer, or a choice index outside {0, 1}."""


class AllMissed(ClozelabError):
    """Every trial in the group was answered incorrectly; -log2(0) is undefined."""


class InsufficientBuckets(ClozelabError):
    """Fewer than two length buckets qualify for a linear fit."""


class NotNormalized(ClozelabError):
    """Probabilities do not sum to 1 within tolerance."""


class UntrainedModel(ClozelabError):
    """The n-gram model has no counts."""


class TrainingLeakage(ClozelabError):
    """The trial's fragment was part of the model's training text."""


class MalformedFrontMatter(ClozelabError):
    """Corpus file is missing or corrupts the title/author/kind header."""


class ValidationFailure(ClozelabError):
    """Event payload or request body does not match its schema."""


class StorageFailure(ClozelabError):
    """Event log is unreadable or corrupt beyond the torn-tail allowance."""


class UnknownSession(ClozelabError):
    """No session with that id."""


class UnknownTrial(ClozelabError):
    """No trial with that id, or the trial belongs to another session."""


class AlreadyAnswered(ClozelabError):
    """A guess was already recorded for this trial."""


class CorpusEmpty(ClozelabError):
    """No ingested fragment has an eligible target word."""


class UnknownSubjectKind(ClozelabError):
    """Subject descriptor names no runnable guesser."""


class SchemaMismatch(ClozelabError):
    """Analysis CSV is missing a contract column."""


class IoFailure(ClozelabError):
    """File could not be read or written."""
