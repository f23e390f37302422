import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    """One visible PASS/FAIL line per acceptance criterion."""
    outcome = yield
    report = outcome.get_result()
    if report.when == "call" and item.module.__name__ == "test_acceptance":
        verdict = "PASS" if report.passed else "FAIL"
        print(f"\nACCEPTANCE {verdict}: {item.name}", flush=True)

from clozelab.corpus import RUSSIAN, Fragment, extract_words
from clozelab.engine import Config, GameEngine
from clozelab.store import EventLog

from helpers import build_corpus


@pytest.fixture
def fixed_clock():
    return lambda: "2026-01-01T00:00:00+00:00"


@pytest.fixture
def corpus_fragments():
    return build_corpus()


@pytest.fixture
def engine(tmp_path, fixed_clock, corpus_fragments):
    """Engine over the synthetic corpus with a frozen clock."""
    eng = GameEngine.open(tmp_path / "events.ndjson", Config(seed=7), clock=fixed_clock)
    for fragment in corpus_fragments:
        eng.ingest_fragment(fragment)
    yield eng
    eng.close()


@pytest.fixture
def one_fragment():
    text = "Скажи мне правду про ветер над рекой"
    frag = Fragment(id="f1", text=text, kind="poetry", title="t", author="a")
    words = extract_words(text, RUSSIAN, 5, fragment_id="f1")
    return frag, words
