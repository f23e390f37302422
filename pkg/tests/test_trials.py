import random
from collections import Counter

import pytest

from clozelab.corpus import RUSSIAN, Fragment, extract_words, fold
from clozelab.errors import MalformedResponse, NoDecoyAvailable, NoEligibleWords
from clozelab.trials import (
    MASK, ReplacementPool, Trial, make_trial, normalize_response,
    render_trial, score_guess, select_target, update_pool,
)


@pytest.fixture
def frag_words():
    text = "Над рекой плыла песня и тихо гасла вдали за мостом"
    frag = Fragment(id="fx", text=text, kind="poetry", title="t", author="a")
    words = extract_words(text, RUSSIAN, 5, fragment_id="fx")
    return frag, words


def target_named(words, surface):
    return next(w for w in words if w.surface == surface)


def empty_pool():
    return ReplacementPool(RUSSIAN, 5)


class TestSelectTarget:
    def test_forced_choice(self, frag_words):
        frag, words = frag_words
        only = [words[0]]
        for seed in (0, 1, 99):
            assert select_target(frag, only, seed) is only[0]

    def test_empty_errors(self, frag_words):
        frag, _ = frag_words
        with pytest.raises(NoEligibleWords):
            select_target(frag, [], 1)

    def test_uniform_over_ten_words(self):
        text = " и ".join(f"слово{ch}" for ch in "абвгдежзик")
        frag = Fragment(id="fy", text=text, kind="prose", title="t", author="a")
        words = extract_words(text, RUSSIAN, 5, fragment_id="fy")
        assert len(words) == 10
        counts = Counter(
            select_target(frag, words, seed).surface for seed in range(10_000)
        )
        # 99% band for Binomial(10^4, 1/10) is about 1000 +- 77; allow
        # a generous +-150
        for surface, n in counts.items():
            assert abs(n - 1000) <= 150, (surface, n)

    def test_same_seed_same_choice(self, frag_words):
        frag, words = frag_words
        assert select_target(frag, words, 42) == select_target(frag, words, 42)


class TestMakeTrial:
    def test_type1_no_decoy(self, frag_words):
        frag, words = frag_words
        trial = make_trial(frag, words[0], 1, empty_pool(), 5)
        assert trial.decoy is None
        assert trial.shows_original is None

    def test_type3_hand_trace(self, frag_words):
        frag, words = frag_words
        target = target_named(words, "песня")
        pool = empty_pool()
        pool.add(target, "ветер")
        seed = 2024
        trial = make_trial(frag, target, 3, pool, seed)
        # replay the documented draw order: decoy draw, then order coin
        rng = random.Random(seed)
        entry = sorted(pool.get(target))
        expected_decoy = entry[rng.randrange(len(entry))]
        expected_first = rng.random() < 0.5
        assert trial.decoy == expected_decoy == "ветер"
        assert trial.shown_original_first is expected_first
        assert trial.trial_type == 3

    def test_type2_hand_trace(self, frag_words):
        frag, words = frag_words
        target = target_named(words, "песня")
        pool = empty_pool()
        pool.add(target, "ветер")
        for seed in range(8):
            trial = make_trial(frag, target, 2, pool, seed)
            rng = random.Random(seed)
            expected_original = rng.random() < 0.5
            assert trial.shows_original is expected_original
            if expected_original:
                assert trial.decoy is None
            else:
                assert trial.decoy == "ветер"

    def test_no_decoy_available(self, frag_words):
        frag, words = frag_words
        # seed 0 puts the type-2 coin on the replacement side
        assert random.Random(0).random() >= 0.5
        with pytest.raises(NoDecoyAvailable):
            make_trial(frag, words[0], 2, empty_pool(), 0)
        with pytest.raises(NoDecoyAvailable):
            make_trial(frag, words[0], 3, empty_pool(), 0)

    def test_fallback_dictionary(self, frag_words):
        frag, words = frag_words
        trial = make_trial(
            frag, words[0], 3, empty_pool(), 1, decoy_fallback=["заря", "туман"],
        )
        assert trial.decoy in ("заря", "туман")

    def test_fallback_never_equals_target(self, frag_words):
        frag, words = frag_words
        target = words[0]
        fallback = [target.surface.upper(), "туман"]
        for seed in range(20):
            trial = make_trial(frag, target, 3, empty_pool(), seed,
                               decoy_fallback=fallback)
            assert fold(trial.decoy) != fold(target.surface)

    def test_type3_order_is_fair(self, frag_words):
        frag, words = frag_words
        target = target_named(words, "песня")
        pool = empty_pool()
        pool.add(target, "ветер")
        n = 4000
        firsts = sum(
            make_trial(frag, target, 3, pool, seed).shown_original_first
            for seed in range(n)
        )
        # 3 sigma band around n/2 for a fair coin
        assert abs(firsts - n / 2) <= 3 * (n * 0.25) ** 0.5

    def test_stream_reproducible(self, frag_words):
        frag, words = frag_words
        pool = empty_pool()
        pool.add(words[0], "ветер")

        def stream():
            return [
                make_trial(frag, words[i % len(words)], t, pool, 100 + i,
                           decoy_fallback=["туман"])
                for i, t in enumerate([1, 2, 3, 1, 3, 2, 1])
            ]

        assert stream() == stream()


class TestRender:
    def test_mask_constant_width(self):
        # same context, 5-letter vs 12-letter target: byte-identical output
        short = "в лесу шумела сосна тихо"
        long = "в лесу шумела перестройкаа тихо"
        out = []
        for text, word in ((short, "сосна"), (long, "перестройкаа")):
            frag = Fragment(id="fz", text=text, kind="prose", title="t", author="a")
            words = extract_words(text, RUSSIAN, 5, fragment_id="fz")
            tok = next(w for w in words if w.surface == word)
            out.append(render_trial(make_trial(frag, tok, 1, empty_pool(), 0), frag))
        assert out[0] == out[1]
        assert MASK in out[0]

    def test_type1_hides_target(self, frag_words):
        frag, words = frag_words
        target = target_named(words, "песня")
        rendered = render_trial(make_trial(frag, target, 1, empty_pool(), 0), frag)
        assert "песня" not in rendered
        assert rendered == frag.text.replace("песня", MASK)

    def test_type2_highlight(self, frag_words):
        frag, words = frag_words
        target = target_named(words, "песня")
        pool = empty_pool()
        pool.add(target, "ветер")
        shown_original = next(
            make_trial(frag, target, 2, pool, s) for s in range(10)
            if random.Random(s).random() < 0.5
        )
        rendered = render_trial(shown_original, frag)
        assert "[[песня]]" in rendered
        assert rendered.replace("[[", "").replace("]]", "") == frag.text

    def test_type3_both_candidates_once(self, frag_words):
        frag, words = frag_words
        target = target_named(words, "гасла")
        pool = empty_pool()
        pool.add(target, "жилаб")
        trial = make_trial(frag, target, 3, pool, 9)
        rendered = render_trial(trial, frag)
        assert rendered.count("гасла") == 1
        assert rendered.count("жилаб") == 1
        assert MASK in rendered


class TestScoreGuess:
    def test_case_fold_correct(self, frag_words):
        frag, words = frag_words
        trial = make_trial(frag, target_named(words, "песня"), 1, empty_pool(), 0)
        assert score_guess(trial, "ПЕСНЯ").correct is True
        assert score_guess(trial, "  песня  ").correct is True
        assert score_guess(trial, "«песня»").correct is True

    def test_wrong_word(self, frag_words):
        frag, words = frag_words
        trial = make_trial(frag, target_named(words, "песня"), 1, empty_pool(), 0)
        assert score_guess(trial, "ветер").correct is False

    def test_empty_answer_malformed(self, frag_words):
        frag, words = frag_words
        trial = make_trial(frag, words[0], 1, empty_pool(), 0)
        for bad in ("", "   ", "..."):
            with pytest.raises(MalformedResponse):
                score_guess(trial, bad)

    def test_type3_order_bookkeeping(self, frag_words):
        frag, words = frag_words
        target = target_named(words, "песня")
        pool = empty_pool()
        pool.add(target, "ветер")
        seed = next(s for s in range(40)
                    if not make_trial(frag, target, 3, pool, s).shown_original_first)
        trial = make_trial(frag, target, 3, pool, seed)
        assert trial.shown_original_first is False
        assert score_guess(trial, 1).correct is True
        assert score_guess(trial, 0).correct is False

    def test_type2_choice_semantics(self, frag_words):
        frag, words = frag_words
        target = target_named(words, "песня")
        pool = empty_pool()
        pool.add(target, "ветер")
        for seed in range(10):
            trial = make_trial(frag, target, 2, pool, seed)
            # choice 0 claims "original"
            assert score_guess(trial, 0).correct is trial.shows_original

    def test_choice_out_of_range(self, frag_words):
        frag, words = frag_words
        target = target_named(words, "песня")
        pool = empty_pool()
        pool.add(target, "ветер")
        trial = make_trial(frag, target, 3, pool, 0)
        for bad in (-1, 2, True):
            with pytest.raises(MalformedResponse):
                score_guess(trial, bad)


class TestPool:
    def test_correct_guess_leaves_pool(self, frag_words):
        frag, words = frag_words
        target = target_named(words, "песня")
        pool = empty_pool()
        trial = make_trial(frag, target, 1, pool, 0)
        update_pool(pool, score_guess(trial, "песня"), trial)
        assert len(pool) == 0

    def test_incorrect_guess_added(self, frag_words):
        frag, words = frag_words
        target = target_named(words, "песня")
        pool = empty_pool()
        trial = make_trial(frag, target, 1, pool, 0)
        update_pool(pool, score_guess(trial, "Зимний"), trial)
        assert pool.get(target) == {"зимний"}

    @pytest.mark.parametrize("response", [
        " песня", "ПЕСНЯ", "песня.", "«Песня»", "\tпесня\n",
    ])
    def test_normalized_target_variants_excluded(self, frag_words, response):
        # wrong under exact match is impossible here: these all fold to the
        # target, so they score correct and must never reach the pool
        frag, words = frag_words
        target = target_named(words, "песня")
        pool = empty_pool()
        trial = make_trial(frag, target, 1, pool, 0)
        record = score_guess(trial, response)
        assert record.correct is True
        update_pool(pool, record, trial)
        assert len(pool) == 0

    def test_non_word_answers_rejected(self, frag_words):
        frag, words = frag_words
        target = target_named(words, "песня")
        pool = empty_pool()
        trial = make_trial(frag, target, 1, pool, 0)
        for bad in ("два слова", "word", "коро", "пес ня"):
            update_pool(pool, score_guess(trial, bad), trial)
        assert len(pool) == 0

    def test_entries_never_equal_target(self, frag_words):
        frag, words = frag_words
        target = target_named(words, "песня")
        pool = empty_pool()
        for word in ("ветер", "песня", "ПЕСНЯ", "заряд"):
            pool.add(target, word)
        assert fold(target.surface) not in pool.get(target)
        assert pool.get(target) == {"ветер", "заряд"}

    def test_normalize_response(self):
        assert normalize_response(" «Слово». ") == "слово"
        assert normalize_response("\tСЛОВО\n") == "слово"
