#!/usr/bin/env python3
"""The three trial types, rendered and scored by hand.

Type 1 hides a word behind a constant-width mask (no length clue).
Type 2 highlights a word that may or may not be the original.
Type 3 offers two candidates for a blank.
Wrong type-1 answers become the decoys that feed types 2 and 3.
"""

from pathlib import Path

from clozelab import (
    RUSSIAN, ReplacementPool, extract_words, load_fragment,
    make_trial, render_trial, score_guess, select_target, update_pool,
)

fragment = load_fragment(Path(__file__).parent / "sample_corpus" / "pushkin_winter.txt")
words = extract_words(fragment.text, RUSSIAN, 5, fragment_id=fragment.id)
pool = ReplacementPool(RUSSIAN, min_len=5)

target = select_target(fragment, words, rng_seed=4)
print(f"target word: {target.surface!r} ({target.length_chars} letters)\n")

print("--- type 1: fill the blank ---")
t1 = make_trial(fragment, target, 1, pool, rng_seed=0, trial_id="demo-1")
print(render_trial(t1, fragment))
for answer in ("звезда", target.surface.upper()):
    record = score_guess(t1, answer)
    print(f"guess {answer!r}: {'correct' if record.correct else 'wrong'}")
    update_pool(pool, record, t1)
print(f"pool now holds {len(pool)} decoy(s): {sorted(pool.get(target))}\n")

print("--- type 2: original or replaced? ---")
t2 = make_trial(fragment, target, 2, pool, rng_seed=1, trial_id="demo-2")
print(render_trial(t2, fragment))
verdict = score_guess(t2, 0)  # claim "original"
print(f"claiming it is the original: {'correct' if verdict.correct else 'wrong'}\n")

print("--- type 3: which one is the original? ---")
t3 = make_trial(fragment, target, 3, pool, rng_seed=2, trial_id="demo-3")
print(render_trial(t3, fragment))
for choice in (0, 1):
    print(f"picking candidate {choice + 1}: "
          f"{'correct' if score_guess(t3, choice).correct else 'wrong'}")

print("\nsame seed, same trial:",
      make_trial(fragment, target, 3, pool, rng_seed=2, trial_id="demo-3") == t3)
