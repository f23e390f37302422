#!/usr/bin/env python3
"""Walk through corpus ingestion: fragments, eligible words, length axes.

Loads the bundled sample corpus, applies the 5-letter eligibility rule,
and prints the distribution of distinct word types over both length axes.
"""

from pathlib import Path

from clozelab import RUSSIAN, extract_words, length_distribution, load_fragment

corpus_dir = Path(__file__).parent / "sample_corpus"

fragments = [load_fragment(p) for p in sorted(corpus_dir.glob("*.txt"))]
print(f"loaded {len(fragments)} fragments "
      f"({sum(f.kind == 'poetry' for f in fragments)} poetry, "
      f"{sum(f.kind == 'prose' for f in fragments)} prose)\n")

all_tokens = []
for fragment in fragments:
    tokens = extract_words(fragment.text, RUSSIAN, min_len=5, fragment_id=fragment.id)
    all_tokens.extend(tokens)
    print(f"{fragment.title!r} ({fragment.kind}): {len(tokens)} eligible words")
    sample = ", ".join(t.surface for t in tokens[:6])
    print(f"  first few: {sample}")

print("\neligible = maximal run of Cyrillic letters, 5 letters or longer,")
print("bounded by non-letters on both sides\n")

for unit in ("chars", "syllables"):
    dist = length_distribution(all_tokens, unit)
    print(f"distinct word types by length in {unit} "
          f"(total {dist.total_types}):")
    for length in sorted(dist.counts):
        bar = "#" * dist.counts[length]
        print(f"  {length:2d} {bar} {dist.counts[length]}")
    print()

token = all_tokens[0]
print(f"a token remembers where it lives: {token.surface!r} at "
      f"[{token.start}:{token.end}) in fragment {token.fragment_id}, "
      f"{token.length_chars} letters / {token.length_syllables} syllables")
