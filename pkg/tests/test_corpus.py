import pytest
from hypothesis import given, strategies as st

from clozelab.corpus import (
    ENGLISH, RUSSIAN, Alphabet, count_syllables, extract_words,
    length_distribution, parse_fragment, fragment_id_for,
)
from clozelab.errors import MalformedFrontMatter, ZeroSyllables


def scan_oracle(text, alphabet, min_len):
    """Independent extraction oracle: groupby-style run splitting."""
    runs = []
    current = []
    for i, ch in enumerate(text):
        if ch in alphabet.letters:
            current.append((i, ch))
        else:
            if current:
                runs.append(current)
            current = []
    if current:
        runs.append(current)
    out = []
    for run in runs:
        if len(run) >= min_len:
            start = run[0][0]
            word = "".join(ch for _, ch in run)
            out.append((start, start + len(run), word))
    return out


class TestExtractWords:
    def test_empty_input(self):
        assert extract_words("", RUSSIAN, 5) == []

    def test_min_len_rule(self):
        tokens = extract_words("кот и собака", RUSSIAN, 5)
        assert [t.surface for t in tokens] == ["собака"]
        assert tokens[0].length_chars == 6
        assert tokens[0].start == 6 and tokens[0].end == 12

    def test_matches_independent_scanner(self):
        # ~200 chars mixing letters, digits, punctuation and both scripts
        text = (
            "Мороз и солнце; день чудесный! Ещё ты дремлешь, друг прелестный -- "
            "пора, красавица, проснись: открой сомкнуты негой взоры, 123 навстречу "
            "северной Авроры, звездою севера явись! (конец) word англ."
        )
        tokens = extract_words(text, RUSSIAN, 5)
        expected = scan_oracle(text, RUSSIAN, 5)
        assert [(t.start, t.end, t.surface) for t in tokens] == expected

    def test_offsets_slice_back(self):
        text = "тишина, ветер и ещё тишина"
        for tok in extract_words(text, RUSSIAN, 5):
            assert text[tok.start:tok.end] == tok.surface

    def test_boundaries_are_non_letters(self):
        text = "у дороги стояла мельница"
        for tok in extract_words(text, RUSSIAN, 5):
            if tok.start > 0:
                assert text[tok.start - 1] not in RUSSIAN.letters
            if tok.end < len(text):
                assert text[tok.end] not in RUSSIAN.letters

    def test_hyphen_splits(self):
        tokens = extract_words("что-нибудь", RUSSIAN, 5)
        assert [t.surface for t in tokens] == ["нибудь"]

    @given(st.text(alphabet="абвгде .,-xyz123", max_size=80))
    def test_gap_surface_reconstruction(self, text):
        tokens = extract_words(text, RUSSIAN, 2)
        rebuilt = []
        cursor = 0
        for tok in tokens:
            rebuilt.append(text[cursor:tok.start])
            rebuilt.append(tok.surface)
            cursor = tok.end
        rebuilt.append(text[cursor:])
        assert "".join(rebuilt) == text

    @given(st.text(alphabet="абвгдеё -on", max_size=80))
    def test_all_letters_and_syllable_bound(self, text):
        for tok in extract_words(text, RUSSIAN, 3):
            assert all(ch in RUSSIAN.letters for ch in tok.surface)
            if tok.length_syllables is not None:
                assert 1 <= tok.length_syllables <= tok.length_chars


class TestSyllables:
    def test_three_vowels(self):
        assert count_syllables("молоко", RUSSIAN) == 3

    def test_all_vowels(self):
        alpha = Alphabet(frozenset("ab"), frozenset("a"))
        assert count_syllables("aaaaa", alpha) == 5

    def test_no_vowels_errors(self):
        alpha = Alphabet(frozenset("abcdfg"), frozenset("a"))
        with pytest.raises(ZeroSyllables):
            count_syllables("bcdfg", alpha)

    def test_english_preset(self):
        assert count_syllables("winter", ENGLISH) == 2


class TestLengthDistribution:
    def test_empty(self):
        dist = length_distribution([], "chars")
        assert dist.counts == {} and dist.total_types == 0

    def test_distinct_types(self):
        toks = extract_words("собака собака молоко", RUSSIAN, 5)
        dist = length_distribution(toks, "chars")
        assert dist.counts == {6: 2}
        assert dist.total_types == 2

    def test_case_folded_types(self):
        toks = extract_words("Ветер ветер ВЕТЕР", RUSSIAN, 5)
        dist = length_distribution(toks, "chars")
        assert dist.total_types == 1

    def test_sum_equals_total(self):
        toks = extract_words("первый второй третий слова ещё длиннее", RUSSIAN, 5)
        dist = length_distribution(toks, "chars")
        assert sum(dist.counts.values()) == dist.total_types

    def test_syllable_axis(self):
        toks = extract_words("молоко собака", RUSSIAN, 5)
        dist = length_distribution(toks, "syllables")
        assert dist.counts == {3: 2}


class TestFrontMatter:
    GOOD = "title: Зимнее утро\nauthor: Пушкин\nkind: poetry\n\nМороз и солнце\n"

    def test_parse(self):
        frag = parse_fragment(self.GOOD, source="x.txt")
        assert frag.kind == "poetry"
        assert frag.title == "Зимнее утро"
        assert frag.text == "Мороз и солнце"

    def test_id_is_content_hash(self):
        a = parse_fragment(self.GOOD)
        b = parse_fragment(self.GOOD)
        assert a.id == b.id == fragment_id_for(a.title, a.author, a.kind, a.text)

    @pytest.mark.parametrize("raw,fragment_of_message", [
        ("author: x\nkind: prose\n\nтело\n", "title"),
        ("title: x\nauthor: y\nkind: poetry\nno blank line", "blank"),
        ("title: x\nauthor: y\nkind: drama\n\nтело\n", "kind"),
        ("title: x\nauthor: y\nkind: prose\n\n\n", "empty"),
    ])
    def test_malformed(self, raw, fragment_of_message):
        with pytest.raises(MalformedFrontMatter) as err:
            parse_fragment(raw, source="bad.txt")
        assert "bad.txt" in str(err.value)

    def test_alphabet_validation(self):
        with pytest.raises(ValueError):
            Alphabet(frozenset("abc"), frozenset("x"))
