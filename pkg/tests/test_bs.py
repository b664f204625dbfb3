import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st_

from fpw.bs import (
    ST,
    BSParams,
    BS23,
    SyllableWord,
    apply_f,
    bs_equal,
    bs_is_trivial,
    bs_presentation,
    britton_reduce,
    britton_reduce_counted,
    doubling_map,
    f_preimage_witnesses,
    from_syllables,
    kernel_stream,
    to_syllables,
    w_family,
)
from fpw.words import Alphabet, parse_word, substitute

from conftest import w

W2_TEXT = "s^-2 t s^2 t^-1 s^-1 t s^-1 t^-1 s^2 t s^-1 t^-1 s"


# ---------------------------------------------------------------- syllables


def test_to_syllables_examples():
    sw = to_syllables(w("t^3 s t^-1 s^2"))
    assert sw.t_runs == (3, -1, 0, 0)
    assert sw.s_signs == (1, 1, 1)
    assert to_syllables(w("")) == SyllableWord((0,), ())
    assert to_syllables(w("t^-2")) == SyllableWord((-2,), ())
    assert to_syllables(w("s")) == SyllableWord((0, 0), (1,))


def test_syllable_word_validation():
    with pytest.raises(ValueError):
        SyllableWord((0,), (1,))  # runs/signs length mismatch
    with pytest.raises(ValueError):
        SyllableWord((0, 0), (2,))


def test_syllable_word_normalizes_free_cancellation():
    # s s^-1 with nothing between collapses on construction
    sw = SyllableWord((1, 0, 2), (1, -1))
    assert sw == SyllableWord((3,), ())


def test_syllable_format():
    assert to_syllables(w("t^2 s^-1 t")).format() == "t^2 s^-1 t^1"
    assert to_syllables(w("")).format() == "t^0"


def test_syllable_roundtrip_examples():
    for text in ["", "t^5", "s t s^-1", "s^-1 t^2 s t^-3", W2_TEXT]:
        word = w(text)
        assert from_syllables(to_syllables(word)) == word


@settings(max_examples=200, deadline=None)
@given(st_.lists(st_.sampled_from(["s", "s^-1", "t", "t^-1"]), max_size=25))
def test_syllable_roundtrip_random(parts):
    word = w(" ".join(parts))
    assert from_syllables(to_syllables(word)) == word


def test_syllables_reject_foreign_alphabet():
    with pytest.raises(ValueError):
        to_syllables(parse_word(Alphabet.of("x"), "x"))


# ---------------------------------------------------------------- Britton reduction


def test_britton_reduce_kills_the_relator():
    assert britton_reduce(BS23, w("s^-1 t^2 s t^-3")).is_identity


def test_britton_reduce_leaves_reduced_words_alone():
    word = w("s^-1 t s")
    reduced, pinches = britton_reduce_counted(BS23, word)
    assert from_syllables(reduced) == word
    assert pinches == 0


def test_britton_reduce_single_pinch():
    reduced, pinches = britton_reduce_counted(BS23, w("s t^3 s^-1"))
    assert from_syllables(reduced) == w("t^2")
    assert pinches == 1


def test_britton_reduce_zero_power_pinch():
    # opposite-sign s letters with nothing between them count as a pinch
    reduced, pinches = britton_reduce_counted(BS23, w("s t t^-1 s^-1 t"))
    assert from_syllables(reduced) == w("t")


def test_britton_reduce_nested():
    word = w("s^2 t^9 s^-2")
    reduced, pinches = britton_reduce_counted(BS23, word)
    assert from_syllables(reduced) == w("t^4")
    assert pinches == 2


def test_britton_reduce_two_disjoint_sites():
    reduced, pinches = britton_reduce_counted(BS23, w("s^-1 t^2 s t s^-1 t^2 s"))
    assert from_syllables(reduced) == w("t^7")
    assert pinches == 2


def test_pinch_count_accounts_for_all_lost_s_letters():
    rng = random.Random(23)
    letters = ["s", "s^-1", "t", "t^-1"]
    for _ in range(150):
        word = w(" ".join(rng.choice(letters) for _ in range(rng.randint(0, 20))))
        before = sum(1 for let in word.letters if let.gen.name == "s")
        reduced, pinches = britton_reduce_counted(BS23, word)
        assert (before - reduced.s_count) % 2 == 0
        assert pinches == (before - reduced.s_count) // 2


def test_britton_reduce_rejects_foreign_alphabet():
    with pytest.raises(ValueError):
        britton_reduce(BS23, parse_word(Alphabet.of("x"), "x"))


# ---------------------------------------------------------------- triviality and equality


def test_bs_is_trivial_examples():
    assert bs_is_trivial(BS23, w(""))
    assert bs_is_trivial(BS23, w("s^-1 t^2 s t^-3"))
    assert bs_is_trivial(BS23, w("t^3 s^-1 t^-2 s"))
    assert not bs_is_trivial(BS23, w("s"))
    assert not bs_is_trivial(BS23, w("t"))
    assert not bs_is_trivial(BS23, w("t^6"))
    assert not bs_is_trivial(BS23, w_family(1))


def test_bs_equal_examples():
    assert bs_equal(BS23, w("s^-1 t^2 s"), w("t^3"))
    assert not bs_equal(BS23, w("t"), w("t^2"))
    assert bs_equal(BS23, w("s t s^-1"), w("s t s^-1"))


@settings(max_examples=60, deadline=None)
@given(st_.lists(st_.sampled_from(["s", "s^-1", "t", "t^-1"]), max_size=12))
def test_bs_equal_reflexive(parts):
    word = w(" ".join(parts))
    assert bs_equal(BS23, word, word)


def test_bs_equal_is_a_congruence():
    # if u = v then cu = cv and uc = vc
    rng = random.Random(5)
    letters = ["s", "s^-1", "t", "t^-1"]
    pairs = [
        (w("s^-1 t^2 s"), w("t^3")),
        (w("s t^3 s^-1"), w("t^2")),
        (w(""), w("s^-1 t^2 s t^-3")),
    ]
    for u, v in pairs:
        for _ in range(20):
            c = w(" ".join(rng.choice(letters) for _ in range(rng.randint(0, 8))))
            assert bs_equal(BS23, c * u, c * v)
            assert bs_equal(BS23, u * c, v * c)


def test_general_params_accepted():
    p25 = BSParams(2, 5)
    assert bs_is_trivial(p25, w("s^-1 t^2 s t^-5"))
    assert not bs_is_trivial(p25, w("s^-1 t^2 s t^-3"))


def test_bs_params_validation():
    with pytest.raises(ValueError):
        BSParams(0, 3)
    with pytest.raises(ValueError):
        BSParams(2, 0)


def test_bs_presentation():
    assert bs_presentation(BS23).format() == "< s, t | s^-1 t^2 s t^-3 >"
    assert bs_presentation(BSParams(1, 2)).format() == "< s, t | s^-1 t s t^-2 >"


# ---------------------------------------------------------------- the doubling endomorphism


def test_doubling_map_images():
    f = doubling_map()
    assert f.image(ST.gen("s")) == w("s")
    assert f.image(ST.gen("t")) == w("t t")


def test_apply_f_examples():
    assert apply_f(w("t"), 1) == w("t^2")
    assert apply_f(w("t"), 3) == w("t^8")
    assert apply_f(w("s t s^-1"), 1) == w("s t^2 s^-1")
    word = w("s^-1 t s t^-1")
    assert apply_f(word, 0) == word


def test_apply_f_power_agrees_with_iterated_substitution():
    f = doubling_map()
    word = w_family(2)
    assert apply_f(word, 2) == substitute(substitute(word, f), f)


def test_apply_f_rejects_negative_iterate():
    with pytest.raises(ValueError):
        apply_f(w("t"), -1)


def test_doubling_map_is_surjective_on_generators():
    # s has the obvious preimage; t is hit by s^-1 t s t^-1 (a pinch shows it)
    f = doubling_map()
    pre_t = substitute(w("s^-1 t s t^-1"), f)
    assert pre_t == w("s^-1 t^2 s t^-2")
    assert bs_equal(BS23, pre_t, w("t"))


# ---------------------------------------------------------------- the w-family


def test_w_family_base_cases():
    assert w_family(0).is_identity
    assert w_family(1) == w("s^-1 t s t s^-1 t^-1 s t^-1")


def test_w_family_second_member_frozen():
    assert w_family(2) == w(W2_TEXT)
    assert len(w_family(2).letters) == 16


def test_w_family_recursion_is_substitution():
    sub = f_preimage_witnesses()
    for i in [1, 2, 3]:
        assert w_family(i + 1) == substitute(w_family(i), sub)


def test_w_family_raw_length_bookkeeping():
    # Substituting t -> s^-1 t s t^-1 turns each t-letter into four letters
    # (two of them t-letters) and keeps s-letters, so without any free
    # reduction the letter counts follow L' = L + 3T, T' = 2T from (8, 4).
    # The stored words are reduced, so only the base case is a real word;
    # the raw sequence 8, 20, 44, 92 is bookkeeping about the construction.
    s1 = sum(1 for let in w_family(1).letters if let.gen.name == "s")
    t1 = len(w_family(1).letters) - s1
    assert (s1, t1) == (4, 4)
    raw = [(8, 4)]
    for _ in range(3):
        length, t = raw[-1]
        raw.append((length + 3 * t, 2 * t))
    assert [length for length, _ in raw] == [8, 20, 44, 92]
    # after free reduction the stored words are shorter
    assert len(w_family(2).letters) == 16
    assert len(w_family(3).letters) < 44


def test_w_family_rejects_negative():
    with pytest.raises(ValueError):
        w_family(-1)


# ---------------------------------------------------------------- kernel truth table


@pytest.mark.parametrize("i", range(5))
@pytest.mark.parametrize("j", range(5))
def test_kernel_truth_table(i, j):
    # w_j dies under the i-fold doubling map exactly when j <= i
    word = apply_f(w_family(j), i)
    assert bs_is_trivial(BS23, word) == (j <= i)


def test_kernel_stream_level_zero():
    first = list(itertools.islice(kernel_stream(0), 40))
    assert first[0].is_identity
    for u in first:
        assert bs_is_trivial(BS23, u)
    assert len(set(first)) == len(first)


def test_kernel_stream_level_zero_contains_relator():
    relator = w("s^-1 t^2 s t^-3")
    assert any(u == relator for u in itertools.islice(kernel_stream(0), 30000))


def test_kernel_stream_level_one_sound():
    for u in itertools.islice(kernel_stream(1), 100):
        assert bs_is_trivial(BS23, apply_f(u, 1))


def test_kernel_streams_are_nested():
    # anything killed by f is killed by f^2
    level1 = list(itertools.islice(kernel_stream(1), 40))
    level2 = list(itertools.islice(kernel_stream(2), 80))
    assert set(level1) <= set(level2)


def test_w2_survives_one_application():
    assert not bs_is_trivial(BS23, apply_f(w_family(2), 1))


# ---------------------------------------------------------------- preimage witnesses


def test_preimage_witness_images():
    pre = f_preimage_witnesses()
    assert pre.image(ST.gen("s")) == w("s")
    assert pre.image(ST.gen("t")) == w("s^-1 t s t^-1")


def test_preimage_witness_section_property():
    # applying f to each witness recovers the generator in the group
    f = doubling_map()
    pre = f_preimage_witnesses()
    for name in ["s", "t"]:
        lifted = substitute(pre.image(ST.gen(name)), f)
        assert bs_equal(BS23, lifted, ST.gen_word(name))


def test_preimage_witness_composes():
    # pre^i followed by f^i lands back on the original generator
    pre = f_preimage_witnesses()
    for name in ["s", "t"]:
        word = ST.gen_word(name)
        lifted = word
        for i in range(1, 4):
            lifted = substitute(lifted, pre)
            assert bs_equal(BS23, apply_f(lifted, i), word)
