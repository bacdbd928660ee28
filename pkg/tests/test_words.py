"""Normal-form word arithmetic: reduction, parsing, and enumeration."""

import pytest
from hypothesis import given, strategies as st

from splitqm.groups import CyclicGroup, FiniteTableGroup, IntegerGroup
from splitqm.words import (
    A,
    B,
    IDENTITY,
    Splitting,
    Word,
    WordSyntaxError,
    conjugate,
    cyclically_reduce,
    enumerate_words,
    format_word,
    invert,
    multiply,
    parse_word,
    power,
    random_word,
    reduce,
    validate_word,
)

KLEIN_MUL = [
    [0, 1, 2, 3],
    [1, 0, 3, 2],
    [2, 3, 0, 1],
    [3, 2, 1, 0],
]

ZXZ = Splitting(IntegerGroup(), IntegerGroup())
C5XC6 = Splitting(CyclicGroup(5), CyclicGroup(6))
MIXED = Splitting(
    FiniteTableGroup.from_mul(4, lambda x, y: KLEIN_MUL[x][y]),
    CyclicGroup(3),
)
SPLITTINGS = [ZXZ, C5XC6, MIXED]


def _letter_values(s, side, draw):
    factor = s.factor(side)
    if factor.is_finite:
        return draw(st.integers(0, factor.size - 1))
    return draw(st.integers(-4, 4))


@st.composite
def splitting_and_words(draw, count=1, max_len=10):
    s = draw(st.sampled_from(SPLITTINGS))
    words = []
    for _ in range(count):
        raw = []
        for _ in range(draw(st.integers(0, max_len))):
            side = draw(st.sampled_from([A, B]))
            raw.append((side, _letter_values(s, side, draw)))
        words.append(reduce(s, raw))
    return (s, *words)


def test_reduce_merges_adjacent_letters_and_drops_identities():
    assert reduce(ZXZ, [(A, 1), (A, -1), (B, 2)]) == Word(((B, 2),))
    assert reduce(ZXZ, [(A, 1), (B, 0), (A, 2)]) == Word(((A, 3),))
    assert reduce(ZXZ, [(A, 0), (B, 0)]) == IDENTITY
    assert reduce(C5XC6, [(A, 2), (A, 3), (B, 4)]) == Word(((B, 4),))


@given(splitting_and_words())
def test_reduce_output_is_reduced_and_stable(case):
    s, g = case
    validate_word(s, g)
    assert reduce(s, g.letters) == g


@given(splitting_and_words())
def test_inverse_cancels(case):
    s, g = case
    assert multiply(s, g, invert(s, g)) == IDENTITY
    assert multiply(s, invert(s, g), g) == IDENTITY
    assert invert(s, invert(s, g)) == g


@given(splitting_and_words(count=3, max_len=6))
def test_multiplication_is_associative(case):
    s, g, h, k = case
    assert multiply(s, multiply(s, g, h), k) == multiply(s, g, multiply(s, h, k))


@given(splitting_and_words(max_len=5), st.integers(-6, 6))
def test_power_matches_repeated_multiplication(case, n):
    s, g = case
    base = g if n >= 0 else invert(s, g)
    expected = IDENTITY
    for _ in range(abs(n)):
        expected = multiply(s, expected, base)
    assert power(s, g, n) == expected


@given(splitting_and_words(count=2, max_len=6))
def test_conjugation_definition(case):
    s, g, h = case
    expected = multiply(s, multiply(s, h, g), invert(s, h))
    assert conjugate(s, h, g) == expected


@given(splitting_and_words())
def test_cyclic_reduction_reassembles_the_word(case):
    s, g = case
    core, conjugator = cyclically_reduce(s, g)
    assert conjugate(s, conjugator, core) == g
    assert len(core) <= len(g)
    if len(core) >= 2:
        assert core.letters[0][0] != core.letters[-1][0]


def test_cyclic_reduction_strips_conjugating_letters():
    g = parse_word(ZXZ, "a b a^-1")
    core, conjugator = cyclically_reduce(ZXZ, g)
    assert core == Word(((B, 1),))
    assert conjugator == Word(((A, 1),))


@given(splitting_and_words())
def test_format_parse_round_trip(case):
    s, g = case
    assert parse_word(s, format_word(s, g)) == g


def test_parse_concrete_words():
    g = parse_word(ZXZ, "a b^-2 a^3 b")
    assert g.letters == ((A, 1), (B, -2), (A, 3), (B, 1))
    assert parse_word(ZXZ, "") == IDENTITY
    assert parse_word(ZXZ, "   ") == IDENTITY
    assert parse_word(ZXZ, "a^0 b") == Word(((B, 1),))
    assert parse_word(C5XC6, "a^7") == Word(((A, 2),))
    # Every non-identity Klein element is an involution, so squares vanish.
    assert parse_word(MIXED, "A[1]^2") == IDENTITY
    assert parse_word(MIXED, "A[1] b^2") == Word(((A, 1), (B, 2)))


def test_format_uses_index_tokens_for_table_factors():
    g = Word(((A, 3), (B, 2)))
    assert format_word(MIXED, g) == "A[3] b^2"
    assert format_word(ZXZ, Word(((A, 1), (B, -2)))) == "a b^-2"


@pytest.mark.parametrize(
    "splitting, text, position",
    [
        (ZXZ, "q", 0),
        (ZXZ, "a q", 2),
        (ZXZ, "a b A[1]", 4),
        (MIXED, "a b", 0),
        (MIXED, "A[9]", 0),
        (ZXZ, "a^x", 0),
    ],
)
def test_parse_errors_carry_positions(splitting, text, position):
    with pytest.raises(WordSyntaxError, match=rf"\(at position {position}\)$") as info:
        parse_word(splitting, text)
    assert info.value.position == position


def test_random_words_are_deterministic_and_bounded():
    for s in SPLITTINGS:
        assert random_word(s, 5, 3, 7) == random_word(s, 5, 3, 7)
        for seed in range(50):
            g = random_word(s, 5, 3, seed)
            validate_word(s, g)
            assert len(g) <= 5
            for side, x in g:
                if not s.factor(side).is_finite:
                    assert 1 <= abs(x) <= 3


def test_random_word_rejects_empty_ranges():
    with pytest.raises(ValueError):
        random_word(ZXZ, 0, 3, 1)
    with pytest.raises(ValueError):
        random_word(ZXZ, 5, 0, 1)


@pytest.mark.parametrize(
    "splitting, per_side, expected",
    [
        # Letter choices per side: 2*bound for integers, size-1 otherwise.
        (ZXZ, (4, 4), 1 + 8 + 32),
        (C5XC6, (4, 5), 1 + 9 + 40),
        (MIXED, (3, 2), 1 + 5 + 12),
    ],
)
def test_enumerate_words_is_exhaustive_and_duplicate_free(splitting, per_side, expected):
    words = list(enumerate_words(splitting, 2, 2))
    assert len(words) == expected
    assert len(set(words)) == expected
    for g in words:
        validate_word(splitting, g)
        assert len(g) <= 2
    na, nb = per_side
    two_letter = sum(1 for g in words if len(g) == 2)
    assert two_letter == 2 * na * nb
