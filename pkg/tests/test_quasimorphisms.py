"""Factor and split quasimorphisms: alternation, defects, witnesses."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from splitqm.groups import CyclicGroup, IntegerGroup
from splitqm.quasimorphisms import (
    DoublingWitness,
    FactorQM,
    SplitQM,
    cached_evaluator,
    coboundary,
    doubling_witness,
    eval_split,
    factor_defect_witness,
    gromov_norm,
    homogenize_eval,
    is_trivial,
    maximize_doubling_witness,
    rademacher,
    sampled_defect,
    split_defect,
    weight_qm,
)
from splitqm.words import A, B, Splitting, Word, conjugate, parse_word, power, random_word

ZXZ = Splitting(IntegerGroup(), IntegerGroup())
C5XC6 = Splitting(CyclicGroup(5), CyclicGroup(6))

_VALUES = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@st.composite
def integer_qms(draw, group=None):
    group = group or ZXZ.A
    finite_part = {}
    for k in draw(st.sets(st.integers(1, 4), max_size=3)):
        value = draw(_VALUES)
        if value:
            finite_part[k], finite_part[-k] = value, -value
    period = draw(st.sampled_from([None, 2, 3, 4, 5]))
    residues = ()
    if period is not None:
        residues = [Fraction(0)] * period
        for j in range(1, (period + 1) // 2):
            residues[j] = draw(_VALUES)
            residues[period - j] = -residues[j]
        residues = tuple(residues)
    return FactorQM(
        group,
        slope=draw(_VALUES) if draw(st.booleans()) else Fraction(0),
        finite_part=finite_part,
        period=period,
        residues=residues,
        sign_coeff=draw(_VALUES),
    )


@st.composite
def finite_qms(draw, group):
    values: dict[int, Fraction] = {}
    for x in group.elements():
        if group.is_identity(x) or x in values:
            continue
        inverse = group.inv(x)
        if inverse == x:
            continue
        value = draw(_VALUES)
        if value:
            values[x], values[inverse] = value, -value
    return FactorQM(group, finite_part=values)


@st.composite
def split_qms(draw):
    if draw(st.booleans()):
        return SplitQM(ZXZ, draw(integer_qms(ZXZ.A)), draw(integer_qms(ZXZ.B)))
    return SplitQM(C5XC6, draw(finite_qms(C5XC6.A)), draw(finite_qms(C5XC6.B)))


def test_alternation_is_validated():
    with pytest.raises(ValueError):
        FactorQM(ZXZ.A, finite_part={1: Fraction(1)})
    with pytest.raises(ValueError):
        FactorQM(ZXZ.A, period=3, residues=(Fraction(0), Fraction(1), Fraction(1)))
    with pytest.raises(ValueError):
        FactorQM(ZXZ.A, finite_part={0: Fraction(1)})
    with pytest.raises(ValueError):
        FactorQM(C5XC6.A, finite_part={1: Fraction(1, 2)})
    FactorQM(C5XC6.A, finite_part={1: Fraction(1, 2), 4: Fraction(-1, 2)})


def test_values_combine_all_terms():
    q = FactorQM(
        ZXZ.A,
        slope=Fraction(1, 2),
        finite_part={2: Fraction(1), -2: Fraction(-1)},
        period=3,
        residues=(Fraction(0), Fraction(1, 3), Fraction(-1, 3)),
        sign_coeff=Fraction(1, 4),
    )
    assert q(2) == 1 + 1 + Fraction(-1, 3) + Fraction(1, 4)
    assert q(-2) == -q(2)
    assert q(0) == 0


@given(integer_qms())
def test_integer_values_alternate(q):
    for x in range(1, 2 * q.defect_window() + 1):
        assert q(-x) == -q(x)


@settings(deadline=None, max_examples=20)
@given(integer_qms(), st.randoms(use_true_random=False))
def test_defect_window_is_stable_under_widening(q, rng):
    defect = q.defect()
    assert defect == q.defect(scale=4)
    reach = 4 * q.defect_window() + 1
    for _ in range(200):
        x, y = rng.randint(-reach, reach), rng.randint(-reach, reach)
        assert abs(q.coboundary(x, y)) <= defect


@given(st.one_of(integer_qms(), finite_qms(C5XC6.A), finite_qms(C5XC6.B)))
def test_defect_witness_attains_the_defect(q):
    defect, x, y = q.defect_witness()
    assert abs(q.coboundary(x, y)) == defect
    assert factor_defect_witness(q.group, q) == (defect, x, y)


@settings(deadline=None, max_examples=30)
@given(split_qms(), st.integers(0, 2**32 - 1))
def test_split_coboundary_is_bounded_by_the_factor_defects(f, seed):
    defect = split_defect(f)
    assert defect == max(f.fA.defect(), f.fB.defect())
    s = f.splitting
    for offset in range(40):
        g = random_word(s, 5, 4, seed + 2 * offset)
        h = random_word(s, 5, 4, seed + 2 * offset + 1)
        assert abs(coboundary(f, g, h)) <= defect


@settings(deadline=None, max_examples=30)
@given(split_qms(), st.integers(0, 2**32 - 1))
def test_sampled_defect_attains_the_exact_value_on_junction_pairs(f, seed):
    extras = []
    for side, q in ((A, f.fA), (B, f.fB)):
        _, x, y = factor_defect_witness(q.group, q)
        extras.append((Word(((side, x),)), Word(((side, y),))))
    sampler = lambda: Word(())  # noqa: E731 - junction pairs carry the value
    assert sampled_defect(f, sampler, 1, extra_pairs=extras) == split_defect(f)


def test_single_letter_pairs_reproduce_factor_coboundaries():
    f = weight_qm({1: Fraction(1), 2: Fraction(1, 2)})
    for x, y in [(1, 1), (2, -1), (3, 2)]:
        g, h = Word(((A, x),)), Word(((A, y),))
        assert coboundary(f, g, h) == f.fA.coboundary(x, y)


@settings(deadline=None, max_examples=40)
@given(split_qms(), st.integers(0, 2**32 - 1), st.integers(-5, 5))
def test_homogenization_is_homogeneous_and_conjugation_invariant(f, seed, n):
    s = f.splitting
    g = random_word(s, 4, 3, seed)
    h = random_word(s, 3, 3, seed + 1)
    value = homogenize_eval(f, g)
    assert homogenize_eval(f, power(s, g, n)) == n * value
    assert homogenize_eval(f, conjugate(s, h, g)) == value


@given(integer_qms(), st.integers(-6, 6))
def test_homogenization_of_a_single_letter_is_the_slope_term(q, k):
    f = SplitQM(ZXZ, q, FactorQM(ZXZ.B))
    assert homogenize_eval(f, Word(((A, k),)) if k else Word(())) == q.slope * k


def test_doubling_witness_doubles_the_factor_gap():
    f = weight_qm({1: Fraction(1)})
    witness = doubling_witness(f, 1, 1, 1, 1, side=A)
    assert isinstance(witness, DoublingWitness)
    assert witness.gap == 2 * f.fA.coboundary(1, 1) == 4


def test_doubling_witness_rejects_degenerate_inputs():
    f = weight_qm({1: Fraction(1)})
    with pytest.raises(ValueError):
        doubling_witness(f, 0, 1, 1, 1, side=A)
    with pytest.raises(ValueError):
        doubling_witness(f, 1, -1, 1, 1, side=A)
    with pytest.raises(ValueError):
        doubling_witness(f, 1, 1, 0, 1, side=A)
    with pytest.raises(ValueError):
        doubling_witness(f, 1, 1, 1, 0, side=A)


@pytest.mark.parametrize("table", [{1: Fraction(1)}, {1: Fraction(-1)}, {2: Fraction(3, 2)}])
def test_maximized_witness_attains_twice_the_norm(table):
    f = weight_qm(table)
    report = gromov_norm(f)
    assert report.value == split_defect(f)
    assert report.witness_attains
    assert report.witness.gap == 2 * report.value > 0


def test_gromov_norm_of_a_homomorphism_has_no_witness():
    f = SplitQM(ZXZ, FactorQM(ZXZ.A, slope=Fraction(2)), FactorQM(ZXZ.B))
    report = gromov_norm(f)
    assert report.value == 0
    assert report.witness is None
    assert is_trivial(f)


def test_rademacher_map_values_and_norm():
    f = rademacher()
    s = f.splitting
    assert f.fA(1) == 0
    assert f.fB(1) == 1
    assert f.fB(2) == -1
    assert eval_split(f, parse_word(s, "b a b a b")) == 3
    assert split_defect(f) == 3
    report = gromov_norm(f)
    assert report.value == 3
    assert report.witness_attains
    assert report.witness.gap == 6
    assert maximize_doubling_witness(f, A) is None
    assert not is_trivial(f)


def test_weight_tables_fill_in_alternation_and_reject_conflicts():
    f = weight_qm({1: Fraction(1), 2: Fraction(-1, 2)})
    assert f.fA(-1) == -1
    assert f.fB(-2) == Fraction(1, 2)
    with pytest.raises(ValueError):
        weight_qm({1: Fraction(1), -1: Fraction(1)})
    with pytest.raises(ValueError):
        weight_qm({0: Fraction(1)})
    assert is_trivial(weight_qm({}))


@settings(deadline=None, max_examples=25)
@given(split_qms(), st.integers(0, 2**32 - 1))
def test_cached_evaluator_matches_plain_evaluation(f, seed):
    evaluate = cached_evaluator(f)
    for offset in range(30):
        g = random_word(f.splitting, 6, 4, seed + offset)
        assert evaluate(g) == eval_split(f, g)
