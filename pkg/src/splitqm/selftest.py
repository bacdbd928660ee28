"""The acceptance suite: thirteen numbered checks covering every module.

Each criterion is a self-contained deterministic function returning a
CriterionResult; the CLI selftest subcommand and the test suite both drive
this registry.  All randomness derives from one seed through per-criterion
child seeds, so repeated runs are byte-identical.
"""

from __future__ import annotations

import hashlib
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .groups import CyclicGroup, IntegerGroup
from .words import (
    A,
    B,
    IDENTITY,
    Splitting,
    Word,
    conjugate,
    enumerate_words,
    multiply,
    parse_word,
    power,
    random_word,
)
from .quasimorphisms import (
    FactorQM,
    SplitQM,
    default_sampler,
    doubling_witness,
    eval_split,
    factor_defect_witness,
    gromov_norm,
    homogenize_eval,
    is_trivial,
    rademacher,
    sampled_defect,
    split_defect,
    weight_qm,
)
from . import counting
from .automorphisms import (
    apply,
    check_fixed_point,
    inner_distance_check,
    twist,
    violation_witness,
)
from .quasicocycles import (
    FiniteDimRep,
    GrowthCheckError,
    RegularRep,
    eval_split_qc,
    inner_cocycle,
    inner_split_eval,
    power_ladder_cocycle,
    staircase_cocycle,
    staircase_word,
)
from .defect_space import (
    DefectVector,
    GroupHom,
    ShortExactSequence,
    alternating_vectors,
    defect_norm,
    embed_subgroup,
    order_bound_check,
    pullback_quotient,
    ses_embed,
    sup_norm,
)
from .qrep import (
    Circle,
    FactorHom,
    FactorQRMap,
    FiniteMetric,
    SplitHom,
    SplitQRep,
    check_no_small_subgroups,
    enumerate_factor_homs,
    enumerate_factor_qr_maps,
    nontriviality_witness,
    qrep_defect,
    qrep_sampled_defect,
)

__all__ = ["CriterionResult", "CRITERIA", "run_all", "DEFAULT_SEED"]

DEFAULT_SEED = 271828

F = Fraction
_VALUES = tuple(F(k, 2) for k in (-4, -3, -2, -1, 1, 2, 3, 4))


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str


def _child_rng(seed: int, label: str) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{label}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def _zxz() -> Splitting:
    return Splitting(IntegerGroup(), IntegerGroup())


def _random_integer_qm(group: IntegerGroup, rng: random.Random, with_slope: bool = False) -> FactorQM:
    finite: dict[int, Fraction] = {}
    for _ in range(rng.randint(0, 3)):
        k = rng.randint(1, 4)
        value = rng.choice(_VALUES)
        finite[k], finite[-k] = value, -value
    period, residues = None, ()
    if rng.random() < 0.5:
        p = rng.choice((3, 4, 5))
        table = [F(0)] * p
        for j in range(1, (p - 1) // 2 + 1):
            value = rng.choice(_VALUES + (F(0),))
            table[j], table[p - j] = value, -value
        period, residues = p, tuple(table)
    sign = rng.choice(_VALUES) if rng.random() < 0.5 else F(0)
    slope = rng.choice((F(1, 2), F(-1), F(2))) if with_slope and rng.random() < 0.4 else F(0)
    return FactorQM(
        group, slope=slope, finite_part=finite, period=period, residues=residues, sign_coeff=sign
    )


def _random_finite_qm(group: CyclicGroup, rng: random.Random) -> FactorQM:
    values: dict[int, Fraction] = {}
    seen: set[int] = set()
    for x in group.elements():
        inv_x = group.inv(x)
        if group.is_identity(x) or x in seen or inv_x == x:
            continue
        seen.update({x, inv_x})
        if rng.random() < 0.75:
            value = rng.choice(_VALUES)
            values[x], values[inv_x] = value, -value
    return FactorQM(group, finite_part=values)


def _junction_extra_pairs(f: SplitQM) -> list[tuple[Word, Word]]:
    pairs = []
    for side in (A, B):
        q = f.factor_map(side)
        _, x, y = factor_defect_witness(q.group, q)
        if not q.group.is_identity(x) and not q.group.is_identity(y):
            pairs.append((Word(((side, x),)), Word(((side, y),))))
    return pairs


# -- criterion 1: split defect equals sampled defect ----------------------


def criterion_1(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _child_rng(seed, "defect-equality")
    start = time.perf_counter()
    configs: list[SplitQM] = []
    s_int = _zxz()
    s_fin = Splitting(CyclicGroup(5), CyclicGroup(6))
    for _ in range(10):
        configs.append(
            SplitQM(s_int, _random_integer_qm(s_int.A, rng), _random_integer_qm(s_int.B, rng))
        )
    for _ in range(10):
        configs.append(
            SplitQM(s_fin, _random_finite_qm(s_fin.A, rng), _random_finite_qm(s_fin.B, rng))
        )
    defects = []
    for f in configs:
        exact = split_defect(f)
        sampler = default_sampler(f.splitting, rng, length_bound=4, exponent_bound=4)
        sampled = sampled_defect(f, sampler, 10_000, extra_pairs=_junction_extra_pairs(f))
        if sampled != exact:
            return CriterionResult(
                1, "defect-equality", False, f"sampled {sampled} != exact {exact}"
            )
        defects.append(exact)
    elapsed = time.perf_counter() - start
    if elapsed >= 10.0:
        return CriterionResult(1, "defect-equality", False, f"too slow: {elapsed:.2f}s")
    return CriterionResult(
        1,
        "defect-equality",
        True,
        f"20 configs x 10000 pairs, max defect {max(defects)}, {elapsed:.2f}s",
    )


# -- criterion 2: sign map against an exponent-count oracle ---------------


def _sign_map() -> SplitQM:
    s = _zxz()
    return SplitQM(
        s, FactorQM(s.A, sign_coeff=F(1)), FactorQM(s.B, sign_coeff=F(1))
    )


def criterion_2(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _child_rng(seed, "sign-evaluation")
    f = _sign_map()
    s = f.splitting
    anchor = parse_word(s, "a b^-2 a^3 b")
    if eval_split(f, anchor) != 2:
        return CriterionResult(2, "sign-evaluation", False, "anchor word is not 2")
    for _ in range(500):
        g = random_word(s, 8, 6, rng)
        oracle = sum((k > 0) - (k < 0) for _, k in g.letters)
        if eval_split(f, g) != oracle:
            return CriterionResult(2, "sign-evaluation", False, f"mismatch at {g}")
    return CriterionResult(2, "sign-evaluation", True, "anchor = 2 and 500 words match the oracle")


# -- criterion 3: homogenization is homogeneous and conjugacy-invariant ---


def criterion_3(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _child_rng(seed, "homogenization")
    s_int = _zxz()
    f_int = SplitQM(
        s_int,
        FactorQM(
            s_int.A,
            slope=F(1, 2),
            finite_part={1: F(1), -1: F(-1), 3: F(-1, 2), -3: F(1, 2)},
            period=3,
            residues=(F(0), F(1), F(-1)),
            sign_coeff=F(1, 2),
        ),
        FactorQM(s_int.B, finite_part={2: F(3, 2), -2: F(-3, 2)}, sign_coeff=F(-1)),
    )
    s_fin = Splitting(CyclicGroup(5), CyclicGroup(6))
    f_fin = SplitQM(
        s_fin,
        FactorQM(s_fin.A, finite_part={1: F(1), 4: F(-1), 2: F(1, 2), 3: F(-1, 2)}),
        FactorQM(s_fin.B, finite_part={1: F(2), 5: F(-2), 2: F(1), 4: F(-1)}),
    )
    checked = 0
    for f in (f_int, f_fin):
        s = f.splitting
        conjugators = [random_word(s, 3, 3, rng) for _ in range(6)]
        for g in enumerate_words(s, 4, 3):
            base = homogenize_eval(f, g)
            for n in range(-4, 5):
                if homogenize_eval(f, power(s, g, n)) != n * base:
                    return CriterionResult(
                        3, "homogenization", False, f"power identity fails at {g}^{n}"
                    )
            for w in conjugators:
                if homogenize_eval(f, conjugate(s, w, g)) != base:
                    return CriterionResult(
                        3, "homogenization", False, f"conjugacy fails at {w}{g}"
                    )
            checked += 1
    return CriterionResult(
        3, "homogenization", True, f"{checked} words x 9 powers x 6 conjugators"
    )


# -- criterion 4: doubling witnesses and the homogenized defect bound ------


def criterion_4(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _child_rng(seed, "doubling-witness")
    s_int = _zxz()
    s_fin = Splitting(CyclicGroup(5), CyclicGroup(6))
    configs: list[SplitQM] = []
    while len(configs) < 5:
        f = SplitQM(s_int, _random_integer_qm(s_int.A, rng), _random_integer_qm(s_int.B, rng))
        if split_defect(f) > 0:
            configs.append(f)
    while len(configs) < 10:
        f = SplitQM(s_fin, _random_finite_qm(s_fin.A, rng), _random_finite_qm(s_fin.B, rng))
        if split_defect(f) > 0:
            configs.append(f)
    pair_checks = 0
    for f in configs:
        q = f.fA
        group = q.group
        aux_same = 1
        if isinstance(group, IntegerGroup):
            w = q.defect_window()
            window = range(-w, w + 1)
            candidates = [(x, y) for x in window for y in window]
        else:
            candidates = [(x, y) for x in group.elements() for y in group.elements()]
        for x1, x2 in candidates:
            if group.is_identity(x1) or group.is_identity(x2):
                continue
            if group.is_identity(group.mul(x1, x2)):
                continue
            witness = doubling_witness(f, x1, x2, aux_same, 1, side=A)
            if witness.gap != 2 * q.coboundary(x1, x2):
                return CriterionResult(
                    4, "doubling-witness", False, f"gap != 2*coboundary at {(x1, x2)}"
                )
            pair_checks += 1
        report = gromov_norm(f)
        if report.value != split_defect(f) or not report.witness_attains:
            return CriterionResult(
                4, "doubling-witness", False, "maximized witness misses 2*split_defect"
            )
        sampler = default_sampler(f.splitting, rng, length_bound=4, exponent_bound=4)
        bound = 2 * split_defect(f)
        for _ in range(1000):
            g, h = sampler(), sampler()
            gap = abs(
                homogenize_eval(f, g)
                + homogenize_eval(f, h)
                - homogenize_eval(f, multiply(f.splitting, g, h))
            )
            if gap > bound:
                return CriterionResult(
                    4, "doubling-witness", False, f"homogenized coboundary {gap} > {bound}"
                )
    return CriterionResult(
        4,
        "doubling-witness",
        True,
        f"{pair_checks} window pairs doubled; 10 maximized witnesses; 10000 sampled pairs bounded",
    )


# -- criterion 5: counting maps against the offset-scan oracle -------------


def _reduced_strings(max_len: int) -> list[str]:
    out = [""]
    frontier = [""]
    for _ in range(max_len):
        step = []
        for text in frontier:
            for ch in "aAbB":
                if text and counting.invert_letters(ch) == text[-1]:
                    continue
                step.append(text + ch)
        out.extend(step)
        frontier = step
    return out


def criterion_5(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _child_rng(seed, "counting")
    if counting.counting_qm("aba", "ababa") != 2:
        return CriterionResult(5, "counting", False, "anchor value is not 2")
    words = _reduced_strings(8)
    nonzero_checks = 0
    for g in words:
        counts: dict[str, int] = {}
        for i in range(len(g)):
            for j in range(i + 1, len(g) + 1):
                piece = g[i:j]
                counts[piece] = counts.get(piece, 0) + 1
        for w, expected in counts.items():
            if counting.subword_count(w, g) != expected:
                return CriterionResult(
                    5, "counting", False, f"count mismatch for {w!r} in {g!r}"
                )
            nonzero_checks += 1
        for _ in range(2):
            w = rng.choice(words)
            expected = counts.get(w, 0) - counts.get(counting.invert_letters(w), 0)
            if w and counting.counting_qm(w, g) != expected:
                return CriterionResult(
                    5, "counting", False, f"counting map mismatch for {w!r} in {g!r}"
                )
    return CriterionResult(
        5,
        "counting",
        True,
        f"{len(words)} words, {nonzero_checks} exhaustive occurring-subword checks",
    )


# -- criterion 6: block decomposition residual ------------------------------


def criterion_6(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _child_rng(seed, "decomposition")
    s = _zxz()
    boundary = [
        IDENTITY,
        parse_word(s, "a"),
        parse_word(s, "b^-1"),
        parse_word(s, "a b a^2"),
        parse_word(s, "a^3 b^2"),
        parse_word(s, "b a^-2 b^2"),
        parse_word(s, "b a^2 b^-1"),
        parse_word(s, "b a^2 b"),
        parse_word(s, "a b^-3 a^-1"),
    ]
    for index in range(10):
        fA = _random_integer_qm(s.A, rng)
        fB = _random_integer_qm(s.B, rng)
        fA = FactorQM(s.A, finite_part=fA.finite_part)
        fB = FactorQM(s.B, finite_part=fB.finite_part)
        f = SplitQM(s, fA, fB)
        for g in boundary:
            if counting.decomposition_residual(f, g) != 0:
                return CriterionResult(6, "decomposition", False, f"residual at {g}")
        for _ in range(1000):
            g = random_word(s, 6, 5, rng)
            if counting.decomposition_residual(f, g) != 0:
                return CriterionResult(6, "decomposition", False, f"residual at {g}")
    return CriterionResult(
        6, "decomposition", True, "10 configs x (1000 random + 9 boundary) words, residual 0"
    )


# -- criterion 7: twist fixed points ----------------------------------------


def _antisymmetric_residues(p: int, values: list[Fraction]) -> tuple[Fraction, ...]:
    table = [F(0)] * p
    for j, value in enumerate(values, start=1):
        table[j], table[p - j] = value, -value
    return tuple(table)


def criterion_7(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _child_rng(seed, "twist-fixed-points")
    s = _zxz()
    letter_words = [
        counting.word_from_letters(s, text) for text in _reduced_strings(6)
    ]
    for n in (3, 4, 5):
        residues = _antisymmetric_residues(n, [F(j) for j in range(1, (n - 1) // 2 + 1)])
        good = SplitQM(
            s,
            FactorQM(s.A, period=n, residues=residues),
            FactorQM(s.B),
        )
        tau = twist(s, n)
        for g in letter_words:
            if eval_split(good, apply(tau, g)) != eval_split(good, g):
                return CriterionResult(
                    7, "twist-fixed-points", False, f"invariance fails at n={n}, {g}"
                )
        for g in enumerate_words(s, 3, 2 * n):
            if eval_split(good, apply(tau, g)) != eval_split(good, g):
                return CriterionResult(
                    7, "twist-fixed-points", False, f"invariance fails at n={n}, {g}"
                )
        for _ in range(10_000 // 3):
            g = random_word(s, 6, 2 * n + 2, rng)
            if eval_split(good, apply(tau, g)) != eval_split(good, g):
                return CriterionResult(
                    7, "twist-fixed-points", False, f"invariance fails at n={n}, {g}"
                )
        report = check_fixed_point(good, n, (letter_words[k] for k in range(0, 1457, 9)))
        if not (report.condition_holds and report.invariant):
            return CriterionResult(
                7, "twist-fixed-points", False, f"fixed-point report wrong at n={n}"
            )
        bad_configs = [
            SplitQM(s, good.fA, FactorQM(s.B, finite_part={1: F(1), -1: F(-1)})),
            SplitQM(s, FactorQM(s.A, finite_part={1: F(1), -1: F(-1)}), FactorQM(s.B)),
            SplitQM(
                s,
                FactorQM(
                    s.A,
                    period=n + 1,
                    residues=_antisymmetric_residues(n + 1, [F(1)] * ((n) // 2)),
                ),
                FactorQM(s.B),
            ),
        ]
        for bad in bad_configs:
            witness = violation_witness(bad, n)
            if witness is None:
                return CriterionResult(
                    7, "twist-fixed-points", False, f"no violation witness at n={n}"
                )
            gaps = [abs(gap) for _, gap in witness.growth]
            if not all(x < y for x, y in zip(gaps, gaps[1:])):
                return CriterionResult(
                    7, "twist-fixed-points", False, f"growth not strictly increasing at n={n}"
                )
    for n in (1, 2, -1, -2):
        residues = _antisymmetric_residues(abs(n), [])
        f = SplitQM(s, FactorQM(s.A, period=abs(n), residues=residues), FactorQM(s.B))
        report = check_fixed_point(f, n, letter_words[:200])
        if not report.forces_zero:
            return CriterionResult(
                7, "twist-fixed-points", False, f"|n|<=2 config not forced to zero at n={n}"
            )
        if any(eval_split(f, g) != 0 for g in letter_words):
            return CriterionResult(
                7, "twist-fixed-points", False, f"|n|<=2 config not zero at n={n}"
            )
    return CriterionResult(
        7,
        "twist-fixed-points",
        True,
        "n in {3,4,5}: 3 exhaustive layers invariant, 9 violation witnesses grow; |n|<=2 forces 0",
    )


# -- criterion 8: conjugation moves values by at most twice the defect ------


def criterion_8(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _child_rng(seed, "inner-conjugation")
    s_int = _zxz()
    s_fin = Splitting(CyclicGroup(5), CyclicGroup(6))
    configs = [
        SplitQM(s_int, _random_integer_qm(s_int.A, rng), _random_integer_qm(s_int.B, rng)),
        SplitQM(s_fin, _random_finite_qm(s_fin.A, rng), _random_finite_qm(s_fin.B, rng)),
        rademacher(),
    ]
    total = 0
    for f in configs:
        s = f.splitting
        for _ in range(50):
            h = random_word(s, 4, 4, rng)
            samples = [random_word(s, 4, 4, rng) for _ in range(70)]
            try:
                inner_distance_check(f, h, samples)
            except RuntimeError as exc:
                return CriterionResult(8, "inner-conjugation", False, str(exc))
            total += len(samples)
    return CriterionResult(8, "inner-conjugation", True, f"{total} conjugation pairs bounded")


# -- criterion 9: quasicocycle growth witnesses -----------------------------


def criterion_9(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _child_rng(seed, "cocycle-witnesses")
    s = _zxz()
    dim3 = FiniteDimRep(
        s,
        mat_a=((1, 1, 0), (0, 1, 1), (0, 0, 1)),
        mat_b=((0, 1, 0), (0, 0, 1), (1, 0, 0)),
    )
    reg1 = RegularRep(s, 1)
    reg2 = RegularRep(s, 2)
    setups = [
        (dim3, dim3.vector((1, 0, 0))),
        (reg1, reg1.indicator(IDENTITY)),
        (reg2, reg2.indicator(IDENTITY)),
    ]
    for m, v in setups:
        try:
            power_ladder_cocycle(m, 2, v, depth=6, check_prime=3)
            _, f_stair = staircase_cocycle(m, v, depth=6)
        except GrowthCheckError as exc:
            return CriterionResult(9, "cocycle-witnesses", False, str(exc))
        if isinstance(m, RegularRep):
            xi_norm = m.norm(v)
            for n in range(1, 7):
                got = m.norm(eval_split_qc(f_stair, staircase_word(s, n)))
                if abs(float(got) - n * float(xi_norm)) > 1e-9:
                    return CriterionResult(
                        9, "cocycle-witnesses", False, f"staircase norm growth fails at {n}"
                    )
    for m, v in (setups[0], setups[1]):
        for _ in range(250):
            g = random_word(s, 5, 3, rng)
            if not m.equal(inner_split_eval(m, v, g), inner_cocycle(m, v, g)):
                return CriterionResult(
                    9, "cocycle-witnesses", False, f"inner split evaluation differs at {g}"
                )
    return CriterionResult(
        9,
        "cocycle-witnesses",
        True,
        "ladder p=2 q=3 and staircase exact to depth 6 in dim-3 and regular (p=1,2); inner split on 500 words",
    )


# -- criterion 10: defect-space calculus ------------------------------------


def criterion_10(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _child_rng(seed, "defect-space")
    choices = [F(k, 2) for k in range(-4, 5)]
    vectors_checked = 0
    for n in range(2, 9):
        for f in alternating_vectors(CyclicGroup(n), choices):
            order_bound_check(f)
            dn, sup = defect_norm(f), sup_norm(f)
            if not (sup <= dn <= 3 * sup or (dn == 0 and sup == 0)):
                return CriterionResult(
                    10, "defect-space", False, f"sandwich fails on Z/{n}: sup={sup}, dn={dn}"
                )
            vectors_checked += 1
    if [v.values for v in alternating_vectors(CyclicGroup(2), choices)] != [{}]:
        return CriterionResult(10, "defect-space", False, "Z/2 admits a non-zero vector")
    chains = [
        (CyclicGroup(3), CyclicGroup(6), CyclicGroup(2), 2),
        (CyclicGroup(3), CyclicGroup(12), CyclicGroup(4), 4),
    ]
    for sub, mid, quot, step in chains:
        i = GroupHom(sub, mid, {x: (step * x) % mid.n for x in sub.elements()})
        pi = GroupHom(mid, quot, {x: x % quot.n for x in mid.elements()})
        ses = ShortExactSequence(i, pi)
        for f in alternating_vectors(sub, choices):
            if defect_norm(embed_subgroup(f, i)) != defect_norm(f):
                return CriterionResult(10, "defect-space", False, "subgroup embedding not isometric")
        for f in alternating_vectors(quot, choices):
            if defect_norm(pullback_quotient(f, pi)) != defect_norm(f):
                return CriterionResult(10, "defect-space", False, "quotient pullback not isometric")
        for _ in range(100):
            f_sub = _random_defect_vector(sub, rng)
            f_quot = _random_defect_vector(quot, rng)
            j = ses_embed(f_sub, f_quot, ses)
            if defect_norm(j) != max(defect_norm(f_sub), defect_norm(f_quot)):
                return CriterionResult(10, "defect-space", False, "combined embedding not isometric")
    return CriterionResult(
        10,
        "defect-space",
        True,
        f"{vectors_checked} vectors bounded+sandwiched; embeddings isometric on both chains",
    )


def _random_defect_vector(group: CyclicGroup, rng: random.Random) -> DefectVector:
    values: dict[int, Fraction] = {}
    for x in range(1, group.n // 2 + (group.n % 2)):
        if rng.random() < 0.8:
            value = F(rng.randint(-6, 6), rng.choice((1, 2, 4)))
            if value:
                values[x] = value
                values[group.n - x] = -value
    return DefectVector(group, values)


# -- criterion 11: quasi-representations ------------------------------------


def criterion_11(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _child_rng(seed, "quasi-representations")
    target = FiniteMetric.from_length_function(
        CyclicGroup(6), [F(0), F(1, 2), F(1), F(1), F(1), F(1, 2)]
    )
    s = Splitting(CyclicGroup(2), CyclicGroup(3))
    small = check_no_small_subgroups(target, 1)
    if not (small.passed and small.certified):
        return CriterionResult(11, "quasi-representations", False, "target has 1-small subgroups")
    mus = [
        SplitQRep(s, target, mu_a, mu_b)
        for mu_a in enumerate_factor_qr_maps(A, s.A, target, F(1, 2))
        for mu_b in enumerate_factor_qr_maps(B, s.B, target, F(1, 2))
    ]
    rhos = [
        SplitHom(s, target, h_a, h_b)
        for h_a in enumerate_factor_homs(A, s.A, target)
        for h_b in enumerate_factor_homs(B, s.B, target)
    ]
    if len(rhos) != 6:
        return CriterionResult(
            11, "quasi-representations", False, f"expected 6 homomorphisms, got {len(rhos)}"
        )
    witness_count = 0
    for mu in mus:
        sampler = default_sampler(s, rng, length_bound=4, exponent_bound=4)
        exact = qrep_defect(mu)
        sampled = qrep_sampled_defect(mu, sampler, 1000)
        if sampled != exact:
            return CriterionResult(
                11, "quasi-representations", False, f"finite sampled {sampled} != {exact}"
            )
        for rho in rhos:
            report = nontriviality_witness(mu, rho, eps=1)
            if not report.succeeded:
                return CriterionResult(
                    11, "quasi-representations", False, "finite witness search exhausted"
                )
            witness_count += 1
    circle = Circle()
    s_int = _zxz()
    mu = SplitQRep(
        s_int,
        circle,
        FactorQRMap(A, circle, s_int.A, {1: F(1, 8)}),
        FactorQRMap(B, circle, s_int.B, {1: F(1, 8)}),
    )
    small = check_no_small_subgroups(circle, math.pi / 2, certificates=[F(1, 16), F(3, 64)])
    if not (small.passed and small.certified):
        return CriterionResult(11, "quasi-representations", False, "circle said to have small subgroups")
    sampler = default_sampler(s_int, rng, length_bound=4, exponent_bound=3)
    exact = qrep_defect(mu)
    sampled = qrep_sampled_defect(mu, sampler, 1000)
    if abs(float(sampled) - float(exact)) > 1e-9:
        return CriterionResult(
            11, "quasi-representations", False, f"circle sampled {sampled} != {exact}"
        )
    for _ in range(1000):
        rho = SplitHom(
            s_int,
            circle,
            FactorHom(A, s_int.A, circle, generator_image=F(rng.randrange(64), 64)),
            FactorHom(B, s_int.B, circle, generator_image=F(rng.randrange(64), 64)),
        )
        report = nontriviality_witness(mu, rho, eps=math.pi / 2)
        if not report.succeeded:
            return CriterionResult(
                11, "quasi-representations", False, f"circle witness exhausted for {rho}"
            )
        witness_count += 1
    return CriterionResult(
        11,
        "quasi-representations",
        True,
        f"defect equalities hold; {witness_count} witness searches succeeded",
    )


# -- criterion 12: weight maps ----------------------------------------------


def criterion_12(seed: int = DEFAULT_SEED) -> CriterionResult:
    del seed
    f = weight_qm({1: F(1)})
    s = f.splitting
    for k in [k for k in range(-5, 6) if k]:
        s_k = F(1) if k == 1 else F(-1) if k == -1 else F(0)
        for sign in (1, -1):
            s_sign = F(sign)
            for n in range(1, 11):
                g = Word(((A, k), (B, sign)) * n)
                if eval_split(f, g) != n * (s_k + s_sign):
                    return CriterionResult(
                        12, "weight-maps", False, f"value mismatch at k={k}, sign={sign}, n={n}"
                    )
    tested = 0
    for v1 in (-1, 0, 1):
        for v2 in (-1, 0, 1):
            for v3 in (-1, 0, 1):
                for v4 in (-1, 0, 1):
                    table = {1: F(v1), 2: F(v2), 3: F(v3), 4: F(v4)}
                    g = weight_qm(table)
                    zero = all(v == 0 for v in table.values())
                    if is_trivial(g) != zero:
                        return CriterionResult(
                            12, "weight-maps", False, f"triviality wrong for {table}"
                        )
                    tested += 1
    return CriterionResult(
        12, "weight-maps", True, f"junction-power values exact; triviality correct on {tested} tables"
    )


# -- criterion 13: the literal convention must fail -------------------------


def criterion_13(seed: int = DEFAULT_SEED) -> CriterionResult:
    del seed
    s = _zxz()
    m = RegularRep(s, 1)
    try:
        power_ladder_cocycle(m, 2, m.indicator(IDENTITY), depth=4, convention="literal")
    except GrowthCheckError as exc:
        return CriterionResult(13, "negative-control", True, f"literal convention rejected: {exc}")
    return CriterionResult(
        13, "negative-control", False, "literal convention unexpectedly passed the growth check"
    )


CRITERIA: tuple[tuple[int, str, Callable[[int], CriterionResult]], ...] = (
    (1, "defect-equality", criterion_1),
    (2, "sign-evaluation", criterion_2),
    (3, "homogenization", criterion_3),
    (4, "doubling-witness", criterion_4),
    (5, "counting", criterion_5),
    (6, "decomposition", criterion_6),
    (7, "twist-fixed-points", criterion_7),
    (8, "inner-conjugation", criterion_8),
    (9, "cocycle-witnesses", criterion_9),
    (10, "defect-space", criterion_10),
    (11, "quasi-representations", criterion_11),
    (12, "weight-maps", criterion_12),
    (13, "negative-control", criterion_13),
)


def run_all(seed: int = DEFAULT_SEED) -> list[CriterionResult]:
    results = []
    for number, name, func in CRITERIA:
        try:
            results.append(func(seed))
        except Exception as exc:  # pragma: no cover - a bug guard, not a path
            results.append(CriterionResult(number, name, False, f"raised {exc!r}"))
    return results


def format_result(result: CriterionResult) -> str:
    status = "PASS" if result.passed else "FAIL"
    return f"[{result.number:2d}] {status} {result.name}: {result.detail}"
