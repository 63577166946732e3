import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from redbench import constructions as cons
from redbench.bitsupport import FiniteNatSet, SumMode, lam
from redbench.colorings import (
    TupleColoring,
    UnaryColoring,
    classify_canonical_fs,
    classify_canonical_tuples,
    is_homogeneous,
    is_lambda_regressive,
    is_min_homogeneous,
    is_min_term_homogeneous,
    is_regressive,
)
from redbench.errors import DomainError

from helpers import random_apart_set, random_k_coloring, random_lambda_regressive_table

D = 1 << 10


def test_is_lambda_regressive():
    assert is_lambda_regressive(cons.constant_coloring(0, D)) == (True, None)
    assert is_lambda_regressive(cons.lam_minus_coloring(D)) == (True, None)
    assert is_lambda_regressive(cons.identity_coloring(D)) == (False, 1)


def test_is_regressive():
    zero = cons.tuple_constant_coloring(0, 2, 24)
    assert is_regressive(zero) == (True, None)
    ymodx = TupleColoring(2, 24, lambda t: t[1] % t[0] if t[0] > 0 else 0)
    assert is_regressive(ymodx) == (True, None)
    second = TupleColoring(2, 24, lambda t: t[1])
    assert is_regressive(second) == (False, (0, 1))
    assert is_regressive(second, FiniteNatSet.of(1, 2, 5)) == (False, (1, 2))


def test_min_term_homogeneous_examples():
    h = FiniteNatSet.of(1, 2, 4)
    const = cons.constant_coloring(3, D)
    for mode in (SumMode.all_capped(3), SumMode.at_most(2), SumMode.exactly(2)):
        assert is_min_term_homogeneous(const, h, mode) == (True, None)
    lam_c = cons.lam_coloring(D)
    assert is_min_term_homogeneous(lam_c, h, SumMode.exactly(2)) == (True, None)
    mu_c = cons.mu_coloring(D)
    holds, witness = is_min_term_homogeneous(mu_c, h, SumMode.exactly(2))
    assert not holds
    assert witness == ((0, 1), (0, 2))


def test_min_term_homogeneous_domain_error_names_sum():
    h = FiniteNatSet.of(1, 2, 4)
    small = cons.constant_coloring(0, 5)
    with pytest.raises(DomainError) as info:
        is_min_term_homogeneous(small, h, SumMode.exactly(2))
    assert info.value.point == 5


def test_min_homogeneous_examples():
    zero = cons.tuple_constant_coloring(0, 2, 24)
    assert is_min_homogeneous(zero, FiniteNatSet.of(3, 5, 9)) == (True, None)
    ymodx = TupleColoring(2, 24, lambda t: t[1] % t[0] if t[0] > 0 else 0)
    assert is_min_homogeneous(ymodx, FiniteNatSet.of(2, 3, 5)) == (True, None)
    parity = TupleColoring(2, 24, lambda t: t[1] % 2)
    holds, witness = is_min_homogeneous(parity, FiniteNatSet.of(2, 3, 4))
    assert not holds
    assert witness == ((2, 3), (2, 4))


def test_is_homogeneous_modes():
    parity = cons.mod_coloring(2, D)
    r = is_homogeneous(parity, FiniteNatSet.of(0, 2, 4), "elements")
    assert r.holds and r.color == 0
    r = is_homogeneous(parity, FiniteNatSet.of(1, 2, 4), SumMode.exactly(2))
    assert not r.holds
    assert r.witness == (3, 6)
    zero2 = cons.tuple_constant_coloring(0, 2, 24)
    r = is_homogeneous(zero2, FiniteNatSet.of(1, 5, 9), "tuples")
    assert r.holds and r.color == 0


WITNESS_H = FiniteNatSet.of(1, 4, 32, 256, 2048, 16384)
WITNESS_DOMAIN = 1 << 16


def witness_colorings():
    return {
        1: cons.constant_coloring(0, WITNESS_DOMAIN),
        2: cons.identity_coloring(WITNESS_DOMAIN),
        3: cons.lam_coloring(WITNESS_DOMAIN),
        4: cons.mu_coloring(WITNESS_DOMAIN),
        5: cons.pair_lam_mu_coloring(WITNESS_DOMAIN),
    }


def test_classify_fs_witnesses_cap3():
    for case, coloring in witness_colorings().items():
        assert classify_canonical_fs(coloring, WITNESS_H, cap=3) == frozenset({case})


def test_classify_fs_cap2_merges_cases_2_and_5():
    # with pairs only, an index set is determined by its min and max, so
    # the injective and the endpoint-pair witnesses both satisfy cases 2 and 5
    wit = witness_colorings()
    assert classify_canonical_fs(wit[2], WITNESS_H, cap=2) == frozenset({2, 5})
    assert classify_canonical_fs(wit[5], WITNESS_H, cap=2) == frozenset({2, 5})
    assert classify_canonical_fs(wit[1], WITNESS_H, cap=2) == frozenset({1})
    assert classify_canonical_fs(wit[3], WITNESS_H, cap=2) == frozenset({3})
    assert classify_canonical_fs(wit[4], WITNESS_H, cap=2) == frozenset({4})


def test_classify_mu_small_set():
    assert classify_canonical_fs(cons.mu_coloring(64), FiniteNatSet.of(1, 4, 32), cap=2) == frozenset({4})


def test_classify_tuples():
    const = cons.tuple_constant_coloring(7, 2, 32)
    h = FiniteNatSet.of(2, 5, 9, 14, 20)
    assert classify_canonical_tuples(const, h) == frozenset({1})
    min_c = TupleColoring(2, 32, lambda t: t[0])
    assert classify_canonical_tuples(min_c, h) == frozenset({3})
    max_c = TupleColoring(2, 32, lambda t: t[1])
    assert classify_canonical_tuples(max_c, h) == frozenset({4})
    code = TupleColoring(2, 32, lambda t: (t[0] << 6) | t[1])
    assert classify_canonical_tuples(code, h) == frozenset({2})


def test_exclusion_lambda_regressive():
    rng = random.Random(31)
    for _ in range(200):
        c = random_lambda_regressive_table(rng, D)
        h = random_apart_set(rng, 6, 9)
        if len(h) - 1 <= lam(h.min()):
            continue
        cases = classify_canonical_fs(c, h, cap=2)
        assert cases & {2, 4, 5} == frozenset()


def test_exclusion_finite_range():
    rng = random.Random(32)
    for _ in range(200):
        k = rng.randint(1, 5)
        c = random_k_coloring(rng, k, D)
        h = random_apart_set(rng, 6, 9)
        assert classify_canonical_fs(c, h, cap=2) <= frozenset({1})


@given(st.integers(min_value=0, max_value=5000), st.integers(min_value=2, max_value=4))
@settings(max_examples=60, deadline=None)
def test_mode_implication_at_most_to_exactly(seed, n):
    """at_most n min-term-homogeneity implies exactly m for every m <= n."""
    rng = random.Random(seed)
    c = random_lambda_regressive_table(rng, 1 << 12)
    h = random_apart_set(rng, 4, 9)
    if is_min_term_homogeneous(c, h, SumMode.at_most(n))[0]:
        for m in range(1, n + 1):
            assert is_min_term_homogeneous(c, h, SumMode.exactly(m))[0]


def test_exactly_does_not_imply_at_most():
    # colors: singletons disagree with the pair sum on the min term
    values = [0] * 8
    values[1] = 1  # c(1) = 1 but c(1 + 2) = 0
    c = UnaryColoring.from_table(values)
    h = FiniteNatSet.of(1, 2)
    assert is_min_term_homogeneous(c, h, SumMode.exactly(2))[0]
    assert not is_min_term_homogeneous(c, h, SumMode.at_most(2))[0]


def test_coloring_domain_guard():
    c = cons.constant_coloring(0, 4)
    with pytest.raises(DomainError):
        c(4)
    t = cons.tuple_constant_coloring(0, 2, 4)
    with pytest.raises(DomainError):
        t((1, 4))
    with pytest.raises(DomainError):
        t((2, 2))


def test_tuple_coloring_canonical_presentation():
    f = TupleColoring(2, 16, lambda t: t[1] - t[0])
    assert f((3, 9)) == f((9, 3)) == 6
