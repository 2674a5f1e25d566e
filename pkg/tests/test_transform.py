from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from randconv.core import AdmissiblePair, AtomOverflowError, DigitPair, convolve, dirac_uniform
from randconv.criteria import existence_series
from randconv.families import FiniteFamily
from randconv.sequence_space import ExponentSequence, SequenceModel
from randconv.transform import (PairSystem, ft_truncated, mask_eval, measure_ft, tail_delta0_diagnostic,
                                tail_measure, truncate)
from oracles import brute_measure, direct_ft, dyadic_constant_tail_ft, dyadic_tail_ft

JP = PairSystem(FiniteFamily([AdmissiblePair(4, (0, 2))]), SequenceModel.periodic((1,)))
BIN = FiniteFamily([AdmissiblePair(2, (0, 1))])


def test_truncate_examples():
    mu = truncate(JP, 2)
    assert list(mu.atoms) == [0, F(1, 8), F(1, 2), F(5, 8)]
    assert set(mu.weights) == {F(1, 4)}
    assert truncate(JP, 1) == dirac_uniform((0, 2), 4)
    b3 = truncate(PairSystem(BIN, SequenceModel.periodic((1,))), 3)
    assert list(b3.atoms) == [F(j, 8) for j in range(8)]


def test_truncate_cap():
    with pytest.raises(AtomOverflowError):
        truncate(JP, 10, cap=2**9)


@pytest.mark.parametrize("B, xi, val", [((0, 2), F(1, 4), 0), ((0, 1), F(1, 2), 0), ((0, 3, 7), 0, 1)])
def test_mask_examples(B, xi, val):
    assert mask_eval(B, xi) == val
    assert abs(mask_eval(B, float(xi)) - val) < 1e-15


def test_mask_periodic_and_bounded():
    xi = np.linspace(-5, 5, 401)
    for B in ((0, 2), (0, 1, 5), (0, 3, 4, 11)):
        assert np.max(np.abs(mask_eval(B, xi + 1) - mask_eval(B, xi))) < 1e-12
        assert np.max(np.abs(mask_eval(B, xi))) <= 1 + 1e-15


def test_ft_examples():
    assert ft_truncated(JP, 1, 1) == 0
    assert ft_truncated(JP, 2, 4) == 0
    assert ft_truncated(JP, 5, 0) == 1
    assert ft_truncated(JP, 3, 0.0) == 1


pairs = st.sampled_from([DigitPair(4, (0, 2)), DigitPair(2, (0, 1)), DigitPair(3, (0, 1, 5)),
                         DigitPair(6, (0, 1, 2)), DigitPair(4, (0, 1)), DigitPair(5, (0, 7))])


@given(st.lists(pairs, min_size=1, max_size=3), st.lists(st.integers(1, 3), min_size=4, max_size=4),
       st.lists(st.integers(1, 2), min_size=4, max_size=4), st.integers(1, 4),
       st.floats(-10, 10))
@settings(max_examples=60, deadline=None)
def test_truncate_and_ft_match_enumeration(fam, word, exps, k, xi):
    fam_ = FiniteFamily(fam)
    word = [min(s, len(fam)) for s in word]
    sys = PairSystem(fam_, SequenceModel.explicit(word), ExponentSequence.explicit(exps))
    levels, D = [], 1
    for j in range(k):
        p = fam[word[j] - 1]
        D *= p.N ** exps[j]
        levels.append((p.B, D))
    atoms, weights = brute_measure(levels)
    mu = truncate(sys, k)
    assert list(mu.atoms) == atoms and list(mu.weights) == weights
    assert mu.mass == 1
    assert abs(ft_truncated(sys, k, xi) - direct_ft(atoms, weights, xi)) < 1e-12
    assert abs(measure_ft(mu, xi) - direct_ft(atoms, weights, xi)) < 1e-12
    if k < 4:
        nxt = dirac_uniform(fam[word[k] - 1].B, D * fam[word[k] - 1].N ** exps[k])
        assert truncate(sys, k + 1) == convolve(mu, nxt)


def test_exact_frequency_path_agrees_with_float():
    rng = np.random.default_rng(3)
    sys = PairSystem(FiniteFamily([DigitPair(4, (0, 2)), DigitPair(3, (0, 1, 5))]),
                     SequenceModel.periodic((1, 2, 2)))
    for _ in range(50):
        xi = F(int(rng.integers(-400, 400)), int(rng.integers(1, 50)))
        assert abs(ft_truncated(sys, 4, xi) - ft_truncated(sys, 4, float(xi))) < 1e-12


def test_tail_measure_examples():
    assert tail_measure(JP, 0, 3) == truncate(JP, 3)
    assert tail_measure(JP, 5, 1) == dirac_uniform((0, 1), 2)
    fam = FiniteFamily([DigitPair(4, (0, 2)), DigitPair(3, (0, 1, 5))])
    sys = PairSystem(fam, SequenceModel.periodic((1, 2)), ExponentSequence.affine(1, 0))
    assert tail_measure(sys, 1, 1) == dirac_uniform((0, 1, 5), 3**2)


def test_tail_diagnostic_against_closed_form():
    aff = PairSystem(BIN, SequenceModel.periodic((1,)), ExponentSequence.affine(1, 0))
    const = PairSystem(BIN, SequenceModel.periodic((1,)))
    got_aff = tail_delta0_diagnostic(aff, 1, 20, 20)
    got_const = tail_delta0_diagnostic(const, 1, 20, 20)
    for k in range(1, 21):
        assert abs(got_aff[k - 1] - dyadic_tail_ft(1, k, 20)) < 1e-12
        assert abs(got_const[k - 1] - dyadic_constant_tail_ft(1, 20)) < 1e-12


def test_existence_terms_dominated_by_unit_exponents():
    fam = FiniteFamily([DigitPair(4, (0, 2)), DigitPair(3, (0, 1, 5))])
    model = SequenceModel.periodic((1, 2, 2))
    one = existence_series(PairSystem(fam, model), 20).values
    big = existence_series(PairSystem(fam, model, ExponentSequence.affine(1, 1)), 20).values
    t1 = np.diff([0] + one)
    t2 = np.diff([0] + big)
    assert all(b <= a for a, b in zip(t1, t2))
