import itertools
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from randconv.sequence_space import (ExponentSequence, ProbabilityVector, SequenceModel,
                                     common_prefix_metric, counter_uniforms,
                                     cylinder_probability, shift, symbol_at)

IID = SequenceModel.iid((F(1, 3), F(2, 3)), seed=42)


def test_symbol_at_examples():
    assert symbol_at(SequenceModel.periodic((1, 2)), 3) == 1
    assert symbol_at(SequenceModel.explicit((5, 7)), 2) == 7
    with pytest.raises(IndexError):
        symbol_at(SequenceModel.explicit((5, 7)), 3)
    first = [symbol_at(IID, k) for k in (7, 3, 7, 1000)]
    assert first[0] == first[2]
    assert list(IID.symbols(4, start=7))[0] == first[0]


def test_iid_is_order_independent():
    block = IID.symbols(200)
    single = [symbol_at(IID, k) for k in range(200, 0, -1)][::-1]
    assert list(block) == single
    assert list(IID.symbols(50, start=101)) == list(block[100:150])


def test_metric_examples():
    assert common_prefix_metric(range(10), range(10)) == 2.0**-10
    assert common_prefix_metric((1, 5), (2, 5)) == 1.0
    assert common_prefix_metric((1, 2, 3), (1, 2, 4)) == 0.25
    with pytest.raises(ValueError):
        common_prefix_metric((), (1,))


words = st.lists(st.integers(1, 3), min_size=1, max_size=8)


@given(words, words, words)
def test_metric_ultrametric(u, v, w):
    assert common_prefix_metric(u, v) <= max(common_prefix_metric(u, w), common_prefix_metric(w, v))


def test_shift_examples():
    assert shift(SequenceModel.periodic((1, 2)), 1).word == (2, 1)
    assert shift(SequenceModel.explicit((3, 1, 2)), 2).word == (2,)
    with pytest.raises(IndexError):
        shift(SequenceModel.explicit((3, 1, 2)), 3)
    s = shift(IID, 17)
    assert [symbol_at(s, j) for j in range(1, 30)] == [symbol_at(IID, j + 17) for j in range(1, 30)]


@given(st.integers(0, 50), st.integers(0, 50))
@settings(max_examples=40, deadline=None)
def test_shift_composes(a, b):
    for m in (IID, SequenceModel.periodic((1, 2, 3, 3))):
        lhs, rhs = shift(shift(m, a), b), shift(m, a + b)
        assert list(lhs.symbols(20)) == list(rhs.symbols(20))


def test_cylinder_examples():
    p = ProbabilityVector((F(1, 3), F(2, 3)))
    assert cylinder_probability(p, (1, 2)) == F(2, 9)
    assert cylinder_probability(p, ()) == 1
    assert cylinder_probability(ProbabilityVector((1, 0)), (2,)) == 0
    with pytest.raises(ValueError):
        cylinder_probability(p, (3,))


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_cylinders_sum_to_one(k):
    p = ProbabilityVector((F(1, 6), F(1, 2), F(1, 3)))
    total = sum(cylinder_probability(p, w) for w in itertools.product((1, 2, 3), repeat=k))
    assert total == 1


def test_probability_vector():
    with pytest.raises(ValueError):
        ProbabilityVector((F(1, 2), F(1, 3)))
    with pytest.raises(ValueError):
        ProbabilityVector((F(3, 2), F(-1, 2)))
    g = ProbabilityVector.geometric(F(1, 2))
    assert sum(g.entries) == 1
    assert g.positive
    # mass left after dropping the last entry is below the cutoff
    assert 1 - sum(g.entries[:-1]) < F(1, 10**11)


def test_counter_uniforms_range_and_seed():
    u = counter_uniforms(1, np.arange(1, 10001))
    v = counter_uniforms(2, np.arange(1, 10001))
    assert u.min() >= 0 and u.max() < 1
    assert abs(u.mean() - 0.5) < 0.01
    assert not np.array_equal(u, v)


def test_exponents():
    aff = ExponentSequence.affine(1, 0)
    assert [aff.n(k) for k in (1, 2, 5)] == [1, 2, 5]
    assert aff.shifted(3).n(1) == 4
    assert aff.unbounded
    ex = ExponentSequence.explicit((2, 3, 1))
    assert ex.shifted(1).n(1) == 3
    with pytest.raises(IndexError):
        ex.n(4)
    assert ExponentSequence().is_constant_one
    assert ExponentSequence.affine(0, 1).is_constant_one
    with pytest.raises(ValueError):
        ExponentSequence.affine(0, 0)


def test_model_validation():
    with pytest.raises(ValueError):
        SequenceModel("periodic-word", ())
    with pytest.raises(ValueError):
        SequenceModel("iid-bernoulli")
    with pytest.raises(ValueError):
        SequenceModel.explicit((0, 1))
