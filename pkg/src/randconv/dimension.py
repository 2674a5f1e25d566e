"""Dimensions of random measures from finitely many pairs, and the inverse problem.

With ``n = 1`` and a Bernoulli vector ``p`` over pairs ``(N_i, B_i)``, almost
every realisation has

    dim = sum_i p_i log #B_i / sum_i p_i log N_i

(Hausdorff and packing alike).  When every ``N_i`` and ``#B_i`` is a power of
one integer base the logarithms cancel and the value is an exact rational.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import AdmissiblePair, as_fraction
from .families import FiniteFamily
from .sequence_space import ProbabilityVector
from .transform import PairSystem


def _integer_root(v: int) -> tuple[int, int]:
    """Smallest ``r`` and largest ``e`` with ``r**e == v`` (``v >= 2``)."""
    for e in range(v.bit_length(), 1, -1):
        r = round(v ** (1.0 / e))
        for c in (r - 1, r, r + 1):
            if c >= 2 and c**e == v:
                return c, e
    return v, 1


def common_log_base(values: Sequence[int]) -> tuple[int, list[int]] | None:
    """Find ``b`` with every value a power of ``b``; returns ``(b, exponents)``.

    Ones map to exponent 0.  Returns None when no common base exists.
    """
    roots = {}
    for v in values:
        if v < 1:
            raise ValueError("values must be positive")
        if v > 1:
            roots[v] = _integer_root(v)
    if not roots:
        return 2, [0] * len(values)
    bases = {r for r, _ in roots.values()}
    if len(bases) != 1:
        return None
    b = bases.pop()
    return b, [roots[v][1] if v > 1 else 0 for v in values]


def _log_weights(pairs: Sequence) -> tuple[list, list, bool]:
    """Numerator and denominator logs ``(log #B_i, log N_i)``, exact if possible."""
    cards = [len(p.B) for p in pairs]
    scales = [p.N for p in pairs]
    found = common_log_base(cards + scales)
    if found is not None:
        _, exps = found
        m = len(pairs)
        return [Fraction(e) for e in exps[:m]], [Fraction(e) for e in exps[m:]], True
    return [math.log(c) for c in cards], [math.log(n) for n in scales], False


def dim_formula(pairs: Sequence, p) -> Fraction | float:
    """``sum p_i log #B_i / sum p_i log N_i``; a Fraction in the common-base case."""
    if not isinstance(p, ProbabilityVector):
        p = ProbabilityVector(tuple(p))
    if len(p) != len(pairs):
        raise ValueError(f"{len(pairs)} pairs but {len(p)} probabilities")
    a, b, exact = _log_weights(pairs)
    if exact:
        return sum(pi * ai for pi, ai in zip(p, a)) / sum(pi * bi for pi, bi in zip(p, b))
    w = [float(pi) for pi in p]
    return float(np.dot(w, a) / np.dot(w, b))


def ratio_range(pairs: Sequence) -> tuple:
    a, b, _ = _log_weights(pairs)
    r = [ai / bi for ai, bi in zip(a, b)]
    return min(r), max(r)


def empirical_dimension(sys: PairSystem, k: int) -> np.ndarray:
    """Running ratios ``sum_{i<=j} log #B_{wi} / sum_{i<=j} log N_{wi}``, j = 1..k.

    Their liminf is the Hausdorff dimension of the realisation.  Only defined
    for ``n = 1``.
    """
    if k < 1:
        raise ValueError("depth must be >= 1")
    if not sys.exponents.is_constant_one:
        raise ValueError("empirical dimension is only defined for n_k = 1")
    syms = sys.model.symbols(k)
    used = sorted(set(int(s) for s in np.unique(syms)))
    pairs = [sys.family.pair(s) for s in used]
    a, b, _ = _log_weights(pairs)
    lookup_a = np.zeros(max(used) + 1)
    lookup_b = np.zeros(max(used) + 1)
    lookup_a[used] = [float(x) for x in a]
    lookup_b[used] = [float(x) for x in b]
    return np.cumsum(lookup_a[syms]) / np.cumsum(lookup_b[syms])


def solve_dimension(pairs: Sequence, s) -> ProbabilityVector:
    """A probability vector with ``dim_formula(pairs, p) == s``.

    Supported on the indices ``i`` (smallest ratio) and ``j`` (largest ratio)
    of ``log #B / log N``: ``p = t e_i + (1 - t) e_j`` with

        t = (a_j - s b_j) / ((s b_i - a_i) + (a_j - s b_j)).

    Raises:
        ValueError: if ``s`` lies outside ``[min ratio, max ratio]``.
    """
    a, b, exact = _log_weights(pairs)
    s = as_fraction(s) if exact else float(s)
    ratios = [ai / bi for ai, bi in zip(a, b)]
    i = min(range(len(ratios)), key=lambda t: (ratios[t], t))
    j = max(range(len(ratios)), key=lambda t: (ratios[t], -t))
    if not ratios[i] <= s <= ratios[j]:
        raise ValueError(f"target {s} outside [{ratios[i]}, {ratios[j]}]")
    hi = a[j] - s * b[j]
    lo = s * b[i] - a[i]
    t = 1 if hi + lo == 0 else hi / (hi + lo)
    t = Fraction(t) if exact else Fraction(float(t))
    entries = [Fraction(0)] * len(pairs)
    entries[i] += t
    entries[j] += 1 - t
    return ProbabilityVector(tuple(entries))


def ivp_exponent(s) -> int:
    """Smallest ``n0`` with ``1/n0 < s``, and 1 for ``s = 1``."""
    s = as_fraction(s) if not isinstance(s, float) else Fraction(s)
    if not 0 < s <= 1:
        raise ValueError("target dimension must lie in (0, 1]")
    if s == 1:
        return 1
    return math.floor(1 / s) + 1


def build_ivp_system(s, N: int, M: int) -> FiniteFamily:
    """Pairs whose dimension range covers ``s``.

    ``(N^n0, {0..N-1})`` followed by ``M - 1`` copies of ``(N, {0..N-1})``;
    the first has ratio ``1/n0 < s`` and the others ratio 1.
    """
    if N < 2:
        raise ValueError("base must be >= 2")
    if M < 1:
        raise ValueError("need at least one pair")
    n0 = ivp_exponent(s)
    if n0 > 1 and M < 2:
        raise ValueError("need M >= 2 to reach a target below 1")
    digits = tuple(range(N))
    first = AdmissiblePair(N**n0, digits, tuple(N ** (n0 - 1) * l for l in digits))
    rest = [AdmissiblePair(N, digits, digits) for _ in range(M - 1)]
    return FiniteFamily([first, *rest], name="intermediate-value")
