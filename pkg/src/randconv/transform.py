"""Truncated random convolutions and their Fourier transforms.

For a family ``{(N_j, B_j)}``, a symbol sequence ``omega`` and exponents
``n``, level ``k`` is

    mu_k = delta_{B_{w1} / D_1} * ... * delta_{B_{wk} / D_k},
    D_j = N_{w1}^{n_1} ... N_{wj}^{n_j},

and its Fourier transform is the product of masks
``m_B(xi) = (1/#B) sum_b exp(-2 pi i b xi)`` evaluated at ``xi / D_j``.

Real-valued frequencies go through numpy.  Exact rationals (``int`` or
``Fraction``) take a second path that reduces every phase mod 1 before
rounding and returns an exact ``0j`` at certified mask zeros.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, replace
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import numpy as np

from ._cyclotomic import root_sum_vanishes
from .core import DEFAULT_ATOM_CAP, AtomOverflowError, DigitPair, DiscreteMeasure
from .families import PairFamily
from .sequence_space import ExponentSequence, SequenceModel, shift


@dataclass(frozen=True)
class PairSystem:
    """A family of pairs, the sequence choosing from it, and the exponents."""

    family: PairFamily
    model: SequenceModel
    exponents: ExponentSequence = ExponentSequence()

    def __post_init__(self):
        alphabet = self.model.alphabet()
        if alphabet is None and self.model.length is not None:
            alphabet = tuple(sorted(set(self.model.word)))
        if alphabet is not None and self.family.size is not None:
            bad = [s for s in alphabet if s > self.family.size]
            if bad:
                raise ValueError(f"symbols {bad} do not index a pair (family size {self.family.size})")

    def pairs(self, k: int) -> list[DigitPair]:
        return [self.family.pair(int(s)) for s in self.model.symbols(k)]

    def factors(self, k: int) -> list[tuple[DigitPair, int, int]]:
        """``(pair, N^n, D)`` for levels ``1..k``."""
        out, D = [], 1
        for j, pair in enumerate(self.pairs(k), start=1):
            scale = pair.N ** self.exponents.n(j)
            D *= scale
            out.append((pair, scale, D))
        return out

    def scales(self, k: int) -> list[int]:
        return [D for _, _, D in self.factors(k)]

    def tail(self, k: int) -> "PairSystem":
        """System of the restarted tail: shifted sequence and exponents."""
        return replace(self, model=shift(self.model, k),
                       exponents=self.exponents.shifted(k))


def truncate(sys: PairSystem, k: int, cap: int = DEFAULT_ATOM_CAP) -> DiscreteMeasure:
    """Exact level-k measure with colliding atoms merged.

    Raises:
        AtomOverflowError: if the product of digit counts exceeds ``cap``.
    """
    if k < 1:
        raise ValueError("level must be >= 1")
    factors = sys.factors(k)
    if math.prod(len(p.B) for p, _, _ in factors) > cap:
        raise AtomOverflowError(f"level {k} would exceed the atom cap {cap}")
    acc = {0: 1}
    total = 1
    for pair, scale, _ in factors:
        nxt: dict[int, int] = defaultdict(int)
        for x, c in acc.items():
            x *= scale
            for b in pair.B:
                nxt[x + b] += c
        acc, total = nxt, total * len(pair.B)
    return DiscreteMeasure._from_lattice(factors[-1][2], acc, total)


def _is_exact(xi) -> bool:
    return isinstance(xi, Rational) and not isinstance(xi, bool)


def mask_eval(B: Sequence[int], xi):
    """``(1/#B) sum_b exp(-2 pi i b xi)``.

    ``xi`` may be a float, a numpy array, or an exact rational; the latter
    reduces ``b*xi`` mod 1 exactly and returns ``0j`` on exact zeros.
    """
    B = list(B)
    if not B:
        raise ValueError("digit set must be nonempty")
    if _is_exact(xi):
        return _mask_exact(B, Fraction(xi))
    x = np.asarray(xi, dtype=float)
    phase = np.multiply.outer(x, np.asarray(B, dtype=float))
    out = np.exp(-2j * np.pi * phase).mean(axis=-1)
    return complex(out) if out.ndim == 0 else out


def _mask_exact(B: list[int], xi: Fraction) -> complex:
    q = xi.denominator
    if q == 1:
        return 1 + 0j
    if root_sum_vanishes(B, xi):
        return 0j
    phases = np.array([((b * xi.numerator) % q) / q for b in B])
    return complex(np.exp(-2j * np.pi * phases).mean())


def _level_coeffs(pair: DigitPair, D: int) -> np.ndarray:
    return np.array([float(Fraction(b, D)) for b in pair.B])


def ft_truncated(sys: PairSystem, k: int, xi):
    """Fourier transform of the level-k measure as a product of k masks.

    Cost is ``O(k * sum #B)`` per frequency, independent of the atom count.
    """
    if k < 1:
        raise ValueError("level must be >= 1")
    factors = sys.factors(k)
    if _is_exact(xi):
        xi = Fraction(xi)
        out = 1 + 0j
        for pair, _, D in factors:
            out *= _mask_exact(list(pair.B), xi / D)
            if out == 0:
                return 0j
        return out
    x = np.asarray(xi, dtype=float)
    out = np.ones(x.shape, dtype=complex)
    for pair, _, D in factors:
        phase = np.multiply.outer(x, _level_coeffs(pair, D))
        out *= np.exp(-2j * np.pi * phase).mean(axis=-1)
    return complex(out) if out.ndim == 0 else out


def measure_ft(mu: DiscreteMeasure, xi):
    """Direct atom sum ``sum_j w_j exp(-2 pi i x_j xi)``."""
    if _is_exact(xi):
        xi = Fraction(xi)
        total = 0j
        for x, w in mu.items():
            r = (x * xi) % 1
            total += float(w) * np.exp(-2j * np.pi * float(r))
        return complex(total)
    x = np.asarray(xi, dtype=float)
    atoms = np.asarray(mu.float_atoms())
    weights = np.asarray(mu.float_weights())
    out = np.exp(-2j * np.pi * np.multiply.outer(x, atoms)) @ weights
    return complex(out) if out.ndim == 0 else out


def tail_measure(sys: PairSystem, k: int, m: int,
                 cap: int = DEFAULT_ATOM_CAP) -> DiscreteMeasure:
    """First ``m`` factors of the tail after level ``k``, rescaled to unit scale."""
    if k < 0 or m < 1:
        raise ValueError("need k >= 0 and m >= 1")
    return truncate(sys.tail(k), m, cap)


def tail_delta0_diagnostic(sys: PairSystem, xi, k_max: int, m: int) -> list[complex]:
    """Transforms of the depth-m tails at ``xi`` for ``k = 1 .. k_max``.

    For unbounded exponents the tails approach the point mass at 0, so the
    values tend to 1; bounded exponents generally keep them away from 1.
    """
    return [complex(ft_truncated(sys.tail(k), m, xi)) for k in range(1, k_max + 1)]
