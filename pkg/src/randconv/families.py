"""Indexed families ``{(N_j, B_j)}`` of digit systems.

A family is either finite (the alphabet of a finite symbolic space),
periodic in its index, or given by a rule.  Rule families may carry a
:class:`FamilyCertificate` recording closed-form facts about their tails;
those are the only infinite families on which the criteria issue decided
verdicts.  Digit statistics are exposed separately from the digit sets so
that families with astronomically large digit sets can still be inspected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .core import AdmissiblePair, DigitPair


@dataclass(frozen=True)
class DigitStats:
    N: int
    card: int
    max_digit: int
    overflow: int  # digits >= N
    gcd: int  # gcd of the digits (0 for B = {0})


def stats_of(pair: DigitPair) -> DigitStats:
    return DigitStats(
        N=pair.N,
        card=len(pair.B),
        max_digit=pair.B[-1],
        overflow=sum(1 for b in pair.B if b >= pair.N),
        gcd=math.gcd(*pair.B),
    )


@dataclass(frozen=True)
class FamilyCertificate:
    """Closed-form tail facts for an infinite rule family.

    rbc_tail: ``K -> q`` with ``sum_{k>K} #B_{k,2}/#B_k <= q``.
    growth_bound: ``sup_k log max B_k / log N_k <= growth_bound``.
    ratio_unbounded: ``sup_k max B_k / N_k`` is infinite.
    identity_support_floor: every term ``max B_k / (N_1...N_k)`` along the
        sequence ``1 2 3 ...`` is at least this, so the supports are unbounded.
    """

    rbc_tail: Callable[[int], Fraction] | None = None
    rbc_divergent: bool = False
    growth_bound: Fraction | None = None
    growth_unbounded: bool = False
    ratio_unbounded: bool = False
    identity_support_floor: Fraction | None = None
    note: str = ""


class PairFamily:
    """Base class; subclasses define :meth:`pair` and :attr:`size`."""

    size: int | None = None  # None: infinite
    period: int | None = None
    certificate: FamilyCertificate | None = None
    max_depth: int | None = None  # largest index with feasible exact arithmetic
    name: str = "family"

    def pair(self, j: int) -> DigitPair:
        raise NotImplementedError

    def stats(self, j: int) -> DigitStats:
        return stats_of(self.pair(j))

    def _check_index(self, j: int):
        if j < 1:
            raise IndexError("family indices start at 1")
        if self.size is not None and j > self.size:
            raise IndexError(f"index {j} outside family of size {self.size}")

    @property
    def is_finite(self) -> bool:
        return self.size is not None

    def distinct_indices(self) -> range | None:
        """Indices covering every distinct pair, when there are finitely many."""
        if self.size is not None:
            return range(1, self.size + 1)
        if self.period is not None:
            return range(1, self.period + 1)
        return None

    def depth(self, K: int) -> int:
        K = K if self.size is None else min(K, self.size)
        return K if self.max_depth is None else min(K, self.max_depth)


class FiniteFamily(PairFamily):
    """Finitely many pairs indexed ``1..M``."""

    def __init__(self, pairs: Sequence[DigitPair], name: str = "finite"):
        if not pairs:
            raise ValueError("a family needs at least one pair")
        self.pairs = tuple(pairs)
        self.size = len(self.pairs)
        self.name = name

    def pair(self, j: int) -> DigitPair:
        self._check_index(j)
        return self.pairs[j - 1]

    def __repr__(self):
        return f"FiniteFamily({list(self.pairs)!r})"


class PeriodicFamily(PairFamily):
    """Infinite family repeating ``pairs`` in index order (constant if one pair)."""

    def __init__(self, pairs: Sequence[DigitPair], name: str = "periodic"):
        if not pairs:
            raise ValueError("a family needs at least one pair")
        self.pairs = tuple(pairs)
        self.period = len(self.pairs)
        self.name = name

    def pair(self, j: int) -> DigitPair:
        self._check_index(j)
        return self.pairs[(j - 1) % self.period]


class RuleFamily(PairFamily):
    """Infinite family ``j -> pair`` with optional closed-form statistics."""

    def __init__(self, rule: Callable[[int], DigitPair],
                 stats: Callable[[int], DigitStats] | None = None,
                 certificate: FamilyCertificate | None = None,
                 max_depth: int | None = None, name: str = "rule"):
        self.rule = rule
        self._stats = stats
        self.certificate = certificate
        self.max_depth = max_depth
        self.name = name

    def pair(self, j: int) -> DigitPair:
        self._check_index(j)
        return self.rule(j)

    def stats(self, j: int) -> DigitStats:
        self._check_index(j)
        if self._stats is not None:
            return self._stats(j)
        return stats_of(self.rule(j))


# -- a tight family without common compact support ------------------------

TNC_MAX_DEPTH = 17
TNC_MAX_MATERIALISED = 1 << 16


def _tnc_stats(k: int) -> DigitStats:
    m = 2 ** (2 ** (k - 1))  # #B_k, and N_k = m^2
    return DigitStats(N=m * m, card=m, max_digit=m**4 - 1, overflow=1,
                      gcd=15 if k == 1 else 1)


def _tnc_pair(k: int) -> AdmissiblePair:
    m = 2 ** (2 ** (k - 1))
    if m > TNC_MAX_MATERIALISED:
        raise OverflowError(f"digit set of size {m} is too large to materialise")
    N = m * m
    B = tuple(range(m - 1)) + (m**4 - 1,)
    # B is a complete residue system mod m (m^4 - 1 = -1 mod m), so m*{0..m-1} works
    return AdmissiblePair(N, B, tuple(m * i for i in range(m)))


def _tnc_rbc_tail(K: int) -> Fraction:
    # terms 2^(-2^(k-1)) square at each step, so the tail is at most twice its head
    return Fraction(2, 2 ** (2**K))


def tnc_family() -> RuleFamily:
    """``N_k = 4^(2^(k-1))``, ``B_k = {0, 1, ..., 2^(2^(k-1)) - 2, 4^(2^k) - 1}``.

    Satisfies the remainder bounded condition with ``log max B_k / log N_k < 2``
    while ``max B_k / N_k`` is unbounded; along ``1 2 3 ...`` every support
    increment ``(4^(2^k) - 1) / 4^(2^k - 1)`` exceeds 3.
    """
    cert = FamilyCertificate(
        rbc_tail=_tnc_rbc_tail,
        growth_bound=Fraction(2),
        ratio_unbounded=True,
        identity_support_floor=Fraction(3),
        note="terms 2^-(2^(k-1)); log(4^(2^k)-1)/log(4^(2^(k-1))) < 2; "
             "max B_k / N_k = 4^(2^(k-1)) - 4^(-2^(k-1))",
    )
    return RuleFamily(_tnc_pair, stats=_tnc_stats, certificate=cert,
                      max_depth=TNC_MAX_DEPTH, name="tight-noncompact")


def family_from_pairs(pairs: Sequence[DigitPair], kind: str = "finite") -> PairFamily:
    if kind == "finite":
        return FiniteFamily(pairs)
    if kind == "periodic":
        return PeriodicFamily(pairs)
    raise ValueError(f"unknown family kind {kind!r}")
