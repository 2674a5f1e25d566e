"""Exact digit systems and finite atomic measures.

Atom positions and weights are kept as exact rationals; floating point only
enters when a Fourier transform is evaluated.  A measure is stored on a
common lattice ``numerators / denom`` with integer weight counts over a
common weight denominator, which keeps convolution cheap and collision
detection exact.
"""

from __future__ import annotations

import csv
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

DEFAULT_ATOM_CAP = 2**22


class AtomOverflowError(RuntimeError):
    """Raised when an exact construction would exceed the atom cap."""


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction (no floats)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return Fraction(int(value[0]), int(value[1]))
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def _digit_tuple(B: Iterable[int]) -> tuple[int, ...]:
    digits = []
    for b in B:
        if isinstance(b, bool) or not isinstance(b, int):
            raise TypeError(f"digits must be integers, got {b!r}")
        if b < 0:
            raise ValueError(f"digits must be nonnegative, got {b}")
        digits.append(b)
    if not digits:
        raise ValueError("digit set must be nonempty")
    if len(set(digits)) != len(digits):
        raise ValueError(f"digits must be distinct: {digits}")
    return tuple(sorted(digits))


@dataclass(frozen=True)
class DigitPair:
    """A scale ``N >= 2`` with a finite set of nonnegative integer digits.

    No admissibility is implied; see :class:`AdmissiblePair`.
    """

    N: int
    B: tuple[int, ...]

    def __post_init__(self):
        if isinstance(self.N, bool) or not isinstance(self.N, int):
            raise TypeError(f"N must be an integer, got {self.N!r}")
        if self.N < 2:
            raise ValueError(f"N must be >= 2, got {self.N}")
        object.__setattr__(self, "B", _digit_tuple(self.B))

    @property
    def card(self) -> int:
        return len(self.B)

    @property
    def max_digit(self) -> int:
        return self.B[-1]


@dataclass(frozen=True)
class AdmissiblePair(DigitPair):
    """A digit system ``(N, B)`` with ``#B >= 2`` and an optional spectrum set.

    When ``L`` is given, ``(N, B, L)`` must be a Hadamard triple: the
    matrix ``exp(-2 pi i b l / N) / sqrt(#B)`` is unitary (checked to 1e-12).
    """

    L: tuple[int, ...] | None = None

    def __post_init__(self):
        super().__post_init__()
        if len(self.B) < 2:
            raise ValueError("an admissible pair needs at least two digits")
        if self.L is None:
            return
        L = tuple(int(l) for l in self.L)
        if len(set(L)) != len(L):
            raise ValueError(f"spectrum set elements must be distinct: {L}")
        object.__setattr__(self, "L", tuple(sorted(L)))
        from .admissibility import verify_hadamard

        ok, violation = verify_hadamard(self.N, self.B, self.L)
        if not ok:
            raise ValueError(
                f"(N={self.N}, B={self.B}, L={self.L}) is not a Hadamard triple "
                f"(max violation {violation:.3e})"
            )

    def with_spectrum(self, L: Sequence[int]) -> "AdmissiblePair":
        return AdmissiblePair(self.N, self.B, tuple(L))


@dataclass(frozen=True)
class ScaleMap:
    """The affine map ``x -> a*x + b`` with rational ``a != 0``."""

    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", as_fraction(self.a))
        object.__setattr__(self, "b", as_fraction(self.b))
        if self.a == 0:
            raise ValueError("scale map needs a != 0")

    def __call__(self, x):
        return self.a * x + self.b

    def inverse(self) -> "ScaleMap":
        return ScaleMap(1 / self.a, -self.b / self.a)


@dataclass(frozen=True, eq=True)
class DiscreteMeasure:
    """Finite probability measure with exact rational atoms.

    Stored canonically: atoms are ``numerators[i] / denom`` sorted ascending
    and pairwise distinct, weights are ``counts[i] / total`` with every count
    positive.  Both fractions are fully reduced so equality is structural.
    Use :meth:`from_atoms` to build one from arbitrary rationals.
    """

    denom: int
    numerators: tuple[int, ...]
    counts: tuple[int, ...]
    total: int = field(default=1)

    def __post_init__(self):
        if self.denom <= 0 or self.total <= 0:
            raise ValueError("denominators must be positive")
        if len(self.numerators) != len(self.counts) or not self.numerators:
            raise ValueError("need matching, nonempty atom and weight lists")
        if any(c <= 0 for c in self.counts):
            raise ValueError("weights must be positive")
        if sum(self.counts) != self.total:
            raise ValueError("weights must sum exactly to 1")
        if any(a >= b for a, b in zip(self.numerators, self.numerators[1:])):
            raise ValueError("atoms must be sorted and distinct")
        # reduce both lattices so that equal measures compare equal
        g = math.gcd(self.denom, *self.numerators)
        if g > 1:
            object.__setattr__(self, "denom", self.denom // g)
            object.__setattr__(
                self, "numerators", tuple(n // g for n in self.numerators)
            )
        h = math.gcd(self.total, *self.counts)
        if h > 1:
            object.__setattr__(self, "total", self.total // h)
            object.__setattr__(self, "counts", tuple(c // h for c in self.counts))

    @classmethod
    def _from_lattice(cls, denom: int, acc: dict[int, int], total: int):
        keys = sorted(acc)
        return cls(denom, tuple(keys), tuple(acc[k] for k in keys), total)

    @classmethod
    def from_atoms(cls, atoms: Sequence, weights: Sequence) -> "DiscreteMeasure":
        """Build from rational atoms and weights, merging repeated atoms."""
        atoms = [as_fraction(a) for a in atoms]
        weights = [as_fraction(w) for w in weights]
        if len(atoms) != len(weights):
            raise ValueError("atoms and weights differ in length")
        if not atoms:
            raise ValueError("a probability measure needs at least one atom")
        if any(w <= 0 for w in weights):
            raise ValueError("weights must be positive")
        denom = math.lcm(*(a.denominator for a in atoms))
        total = math.lcm(*(w.denominator for w in weights))
        acc: dict[int, int] = defaultdict(int)
        for a, w in zip(atoms, weights):
            acc[a.numerator * (denom // a.denominator)] += w.numerator * (
                total // w.denominator
            )
        return cls._from_lattice(denom, acc, total)

    @property
    def atoms(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, self.denom) for n in self.numerators)

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.total) for c in self.counts)

    @property
    def mass(self) -> Fraction:
        return Fraction(sum(self.counts), self.total)

    def __len__(self) -> int:
        return len(self.numerators)

    def items(self):
        return zip(self.atoms, self.weights)

    def float_atoms(self):
        return [n / self.denom for n in self.numerators]

    def float_weights(self):
        return [c / self.total for c in self.counts]


def dirac_uniform(B: Iterable[int], denom=1) -> DiscreteMeasure:
    """Uniform measure on ``{b / denom : b in B}``."""
    digits = list(B)
    if not digits:
        raise ValueError("digit set must be nonempty")
    d = as_fraction(denom)
    if d <= 0:
        raise ValueError("denominator must be positive")
    return DiscreteMeasure.from_atoms(
        [Fraction(b) / d for b in digits], [Fraction(1, len(digits))] * len(digits)
    )


def convolve(mu: DiscreteMeasure, nu: DiscreteMeasure,
             cap: int = DEFAULT_ATOM_CAP) -> DiscreteMeasure:
    """Exact convolution; atoms landing on the same point are merged.

    ``cap`` bounds ``len(mu) * len(nu)`` before any work is done.
    """
    if len(mu) * len(nu) > cap:
        raise AtomOverflowError(
            f"convolution of {len(mu)} x {len(nu)} atoms exceeds cap {cap}"
        )
    denom = math.lcm(mu.denom, nu.denom)
    fm, fn = denom // mu.denom, denom // nu.denom
    acc: dict[int, int] = defaultdict(int)
    for x, cx in zip(mu.numerators, mu.counts):
        x *= fm
        for y, cy in zip(nu.numerators, nu.counts):
            acc[x + y * fn] += cx * cy
    return DiscreteMeasure._from_lattice(denom, acc, mu.total * nu.total)


def pushforward(mu: DiscreteMeasure, T: ScaleMap) -> DiscreteMeasure:
    """Image measure ``mu o T^{-1}``: atoms ``x -> a*x + b``, weights kept."""
    return DiscreteMeasure.from_atoms([T(x) for x in mu.atoms], mu.weights)


CSV_FIELDS = ("atom_numerator", "atom_denominator",
              "weight_numerator", "weight_denominator")


def measure_rows(mu: DiscreteMeasure):
    for x, w in mu.items():
        yield (x.numerator, x.denominator, w.numerator, w.denominator)


def write_measure_csv(mu: DiscreteMeasure, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    writer.writerows(measure_rows(mu))


def read_measure_csv(fh) -> DiscreteMeasure:
    rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    if rows and tuple(rows[0]) == CSV_FIELDS:
        rows = rows[1:]
    atoms = [Fraction(int(r[0]), int(r[1])) for r in rows]
    weights = [Fraction(int(r[2]), int(r[3])) for r in rows]
    return DiscreteMeasure.from_atoms(atoms, weights)
