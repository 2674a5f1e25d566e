"""The symbolic space of index sequences, its shift, cylinders and Bernoulli draws.

Symbols are positive integers.  A sequence is described by a
:class:`SequenceModel`: a finite explicit prefix, a periodic word, or a
seeded i.i.d. draw from a :class:`ProbabilityVector`.  I.i.d. symbols are
counter based (a hash of ``(seed, index)``), so ``symbol_at`` does not depend
on evaluation order and shifting only moves an offset.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import as_fraction

KINDS = ("explicit-prefix", "periodic-word", "iid-bernoulli")
GEOMETRIC_TAIL_MASS = 1e-12


@dataclass(frozen=True)
class ProbabilityVector:
    """Finitely supported probability vector ``(p_1, ..., p_M)`` with exact entries."""

    entries: tuple[Fraction, ...]

    def __post_init__(self):
        entries = tuple(as_fraction(p) for p in self.entries)
        if not entries:
            raise ValueError("probability vector must be nonempty")
        if any(p < 0 for p in entries):
            raise ValueError("probabilities must be nonnegative")
        if sum(entries) != 1:
            raise ValueError(f"probabilities sum to {sum(entries)}, not 1")
        object.__setattr__(self, "entries", entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @property
    def positive(self) -> bool:
        return all(p > 0 for p in self.entries)

    @classmethod
    def geometric(cls, r, tail_mass: float = GEOMETRIC_TAIL_MASS) -> "ProbabilityVector":
        """``p_j = (1 - r) r^(j-1)`` cut where the remaining mass drops below
        ``tail_mass``; the last entry absorbs the remainder so the sum is 1."""
        r = as_fraction(r)
        if not 0 < r < 1:
            raise ValueError("geometric ratio must lie in (0, 1)")
        entries, tail = [], Fraction(1)
        while tail >= tail_mass:
            p = tail * (1 - r)
            entries.append(p)
            tail -= p
        entries[-1] += tail
        return cls(tuple(entries))

    def cumulative(self) -> np.ndarray:
        return np.cumsum([float(p) for p in self.entries])


def _splitmix64(x: np.ndarray) -> np.ndarray:
    x = x + np.uint64(0x9E3779B97F4A7C15)
    x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return x ^ (x >> np.uint64(31))


def counter_uniforms(seed: int, indices) -> np.ndarray:
    """Uniforms in [0, 1) determined only by ``(seed, index)``."""
    idx = np.asarray(indices, dtype=np.uint64)
    with np.errstate(over="ignore"):
        key = _splitmix64(np.array([seed % 2**64], dtype=np.uint64))
        bits = _splitmix64(idx ^ key)
    return (bits >> np.uint64(11)).astype(np.float64) * 2.0**-53


@dataclass(frozen=True)
class SequenceModel:
    """A point of the sequence space, given constructively.

    ``offset`` counts how many times the sequence has been shifted, which is
    how i.i.d. models represent ``sigma^k(omega)``.
    """

    kind: str
    word: tuple[int, ...] = ()
    prob: ProbabilityVector | None = None
    seed: int | None = None
    alphabet_bound: int | None = None
    offset: int = field(default=0)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown sequence kind {self.kind!r}")
        word = tuple(int(s) for s in self.word)
        object.__setattr__(self, "word", word)
        if any(s < 1 for s in word):
            raise ValueError("symbols must be positive integers")
        if self.kind in ("explicit-prefix", "periodic-word") and not word:
            raise ValueError(f"{self.kind} needs a nonempty word")
        if self.kind == "iid-bernoulli":
            if self.prob is None or self.seed is None:
                raise ValueError("iid-bernoulli needs prob and seed")
            if self.alphabet_bound is not None and len(self.prob) > self.alphabet_bound:
                raise ValueError("probability vector longer than alphabet bound")
        if self.alphabet_bound is not None and word and max(word) > self.alphabet_bound:
            raise ValueError("symbol exceeds alphabet bound")

    @classmethod
    def explicit(cls, word: Sequence[int]) -> "SequenceModel":
        return cls("explicit-prefix", tuple(word))

    @classmethod
    def periodic(cls, word: Sequence[int]) -> "SequenceModel":
        return cls("periodic-word", tuple(word))

    @classmethod
    def iid(cls, prob, seed: int) -> "SequenceModel":
        if not isinstance(prob, ProbabilityVector):
            prob = ProbabilityVector(tuple(prob))
        return cls("iid-bernoulli", prob=prob, seed=int(seed), alphabet_bound=len(prob))

    @property
    def length(self) -> int | None:
        """Number of defined symbols, None when infinite."""
        return len(self.word) if self.kind == "explicit-prefix" else None

    def alphabet(self) -> tuple[int, ...] | None:
        """Symbols that can occur, or None if not known in advance."""
        if self.kind == "iid-bernoulli":
            return tuple(i + 1 for i, p in enumerate(self.prob) if p > 0)
        if self.kind == "periodic-word":
            return tuple(sorted(set(self.word)))
        return None

    def symbols(self, n: int, start: int = 1) -> np.ndarray:
        """Symbols at positions ``start .. start + n - 1`` (1-based)."""
        if start < 1:
            raise IndexError("positions start at 1")
        if n <= 0:
            return np.zeros(0, dtype=np.int64)
        pos = np.arange(start, start + n, dtype=np.int64)
        if self.kind == "explicit-prefix":
            if start + n - 1 > len(self.word):
                raise IndexError(
                    f"position {start + n - 1} beyond explicit prefix of length {len(self.word)}"
                )
            return np.asarray(self.word, dtype=np.int64)[pos - 1]
        if self.kind == "periodic-word":
            return np.asarray(self.word, dtype=np.int64)[(pos - 1) % len(self.word)]
        u = counter_uniforms(self.seed, pos + self.offset)
        idx = np.searchsorted(self.prob.cumulative(), u, side="right")
        # float rounding in the cumulative sum can push u past the last entry
        return np.minimum(idx, len(self.prob) - 1).astype(np.int64) + 1


def symbol_at(model: SequenceModel, k: int) -> int:
    """The k-th symbol (1-based)."""
    if k < 1:
        raise IndexError("positions start at 1")
    return int(model.symbols(1, start=k)[0])


def shift(model: SequenceModel, k: int) -> SequenceModel:
    """Model of ``sigma^k(omega)``."""
    if k < 0:
        raise ValueError("shift steps must be nonnegative")
    if k == 0:
        return model
    if model.kind == "explicit-prefix":
        if k >= len(model.word):
            raise IndexError(f"cannot shift an explicit prefix of length {len(model.word)} by {k}")
        return replace(model, word=model.word[k:])
    if model.kind == "periodic-word":
        r = k % len(model.word)
        return replace(model, word=model.word[r:] + model.word[:r])
    return replace(model, offset=model.offset + k)


def common_prefix_metric(u: Sequence[int], v: Sequence[int]) -> float:
    """``2 ** -|u ^ v|`` where ``|u ^ v|`` is the common initial length.

    With finite data, full agreement over the shorter input gives
    ``2 ** -min(len(u), len(v))``.
    """
    if len(u) == 0 or len(v) == 0:
        raise ValueError("metric needs nonempty prefixes")
    n = 0
    for a, b in zip(u, v):
        if a != b:
            break
        n += 1
    return 2.0 ** -n


def cylinder_probability(prob: ProbabilityVector, word: Sequence[int]) -> Fraction:
    """Bernoulli measure of the cylinder ``[word]``: ``p_{a_1} ... p_{a_k}``."""
    out = Fraction(1)
    for s in word:
        if not 1 <= s <= len(prob):
            raise ValueError(f"symbol {s} outside 1..{len(prob)}")
        out *= prob[s - 1]
    return out


EXPONENT_KINDS = ("constant-one", "explicit-list", "affine")


@dataclass(frozen=True)
class ExponentSequence:
    """Positive integer exponents ``n_k``.

    ``affine`` means ``n_k = a*k + c``.  An explicit list is only defined up
    to its length.
    """

    kind: str = "constant-one"
    values: tuple[int, ...] = ()
    a: int = 0
    c: int = 1

    def __post_init__(self):
        if self.kind not in EXPONENT_KINDS:
            raise ValueError(f"unknown exponent kind {self.kind!r}")
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if self.kind == "explicit-list":
            if not self.values:
                raise ValueError("explicit exponent list must be nonempty")
            if min(self.values) < 1:
                raise ValueError("exponents must be >= 1")
        if self.kind == "affine":
            if self.a < 0 or self.a + self.c < 1:
                raise ValueError("affine exponents must satisfy a >= 0 and a + c >= 1")

    @classmethod
    def affine(cls, a: int, c: int) -> "ExponentSequence":
        return cls("affine", a=a, c=c)

    @classmethod
    def explicit(cls, values: Sequence[int]) -> "ExponentSequence":
        return cls("explicit-list", values=tuple(values))

    def n(self, k: int) -> int:
        if k < 1:
            raise IndexError("exponents are indexed from 1")
        if self.kind == "constant-one":
            return 1
        if self.kind == "explicit-list":
            if k > len(self.values):
                raise IndexError(f"exponent n_{k} beyond explicit list")
            return self.values[k - 1]
        return self.a * k + self.c

    def shifted(self, k: int) -> "ExponentSequence":
        """Exponents ``{n_{k+l}}_{l >= 1}``."""
        if k == 0 or self.kind == "constant-one":
            return self
        if self.kind == "explicit-list":
            return ExponentSequence.explicit(self.values[k:])
        return ExponentSequence.affine(self.a, self.c + self.a * k)

    @property
    def is_constant_one(self) -> bool:
        if self.kind == "constant-one":
            return True
        if self.kind == "affine":
            return self.a == 0 and self.c == 1
        return False

    @property
    def unbounded(self) -> bool | None:
        """True/False when known, None for a finite explicit list."""
        if self.kind == "affine":
            return self.a > 0
        if self.kind == "constant-one":
            return False
        return None
