"""Sample-path diagnostics: symbol frequencies and recurrence to a target word."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .sequence_space import SequenceModel


def birkhoff_frequencies(model: SequenceModel, n: int,
                         alphabet_size: int | None = None) -> tuple[Fraction, ...]:
    """Empirical frequencies ``#{i <= n : w_i = s} / n`` for ``s = 1..M``.

    ``M`` defaults to the model's alphabet bound, else the largest symbol seen.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    syms = model.symbols(n)
    M = alphabet_size or model.alphabet_bound or int(syms.max())
    counts = np.bincount(syms, minlength=M + 1)[1:]
    return tuple(Fraction(int(c), n) for c in counts)


@dataclass
class RecurrenceResult:
    times: list[int]
    depth_requested: int
    horizon: int
    matched_prefixes: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def exhausted(self) -> bool:
        """True when the horizon ran out before every depth was matched."""
        return len(self.times) < self.depth_requested


def recurrence_times(model: SequenceModel, target: Sequence[int],
                     horizon: int) -> RecurrenceResult:
    """Strictly increasing ``k_1 < k_2 < ...`` with ``sigma^{k_j}(w)`` starting
    with ``target[:j]``, so that ``d(sigma^{k_j}(w), target) <= 2^-j``.

    Each ``k_j`` is the first admissible shift after ``k_{j-1}`` whose window
    lies within the first ``horizon`` symbols.  The search stops at the first
    depth with no match.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    target = [int(a) for a in target]
    if model.length is not None:
        horizon = min(horizon, model.length)
    w = model.symbols(horizon)
    res = RecurrenceResult([], len(target), horizon)
    prev = -1
    for j in range(1, len(target) + 1):
        n_windows = horizon - j + 1
        if n_windows <= prev + 1:
            break
        hit = np.ones(n_windows, dtype=bool)
        for i in range(j):
            hit &= w[i:i + n_windows] == target[i]
        hit[:prev + 1] = False
        found = np.flatnonzero(hit)
        if found.size == 0:
            break
        prev = int(found[0])
        res.times.append(prev)
        res.matched_prefixes.append(tuple(int(s) for s in w[prev:prev + j]))
    return res
