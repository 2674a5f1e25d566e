"""Hadamard triple verification and search, gcd normalisation of digits."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

DEFAULT_TOL = 1e-12
MAX_SEARCH_N = 64


class SearchTooLargeError(ValueError):
    pass


def _phase_matrix(N: int, B: Sequence[int], L: Sequence[int]) -> np.ndarray:
    # residues are reduced exactly before going to floating point
    res = np.array([[(b * l) % N for l in L] for b in B], dtype=float)
    return np.exp(-2j * np.pi * res / N)


def hadamard_violation(N: int, B: Sequence[int], L: Sequence[int]) -> float:
    """Largest normalised off-diagonal Gram entry ``|sum_b e(b(l-l')/N)| / #B``."""
    if len(L) < 2:
        return 0.0
    H = _phase_matrix(N, B, L)
    gram = H.conj().T @ H
    np.fill_diagonal(gram, 0)
    return float(np.abs(gram).max()) / len(B)


def verify_hadamard(N: int, B: Sequence[int], L: Sequence[int],
                    tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Check that ``(N, B, L)`` is a Hadamard triple.

    Returns ``(ok, max_violation)`` where ``max_violation`` is the largest
    ``|sum_b exp(-2 pi i b (l - l') / N)| / #B`` over distinct ``l, l'``.

    Raises:
        ValueError: if ``#L != #B``, ``#B < 2`` or ``N < 2``.
    """
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    if len(B) < 2:
        raise ValueError("need #B >= 2")
    if len(L) != len(B):
        raise ValueError(f"size mismatch: #L={len(L)} but #B={len(B)}")
    if len(set(L)) != len(L):
        return False, 1.0
    v = hadamard_violation(N, B, L)
    return v <= tol, v


def find_spectrum_set(N: int, B: Sequence[int],
                      tol: float = DEFAULT_TOL) -> tuple[int, ...] | None:
    """Lexicographically smallest ``L`` in ``{0..N-1}`` with ``0 in L``.

    The mask is 1-periodic in ``l/N`` for integer digits, so residues mod N
    cover every candidate, and translating ``L`` changes nothing, which pins
    ``0 in L``.  Returns None when ``(N, B)`` is not admissible.
    """
    if N < 2 or len(B) < 2:
        raise ValueError("need N >= 2 and #B >= 2")
    if N > MAX_SEARCH_N:
        raise SearchTooLargeError(
            f"search too large: N={N} exceeds {MAX_SEARCH_N}"
        )
    m = len(B)
    if m > N:
        return None
    # pairwise orthogonality only depends on differences, so prune on them
    zero = [False] * N
    for d in range(1, N):
        s = sum(np.exp(-2j * np.pi * ((b * d) % N) / N) for b in B)
        zero[d] = abs(s) <= tol * m

    def extend(chosen: list[int], start: int):
        if len(chosen) == m:
            return tuple(chosen)
        for l in range(start, N - (m - len(chosen)) + 1):
            if all(zero[l - c] for c in chosen):
                found = extend(chosen + [l], l + 1)
                if found:
                    return found
        return None

    return extend([0], 1)


def rescale_pair(N: int, B: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Divide the digits by ``d = gcd(B \\ {0})``.

    Returns ``(d, B / d)``; ``N`` is left alone, as in the rescaling route
    for digit families with a common factor.
    """
    if 0 not in B:
        raise ValueError("rescaling expects 0 in B")
    nonzero = [b for b in B if b != 0]
    if not nonzero:
        raise ValueError("gcd undefined for B = {0}")
    d = math.gcd(*nonzero)
    return d, tuple(sorted(b // d for b in B))

