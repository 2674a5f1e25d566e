"""Tower spectra, orthogonality certificates and the Parseval functional.

For a level-k measure with Hadamard spectrum sets ``L_j`` the tower

    Lambda_k = { sum_j D_{j-1} N_{wj}^{n_j - 1} l_j : l_j in L_{wj} },   D_0 = 1,

is orthogonal: for two distinct elements, at the first level m where their
digits differ, ``(lambda - lambda') / D_m = (l - l') / N_{wm}`` mod 1, which is
a zero of the m-th mask.  Completeness at finite level is certified by
``Q(xi) = sum_lambda |mu_k^(xi + lambda)|^2 == 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from ._cyclotomic import root_sum_vanishes
from .core import AdmissiblePair, DiscreteMeasure, as_fraction
from .transform import PairSystem, ft_truncated, measure_ft

DEFAULT_GRID_POINTS = 1024


class TowerError(ValueError):
    pass


@dataclass(frozen=True)
class SpectrumSet:
    """Finite candidate spectrum with its level and accumulated scale factor."""

    elements: tuple[Fraction, ...]
    level: int = 0
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        elems = tuple(sorted(as_fraction(e) for e in self.elements))
        if len(set(elems)) != len(elems):
            raise ValueError("spectrum elements must be distinct")
        object.__setattr__(self, "elements", elems)
        object.__setattr__(self, "scale", as_fraction(self.scale))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def is_integral(self) -> bool:
        return all(e.denominator == 1 for e in self.elements)

    def integers(self) -> tuple[int, ...]:
        if not self.is_integral:
            raise ValueError("spectrum has non-integer elements")
        return tuple(int(e) for e in self.elements)


def tower_spectrum(sys: PairSystem, k: int) -> SpectrumSet:
    """Level-k tower built from the certified ``L`` of each pair used.

    Raises:
        TowerError: if a pair has no spectrum set or two digit strings
            produce the same element.
    """
    if k < 1:
        raise ValueError("level must be >= 1")
    elems = [0]
    D_prev = 1
    for j, (pair, scale, D) in enumerate(sys.factors(k), start=1):
        L = getattr(pair, "L", None)
        if L is None:
            raise TowerError(f"pair at level {j} (N={pair.N}) has no certified spectrum set")
        weight = D_prev * (scale // pair.N)  # D_{j-1} * N^(n_j - 1)
        elems = [e + weight * l for e in elems for l in L]
        D_prev = D
    if len(set(elems)) != len(elems):
        raise TowerError("tower has colliding elements")
    return SpectrumSet(tuple(elems), level=k)


def scale_spectrum(spec: SpectrumSet, a) -> SpectrumSet:
    """``a * Lambda`` with the scale factor recorded."""
    a = as_fraction(a)
    if a == 0:
        raise ValueError("scale must be nonzero")
    return SpectrumSet(tuple(a * e for e in spec.elements), spec.level, spec.scale * a)


@dataclass
class OrthogonalityReport:
    size: int
    ordered_pairs: int
    max_violation: float
    tol: float
    violations: list[tuple[Fraction, Fraction, float]] = field(default_factory=list)
    # differences whose vanishing is not certified by an exact mask zero
    unwitnessed: list[Fraction] = field(default_factory=list)

    @property
    def orthogonal(self) -> bool:
        return not self.violations

    @property
    def structurally_certified(self) -> bool:
        return not self.unwitnessed


def _witness_level(factors, d: Fraction) -> int | None:
    for m, (pair, _, D) in enumerate(factors, start=1):
        if root_sum_vanishes(pair.B, d / D):
            return m
    return None


def orthogonality_check(sys: PairSystem, spec: SpectrumSet, k: int,
                        tol: float = 1e-12) -> OrthogonalityReport:
    """Check ``|mu_k^(lambda - lambda')| <= tol`` for all distinct pairs.

    Each difference also gets a structural witness: a level m whose mask
    vanishes exactly (root-of-unity test) at ``(lambda - lambda') / D_m``.
    """
    elems = list(spec.elements)
    factors = sys.factors(k)
    n = len(elems)
    report = OrthogonalityReport(size=n, ordered_pairs=n * (n - 1),
                                 max_violation=0.0, tol=tol)
    # |mu^(-d)| = |mu^(d)|, so each unordered difference is evaluated once
    seen: dict[Fraction, float] = {}
    for i in range(n):
        for j in range(i + 1, n):
            d = elems[j] - elems[i]
            if d not in seen:
                seen[d] = abs(ft_truncated(sys, k, d))
                if _witness_level(factors, d) is None:
                    report.unwitnessed.append(d)
            v = seen[d]
            report.max_violation = max(report.max_violation, v)
            if v > tol:
                report.violations.append((elems[i], elems[j], v))
    return report


def uniform_grid(points: int = DEFAULT_GRID_POINTS, lo: float = 0.0,
                 hi: float = 1.0) -> np.ndarray:
    """``points`` equispaced values in ``[lo, hi)``."""
    return lo + (hi - lo) * np.arange(points) / points


@dataclass
class ParsevalResult:
    xi: np.ndarray
    q: np.ndarray

    @property
    def q_min(self) -> float:
        return float(self.q.min()) if self.q.size else 0.0

    @property
    def q_max(self) -> float:
        return float(self.q.max()) if self.q.size else 0.0

    def complete(self, tol: float = 1e-9) -> bool:
        return bool(self.q.size) and bool(np.all(np.abs(self.q - 1) <= tol))

    def rows(self):
        return zip(self.xi.tolist(), self.q.tolist())


def parseval_values(ft: Callable, elements: Iterable, xi: np.ndarray) -> ParsevalResult:
    """``Q(xi) = sum_lambda |ft(xi + lambda)|^2`` for any transform ``ft``."""
    xi = np.asarray(xi, dtype=float)
    q = np.zeros(xi.shape)
    for lam in elements:
        q += np.abs(ft(xi + float(lam))) ** 2
    return ParsevalResult(xi, q)


def parseval_Q(sys: PairSystem, spec: SpectrumSet, k: int,
               xi_grid: Sequence[float] | None = None) -> ParsevalResult:
    """Parseval functional of the level-k measure over ``spec``.

    The default grid is 1024 equispaced points in [0, 1).
    """
    grid = uniform_grid() if xi_grid is None else np.asarray(xi_grid, dtype=float)
    return parseval_values(lambda x: ft_truncated(sys, k, x), spec.elements, grid)


def parseval_Q_measure(mu: DiscreteMeasure, spec: SpectrumSet,
                       xi_grid: Sequence[float] | None = None) -> ParsevalResult:
    """Parseval functional of an explicit atomic measure (direct atom sums)."""
    grid = uniform_grid() if xi_grid is None else np.asarray(xi_grid, dtype=float)
    return parseval_values(lambda x: measure_ft(mu, x), spec.elements, grid)


def multiplier_survey(sys: PairSystem, spec: SpectrumSet, k: int,
                      multipliers: Sequence[int],
                      xi_grid: Sequence[float] | None = None) -> list[dict]:
    """Descriptive Q statistics for ``c * Lambda_k`` (no pass/fail)."""
    out = []
    for c in multipliers:
        scaled = scale_spectrum(spec, c)
        orth = orthogonality_check(sys, scaled, k)
        res = parseval_Q(sys, scaled, k, xi_grid)
        out.append({"multiplier": c, "orthogonality_max_violation": orth.max_violation,
                    "Q_min": res.q_min, "Q_max": res.q_max})
    return out


def with_spectrum_sets(pairs: Sequence, finder) -> list[AdmissiblePair]:
    """Attach a spectrum set to every pair lacking one (via ``finder(N, B)``)."""
    out = []
    for p in pairs:
        if getattr(p, "L", None) is not None:
            out.append(p)
            continue
        L = finder(p.N, p.B)
        if L is None:
            raise TowerError(f"(N={p.N}, B={p.B}) has no spectrum set")
        out.append(AdmissiblePair(p.N, p.B, L))
    return out
