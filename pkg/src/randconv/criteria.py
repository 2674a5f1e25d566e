"""Three-valued verdicts for existence, tightness and gcd conditions.

A verdict is ``holds`` or ``fails`` only when it is decided analytically:
finitely many distinct pairs, a periodic family, or a rule family carrying
a closed-form :class:`~randconv.families.FamilyCertificate`.  Everything else
is ``inconclusive-at-depth`` with the depth recorded.  Partial sums are exact
rationals summed in index order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .admissibility import rescale_pair
from .families import PairFamily
from .transform import PairSystem

HOLDS = "holds"
FAILS = "fails"
INCONCLUSIVE = "inconclusive-at-depth"

DEFAULT_DEPTH = 64
MAX_EXACT_DIGITS = 4096


@dataclass
class ConditionReport:
    name: str
    values: list = field(default_factory=list)
    verdict: str = INCONCLUSIVE
    depth: int = 0
    witness: dict[str, Any] = field(default_factory=dict)
    route: str = ""

    def __post_init__(self):
        if self.verdict not in (HOLDS, FAILS, INCONCLUSIVE):
            raise ValueError(f"bad verdict {self.verdict!r}")


def _running_max(values):
    out, best = [], None
    for v in values:
        best = v if best is None or v > best else best
        out.append(best)
    return out


def _partial_sums(terms):
    out, s = [], Fraction(0)
    for t in terms:
        s += t
        out.append(s)
    return out


def existence_series(sys: PairSystem, depth: int = DEFAULT_DEPTH) -> ConditionReport:
    """Partial sums of ``sum_k (1/#B_{wk}) sum_b b / (D_k + b)``.

    The level-k measures converge weakly iff this series converges.  Decided
    routes, tried in order:

    * finitely many distinct pairs can occur: each term is at most
      ``max B / D_k`` and ``D_{k+j} >= 2^j D_k``, so the tail after K is at
      most ``max B / D_K``;
    * the family satisfies the remainder bounded condition with bounded
      ``log max B_k / log N_k`` and ``#B_k <= N_k``, which gives existence for
      every sequence.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    report = ConditionReport("existence_series")
    family = sys.family
    K = depth if sys.model.length is None else min(depth, sys.model.length)
    terms, D = [], 1
    for k, s in enumerate(sys.model.symbols(K), start=1):
        s = int(s)
        if family.max_depth is not None and s > family.max_depth:
            report.witness["stopped"] = f"index {s} beyond exact-arithmetic range"
            break
        st = family.stats(s)
        if st.card > MAX_EXACT_DIGITS:
            report.witness["stopped"] = f"digit set of size {st.card} at level {k}"
            break
        D *= st.N ** sys.exponents.n(k)
        B = family.pair(s).B
        terms.append(sum((Fraction(b, D + b) for b in B), Fraction(0)) / len(B))
    report.values = _partial_sums(terms)
    report.depth = len(terms)

    alphabet = sys.model.alphabet()
    idx = alphabet if alphabet is not None else family.distinct_indices()
    if idx is not None:
        report.verdict = HOLDS
        report.route = "finitely many distinct pairs: geometric tail bound"
        if terms:
            maxb = max(family.stats(j).max_digit for j in idx)
            report.witness["upper_bound"] = report.values[-1] + Fraction(maxb, D)
        return report

    rbc = rbc_sum(family, depth)
    growth = growth_sup(family, depth)
    if rbc.verdict == HOLDS and growth.verdict == HOLDS and growth.witness.get("card_le_scale"):
        report.verdict = HOLDS
        report.route = "remainder bounded condition with bounded digit growth (tight family)"
        return report
    report.witness["note"] = "no closed-form tail bound available"
    return report


def rbc_sum(family: PairFamily, depth: int = DEFAULT_DEPTH) -> ConditionReport:
    """Partial sums of ``sum_k #B_{k,2} / #B_k`` with ``B_{k,2} = B_k ∩ [N_k, inf)``."""
    report = ConditionReport("rbc_sum")
    K = family.depth(depth)
    terms = []
    for k in range(1, K + 1):
        st = family.stats(k)
        terms.append(Fraction(st.overflow, st.card))
    report.values = _partial_sums(terms)
    report.depth = K
    if family.size is not None:
        report.verdict, report.route = HOLDS, "finite family: finite sum"
        return report
    if family.period is not None:
        period_terms = [Fraction(family.stats(j).overflow, family.stats(j).card)
                        for j in range(1, family.period + 1)]
        if any(period_terms):
            report.verdict, report.route = FAILS, "periodic family with a nonzero term: divergent"
        else:
            report.verdict, report.route = HOLDS, "periodic family: every term is zero"
        return report
    cert = family.certificate
    if cert is not None and cert.rbc_tail is not None:
        tail = cert.rbc_tail(K)
        report.verdict, report.route = HOLDS, "closed-form tail bound"
        report.witness["tail_bound"] = tail
        report.witness["upper_bound"] = (report.values[-1] if report.values else 0) + tail
    elif cert is not None and cert.rbc_divergent:
        report.verdict, report.route = FAILS, "closed-form divergence"
    return report


def growth_sup(family: PairFamily, depth: int = DEFAULT_DEPTH) -> ConditionReport:
    """Running sup of ``log max B_k / log N_k``, plus the ``#B_k <= N_k`` flag.

    Indices with ``max B_k = 0`` contribute 0.
    """
    report = ConditionReport("growth_sup")
    K = family.depth(depth)
    ratios, card_ok = [], True
    for k in range(1, K + 1):
        st = family.stats(k)
        card_ok = card_ok and st.card <= st.N
        ratios.append(math.log(st.max_digit) / math.log(st.N) if st.max_digit > 0 else 0.0)
    report.values = _running_max(ratios)
    report.depth = K
    report.witness["card_le_scale"] = card_ok
    if family.distinct_indices() is not None:
        report.verdict, report.route = HOLDS, "finitely many distinct pairs"
        report.witness["sup"] = max(report.values) if report.values else 0.0
        return report
    cert = family.certificate
    if cert is not None and cert.growth_bound is not None:
        if report.values and report.values[-1] > cert.growth_bound:
            raise ArithmeticError("certificate contradicted by computed ratios")
        report.verdict, report.route = HOLDS, "closed-form bound"
        report.witness["bound"] = cert.growth_bound
    elif cert is not None and cert.growth_unbounded:
        report.verdict, report.route = FAILS, "closed-form: ratios unbounded"
    return report


def uniform_bound(family: PairFamily, depth: int = DEFAULT_DEPTH) -> ConditionReport:
    """Running sup of ``max B_k / N_k`` (exact)."""
    report = ConditionReport("uniform_bound")
    K = family.depth(depth)
    ratios = [Fraction(family.stats(k).max_digit, family.stats(k).N) for k in range(1, K + 1)]
    report.values = _running_max(ratios)
    report.depth = K
    idx = family.distinct_indices()
    if idx is not None:
        sup = max(Fraction(family.stats(j).max_digit, family.stats(j).N) for j in idx)
        report.verdict, report.route = HOLDS, "finitely many distinct pairs"
        report.witness["sup"] = sup
        return report
    cert = family.certificate
    if cert is not None and cert.ratio_unbounded:
        report.verdict, report.route = FAILS, "closed-form: max B_k / N_k unbounded"
    return report


def gcd_analysis(family: PairFamily, depth: int = DEFAULT_DEPTH) -> ConditionReport:
    """Decide which branch of the gcd dichotomy the digit sets fall in.

    Either every digit shares a factor ``d > 1`` (witness ``d`` and the
    rescaled digit sets ``B / d``), or some finite index set ``I`` has
    ``gcd(union of B_i, i in I) = 1``.  ``I`` is found by running the gcd in
    index order and then dropping indices that are not needed.
    """
    report = ConditionReport("gcd_analysis")
    K = family.depth(depth)
    g, drops, running = 0, [], []
    gcds = {}
    for k in range(1, K + 1):
        gk = family.stats(k).gcd
        gcds[k] = gk
        new = math.gcd(g, gk)
        if new != g:
            drops.append(k)
        g = new
        running.append(g)
        if g == 1:
            break
    report.values = running
    report.depth = len(running)
    if g == 1:
        index_set = list(drops)
        for i in list(index_set):
            trial = [j for j in index_set if j != i]
            if trial and math.gcd(*(gcds[j] for j in trial)) == 1:
                index_set = trial
        report.verdict, report.route = HOLDS, "finite index set with gcd 1"
        report.witness["index_set"] = index_set
        return report
    idx = family.distinct_indices()
    if idx is not None:
        d = math.gcd(*(family.stats(j).gcd for j in idx))
        if d > 1:
            report.verdict, report.route = HOLDS, "common factor: rescale digits by d"
            report.witness["d"] = d
            report.witness["rescaled"] = [list(rescale_pair(family.pair(j).N, family.pair(j).B)[1])
                                          for j in idx]
        return report
    report.witness["running_gcd"] = g
    return report


def support_growth(sys: PairSystem, depth: int) -> ConditionReport:
    """Partial sums of ``max B_{wj} / D_j``: the right end of ``supp mu_k``."""
    report = ConditionReport("support_growth")
    K = depth if sys.model.length is None else min(depth, sys.model.length)
    if sys.family.size is None:
        K = sys.family.depth(K)
    terms, D = [], 1
    for k, s in enumerate(sys.model.symbols(K), start=1):
        st = sys.family.stats(int(s))
        D *= st.N ** sys.exponents.n(k)
        terms.append(Fraction(st.max_digit, D))
    report.values = _partial_sums(terms)
    report.depth = K
    alphabet = sys.model.alphabet()
    idx = sys.family.distinct_indices() if alphabet is None else alphabet
    if idx is not None:
        maxb = max(sys.family.stats(j).max_digit for j in idx)
        report.verdict, report.route = HOLDS, "finitely many pairs: support within [0, max B]"
        report.witness["bound"] = maxb
        return report
    cert = sys.family.certificate
    identity = (sys.model.kind == "explicit-prefix"
                and sys.model.word == tuple(range(1, len(sys.model.word) + 1))
                and sys.exponents.is_constant_one)
    if cert is not None and cert.identity_support_floor and identity:
        report.verdict, report.route = FAILS, "every increment >= floor: supports unbounded"
        report.witness["term_floor"] = cert.identity_support_floor
    return report


def run_all(sys: PairSystem, depth: int = DEFAULT_DEPTH) -> list[ConditionReport]:
    return [
        existence_series(sys, depth),
        rbc_sum(sys.family, depth),
        growth_sup(sys.family, depth),
        uniform_bound(sys.family, depth),
        gcd_analysis(sys.family, depth),
    ]
