"""Exact vanishing test for sums of roots of unity.

``sum_b exp(-2 pi i b r)`` with rational ``r = p/q`` in lowest terms is a sum
of q-th roots of unity; it is zero exactly when the q-th cyclotomic
polynomial divides ``sum_b x^(b*p mod q)``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

MAX_ORDER = 1 << 16


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists, lowest degree first; den is monic
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            out[i - dn] = c
            for j, d in enumerate(den):
                num[i - dn + j] -= c * d
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=256)
def cyclotomic(q: int) -> tuple[int, ...]:
    """Coefficients of the q-th cyclotomic polynomial, lowest degree first."""
    if q < 1:
        raise ValueError("order must be positive")
    # x^q - 1 = prod_{d | q} Phi_d(x)
    poly = [-1] + [0] * (q - 1) + [1]
    for d in range(1, q):
        if q % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic(d)))
    return tuple(poly)


def _remainder(exponents: dict[int, int], phi: tuple[int, ...]) -> list[int]:
    deg = len(phi) - 1
    top = max(exponents)
    rem = [0] * (top + 1)
    for e, c in exponents.items():
        rem[e] += c
    for i in range(top, deg - 1, -1):
        c = rem[i]
        if c:
            for j, d in enumerate(phi):
                rem[i - deg + j] -= c * d
    return rem[:deg]


def root_sum_vanishes(digits, r) -> bool | None:
    """Exactly decide whether ``sum_b exp(-2 pi i b r)`` is zero.

    Returns None when the order of ``r`` exceeds :data:`MAX_ORDER`.
    """
    r = Fraction(r) % 1
    q, p = r.denominator, r.numerator
    if q == 1:
        return False  # every term is 1
    if q > MAX_ORDER:
        return None
    exps: dict[int, int] = {}
    for b in digits:
        e = (b * p) % q
        exps[e] = exps.get(e, 0) + 1
    return not any(_remainder(exps, cyclotomic(q)))
