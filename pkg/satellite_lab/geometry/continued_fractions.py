"""Continued fraction convergents and Bezout pairs."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from satellite_lab.exceptions import DomainError, NotCoprime


@dataclass(frozen=True)
class Convergents:
    """Convergents u_m / v_m of the continued fraction of y, best approximants first to last."""

    y: float
    terms: Tuple[Tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __getitem__(self, index):
        return self.terms[index]


def convergents_of(y: float, count: int) -> Convergents:
    """The first ``count`` convergents of y, fewer when the expansion terminates.

    The expansion is computed exactly on the binary value of y, so it terminates for every
    float; the first term is floor(y) / 1.
    """
    if count < 1:
        raise DomainError(f"count must be positive, got {count}")
    rest = Fraction(y)
    h_prev, h = 0, 1
    k_prev, k = 1, 0
    terms = []
    while len(terms) < count:
        a = math.floor(rest)
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        terms.append((h, k))
        fractional = rest - a
        if fractional == 0:
            break
        rest = 1 / fractional
    return Convergents(float(y), tuple(terms))


def bezout_pair(u: int, v: int) -> Tuple[int, int]:
    """The pair (m, n) with n u - v m = 1 and the smallest n >= 1.

    Raises:
        NotCoprime if gcd(u, v) != 1.
    """
    if v < 1:
        raise DomainError(f"v must be positive, got {v}")
    if math.gcd(u, v) != 1:
        raise NotCoprime(f"{u} and {v} are not coprime")
    n = pow(u, -1, v) or 1
    m = (n * u - 1) // v
    return m, n


def _simplest(lo: Fraction, hi: Fraction) -> Tuple[int, int]:
    floor = math.floor(lo)
    if floor == lo:
        return floor, 1
    if floor + 1 <= hi:
        return floor + 1, 1
    c, d = _simplest(1 / (hi - floor), 1 / (lo - floor))
    return floor * c + d, c


def simplest_between(lo: float, hi: float) -> Tuple[int, int]:
    """The fraction a / b in the closed interval between lo and hi with the smallest b >= 1."""
    lo, hi = sorted((Fraction(lo), Fraction(hi)))
    return _simplest(lo, hi)
