"""Utilities shared by the satellite_lab modules."""
from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, List, Tuple, TypeVar

import numpy as np

from satellite_lab.exceptions import DomainError

L = logging.getLogger(__name__)

THREADS_ENV = "SATLAB_THREADS"

T = TypeVar("T")
R = TypeVar("R")


@dataclass(frozen=True, order=True)
class IrreducibleRational:
    """A rotation number p/q in lowest terms with 0 <= p < q, or 0/1."""

    p: int
    q: int

    def __post_init__(self):
        if self.q < 1:
            raise DomainError(f"Denominator must be positive, got {self.q}")
        if not 0 <= self.p < self.q:
            raise DomainError(f"Expected 0 <= p < q, got {self.p}/{self.q}")
        if math.gcd(self.p, self.q) != 1:
            raise DomainError(f"{self.p}/{self.q} is not in lowest terms")

    @property
    def omega(self) -> complex:
        """The root of unity exp(2 pi i p / q)."""
        if self.q == 1:
            return 1.0 + 0.0j
        if 2 * self.p == self.q:
            return -1.0 + 0.0j
        return complex(np.exp(2j * np.pi * self.p / self.q))

    @property
    def value(self) -> float:
        """p/q as a float."""
        return self.p / self.q

    @classmethod
    def reduced(cls, p: int, q: int) -> "IrreducibleRational":
        """Build p/q after reduction to lowest terms and to [0, 1)."""
        if q == 0:
            raise DomainError("Denominator must be non zero")
        if q < 0:
            p, q = -p, -q
        g = math.gcd(p, q)
        p, q = p // g, q // g
        return cls(p % q, q)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


def parse_rational(text: str) -> Tuple[IrreducibleRational, bool]:
    """Parse a "p/q" string.

    Returns:
        the reduced rational and a flag telling whether a reduction took place.

    Raises:
        DomainError if the string is not of the form "p/q" with integers p, q.
    """
    try:
        p_text, q_text = text.strip().split("/")
        p, q = int(p_text), int(q_text)
    except ValueError as error:
        raise DomainError(f"Expected a rational of the form 'p/q', got {text!r}") from error
    rational = IrreducibleRational.reduced(p, q)
    changed = (rational.p, rational.q) != (p, q)
    if changed:
        L.info("Reduced %s to %s", text, rational)
    return rational, changed


def sublimb_rational(n: int) -> IrreducibleRational:
    """The internal angle (n^2 - 1) / n^3 of the small sublimbs, n >= 2."""
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    return IrreducibleRational(n * n - 1, n**3)


def proper_divisors(n: int) -> List[int]:
    """Divisors d of n with d < n."""
    return [d for d in range(1, n) if n % d == 0]


def max_workers() -> int:
    """Worker count of the parallel scans, capped by the SATLAB_THREADS variable."""
    default = os.cpu_count() or 1
    value = os.environ.get(THREADS_ENV)
    if not value:
        return default
    try:
        return max(1, int(value))
    except ValueError:
        L.warning("Ignoring invalid %s=%r", THREADS_ENV, value)
        return default


def parallel_map(func: Callable[[T], R], items: Iterable[T]) -> List[R]:
    """Map ``func`` over ``items`` with a thread pool; results keep the input order."""
    items = list(items)
    workers = min(max_workers(), max(1, len(items)))
    if workers == 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items))


def log_grid(t_min: float, t_max: float, points: int) -> np.ndarray:
    """Decreasing logarithmic grid from t_max down to t_min."""
    if points < 1 or not 0 < t_min <= t_max:
        raise DomainError(f"Invalid grid [{t_min}, {t_max}] with {points} points")
    return np.geomspace(t_max, t_min, points)
