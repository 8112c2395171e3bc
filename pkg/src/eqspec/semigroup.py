"""Numerical semigroups generated by orbit cardinalities."""

from __future__ import annotations

import math
import threading
from functools import reduce

import numpy as np


class NumericalSemigroup:
    """Additive semigroup {sum c_i g_i : c_i >= 0} for a set of positive generators.

    Membership is a coin-problem DP table, extended on demand.  Extension
    happens under a lock and publishes a fully built table, so concurrent
    readers never see a partial one.
    """

    def __init__(self, generators):
        gens = sorted({int(g) for g in generators})
        if not gens or gens[0] <= 0:
            raise ValueError("generators must be a nonempty set of positive integers")
        self.generators = tuple(gens)
        self._lock = threading.Lock()
        self._table = self._build(2 * reduce(math.lcm, gens))

    def _build(self, horizon: int) -> np.ndarray:
        table = np.zeros(horizon + 1, dtype=bool)
        table[0] = True
        for b in range(1, horizon + 1):
            table[b] = any(table[b - g] for g in self.generators if g <= b)
        table.setflags(write=False)
        return table

    @property
    def horizon(self) -> int:
        return len(self._table) - 1

    def _ensure(self, b: int) -> np.ndarray:
        table = self._table
        if b <= len(table) - 1:
            return table
        with self._lock:
            if b > len(self._table) - 1:
                self._table = self._build(max(b, 2 * (len(self._table) - 1)))
            return self._table

    def contains(self, b: int) -> bool:
        if b < 0:
            raise ValueError("membership is only defined for b >= 0")
        return bool(self._ensure(b)[b])

    __contains__ = contains

    def max_element_leq(self, k: int) -> int:
        if k < 0:
            raise ValueError("k must be non-negative")
        table = self._ensure(k)
        return int(np.flatnonzero(table[: k + 1])[-1])

    def members_upto(self, k: int) -> list[int]:
        table = self._ensure(k)
        return [int(b) for b in np.flatnonzero(table[: k + 1])]

    def __repr__(self) -> str:
        return f"NumericalSemigroup({list(self.generators)})"


def contains(s: NumericalSemigroup, b: int) -> bool:
    return s.contains(b)


def max_element_leq(s: NumericalSemigroup, k: int) -> int:
    return s.max_element_leq(k)
