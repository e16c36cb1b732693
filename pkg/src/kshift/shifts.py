"""Finite-window shadows of shift spaces over N and N^k.

Infinite configurations are represented by truncations: a ``Word`` is a
tuple of letters (a prefix of a point of Σ^N) and a :class:`WindowConfig`
is the restriction of a point of Σ^{N^k} to the box
``B_p = {n : n_i <= p for all i}``.  Letters may be any hashable value.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .errors import LengthMismatch

Word = tuple
Point = tuple[int, ...]


def box_points(rank: int, horizon: int) -> list[Point]:
    """Points of B_horizon in N^rank, lexicographic."""
    return list(itertools.product(range(horizon + 1), repeat=rank))


@dataclass(frozen=True)
class Pattern:
    domain: tuple[Point, ...]
    values: tuple[Hashable, ...]

    def __post_init__(self):
        if not self.domain:
            raise ValueError("pattern domain must be nonempty")
        if len(self.domain) != len(self.values):
            raise ValueError("pattern domain and values differ in length")
        if len({len(t) for t in self.domain}) != 1:
            raise ValueError("pattern points have mixed rank")

    @property
    def rank(self) -> int:
        return len(self.domain[0])

    def to_json(self, name: Callable = str) -> dict:
        return {"domain": [list(t) for t in self.domain], "values": [name(v) for v in self.values]}

    @classmethod
    def from_json(cls, data: Mapping, letter: Callable = lambda s: s) -> "Pattern":
        return cls(tuple(tuple(t) for t in data["domain"]), tuple(letter(v) for v in data["values"]))


@dataclass(frozen=True)
class WindowConfig:
    """Values on every point of B_horizon, stored in lexicographic point order."""

    rank: int
    horizon: int
    cells: tuple

    def __post_init__(self):
        if self.horizon < 0:
            raise ValueError("horizon must be >= 0")
        if len(self.cells) != (self.horizon + 1) ** self.rank:
            raise ValueError(f"expected {(self.horizon + 1) ** self.rank} cells, got {len(self.cells)}")

    @classmethod
    def from_function(cls, rank: int, horizon: int, fn: Callable[[Point], Hashable]) -> "WindowConfig":
        return cls(rank, horizon, tuple(fn(t) for t in box_points(rank, horizon)))

    @classmethod
    def from_mapping(cls, rank: int, horizon: int, values: Mapping[Point, Hashable]) -> "WindowConfig":
        return cls.from_function(rank, horizon, lambda t: values[tuple(t)])

    def _offset(self, point: Sequence[int]) -> int:
        off = 0
        for c in point:
            if not 0 <= c <= self.horizon:
                raise KeyError(tuple(point))
            off = off * (self.horizon + 1) + c
        return off

    def __getitem__(self, point: Sequence[int]):
        if len(point) != self.rank:
            raise KeyError(tuple(point))
        return self.cells[self._offset(point)]

    def items(self) -> Iterable[tuple[Point, Hashable]]:
        return zip(box_points(self.rank, self.horizon), self.cells)

    def replace(self, point: Sequence[int], letter) -> "WindowConfig":
        cells = list(self.cells)
        cells[self._offset(point)] = letter
        return WindowConfig(self.rank, self.horizon, tuple(cells))

    def translate(self, p: Sequence[int]) -> "WindowConfig":
        """The window of θ_p(ξ): cell t holds ξ(p + t), on the largest box that fits."""
        h = self.horizon - max(p, default=0)
        if h < 0:
            raise ValueError(f"translate by {tuple(p)} leaves nothing of B_{self.horizon}")
        return WindowConfig.from_function(self.rank, h, lambda t: self[tuple(a + b for a, b in zip(p, t))])

    def restrict(self, horizon: int) -> "WindowConfig":
        return WindowConfig.from_function(self.rank, horizon, lambda t: self[t])


def occurs(pattern: Pattern, w: WindowConfig) -> bool:
    """Whether some translate p0 + D_π lies in the window and matches π there."""
    if pattern.rank != w.rank:
        return False
    span = [max(t[i] for t in pattern.domain) for i in range(w.rank)]
    ranges = [range(w.horizon - s + 1) for s in span]
    for p0 in itertools.product(*ranges):
        if all(w[tuple(a + b for a, b in zip(p0, t))] == v
               for t, v in zip(pattern.domain, pattern.values)):
            return True
    return False


def excluded_by(patterns: Iterable[Pattern], w: WindowConfig) -> bool:
    """Finite-window membership in X_Π: no pattern of Π occurs in w."""
    return not any(occurs(p, w) for p in patterns)


def restrict_diagonal(w: WindowConfig) -> Word:
    """(w(0·1), w(1·1), ..., w(p·1))"""
    return tuple(w[(j,) * w.rank] for j in range(w.horizon + 1))


def distance_words(x: Sequence, y: Sequence) -> Fraction:
    """2^-p where p is the largest index with x_i = y_i for all i <= p.

    Identical truncations are at distance 0; disagreement at index 0
    gives 1.
    """
    if len(x) != len(y):
        raise LengthMismatch(f"words of length {len(x)} and {len(y)}")
    for i, (a, b) in enumerate(zip(x, y)):
        if a != b:
            return Fraction(1, 2 ** (i - 1)) if i > 0 else Fraction(1)
    return Fraction(0)


def distance_windows(x: WindowConfig, y: WindowConfig) -> Fraction:
    """2^-p where p is the largest radius with agreement on B_p."""
    if (x.rank, x.horizon) != (y.rank, y.horizon):
        raise LengthMismatch(f"windows B_{x.horizon}^{x.rank} vs B_{y.horizon}^{y.rank}")
    # smallest radius of a disagreeing point = max coordinate of that point
    first_bad = min((max(t) for (t, a), b in zip(x.items(), y.cells) if a != b), default=None)
    if first_bad is None:
        return Fraction(0)
    if first_bad == 0:
        return Fraction(1)
    return Fraction(1, 2 ** (first_bad - 1))
