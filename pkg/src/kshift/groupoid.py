"""The semidirect product groupoid X_A ⋊ N^k restricted to eventually periodic points.

A germ (x, n, m, y) with α_n(x) = α_m(y) stands for the groupoid element
(x, n - m, y).  Germs compare equal when x, y and the displacement n - m
agree; ``n`` and ``m`` are a witness only.
"""

from __future__ import annotations

import itertools
import json
import operator
from typing import Iterable

from .automata import EPWord, alpha, alpha_box, check_ep
from .errors import NotComposableGerm, UnitsMismatch
from .kgraph import Degree, KGraph, add, sub, zeros
from .markov import alphabet, language
from .shifts import box_points


class Germ:
    """Groupoid element (x, n - m, y) with witness exponents n, m.

    Treated as immutable; the slots are not meant to be reassigned.
    """

    __slots__ = ("x", "n", "m", "y", "_key", "_hash")

    def __init__(self, x: EPWord, n: Degree, m: Degree, y: EPWord):
        self.x, self.n, self.m, self.y = x, tuple(n), tuple(m), y
        self._key = (x, tuple(map(operator.sub, n, m)), y)
        self._hash = None  # computed on first use; composition-heavy loops never need it

    @property
    def displacement(self) -> tuple[int, ...]:
        return self._key[1]

    def __eq__(self, other):
        if not isinstance(other, Germ):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key)
        return self._hash

    def __repr__(self):
        return f"Germ({self.x}, {self.n}, {self.m}, {self.y})"

    def is_unit(self) -> bool:
        return self.x == self.y and not any(self.displacement)

    def to_json(self) -> dict:
        return {
            "x": self.x.to_json(),
            "n": list(self.n),
            "m": list(self.m),
            "y": self.y.to_json(),
            "displacement": list(self.displacement),
        }

    def __str__(self):
        return f"({self.x}, {self.displacement}, {self.y})"


def unit_germ(x: EPWord, rank: int) -> Germ:
    return Germ(x, zeros(rank), zeros(rank), x)


def make_germ(g: KGraph, x: EPWord, n, m, y: EPWord) -> Germ:
    check_ep(g, x)
    check_ep(g, y)
    n, m = tuple(n), tuple(m)
    if alpha(g, x, n) != alpha(g, y, m):
        raise NotComposableGerm(f"α_{n}({x}) != α_{m}({y})")
    return Germ(x, n, m, y)


def compose_germs(first: Germ, second: Germ) -> Germ:
    """(x, n₁, m₁, y)·(y, n₂, m₂, z) = (x, n₁+n₂, m₁+m₂, z)."""
    if first.y is not second.x and first.y != second.x:
        raise UnitsMismatch(f"{first.y} != {second.x}")
    # bypass __init__: the witnesses are already tuples
    h = Germ.__new__(Germ)
    h.x, h.y = first.x, second.y
    h.n = tuple(map(operator.add, first.n, second.n))
    h.m = tuple(map(operator.add, first.m, second.m))
    h._key = (h.x, tuple(map(operator.add, first._key[1], second._key[1])), h.y)
    h._hash = None
    return h


def invert_germ(h: Germ) -> Germ:
    return Germ(h.y, h.m, h.n, h.x)


def is_valid(g: KGraph, h: Germ) -> bool:
    return alpha(g, h.x, h.n) == alpha(g, h.y, h.m)


def canonical_germ(g: KGraph, h: Germ) -> Germ:
    """Same element, witnessed by the smallest valid (n, m).

    Valid witnesses are n = n₀ + t, m = m₀ + t with (n₀, m₀) the positive
    and negative parts of the displacement; they form an up-set in t, so
    the search stays below the witness already held.
    """
    g_disp = h.displacement
    n0 = tuple(max(c, 0) for c in g_disp)
    m0 = tuple(max(-c, 0) for c in g_disp)
    t0 = sub(h.n, n0)
    candidates = sorted(itertools.product(*(range(c + 1) for c in t0)), key=lambda t: (sum(t), t))
    for t in candidates:
        n, m = add(n0, t), add(m0, t)
        if alpha(g, h.x, n) == alpha(g, h.y, m):
            return Germ(h.x, n, m, h.y)
    raise NotComposableGerm(f"{h} has no valid witness")


def ep_words(g: KGraph, max_preperiod: int, max_period: int) -> list[EPWord]:
    """Every admissible EPWord with |u| <= max_preperiod and |v| <= max_period."""
    found = set()
    for q in range(1, max_period + 1):
        cycles = [w[:-1] for w in language(g, q) if w[0] == w[-1]]
        for v in cycles:
            found.add(EPWord((), v))
            for p in range(1, max_preperiod + 1):
                for u in language(g, p - 1):
                    if u[-1].source == v[0].range:
                        found.add(EPWord(u, v))
    return sorted(found, key=ep_sort_key)


def ep_sort_key(y: EPWord):
    return (len(y.preperiod) + len(y.period), len(y.period),
            [lam.sort_key() for lam in y.preperiod], [lam.sort_key() for lam in y.period])


def preimage_caps(x: EPWord, budget: int, max_preperiod: int | None = None,
                  max_period: int | None = None) -> tuple[int, int]:
    grow = budget * len(x.period)
    return (len(x.preperiod) + grow if max_preperiod is None else max_preperiod,
            len(x.period) + grow if max_period is None else max_period)


def orbit_sample(g: KGraph, x: EPWord, budget: int,
                 max_preperiod: int | None = None, max_period: int | None = None) -> list[Germ]:
    """Germs (x, n, m, y) with n, m <= budget·1, found by bounded preimage search.

    Candidate y range over admissible EPWords with preperiod at most
    ``max_preperiod`` and period at most ``max_period`` (both default to the
    length in x plus budget·|v|), plus every α_n(x).  The search is complete
    only within those caps.  Each element is reported once, with its
    smallest witness.
    """
    check_ep(g, x)
    k = g.rank
    max_preperiod, max_period = preimage_caps(x, budget, max_preperiod, max_period)
    ax = alpha_box(g, x, budget)
    candidates = set(ep_words(g, max_preperiod, max_period)) | set(ax.values()) | {x}
    preimages: dict = {}
    for y in sorted(candidates, key=ep_sort_key):
        for m, z in alpha_box(g, y, budget).items():
            preimages.setdefault(z, []).append((m, y))

    points = sorted(box_points(k, budget), key=lambda t: (sum(t), t))
    pairs = sorted(itertools.product(points, points), key=lambda nm: (sum(nm[0]) + sum(nm[1]), nm))
    out: dict = {}
    for n, m in pairs:
        for m2, y in preimages.get(ax[n], ()):
            if m2 != m:
                continue
            h = Germ(x, n, m, y)
            out.setdefault(h, h)
    return list(out.values())


def germs_to_json(germs: Iterable[Germ]) -> str:
    return json.dumps([h.to_json() for h in germs], indent=2, ensure_ascii=False)


def parse_ep(g: KGraph, text: str) -> EPWord:
    """``"u1,u2/v1,v2"`` → u·v^∞; a word without ``/`` is read as a pure period."""
    sigma = alphabet(g)
    if "/" in text:
        u, v = text.split("/", 1)
        return check_ep(g, EPWord(sigma.parse_word(u), sigma.parse_word(v)))
    return check_ep(g, EPWord((), sigma.parse_word(text)))
