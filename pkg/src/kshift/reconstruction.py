"""Rebuilding the N^k configuration of a path from its diagonal word.

Two independent routes compute the cell at n of Ψ(y):

* automata route, :func:`psi_value`: apply S_i n_i times and read letter 0;
* factorization route, :func:`reconstruct_segment`: compose y_0 … y_{j-1},
  factor it with degrees (n, 1, j·1 - n - 1) and keep the middle piece.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .automata import EPWord, alpha, alpha_box, apply_code_ep, phi_code
from .errors import InadmissibleWord, WordTooShort
from .kgraph import Degree, KGraph, Morphism, add, compose_all, leq, ones, split, sub
from .markov import alphabet, is_admissible
from .shifts import WindowConfig, restrict_diagonal


@dataclass(frozen=True)
class PathSegment:
    start: Degree
    end: Degree
    value: Morphism


def _letters(y, j: int) -> tuple:
    if isinstance(y, EPWord):
        return y.prefix(j)
    y = tuple(y)
    if len(y) < j:
        raise WordTooShort(f"need {j} diagonal letters, word has {len(y)}")
    return y[:j]


def reconstruct_segment(g: KGraph, y, m: Sequence[int], n: Sequence[int], j: int | None = None) -> PathSegment:
    """x(m, n) for the path whose diagonal is y.

    ``j`` defaults to max(n), the smallest j with j·1 >= n; any larger j
    gives the same answer.
    """
    m, n = tuple(m), tuple(n)
    if not leq(m, n):
        raise ValueError(f"{m} is not <= {n}")
    if j is None:
        j = max(n, default=0)
    if j < max(n, default=0):
        raise ValueError(f"j={j} is too small for n={n}")
    letters = _letters(y, max(j, 1))
    if not is_admissible(g, letters):
        raise InadmissibleWord("diagonal word is not A-admissible")
    if j == 0:
        return PathSegment(m, n, g.identity(letters[0].range))
    mu = compose_all(letters[:j])
    _, mid, _ = split(mu, m, sub(n, m), sub(ones(g.rank, j), n))
    return PathSegment(m, n, mid)


def psi_value(g: KGraph, y: EPWord, n: Sequence[int]) -> Morphism:
    """Ψ(y) at n, i.e. α_n(y) read at position 0."""
    return alpha(g, y, n)[0]


def psi_window(g: KGraph, y: EPWord, horizon: int) -> WindowConfig:
    table = alpha_box(g, y, horizon)
    return WindowConfig.from_function(g.rank, horizon, lambda n: table[n][0])


def reconstruct_window(g: KGraph, diagonal: Sequence[Morphism], horizon: int) -> WindowConfig:
    """Window of B_horizon built only by factorization, from horizon+1 diagonal letters."""
    one = ones(g.rank)
    return WindowConfig.from_function(
        g.rank, horizon, lambda n: reconstruct_segment(g, diagonal, n, add(n, one)).value)


def window_membership(g: KGraph, w: WindowConfig) -> bool:
    """Whether w agrees with the unique path determined by its diagonal."""
    sigma = alphabet(g)
    if any(cell not in sigma for cell in w.cells):
        return False
    diagonal = restrict_diagonal(w)
    if not is_admissible(g, diagonal):
        return False
    return reconstruct_window(g, diagonal, w.horizon) == w


def verify_covariance(g: KGraph, y: EPWord, p: Sequence[int], horizon: int) -> bool:
    """θ_p(Ψ(y)) = Ψ(α_p(y)) cellwise on B_horizon."""
    p = tuple(p)
    big = psi_window(g, y, horizon + max(p, default=0))
    moved = big.translate(p).restrict(horizon)
    return moved == psi_window(g, alpha(g, y, p), horizon)


def alpha_orders_agree(g: KGraph, y: EPWord, n: Sequence[int]) -> bool:
    """Every interleaving of the S_i powers in α_n gives the same point."""
    steps = [i for i, c in enumerate(n, start=1) for _ in range(c)]
    results = set()
    for order in set(itertools.permutations(steps)):
        z = y
        for i in order:
            z = apply_code_ep(phi_code(g, i), z)
        results.add(z)
    return len(results) == 1
