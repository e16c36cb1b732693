"""Sliding block codes on the Markov space of a k-graph.

For each color i the code φ_i takes an admissible pair (λ, μ), factors the
composite λμ (degree 2·1) as α·β·γ with degrees (e_i, 1, 1 - e_i) and
returns the middle factor β.  The induced cellular automata S_i commute
and their product is the shift.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .errors import (
    InadmissibleIntermediate,
    InadmissibleWord,
    OracleInconsistent,
    TooShort,
)
from .kgraph import KGraph, compose, ones, split, sub, unit
from .markov import alphabet, is_admissible, language
from .shifts import box_points


@dataclass(frozen=True)
class BlockCode:
    """ψ: L_a → Σ stored as an explicit table on admissible (a+1)-words."""

    anticipation: int
    table: Mapping[tuple, Hashable] = field(repr=False)

    def __call__(self, window: Sequence) -> Hashable:
        try:
            return self.table[tuple(window)]
        except KeyError:
            raise InadmissibleWord(f"window {_names(window)} not in the code's language") from None

    def windows(self) -> list[tuple]:
        return sorted(self.table, key=lambda w: [lam.sort_key() for lam in w])

    def to_csv(self) -> str:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow([f"w{i}" for i in range(self.anticipation + 1)] + ["output"])
        for w in self.windows():
            out.writerow([lam.name for lam in w] + [self.table[w].name])
        return buf.getvalue()


def _names(word: Iterable) -> str:
    return "(" + ",".join(getattr(x, "name", str(x)) for x in word) + ")"


@dataclass(frozen=True)
class EPWord:
    """The eventually periodic sequence u·v·v·…, kept in canonical form.

    Construction canonicalizes: the period is reduced to its primitive
    root, then the preperiod is shortened as far as possible.  Field
    equality is therefore equality of the infinite sequences.
    """

    preperiod: tuple
    period: tuple

    def __post_init__(self):
        u, v = tuple(self.preperiod), tuple(self.period)
        if not v:
            raise ValueError("period must be nonempty")
        n = len(v)
        for d in range(1, n + 1):
            if n % d == 0 and v[:d] * (n // d) == v:
                v = v[:d]
                break
        while u and u[-1] == v[-1]:
            u, v = u[:-1], v[-1:] + v[:-1]
        object.__setattr__(self, "preperiod", u)
        object.__setattr__(self, "period", v)
        object.__setattr__(self, "_hash", hash((u, v)))

    def __hash__(self) -> int:
        return self._hash

    def __getitem__(self, i: int):
        u, v = self.preperiod, self.period
        return u[i] if i < len(u) else v[(i - len(u)) % len(v)]

    def prefix(self, n: int) -> tuple:
        return tuple(self[i] for i in range(n))

    def shift(self, steps: int = 1) -> "EPWord":
        u, v = self.preperiod, self.period
        if steps <= len(u):
            return EPWord(u[steps:], v)
        r = (steps - len(u)) % len(v)
        return EPWord((), v[r:] + v[:r])

    def to_json(self) -> dict:
        return {"u": [lam.name for lam in self.preperiod], "v": [lam.name for lam in self.period]}

    def __str__(self) -> str:
        u = ",".join(lam.name for lam in self.preperiod)
        v = ",".join(lam.name for lam in self.period)
        return f"{u}({v})^∞" if u else f"({v})^∞"


def is_admissible_ep(g: KGraph, y: EPWord) -> bool:
    return is_admissible(g, y.preperiod + y.period + y.period[:1])


def check_ep(g: KGraph, y: EPWord) -> EPWord:
    if not is_admissible_ep(g, y):
        raise InadmissibleWord(f"{y} is not A-admissible")
    return y


# --- standard codes -----------------------------------------------------------

@lru_cache(maxsize=None)
def phi_code(g: KGraph, i: int) -> BlockCode:
    k = g.rank
    e_i = unit(k, i)
    one = ones(k)
    table = {}
    for lam, mu in language(g, 1):
        _, beta, _ = split(compose(lam, mu), e_i, one, sub(one, e_i))
        table[lam, mu] = beta
    return BlockCode(1, table)


@lru_cache(maxsize=None)
def shift_code(g: KGraph) -> BlockCode:
    return BlockCode(1, {(lam, mu): mu for lam, mu in language(g, 1)})


@lru_cache(maxsize=None)
def identity_code(g: KGraph) -> BlockCode:
    return BlockCode(0, {(lam,): lam for lam in alphabet(g).letters})


def code_from_function(g: KGraph, anticipation: int, fn: Callable[[tuple], Hashable]) -> BlockCode:
    return BlockCode(anticipation, {w: fn(w) for w in language(g, anticipation)})


# --- applying codes -----------------------------------------------------------

def apply_code_word(c: BlockCode, w: Sequence) -> tuple:
    """T_ψ on a finite word; the output is shorter by the anticipation."""
    a = c.anticipation
    w = tuple(w)
    if len(w) < a + 1:
        raise TooShort(f"word of length {len(w)} needs at least {a + 1} letters")
    return tuple(c(w[n:n + a + 1]) for n in range(len(w) - a))


def apply_code_ep(c: BlockCode, y: EPWord) -> EPWord:
    a = c.anticipation
    u, v = y.preperiod, y.period
    span = len(u) + len(v)
    out = [c(tuple(y[n + t] for t in range(a + 1))) for n in range(span)]
    return EPWord(tuple(out[:len(u)]), tuple(out[len(u):]))


def _derived_domain(outer: BlockCode, inner: BlockCode) -> list[tuple]:
    a = outer.anticipation + inner.anticipation
    keys = list(inner.table) + list(outer.table)
    if a == 0:
        return sorted(inner.table, key=lambda w: [x.sort_key() for x in w])
    pairs: dict = {}
    for w in keys:
        for x, y in zip(w, w[1:]):
            pairs.setdefault(x, set()).add(y)
    starts = sorted({w[0] for w in inner.table}, key=lambda x: x.sort_key())
    words = [(x,) for x in starts]
    for _ in range(a):
        words = [w + (y,) for w in words for y in sorted(pairs.get(w[-1], ()), key=lambda x: x.sort_key())]
    return words


def compose_codes(outer: BlockCode, inner: BlockCode, domain: Iterable[tuple] | None = None) -> BlockCode:
    """Code of T_outer ∘ T_inner, anticipation a_outer + a_inner.

    ``domain`` defaults to the words of the right length whose adjacent
    pairs occur in either table, which is the Markov language when the
    tables are total on it.
    """
    a = outer.anticipation + inner.anticipation
    words = list(domain) if domain is not None else _derived_domain(outer, inner)
    table = {}
    for w in words:
        if len(w) != a + 1:
            raise TooShort(f"domain word {_names(w)} should have {a + 1} letters")
        mid = apply_code_word(inner, w)
        if mid not in outer.table:
            raise InadmissibleIntermediate(f"{_names(w)} maps to {_names(mid)}, outside the outer code's language")
        table[tuple(w)] = outer(mid)
    return BlockCode(a, table)


def compose_chain(codes: Sequence[BlockCode], domain_of: Callable[[int], Iterable[tuple]] | None = None) -> BlockCode:
    """c_1 ∘ c_2 ∘ … ∘ c_n (the last code acts first)."""
    result = codes[-1]
    for c in reversed(codes[:-1]):
        dom = domain_of(c.anticipation + result.anticipation) if domain_of else None
        result = compose_codes(c, result, dom)
    return result


def code_disagreements(c1: BlockCode, c2: BlockCode, words: Iterable[tuple]) -> list[tuple]:
    """Windows (from ``words``) on which the two codes differ.

    Each word must be at least as long as both windows; the shorter-anticipation
    code reads only its prefix.
    """
    bad = []
    for w in words:
        if c1(w[:c1.anticipation + 1]) != c2(w[:c2.anticipation + 1]):
            bad.append(tuple(w))
    return bad


def alpha(g: KGraph, y: EPWord, n: Sequence[int]) -> EPWord:
    """α_n(y) = S_1^{n_1} … S_k^{n_k}(y), applying the S_1 powers first."""
    for i, power in enumerate(n, start=1):
        code = phi_code(g, i)
        for _ in range(power):
            y = apply_code_ep(code, y)
    return y


def alpha_word(g: KGraph, w: Sequence, n: Sequence[int]) -> tuple:
    for i, power in enumerate(n, start=1):
        code = phi_code(g, i)
        for _ in range(power):
            w = apply_code_word(code, w)
    return tuple(w)


def alpha_box(g: KGraph, y: EPWord, horizon: int) -> dict:
    """α_n(y) for every n in B_horizon, each computed from a neighbour."""
    k = g.rank
    codes = [phi_code(g, i) for i in range(1, k + 1)]
    out = {(0,) * k: y}
    for n in box_points(k, horizon):
        if n in out:
            continue
        # peel the last nonzero color so earlier colors are applied first
        i = max(c for c in range(k) if n[c])
        prev = n[:i] + (n[i] - 1,) + n[i + 1:]
        out[n] = apply_code_ep(codes[i], out[prev])
    return out


# --- verification -------------------------------------------------------------

@dataclass
class FactorizationReport:
    ok: bool
    checks: list[str] = field(default_factory=list)
    witnesses: list[tuple] = field(default_factory=list)


def verify_factorization(g: KGraph) -> FactorizationReport:
    """Pairwise commutation of the φ_i on L_2 and φ_1∘…∘φ_k = shift on L_k."""
    k = g.rank
    report = FactorizationReport(True)
    phis = [phi_code(g, i) for i in range(1, k + 1)]
    for c in phis:
        if c.anticipation != 1:
            report.ok = False
            report.witnesses.append(("anticipation", c.anticipation))
    L2 = language(g, 2)
    for i in range(k):
        for j in range(i + 1, k):
            ij = compose_codes(phis[i], phis[j], L2)
            ji = compose_codes(phis[j], phis[i], L2)
            bad = code_disagreements(ij, ji, L2)
            report.checks.append(f"S{i + 1}S{j + 1} = S{j + 1}S{i + 1} on {len(L2)} windows")
            if bad:
                report.ok = False
                report.witnesses.extend(("commute", i + 1, j + 1, w) for w in bad)
    product = compose_chain(phis, lambda a: language(g, a))
    Lk = language(g, k)
    bad = code_disagreements(product, shift_code(g), Lk)
    report.checks.append(f"S1...S{k} = S on {len(Lk)} windows")
    if bad:
        report.ok = False
        report.witnesses.extend(("product", w) for w in bad)
    return report


def chl_recover(g: KGraph, oracle: Callable[[tuple], Hashable], max_a: int, pad: int = 1) -> BlockCode | None:
    """Recover a sliding block code from a black-box shift-commuting map.

    ``oracle`` receives admissible words of length ``max_a + 1 + pad`` and
    returns the 0th letter of the image.  The smallest anticipation a for
    which that letter is determined by the first a+1 input letters wins;
    ``None`` if no a <= max_a works.
    """
    length = max_a + 1 + pad
    answers = {}
    for w in language(g, length - 1):
        first, second = oracle(w), oracle(w)
        if first != second:
            raise OracleInconsistent(f"oracle gave {first} and {second} on {_names(w)}")
        answers[w] = first
    for a in range(max_a + 1):
        table: dict = {}
        consistent = True
        for w, out in answers.items():
            key = w[:a + 1]
            if table.setdefault(key, out) != out:
                consistent = False
                break
        if consistent:
            return BlockCode(a, table)
    return None
