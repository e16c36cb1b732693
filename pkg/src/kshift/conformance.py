"""Invariant suite run by ``kshift check``.

Each check returns a :class:`CheckResult`; :func:`run_checks` yields them in
a fixed order and stops after the first failure when asked to.  Sizes are
kept small so the whole suite runs in seconds on desk-scale graphs.
"""

from __future__ import annotations

import itertools
import random
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Iterator

from .automata import EPWord, apply_code_word, chl_recover, code_disagreements, phi_code, verify_factorization
from .groupoid import compose_germs, ep_words, invert_germ, is_valid, orbit_sample
from .kgraph import (
    KGraph,
    box,
    enumerate_factorizations,
    enumerate_morphisms,
    factorize,
    ones,
    validate,
)
from .markov import alphabet, is_admissible, language, markov_forbidden_patterns, transition_matrix
from .reconstruction import psi_window, reconstruct_segment, verify_covariance
from .shifts import WindowConfig, distance_windows, distance_words, excluded_by, restrict_diagonal


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}: {self.detail}"


def check_validation(g: KGraph, allow_sources: bool = False) -> CheckResult:
    report = validate(g, allow_sources=allow_sources)
    if report.ok:
        return CheckResult("validate", True, f"unique factorization certified to degree {report.certified_degree}")
    v = report.violations[0]
    return CheckResult("validate", False, f"{v.kind} {v.witness} {v.detail}")


def check_unique_factorization(g: KGraph, total: int = 4) -> CheckResult:
    count = 0
    for d in itertools.product(range(total + 1), repeat=g.rank):
        if sum(d) > total:
            continue
        for lam in enumerate_morphisms(g, d):
            for m in box(d):
                pairs = enumerate_factorizations(lam, m)
                if len(pairs) != 1 or pairs[0] != factorize(lam, m):
                    return CheckResult("unique-factorization", False, f"{lam.name} at {m}: {len(pairs)} pairs")
                count += 1
    return CheckResult("unique-factorization", True, f"{count} (λ, m) pairs with |d(λ)| <= {total}")


def check_factorization_of_shift(g: KGraph) -> CheckResult:
    report = verify_factorization(g)
    if report.ok:
        return CheckResult("shift-factorization", True, "; ".join(report.checks))
    return CheckResult("shift-factorization", False, f"witness {report.witnesses[0]!r}")


def check_chl(g: KGraph) -> CheckResult:
    for i in range(1, g.rank + 1):
        code = phi_code(g, i)
        got = chl_recover(g, lambda w, c=code: apply_code_word(c, w)[0], max_a=2)
        if got is None or got.anticipation > 1 or code_disagreements(got, code, language(g, 1)):
            return CheckResult("chl-recover", False, f"S{i} not recovered with anticipation <= 1")
    return CheckResult("chl-recover", True, f"{g.rank} codes recovered with anticipation <= 1")


def check_shift_commutation(g: KGraph, length: int = 4) -> CheckResult:
    for i in range(1, g.rank + 1):
        code = phi_code(g, i)
        for w in language(g, length - 1):
            if apply_code_word(code, w[1:]) != apply_code_word(code, w)[1:]:
                return CheckResult("shift-commutation", False, f"S{i} on {[x.name for x in w]}")
    return CheckResult("shift-commutation", True, f"T(S(w)) = S(T(w)) on words of length {length}")


def _small_points(g: KGraph, size: int) -> list[EPWord]:
    return [y for y in ep_words(g, size - 1, size) if len(y.preperiod) + len(y.period) <= size]


def check_round_trip(g: KGraph, size: int = 3, horizon: int = 2) -> CheckResult:
    ys = _small_points(g, size)
    for y in ys:
        for p in range(horizon + 1):
            w = psi_window(g, y, p)
            if restrict_diagonal(w) != y.prefix(p + 1):
                return CheckResult("psi-rho-round-trip", False, f"{y} horizon {p}")
        w = psi_window(g, y, horizon)
        for n, cell in w.items():
            if reconstruct_segment(g, y, n, tuple(c + 1 for c in n)).value != cell:
                return CheckResult("psi-rho-round-trip", False, f"two routes differ for {y} at {n}")
    return CheckResult("psi-rho-round-trip", True, f"{len(ys)} points, horizons <= {horizon}")


def check_covariance(g: KGraph, size: int = 2, horizon: int = 2) -> CheckResult:
    ys = _small_points(g, size)
    for y in ys:
        for p in box(ones(g.rank, 2)):
            if not verify_covariance(g, y, p, horizon):
                return CheckResult("covariance", False, f"{y} translated by {p}")
    return CheckResult("covariance", True, f"{len(ys)} points, p in B_2, horizon {horizon}")


def check_contractivity(g: KGraph, pairs: int = 200, seed: int = 0) -> CheckResult:
    rng = random.Random(seed)
    letters = alphabet(g).letters
    for _ in range(pairs):
        h = rng.randint(0, 3)
        x = WindowConfig.from_function(g.rank, h, lambda t: rng.choice(letters))
        y = x
        for _ in range(rng.randint(0, 3)):
            t = tuple(rng.randint(0, h) for _ in range(g.rank))
            y = y.replace(t, rng.choice(letters))
        if distance_words(restrict_diagonal(x), restrict_diagonal(y)) > distance_windows(x, y):
            return CheckResult("contractivity", False, f"horizon {h}")
    return CheckResult("contractivity", True, f"{pairs} random window pairs")


def check_forbidden_patterns(g: KGraph, max_m: int = 3) -> CheckResult:
    patterns = markov_forbidden_patterns(transition_matrix(g))
    letters = alphabet(g).letters
    if g.rank != 1:
        # diagonal-only windows are meaningful for k = 1; for k > 1 test Ψ windows
        for y in _small_points(g, 2):
            for p in range(max_m + 1):
                if not excluded_by(patterns, psi_window(g, y, p)):
                    return CheckResult("forbidden-patterns", False, f"Ψ({y}) on B_{p}")
        return CheckResult("forbidden-patterns", True, f"{len(patterns)} patterns, Ψ windows clean")
    for m in range(max_m + 1):
        for w in itertools.product(letters, repeat=m + 1):
            window = WindowConfig(1, m, tuple(w))
            if is_admissible(g, w) != excluded_by(patterns, window):
                return CheckResult("forbidden-patterns", False, f"{[x.name for x in w]}")
    return CheckResult("forbidden-patterns", True, f"{len(patterns)} patterns, words up to length {max_m + 1}")


def check_groupoid(g: KGraph, budget: int = 1) -> CheckResult:
    # shortest periodic point; some cycle has period <= |Σ|
    x = next(ys[0] for q in range(1, len(alphabet(g).letters) + 1) if (ys := ep_words(g, 0, q)))
    sample = orbit_sample(g, x, budget)
    pool = list(dict.fromkeys(sample + [invert_germ(h) for h in sample]))
    by_source = defaultdict(list)
    for h in pool:
        by_source[h.x].append(h)
    triples = 0
    for a in pool:
        if not is_valid(g, a):
            return CheckResult("groupoid", False, f"invalid germ {a}")
        inv = invert_germ(a)
        if not (compose_germs(a, inv).is_unit() and compose_germs(inv, a).is_unit()):
            return CheckResult("groupoid", False, f"inverse law fails at {a}")
        for b in by_source[a.y]:
            ab = compose_germs(a, b)
            if ab.displacement != tuple(p + q for p, q in zip(a.displacement, b.displacement)):
                return CheckResult("groupoid", False, f"displacement not additive at {a}, {b}")
            for c in by_source[b.y]:
                triples += 1
                if compose_germs(ab, c) != compose_germs(a, compose_germs(b, c)):
                    return CheckResult("groupoid", False, f"associativity fails at {a}, {b}, {c}")
    return CheckResult("groupoid", True, f"{len(sample)} germs from {x}, {triples} triples")


CHECKS: tuple[Callable[[KGraph], CheckResult], ...] = (
    check_unique_factorization,
    check_factorization_of_shift,
    check_chl,
    check_shift_commutation,
    check_forbidden_patterns,
    check_round_trip,
    check_covariance,
    check_contractivity,
    check_groupoid,
)


def run_checks(g: KGraph, allow_sources: bool = False, stop_on_failure: bool = True) -> Iterator[CheckResult]:
    first = check_validation(g, allow_sources)
    yield first
    if not first.ok:
        return
    for check in CHECKS:
        result = check(g)
        yield result
        if stop_on_failure and not result.ok:
            return
