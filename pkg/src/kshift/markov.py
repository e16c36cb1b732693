"""The alphabet Σ of degree-(1,…,1) morphisms and its Markov transition matrix."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptyAlphabet, UnknownLetter
from .kgraph import KGraph, Morphism, enumerate_morphisms, ones
from .shifts import Pattern


@dataclass(frozen=True, eq=False)
class Alphabet:
    letters: tuple[Morphism, ...]
    index: dict = field(repr=False)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __contains__(self, letter) -> bool:
        return letter in self.index

    def names(self) -> list[str]:
        return [lam.name for lam in self.letters]

    def by_name(self, name: str) -> Morphism:
        for lam in self.letters:
            if lam.name == name:
                return lam
        raise UnknownLetter(f"unknown letter {name!r}")

    def parse_word(self, text: str) -> tuple[Morphism, ...]:
        """Comma-separated letter names, e.g. ``"a·x,b·y"``."""
        text = text.strip()
        if not text:
            return ()
        return tuple(self.by_name(tok.strip()) for tok in text.split(","))


@dataclass(frozen=True, eq=False)
class TransitionMatrix:
    letters: tuple[Morphism, ...]
    bits: np.ndarray
    rank: int = 1

    @property
    def size(self) -> int:
        return len(self.letters)

    def allows(self, lam: Morphism, mu: Morphism) -> bool:
        idx = {x: i for i, x in enumerate(self.letters)}
        return bool(self.bits[idx[lam], idx[mu]])

    def to_csv(self) -> str:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        names = [lam.name for lam in self.letters]
        out.writerow(["A"] + names)
        for name, row in zip(names, self.bits):
            out.writerow([name] + [int(b) for b in row])
        return buf.getvalue()


@lru_cache(maxsize=None)
def alphabet(g: KGraph) -> Alphabet:
    letters = tuple(enumerate_morphisms(g, ones(g.rank)))
    if not letters:
        raise EmptyAlphabet("the k-graph has no morphism of degree (1,...,1)")
    return Alphabet(letters, {lam: i for i, lam in enumerate(letters)})


@lru_cache(maxsize=None)
def transition_matrix(g: KGraph) -> TransitionMatrix:
    letters = alphabet(g).letters
    src = np.array([lam.source for lam in letters], dtype=object)
    rng = np.array([mu.range for mu in letters], dtype=object)
    bits = (src[:, None] == rng[None, :]).astype(bool)
    bits.setflags(write=False)
    return TransitionMatrix(letters, bits, g.rank)


def successors(g: KGraph, lam: Morphism) -> tuple[Morphism, ...]:
    return _successors(g)[lam]


@lru_cache(maxsize=None)
def _successors(g: KGraph) -> dict:
    letters = alphabet(g).letters
    return {lam: tuple(mu for mu in letters if lam.source == mu.range) for lam in letters}


def language(g: KGraph, m: int) -> list[tuple[Morphism, ...]]:
    """All A-admissible words of length m+1, in lexicographic letter order."""
    words = [(lam,) for lam in alphabet(g).letters]
    for _ in range(m):
        words = [w + (mu,) for w in words for mu in successors(g, w[-1])]
    return words


def is_admissible(g: KGraph, w: Sequence[Morphism]) -> bool:
    sigma = alphabet(g)
    for lam in w:
        if lam not in sigma:
            raise UnknownLetter(f"{lam} is not a letter of the alphabet")
    return all(lam.source == mu.range for lam, mu in zip(w, w[1:]))


def markov_forbidden_patterns(A: TransitionMatrix) -> list[Pattern]:
    """One two-cell pattern on {0·1, 1·1} per zero entry of A."""
    domain = ((0,) * A.rank, (1,) * A.rank)
    out = []
    for i, j in zip(*np.nonzero(~A.bits)):
        out.append(Pattern(domain, (A.letters[i], A.letters[j])))
    return out


def letter_names(word: Iterable[Morphism]) -> str:
    return ",".join(lam.name for lam in word)
