"""Finite k-graphs presented by a colored 1-skeleton plus commuting squares.

A morphism is stored in color-sorted normal form: all color-1 edges first,
then color-2 edges, and so on.  Edge words are read left to right as
composites in the category, so ``[e, f]`` means ``e·f`` and requires
``source(e) == range(f)``.

Two routes to the unique factorization property live here.  ``factorize``
rearranges a word by square rewriting (deterministic bubble sort), while
``enumerate_factorizations`` is a brute-force oracle that searches the
full square-equivalence class of a word.  The two share no code beyond
the raw tables.
"""

from __future__ import annotations

import itertools
import json
from collections import defaultdict, deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    ColorOutOfRange,
    DegreeOutOfRange,
    MissingSquare,
    NotComposable,
    SpecParseError,
    UnknownEdge,
    UnknownVertex,
)

Degree = tuple[int, ...]


# --- degree arithmetic on N^k -------------------------------------------------

def zeros(k: int) -> Degree:
    return (0,) * k


def ones(k: int, times: int = 1) -> Degree:
    return (times,) * k


def unit(k: int, i: int) -> Degree:
    """The basis vector e_i, with colors numbered from 1."""
    if not 1 <= i <= k:
        raise ColorOutOfRange(f"color {i} outside 1..{k}")
    return tuple(1 if c == i else 0 for c in range(1, k + 1))


def add(a: Sequence[int], b: Sequence[int]) -> Degree:
    if len(a) != len(b):
        raise DegreeOutOfRange(f"rank mismatch {tuple(a)} vs {tuple(b)}")
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Degree:
    """Difference in Z^k (entries may be negative)."""
    if len(a) != len(b):
        raise DegreeOutOfRange(f"rank mismatch {tuple(a)} vs {tuple(b)}")
    return tuple(x - y for x, y in zip(a, b))


def leq(a: Sequence[int], b: Sequence[int]) -> bool:
    return len(a) == len(b) and all(x <= y for x, y in zip(a, b))


def box(n: Sequence[int]) -> Iterator[Degree]:
    """All m with 0 <= m <= n, in lexicographic order."""
    return itertools.product(*(range(c + 1) for c in n))


def colors_of(n: Sequence[int]) -> tuple[int, ...]:
    """Color sequence of the sorted normal form of degree n."""
    return tuple(c for c, cnt in enumerate(n, start=1) for _ in range(cnt))


# --- data model ---------------------------------------------------------------

@dataclass(frozen=True)
class Edge:
    id: str
    color: int
    range: str
    source: str


@dataclass(frozen=True, eq=False)
class KGraph:
    """A finite k-graph given by its colored 1-skeleton and square table.

    ``squares`` maps a composable pair ``(f, g)`` with ``color(f) < color(g)``
    to ``(g', f')`` asserting ``f·g = g'·f'``.  Instances are immutable and
    compare by identity; build them with :func:`build_kgraph`.
    """

    rank: int
    vertices: tuple[str, ...]
    edges: Mapping[str, Edge]
    squares: Mapping[tuple[str, str], tuple[str, str]]
    _inverse: Mapping[tuple[str, str], tuple[tuple[str, str], ...]] = field(
        default_factory=dict, repr=False)
    _into: Mapping[tuple[str, int], tuple[str, ...]] = field(
        default_factory=dict, repr=False)

    def __post_init__(self):
        inverse = defaultdict(list)
        for key in sorted(self.squares):
            inverse[self.squares[key]].append(key)
        object.__setattr__(self, "_inverse", {v: tuple(ks) for v, ks in inverse.items()})
        into = defaultdict(list)
        for e in sorted(self.edges.values(), key=lambda e: e.id):
            into[e.range, e.color].append(e.id)
        object.__setattr__(self, "_into", {key: tuple(v) for key, v in into.items()})

    def color(self, edge_id: str) -> int:
        return self.edges[edge_id].color

    def edges_into(self, vertex: str, color: int) -> tuple[str, ...]:
        """Color-``color`` edges with range ``vertex``, sorted by id."""
        return self._into.get((vertex, color), ())

    def edges_of_color(self, color: int) -> list[str]:
        return sorted(e.id for e in self.edges.values() if e.color == color)

    def identity(self, vertex: str) -> "Morphism":
        if vertex not in self.vertices:
            raise UnknownVertex(vertex)
        return Morphism((), zeros(self.rank), vertex, vertex, self)

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "vertices": list(self.vertices),
            "edges": [
                {"id": e.id, "color": e.color, "range": e.range, "source": e.source}
                for e in sorted(self.edges.values(), key=lambda e: e.id)
            ],
            "squares": [
                {"colors": [self.color(f), self.color(g)], "lhs": [f, g], "rhs": list(self.squares[f, g])}
                for f, g in sorted(self.squares)
            ],
        }


@dataclass(frozen=True)
class Morphism:
    """A normal-form element of a k-graph.

    Equality and hashing use the edge word and endpoints only; the owning
    graph is carried along for convenience.
    """

    word: tuple[str, ...]
    degree: Degree
    range: str
    source: str
    graph: KGraph = field(compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.word, self.range, self.source)))

    def __hash__(self) -> int:
        return self._hash

    @property
    def name(self) -> str:
        if not self.word:
            return f"id({self.range})"
        return "·".join(self.word)

    def __str__(self) -> str:
        return self.name

    def __mul__(self, other: "Morphism") -> "Morphism":
        return compose(self, other)

    def sort_key(self):
        return (self.word, self.range)

    def __lt__(self, other: "Morphism") -> bool:
        return self.sort_key() < other.sort_key()


@dataclass(frozen=True)
class Violation:
    kind: str
    witness: tuple
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...] = ()
    warnings: tuple[Violation, ...] = ()
    certified_degree: Degree | None = None

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


# --- construction -------------------------------------------------------------

def _edge_record(raw) -> Edge:
    if isinstance(raw, Edge):
        return raw
    if isinstance(raw, Mapping):
        try:
            return Edge(str(raw["id"]), int(raw["color"]), str(raw["range"]), str(raw["source"]))
        except KeyError as exc:
            raise SpecParseError(f"edge record missing field {exc}") from None
    edge_id, color, rng, src = raw
    return Edge(str(edge_id), int(color), str(rng), str(src))


def build_kgraph(rank: int, vertices: Iterable[str], edges: Iterable,
                 squares: Mapping | Iterable = ()) -> KGraph:
    """Assemble a KGraph, checking that every reference resolves.

    ``edges`` holds :class:`Edge` objects, ``(id, color, range, source)``
    tuples or dicts with those keys.  ``squares`` is a mapping
    ``(f, g) -> (g', f')`` or an iterable of JSON-style records with
    ``lhs``/``rhs`` keys.  The k-graph axioms themselves are checked by
    :func:`validate`, not here.
    """
    if int(rank) < 1:
        raise SpecParseError(f"rank must be positive, got {rank}")
    rank = int(rank)
    verts = tuple(str(v) for v in vertices)
    if len(set(verts)) != len(verts):
        raise SpecParseError("duplicate vertex id")
    vset = set(verts)

    edge_map: dict[str, Edge] = {}
    for raw in edges:
        e = _edge_record(raw)
        if e.id in edge_map:
            raise SpecParseError(f"duplicate edge id {e.id!r}")
        if not 1 <= e.color <= rank:
            raise ColorOutOfRange(f"edge {e.id!r} has color {e.color}, rank is {rank}")
        for end in (e.range, e.source):
            if end not in vset:
                raise UnknownVertex(f"edge {e.id!r} references undeclared vertex {end!r}")
        edge_map[e.id] = e

    if isinstance(squares, Mapping):
        items = [(tuple(k), tuple(v)) for k, v in squares.items()]
    else:
        items = []
        for rec in squares:
            if isinstance(rec, Mapping):
                try:
                    items.append((tuple(rec["lhs"]), tuple(rec["rhs"])))
                except KeyError as exc:
                    raise SpecParseError(f"square record missing field {exc}") from None
            else:
                lhs, rhs = rec
                items.append((tuple(lhs), tuple(rhs)))

    sq: dict[tuple[str, str], tuple[str, str]] = {}
    for lhs, rhs in items:
        if len(lhs) != 2 or len(rhs) != 2:
            raise SpecParseError(f"square sides must be edge pairs: {lhs} -> {rhs}")
        for e in lhs + rhs:
            if e not in edge_map:
                raise UnknownEdge(f"square {lhs} -> {rhs} references undeclared edge {e!r}")
        f, g = lhs
        gp, fp = rhs
        ci, cj = edge_map[f].color, edge_map[g].color
        if not ci < cj:
            raise SpecParseError(f"square key {lhs} must have color(f) < color(g)")
        if (edge_map[gp].color, edge_map[fp].color) != (cj, ci):
            raise SpecParseError(f"square value {rhs} must have colors ({cj}, {ci})")
        if lhs in sq:
            raise SpecParseError(f"duplicate square key {lhs}")
        sq[lhs] = rhs
    return KGraph(rank, verts, edge_map, sq)


def load_kgraph(source) -> KGraph:
    """Parse a k-graph spec from a path, JSON text or an already-decoded dict."""
    if isinstance(source, Mapping):
        data = source
    else:
        text = source
        if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
            text = Path(source).read_text(encoding="utf-8")
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecParseError(f"invalid JSON: {exc}") from None
    for key in ("rank", "vertices", "edges"):
        if key not in data:
            raise SpecParseError(f"spec missing {key!r}")
    for ident in list(data["vertices"]) + [e.get("id", "") for e in data["edges"]]:
        if not isinstance(ident, str) or not ident or not ident.isascii() or any(c.isspace() for c in ident):
            raise SpecParseError(f"bad identifier {ident!r}")
    g = build_kgraph(data["rank"], data["vertices"], data["edges"], data.get("squares", []))
    for rec in data.get("squares", []):
        if "colors" in rec:
            f, h = rec["lhs"]
            if list(rec["colors"]) != [g.color(f), g.color(h)]:
                raise SpecParseError(f"square {rec['lhs']} declares colors {rec['colors']}")
    return g


def dump_kgraph(g: KGraph) -> str:
    return json.dumps(g.to_dict(), indent=2, sort_keys=True)


# --- rewriting ----------------------------------------------------------------

def _check_path(g: KGraph, word: Sequence[str]) -> None:
    for e in word:
        if e not in g.edges:
            raise UnknownEdge(e)
    for e, f in zip(word, word[1:]):
        if g.edges[e].source != g.edges[f].range:
            raise NotComposable(f"source({e}) != range({f})")


def _swap(g: KGraph, word: tuple[str, ...], pos: int) -> tuple[str, ...]:
    """Exchange the colors at ``pos``, ``pos+1`` using one square."""
    e, f = word[pos], word[pos + 1]
    ce, cf = g.color(e), g.color(f)
    if ce < cf:
        try:
            new = g.squares[e, f]
        except KeyError:
            raise MissingSquare(f"no square with lhs ({e}, {f})") from None
    elif ce > cf:
        keys = g._inverse.get((e, f))
        if not keys:
            raise MissingSquare(f"no square with rhs ({e}, {f})")
        new = keys[0]
    else:
        raise ValueError("cannot swap two edges of the same color")
    return word[:pos] + new + word[pos + 2:]


def _arrange(g: KGraph, word: tuple[str, ...], target: Sequence[int]) -> tuple[str, ...]:
    """Rewrite ``word`` into the given color sequence by adjacent swaps.

    The t-th occurrence of a color moves to the t-th slot of that color in
    ``target``, so equal colors never cross.
    """
    slots = defaultdict(deque)
    for pos, c in enumerate(target):
        slots[c].append(pos)
    rank = [slots[g.color(e)].popleft() for e in word]
    word = tuple(word)
    changed = True
    while changed:
        changed = False
        for i in range(len(word) - 1):
            if rank[i] > rank[i + 1]:
                word = _swap(g, word, i)
                rank[i], rank[i + 1] = rank[i + 1], rank[i]
                changed = True
    return word


def _morphism(g: KGraph, word: tuple[str, ...], vertex: str | None = None) -> Morphism:
    if not word:
        return g.identity(vertex)
    deg = [0] * g.rank
    for e in word:
        deg[g.color(e) - 1] += 1
    return Morphism(word, tuple(deg), g.edges[word[0]].range, g.edges[word[-1]].source, g)


def normalize(g: KGraph, raw_word: Sequence[str], vertex: str | None = None) -> Morphism:
    """Color-sorted normal form of a composable edge word.

    An empty word needs ``vertex`` to name the identity it denotes.
    """
    word = tuple(raw_word)
    if not word:
        if vertex is None:
            raise NotComposable("empty word needs an explicit vertex")
        return g.identity(vertex)
    _check_path(g, word)
    target = sorted(g.color(e) for e in word)
    return _morphism(g, _arrange(g, word, target))


def compose(lhs: Morphism, rhs: Morphism) -> Morphism:
    if lhs.graph is not rhs.graph:
        raise NotComposable("morphisms belong to different k-graphs")
    if lhs.source != rhs.range:
        raise NotComposable(f"source({lhs.name})={lhs.source} != range({rhs.name})={rhs.range}")
    if not lhs.word:
        return rhs
    if not rhs.word:
        return lhs
    return normalize(lhs.graph, lhs.word + rhs.word)


def compose_all(morphisms: Sequence[Morphism]) -> Morphism:
    """Left-to-right composite of a nonempty sequence."""
    result = morphisms[0]
    for mu in morphisms[1:]:
        result = compose(result, mu)
    return result


def split(lam: Morphism, *degrees: Sequence[int]) -> tuple[Morphism, ...]:
    """Unique factorization ``lam = μ₁·μ₂·…`` with ``d(μᵢ) = degrees[i]``."""
    g = lam.graph
    degrees = [tuple(d) for d in degrees]
    total = zeros(g.rank)
    for d in degrees:
        if len(d) != g.rank or any(c < 0 for c in d):
            raise DegreeOutOfRange(f"bad degree {d}")
        total = add(total, d)
    if total != lam.degree:
        raise DegreeOutOfRange(f"degrees {degrees} do not sum to {lam.degree}")
    target = [c for d in degrees for c in colors_of(d)]
    word = _arrange(g, lam.word, target)
    parts, pos, vertex = [], 0, lam.range
    for d in degrees:
        size = sum(d)
        piece = word[pos:pos + size]
        mu = _morphism(g, piece, vertex)
        parts.append(mu)
        vertex = mu.source
        pos += size
    return tuple(parts)


def factorize(lam: Morphism, m: Sequence[int]) -> tuple[Morphism, Morphism]:
    m = tuple(m)
    if not leq(m, lam.degree):
        raise DegreeOutOfRange(f"{m} is not <= d({lam.name}) = {lam.degree}")
    alpha, beta = split(lam, m, sub(lam.degree, m))
    return alpha, beta


# --- enumeration and the brute-force oracle -----------------------------------

def enumerate_morphisms(g: KGraph, n: Sequence[int]) -> list[Morphism]:
    """All composable color-sorted words of degree n, sorted by word."""
    n = tuple(n)
    if len(n) != g.rank:
        raise DegreeOutOfRange(f"degree {n} has wrong rank")
    if sum(n) == 0:
        return [g.identity(v) for v in sorted(g.vertices)]
    seq = colors_of(n)
    out: list[Morphism] = []

    def extend(prefix: tuple[str, ...]):
        if len(prefix) == len(seq):
            out.append(_morphism(g, prefix))
            return
        color = seq[len(prefix)]
        if prefix:
            candidates = g.edges_into(g.edges[prefix[-1]].source, color)
        else:
            candidates = g.edges_of_color(color)
        for e in candidates:
            extend(prefix + (e,))

    extend(())
    out.sort(key=Morphism.sort_key)
    return out


def equivalence_class(g: KGraph, word: Sequence[str]) -> frozenset[tuple[str, ...]]:
    """Every edge word related to ``word`` by square moves in either direction.

    Multi-valued inverse squares (a broken table) contribute all branches.
    """
    start = tuple(word)
    seen = {start}
    todo = deque([start])
    while todo:
        w = todo.popleft()
        for i in range(len(w) - 1):
            e, f = w[i], w[i + 1]
            ce, cf = g.color(e), g.color(f)
            if ce < cf:
                nexts = [g.squares[e, f]] if (e, f) in g.squares else []
            elif ce > cf:
                nexts = list(g._inverse.get((e, f), ()))
            else:
                nexts = []
            for pair in nexts:
                nw = w[:i] + pair + w[i + 2:]
                if nw not in seen:
                    seen.add(nw)
                    todo.append(nw)
    return frozenset(seen)


def _oracle_pairs(lam: Morphism, m: Degree, cls, cache: dict) -> list[tuple[Morphism, Morphism]]:
    g = lam.graph
    rest = sub(lam.degree, m)
    for d in (m, rest):
        if d not in cache:
            cache[d] = enumerate_morphisms(g, d)
    found = []
    for alpha in cache[m]:
        if alpha.range != lam.range:
            continue
        for beta in cache[rest]:
            if beta.source != lam.source or alpha.source != beta.range:
                continue
            if not alpha.word and not beta.word:
                ok = alpha.range == lam.range
            else:
                ok = alpha.word + beta.word in cls
            if ok:
                found.append((alpha, beta))
    return found


def enumerate_factorizations(lam: Morphism, m: Sequence[int]) -> list[tuple[Morphism, Morphism]]:
    """Brute force: every (α, β) of degrees (m, d(λ)-m) whose concatenation
    is square-equivalent to λ.  On a valid k-graph the list is a singleton."""
    m = tuple(m)
    if not leq(m, lam.degree):
        raise DegreeOutOfRange(f"{m} is not <= {lam.degree}")
    cls = equivalence_class(lam.graph, lam.word) if lam.word else frozenset({()})
    return _oracle_pairs(lam, m, cls, {})


# --- validation ---------------------------------------------------------------

def _square_violations(g: KGraph) -> list[Violation]:
    out = []
    e = g.edges
    for i, j in itertools.combinations(range(1, g.rank + 1), 2):
        keys = [(f, h) for f in g.edges_of_color(i) for h in g.edges_of_color(j)
                if e[f].source == e[h].range]
        values = [(h, f) for h in g.edges_of_color(j) for f in g.edges_of_color(i)
                  if e[h].source == e[f].range]
        for key in keys:
            if key not in g.squares:
                out.append(Violation("SquareNotBijective", key, f"composable pair {key} has no square"))
        counts: dict = defaultdict(list)
        for key, val in g.squares.items():
            if (g.color(key[0]), g.color(key[1])) == (i, j):
                counts[val].append(key)
        for val in values:
            if len(counts.get(val, ())) != 1:
                out.append(Violation(
                    "SquareNotBijective", (val,) + tuple(counts.get(val, ())),
                    f"composable pair {val} is the value of {len(counts.get(val, ()))} squares"))
    for (f, h), (hp, fp) in sorted(g.squares.items()):
        if e[f].source != e[h].range:
            out.append(Violation("SquareEndpointMismatch", (f, h), "lhs not composable"))
        if e[hp].source != e[fp].range:
            out.append(Violation("SquareEndpointMismatch", (hp, fp), "rhs not composable"))
        if e[f].range != e[hp].range or e[h].source != e[fp].source:
            out.append(Violation("SquareEndpointMismatch", ((f, h), (hp, fp)), "endpoints differ"))
    return out


def _hexagon_violations(g: KGraph) -> list[Violation]:
    out = []
    for i, j, l in itertools.combinations(range(1, g.rank + 1), 3):
        for f in g.edges_of_color(i):
            for h in g.edges_into(g.edges[f].source, j):
                for t in g.edges_into(g.edges[h].source, l):
                    w = (f, h, t)
                    try:
                        a = _swap(g, _swap(g, _swap(g, w, 0), 1), 0)
                        b = _swap(g, _swap(g, _swap(g, w, 1), 0), 1)
                    except MissingSquare as exc:
                        out.append(Violation("HexagonFailure", w, str(exc)))
                        continue
                    if a != b:
                        out.append(Violation("HexagonFailure", w, f"{a} != {b}"))
    return out


def validate(g: KGraph, allow_sources: bool = False, budget: int = 2) -> ValidationReport:
    """Check the k-graph axioms and certify unique factorization.

    Unique factorization is verified exhaustively against the brute-force
    oracle for every morphism of degree <= (budget, ..., budget).
    """
    violations = _square_violations(g)
    warnings = []
    for v in g.vertices:
        for c in range(1, g.rank + 1):
            if not g.edges_into(v, c):
                item = Violation("SourcelessVertex", (v, c), f"vertex {v} receives no color-{c} edge")
                (warnings if allow_sources else violations).append(item)
    if g.rank >= 3 and not violations:
        violations += _hexagon_violations(g)

    cache: dict = {}
    for d in box(ones(g.rank, budget)):
        if d not in cache:
            cache[d] = enumerate_morphisms(g, d)
        for lam in cache[d]:
            cls = equivalence_class(g, lam.word) if lam.word else frozenset({()})
            for m in box(d):
                pairs = _oracle_pairs(lam, m, cls, cache)
                if len(pairs) != 1:
                    violations.append(Violation(
                        "UniqueFactorizationFailure", (lam.name, m) + tuple((a.name, b.name) for a, b in pairs),
                        f"{len(pairs)} factorizations of {lam.name} at {m}"))
                    break
    return ValidationReport(not violations, tuple(violations), tuple(warnings), ones(g.rank, budget))
