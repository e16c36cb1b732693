"""Bundled desk-scale k-graphs and a product construction for 1-graphs."""

from __future__ import annotations

import itertools
from functools import lru_cache
from importlib import resources

from .kgraph import Edge, KGraph, build_kgraph, load_kgraph

BUILTINS = ("flip2", "prod3", "delta2", "two_letter", "cycle")


@lru_cache(maxsize=None)
def builtin(name: str) -> KGraph:
    """Load one of the bundled specs (see ``BUILTINS``)."""
    if name not in BUILTINS:
        raise KeyError(f"unknown builtin k-graph {name!r}; choose from {BUILTINS}")
    return load_kgraph(resources.files("kshift.data").joinpath(f"{name}.json").read_text(encoding="utf-8"))


def builtin_path(name: str):
    return resources.files("kshift.data").joinpath(f"{name}.json")


def product_kgraph(*factors: KGraph) -> KGraph:
    """Cartesian product of 1-graphs, a k-graph with flip squares (f,g) -> (g,f)."""
    for f in factors:
        if f.rank != 1:
            raise ValueError("product_kgraph takes 1-graphs")
    k = len(factors)
    single = all(len(f.vertices) == 1 for f in factors)
    ids = [e for f in factors for e in f.edges]
    # factors may reuse edge ids; tag them with the color then
    shared = len(set(ids)) != len(ids)

    def vname(vs):
        return vs[0] if single else "(" + ",".join(vs) + ")"

    def ename(i, e, vs):
        base = f"{e.id}{i + 1}" if shared else e.id
        return base if single else f"{base}@{vname(vs)}"

    vertices = list(itertools.product(*(f.vertices for f in factors)))
    edges, lookup = [], {}
    for i, f in enumerate(factors):
        for e in sorted(f.edges.values(), key=lambda e: e.id):
            for vs in vertices:
                if vs[i] != e.range:
                    continue
                src = vs[:i] + (e.source,) + vs[i + 1:]
                ed = Edge(ename(i, e, vs), i + 1, vname(vs), vname(src))
                edges.append(ed)
                lookup[i, e.id, vs] = ed
    squares = {}
    for (i, eid, vs), fe in lookup.items():
        for (j, gid, ws), ge in lookup.items():
            if not i < j or fe.source != ge.range:
                continue
            # f·g = g'·f' where g' carries g at range(f) and f' carries f below g'
            gp = lookup[j, gid, vs]
            below = vs[:j] + (factors[j].edges[gid].source,) + vs[j + 1:]
            fp = lookup[i, eid, below]
            squares[fe.id, ge.id] = (gp.id, fp.id)
    return build_kgraph(k, [vname(vs) for vs in vertices], edges, squares)
