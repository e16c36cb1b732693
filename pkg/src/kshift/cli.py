"""``kshift`` command-line entry point.

Exit codes: 0 success, 1 domain error (invalid k-graph, inadmissible word),
2 usage or IO error.  Every output is a pure function of the arguments.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Sequence

from .automata import EPWord, alpha, alpha_word, apply_code_ep, apply_code_word, phi_code
from .conformance import run_checks
from .errors import KShiftError, SpecParseError
from .groupoid import germs_to_json, orbit_sample, parse_ep, preimage_caps
from .kgraph import KGraph, load_kgraph, validate
from .library import BUILTINS, builtin_path
from .markov import alphabet, is_admissible, transition_matrix
from .reconstruction import psi_window, reconstruct_segment

COMMANDS = ("validate", "tables", "run", "reconstruct", "window", "germs", "check", "export-dot")
# one DOT edge style per color, cycling if k is large
STYLES = (("blue", "solid"), ("red", "dashed"), ("darkgreen", "dotted"), ("purple", "bold"))


class UsageError(Exception):
    pass


def _degree(d: Sequence[int]) -> str:
    return "(" + ",".join(str(c) for c in d) + ")"


def _vector(text: str | None, rank: int, flag: str) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        v = tuple(int(c) for c in text.split(","))
    except ValueError:
        raise UsageError(f"{flag} expects comma-separated integers, got {text!r}") from None
    if len(v) != rank or any(c < 0 for c in v):
        raise UsageError(f"{flag} needs {rank} nonnegative entries, got {text!r}")
    return v


def _ep_text(y: EPWord) -> str:
    return ",".join(x.name for x in y.preperiod) + "/" + ",".join(x.name for x in y.period)


def _load(spec: str) -> KGraph:
    if spec.startswith("builtin:"):
        name = spec.split(":", 1)[1]
        if name not in BUILTINS:
            raise UsageError(f"unknown builtin {name!r}; choose from {', '.join(BUILTINS)}")
        spec = str(builtin_path(name))
    path = Path(spec)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {spec}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"{spec}: invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise SpecParseError(f"{spec}: expected a JSON object")
    return load_kgraph(data)


def _require_valid(g: KGraph, allow_sources: bool) -> None:
    report = validate(g, allow_sources=allow_sources)
    if not report.ok:
        lines = [f"{v.kind}: {v.witness} {v.detail}".rstrip() for v in report.violations]
        raise KShiftError("invalid k-graph\n" + "\n".join(lines))


def _code_index(args, g: KGraph, required: bool = False) -> int | None:
    if args.code is None:
        if required:
            raise UsageError("--code is required")
        return None
    if not 1 <= args.code <= g.rank:
        raise UsageError(f"--code must be between 1 and {g.rank}")
    return args.code


def _word(args) -> str:
    if args.word is None:
        raise UsageError("--word is required")
    return args.word


# --- renderers ------------------------------------------------------------------

def skeleton_dot(g: KGraph) -> str:
    lines = ["digraph skeleton {", "  rankdir=LR;"]
    for v in g.vertices:
        lines.append(f'  "{v}";')
    for eid in sorted(g.edges):
        e = g.edges[eid]
        color, style = STYLES[(e.color - 1) % len(STYLES)]
        # arrows point from source to range
        lines.append(f'  "{e.source}" -> "{e.range}" [label="{eid}", color={color}, style={style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def code_dot(g: KGraph, i: int) -> str:
    code = phi_code(g, i)
    lines = [f"digraph phi{i} {{", "  rankdir=LR;"]
    for lam in alphabet(g).letters:
        lines.append(f'  "{lam.name}";')
    for w in code.windows():
        lines.append(f'  "{w[0].name}" -> "{w[1].name}" [label="{code(w).name}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def matrix_dot(g: KGraph) -> str:
    A = transition_matrix(g)
    lines = ["digraph transitions {", "  rankdir=LR;"]
    for lam in A.letters:
        lines.append(f'  "{lam.name}";')
    for lam in A.letters:
        for mu in A.letters:
            if A.allows(lam, mu):
                lines.append(f'  "{lam.name}" -> "{mu.name}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def window_csv(w) -> str:
    k, p = w.rank, w.horizon
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    outer = [f"n{c}" for c in range(k, 1, -1)]
    out.writerow(outer + [f"n1={t}" for t in range(p + 1)])
    # lexicographic cell order already runs n_1 fastest when read as (n_k, ..., n_1)
    rows: dict = {}
    for n, cell in w.items():
        rows.setdefault(tuple(reversed(n[1:])), []).append((n[0], cell.name))
    for key in sorted(rows):
        out.writerow(list(key) + [name for _, name in sorted(rows[key])])
    return buf.getvalue()


def window_json(w) -> str:
    cells = [{"n": list(n), "letter": cell.name} for n, cell in w.items()]
    return json.dumps({"rank": w.rank, "horizon": w.horizon, "cells": cells}, indent=2, ensure_ascii=False) + "\n"


# --- commands -------------------------------------------------------------------

def cmd_validate(args, g: KGraph, out) -> int:
    report = validate(g, allow_sources=args.allow_sources)
    for w in report.warnings:
        print(f"warning: {w.kind}: {w.witness} {w.detail}".rstrip(), file=sys.stderr)
    if report.ok:
        print(f"ok: unique factorization verified to degree {_degree(report.certified_degree)}", file=out)
        return 0
    print(f"invalid: {len(report.violations)} violation(s)", file=out)
    for v in report.violations:
        print(f"{v.kind}: {v.witness} {v.detail}".rstrip(), file=out)
    return 1


def cmd_tables(args, g: KGraph, out) -> int:
    i = _code_index(args, g)
    fmt = args.format or "csv"
    if i is None:
        A = transition_matrix(g)
        if fmt == "csv":
            out.write(A.to_csv())
        elif fmt == "json":
            data = {"alphabet": [lam.name for lam in A.letters], "matrix": A.bits.astype(int).tolist()}
            out.write(json.dumps(data, indent=2, ensure_ascii=False) + "\n")
        else:
            out.write(matrix_dot(g))
        return 0
    code = phi_code(g, i)
    if fmt == "csv":
        out.write(code.to_csv())
    elif fmt == "json":
        rows = [{"window": [lam.name for lam in w], "output": code(w).name} for w in code.windows()]
        out.write(json.dumps({"code": i, "anticipation": code.anticipation, "table": rows},
                             indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(code_dot(g, i))
    return 0


def cmd_run(args, g: KGraph, out) -> int:
    text = _word(args)
    i = _code_index(args, g)
    n = _vector(args.n, g.rank, "--n")
    if (i is None) == (n is None):
        raise UsageError("run needs exactly one of --code or --n")
    if "/" in text:
        y = parse_ep(g, text)
        z = apply_code_ep(phi_code(g, i), y) if i is not None else alpha(g, y, n)
        print(_ep_text(z), file=out)
    else:
        w = alphabet(g).parse_word(text)
        if not is_admissible(g, w):
            raise KShiftError(f"word {text} is not A-admissible")
        z = apply_code_word(phi_code(g, i), w) if i is not None else alpha_word(g, w, n)
        print(",".join(x.name for x in z), file=out)
    return 0


def cmd_reconstruct(args, g: KGraph, out) -> int:
    text = _word(args)
    n = _vector(args.n, g.rank, "--n")
    if n is None:
        raise UsageError("--n is required")
    m = _vector(args.m, g.rank, "--m") or (0,) * g.rank
    if any(a > b for a, b in zip(m, n)):
        raise UsageError(f"--m {args.m} is not <= --n {args.n}")
    y = parse_ep(g, text) if "/" in text else alphabet(g).parse_word(text)
    print(reconstruct_segment(g, y, m, n).value.name, file=out)
    return 0


def cmd_window(args, g: KGraph, out) -> int:
    y = parse_ep(g, _word(args))
    horizon = 2 if args.horizon is None else args.horizon
    w = psi_window(g, y, horizon)
    out.write(window_json(w) if args.format == "json" else window_csv(w))
    return 0


def cmd_germs(args, g: KGraph, out) -> int:
    x = parse_ep(g, _word(args))
    budget = 2 if args.budget is None else args.budget
    cap_u, cap_v = preimage_caps(x, budget)
    germs = orbit_sample(g, x, budget, cap_u, cap_v)
    header = {
        "x": _ep_text(x),
        "budget": budget,
        "preimage_cap": {"max_preperiod": cap_u, "max_period": cap_v},
        "note": "complete only among eventually periodic y within preimage_cap",
        "count": len(germs),
    }
    body = json.loads(germs_to_json(germs))
    out.write(json.dumps({**header, "germs": body}, indent=2, ensure_ascii=False) + "\n")
    return 0


def cmd_check(args, g: KGraph, out) -> int:
    for result in run_checks(g, allow_sources=args.allow_sources):
        print(result.line(), file=out)
        if not result.ok:
            return 1
    return 0


def cmd_export_dot(args, g: KGraph, out) -> int:
    i = _code_index(args, g)
    out.write(skeleton_dot(g) if i is None else code_dot(g, i))
    return 0


HANDLERS = {
    "validate": cmd_validate,
    "tables": cmd_tables,
    "run": cmd_run,
    "reconstruct": cmd_reconstruct,
    "window": cmd_window,
    "germs": cmd_germs,
    "check": cmd_check,
    "export-dot": cmd_export_dot,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kshift", description="k-graphs as Markov shifts with commuting block codes")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("spec", help="k-graph JSON file, or builtin:NAME")
    p.add_argument("--code", type=int, help="color i of the block code φ_i")
    p.add_argument("--word", help="letters joined by ',' ; 'u/v' means u·v·v·…")
    p.add_argument("--m", help="degree, comma separated")
    p.add_argument("--n", help="degree, comma separated")
    p.add_argument("--horizon", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--format", choices=("csv", "json", "dot"))
    p.add_argument("--allow-sources", action="store_true")
    return p


def run_cli(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        for flag in ("horizon", "budget"):
            if getattr(args, flag) is not None and getattr(args, flag) < 0:
                raise UsageError(f"--{flag} must be nonnegative")
        g = _load(args.spec)
        if args.command not in ("validate", "check"):
            _require_valid(g, args.allow_sources)
        return HANDLERS[args.command](args, g, out)
    except UsageError as exc:
        print(f"kshift: error: {exc}", file=sys.stderr)
        return 2
    except KShiftError as exc:
        print(f"kshift: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
