"""Command line: ``taucluster {tautilt,tcmc,sequences,verify} --algebra FILE``.

Exit codes: 0 pass, 1 verification failure, 2 input error, 3 cap overflow.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence

from .algebra import PathAlgebra, algebra_to_json, load_algebra_json
from .errors import CapOverflowError, InputError, SplitBasicError, VerificationError
from .fdmodules import registry_for
from .tcmc import (
    SiltingData,
    build_module_side,
    build_silting_side,
    check_equivalence,
    check_euler_triangularity,
    check_k0_independence,
    enumerate_presilting_sequences,
    enumerate_signed_tau_exceptional,
    label_text,
    reduced_classes,
)
from .twoterm import basic_sum, g_vector, h_map

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    algebra_path: Path
    command: str
    fmt: str = "json"
    out: Optional[Path] = None
    max_ind: int = 100
    max_mut: int = 200
    jobs: int = 1
    length: int = 0

    def __post_init__(self):
        for name in ("max_ind", "max_mut", "jobs"):
            if getattr(self, name) < 1:
                raise InputError(f"--{name.replace('_', '-')} must be positive")
        if self.length < 0:
            raise InputError("--length must be non-negative")
        if not self.algebra_path.is_file():
            raise InputError(f"algebra file not found: {self.algebra_path}")


def fingerprint(obj) -> str:
    text = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()[:12]


def load(config: RunConfig) -> PathAlgebra:
    return load_algebra_json(config.algebra_path.read_text())


def module_catalogue(alg) -> List[dict]:
    """Dimension vectors of the registered indecomposables, by registry id."""
    reg = registry_for(alg)
    return [{"id": i, "dims": list(X.dims), "fingerprint": fingerprint(X.to_json())} for i, X in enumerate(reg.reps)]


# ---------------------------------------------------------------------------
# commands


def cmd_tautilt(config: RunConfig, alg: PathAlgebra) -> tuple:
    data = SiltingData(alg, max_mut=config.max_mut)
    g = data.graph
    keys = sorted(g.nodes)
    names = {k: i for i, k in enumerate(keys)}
    reg = registry_for(alg)
    nodes = []
    for k in keys:
        pair = h_map(basic_sum(g.nodes[k], alg))
        nodes.append({
            "id": names[k],
            "g_vectors": [list(v) for v in k],
            "modules": sorted(reg.index(X) for X in pair.summands),
            "shifted_projectives": list(pair.projectives),
        })
    edges = [[names[a], names[b]] for a, b in g.edges]
    doc = {"algebra": algebra_to_json(alg), "nodes": nodes, "edges": edges, "indecomposables": module_catalogue(alg)}
    if config.fmt == "dot":
        return g.to_dot(), True
    if config.fmt == "table":
        lines = [f"{len(nodes)} support tau-tilting pairs, {len(edges)} mutations"]
        for n in nodes:
            lines.append(f"  {n['id']}: g = {n['g_vectors']}  modules {n['modules']}  shifted {n['shifted_projectives']}")
        return "\n".join(lines) + "\n", True
    return doc, True


def cmd_tcmc(config: RunConfig, alg: PathAlgebra) -> tuple:
    try:
        ss = build_silting_side(alg, max_mut=config.max_mut)
        ms = build_module_side(alg, max_ind=config.max_ind)
    except SplitBasicError as exc:
        raise SplitBasicError(f"a reduction produced a non-basic algebra: {exc}") from exc
    eq = check_equivalence(ms.graph, ss.graph)
    if config.fmt == "dot":
        return ms.graph.to_dot(), eq.passed
    if config.fmt == "table":
        g = ms.graph
        lines = [f"{len(g.objects)} objects, {g.num_morphisms()} morphisms, equivalence {'passed' if eq.passed else 'FAILED'}"]
        for key in sorted(g.objects):
            lines.append(f"  object {list(key)} rank {g.objects[key]}: {len(g.out_of(key))} morphisms out")
        return "\n".join(lines) + "\n", eq.passed
    doc = {
        "algebra": algebra_to_json(alg),
        "indecomposables": module_catalogue(alg),
        "module_side": ms.graph.to_json(),
        "silting_side": ss.graph.to_json(),
        "equivalence": eq.to_json(),
    }
    return doc, eq.passed


def _entry_json(e) -> dict:
    mods, projs = e.key()
    return {"id": (mods or projs)[0], "shifted": e.shifted, "dims": list(e.module.dims)}


def cmd_sequences(config: RunConfig, alg: PathAlgebra) -> tuple:
    t = config.length
    data = SiltingData(alg, max_mut=config.max_mut)
    cx = enumerate_presilting_sequences(alg, t, data)
    md = enumerate_signed_tau_exceptional(alg, t, config.max_ind)
    mkeys = {s.key() for s in md}
    rows = []
    ok = len({s.key() for s in cx}) == len(cx) and {s.key() for s in cx} == mkeys and len(mkeys) == len(md)
    for s in cx:
        k0 = check_k0_independence(s)
        euler = check_euler_triangularity(s) if len(s) else True
        ok = ok and k0 and euler
        rows.append({
            "entries": [_entry_json(e) for e in s.entries],
            "g_vectors": [list(g_vector(Y)) for Y in s.complexes],
            "classes": [[str(v) for v in c] for c in reduced_classes(s)] if len(s) else [],
            "matched": s.key() in mkeys,
            "k0_independent": k0,
            "euler_triangular": euler,
            "full_length": len(s) == alg.n,
        })
    if config.fmt == "table":
        lines = [f"length {t}: {len(cx)} complex-side, {len(md)} module-side, bijection {'passed' if ok else 'FAILED'}"]
        for r, s in zip(rows, cx):
            text = ", ".join(label_text(e.key()) for e in s.entries)
            lines.append(f"  ({text})  g = {r['g_vectors']}")
        return "\n".join(lines) + "\n", ok
    if config.fmt == "dot":
        raise InputError("sequences support json and table output only")
    doc = {
        "algebra": algebra_to_json(alg),
        "length": t,
        "indecomposables": module_catalogue(alg),
        "complex_side_count": len(cx),
        "module_side_count": len(md),
        "bijection": ok,
        "sequences": rows,
    }
    return doc, ok


def _run_suite(args) -> List[dict]:
    from .suites import run_all

    text, name, max_ind, max_mut = args
    alg = load_algebra_json(text)
    return [r.to_json() for r in run_all(alg, max_ind, max_mut, only=[name])]


def cmd_verify(config: RunConfig, alg: PathAlgebra) -> tuple:
    from .suites import SUITE_NAMES, run_all

    if config.jobs > 1:
        text = config.algebra_path.read_text()
        jobs = [(text, name, config.max_ind, config.max_mut) for name in SUITE_NAMES]
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            reports = [r for chunk in pool.map(_run_suite, jobs) for r in chunk]
    else:
        reports = [r.to_json() for r in run_all(alg, config.max_ind, config.max_mut)]
    ok = all(r["passed"] for r in reports)
    if config.fmt == "table":
        lines = [f"{'PASS' if r['passed'] else 'FAIL'}  {r['check']}  ({r['checked']} cases)" for r in reports]
        return "\n".join(lines) + "\n", ok
    if config.fmt == "dot":
        raise InputError("verify supports json and table output only")
    return {"algebra": algebra_to_json(alg), "passed": ok, "reports": reports}, ok


COMMANDS = {"tautilt": cmd_tautilt, "tcmc": cmd_tcmc, "sequences": cmd_sequences, "verify": cmd_verify}


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="taucluster", description="tau-tilting and two-term silting computations")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", required=True, type=Path, help="algebra JSON file")
    common.add_argument("--out", type=Path, help="output file (default: stdout)")
    common.add_argument("--format", dest="fmt", choices=("json", "dot", "table"), default="json")
    common.add_argument("--max-ind", type=int, default=100, help="cap on indecomposables per algebra")
    common.add_argument("--max-mut", type=int, default=200, help="cap on silting complexes in the exchange graph")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for verify")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("tautilt", parents=[common], help="support tau-tilting exchange graph")
    sub.add_parser("tcmc", parents=[common], help="tau-cluster morphism category, both constructions")
    seq = sub.add_parser("sequences", parents=[common], help="signed sequences of a given length")
    seq.add_argument("--length", type=int, required=True)
    sub.add_parser("verify", parents=[common], help="run every verification suite")
    return parser


def render(payload) -> str:
    if isinstance(payload, str):
        return payload
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        config = RunConfig(
            algebra_path=args.algebra,
            command=args.command,
            fmt=args.fmt,
            out=args.out,
            max_ind=args.max_ind,
            max_mut=args.max_mut,
            jobs=args.jobs,
            length=getattr(args, "length", 0),
        )
        alg = load(config)
        payload, ok = COMMANDS[config.command](config, alg)
    except CapOverflowError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InputError, SplitBasicError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    text = render(payload)
    if config.out:
        config.out.write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
