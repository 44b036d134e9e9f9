"""Command-line entry point: ``pqbraces <command> --p P --q Q``.

Exit codes: 0 success, 1 verification mismatch, 2 usage or I/O error.
``PQBRACES_OUTPUT_DIR`` sets the default directory for written files.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import export
from .errors import BudgetExceeded, ParameterError, UsageError
from .group_core import make_params
from .regular_subgroups import (
    ORACLE_BUDGET,
    closed_form_subgroups,
    compute_orbits,
    e_prime_counts,
    enumerate_regular_bruteforce,
)
from .skew_brace import EXHAUSTIVE_LIMIT, catalog, descriptor, is_biskew, verify_skew_axioms
from .ybe import export_record, solution_from_brace, verify_solution

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2
MAX_P = 10_000
OUTPUT_ENV = "PQBRACES_OUTPUT_DIR"
COMMANDS = ("classify", "oracle-check", "verify", "ybe", "export")
# braces the theory guarantees to be bi-skew
BISKEW_EXPECTED = ("trivial-C", "trivial-M", "cyclic-nontrivial", "A_gamma")


@dataclass
class RunConfig:
    command: str
    p: int
    q: int
    format: str = "text"
    include_tables: bool = False
    oracle_budget: int = ORACLE_BUDGET
    output_path: Optional[str] = None
    g: Optional[int] = None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pqbraces", description="Skew braces of order pq.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--q", type=int, required=True)
        sp.add_argument("--g", type=int, default=None, help="residue of order q mod p (default: smallest)")
        sp.add_argument("--format", choices=("json", "csv", "text"), default="text")
        sp.add_argument("--include-tables", action="store_true")
        sp.add_argument("--oracle-budget", type=int, default=ORACLE_BUDGET)
        sp.add_argument("--output", dest="output_path", default=None)
    return parser


def _resolve_output(cfg: RunConfig, default_name: str) -> Optional[Path]:
    if cfg.output_path:
        return Path(cfg.output_path)
    env = os.environ.get(OUTPUT_ENV)
    if env:
        return Path(env) / default_name
    return None


def _emit(cfg: RunConfig, doc: dict, text: str, default_stem: str, out) -> None:
    if cfg.format == "text":
        target = _resolve_output(cfg, default_stem + ".txt")
        if target:
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(text + "\n")
        print(text, file=out)
    elif cfg.format == "json":
        target = _resolve_output(cfg, default_stem + ".json")
        if target:
            export.write_json(target, doc)
            print(f"wrote {target}", file=out)
        else:
            print(json.dumps(doc, indent=1), file=out)
    else:
        target = _resolve_output(cfg, default_stem) or Path.cwd() / default_stem
        for path in export.write_csv(target, doc):
            print(f"wrote {path}", file=out)


def _summary_line(params, n: int) -> str:
    if n == 1:
        return "1 skew brace (trivial, cyclic)"
    return f"{n} skew braces of order {params.order} (p={params.p}, q={params.q}, g={params.g})"


def _classify(cfg, params, out) -> int:
    braces = catalog(params)
    recs = [descriptor(B, cfg.include_tables) for B in braces]
    lines = [_summary_line(params, len(braces))]
    for k, rec in enumerate(recs):
        lp = ",".join(f"{a}={b}" for a, b in rec["label_params"].items())
        name = rec["label"] + (f"({lp})" if lp else "")
        bis = "n/a" if rec["biskew"] is None else ("yes" if rec["biskew"] else "no")
        lines.append(f"  [{k}] {name:<22} (A,+)={rec['add_kind']}  (A,o)={rec['mult_iso_type']}"
                     f"  |ker lambda|={rec['ker_lambda']:<6} biskew={bis}")
    doc = {"p": params.p, "q": params.q, "g": params.g, "braces": recs}
    _emit(cfg, doc, "\n".join(lines), f"classify_p{params.p}_q{params.q}", out)
    expected = 2 * params.q + 2 if params.congruent else 1
    if len(braces) != expected:
        print(f"expected {expected} braces, built {len(braces)}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def _oracle_check(cfg, params, out) -> int:
    if params.order > cfg.oracle_budget:
        raise BudgetExceeded(f"pq={params.order} exceeds the oracle budget pq <= {cfg.oracle_budget}")
    ok = True
    lines = []
    doc = {"p": params.p, "q": params.q, "g": params.g, "kinds": {}}
    for kind in params.kinds():
        brute = enumerate_regular_bruteforce(params, kind, cfg.oracle_budget)
        closed = closed_form_subgroups(params, kind)
        same_sets = {S.indices for S in brute} == {S.indices for S in closed}
        table = e_prime_counts(params, kind, "oracle", cfg.oracle_budget)
        formula = e_prime_counts(params, kind, "formula")
        n_orbits = len(compute_orbits(params, brute))
        want_orbits = (2 if kind == "C" else 2 * params.q) if params.congruent else 1
        kind_ok = same_sets and table.agrees_with(formula) and n_orbits == want_orbits
        ok &= kind_ok
        lines.append(f"additive group {kind}: {len(brute)} regular subgroups (closed forms: {len(closed)}), "
                     f"sets {'match' if same_sets else 'DIFFER'}; orbits {n_orbits} (expected {want_orbits})")
        for G, A, m, count in table.rows():
            mark = "" if formula[(G, A, m)] == count else f"   MISMATCH (formula {formula[(G, A, m)]})"
            lines.append(f"  e'({G},{A},{m})={count}{mark}")
        doc["kinds"][kind] = {
            "regular_subgroups": len(brute),
            "closed_form_subgroups": len(closed),
            "sets_match": same_sets,
            "orbits": n_orbits,
            "expected_orbits": want_orbits,
            "e_prime": [{"G": G, "A": A, "m": m, "count": c} for G, A, m, c in table.rows()],
        }
    lines.append("oracle-check: " + ("OK" if ok else "MISMATCH"))
    doc["ok"] = ok
    _emit(cfg, doc, "\n".join(lines), f"oracle_p{params.p}_q{params.q}", out)
    return EXIT_OK if ok else EXIT_MISMATCH


def _require_tables(params) -> None:
    if params.order > EXHAUSTIVE_LIMIT:
        raise UsageError(f"pq={params.order} is above the exhaustive-check limit {EXHAUSTIVE_LIMIT}")


def _verify(cfg, params, out) -> int:
    _require_tables(params)
    ok = True
    lines, recs = [], []
    for B in catalog(params):
        rep = verify_skew_axioms(B)
        bis = is_biskew(B)
        good = rep.ok and (bis or B.label not in BISKEW_EXPECTED)
        ok &= good
        lines.append(f"{B.name():<22} axioms={'pass' if rep.ok else 'FAIL ' + str(rep.witness)}  biskew={bis}")
        recs.append({"label": B.label, "label_params": dict(B.label_params), "axioms": rep.ok,
                     "witness": rep.witness, "biskew": bis})
    lines.append("verify: " + ("OK" if ok else "MISMATCH"))
    doc = {"p": params.p, "q": params.q, "g": params.g, "braces": recs, "ok": ok}
    _emit(cfg, doc, "\n".join(lines), f"verify_p{params.p}_q{params.q}", out)
    return EXIT_OK if ok else EXIT_MISMATCH


def _ybe(cfg, params, out) -> int:
    _require_tables(params)
    ok = True
    lines, recs = [], []
    for B in catalog(params):
        sol = solution_from_brace(B, check=False)
        rep = verify_solution(sol)
        ok &= rep.braid and rep.nondegenerate
        lines.append(f"{B.name():<22} braid={rep.braid} nondegenerate={rep.nondegenerate} involutive={rep.involutive}")
        rec = export_record(sol, rep) if cfg.include_tables else {"size": sol.size, **rep.as_dict()}
        recs.append({"label": B.label, "label_params": dict(B.label_params), **rec})
    lines.append("ybe: " + ("OK" if ok else "MISMATCH"))
    doc = {"p": params.p, "q": params.q, "g": params.g, "solutions": recs, "ok": ok}
    _emit(cfg, doc, "\n".join(lines), f"ybe_p{params.p}_q{params.q}", out)
    return EXIT_OK if ok else EXIT_MISMATCH


def _export(cfg, params, out) -> int:
    if cfg.include_tables or cfg.format == "csv":
        _require_tables(params)
    include = cfg.include_tables or cfg.format == "csv"
    doc = export.catalog_document(params, catalog(params), include)
    stem = f"braces_p{params.p}_q{params.q}"
    if cfg.format == "text":
        text = "\n".join(json.dumps(rec) for rec in doc["braces"])
        _emit(cfg, doc, text, stem, out)
    else:
        _emit(cfg, doc, "", stem, out)
    return EXIT_OK


HANDLERS = {
    "classify": _classify,
    "oracle-check": _oracle_check,
    "verify": _verify,
    "ybe": _ybe,
    "export": _export,
}


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    try:
        if cfg.p > MAX_P:
            raise ParameterError(f"p={cfg.p} exceeds the supported bound {MAX_P}")
        params = make_params(cfg.p, cfg.q, cfg.g)
        return HANDLERS[cfg.command](cfg, params, out)
    except (ParameterError, UsageError, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**vars(args))
    return run(cfg)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
