"""Command-line entry point: ``dlalg COMMAND MODEL [--target NAME] [--format text|json]``.

Exit codes: 0 every check passed, 1 some check failed, 2 invalid input.
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
from fractions import Fraction
from typing import Optional

from . import __version__
from .algebroid import check_lie_algebroid
from .doubles import check_bialgebroid, convention_fingerprint, oracle_equivalence
from .matched import check_matched, core_algebroid, poisson_on_cstar
from .model import ModelError, Model, algebroid_to_yaml, load_model
from .polyring import Poly
from .report import Entry, Report
from .tangent import basic_connections, basic_curvature, tangent_double_matched_pair
from .tworep import structure_operator_check, validate_tworep

SCHEMA_VERSION = 1

COMMANDS = {
    "check-algebroid": "algebroids",
    "check-tworep": "tworeps",
    "check-matched": "matched_pairs",
    "check-bialgebroid": "matched_pairs",
    "oracle": "matched_pairs",
    "tangent-double": "tangent_inputs",
    "core-algebroid": "matched_pairs",
}


class UsageError(Exception):
    pass


def _num(v) -> str:
    return str(Fraction(v))


def _one_based(indices) -> list:
    return [i + 1 if isinstance(i, int) else i for i in indices]


def entry_record(check: str, e: Entry) -> dict:
    """Machine-readable failure record; the witness is re-evaluated before it is emitted."""
    path, point, value = e.ensure_witness()
    residual = e.residual
    for i in path:
        residual = residual[i]
    if residual(point) != value or value == 0:
        raise RuntimeError(f"witness re-check failed for {check}/{e.condition} {e.indices}")
    ring = residual.ring
    return {
        "check": check,
        "condition": e.condition,
        "indices": _one_based(e.indices),
        "component": [i + 1 for i in path],
        "residual": str(residual),
        "witness_point": {name: _num(x) for name, x in zip(ring.names, point)},
        "witness_value": _num(value),
    }


def report_record(rep: Report) -> dict:
    return {
        "check": rep.check,
        "verdict": rep.verdict,
        "summary": rep.summary(),
        "notes": list(rep.notes),
        "failures": [entry_record(rep.check, e) for e in rep.failures()],
    }


def _sparse(values: dict) -> dict:
    return {k: str(v) for k, v in values.items() if v}


def _christoffel(conn) -> dict:
    return _sparse({f"{i + 1},{j + 1},{l + 1}": conn.christoffel[i][j][l]
                    for i in range(conn.algebroid.rank) for j in range(conn.rank) for l in range(conn.rank)})


def _resolve(model: Model, command: str, target: Optional[str]) -> str:
    kind = COMMANDS[command]
    names = model.names(kind)
    if target is not None:
        pool = list(getattr(model, kind))
        if kind == "matched_pairs":
            pool += list(model.tangent_inputs)
        if target not in pool:
            raise UsageError(f"no {kind[:-1].replace('_', ' ')} named {target!r} (have: {', '.join(names) or 'none'})")
        return target
    if len(names) != 1:
        raise UsageError(f"{command} needs --target, candidates: {', '.join(names) or 'none'}")
    return names[0]


def run(command: str, model: Model, target: str) -> dict:
    """Run one command; returns the machine report (without the header)."""
    out: dict = {"reports": []}
    add = out["reports"].append
    if command == "check-algebroid":
        add(check_lie_algebroid(model.algebroids[target]))
    elif command == "check-tworep":
        t = model.tworeps[target]
        v, s = validate_tworep(t), structure_operator_check(t)
        add(v)
        add(s)
        out["agreement"] = v.passed == s.passed
    elif command == "tangent-double":
        inp = model.tangent_inputs[target]
        bas_tm, bas_a = basic_connections(inp)
        curv = basic_curvature(inp)
        out["data"] = {
            "basic_connection_TM": _christoffel(bas_tm),
            "basic_connection_A": _christoffel(bas_a),
            "basic_curvature": _sparse({f"{i + 1},{j + 1},{p + 1},{q + 1}": m[p][q]
                                        for (i, j), m in curv.items()
                                        for p in range(len(m)) for q in range(len(m[0]) if m else 0)}),
        }
        add(check_matched(tangent_double_matched_pair(inp)))
    else:
        mp = model.matched_pair(target)
        if command == "check-matched":
            add(check_matched(mp))
        elif command == "check-bialgebroid":
            add(check_bialgebroid(mp))
        elif command == "oracle":
            res = oracle_equivalence(mp)
            add(res.matched)
            add(res.bialgebroid)
            out["agreement"] = res.agree
        elif command == "core-algebroid":
            matched = check_matched(mp)
            core = core_algebroid(mp)
            table = poisson_on_cstar(mp)
            poisson = Report("poisson-linear")
            for p, q in itertools.combinations(range(mp.rank_C), 2):
                lp, lq = table.linear(mp.c(p)), table.linear(mp.c(q))
                br = table.linear(core.bracket(mp.c(p), mp.c(q)))
                poisson.add("linear", (p, q), table.bracket(lp, lq) - br)
            add(matched)
            add(check_lie_algebroid(core))
            add(poisson)
            names = table.ring.names
            out["data"] = {
                "core": algebroid_to_yaml(core),
                "poisson": _sparse({f"{names[u]},{names[v]}": table.pi[u][v]
                                    for u in range(len(names)) for v in range(u + 1, len(names))}),
            }
    return out


def _verdict(out: dict) -> str:
    ok = all(r.passed for r in out["reports"]) and out.get("agreement", True)
    return "pass" if ok else "fail"


def render_json(header: dict, out: dict) -> str:
    doc = dict(header)
    doc["verdict"] = _verdict(out)
    if "agreement" in out:
        doc["agreement"] = out["agreement"]
    doc["reports"] = [report_record(r) for r in out["reports"]]
    if "data" in out:
        doc["data"] = out["data"]
    return json.dumps(doc, indent=2, sort_keys=False)


def render_text(header: dict, out: dict) -> str:
    lines = [f"{header['command']} {header['model']} [{header['target']}]: {_verdict(out).upper()}"]
    if "agreement" in out:
        lines.append(f"  agreement: {'TRUE' if out['agreement'] else 'FALSE'}")
    for rep in out["reports"]:
        counts = ", ".join(f"{c} {s['failed']}/{s['evaluated']}" for c, s in rep.summary().items())
        lines.append(f"  {rep.check}: {rep.verdict} ({counts or 'nothing to check'})")
        for e in rep.failures():
            rec = entry_record(rep.check, e)
            idx = ",".join(str(i) for i in rec["indices"])
            comp = f" component {','.join(map(str, rec['component']))}" if rec["component"] else ""
            pt = ", ".join(f"{k}={v}" for k, v in rec["witness_point"].items())
            lines.append(f"    {e.condition} ({idx}){comp}: {rec['residual']}  at ({pt}) = {rec['witness_value']}")
    for key, val in out.get("data", {}).items():
        lines.append(f"  {key}: {json.dumps(val, sort_keys=False)}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dlalg", description="Exact checks for Lie algebroids, 2-representations and matched pairs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("model", help="model file (YAML)")
    p.add_argument("--target", help="name of the object to check (optional if unique)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return p


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        model = load_model(args.model)
        target = _resolve(model, args.command, args.target)
    except OSError as exc:
        print(f"error: cannot read {args.model}: {exc.strerror or exc}", file=sys.stderr)
        return 2
    except ModelError as exc:
        for d in exc.diagnostics:
            print(f"error: {args.model}: {d}", file=sys.stderr)
        return 2
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    header = {
        "tool": "dlalg",
        "version": __version__,
        "schema": SCHEMA_VERSION,
        "conventions": convention_fingerprint(),
        "command": args.command,
        "model": args.model,
        "target": target,
    }
    out = run(args.command, model, target)
    text = render_json(header, out) if args.format == "json" else render_text(header, out)
    print(text)
    return 0 if _verdict(out) == "pass" else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
