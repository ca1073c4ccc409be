"""Run a session file: ``abdim session.abd [--seed N] [--bound B] [--json out.json] [--quiet]``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from .algebra import LocalAlgebra, build_algebra, is_gorenstein, socle
from .dsl import (
    Coker,
    Command,
    DirectSum,
    Dual,
    FreeRank1,
    ModuleDef,
    Num,
    Paren,
    ParseError,
    Power,
    Product,
    Residue,
    RingDef,
    SemanticError,
    SessionAst,
    Sum,
    Syz,
    Var,
    parse_session,
    print_statement,
)
from .exactmath import FieldCtx
from .fpmodule import FPModule, direct_sum, dual, free_module, residue_field
from .groebner import Poly
from .homdim import ABConfig, ab_dimension, arc_check, ext_dims, g_dimension
from .paperlab import JSConfig, parse_field, run_js_experiment
from .resolution import FreeResolution, minimal_free_resolution, scan_periods

SCHEMA_VERSION = 1
EXIT_OK, EXIT_COMPUTATION, EXIT_PARSE = 0, 1, 2


@dataclass(frozen=True)
class Flags:
    seed: int = 0
    bound: int = 20
    json_path: str | None = None
    quiet: bool = False


@dataclass
class _Session:
    flags: Flags
    ring: LocalAlgebra | None = None
    variables: tuple = ()
    modules: dict = field(default_factory=dict)
    resolutions: dict = field(default_factory=dict)

    def resolution(self, name: str, length: int) -> FreeResolution:
        res = self.resolutions.get(name)
        if res is None or res.length < length:
            res = minimal_free_resolution(self.modules[name], length)
            self.resolutions[name] = res
        return res


def eval_poly(e, ctx: FieldCtx, variables: tuple) -> Poly:
    n = len(variables)
    if isinstance(e, Num):
        return Poly.constant(ctx(e.value), ctx, n)
    if isinstance(e, Var):
        return Poly.variable(variables.index(e.name), ctx, n)
    if isinstance(e, Paren):
        return eval_poly(e.inner, ctx, variables)
    if isinstance(e, Power):
        return eval_poly(e.base, ctx, variables) ** e.exponent
    if isinstance(e, Product):
        out = Poly.constant(ctx.one, ctx, n)
        for f in e.factors:
            out = out * eval_poly(f, ctx, variables)
        return out
    if isinstance(e, Sum):
        out = Poly.zero(ctx, n)
        for sign, t in e.terms:
            p = eval_poly(t, ctx, variables)
            out = out - p if sign == "-" else out + p
        return out
    raise TypeError(f"not an expression: {e!r}")


def _define_module(s: _Session, st: ModuleDef) -> dict:
    A, c = s.ring, st.construction
    if isinstance(c, Coker):
        pres = [[A.element(eval_poly(e, A.ctx, s.variables)) for e in row] for row in c.rows]
        M = FPModule(A, pres)
    elif isinstance(c, Residue):
        M = residue_field(A)
    elif isinstance(c, FreeRank1):
        M = free_module(A, 1)
    elif isinstance(c, Syz):
        M = s.resolution(c.name, c.n + 1).syzygy_module(c.n) if c.n else s.modules[c.name]
    elif isinstance(c, Dual):
        M = dual(s.modules[c.name])
    elif isinstance(c, DirectSum):
        M = direct_sum(s.modules[c.left], s.modules[c.right])
    else:
        raise TypeError(f"unknown construction {c!r}")
    s.modules[st.name] = M
    s.resolutions.pop(st.name, None)
    return {"module": st.name, "kdim": M.kdim, "generators": M.num_generators()}


def _define_ring(s: _Session, st: RingDef) -> dict:
    ctx = FieldCtx.rationals() if st.field.prime is None else FieldCtx.prime(st.field.prime)
    polys = [eval_poly(r, ctx, st.variables) for r in st.relations]
    s.ring = build_algebra(st.variables, polys, ctx)
    s.variables = st.variables
    return {"ring": st.name, "field": str(ctx), "dim": s.ring.dim}


def _example(s: _Session, st: Command) -> dict:
    opts = dict(st.flags)
    F = parse_field(opts.get("field", "gf7"))
    cfg = JSConfig(
        field=F,
        alpha=opts.get("alpha", "3"),
        bound=int(opts.get("bound", s.flags.bound)),
        window=int(opts.get("window", 8)),
        max_period=int(opts.get("max_period", 12)),
        seed=int(opts.get("seed", s.flags.seed)),
    )
    report = run_js_experiment(cfg)
    out = report.to_dict()
    out["consistency_problems"] = report.check_consistency()
    return out


def _run_command(s: _Session, st: Command) -> dict:
    B, seed = s.flags.bound, s.flags.seed
    name, args = st.name, st.args
    if name == "example":
        return _example(s, st)
    A = s.ring
    if name == "socle":
        return {"socle_dim": len(socle(A)), "basis": [A.format_element(v) for v in socle(A)]}
    if name == "gorenstein":
        return {"gorenstein": is_gorenstein(A)}
    if name == "resolve":
        res = s.resolution(args[0], args[1])
        return {"module": args[0], "length": args[1], "betti": list(res.betti[:args[1] + 1])}
    if name == "betti":
        res = s.resolutions.get(args[0]) or s.resolution(args[0], B)
        return {"module": args[0], "betti": list(res.betti)}
    if name == "ext":
        src, tgt, lo, hi = args
        dims = ext_dims(s.resolution(src, hi + 1), s.modules[tgt], lo, hi)
        return {"source": src, "target": tgt, "lo": lo, "hi": hi, "dims": dims}
    if name == "gdim":
        return {"module": args[0], **g_dimension(s.modules[args[0]], B, seed=seed).to_dict()}
    if name == "abdim":
        cfg = ABConfig(bound=B, seed=seed)
        return {"module": args[0], **ab_dimension(s.modules[args[0]], cfg).to_dict()}
    if name == "arc":
        return {"module": args[0], **arc_check(s.modules[args[0]], B, seed=seed).to_dict()}
    if name == "period":
        M, maxp = s.modules[args[0]], args[1]
        scan = scan_periods(M, maxp, seed=seed, resolution=s.resolution(args[0], maxp + 3))
        certified = [p for p, r in scan.items() if r.verdict.value == "yes"]
        return {"module": args[0], "period": min(certified) if certified else None,
                "scan": {str(p): r.verdict.value for p, r in scan.items()}}
    raise ValueError(f"unknown command {name!r}")


def _text(entry: dict) -> str:
    """One human-readable block for a statement result."""
    r = entry.get("result", {})
    head = entry["statement"]
    if "error" in entry:
        return f"{head}\n  error: {entry['error']}"
    if "betti" in r and "ring" not in r and "complex" not in r:
        b = r["betti"]
        idx = " ".join(f"{i:>4}" for i in range(len(b)))
        val = " ".join(f"{x:>4}" for x in b)
        return f"{head}\n  i     {idx}\n  beta  {val}"
    if "dims" in r:
        idx = " ".join(f"{i:>4}" for i in range(r["lo"], r["hi"] + 1))
        val = " ".join(f"{x:>4}" for x in r["dims"])
        return f"{head}\n  i     {idx}\n  dim   {val}"
    if "complex" in r:
        lines = [head,
                 f"  ring: dim {r['ring']['dim']}, socle {r['ring']['socle_dim']}, "
                 f"gorenstein {r['ring']['gorenstein']}",
                 f"  complete resolution: composites zero {r['complex']['composites_zero']}, "
                 f"exact {r['complex']['exact']}, dual exact {r['complex']['dual_exact']}",
                 f"  betti: {r['betti']}",
                 f"  period: {r['period']}",
                 f"  G-dim: {r['gdim']['kind']}, AB-dim: {r['abdim']['kind']}",
                 f"  ARC consistent: {r['arc']['consistent']}"]
        yes = sum(1 for v in r["perp"].values() if v["in_perp"] == "certified-yes")
        lines.append(f"  perp sample: {yes}/{len(r['perp'])} certified")
        return "\n".join(lines)
    body = ", ".join(f"{k}: {v}" for k, v in r.items() if k not in ("evidence", "certificate", "scan"))
    return f"{head}\n  {body}"


def execute(ast: SessionAst, flags: Flags = Flags()) -> tuple[dict, int]:
    """Run statements in order; the first failure stops the session with exit code 1."""
    s = _Session(flags)
    results = []
    code = EXIT_OK
    for idx, st in enumerate(ast.statements):
        entry = {"index": idx, "statement": print_statement(st)}
        try:
            if isinstance(st, RingDef):
                entry["result"] = _define_ring(s, st)
            elif isinstance(st, ModuleDef):
                entry["result"] = _define_module(s, st)
            else:
                entry["result"] = _run_command(s, st)
        except (ValueError, ArithmeticError) as exc:
            entry["error"] = f"{type(exc).__name__}: {exc}"
            code = EXIT_COMPUTATION
        problems = entry.get("result", {}).get("consistency_problems")
        if problems:
            entry["error"] = "; ".join(problems)
            code = EXIT_COMPUTATION
        results.append(entry)
        if code != EXIT_OK:
            break
    report = {"schema_version": SCHEMA_VERSION, "seed": flags.seed, "bound": flags.bound,
              "exit_code": code, "results": results}
    return report, code


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _seed_default() -> int:
    env = os.environ.get("ABDIM_SEED")
    return int(env) if env else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="abdim", description="Homological invariants over local algebras.")
    ap.add_argument("session", nargs="?", default="-", help="session file (.abd); '-' or omitted reads stdin")
    ap.add_argument("--seed", type=int, default=None, help="global seed (default: $ABDIM_SEED or 0)")
    ap.add_argument("--bound", type=int, default=20, help="Ext bound B (default 20)")
    ap.add_argument("--json", dest="json_path", default=None, help="write the JSON report here")
    ap.add_argument("--quiet", action="store_true", help="suppress text output")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    seed = args.seed if args.seed is not None else _seed_default()
    if seed < 0 or args.bound < 1:
        print("abdim: seed must be nonnegative and bound positive", file=sys.stderr)
        return EXIT_PARSE
    flags = Flags(seed=seed, bound=args.bound, json_path=args.json_path, quiet=args.quiet)
    try:
        if args.session == "-":
            text = sys.stdin.read()
        else:
            with open(args.session, encoding="utf-8") as fh:
                text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        print(f"abdim: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        ast = parse_session(text)
    except (ParseError, SemanticError) as exc:
        print(f"abdim: {exc}", file=sys.stderr)
        return EXIT_PARSE
    report, code = execute(ast, flags)
    if not flags.quiet:
        for entry in report["results"]:
            print(_text(entry))
    for entry in report["results"]:
        if "error" in entry:
            print(f"abdim: statement {entry['index']}: {entry['error']}", file=sys.stderr)
    if flags.json_path:
        with open(flags.json_path, "w", encoding="utf-8") as fh:
            fh.write(dumps(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
