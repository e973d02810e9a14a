"""Command line entry point.

Exit codes follow the SAT competition: 10 for SAT/EOS, 20 for UNSAT/EOU,
0 when the method cannot decide, 1 for usage or internal errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import oracle
from .bench import rows_to_csv, run_experiment
from .formula import DimacsError, FormulaError, emit_dimacs, read_dimacs
from .laf import EOS, EOU, KernelOptions, kernel_check, verify_certificate
from .pipeline import SAT, UNSAT, PipelineOptions, laf_sat_check
from .reduce import lift_witness, positivize, reduce_sat_to_eos

EXIT = {SAT: 10, EOS: 10, UNSAT: 20, EOU: 20}
STATUS = {SAT: "SATISFIABLE", UNSAT: "UNSATISFIABLE", EOS: "EOS", EOU: "EOU"}


def _kernel_options(args) -> KernelOptions:
    timeout = None if args.timeout_ms is None else args.timeout_ms / 1000
    return KernelOptions.for_ring(args.ring, use_box_lp=args.box_lp, total_timeout=timeout)


def _v_line(witness) -> str:
    return "v " + " ".join(str(i if b else -i) for i, b in enumerate(witness, 1)) + " 0"


def _report(args, answer: str, doc: dict, witness, stage=None) -> int:
    if args.json:
        print(json.dumps(doc))
    else:
        if stage:
            print(f"c refuted at stage {stage}")
        if doc.get("note"):
            print(f"c {doc['note']}")
        print(f"s {STATUS.get(answer, 'UNKNOWN')}")
        if witness is not None:
            print(_v_line(witness))
    return EXIT.get(answer, 0)


def cmd_check(args) -> int:
    f = read_dimacs(args.file)
    v = laf_sat_check(f, PipelineOptions(_kernel_options(args), size_cap=args.size_cap))
    if args.emit_trace and v.trace is not None:
        Path(args.emit_trace).write_text(v.trace.to_json())
    stage = v.kernel_report.certificate.stage if v.kernel_report and v.kernel_report.certificate else None
    return _report(args, v.answer, v.to_dict(), v.witness, stage)


def cmd_eos(args) -> int:
    f = read_dimacs(args.file)
    p, trace = positivize(f)
    v = kernel_check(p, _kernel_options(args))
    if v.answer == EOU and not verify_certificate(p, v):
        raise AssertionError("certificate failed re-verification")
    if args.emit_trace:
        Path(args.emit_trace).write_text(trace.to_json())
    doc = v.to_dict()
    witness = None
    if v.answer == EOS:
        witness = lift_witness(trace, v.witness)
        doc["witness"] = [int(b) for b in witness]
    if trace.steps:
        doc["positivized"] = True
    stage = v.certificate.stage if v.certificate else None
    return _report(args, v.answer, doc, witness, stage)


def cmd_reduce(args) -> int:
    f = read_dimacs(args.file)
    g, trace = reduce_sat_to_eos(f)
    text = emit_dimacs(g, [f"positive exactly-one reduction of {args.file}", f"original variables: {f.num_vars}"])
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    if args.emit_trace:
        Path(args.emit_trace).write_text(trace.to_json())
    return 0


def cmd_oracle(args) -> int:
    f = read_dimacs(args.file)
    it = oracle.iter_eos(f, args.limit) if args.mode == "eos" else oracle.iter_sat(f, args.limit)
    first = next(it, None)
    found = first is not None
    answer = (EOS if found else EOU) if args.mode == "eos" else (SAT if found else UNSAT)
    doc = {"schema_version": 1, "answer": answer, "mode": args.mode}
    if found:
        doc["witness"] = [int(b) for b in first]
    return _report(args, answer, doc, first)


def cmd_bench(args) -> int:
    rows = []
    for spec in args.rows.split(","):
        n, m = (int(x) for x in spec.split(":"))
        rows.append((n, m, args.trials))
    timeout = None if args.timeout_ms is None else args.timeout_ms / 1000
    opts = KernelOptions.for_ring(args.ring, use_box_lp=args.box_lp)
    res = run_experiment(rows, seed=args.seed, options=opts, timeout=timeout if timeout else 60.0,
                         unk_dir=args.unk_dir, oracle_limit=args.oracle_limit)
    text = rows_to_csv(res.rows)
    if args.csv:
        Path(args.csv).write_text(text)
    if args.json:
        print(json.dumps({"schema_version": 1, "rows": [r.__dict__ for r in res.rows],
                          "violations": len(res.violations), "stages": res.stages}))
    else:
        sys.stdout.write(text)
        print(f"c soundness violations: {len(res.violations)}")
    return 1 if res.violations else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the verdict as JSON")
    common.add_argument("--ring", choices=["rational", "integer", "both"], default="both")
    common.add_argument("--box-lp", action="store_true", help="also try the unit-box LP relaxation")
    common.add_argument("--timeout-ms", type=int, default=None)
    common.add_argument("--emit-trace", metavar="PATH")
    common.add_argument("--size-cap", type=int, default=2000)

    p = argparse.ArgumentParser(prog="lafsat", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", parents=[common], help="SAT/UNSAT test of a DIMACS CNF")
    c.add_argument("file")
    c.set_defaults(func=cmd_check)
    e = sub.add_parser("eos", parents=[common], help="exactly-one test of a DIMACS CNF")
    e.add_argument("file")
    e.set_defaults(func=cmd_eos)
    r = sub.add_parser("reduce", parents=[common], help="emit the positive exactly-one reduction")
    r.add_argument("file")
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_reduce)
    o = sub.add_parser("oracle", parents=[common], help="exhaustive search (small inputs only)")
    o.add_argument("file")
    o.add_argument("--mode", choices=["eos", "sat"], default="eos")
    o.add_argument("--limit", type=int, default=oracle.DEFAULT_LIMIT)
    o.set_defaults(func=cmd_oracle)
    b = sub.add_parser("bench", parents=[common], help="random-instance experiment table")
    b.add_argument("--rows", default="50:41,50:46", help="comma-separated n:m pairs")
    b.add_argument("--trials", type=int, default=100)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--csv", metavar="PATH")
    b.add_argument("--unk-dir", metavar="DIR")
    b.add_argument("--oracle-limit", type=int, default=16)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 1
    logging.basicConfig(level=logging.WARNING, format="c %(levelname)s %(message)s")
    try:
        return args.func(args)
    except (DimacsError, FormulaError, OSError, oracle.OracleLimitError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except Exception as e:  # internal errors, including soundness failures
        print(f"internal error: {e!r}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
