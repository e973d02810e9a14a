"""Collect formulas that are exactly-one unsatisfiable yet get Unk from the kernel.

These are the instances on which the method is incomplete.  They are
written as DIMACS together with a CSV summary of which stage was reached.
"""
import argparse
import csv
import random
import sys
from pathlib import Path

from lafsat import linalg, oracle
from lafsat.bench import gen_random_positive_3cnf
from lafsat.formula import emit_dimacs
from lafsat.laf import UNK, KernelOptions, kernel_check, linear_transform, relinearize


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--instances", type=int, default=2000)
    p.add_argument("--min-vars", type=int, default=10)
    p.add_argument("--max-vars", type=int, default=22)
    p.add_argument("--min-ratio", type=float, default=0.6, help="clauses per variable")
    p.add_argument("--max-ratio", type=float, default=1.2)
    p.add_argument("--seed", type=int, default=2)
    p.add_argument("--box-lp", action="store_true")
    p.add_argument("--out", type=Path, default=Path("results/incompleteness"))
    a = p.parse_args(argv)
    a.out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(a.seed)
    opts = KernelOptions(use_box_lp=a.box_lp)
    rows = []
    for k in range(a.instances):
        n = rng.randint(a.min_vars, a.max_vars)
        m = max(1, round(rng.uniform(a.min_ratio, a.max_ratio) * n))
        f = gen_random_positive_3cnf(n, m, rng.getrandbits(64))
        v = kernel_check(f, opts)
        if v.answer != UNK or oracle.is_eos(f, limit=a.max_vars):
            continue
        rel = relinearize(linear_transform(f))
        box, _ = linalg.box_lp_check(rel.matrix, rel.rhs)
        name = f"q1_{k:05d}.cnf"
        (a.out / name).write_text(emit_dimacs(f, ["exactly-one unsatisfiable, kernel Unk"]))
        rows.append({"file": name, "n": n, "m": m, "lt_rank": v.stats.get("lt_rank"),
                     "rel_rank": v.stats.get("rel_rank"), "v": v.stats.get("v"),
                     "box_feasible": box})
    with open(a.out / "summary.csv", "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=["file", "n", "m", "lt_rank", "rel_rank", "v", "box_feasible"])
        w.writeheader()
        w.writerows(rows)
    print(f"{len(rows)} of {a.instances} instances are oracle-EOU with a kernel Unk; see {a.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
