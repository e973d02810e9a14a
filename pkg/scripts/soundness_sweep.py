"""Cross-check kernel verdicts against exhaustive search on many small formulas.

Any EOU on an exactly-one satisfiable formula is printed as DIMACS and makes
the script exit non-zero.
"""
import argparse
import dataclasses
import math
import random
import sys
from collections import Counter

from lafsat import oracle
from lafsat.bench import gen_random_positive_3cnf
from lafsat.formula import emit_dimacs
from lafsat.laf import EOS, EOU, KernelOptions, kernel_check, verify_certificate


@dataclasses.dataclass(frozen=True)
class SweepConfig:
    instances: int = 5000
    min_vars: int = 4
    max_vars: int = 16
    clause_ratio: float = 2.0
    seed: int = 1
    box_lp: bool = False


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    for f in dataclasses.fields(SweepConfig):
        if f.type is bool or f.type == "bool":
            p.add_argument(f"--{f.name.replace('_', '-')}", action="store_true")
        else:
            p.add_argument(f"--{f.name.replace('_', '-')}", type=type(f.default), default=f.default)
    cfg = SweepConfig(**vars(p.parse_args(argv)))
    rng = random.Random(cfg.seed)
    opts = KernelOptions(use_box_lp=cfg.box_lp)
    tally: Counter = Counter()
    bad = 0
    for k in range(cfg.instances):
        n = rng.randint(cfg.min_vars, cfg.max_vars)
        m = rng.randint(1, min(math.comb(n, 3), int(cfg.clause_ratio * n)))
        f = gen_random_positive_3cnf(n, m, rng.getrandbits(64))
        v = kernel_check(f, opts)
        truth = oracle.is_eos(f, limit=cfg.max_vars)
        tally[(v.answer, truth)] += 1
        if (v.answer == EOU and (truth or not verify_certificate(f, v))) or \
                (v.answer == EOS and not f.is_eos_by(v.witness)):
            bad += 1
            print(emit_dimacs(f, [f"violation at instance {k}"]))
    for (answer, truth), c in sorted(tally.items()):
        print(f"kernel {answer:4s} oracle {'EOS' if truth else 'EOU'}: {c}")
    print(f"violations: {bad}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
