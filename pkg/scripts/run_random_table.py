"""Run the random-instance experiment table and write it as CSV.

    python3 scripts/run_random_table.py --out results/random_table.csv
    python3 scripts/run_random_table.py --rows 130:109,130:118 --timeout 120
"""
import argparse
import dataclasses
import json
import logging
import sys
import time
from pathlib import Path

from lafsat.bench import rows_to_csv, run_experiment
from lafsat.laf import KernelOptions

DEFAULT_ROWS = "50:41,50:46,70:58,70:66,90:74,90:82"


@dataclasses.dataclass(frozen=True)
class TableConfig:
    rows: tuple[tuple[int, int], ...]
    trials: int = 100
    seed: int = 0
    timeout: float = 60.0
    box_lp: bool = True
    oracle_limit: int = 16


def parse_args(argv=None) -> tuple[TableConfig, argparse.Namespace]:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--rows", default=DEFAULT_ROWS)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timeout", type=float, default=60.0, help="seconds per instance")
    p.add_argument("--no-box-lp", action="store_true")
    p.add_argument("--out", type=Path, default=Path("results/random_table.csv"))
    p.add_argument("--unk-dir", type=Path)
    a = p.parse_args(argv)
    rows = tuple(tuple(int(x) for x in r.split(":")) for r in a.rows.split(","))
    return TableConfig(rows, a.trials, a.seed, a.timeout, not a.no_box_lp), a


def main(argv=None) -> int:
    cfg, a = parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    opts = KernelOptions(use_box_lp=cfg.box_lp)

    def progress(r, t, v):
        if (t + 1) % 10 == 0:
            logging.info("row %d: %d/%d done", r, t + 1, cfg.trials)

    t0 = time.perf_counter()
    res = run_experiment([(n, m, cfg.trials) for n, m in cfg.rows], seed=cfg.seed, options=opts,
                         timeout=cfg.timeout, oracle_limit=cfg.oracle_limit, unk_dir=a.unk_dir,
                         progress=progress)
    a.out.parent.mkdir(parents=True, exist_ok=True)
    a.out.write_text(rows_to_csv(res.rows))
    meta = {"config": dataclasses.asdict(cfg), "stages": res.stages, "violations": len(res.violations),
            "seconds": round(time.perf_counter() - t0, 1)}
    a.out.with_suffix(".json").write_text(json.dumps(meta, indent=2))
    sys.stdout.write(rows_to_csv(res.rows))
    print(json.dumps(meta))
    return 1 if res.violations else 0


if __name__ == "__main__":
    sys.exit(main())
