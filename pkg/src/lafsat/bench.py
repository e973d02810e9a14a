"""Random positive 3-CNF instances and the kernel experiment table."""
from __future__ import annotations

import csv
import dataclasses
import hashlib
import io
import logging
import math
import random
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .formula import CnfFormula, emit_dimacs
from .laf import EOS, EOU, UNK, KernelOptions, kernel_check
from .oracle import is_eos

log = logging.getLogger(__name__)

CSV_HEADER = ["n", "m", "trials", "eos", "eou", "unk", "timeouts", "mean_ms", "seed"]


def gen_random_positive_3cnf(n: int, m: int, seed) -> CnfFormula:
    """m distinct clauses, each three distinct variables sampled uniformly."""
    if n < 3 or m < 1:
        raise ValueError(f"need n >= 3 and m >= 1, got n={n}, m={m}")
    if m > math.comb(n, 3):
        raise ValueError(f"only {math.comb(n, 3)} distinct 3-subsets of {n} variables")
    rng = random.Random(seed)
    seen: set[frozenset] = set()
    clauses = []
    while len(clauses) < m:
        c = rng.sample(range(1, n + 1), 3)
        key = frozenset(c)
        if key in seen:
            continue
        seen.add(key)
        clauses.append(c)
    return CnfFormula(n, clauses)


def trial_seed(seed: int, row: int, trial: int) -> int:
    digest = hashlib.sha256(f"{seed}:{row}:{trial}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass(frozen=True)
class ExperimentRow:
    num_vars: int
    num_clauses: int
    trials: int
    count_eos: int
    count_eou: int
    count_unk: int
    timeouts: int
    mean_elapsed_ms: float
    seed: int

    def __post_init__(self):
        if self.count_eos + self.count_eou + self.count_unk != self.trials:
            raise ValueError("outcome counts do not sum to the number of trials")


@dataclass
class Disagreement:
    row: int
    trial: int
    answer: str
    dimacs: str


@dataclass
class ExperimentResult:
    rows: list[ExperimentRow]
    # kernel EOU where the oracle found an exactly-one assignment; must stay empty
    violations: list[Disagreement] = field(default_factory=list)
    # kernel Unk instances the oracle could classify, with the oracle answer
    unk_oracle: list[tuple[int, int, bool]] = field(default_factory=list)
    stages: dict[str, int] = field(default_factory=dict)


def run_experiment(
    rows: Sequence[tuple[int, int, int]],
    seed: int = 0,
    options: KernelOptions = KernelOptions(),
    timeout: Optional[float] = 60.0,
    oracle_limit: int = 16,
    unk_dir: Optional[Path] = None,
    progress=None,
) -> ExperimentResult:
    """Run the kernel on ``trials`` random instances for every ``(n, m, trials)``.

    Instances with at most ``oracle_limit`` variables are cross-checked by
    enumeration.  Unk instances are written as DIMACS into ``unk_dir``.
    """
    if timeout is not None:
        options = dataclasses.replace(options, total_timeout=timeout)
    if unk_dir is not None:
        unk_dir = Path(unk_dir)
        unk_dir.mkdir(parents=True, exist_ok=True)
    result = ExperimentResult([])
    for r, (n, m, trials) in enumerate(rows):
        counts = {EOS: 0, EOU: 0, UNK: 0}
        timeouts = 0
        total_ms = 0.0
        for t in range(trials):
            f = gen_random_positive_3cnf(n, m, trial_seed(seed, r, t))
            t0 = time.perf_counter()
            v = kernel_check(f, options)
            total_ms += (time.perf_counter() - t0) * 1000
            counts[v.answer] += 1
            stage = v.certificate.stage if v.certificate else v.answer
            result.stages[stage] = result.stages.get(stage, 0) + 1
            if v.note and v.note.startswith("timeout"):
                timeouts += 1
            if n <= oracle_limit:
                truth = is_eos(f, limit=oracle_limit)
                if v.answer == EOU and truth:
                    log.error("soundness violation at row %d trial %d", r, t)
                    result.violations.append(Disagreement(r, t, v.answer, emit_dimacs(f)))
                if v.answer == UNK:
                    result.unk_oracle.append((r, t, truth))
            if v.answer == UNK and unk_dir is not None:
                (unk_dir / f"n{n}_m{m}_row{r}_trial{t}.cnf").write_text(
                    emit_dimacs(f, [f"kernel Unk, seed {seed}, row {r}, trial {t}"])
                )
            if progress is not None:
                progress(r, t, v)
        result.rows.append(
            ExperimentRow(n, m, trials, counts[EOS], counts[EOU], counts[UNK], timeouts,
                          round(total_ms / trials, 3) if trials else 0.0, seed)
        )
    return result


def rows_to_csv(rows: Iterable[ExperimentRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for row in rows:
        w.writerow([row.num_vars, row.num_clauses, row.trials, row.count_eos, row.count_eou,
                    row.count_unk, row.timeouts, repr(row.mean_elapsed_ms), row.seed])
    return buf.getvalue()


def rows_from_csv(text: str) -> list[ExperimentRow]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if header != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header}")
    out = []
    for rec in reader:
        n, m, trials, eos, eou, unk, to, ms, seed = rec
        out.append(ExperimentRow(int(n), int(m), int(trials), int(eos), int(eou), int(unk),
                                 int(to), float(ms), int(seed)))
    return out
