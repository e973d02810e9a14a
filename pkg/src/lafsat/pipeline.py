"""Full SAT/UNSAT front end: reduce, run the kernel, lift the witness."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .formula import CnfFormula
from .laf import EOS, EOU, UNK, KernelOptions, KernelVerdict, VERDICT_SCHEMA_VERSION, kernel_check
from .reduce import ReductionTrace, lift_witness, positivize, to_one_in_three, to_three_cnf

SAT, UNSAT = "SAT", "UNSAT"


class SoundnessError(AssertionError):
    """A SAT witness failed to check against the input; always a bug."""


@dataclass(frozen=True)
class PipelineOptions:
    kernel: KernelOptions = KernelOptions()
    # variable count of the reduced formula beyond which the kernel is not run
    size_cap: int = 2000


@dataclass
class SatVerdict:
    answer: str
    witness: Optional[tuple[bool, ...]] = None
    kernel_report: Optional[KernelVerdict] = None
    reduction_stats: list[dict] = field(default_factory=list)
    trace: Optional[ReductionTrace] = None
    note: Optional[str] = None

    def to_dict(self) -> dict:
        d: dict = {"schema_version": VERDICT_SCHEMA_VERSION, "answer": self.answer}
        if self.witness is not None:
            d["witness"] = [int(v) for v in self.witness]
        if self.kernel_report is not None:
            k = self.kernel_report.to_dict()
            if "certificate" in k:
                d["certificate"] = k["certificate"]
            d["stats"] = k["stats"]
            d["kernel"] = k
        d["reduction_stats"] = self.reduction_stats
        if self.note:
            d["note"] = self.note
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _stat(stage: str, f: CnfFormula) -> dict:
    return {"stage": stage, "num_vars": f.num_vars, "num_clauses": f.num_clauses}


def laf_sat_check(f: CnfFormula, options: PipelineOptions = PipelineOptions()) -> SatVerdict:
    g, t1 = to_three_cnf(f)
    h, t2 = to_one_in_three(g)
    p, t3 = positivize(h)
    trace = t1.then(t2).then(t3)
    stats = [_stat("input", f), _stat("3cnf", g), _stat("one_in_three", h), _stat("positive", p)]
    if p.num_vars > options.size_cap:
        return SatVerdict(UNK, reduction_stats=stats, trace=trace,
                          note=f"size-capped: reduced formula has {p.num_vars} > {options.size_cap} variables")
    kv = kernel_check(p, options.kernel)
    if kv.answer == EOS:
        w = lift_witness(trace, kv.witness)
        if not f.is_sat_by(w):
            raise SoundnessError("lifted witness does not satisfy the input formula")
        return SatVerdict(SAT, w, kv, stats, trace, kv.note)
    if kv.answer == EOU:
        return SatVerdict(UNSAT, None, kv, stats, trace, kv.note)
    return SatVerdict(UNK, None, kv, stats, trace, kv.note)
