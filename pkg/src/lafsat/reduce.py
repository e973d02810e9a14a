"""Satisfiability-preserving rewrites down to positive exactly-one 3-CNF.

Fresh variables are always appended after the existing ones, so the
original variables keep their indices through every step and lifting a
witness back is a projection.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .formula import Clause, CnfFormula, FormulaError, Literal

TRACE_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class FreshVar:
    var: int
    relation: str


@dataclass(frozen=True)
class Step:
    kind: str  # "positivize" | "split3" | "gadget"
    input_num_vars: int
    output_num_vars: int
    fresh: tuple[FreshVar, ...] = ()


@dataclass(frozen=True)
class ReductionTrace:
    original_num_vars: int
    steps: tuple[Step, ...] = ()

    @property
    def output_num_vars(self) -> int:
        return self.steps[-1].output_num_vars if self.steps else self.original_num_vars

    def then(self, other: "ReductionTrace") -> "ReductionTrace":
        if other.original_num_vars != self.output_num_vars:
            raise ValueError("traces do not compose")
        return ReductionTrace(self.original_num_vars, self.steps + other.steps)

    def fresh_vars(self) -> list[FreshVar]:
        return [fv for s in self.steps for fv in s.fresh]

    def to_json(self) -> str:
        doc = {
            "schema_version": TRACE_SCHEMA_VERSION,
            "original_num_vars": self.original_num_vars,
            "output_num_vars": self.output_num_vars,
            "steps": [
                {
                    "kind": s.kind,
                    "input_num_vars": s.input_num_vars,
                    "output_num_vars": s.output_num_vars,
                    "fresh": [asdict(fv) for fv in s.fresh],
                }
                for s in self.steps
            ],
        }
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ReductionTrace":
        doc = json.loads(text)
        if doc.get("schema_version") != TRACE_SCHEMA_VERSION:
            raise ValueError(f"unsupported trace schema {doc.get('schema_version')!r}")
        steps = tuple(
            Step(
                s["kind"],
                s["input_num_vars"],
                s["output_num_vars"],
                tuple(FreshVar(fv["var"], fv["relation"]) for fv in s["fresh"]),
            )
            for s in doc["steps"]
        )
        return cls(doc["original_num_vars"], steps)


def positivize(f: CnfFormula) -> tuple[CnfFormula, ReductionTrace]:
    """Replace each negative literal of X_u by a fresh Y_u and add (X_u v Y_u)."""
    negated = sorted({l.var for c in f.clauses for l in c if not l.positive})
    if not negated:
        return f, ReductionTrace(f.num_vars)
    y_of = {u: f.num_vars + k + 1 for k, u in enumerate(negated)}
    clauses = [
        Clause(Literal(l.var) if l.positive else Literal(y_of[l.var]) for l in c)
        for c in f.clauses
    ]
    clauses += [Clause([Literal(u), Literal(y_of[u])]) for u in negated]
    n = f.num_vars + len(negated)
    fresh = tuple(FreshVar(y_of[u], f"Y = not X{u}") for u in negated)
    return CnfFormula(n, clauses), ReductionTrace(f.num_vars, (Step("positivize", f.num_vars, n, fresh),))


def to_three_cnf(f: CnfFormula) -> tuple[CnfFormula, ReductionTrace]:
    """Split every clause wider than three with a chain of fresh variables."""
    if f.flags.max_width <= 3:
        return f, ReductionTrace(f.num_vars)
    n = f.num_vars
    clauses: list[Clause] = []
    fresh: list[FreshVar] = []
    for i, c in enumerate(f.clauses):
        lits = list(c.literals)
        k = len(lits)
        if k <= 3:
            clauses.append(c)
            continue
        s = []
        for t in range(k - 3):
            n += 1
            s.append(n)
            fresh.append(FreshVar(n, f"split link {t + 1} of clause {i + 1}"))
        clauses.append(Clause([lits[0], lits[1], Literal(s[0])]))
        for t in range(1, k - 3):
            clauses.append(Clause([Literal(s[t - 1], False), lits[t + 1], Literal(s[t])]))
        clauses.append(Clause([Literal(s[-1], False), lits[-2], lits[-1]]))
    out = CnfFormula(n, clauses)
    return out, ReductionTrace(f.num_vars, (Step("split3", f.num_vars, n, tuple(fresh)),))


def gadget(x: Literal, y: Literal, z: Literal, a: int, b: int, c: int, d: int) -> list[Clause]:
    """Exactly-one clauses satisfiable iff (x v y v z) holds, over fresh a, b, c, d."""
    return [
        Clause([-x, Literal(a), Literal(b)]),
        Clause([y, Literal(b), Literal(c)]),
        Clause([-z, Literal(c), Literal(d)]),
    ]


def to_one_in_three(f: CnfFormula) -> tuple[CnfFormula, ReductionTrace]:
    if f.flags.max_width > 3:
        raise FormulaError(f"clause of width {f.flags.max_width} given to the 1-in-3 gadget")
    n = f.num_vars
    clauses: list[Clause] = []
    fresh: list[FreshVar] = []
    for i, cl in enumerate(f.clauses):
        lits = list(cl.literals)
        if len(lits) == 1:
            x = y = z = lits[0]
        elif len(lits) == 2:
            x, y = lits
            z = y
        else:
            x, y, z = lits
        a, b, c, d = n + 1, n + 2, n + 3, n + 4
        n += 4
        fresh += [FreshVar(v, f"gadget {name} of clause {i + 1}") for v, name in zip((a, b, c, d), "abcd")]
        clauses += gadget(x, y, z, a, b, c, d)
    out = CnfFormula(n, clauses)
    return out, ReductionTrace(f.num_vars, (Step("gadget", f.num_vars, n, tuple(fresh)),))


def reduce_sat_to_eos(f: CnfFormula) -> tuple[CnfFormula, ReductionTrace]:
    """CNF -> 3-CNF -> exactly-one 3-CNF -> positive exactly-one 3-CNF."""
    g, t1 = to_three_cnf(f)
    h, t2 = to_one_in_three(g)
    p, t3 = positivize(h)
    return p, t1.then(t2).then(t3)


def lift_witness(trace: ReductionTrace, assignment: Sequence[bool]) -> tuple[bool, ...]:
    if len(assignment) != trace.output_num_vars:
        raise ValueError(
            f"witness has {len(assignment)} values, reduced formula has {trace.output_num_vars} variables"
        )
    return tuple(bool(v) for v in assignment[: trace.original_num_vars])
