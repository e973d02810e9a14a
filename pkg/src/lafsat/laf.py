"""Linearization, quadratic propagation, relinearization and the kernel test.

A positive formula with clauses C_1..C_m over X_1..X_n becomes the 0/1
system ``sum_{u in C_i} X_u = 1``.  Multiplying those equations pairwise
(inner propagation), multiplying each by every X_u and using X_u = X_u^2
(constraint propagation), then renaming each monomial X_i X_j (i <= j) to
a column Z_ij, gives a linear system whose 0/1 solutions correspond to
those of the original.  Any proof that this bigger system has no rational
or no integer solution therefore proves the formula has no exactly-one
assignment.

The diagonal Z_uu stands in for X_u, and the original equations are kept
as the DIAG rows ``sum_{u in C_i} Z_uu = 1``.
"""
from __future__ import annotations

import json
import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .formula import CnfFormula, FormulaError
from .linalg import RationalMatrix, StageTimeout

VERDICT_SCHEMA_VERSION = 1

EOS, EOU, UNK = "EOS", "EOU", "Unk"

# certificate stages
LT_Q = "LT-R"
LT_Z = "LT-Z"
UNIQUE_NON_BOOLEAN = "unique-non-Boolean"
REL_Q = "ReL-R"
REL_Z = "ReL-Z"
REL_BOX = "ReL-box"


@dataclass(frozen=True)
class LinearSystem:
    matrix: RationalMatrix
    rhs: tuple[int, ...]
    var_names: tuple[str, ...]

    @property
    def num_vars(self) -> int:
        return self.matrix.num_cols


@dataclass(frozen=True)
class MonomialIndex:
    """Row-major numbering of the pairs i <= j over 1-based variables."""

    n: int

    @property
    def size(self) -> int:
        return self.n * (self.n + 1) // 2

    def col(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        if not 1 <= i <= j <= self.n:
            raise IndexError(f"pair ({i}, {j}) outside 1..{self.n}")
        a = i - 1
        return a * self.n - a * (a - 1) // 2 + (j - i)

    def pair(self, col: int) -> tuple[int, int]:
        for i in range(1, self.n + 1):
            width = self.n - i + 1
            if col < width:
                return i, i + col
            col -= width
        raise IndexError(col)

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(1, self.n + 1) for j in range(i, self.n + 1)]

    def diag(self, u: int) -> int:
        return self.col(u, u)


@dataclass(frozen=True)
class RelSystem:
    matrix: RationalMatrix
    rhs: tuple[int, ...]
    index: MonomialIndex
    tags: tuple[tuple, ...]  # ("IQP", i, t) | ("CQP", u, i) | ("DIAG", i), 1-based

    def lift(self, x: Sequence[int]) -> list[int]:
        """Outer-product image Z_ij = x_i x_j of a 0/1 vector."""
        return [int(x[i - 1]) * int(x[j - 1]) for i, j in self.index.pairs()]

    def rows_tagged(self, kind: str) -> list[int]:
        return [r for r, t in enumerate(self.tags) if t[0] == kind]


def _require_positive(f: CnfFormula):
    if not f.flags.positive:
        raise FormulaError("the linear transformation needs a positive formula; positivize first")


def linear_transform(f: CnfFormula) -> LinearSystem:
    _require_positive(f)
    rows = tuple({l.var - 1: 1 for l in c} for c in f.clauses)
    return LinearSystem(
        RationalMatrix(rows, f.num_vars),
        tuple(1 for _ in f.clauses),
        tuple(f"X{u}" for u in range(1, f.num_vars + 1)),
    )


def _clause_sets(ls: LinearSystem) -> list[list[int]]:
    for row, bi in zip(ls.matrix.rows, ls.rhs):
        if bi != 1 or any(v != 1 for v in row.values()):
            raise ValueError("not a linearized-formula system (0/1 rows with rhs 1)")
    return [sorted(c + 1 for c in row) for row in ls.matrix.rows]


def relinearize(ls: LinearSystem) -> RelSystem:
    clauses = _clause_sets(ls)
    n, m = ls.num_vars, len(clauses)
    idx = MonomialIndex(n)
    col = idx.col
    rows: list[dict[int, int]] = []
    rhs: list[int] = []
    tags: list[tuple] = []
    for i in range(m):
        for t in range(i, m):
            row: dict[int, int] = {}
            for u in clauses[i]:
                for w in clauses[t]:
                    c = col(u, w)
                    row[c] = row.get(c, 0) + 1
            rows.append({c: v for c, v in row.items() if v})
            rhs.append(1)
            tags.append(("IQP", i + 1, t + 1))
    for u in range(1, n + 1):
        duu = col(u, u)
        for i in range(m):
            row = {}
            for w in clauses[i]:
                c = col(u, w)
                row[c] = row.get(c, 0) + 1
            row[duu] = row.get(duu, 0) - 1
            rows.append({c: v for c, v in row.items() if v})
            rhs.append(0)
            tags.append(("CQP", u, i + 1))
    for i in range(m):
        rows.append({col(u, u): 1 for u in clauses[i]})
        rhs.append(1)
        tags.append(("DIAG", i + 1))
    return RelSystem(RationalMatrix(tuple(rows), idx.size), tuple(rhs), idx, tuple(tags))


@dataclass(frozen=True)
class KernelOptions:
    use_integer_check: bool = True
    use_rational_check: bool = True
    use_box_lp: bool = False
    # wall-clock seconds per stage and for the whole check; None means unbounded
    stage_timeout: Optional[float] = None
    total_timeout: Optional[float] = None
    # skip step (a)/(b) and go straight to the relinearized system
    skip_lt_stage: bool = False
    drop_unused: bool = True

    @classmethod
    def for_ring(cls, ring: str, **kw) -> "KernelOptions":
        if ring == "both":
            return cls(use_rational_check=True, use_integer_check=True, **kw)
        if ring == "rational":
            return cls(use_rational_check=True, use_integer_check=False, **kw)
        if ring == "integer":
            return cls(use_rational_check=False, use_integer_check=True, **kw)
        raise ValueError(f"unknown ring {ring!r}")


@dataclass
class Certificate:
    stage: str
    vector: Optional[list[Fraction]] = None
    solution: Optional[list[Fraction]] = None

    def to_json(self) -> dict:
        d: dict = {"stage": self.stage}
        if self.vector is not None:
            d["vector"] = [str(v) for v in self.vector]
        if self.solution is not None:
            d["solution"] = [str(v) for v in self.solution]
        return d


@dataclass
class KernelVerdict:
    answer: str
    witness: Optional[tuple[bool, ...]] = None
    certificate: Optional[Certificate] = None
    stats: dict = field(default_factory=dict)
    note: Optional[str] = None

    def to_dict(self) -> dict:
        d: dict = {"schema_version": VERDICT_SCHEMA_VERSION, "answer": self.answer}
        if self.witness is not None:
            d["witness"] = [int(v) for v in self.witness]
        if self.certificate is not None:
            d["certificate"] = self.certificate.to_json()
        d["stats"] = self.stats
        if self.note:
            d["note"] = self.note
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _is_boolean(x: Sequence[Fraction]) -> bool:
    return all(v == 0 or v == 1 for v in x)


class _Stages:
    """Times named stages and enforces the per-stage and overall deadlines."""

    def __init__(self, timeout: Optional[float], total: Optional[float] = None):
        self.timeout = timeout
        self.end = None if total is None else time.monotonic() + total
        self.elapsed_ms: dict[str, float] = {}

    def run(self, name: str, fn, *args):
        deadline = None if self.timeout is None else time.monotonic() + self.timeout
        if self.end is not None:
            deadline = self.end if deadline is None else min(deadline, self.end)
        t0 = time.perf_counter()
        try:
            return fn(*args, deadline=deadline)
        finally:
            self.elapsed_ms[name] = round((time.perf_counter() - t0) * 1000, 3)


def drop_unused(f: CnfFormula) -> tuple[CnfFormula, list[int]]:
    """Renumber so that only variables occurring in some clause remain.

    Returns the compact formula and the original (1-based) index of each
    compact variable.
    """
    used = sorted({l.var for c in f.clauses for l in c})
    if len(used) == f.num_vars:
        return f, used
    new = {u: k + 1 for k, u in enumerate(used)}
    return CnfFormula(len(used), [[new[l.var] if l.positive else -new[l.var] for l in c] for c in f.clauses]), used


def kernel_check(f: CnfFormula, options: KernelOptions = KernelOptions()) -> KernelVerdict:
    """Exactly-one test of a positive formula; returns EOS, EOU or Unk.

    Variables that occur in no clause are dropped first (they are free in
    every exactly-one assignment and only add null directions to the
    systems); a witness gives them the value False.  Certificates refer to
    the systems of the compacted formula.
    """
    _require_positive(f)
    if f.flags.max_width > 3:
        warnings.warn("kernel_check on clauses wider than 3", stacklevel=2)
    g, used = drop_unused(f) if options.drop_unused else (f, list(range(1, f.num_vars + 1)))
    stages = _Stages(options.stage_timeout, options.total_timeout)
    stats: dict = {"n": f.num_vars, "m": f.num_clauses, "n_used": g.num_vars}
    try:
        verdict = _kernel(g, options, stages, stats)
    except StageTimeout as e:
        verdict = KernelVerdict(UNK, note=f"timeout: {e}")
    stats["elapsed_ms"] = stages.elapsed_ms
    verdict.stats = stats
    if verdict.answer == EOS:
        full = [False] * f.num_vars
        for k, u in enumerate(used):
            full[u - 1] = verdict.witness[k]
        verdict.witness = tuple(full)
        if not f.is_eos_by(verdict.witness):
            raise AssertionError("kernel produced an EOS witness that fails verification")
    return verdict


def _kernel(f: CnfFormula, opts: KernelOptions, stages: _Stages, stats: dict) -> KernelVerdict:
    # Rational tests on both systems come before either integer test:
    # elimination is far cheaper than the Hermite form, and the verdict is
    # the same whichever refutation is found first.
    lt = linear_transform(f)
    n = lt.num_vars
    lt_q = None
    if not opts.skip_lt_stage:
        lt_q = stages.run("LT-rational", linalg.eliminate, lt.matrix, lt.rhs)
        stats["lt_rank"] = lt_q.rank
        if not lt_q.consistent:
            if opts.use_rational_check:
                return KernelVerdict(EOU, certificate=Certificate(LT_Q, vector=lt_q.inconsistency_certificate))
        elif lt_q.rank == n:
            x = lt_q.particular_solution
            if _is_boolean(x):
                return KernelVerdict(EOS, witness=tuple(v == 1 for v in x))
            return KernelVerdict(EOU, certificate=Certificate(UNIQUE_NON_BOOLEAN, solution=x))

    rel = relinearize(lt)
    stats["v"] = rel.index.size
    stats["rel_rows"] = rel.matrix.num_rows
    rel_q = stages.run("ReL-rational", linalg.eliminate, rel.matrix, rel.rhs)
    stats["rel_rank"] = rel_q.rank
    if not rel_q.consistent:
        if opts.use_rational_check:
            return KernelVerdict(EOU, certificate=Certificate(REL_Q, vector=rel_q.inconsistency_certificate))
    elif rel_q.rank == rel.index.size:
        z = rel_q.particular_solution
        diag = [z[rel.index.diag(u)] for u in range(1, n + 1)]
        if _is_boolean(diag) and list(z) == rel.lift(diag):
            return KernelVerdict(EOS, witness=tuple(v == 1 for v in diag))

    if opts.use_integer_check:
        if not opts.skip_lt_stage:
            res = stages.run("LT-integer", linalg.integer_consistent, lt.matrix, lt.rhs, lt_q)
            if not res.solvable:
                return KernelVerdict(EOU, certificate=Certificate(LT_Z, vector=res.non_integrality_certificate))
        res = stages.run("ReL-integer", linalg.integer_consistent, rel.matrix, rel.rhs, rel_q)
        stats["rel_core"] = list(res.core_shape)
        if not res.solvable:
            return KernelVerdict(EOU, certificate=Certificate(REL_Z, vector=res.non_integrality_certificate))

    if opts.use_box_lp:
        feasible, data = stages.run("ReL-box", linalg.box_lp_check, rel.matrix, rel.rhs)
        if feasible is False:
            return KernelVerdict(EOU, certificate=Certificate(REL_BOX, vector=data))
        if feasible:
            w = _box_pinned_witness(rel, data, n, stages)
            if w is not None and f.is_eos_by(w):
                return KernelVerdict(EOS, witness=w, note="diagonal unique over the box")
    return KernelVerdict(UNK)


def _box_pinned_witness(rel: RelSystem, point, n: int, stages: _Stages):
    """The diagonal of ``point`` if every box point of ReL shares it, else None.

    With d the 0/1 diagonal, c_u = 1 where d_u = 1 and -1 where d_u = 0
    satisfies c.Z <= c.d on the box with equality exactly when the diagonal
    is d, so a minimum of c.d means every box point has diagonal d.
    """
    diag_cols = [rel.index.diag(u) for u in range(1, n + 1)]
    d = [point[c] for c in diag_cols]
    if not _is_boolean(d):
        return None
    cost = {c: (1 if v == 1 else -1) for c, v in zip(diag_cols, d)}
    status, z = stages.run("ReL-box-unique", linalg.box_lp_minimize, rel.matrix, rel.rhs, cost)
    if status != "optimal":
        return None
    if sum(cost[c] * z[c] for c in diag_cols) != sum(cost[c] * dv for c, dv in zip(diag_cols, d)):
        return None
    return tuple(v == 1 for v in d)


def verify_certificate(f: CnfFormula, verdict: KernelVerdict) -> bool:
    """Independently re-check an EOU certificate (or EOS witness) against ``f``."""
    if verdict.answer == EOS:
        return verdict.witness is not None and f.is_eos_by(verdict.witness)
    if verdict.answer != EOU or verdict.certificate is None:
        return False
    cert = verdict.certificate
    if verdict.stats.get("n_used", f.num_vars) != f.num_vars:
        f, _ = drop_unused(f)
    lt = linear_transform(f)
    if cert.stage == UNIQUE_NON_BOOLEAN:
        x = cert.solution
        if x is None or len(x) != lt.num_vars or _is_boolean(x):
            return False
        if lt.matrix.matvec(x) != list(lt.rhs):
            return False
        return linalg.rank(lt.matrix) == lt.num_vars
    if cert.stage.startswith("LT"):
        A, b = lt.matrix, lt.rhs
    else:
        rel = relinearize(lt)
        A, b = rel.matrix, rel.rhs
    if cert.stage.endswith("-R"):
        return linalg.verify_farkas(A, b, cert.vector)
    if cert.stage.endswith("-Z"):
        return linalg.verify_non_integrality(A, b, cert.vector)
    if cert.stage == REL_BOX:
        return linalg.verify_box_infeasibility(A, b, cert.vector)
    return False
