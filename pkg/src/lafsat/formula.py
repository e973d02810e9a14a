"""CNF formulas, DIMACS I/O and structural flags."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union


class FormulaError(ValueError):
    pass


class DimacsError(FormulaError):
    pass


@dataclass(frozen=True, order=True)
class Literal:
    var: int
    positive: bool = True

    def __post_init__(self):
        if self.var < 1:
            raise FormulaError(f"variable index must be >= 1, got {self.var}")

    @classmethod
    def from_int(cls, lit: int) -> "Literal":
        if lit == 0:
            raise FormulaError("0 is not a literal")
        return cls(abs(lit), lit > 0)

    def __int__(self) -> int:
        return self.var if self.positive else -self.var

    def __neg__(self) -> "Literal":
        return Literal(self.var, not self.positive)

    def value(self, assignment: Sequence[bool]) -> bool:
        return bool(assignment[self.var - 1]) == self.positive


LiteralLike = Union[Literal, int]


def _lit(x: LiteralLike) -> Literal:
    return x if isinstance(x, Literal) else Literal.from_int(int(x))


@dataclass(frozen=True)
class Clause:
    literals: tuple[Literal, ...]

    def __init__(self, literals: Iterable[LiteralLike]):
        lits = tuple(_lit(x) for x in literals)
        if not lits:
            raise FormulaError("empty clause")
        seen = set()
        for l in lits:
            if l.var in seen:
                raise FormulaError(f"variable {l.var} repeated in clause {[int(x) for x in lits]}")
            seen.add(l.var)
        object.__setattr__(self, "literals", lits)

    def __len__(self):
        return len(self.literals)

    def __iter__(self):
        return iter(self.literals)

    @property
    def vars(self) -> tuple[int, ...]:
        return tuple(l.var for l in self.literals)

    def true_count(self, assignment: Sequence[bool]) -> int:
        return sum(l.value(assignment) for l in self.literals)

    def ints(self) -> list[int]:
        return [int(l) for l in self.literals]


@dataclass(frozen=True)
class Flags:
    positive: bool
    pure_polarity: bool
    max_width: int


def classify_clauses(clauses: Sequence[Clause]) -> Flags:
    pos, neg = set(), set()
    for c in clauses:
        for l in c:
            (pos if l.positive else neg).add(l.var)
    return Flags(
        positive=not neg,
        pure_polarity=not (pos & neg),
        max_width=max((len(c) for c in clauses), default=0),
    )


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[Clause, ...]
    flags: Flags = field(init=False, compare=False)

    def __init__(self, num_vars: int, clauses: Iterable[Union[Clause, Iterable[LiteralLike]]]):
        cl = tuple(c if isinstance(c, Clause) else Clause(c) for c in clauses)
        if num_vars < 0:
            raise FormulaError("negative variable count")
        for c in cl:
            for l in c:
                if l.var > num_vars:
                    raise FormulaError(f"literal {int(l)} exceeds declared {num_vars} variables")
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "clauses", cl)
        object.__setattr__(self, "flags", classify_clauses(cl))

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def to_lists(self) -> list[list[int]]:
        return [c.ints() for c in self.clauses]

    def is_sat_by(self, assignment: Sequence[bool]) -> bool:
        check_assignment(self, assignment)
        return all(c.true_count(assignment) >= 1 for c in self.clauses)

    def is_eos_by(self, assignment: Sequence[bool]) -> bool:
        """True when every clause has exactly one true literal."""
        check_assignment(self, assignment)
        return all(c.true_count(assignment) == 1 for c in self.clauses)


Assignment = tuple[bool, ...]


def check_assignment(f: CnfFormula, assignment: Sequence[bool]):
    if len(assignment) != f.num_vars:
        raise FormulaError(f"assignment has {len(assignment)} values, formula has {f.num_vars} variables")


def classify(f: CnfFormula) -> Flags:
    return classify_clauses(f.clauses)


def parse_dimacs(text: Union[str, bytes]) -> CnfFormula:
    if isinstance(text, bytes):
        text = text.decode("ascii")
    header = None
    clauses: list[list[int]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise DimacsError(f"line {lineno}: second header")
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise DimacsError(f"line {lineno}: malformed header {line!r}") from None
            if header[0] < 0 or header[1] < 0:
                raise DimacsError(f"line {lineno}: negative counts in header")
            continue
        if header is None:
            raise DimacsError(f"line {lineno}: clause before header")
        for tok in line.split():
            try:
                v = int(tok)
            except ValueError:
                raise DimacsError(f"line {lineno}: bad token {tok!r}") from None
            if v == 0:
                if not current:
                    raise DimacsError(f"line {lineno}: empty clause")
                clauses.append(current)
                current = []
            else:
                if abs(v) > header[0]:
                    raise DimacsError(f"line {lineno}: literal {v} exceeds {header[0]} variables")
                current.append(v)
    if header is None:
        raise DimacsError("missing 'p cnf' header")
    if current:
        clauses.append(current)
    n, m = header
    if len(clauses) != m:
        raise DimacsError(f"header declares {m} clauses, found {len(clauses)}")
    try:
        return CnfFormula(n, clauses)
    except FormulaError as e:
        raise DimacsError(str(e)) from None


def emit_dimacs(f: CnfFormula, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {f.num_vars} {f.num_clauses}")
    lines.extend(" ".join(map(str, c.ints())) + " 0" for c in f.clauses)
    return "\n".join(lines) + "\n"


def read_dimacs(path) -> CnfFormula:
    with open(path, "rb") as fh:
        return parse_dimacs(fh.read())
