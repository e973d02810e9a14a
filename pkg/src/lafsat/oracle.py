"""Brute-force ground truth for small instances.

These routines are deliberately naive: variables are assigned in index
order, 0 before 1, and a clause (or equation) is checked only once all of
its variables have values.  Results therefore come out in lexicographic
order.
"""
from __future__ import annotations

from typing import Callable, Iterator, Optional, Sequence

from .formula import CnfFormula

DEFAULT_LIMIT = 24


class OracleLimitError(ValueError):
    pass


def _search(num_vars: int, checks_at: list[list[Callable[[list[int]], bool]]]) -> Iterator[tuple[int, ...]]:
    x = [0] * num_vars

    def rec(i: int):
        if i == num_vars:
            yield tuple(x)
            return
        for v in (0, 1):
            x[i] = v
            if all(ok(x) for ok in checks_at[i]):
                yield from rec(i + 1)
        x[i] = 0

    # with no variables there are no clauses or nonempty equations to check
    yield from rec(0)


def _clause_checks(f: CnfFormula, want: Callable[[int], bool]):
    checks: list[list] = [[] for _ in range(max(f.num_vars, 1))]
    for c in f.clauses:
        lits = [(l.var - 1, l.positive) for l in c]
        last = max(v for v, _ in lits)
        checks[last].append(lambda x, lits=lits: want(sum(x[v] == pos for v, pos in lits)))
    return checks


def _check_limit(n: int, limit: int):
    if n > limit:
        raise OracleLimitError(f"{n} variables exceeds the oracle limit of {limit}")


def iter_eos(f: CnfFormula, limit: int = DEFAULT_LIMIT) -> Iterator[tuple[bool, ...]]:
    _check_limit(f.num_vars, limit)
    for x in _search(f.num_vars, _clause_checks(f, lambda k: k == 1)):
        yield tuple(bool(v) for v in x)


def iter_sat(f: CnfFormula, limit: int = DEFAULT_LIMIT) -> Iterator[tuple[bool, ...]]:
    _check_limit(f.num_vars, limit)
    for x in _search(f.num_vars, _clause_checks(f, lambda k: k >= 1)):
        yield tuple(bool(v) for v in x)


def enumerate_eos(f: CnfFormula, limit: int = DEFAULT_LIMIT) -> list[tuple[bool, ...]]:
    """All assignments giving every clause exactly one true literal."""
    return list(iter_eos(f, limit))


def enumerate_sat(f: CnfFormula, limit: int = DEFAULT_LIMIT) -> list[tuple[bool, ...]]:
    return list(iter_sat(f, limit))


def is_eos(f: CnfFormula, limit: int = DEFAULT_LIMIT) -> bool:
    return next(iter_eos(f, limit), None) is not None


def is_sat(f: CnfFormula, limit: int = DEFAULT_LIMIT) -> bool:
    return next(iter_sat(f, limit), None) is not None


def bos_search(system, limit: int = DEFAULT_LIMIT) -> Optional[tuple[int, ...]]:
    """First 0/1 solution of ``system`` in lexicographic order, if any.

    ``system`` is anything with ``matrix`` (a RationalMatrix) and ``rhs``.
    """
    A, b = system.matrix, system.rhs
    n = A.num_cols
    _check_limit(n, limit)
    checks: list[list] = [[] for _ in range(max(n, 1))]
    for row, bi in zip(A.rows, b):
        if not row:
            if bi != 0:
                return None
            continue
        items = list(row.items())
        checks[max(row)].append(lambda x, items=items, bi=bi: sum(v * x[c] for c, v in items) == bi)
    return next(_search(n, checks), None)
