"""Exact linear algebra over the rationals and the integers.

Everything here works on Python ints and :class:`fractions.Fraction`; no
floating point is used anywhere.  The central piece is a sparse,
fraction-free row eliminator that remembers, for every working row, which
combination of the input rows produced it.  That bookkeeping is what lets
:func:`eliminate` hand back a Farkas vector and :func:`integer_consistent`
hand back a non-integrality vector that can be re-checked against the
untouched input.
"""
from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Number = int | Fraction


class DimensionError(ValueError):
    pass


class StageTimeout(RuntimeError):
    """Raised when an elimination runs past its deadline."""


@dataclass(frozen=True)
class RationalMatrix:
    """Sparse matrix of exact rationals; each row maps column -> nonzero value."""

    rows: tuple[dict[int, Number], ...]
    num_cols: int

    def __post_init__(self):
        clean = []
        for row in self.rows:
            r = {}
            for c, v in row.items():
                if not 0 <= c < self.num_cols:
                    raise DimensionError(f"column {c} out of range 0..{self.num_cols - 1}")
                if isinstance(v, float):
                    raise TypeError("floating point entries are not allowed")
                if v:
                    r[c] = v
            clean.append(r)
        object.__setattr__(self, "rows", tuple(clean))

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[Number]], num_cols: Optional[int] = None):
        if num_cols is None:
            num_cols = len(rows[0]) if rows else 0
        sparse = []
        for row in rows:
            if len(row) != num_cols:
                raise DimensionError("ragged dense matrix")
            sparse.append({j: v for j, v in enumerate(row) if v})
        return cls(tuple(sparse), num_cols)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def dense(self) -> list[list[Number]]:
        out = []
        for row in self.rows:
            d = [0] * self.num_cols
            for c, v in row.items():
                d[c] = v
            out.append(d)
        return out

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def matvec(self, x: Sequence[Number]) -> list[Number]:
        if len(x) != self.num_cols:
            raise DimensionError("vector length does not match column count")
        return [sum(v * x[c] for c, v in row.items()) for row in self.rows]

    def vecmat(self, y: Sequence[Number]) -> list[Number]:
        if len(y) != self.num_rows:
            raise DimensionError("vector length does not match row count")
        out: list[Number] = [0] * self.num_cols
        for yi, row in zip(y, self.rows):
            if yi:
                for c, v in row.items():
                    out[c] += yi * v
        return out

    def is_integral(self) -> bool:
        return all(_is_int(v) for row in self.rows for v in row.values())


def _is_int(v: Number) -> bool:
    return isinstance(v, int) or v.denominator == 1


def _as_matrix(A) -> RationalMatrix:
    if isinstance(A, RationalMatrix):
        return A
    return RationalMatrix.from_dense(A)


def _check_dims(A: RationalMatrix, b: Sequence[Number]):
    if A.num_rows != len(b):
        raise DimensionError(f"{A.num_rows} rows but right-hand side of length {len(b)}")


@dataclass
class EliminationResult:
    consistent: bool
    rank: int
    particular_solution: Optional[list[Fraction]] = None
    inconsistency_certificate: Optional[list[Fraction]] = None
    # set when the rank could not be completed because elimination stopped
    # at the first contradiction
    rank_is_lower_bound: bool = False


@dataclass
class HnfResult:
    H: list[list[int]]
    U: list[list[int]]
    rank: int
    pivot_rows: list[int] = field(default_factory=list)


@dataclass
class IntegerConsistency:
    solvable: bool
    integer_solution: Optional[list[int]] = None
    non_integrality_certificate: Optional[list[Fraction]] = None
    # True when the refutation already happens over the rationals
    rational_inconsistent: bool = False
    core_shape: tuple[int, int] = (0, 0)


class _Eliminator:
    """Sparse fraction-free Gaussian elimination with row provenance.

    Working row ``r`` satisfies the identity
    ``coef[r] . x - rhs[r] == sum_k orig[r][k] * (A_k . x - b_k) / den[r]``
    exactly, so a zero row with nonzero rhs yields a Farkas vector.
    """

    def __init__(self, A: RationalMatrix, b: Sequence[Number], deadline: Optional[float] = None):
        self.ncols = A.num_cols
        self.coef: list[Optional[dict[int, int]]] = []
        self.rhs: list[int] = []
        self.orig: list[dict[int, int]] = []
        self.den: list[int] = []
        self.colrows: list[set[int]] = [set() for _ in range(A.num_cols)]
        self.deadline = deadline
        self.pivots: list[tuple[int, int]] = []  # (row, col) in elimination order
        self.conflict: Optional[int] = None
        self._pivot_rows: set[int] = set()
        for k, (row, bk) in enumerate(zip(A.rows, b)):
            dens = [v.denominator for v in row.values() if isinstance(v, Fraction)]
            if isinstance(bk, Fraction):
                dens.append(bk.denominator)
            L = math.lcm(*dens) if dens else 1
            coef = {c: int(v * L) for c, v in row.items()}
            self.coef.append(coef)
            self.rhs.append(int(bk * L))
            self.orig.append({k: L})
            self.den.append(1)
            for c in coef:
                self.colrows[c].add(k)
        self._heap: list[tuple[int, int]] = []
        for r, coef in enumerate(self.coef):
            self._normalize(r)
            if self.coef[r] is not None:
                heapq.heappush(self._heap, (len(self.coef[r]), r))

    # -- row bookkeeping ---------------------------------------------------

    def _normalize(self, r: int):
        coef = self.coef[r]
        if not coef:
            if self.rhs[r] != 0 and self.conflict is None:
                self.conflict = r
            self.coef[r] = None
            return
        g = math.gcd(self.rhs[r], *coef.values())
        if coef[min(coef)] < 0:
            g = -g
        if g != 1:
            for c in coef:
                coef[c] //= g
            self.rhs[r] //= g
            self.den[r] *= g
            if self.den[r] < 0:
                self.den[r] = -self.den[r]
                o = self.orig[r]
                for k in o:
                    o[k] = -o[k]
            o = self.orig[r]
            h = math.gcd(self.den[r], *o.values())
            if h > 1:
                self.den[r] //= h
                for k in o:
                    o[k] //= h

    def _retire(self, r: int):
        for c in self.coef[r]:
            self.colrows[c].discard(r)

    def active_rows(self) -> list[int]:
        return [r for r, c in enumerate(self.coef) if c is not None and not self._is_pivot(r)]

    def _is_pivot(self, r: int) -> bool:
        return r in self._pivot_rows

    def _eliminate_col(self, p: int, j: int):
        pc = self.coef[p]
        ap = pc[j]
        prhs = self.rhs[p]
        po = self.orig[p]
        pden = self.den[p]
        for r in sorted(self.colrows[j]):
            if r == p:
                continue
            rc = self.coef[r]
            ar = rc[j]
            g = math.gcd(ap, ar)
            alpha, beta = ap // g, ar // g
            # new_r = alpha * r - beta * p
            if alpha != 1:
                for c in rc:
                    rc[c] *= alpha
            for c, v in pc.items():
                nv = rc.get(c, 0) - beta * v
                if nv:
                    if c not in rc:
                        self.colrows[c].add(r)
                    rc[c] = nv
                elif c in rc:
                    del rc[c]
                    self.colrows[c].discard(r)
            self.rhs[r] = alpha * self.rhs[r] - beta * prhs
            rden = self.den[r]
            D = rden * pden // math.gcd(rden, pden)
            fr, fp = alpha * (D // rden), beta * (D // pden)
            ro = self.orig[r]
            if fr != 1:
                for k in ro:
                    ro[k] *= fr
            for k, v in po.items():
                nv = ro.get(k, 0) - fp * v
                if nv:
                    ro[k] = nv
                else:
                    ro.pop(k, None)
            self.den[r] = D
            self._normalize(r)
            if self.coef[r] is None:
                if self.conflict is not None:
                    return
            else:
                heapq.heappush(self._heap, (len(rc), r))

    # -- driver ----------------------------------------------------------

    def run(self, unit_only: bool = False, stop_on_conflict: bool = True):
        """Pivot until no eligible row remains.

        Row choice is least-length first (lowest row index on ties); column
        choice within the row is least column count, then unit coefficient,
        then lowest column index.
        """
        skipped = []
        heap = self._heap
        count = 0
        while heap:
            ln, r = heapq.heappop(heap)
            rc = self.coef[r]
            if rc is None or r in self._pivot_rows or len(rc) != ln:
                continue
            if unit_only:
                cands = [c for c, v in rc.items() if v == 1 or v == -1]
                if not cands:
                    skipped.append((ln, r))
                    continue
            else:
                cands = rc
            colrows = self.colrows
            j = min(cands, key=lambda c: (len(colrows[c]), abs(rc[c]) != 1, c))
            self._pivot_rows.add(r)
            self.pivots.append((r, j))
            self._eliminate_col(p=r, j=j)
            self._retire(r)
            if self.conflict is not None and stop_on_conflict:
                return
            count += 1
            if self.deadline is not None and count % 16 == 0 and time.monotonic() > self.deadline:
                raise StageTimeout("elimination deadline exceeded")
        for item in skipped:
            heapq.heappush(heap, item)
        # rows that were skipped may have been modified later; the lengths
        # in the heap are lazily revalidated, so re-push current ones
        for r in self.active_rows():
            heapq.heappush(heap, (len(self.coef[r]), r))

    def combination(self, r: int) -> dict[int, Fraction]:
        d = self.den[r]
        return {k: Fraction(v, d) for k, v in self.orig[r].items()}

    def certificate(self, r: int, num_rows: int) -> list[Fraction]:
        y = [Fraction(0)] * num_rows
        for k, v in self.combination(r).items():
            y[k] = v
        return y

    def back_substitute(self, base: Optional[dict[int, Number]] = None) -> list[Fraction]:
        x: list[Number] = [0] * self.ncols
        if base:
            for c, v in base.items():
                x[c] = v
        for r, j in reversed(self.pivots):
            rc = self.coef_at_pivot[r]
            s = self.rhs_at_pivot[r]
            for c, v in rc.items():
                if c != j:
                    s -= v * x[c]
            x[j] = Fraction(s, rc[j])
        return [Fraction(v) for v in x]


def _snapshotting(elim: _Eliminator):
    # pivot rows are left untouched after retirement, so the live rows are
    # their own snapshot
    elim.coef_at_pivot = elim.coef
    elim.rhs_at_pivot = elim.rhs
    return elim


def eliminate(A, b: Sequence[Number], deadline: Optional[float] = None) -> EliminationResult:
    """Decide consistency of ``A x = b`` over the rationals.

    Consistent results carry a particular solution with free variables set
    to zero; inconsistent ones carry ``y`` with ``y A = 0`` and ``y b != 0``.
    """
    A = _as_matrix(A)
    _check_dims(A, b)
    elim = _snapshotting(_Eliminator(A, b, deadline))
    if elim.conflict is None:
        elim.run(unit_only=True)
    if elim.conflict is None:
        elim.run(unit_only=False)
    if elim.conflict is not None:
        y = elim.certificate(elim.conflict, A.num_rows)
        return EliminationResult(False, len(elim.pivots), None, y, rank_is_lower_bound=True)
    x = elim.back_substitute()
    return EliminationResult(True, len(elim.pivots), x, None)


def unique_solution(A, b: Sequence[Number], deadline: Optional[float] = None) -> Optional[list[Fraction]]:
    A = _as_matrix(A)
    res = eliminate(A, b, deadline)
    if res.consistent and res.rank == A.num_cols:
        return res.particular_solution
    return None


def rank(A, deadline: Optional[float] = None) -> int:
    A = _as_matrix(A)
    return eliminate(A, [0] * A.num_rows, deadline).rank


def verify_farkas(A, b: Sequence[Number], y: Sequence[Number]) -> bool:
    A = _as_matrix(A)
    _check_dims(A, b)
    if len(y) != A.num_rows:
        return False
    return all(v == 0 for v in A.vecmat(y)) and sum(yi * bi for yi, bi in zip(y, b)) != 0


def verify_non_integrality(A, b: Sequence[Number], y: Sequence[Number]) -> bool:
    """Check ``y A`` integral and ``y b`` non-integral, which rules out integer solutions."""
    A = _as_matrix(A)
    _check_dims(A, b)
    if len(y) != A.num_rows:
        return False
    yb = Fraction(sum(yi * bi for yi, bi in zip(y, b)))
    return all(_is_int(Fraction(v)) for v in A.vecmat(y)) and yb.denominator != 1


# -- Hermite normal form -----------------------------------------------------


def hnf(A: Sequence[Sequence[int]], deadline: Optional[float] = None) -> HnfResult:
    """Column-style Hermite normal form: returns ``H = A U`` with ``U`` unimodular.

    Rows are processed top to bottom.  Row ``i`` that gains a pivot gets it in
    the next free column, the pivot is positive, every entry to its right is
    zero and every entry to its left lies in ``[0, pivot)``.
    """
    if isinstance(A, RationalMatrix):
        if not A.is_integral():
            raise ValueError("hnf needs an integer matrix")
        A = [[int(v) for v in row] for row in A.dense()]
    s = len(A)
    t = len(A[0]) if s else 0
    # columns as lists, so column operations are list operations
    Hc = [[int(A[i][j]) for i in range(s)] for j in range(t)]
    Uc = [[1 if i == j else 0 for i in range(t)] for j in range(t)]
    pivot_rows = []
    k = 0
    for i in range(s):
        if k == t:
            break
        if deadline is not None and time.monotonic() > deadline:
            raise StageTimeout("hnf deadline exceeded")
        while True:
            nz = [j for j in range(k, t) if Hc[j][i] != 0]
            if not nz:
                break
            jmin = min(nz, key=lambda j: (abs(Hc[j][i]), j))
            if jmin != k:
                Hc[k], Hc[jmin] = Hc[jmin], Hc[k]
                Uc[k], Uc[jmin] = Uc[jmin], Uc[k]
            if len(nz) == 1:
                break
            pk, uk, a = Hc[k], Uc[k], Hc[k][i]
            for j in nz:
                if j == jmin:
                    continue
                jj = jmin if j == k else j
                q = Hc[jj][i] // a
                if q:
                    hj, uj = Hc[jj], Uc[jj]
                    for e in range(i, s):
                        if pk[e]:
                            hj[e] -= q * pk[e]
                    for e in range(t):
                        if uk[e]:
                            uj[e] -= q * uk[e]
        if all(Hc[j][i] == 0 for j in range(k, t)):
            continue
        if Hc[k][i] < 0:
            Hc[k] = [-v for v in Hc[k]]
            Uc[k] = [-v for v in Uc[k]]
        pk, uk, a = Hc[k], Uc[k], Hc[k][i]
        for j in range(k):
            q = Hc[j][i] // a
            if q:
                hj, uj = Hc[j], Uc[j]
                for e in range(i, s):
                    if pk[e]:
                        hj[e] -= q * pk[e]
                for e in range(t):
                    if uk[e]:
                        uj[e] -= q * uk[e]
        pivot_rows.append(i)
        k += 1
    H = [[Hc[j][i] for j in range(t)] for i in range(s)]
    U = [[Uc[j][i] for j in range(t)] for i in range(t)]
    return HnfResult(H, U, k, pivot_rows)


def _solve_hnf(res: HnfResult, b: Sequence[int]):
    """Forward-solve ``H z = b`` on the pivot rows.

    Returns ``("ok", z)``, ``("frac", y)`` with ``y`` a non-integrality vector
    over the rows of ``H``, or ``("inconsistent", i)``.
    """
    H = res.H
    r = res.rank
    z: list[int] = []
    pivot_of = {i: k for k, i in enumerate(res.pivot_rows)}
    for i, row in enumerate(H):
        s = b[i] - sum(row[l] * z[l] for l in range(len(z)))
        if i in pivot_of:
            k = pivot_of[i]
            q, rem = divmod(s, row[k])
            if rem:
                # row k of B^{-1}, where B is the square lower-triangular pivot block
                P = res.pivot_rows
                y = [Fraction(0)] * (k + 1)
                for l in range(k, -1, -1):
                    acc = Fraction(1 if l == k else 0)
                    for p in range(l + 1, k + 1):
                        acc -= y[p] * H[P[p]][l]
                    y[l] = acc / H[P[l]][l]
                full = [Fraction(0)] * len(H)
                for l in range(k + 1):
                    full[P[l]] = y[l]
                return "frac", full
            z.append(q)
        elif s != 0:
            return "inconsistent", i
    return "ok", z + [0] * (len(res.U) - r)


def integer_consistent(
    A,
    b: Sequence[Number],
    rational: Optional[EliminationResult] = None,
    deadline: Optional[float] = None,
) -> IntegerConsistency:
    """Decide whether ``A x = b`` has an integer solution.

    The rational test runs first (``rational`` may pass in its result).  Then unit pivots (coefficient +-1) are
    eliminated, which maps integer solutions bijectively, rows are divided by
    their content, and what is left is settled by a Hermite normal form.
    """
    A = _as_matrix(A)
    _check_dims(A, b)
    if not A.is_integral() or not all(_is_int(Fraction(v)) for v in b):
        raise ValueError("integer_consistent needs integer data")
    q = rational if rational is not None else eliminate(A, b, deadline)
    if not q.consistent:
        y = q.inconsistency_certificate
        yb = sum(yi * bi for yi, bi in zip(y, b))
        scale = Fraction(1, 2) / yb
        return IntegerConsistency(False, None, [v * scale for v in y], rational_inconsistent=True)

    elim = _snapshotting(_Eliminator(A, b, deadline))
    while True:
        elim.run(unit_only=True)
        if elim.conflict is not None:
            break
        # content check on what is left; rows are already divided by
        # gcd(coefficients, rhs), so a coefficient gcd > 1 is a refutation
        bad = None
        for r in elim.active_rows():
            g = math.gcd(*elim.coef[r].values())
            if g > 1:
                bad = (r, g)
                break
        if bad is None:
            break
        r, g = bad
        y = elim.certificate(r, A.num_rows)
        return IntegerConsistency(False, None, [v / g for v in y])
    if elim.conflict is not None:
        y = elim.certificate(elim.conflict, A.num_rows)
        yb = sum(yi * bi for yi, bi in zip(y, b))
        return IntegerConsistency(False, None, [v * Fraction(1, 2) / yb for v in y], True)

    core = elim.active_rows()
    cols = sorted({c for r in core for c in elim.coef[r]})
    base: dict[int, int] = {}
    if core:
        pos = {c: j for j, c in enumerate(cols)}
        M = [[0] * len(cols) for _ in core]
        for i, r in enumerate(core):
            for c, v in elim.coef[r].items():
                M[i][pos[c]] = v
        rhs = [elim.rhs[r] for r in core]
        h = hnf(M, deadline)
        status, payload = _solve_hnf(h, rhs)
        if status == "frac":
            y = [Fraction(0)] * A.num_rows
            for i, yi in enumerate(payload):
                if yi:
                    for k, v in elim.combination(core[i]).items():
                        y[k] += yi * v
            return IntegerConsistency(False, None, y, core_shape=(len(core), len(cols)))
        if status == "inconsistent":
            raise AssertionError("rationally consistent system failed the integer forward solve")
        z = payload
        for col_idx, c in enumerate(cols):
            base[c] = sum(h.U[col_idx][l] * z[l] for l in range(len(z)))
    x = elim.back_substitute(base)
    xi = [int(v) for v in x]
    assert all(v.denominator == 1 for v in x)
    return IntegerConsistency(True, xi, None, core_shape=(len(core), len(cols)))


# -- optional box-constrained feasibility ------------------------------------


def _parametrize(elim: _Eliminator):
    """Write the solution set as ``x = x0 + sum_f x_f n_f`` over free columns f."""
    pivot_cols = {j for _, j in elim.pivots}
    free = [c for c in range(elim.ncols) if c not in pivot_cols]
    x0 = elim.back_substitute()
    basis = {}
    for f in free:
        x: list[Number] = [0] * elim.ncols
        x[f] = 1
        for r, j in reversed(elim.pivots):
            rc = elim.coef[r]
            s = 0
            for c, v in rc.items():
                if c != j and x[c]:
                    s -= v * x[c]
            x[j] = Fraction(s, rc[j]) if s else 0
        basis[f] = x
    return x0, free, basis


def verify_box_infeasibility(A, b: Sequence[Number], y: Sequence[Number]) -> bool:
    """Check ``y b > max_{0<=x<=1} y A x``, which rules out any point of the unit box."""
    A = _as_matrix(A)
    _check_dims(A, b)
    if y is None or len(y) != A.num_rows:
        return False
    g = A.vecmat(y)
    return sum(yi * bi for yi, bi in zip(y, b)) > sum(v for v in g if v > 0)


class _BoxSimplex:
    """Bounded simplex over ``{A x = b, 0 <= x <= 1}`` after elimination.

    Basic columns are tracked through ``dx_B = -T dx_N``; nonbasic columns
    always sit at 0 or 1.  Bland's rule (lowest column index) picks both the
    entering and, among ties, the leaving column.
    """

    def __init__(self, elim: _Eliminator):
        x0, free, basis = _parametrize(elim)
        self.nb = list(free)
        self.bs = [j for _, j in elim.pivots]
        self.T = [[-Fraction(basis[f][j]) for f in self.nb] for j in self.bs]
        self.val = {c: Fraction(v) for c, v in enumerate(x0)}
        self.ncols = elim.ncols

    def violation_signs(self) -> list[int]:
        return [(-1 if self.val[c] < 0 else (1 if self.val[c] > 1 else 0)) for c in self.bs]

    def _choose(self, rate):
        for pos in sorted(range(len(self.nb)), key=lambda p: self.nb[p]):
            e = rate(pos)
            xj = self.val[self.nb[pos]]
            if e < 0 and xj == 0:
                return pos, 1
            if e > 0 and xj == 1:
                return pos, -1
        return None, 0

    def step(self, pos: int, sigma: int):
        T, bs, nb, val = self.T, self.bs, self.nb, self.val
        theta, leave, leave_to = Fraction(1), None, None
        for i, c in enumerate(bs):
            d = -sigma * T[i][pos]
            if not d:
                continue
            v = val[c]
            t = None
            if d > 0 and v <= 1:
                t, to = ((1 - v) / d, 1) if v >= 0 else (-v / d, 0)
            elif d < 0 and v >= 0:
                t, to = (v / -d, 0) if v <= 1 else ((v - 1) / -d, 1)
            if t is not None and (t < theta or (t == theta and leave is not None and c < bs[leave])):
                theta, leave, leave_to = t, i, to
        if theta:
            for i, c in enumerate(bs):
                if T[i][pos]:
                    val[c] -= sigma * T[i][pos] * theta
            val[nb[pos]] += sigma * theta
        if leave is None:
            return
        val[bs[leave]] = Fraction(leave_to)
        piv = T[leave][pos]
        prow = T[leave]
        new_prow = [v / piv for v in prow]
        new_prow[pos] = 1 / piv
        for i in range(len(bs)):
            if i == leave:
                continue
            f = T[i][pos]
            if f:
                row = T[i]
                for p, w in enumerate(new_prow):
                    if w and p != pos:
                        row[p] -= f * w
                row[pos] = -f / piv
        T[leave] = new_prow
        bs[leave], nb[pos] = nb[pos], bs[leave]

    def phase_one(self, deadline, max_iter) -> Optional[list[int]]:
        """Drive the total bound violation to zero.

        Returns None once feasible, otherwise the violation signs at an
        optimum with positive violation.  Raises on the iteration cap.
        """
        for _ in range(max_iter):
            if deadline is not None and time.monotonic() > deadline:
                raise StageTimeout("box LP deadline exceeded")
            lam = self.violation_signs()
            if not any(lam):
                return None
            T = self.T
            # the violation changes at rate -sum_i lam_i T_ij along x_N[j]
            pos, sigma = self._choose(lambda p: -sum(l * T[i][p] for i, l in enumerate(lam) if l))
            if pos is None:
                return lam
            self.step(pos, sigma)
        raise _IterationCap()

    def phase_two(self, cost: dict[int, Number], deadline, max_iter):
        for _ in range(max_iter):
            if deadline is not None and time.monotonic() > deadline:
                raise StageTimeout("box LP deadline exceeded")
            T, bs = self.T, self.bs
            cb = [(i, cost[c]) for i, c in enumerate(bs) if cost.get(c)]
            pos, sigma = self._choose(
                lambda p: cost.get(self.nb[p], 0) - sum(ci * T[i][p] for i, ci in cb)
            )
            if pos is None:
                return
            self.step(pos, sigma)
        raise _IterationCap()

    def point(self) -> list[Fraction]:
        return [self.val[c] for c in range(self.ncols)]


class _IterationCap(Exception):
    pass


def _box_start(A: RationalMatrix, b, deadline):
    elim = _snapshotting(_Eliminator(A, b, deadline))
    elim.run(unit_only=True)
    if elim.conflict is None:
        elim.run(unit_only=False)
    if elim.conflict is not None:
        y = elim.certificate(elim.conflict, A.num_rows)
        # orient so that y.b > 0 = max over the box of y.A x
        if sum(yi * bi for yi, bi in zip(y, b)) < 0:
            y = [-v for v in y]
        return None, y
    return _BoxSimplex(elim), None


def box_lp_check(A, b: Sequence[Number], deadline: Optional[float] = None, max_iter: int = 100_000):
    """Exact feasibility of ``{A x = b, 0 <= x <= 1}``.

    Returns ``(True, point)``, ``(False, y)`` with ``y`` accepted by
    :func:`verify_box_infeasibility`, or ``(None, None)`` if the iteration cap
    is hit.
    """
    A = _as_matrix(A)
    _check_dims(A, b)
    lp, y = _box_start(A, b, deadline)
    if lp is None:
        return False, y
    try:
        lam = lp.phase_one(deadline, max_iter)
    except _IterationCap:
        return None, None
    if lam is None:
        return True, lp.point()
    y = _box_dual(A, lp.bs, lam, deadline)
    if not verify_box_infeasibility(A, b, y):
        raise AssertionError("box LP dual failed verification")
    return False, y


def box_lp_minimize(A, b: Sequence[Number], cost: dict[int, Number], deadline: Optional[float] = None,
                    max_iter: int = 100_000):
    """Minimise ``cost . x`` over the box-constrained system.

    Returns ``(status, data)``: ``("optimal", point)``, ``("infeasible", y)``
    or ``("capped", None)``.
    """
    A = _as_matrix(A)
    _check_dims(A, b)
    lp, y = _box_start(A, b, deadline)
    if lp is None:
        return "infeasible", y
    try:
        lam = lp.phase_one(deadline, max_iter)
        if lam is not None:
            return "infeasible", _box_dual(A, lp.bs, lam, deadline)
        lp.phase_two(cost, deadline, max_iter)
    except _IterationCap:
        return "capped", None
    return "optimal", lp.point()


def _box_dual(A: RationalMatrix, basic_cols: list[int], lam: list[int], deadline) -> list[Fraction]:
    # y with (y A)_c = lam for every basic column c
    cols = {c: k for k, c in enumerate(basic_cols)}
    rows: list[dict[int, Number]] = [dict() for _ in basic_cols]
    for i, row in enumerate(A.rows):
        for c, v in row.items():
            if c in cols:
                rows[cols[c]][i] = v
    res = eliminate(RationalMatrix(tuple(rows), A.num_rows), lam, deadline)
    if not res.consistent:
        raise AssertionError("basis columns are not independent")
    return res.particular_solution


def box_lp_feasible(A, b: Sequence[Number], deadline: Optional[float] = None) -> bool:
    """True unless the unit box provably misses ``{A x = b}`` (inconclusive counts as True)."""
    feasible, _ = box_lp_check(A, b, deadline)
    return feasible is not False
