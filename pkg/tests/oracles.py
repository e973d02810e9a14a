"""Independent reference computations, built on sympy, used only by tests."""
import itertools
import math
from fractions import Fraction

import sympy


def sym_rank(A, ncols=None):
    if not A:
        return 0
    return sympy.Matrix(A).rank()


def _minor_gcd(M, r):
    rows, cols = len(M), len(M[0])
    g = 0
    for ri in itertools.combinations(range(rows), r):
        for ci in itertools.combinations(range(cols), r):
            d = sympy.Matrix([[M[i][j] for j in ci] for i in ri]).det()
            g = math.gcd(g, int(d))
    return g


def integer_solvable(A, b):
    """Ax = b has an integer solution iff rank and the gcd of maximal minors agree for A and [A|b]."""
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    r = sym_rank(A)
    if sym_rank(aug) != r:
        return False
    if r == 0:
        return True
    return _minor_gcd([list(row) for row in A], r) == _minor_gcd(aug, r)


def box_feasible(A, b, n):
    """Vertex search: fix each column at 0, 1 or free, then solve for the free ones."""
    for choice in itertools.product((0, 1, None), repeat=n):
        free = [j for j, c in enumerate(choice) if c is None]
        rhs = [bi - sum(row[j] * c for j, c in enumerate(choice) if c is not None) for row, bi in zip(A, b)]
        if not free:
            if all(v == 0 for v in rhs):
                return True
            continue
        M = sympy.Matrix([[row[j] for j in free] for row in A])
        if M.rank() < len(free):
            continue
        try:
            sol, params = M.gauss_jordan_solve(sympy.Matrix(rhs))
        except ValueError:
            continue
        vals = [Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1])) for v in sol]
        if all(0 <= v <= 1 for v in vals):
            return True
    return False
