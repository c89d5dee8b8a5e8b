"""Exact rational simplex for the small LPs behind the classical tests.

Solves  max c.x  subject to  A x <= b, x >= 0  with every entry a Fraction
and every b_i >= 0, so the all-slack basis is feasible and no phase-1 is
needed. Bland's smallest-index rule guarantees termination. Dense tableau;
the LPs here have at most a few hundred variables and rows, where exact
arithmetic beats any tolerance policy on polytope faces.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def maximize(
    c: Sequence[Fraction],
    rows: Sequence[Sequence[Fraction]],
    rhs: Sequence[Fraction],
) -> tuple[Fraction, list[Fraction]]:
    """Maximize c.x over {A x <= b, x >= 0} exactly.

    Parameters
    ----------
    c : objective coefficients, one per variable.
    rows : constraint matrix A, one row per constraint.
    rhs : right-hand sides b, all nonnegative.

    Returns
    -------
    (value, x) : the optimal objective value and one optimal point.

    Raises
    ------
    ValueError : if some rhs entry is negative or a row length is off.
    ArithmeticError : if the LP is unbounded (never the case for the
        probability polytopes this package builds).
    """
    nvars = len(c)
    m = len(rows)
    if len(rhs) != m:
        raise ValueError(f"{m} rows but {len(rhs)} right-hand sides")
    for b_i in rhs:
        if b_i < 0:
            raise ValueError(f"negative right-hand side {b_i}; all-slack start needs b >= 0")
    zero, one = Fraction(0), Fraction(1)
    ncols = nvars + m + 1  # original vars, slacks, rhs
    tableau: list[list[Fraction]] = []
    for i, row in enumerate(rows):
        if len(row) != nvars:
            raise ValueError(f"row {i} has {len(row)} entries, expected {nvars}")
        t = [Fraction(a) for a in row] + [zero] * m + [Fraction(rhs[i])]
        t[nvars + i] = one
        tableau.append(t)
    # obj[j] is the reduced cost of column j; obj[-1] tracks -objective.
    obj = [Fraction(a) for a in c] + [zero] * (m + 1)
    basis = list(range(nvars, nvars + m))

    while True:
        enter = next((j for j in range(nvars + m) if obj[j] > 0), None)
        if enter is None:
            break
        leave_row = None
        best_ratio = None
        for i in range(m):
            a = tableau[i][enter]
            if a > 0:
                ratio = tableau[i][-1] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leave_row])
                ):
                    best_ratio = ratio
                    leave_row = i
        if leave_row is None:
            raise ArithmeticError("LP is unbounded")
        piv_row = tableau[leave_row]
        piv = piv_row[enter]
        if piv != 1:
            tableau[leave_row] = piv_row = [a / piv for a in piv_row]
        for i in range(m):
            if i != leave_row and tableau[i][enter] != 0:
                f = tableau[i][enter]
                row_i = tableau[i]
                tableau[i] = [a - f * p for a, p in zip(row_i, piv_row)]
        f = obj[enter]
        if f != 0:
            obj = [a - f * p for a, p in zip(obj, piv_row)]
        basis[leave_row] = enter

    x = [zero] * nvars
    for i, bv in enumerate(basis):
        if bv < nvars:
            x[bv] = tableau[i][-1]
    return -obj[-1], x
