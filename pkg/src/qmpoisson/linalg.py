"""Exact dense linear algebra over the scalar field.

Gauss-Jordan elimination with exact division; entries are Fractions or
rational functions of t, so there are no tolerances anywhere.  Row labels
travel with the rows so that an inconsistent system can name the equation
that failed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .scalars import Scalar

__all__ = ["LinearSystemResult", "solve_linear", "nullspace"]

_F0 = Fraction(0)
_F1 = Fraction(1)


def _rref(rows: List[List[Scalar]]) -> Tuple[List[List[Scalar]], List[int]]:
    """Reduced row echelon form (in place); returns (rows, pivot columns)."""
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: List[int] = []
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(rank, len(rows)):
            if rows[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        inv = rows[rank][col]
        if inv != 1:
            rows[rank] = [v / inv for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [
                    a - factor * b for a, b in zip(rows[i], rows[rank])
                ]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    return rows, pivots


def nullspace(matrix: Sequence[Sequence[Scalar]], ncols: int) -> List[List[Scalar]]:
    """Exact basis of the right kernel of the matrix.

    Basis vectors are in reduced echelon normal form: one free coordinate set
    to 1 per vector, pivot coordinates back-substituted.
    """
    rows = [list(r) for r in matrix]
    rows, pivots = _rref(rows)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for free in free_cols:
        vec: List[Scalar] = [_F0] * ncols
        vec[free] = _F1
        for row, pcol in zip(rows, pivots):
            vec[pcol] = -row[free]
        basis.append(vec)
    return basis


@dataclass
class LinearSystemResult:
    """Outcome of an exact linear solve."""

    solution: Optional[List[Scalar]]
    #: When infeasible: (row label or None, residual right-hand side).
    inconsistent: Optional[Tuple[Optional[str], Scalar]] = None


def solve_linear(
    matrix: Sequence[Sequence[Scalar]],
    rhs: Sequence[Scalar],
    labels: Optional[Sequence[str]] = None,
) -> LinearSystemResult:
    """Solve A x = b exactly, or report an inconsistent equation.

    Free variables of an underdetermined feasible system are set to zero.
    Equations whose coefficient row is identically zero keep their label in
    the infeasibility certificate; rows that become inconsistent only after
    elimination are reported as derived.
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    if labels is None:
        labels = [f"equation {i}" for i in range(nrows)]
    # Structural inconsistencies first: an all-zero row with nonzero rhs is
    # a certificate naming the original equation.
    for i in range(nrows):
        if rhs[i] != 0 and all(v == 0 for v in matrix[i]):
            return LinearSystemResult(None, (labels[i], rhs[i]))
    rows = [list(r) + [b] for r, b in zip(matrix, rhs)]
    rows, pivots = _rref(rows)
    for row in rows[len(pivots):]:
        if row[-1] != 0:
            return LinearSystemResult(None, (None, row[-1]))
    if pivots and pivots[-1] == ncols:
        # rhs column became a pivot: inconsistent.
        return LinearSystemResult(None, (None, _F1))
    solution: List[Scalar] = [_F0] * ncols
    for row, pcol in zip(rows, pivots):
        solution[pcol] = row[-1]
    return LinearSystemResult(solution)
