"""Small dense linear algebra over exact rationals and over float64.

The exact routines work on lists of Fraction rows and never round; the float
routines use column-pivoted elimination with a relative tolerance, which is
what the orbit searches need once word parameters become irrational.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

FLOAT_RTOL = 1e-9


def _as_fraction_rows(rows) -> List[List[Fraction]]:
    return [[Fraction(entry) for entry in row] for row in rows]


def exact_rref(rows: Sequence[Sequence[Fraction]]) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form with the list of pivot columns."""
    mat = _as_fraction_rows(rows)
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: List[int] = []
    row = 0
    for col in range(ncols):
        pivot_row = next((r for r in range(row, len(mat)) if mat[r][col] != 0), None)
        if pivot_row is None:
            continue
        mat[row], mat[pivot_row] = mat[pivot_row], mat[row]
        inv = Fraction(1, 1) / mat[row][col]
        mat[row] = [entry * inv for entry in mat[row]]
        for r in range(len(mat)):
            if r != row and mat[r][col] != 0:
                factor = mat[r][col]
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[row])]
        pivots.append(col)
        row += 1
        if row == len(mat):
            break
    return mat, pivots


def exact_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(exact_rref(rows)[1])


def exact_nullspace(rows: Sequence[Sequence[Fraction]]) -> List[Tuple[Fraction, ...]]:
    """Basis of the right nullspace of the matrix given by rows."""
    mat, pivots = exact_rref(rows)
    if not rows:
        return []
    ncols = len(rows[0])
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for free in free_cols:
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for r, piv in enumerate(pivots):
            vec[piv] = -mat[r][free]
        basis.append(tuple(vec))
    return basis


def exact_solve(
    rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> Optional[Tuple[Tuple[Fraction, ...], List[Tuple[Fraction, ...]]]]:
    """Solve A x = b exactly.

    Returns (particular solution with free variables set to zero, nullspace
    basis), or None when the system is inconsistent.
    """
    if not rows:
        return (), []
    ncols = len(rows[0])
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    mat, pivots = exact_rref(augmented)
    if ncols in pivots:
        return None
    particular = [Fraction(0)] * ncols
    for r, piv in enumerate(pivots):
        particular[piv] = mat[r][ncols]
    return tuple(particular), exact_nullspace(rows)


def exact_solve_in_span(
    basis_rows: Sequence[Sequence[Fraction]], target: Sequence[Fraction]
) -> Optional[Tuple[Fraction, ...]]:
    """Coordinates of target in the span of basis_rows, or None."""
    if not basis_rows:
        return None
    # Unknowns are the span coefficients: columns of the system are the basis
    # vectors, equations are the ambient coordinates.
    ncoords = len(target)
    system = [[Fraction(basis_rows[j][i]) for j in range(len(basis_rows))] for i in range(ncoords)]
    solved = exact_solve(system, [Fraction(t) for t in target])
    if solved is None:
        return None
    return solved[0]


def float_rank(matrix: np.ndarray, rtol: float = FLOAT_RTOL) -> int:
    mat = np.array(matrix, dtype=float)
    if mat.size == 0:
        return 0
    scale = np.abs(mat).max()
    if scale == 0.0:
        return 0
    rank = 0
    rows, cols = mat.shape
    for col in range(cols):
        sub = np.abs(mat[rank:, col])
        if sub.size == 0:
            break
        pivot = rank + int(np.argmax(sub))
        if abs(mat[pivot, col]) <= rtol * scale:
            continue
        mat[[rank, pivot]] = mat[[pivot, rank]]
        mat[rank] = mat[rank] / mat[rank, col]
        for r in range(rows):
            if r != rank:
                mat[r] = mat[r] - mat[r, col] * mat[rank]
        rank += 1
        if rank == rows:
            break
    return rank


def float_solve_in_span(
    basis_rows: Sequence[Sequence[float]], target: Sequence[float], rtol: float = FLOAT_RTOL
) -> Optional[np.ndarray]:
    """Float analogue of exact_solve_in_span with a relative residual test."""
    basis = np.array(basis_rows, dtype=float)
    vec = np.array(target, dtype=float)
    if basis.size == 0:
        return None
    coords, *_ = np.linalg.lstsq(basis.T, vec, rcond=None)
    residual = basis.T @ coords - vec
    scale = max(1.0, float(np.abs(vec).max()), float(np.abs(basis).max()))
    if np.abs(residual).max() > rtol * scale:
        return None
    return coords
