"""Dense linear-algebra helpers shared by every module.

Comparisons use a combined absolute/relative tolerance,
|x - y| <= tol * max(1, |x|, |y|), entrywise.  Numerical rank goes through
singular values with an exact fraction-elimination fallback for
integer-valued matrices, so that regularity predicates stay stable on the
integer-sampled data used throughout the test harness.
"""

from __future__ import annotations

import itertools

import numpy as np

DEFAULT_TOL = 1e-9
DET_FLOOR = 1e-12


class ChartError(ValueError):
    """No admissible pivot rows: the element lies outside the chart."""


def as_float_array(x, shape=None, name: str = "array") -> np.ndarray:
    a = np.array(x, dtype=float)
    if shape is not None and a.shape != tuple(shape):
        raise ValueError(f"{name}: expected shape {tuple(shape)}, got {a.shape}")
    return a


def freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def inf_norm(x) -> float:
    x = np.asarray(x, dtype=float)
    return float(np.max(np.abs(x))) if x.size else 0.0


def close(x, y, tol: float = DEFAULT_TOL) -> bool:
    """Entrywise |x - y| <= tol * max(1, |x|, |y|)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        return False
    scale = np.maximum(1.0, np.maximum(np.abs(x), np.abs(y)))
    return bool(np.all(np.abs(x - y) <= tol * scale))


def scaled_error(x, y) -> float:
    """Largest entrywise |x - y| / max(1, |x|, |y|)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size == 0:
        return 0.0
    scale = np.maximum(1.0, np.maximum(np.abs(x), np.abs(y)))
    return float(np.max(np.abs(x - y) / scale))


def swap_last2(T: np.ndarray) -> np.ndarray:
    return np.swapaxes(T, -1, -2)


def sym_part(T: np.ndarray) -> np.ndarray:
    """Symmetric part in the last two axes."""
    return 0.5 * (T + swap_last2(T))


def alt_part(T: np.ndarray) -> np.ndarray:
    """Skew part in the last two axes."""
    return 0.5 * (T - swap_last2(T))


def is_integer_valued(M) -> bool:
    M = np.asarray(M, dtype=float)
    return bool(np.all(np.isfinite(M)) and np.all(M == np.round(M)))


def exact_integer_rank(M) -> int:
    """Rank of an integer-valued matrix by exact integer elimination."""
    A = [[int(round(v)) for v in row]
         for row in np.atleast_2d(np.asarray(M, dtype=float))]
    nrows = len(A)
    ncols = len(A[0]) if nrows else 0
    rank = 0
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, nrows) if A[r][col] != 0), None)
        if piv is None:
            continue
        A[row], A[piv] = A[piv], A[row]
        lead = A[row][col]
        for r in range(row + 1, nrows):
            if A[r][col] != 0:
                f = A[r][col]
                A[r] = [lead * a - f * b for a, b in zip(A[r], A[row])]
        row += 1
        rank += 1
        if row == nrows:
            break
    return rank


def numerical_rank(M, tol: float = DEFAULT_TOL, scale_floor: float = 0.0) -> int:
    """Rank from singular values above tol * max(sigma_max, scale_floor).

    Integer-valued matrices (up to 2**40 in magnitude) are ranked exactly
    instead, so rank decisions on sampled data never sit on a threshold.
    A positive scale_floor keeps matrices that are pure roundoff from
    counting as full rank relative to their own noise; derived-Jacobian
    tests pass 1.0, the natural scale of integer desk data.
    """
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if M.size == 0:
        return 0
    if is_integer_valued(M) and inf_norm(M) < 2.0**40:
        return exact_integer_rank(M)
    s = np.linalg.svd(M, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > tol * max(s[0], scale_floor)))


def safe_inv(A: np.ndarray, what: str = "matrix") -> np.ndarray:
    A = np.asarray(A, dtype=float)
    if abs(np.linalg.det(A)) <= DET_FLOOR:
        raise ValueError(f"{what} is numerically singular")
    return np.linalg.inv(A)


def det_scale(M: np.ndarray, rows) -> float:
    """Hadamard-style scale for pivot-determinant thresholds."""
    s = 1.0
    for i in rows:
        s *= max(1.0, inf_norm(M[i]))
    return s


def complement(I, n: int) -> tuple:
    picked = set(I)
    return tuple(i for i in range(n) if i not in picked)


def pivot_rows(mats, m: int, tol: float = DEFAULT_TOL, names=None) -> tuple:
    """Lexicographically smallest m-subset of row indices whose square block
    is invertible in every given matrix.

    A block counts as invertible when |det| exceeds tol times the product of
    the row norms, so the rule is reproducible and, because a right action
    multiplies determinants by a fixed nonzero factor, orbit-invariant on
    well-conditioned data.
    """
    mats = [np.asarray(M, dtype=float) for M in mats]
    n = mats[0].shape[0]
    for I in itertools.combinations(range(n), m):
        rows = list(I)
        if all(abs(np.linalg.det(M[rows, :])) > tol * det_scale(M, rows)
               for M in mats):
            return I
    labels = ", ".join(names) if names else f"{len(mats)} matrix(es)"
    raise ChartError(
        f"no admissible pivot rows: every {m}-subset of rows has a "
        f"singular block in at least one of {labels}")
