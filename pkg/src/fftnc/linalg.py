"""Exact linear algebra over GF(65537).

Matrices are numpy arrays of canonical residues.  The solver keeps its working
copy in float64: every intermediate is an integer below 2**53, so float
arithmetic (including BLAS matrix products) is exact.  A product of two
residues is below 2**32, so an inner dimension of up to 2**21 terms is safe.
"""

import numpy as np

from . import field
from .errors import DomainError, InsufficientRankError
from .field import P

_FP = float(P)
_INV_P = 1.0 / _FP
_MAX_INNER = 1 << 20
PANEL = 64


def _mod(x: np.ndarray) -> np.ndarray:
    """Reduce an exact-integer float array into [0, P) in place."""
    q = np.floor(x * _INV_P)
    x -= q * _FP
    # the quotient estimate is off by at most one for |x| < 2**53
    x += _FP * (x < 0)
    x -= _FP * (x >= _FP)
    return x


def _finv(x: float) -> float:
    return float(field.inv(int(x)))


def pivot_rows(matrix) -> list[int]:
    """Indices of the first maximal independent subset of rows, in row order.

    A row is kept iff it is not in the span of the rows before it.  This is
    computed as the pivot columns of the echelon form of the transpose.
    """
    m = np.asarray(matrix, dtype=np.float64)
    if m.ndim != 2:
        raise DomainError("expected a 2-D matrix")
    t = np.remainder(m.T, _FP)  # k x rows
    k, rows = t.shape
    pivots = []
    r = 0
    for c in range(rows):
        if r == k:
            break
        nz = np.flatnonzero(t[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            t[[r, piv]] = t[[piv, r]]
        t[r, c:] = _mod(t[r, c:] * _finv(t[r, c]))
        below = t[r + 1:, c].copy()
        if below.any():
            t[r + 1:, c:] = _mod(t[r + 1:, c:] - np.outer(below, t[r, c:]))
        pivots.append(c)
        r += 1
    return pivots


def rank(matrix) -> int:
    m = np.asarray(matrix)
    if m.size == 0:
        return 0
    return len(pivot_rows(m))


def solve(a, b) -> np.ndarray:
    """Solve ``a @ x = b`` for square, invertible ``a``.

    Blocked LU with first-nonzero pivoting.  ``b`` may be a vector or a matrix
    of right-hand sides.  Raises :class:`InsufficientRankError` when ``a`` is
    singular.

    Reduction is lazy: a column or row is brought back into [0, P) only right
    before it is used as a pivot, multiplier or GEMM operand.  Each panel
    update adds less than PANEL * P**2 to the trailing block, which keeps the
    accumulated magnitude below k * 2**32.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    k = a.shape[0]
    if a.ndim != 2 or a.shape[1] != k:
        raise DomainError("coefficient matrix must be square")
    if k > _MAX_INNER:
        raise DomainError("matrix too large for exact float accumulation")
    if b.ndim not in (1, 2) or b.shape[0] != k:
        raise DomainError("right-hand side has the wrong number of rows")
    vec = b.ndim == 1
    rhs = b.reshape(k, -1)
    width = rhs.shape[1]
    w = np.empty((k, k + width), dtype=np.float64)
    w[:, :k] = np.remainder(a, P)
    w[:, k:] = np.remainder(rhs, P)

    for j0 in range(0, k, PANEL):
        j1 = min(j0 + PANEL, k)
        for c in range(j0, j1):
            col = _mod(w[c:, c])
            nz = np.flatnonzero(col)
            if nz.size == 0:
                raise InsufficientRankError(rank(a), k)
            piv = c + nz[0]
            if piv != c:
                w[[c, piv]] = w[[piv, c]]
            scale = _finv(w[c, c])
            prow = w[c, c + 1:j1]
            _mod(prow)
            prow *= scale
            _mod(prow)
            if j1 > c + 1:
                w[c + 1:, c + 1:j1] -= np.outer(w[c + 1:, c], prow)
            # keep the inverse pivot on the diagonal; the trailing part of
            # this row is scaled once the whole panel is factored
            w[c, c] = scale
        for c in range(j0, j1):
            row = w[c, j1:]
            if c > j0:
                row -= w[c, j0:c] @ w[j0:c, j1:]
            _mod(row)
            row *= w[c, c]
            _mod(row)
        if j1 < k:
            w[j1:, j1:] -= w[j1:, j0:j1] @ w[j0:j1, j1:]

    # back substitution against the unit upper triangle, block by block
    x = w[:, k:]
    for j1 in range(k, 0, -PANEL):
        j0 = max(j1 - PANEL, 0)
        if j1 < k:
            x[j0:j1] -= w[j0:j1, j1:k] @ x[j1:]
        for c in range(j1 - 1, j0 - 1, -1):
            _mod(x[c])
            if c > j0:
                x[j0:c] -= np.outer(w[j0:c, c], x[c])
    out = x.astype(np.int64)
    return out[:, 0] if vec else out
