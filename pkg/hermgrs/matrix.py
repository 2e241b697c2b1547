"""Dense matrices over F_{q²} and the F_q-restricted kernel."""
from __future__ import annotations

import logging
from typing import NamedTuple

import numpy as np

from hermgrs.errors import DefectError, LengthMismatch
from hermgrs.gf import FieldTower

logger = logging.getLogger(__name__)


def field_matmul(t: FieldTower, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if A.shape[1] != B.shape[0]:
        raise LengthMismatch(f"cannot multiply {A.shape} by {B.shape}")
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for i in range(A.shape[1]):
        out = np.asarray(t.add(out, t.mul(A[:, i:i + 1], B[i:i + 1, :])), dtype=np.int64)
    return out


class Mat:
    """Row-major matrix of element indices; the data array is read-only."""

    def __init__(self, tower: FieldTower, data, cols: int | None = None) -> None:
        data = np.array(data, dtype=np.int64)
        if data.size == 0 and data.ndim < 2:
            data = data.reshape(0, cols or 0)
        if data.ndim != 2:
            raise LengthMismatch(f"matrix data must be two-dimensional, got shape {data.shape}")
        data.setflags(write=False)
        self.tower = tower
        self.data = data

    @classmethod
    def zeros(cls, tower: FieldTower, rows: int, cols: int) -> Mat:
        return cls(tower, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, tower: FieldTower, size: int) -> Mat:
        return cls(tower, np.eye(size, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat) and self.tower == other.tower and np.array_equal(self.data, other.data)

    def __hash__(self) -> int:
        return hash((self.tower, self.data.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"Mat({self.data.tolist()})"

    def __matmul__(self, other: Mat) -> Mat:
        return Mat(self.tower, field_matmul(self.tower, self.data, other.data))

    def matvec(self, x) -> tuple:
        column = np.array(x, dtype=np.int64).reshape(-1, 1)
        return tuple(int(v) for v in field_matmul(self.tower, self.data, column)[:, 0])

    def transpose(self) -> Mat:
        return Mat(self.tower, self.data.T)

    def conjugate(self) -> Mat:
        """Entrywise q-th power."""
        return Mat(self.tower, self.tower.frob(self.data), cols=self.cols)

    def is_zero(self) -> bool:
        return not np.any(self.data)

    def first_nonzero(self):
        hits = np.argwhere(self.data != 0)
        if hits.size == 0:
            return None
        return int(hits[0][0]), int(hits[0][1])

    def tolist(self) -> list:
        return self.data.tolist()

    def rank(self) -> int:
        return rref(self).rank


class RrefResult(NamedTuple):
    matrix: Mat
    rank: int
    pivot_cols: list


def vandermonde(t: FieldTower, alpha, rows: int) -> Mat:
    alpha = np.array(alpha, dtype=np.int64)
    data = np.zeros((rows, alpha.size), dtype=np.int64)
    for i in range(rows):
        data[i] = t.pow(alpha, i)
    return Mat(t, data)


def rref(M: Mat) -> RrefResult:
    """Gauss-Jordan elimination, pivoting on the first nonzero entry."""
    t = M.tower
    A = M.data.copy()
    rows, cols = A.shape
    pivots = []
    r = 0
    for col in range(cols):
        if r == rows:
            break
        nonzero = np.flatnonzero(A[r:, col])
        if nonzero.size == 0:
            continue
        pivot = r + int(nonzero[0])
        if pivot != r:
            A[[r, pivot]] = A[[pivot, r]]
        A[r] = t.mul(t.inv(int(A[r, col])), A[r])
        factors = A[:, col].copy()
        factors[r] = 0
        A = np.asarray(t.sub(A, t.mul(factors[:, None], A[r][None, :])), dtype=np.int64)
        pivots.append(col)
        r += 1
    return RrefResult(Mat(t, A, cols=cols), r, pivots)


def _normalized(t: FieldTower, x: np.ndarray):
    first = int(np.flatnonzero(x)[0])
    return first, np.asarray(t.mul(t.inv(int(x[first])), x), dtype=np.int64)


def kernel(M: Mat) -> list:
    """Basis of {x : Mx = 0}; each vector starts with 1, sorted by that position."""
    t = M.tower
    reduced, _, pivots = rref(M)
    free = [c for c in range(M.cols) if c not in pivots]
    found = []
    for f in free:
        x = np.zeros(M.cols, dtype=np.int64)
        x[f] = 1
        for row, pc in enumerate(pivots):
            x[pc] = t.neg(int(reduced.data[row, f]))
        first, x = _normalized(t, x)
        if any(M.matvec(x)):
            raise DefectError(f"kernel vector {x.tolist()} does not solve the system")
        found.append((first, f, tuple(int(v) for v in x)))
    found.sort()
    return [vector for _, _, vector in found]


def doubled_system(M: Mat) -> Mat:
    """Splits every equation into its 1- and θ-coordinates over F_q."""
    lo, hi = M.tower.coords(M.data)
    return Mat(M.tower, np.vstack([lo, hi]), cols=M.cols)


def subfield_kernel(M: Mat) -> list:
    """F_q-basis of the solutions of Mx = 0 with every x_j in F_q."""
    t = M.tower
    basis = kernel(doubled_system(M))
    for vector in basis:
        if any(v >= t.q for v in vector) or any(M.matvec(vector)):
            raise DefectError(f"subfield kernel vector {list(vector)} is not an F_q solution")
    return basis
