"""Dense exact linear algebra over a single field.

A :class:`Matrix` wraps a read-only ``int64`` numpy array of encoded field
elements.  Elimination always pivots on the first nonzero entry in column
order (topmost row), so ``rref`` is canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import FieldMismatch, IndexOutOfRange, LengthMismatch, NonSquare
from .field import ElementLike, FieldElement, FieldSpec, parse_field_token


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.int64, copy=True)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Matrix:
    field: FieldSpec
    a: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.a)
        if arr.ndim != 2:
            raise ValueError("Matrix needs a 2-D array")
        if arr.size and (arr.min() < 0 or arr.max() >= self.field.q):
            raise ValueError("entries must be encoded elements in range(q)")
        object.__setattr__(self, "a", _frozen(arr))

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Sequence[ElementLike]]) -> "Matrix":
        data = [field.coerce_all(r) for r in rows]
        if not data:
            return cls(field, np.zeros((0, 0), dtype=np.int64))
        width = {len(r) for r in data}
        if len(width) != 1:
            raise LengthMismatch("ragged rows")
        return cls(field, np.array(data, dtype=np.int64).reshape(len(data), width.pop()))

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Matrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls(field, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    def __getitem__(self, ij) -> int:
        return int(self.a[ij])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.a.shape == other.a.shape and bool(np.array_equal(self.a, other.a))

    def __hash__(self) -> int:
        return hash((self.field, self.a.shape, self.a.tobytes()))

    def tolist(self) -> list[list[int]]:
        return self.a.tolist()

    def __repr__(self) -> str:
        return f"Matrix({self.field.token}, {self.tolist()})"

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.a.T)

    def select_cols(self, idx: Sequence[int]) -> "Matrix":
        idx = list(idx)
        for i in idx:
            if not 0 <= i < self.cols:
                raise IndexOutOfRange(f"column {i} not in [0, {self.cols})")
        return Matrix(self.field, self.a[:, idx] if idx else np.zeros((self.rows, 0), dtype=np.int64))

    def delete_col(self, i: int) -> "Matrix":
        if not 0 <= i < self.cols:
            raise IndexOutOfRange(f"column {i} not in [0, {self.cols})")
        return Matrix(self.field, np.delete(self.a, i, axis=1))

    def vstack(self, other: "Matrix") -> "Matrix":
        _same_field(self, other)
        return Matrix(self.field, np.vstack([self.a, other.a]))

    def hstack(self, other: "Matrix") -> "Matrix":
        _same_field(self, other)
        return Matrix(self.field, np.hstack([self.a, other.a]))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        _same_field(self, other)
        if self.cols != other.rows:
            raise LengthMismatch(f"cannot multiply {self.shape} by {other.shape}")
        return Matrix(self.field, self.field.matmul(self.a, other.a))

    def rref(self) -> tuple["Matrix", list[int]]:
        r, piv = rref_array(self.field, self.a)
        return Matrix(self.field, r), piv

    def rank(self) -> int:
        return mat_rank(self)

    def det(self) -> FieldElement:
        return mat_det(self)

    def to_text(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.a.tolist())

    @classmethod
    def from_text(cls, field: FieldSpec, text: str) -> "Matrix":
        rows = [line.split() for line in text.strip().splitlines() if line.strip()]
        return cls.from_rows(field, [[int(x) for x in r] for r in rows])


def _same_field(a: Matrix, b: Matrix) -> None:
    if a.field != b.field:
        raise FieldMismatch("matrices over different fields")


# -- elimination kernels on raw arrays -----------------------------------------

def rref_array(F: FieldSpec, a: np.ndarray, ops: list[int] | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of an encoded array plus its pivot columns.

    When ``ops`` is a one-element list, the number of field multiplications
    and additions performed is added to ``ops[0]``.
    """
    r = np.array(a, dtype=np.int64, copy=True)
    nrows, ncols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        nz = np.flatnonzero(r[row:, col])
        if nz.size == 0:
            continue
        src = row + int(nz[0])
        if src != row:
            r[[row, src]] = r[[src, row]]
        lead = int(r[row, col])
        if lead != 1:
            r[row] = F.vmul(r[row], F.inv(lead))
            if ops is not None:
                ops[0] += ncols - col + 1
        others = np.flatnonzero(r[:, col])
        others = others[others != row]
        if others.size:
            factors = r[others, col]
            r[others] = F.vsub(r[others], F.vmul(factors[:, None], r[row][None, :]))
            if ops is not None:
                ops[0] += 2 * others.size * (ncols - col)
        pivots.append(col)
        row += 1
    return r, pivots


def rank_array(F: FieldSpec, a: np.ndarray, ops: list[int] | None = None) -> int:
    """Rank by forward elimination only (cheaper than a full RREF)."""
    r = np.array(a, dtype=np.int64, copy=True)
    nrows, ncols = r.shape
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        nz = np.flatnonzero(r[row:, col])
        if nz.size == 0:
            continue
        src = row + int(nz[0])
        if src != row:
            r[[row, src]] = r[[src, row]]
        below = row + 1 + np.flatnonzero(r[row + 1:, col])
        if below.size:
            f = F.vmul(r[below, col], F.inv(int(r[row, col])))
            r[below] = F.vsub(r[below], F.vmul(f[:, None], r[row][None, :]))
            if ops is not None:
                ops[0] += below.size * (1 + 2 * (ncols - col))
        row += 1
    return row


def det_array(F: FieldSpec, a: np.ndarray) -> int:
    n, m = a.shape
    if n != m:
        raise NonSquare(f"determinant of a {n}x{m} matrix")
    r = np.array(a, dtype=np.int64, copy=True)
    det = 1
    for col in range(n):
        nz = np.flatnonzero(r[col:, col])
        if nz.size == 0:
            return 0
        src = col + int(nz[0])
        if src != col:
            r[[col, src]] = r[[src, col]]
            det = F.neg(det)
        piv = int(r[col, col])
        det = F.mul(det, piv)
        below = col + 1 + np.flatnonzero(r[col + 1:, col])
        if below.size:
            f = F.vmul(r[below, col], F.inv(piv))
            r[below] = F.vsub(r[below], F.vmul(f[:, None], r[col][None, :]))
    return det


def nullspace_array(F: FieldSpec, a: np.ndarray) -> np.ndarray:
    """Basis (as rows) of the right kernel {x : a x = 0}."""
    nrows, ncols = a.shape
    r, piv = rref_array(F, a)
    free = [c for c in range(ncols) if c not in piv]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for t, fc in enumerate(free):
        basis[t, fc] = 1
        for i, pc in enumerate(piv):
            basis[t, pc] = F.neg(int(r[i, fc]))
    return basis


def solve_array(F: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """One solution x of a x = b (b may be a matrix), or None if inconsistent."""
    b2 = b.reshape(b.shape[0], -1)
    aug = np.hstack([a, b2])
    r, piv = rref_array(F, aug)
    ncols = a.shape[1]
    if any(p >= ncols for p in piv):
        return None
    x = np.zeros((ncols, b2.shape[1]), dtype=np.int64)
    for i, pc in enumerate(piv):
        x[pc] = r[i, ncols:]
    return x.reshape((ncols,) + b.shape[1:])


# -- public operations -----------------------------------------------------------

def mat_rank(M: Matrix) -> int:
    return rank_array(M.field, M.a)


def mat_det(M: Matrix) -> FieldElement:
    return FieldElement(M.field, det_array(M.field, M.a))


def cols_independent(M: Matrix, idx: Sequence[int]) -> bool:
    idx = list(idx)
    if len(set(idx)) != len(idx):
        raise IndexOutOfRange("repeated column index")
    sub = M.select_cols(idx)
    return rank_array(M.field, sub.a) == len(idx)


def _vec(F: FieldSpec, x) -> np.ndarray:
    if isinstance(x, np.ndarray):
        return x.astype(np.int64)
    return np.array(F.coerce_all(x), dtype=np.int64)


def _infer_field(field: FieldSpec | None, *vecs) -> FieldSpec:
    if field is not None:
        return field
    for v in vecs:
        for e in v:
            if isinstance(e, FieldElement):
                return e.field
    raise FieldMismatch("cannot infer the field; pass field= explicitly")


def inner_product(x, y, field: FieldSpec | None = None) -> FieldElement:
    """Euclidean inner product of two vectors."""
    field = _infer_field(field, x, y)
    xv, yv = _vec(field, x), _vec(field, y)
    if xv.shape != yv.shape:
        raise LengthMismatch(f"lengths {xv.size} and {yv.size}")
    return FieldElement(field, field.sum(field.vmul(xv, yv).tolist()))


def star_product(x, y, field: FieldSpec | None = None) -> list[int]:
    """Coordinatewise product."""
    field = _infer_field(field, x, y)
    xv, yv = _vec(field, x), _vec(field, y)
    if xv.shape != yv.shape:
        raise LengthMismatch(f"lengths {xv.size} and {yv.size}")
    return field.vmul(xv, yv).tolist()


def vandermonde(F: FieldSpec, nodes: Sequence[int], exponents: Sequence[int]) -> Matrix:
    """Rows indexed by exponent, columns by node: entry nodes[j] ** exponents[i]."""
    return Matrix.from_rows(F, [[F.pow(a, e) if e else 1 for a in nodes] for e in exponents])


def parse_matrix_file(text: str) -> Matrix:
    """Read ``field=<token>`` followed by matrix rows."""
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    head = lines[0].strip()
    if not head.startswith("field="):
        raise ValueError("matrix file must start with field=<token>")
    F = parse_field_token(head[len("field="):])
    return Matrix.from_text(F, "\n".join(lines[1:]))
