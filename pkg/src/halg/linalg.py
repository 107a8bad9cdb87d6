"""Linear and bilinear maps on a finite-dimensional carrier, exactly.

A `LinearMap` is a square matrix over a `Field`; column ``j`` is the image of
the basis vector ``e_j``.  A `BilinearMap` is a structure-constant tensor
``c[i][j][k]`` meaning ``e_i * e_j = sum_k c[i][j][k] e_k``.  Vectors are
tuples of scalars.  All operations are exact and total on valid shapes;
inverting a singular map raises instead of approximating.

>>> from .fields import QQ
>>> f = LinearMap.from_rows(QQ, [[1, 1], [0, 1]])
>>> apply_map(f, (0, 1))
(1, 1)
>>> map_invert(f).rows
((1, -1), (0, 1))
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatch, FieldMismatch, ShapeError, SingularMapError
from .fields import Field

Vector = tuple

def _canon_vec(field: Field, raw: Sequence) -> Vector:
    return tuple(field.reduce(v) for v in raw)


@dataclass(frozen=True)
class LinearMap:
    """Square matrix over `field`; rows[i][j] is the e_i coefficient of f(e_j)."""

    field: Field
    rows: tuple

    @staticmethod
    def from_rows(field: Field, rows, path: str = "map") -> "LinearMap":
        if not isinstance(rows, (list, tuple)) or not rows:
            raise ShapeError("matrix must be a non-empty array of rows", path)
        dim = len(rows)
        out = []
        for i, row in enumerate(rows):
            if not isinstance(row, (list, tuple)) or len(row) != dim:
                raise ShapeError(f"row {i} must have {dim} entries", path)
            out.append(_canon_vec(field, row))
        return LinearMap(field, tuple(out))

    @staticmethod
    def identity(field: Field, dim: int) -> "LinearMap":
        one, zero = field.one, field.zero
        return LinearMap(field, tuple(tuple(one if i == j else zero for j in range(dim))
                                      for i in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def is_identity(self) -> bool:
        return all(v == (1 if i == j else 0)
                   for i, row in enumerate(self.rows) for j, v in enumerate(row))

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> tuple:
        return tuple(self.column(j) for j in range(self.dim))


def apply_map(f: LinearMap, x: Sequence) -> Vector:
    """f(x) for a coefficient vector x."""
    if len(x) != f.dim:
        raise DimensionMismatch(f"vector of length {len(x)} under a dim-{f.dim} map")
    red = f.field.reduce
    return tuple(red(sum(row[j] * xj for j, xj in enumerate(x) if xj)) for row in f.rows)


def map_compose(f: LinearMap, g: LinearMap) -> LinearMap:
    """The map x -> f(g(x))."""
    if f.field != g.field:
        raise FieldMismatch("composing maps over different fields")
    if f.dim != g.dim:
        raise DimensionMismatch(f"composing dim {f.dim} with dim {g.dim}")
    red = f.field.reduce
    n = f.dim
    rows = tuple(tuple(red(sum(f.rows[i][m] * g.rows[m][j] for m in range(n)))
                       for j in range(n))
                 for i in range(n))
    return LinearMap(f.field, rows)


def map_power(f: LinearMap, n: int) -> LinearMap:
    """f composed with itself n times (n = 0 gives the identity)."""
    if n < 0:
        raise ShapeError("negative power", "map")
    acc = LinearMap.identity(f.field, f.dim)
    base = f
    while n:
        if n & 1:
            acc = map_compose(acc, base)
        n >>= 1
        if n:
            base = map_compose(base, base)
    return acc


def _echelon(field: Field, rows: list) -> tuple:
    """Row-reduce in place; returns (rank, pivot column list)."""
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, v) for v in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [field.reduce(a - factor * b) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return r, pivots


def map_invert(f: LinearMap) -> LinearMap:
    """Exact inverse; raises SingularMapError when none exists."""
    n = f.dim
    field = f.field
    aug = [list(f.rows[i]) + [field.one if j == i else field.zero for j in range(n)]
           for i in range(n)]
    rank, pivots = _echelon(field, aug)
    if rank < n or pivots != list(range(n)):
        raise SingularMapError("map has no inverse")
    return LinearMap(field, tuple(tuple(aug[i][n:]) for i in range(n)))


def kernel_vector(f: LinearMap):
    """A canonical nonzero kernel vector, or None when f is injective.

    Used to witness failed invertibility checks: the returned v satisfies
    f(v) = 0 with v != 0.
    """
    n = f.dim
    field = f.field
    rows = [list(r) for r in f.rows]
    rank, pivots = _echelon(field, rows)
    free = [c for c in range(n) if c not in pivots]
    if not free:
        return None
    c = free[0]
    v = [field.zero] * n
    v[c] = field.one
    for r, pc in enumerate(pivots):
        v[pc] = field.neg(rows[r][c])
    return tuple(v)


@dataclass(frozen=True)
class BilinearMap:
    """Structure constants c[i][j][k]: e_i * e_j = sum_k c[i][j][k] e_k."""

    field: Field
    c: tuple

    @staticmethod
    def from_nested(field: Field, c, path: str = "tensor") -> "BilinearMap":
        if not isinstance(c, (list, tuple)) or not c:
            raise ShapeError("tensor must be a non-empty nested array", path)
        dim = len(c)
        planes = []
        for i, plane in enumerate(c):
            if not isinstance(plane, (list, tuple)) or len(plane) != dim:
                raise ShapeError(f"c[{i}] must have {dim} rows", path)
            rows = []
            for j, row in enumerate(plane):
                if not isinstance(row, (list, tuple)) or len(row) != dim:
                    raise ShapeError(f"c[{i}][{j}] must have {dim} entries", path)
                rows.append(_canon_vec(field, row))
            planes.append(tuple(rows))
        return BilinearMap(field, tuple(planes))

    @staticmethod
    def zero(field: Field, dim: int) -> "BilinearMap":
        z = field.zero
        return BilinearMap(field, tuple(tuple(tuple(z for _ in range(dim))
                                              for _ in range(dim))
                                        for _ in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.c)


def bilinear_apply(m: BilinearMap, x: Sequence, y: Sequence) -> Vector:
    """m(x, y) for coefficient vectors x and y.

    Skips zero coefficients, so basis-vector arguments cost O(dim).
    """
    dim = m.dim
    if len(x) != dim or len(y) != dim:
        raise DimensionMismatch(f"vectors of length {len(x)},{len(y)} under a dim-{dim} map")
    out = [0] * dim
    for i, xi in enumerate(x):
        if not xi:
            continue
        plane = m.c[i]
        for j, yj in enumerate(y):
            if not yj:
                continue
            w = xi * yj
            row = plane[j]
            for k, s in enumerate(row):
                if s:
                    out[k] += w * s
    red = m.field.reduce
    return tuple(red(v) for v in out)


# Tensor surgery used by the constructions: post/pre-composition with a
# linear map, pointwise combinations, and the transpose of the two inputs.

def postcompose(m: BilinearMap, f: LinearMap) -> BilinearMap:
    """(x, y) -> f(m(x, y))."""
    _check_pair(m, f)
    n = m.dim
    red = m.field.reduce
    rows = f.rows
    c = m.c
    out = tuple(tuple(tuple(red(sum(rows[k][s] * c[i][j][s] for s in range(n)))
                            for k in range(n))
                      for j in range(n))
                for i in range(n))
    return BilinearMap(m.field, out)


def precompose_left(m: BilinearMap, f: LinearMap) -> BilinearMap:
    """(x, y) -> m(f(x), y)."""
    _check_pair(m, f)
    n = m.dim
    red = m.field.reduce
    rows = f.rows
    c = m.c
    out = tuple(tuple(tuple(red(sum(rows[s][i] * c[s][j][k] for s in range(n)))
                            for k in range(n))
                      for j in range(n))
                for i in range(n))
    return BilinearMap(m.field, out)


def precompose_right(m: BilinearMap, f: LinearMap) -> BilinearMap:
    """(x, y) -> m(x, f(y))."""
    _check_pair(m, f)
    n = m.dim
    red = m.field.reduce
    rows = f.rows
    c = m.c
    out = tuple(tuple(tuple(red(sum(rows[s][j] * c[i][s][k] for s in range(n)))
                            for k in range(n))
                      for j in range(n))
                for i in range(n))
    return BilinearMap(m.field, out)


def tensor_combine(field: Field, terms) -> BilinearMap:
    """Pointwise sum of (coefficient, BilinearMap) pairs over one field."""
    terms = list(terms)
    if not terms:
        raise ShapeError("empty combination", "tensor")
    dim = terms[0][1].dim
    red = field.reduce
    for _, m in terms:
        if m.field != field:
            raise FieldMismatch("combining tensors over different fields")
        if m.dim != dim:
            raise DimensionMismatch("combining tensors of different dimensions")
    out = tuple(tuple(tuple(red(sum(a * m.c[i][j][k] for a, m in terms))
                            for k in range(dim))
                      for j in range(dim))
                for i in range(dim))
    return BilinearMap(field, out)


def tensor_transpose(m: BilinearMap) -> BilinearMap:
    """(x, y) -> m(y, x)."""
    n = m.dim
    out = tuple(tuple(m.c[j][i] for j in range(n)) for i in range(n))
    return BilinearMap(m.field, out)


def _check_pair(m: BilinearMap, f: LinearMap):
    if m.field != f.field:
        raise FieldMismatch("tensor and map over different fields")
    if m.dim != f.dim:
        raise DimensionMismatch(f"tensor dim {m.dim} with map dim {f.dim}")
