"""Exact linear algebra over the rationals.

Vectors are either dense sequences of :class:`~fractions.Fraction` or sparse
``dict`` objects mapping a column index to a nonzero ``Fraction``.  Every
subspace is stored by its reduced row-echelon basis, so equal subspaces have
identical representations no matter how they were produced.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

SPARSE_THRESHOLD = 0.25

SparseVec = dict


class DimensionError(ValueError):
    pass


def parse_rational(s) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction."""
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    s = str(s).strip()
    if "/" in s:
        p, q = s.split("/")
        if int(q) == 0:
            raise ValueError(f"zero denominator in {s!r}")
        return Fraction(int(p), int(q))
    return Fraction(int(s))


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Matrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Sequence], cols: int | None = None):
        rows = tuple(tuple(Fraction(x) for x in r) for r in data)
        if cols is None:
            if not rows:
                raise DimensionError("column count needed for an empty matrix")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged matrix")
        self.rows = len(rows)
        self.cols = cols
        self.data = rows

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    def __getitem__(self, rc):
        r, c = rc
        return self.data[r][c]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.cols == other.cols and self.data == other.data

    def __hash__(self):
        return hash((self.cols, self.data))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_rational(x) for x in r) + "]" for r in self.data)
        return f"Matrix([{body}], cols={self.cols})"

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionError("shape mismatch in product")
        out = []
        for r in self.data:
            out.append([sum((r[k] * other.data[k][j] for k in range(self.cols)), Fraction(0))
                        for j in range(other.cols)])
        return Matrix(out, other.cols)

    def apply(self, v: Sequence) -> list:
        if len(v) != self.cols:
            raise DimensionError("vector length mismatch")
        return [sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self.data]

    def transpose(self) -> "Matrix":
        return Matrix([[self.data[r][c] for r in range(self.rows)] for c in range(self.cols)],
                      self.rows)

    def to_json(self) -> list:
        return [[format_rational(x) for x in r] for r in self.data]

    @classmethod
    def from_json(cls, rows: list, cols: int | None = None) -> "Matrix":
        return cls([[parse_rational(x) for x in r] for r in rows], cols)


def _density(rows: Sequence[Sequence]) -> float:
    total = sum(len(r) for r in rows)
    if not total:
        return 0.0
    return sum(1 for r in rows for x in r if x) / total


def _rref_dense(rows: list[list[Fraction]], cols: int) -> list[list[Fraction]]:
    rows = [list(r) for r in rows]
    out: list[list[Fraction]] = []
    piv_r = 0
    for c in range(cols):
        pick = None
        for i in range(piv_r, len(rows)):
            if rows[i][c]:
                pick = i
                break
        if pick is None:
            continue
        rows[piv_r], rows[pick] = rows[pick], rows[piv_r]
        p = rows[piv_r]
        inv = 1 / p[c]
        if inv != 1:
            for k in range(c, cols):
                p[k] *= inv
        for i in range(len(rows)):
            if i != piv_r and rows[i][c]:
                f = rows[i][c]
                ri = rows[i]
                for k in range(c, cols):
                    if p[k]:
                        ri[k] -= f * p[k]
        piv_r += 1
        if piv_r == len(rows):
            break
    out = rows[:piv_r]
    return out


def _rref_sparse(rows: list[Sequence], cols: int) -> list[list[Fraction]]:
    ech = Echelon()
    for r in rows:
        ech.add({i: Fraction(x) for i, x in enumerate(r) if x})
    return [to_dense(row, cols) for row in ech.rows()]


def rref(m: Matrix, sparse_threshold: float = SPARSE_THRESHOLD) -> Matrix:
    """Reduced row-echelon form with zero rows dropped."""
    rows = [list(r) for r in m.data]
    if rows and _density(rows) < sparse_threshold:
        out = _rref_sparse(rows, m.cols)
    else:
        out = _rref_dense(rows, m.cols)
    return Matrix(out, m.cols)


def to_dense(v: Mapping[int, Fraction], n: int) -> list[Fraction]:
    out = [Fraction(0)] * n
    for k, x in v.items():
        out[k] = x
    return out


def to_sparse(v: Sequence) -> dict:
    return {i: Fraction(x) for i, x in enumerate(v) if x}


def axpy(target: dict, coeff, src: Mapping) -> None:
    """``target += coeff * src`` in place, dropping cancelled entries."""
    if not coeff:
        return
    for k, x in src.items():
        y = target.get(k)
        if y is None:
            target[k] = coeff * x
        else:
            y += coeff * x
            if y:
                target[k] = y
            else:
                del target[k]


class Echelon:
    """Incrementally maintained sparse RREF.

    Each stored row has its pivot as its smallest column, a pivot entry of 1,
    and zeros in every other pivot column, so the stored set is always the
    reduced row-echelon basis of the span of everything added so far.
    """

    __slots__ = ("_rows", "_col_rows")

    def __init__(self):
        self._rows: dict[int, dict] = {}
        # column -> pivots of rows with a nonzero entry in that column
        self._col_rows: dict[int, set] = {}

    def __len__(self):
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def copy(self) -> "Echelon":
        new = Echelon()
        new._rows = {p: dict(r) for p, r in self._rows.items()}
        new._col_rows = {c: set(s) for c, s in self._col_rows.items()}
        return new

    def reduce(self, v: Mapping) -> dict:
        v = dict(v)
        rows = self._rows
        for p in sorted(k for k in v if k in rows):
            c = v.get(p)
            if c:
                axpy(v, -c, rows[p])
        return v

    def add(self, v: Mapping) -> bool:
        """Add a vector; return True if it enlarged the span."""
        v = self.reduce(v)
        if not v:
            return False
        p = min(v)
        inv = 1 / v[p]
        if inv != 1:
            v = {k: x * inv for k, x in v.items()}
        for q in list(self._col_rows.get(p, ())):
            row = self._rows[q]
            c = row[p]
            self._unindex(q, row)
            axpy(row, -c, v)
            self._index(q, row)
        self._rows[p] = v
        self._index(p, v)
        return True

    def _index(self, p, row):
        cr = self._col_rows
        for k in row:
            if k != p:
                cr.setdefault(k, set()).add(p)

    def _unindex(self, p, row):
        cr = self._col_rows
        for k in row:
            if k != p:
                s = cr.get(k)
                if s is not None:
                    s.discard(p)

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)

    def rows(self) -> list[dict]:
        return [self._rows[p] for p in sorted(self._rows)]

    def nonpivots(self, n: int) -> list[int]:
        return [c for c in range(n) if c not in self._rows]

    def project(self, v: Mapping) -> dict:
        """Coordinates of ``v`` modulo the span, on the non-pivot columns."""
        return self.reduce(v)


class Subspace:
    """A subspace of ``Q^n`` stored by its canonical RREF basis."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable = ()):
        ech = Echelon()
        for v in vectors:
            if isinstance(v, Mapping):
                sv = {k: Fraction(x) for k, x in v.items() if x}
            else:
                if len(v) != ambient_dim:
                    raise DimensionError("vector length does not match ambient dimension")
                sv = to_sparse(v)
            if sv and max(sv) >= ambient_dim:
                raise DimensionError("vector index out of range")
            ech.add(sv)
        self._set(ambient_dim, ech)

    def _set(self, n, ech: Echelon):
        self.ambient_dim = n
        self.pivots = tuple(ech.pivots)
        self.basis = Matrix([to_dense(r, n) for r in ech.rows()], n)

    @classmethod
    def from_echelon(cls, n: int, ech: Echelon) -> "Subspace":
        s = cls.__new__(cls)
        s._set(n, ech)
        return s

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, ({i: 1} for i in range(n)))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def sparse_rows(self) -> list[dict]:
        return [to_sparse(r) for r in self.basis.data]

    def _echelon(self) -> Echelon:
        ech = Echelon()
        for r in self.sparse_rows():
            ech.add(r)
        return ech

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError(
                f"ambient dimensions differ: {self.ambient_dim} != {other.ambient_dim}")

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ambient_dim, self.sparse_rows() + other.sparse_rows())

    __add__ = sum

    def perp(self) -> "Subspace":
        return kernel(self.basis) if self.dim else Subspace.full(self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        both = self.perp().sum(other.perp())
        if both.dim == 0:
            return Subspace.full(self.ambient_dim)
        return kernel(both.basis)

    __and__ = intersect

    def contains(self, v) -> bool:
        if not isinstance(v, Mapping):
            if len(v) != self.ambient_dim:
                raise DimensionError("vector length does not match ambient dimension")
            v = to_sparse(v)
        return self._echelon().contains(v)

    def is_subspace_of(self, other: "Subspace") -> bool:
        self._check(other)
        ech = other._echelon()
        return all(ech.contains(r) for r in self.sparse_rows())

    def quotient_coords(self) -> Matrix:
        """Surjection onto the non-pivot coordinates with kernel exactly ``self``.

        Row ``j`` reads the ``j``-th non-pivot coordinate after reducing a
        vector modulo this subspace.
        """
        n = self.ambient_dim
        piv = set(self.pivots)
        free = [c for c in range(n) if c not in piv]
        out = []
        for c in free:
            row = [Fraction(0)] * n
            row[c] = Fraction(1)
            # reducing e_p for a pivot p gives -(row_p restricted to free columns)
            for r, p in zip(self.basis.data, self.pivots):
                if r[c]:
                    row[p] = -r[c]
            out.append(row)
        return Matrix(out, n)


def kernel(m: Matrix) -> Subspace:
    """Null space ``{v : m v = 0}`` in canonical form."""
    n = m.cols
    r = rref(m)
    piv = []
    for row in r.data:
        for c, x in enumerate(row):
            if x:
                piv.append(c)
                break
    pset = set(piv)
    vecs = []
    for free in range(n):
        if free in pset:
            continue
        v = {free: Fraction(1)}
        for row, p in zip(r.data, piv):
            if row[free]:
                v[p] = -row[free]
        vecs.append(v)
    return Subspace(n, vecs)


def sparse_kernel(columns: Sequence[Mapping], ncols: int) -> list[dict]:
    """Kernel of the linear map whose ``j``-th column is ``columns[j]``.

    Returns sparse kernel basis vectors indexed by column; used where the map
    is only available column by column.
    """
    # Row-reduce the augmented system [column | e_j]; combinations that vanish
    # in the image part give the kernel.
    offset = 1 + max((max(c) for c in columns if c), default=-1)
    ech = Echelon()
    for j in range(ncols):
        v = {k: x for k, x in columns[j].items()}
        v[offset + j] = Fraction(1)
        ech.add(v)
    out = []
    for row in ech.rows():
        if min(row) >= offset:
            out.append({k - offset: x for k, x in row.items()})
    return out
