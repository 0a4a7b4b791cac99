"""Exact integer linear algebra.

Everything here works on Python ints, so there is no overflow however large
the intermediate entries of a reduction become.  The central routine is
:func:`smith_normal_form`; solving, kernels and lattice bases are built on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Rows = list[list[int]]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            out[i][i] = d
        return cls.from_rows(out, cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> Rows:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def column(self, j: int) -> list[int]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def columns(self) -> list[list[int]]:
        return [self.column(j) for j in range(self.cols)]

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        out = [[0] * len(columns) for _ in range(rows)]
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise ValueError("column of wrong length")
            for i, x in enumerate(col):
                out[i][j] = int(x)
        return cls.from_rows(out, len(columns))

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix.from_rows([self.column(j) for j in range(self.cols)], self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        return IntMatrix.from_rows(matmul(self.to_rows(), other.to_rows(), other.cols), other.cols)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(k * a for a in self.entries))

    def apply(self, v: Sequence[int]) -> list[int]:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        c = self.cols
        e = self.entries
        return [sum(e[i * c + j] * v[j] for j in range(c)) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_rows()!r})"


def matmul(a: Rows, b: Rows, bcols: int | None = None) -> Rows:
    if bcols is None:
        bcols = len(b[0]) if b else 0
    bt = list(zip(*b)) if b else [() for _ in range(bcols)]
    if not b:
        return [[0] * bcols for _ in a]
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def hstack(blocks: Sequence[IntMatrix], rows: int | None = None) -> IntMatrix:
    if rows is None:
        rows = blocks[0].rows
    out = [[] for _ in range(rows)]
    for b in blocks:
        if b.rows != rows:
            raise ValueError("hstack row mismatch")
        for i, r in enumerate(b.to_rows()):
            out[i].extend(r)
    return IntMatrix.from_rows(out, sum(b.cols for b in blocks))


def vstack(blocks: Sequence[IntMatrix], cols: int | None = None) -> IntMatrix:
    if cols is None:
        cols = blocks[0].cols
    out = []
    for b in blocks:
        if b.cols != cols:
            raise ValueError("vstack column mismatch")
        out.extend(b.to_rows())
    return IntMatrix.from_rows(out, cols)


def block_diag(blocks: Sequence[IntMatrix]) -> IntMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.to_rows()):
            out[r0 + i][c0:c0 + b.cols] = row
        r0 += b.rows
        c0 += b.cols
    return IntMatrix.from_rows(out, cols)


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ M @ V == D`` with ``U``, ``V`` unimodular and ``D`` diagonal.

    ``U_inv`` and ``V_inv`` are carried along because lattice computations
    need them and recovering them afterwards would mean another reduction.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix
    original_dims: tuple[int, int]

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(min(self.D.rows, self.D.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def _snf_rows(a: Rows, m: int, n: int):
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    # Elementary operations, each mirrored on the inverse so that
    # U*Ui = 1 and V*Vi = 1 hold throughout.
    def row_add(dst, src, q):  # row_dst -= q * row_src
        if q == 0:
            return
        ra, rs = a[dst], a[src]
        for j in range(n):
            ra[j] -= q * rs[j]
        ud, us = U[dst], U[src]
        for j in range(m):
            ud[j] -= q * us[j]
        for row in Ui:
            row[src] += q * row[dst]

    def col_add(dst, src, q):  # col_dst -= q * col_src
        if q == 0:
            return
        for row in a:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]
        vs, vd = Vi[src], Vi[dst]
        for j in range(n):
            vs[j] += q * vd[j]

    def row_swap(i, j):
        if i == j:
            return
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]
        for row in Ui:
            row[i], row[j] = row[j], row[i]

    def col_swap(i, j):
        if i == j:
            return
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def row_neg(i):
        a[i] = [-x for x in a[i]]
        U[i] = [-x for x in U[i]]
        for row in Ui:
            row[i] = -row[i]

    t = 0
    while t < min(m, n):
        # least nonzero |entry|, ties broken by lowest (row, col)
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, pi, pj = best
        row_swap(t, pi)
        col_swap(t, pj)
        p = a[t][t]
        for i in range(t + 1, m):
            if a[i][t]:
                row_add(i, t, a[i][t] // p)
        for j in range(t + 1, n):
            if a[t][j]:
                col_add(j, t, a[t][j] // p)
        if any(a[i][t] for i in range(t + 1, m)) or any(a[t][j] for j in range(t + 1, n)):
            continue
        bad = next(
            (i for i in range(t + 1, m) if any(a[i][j] % p for j in range(t + 1, n))),
            None,
        )
        if bad is not None:
            row_add(t, bad, -1)
            continue
        if p < 0:
            row_neg(t)
        t += 1
    return U, V, Ui, Vi


def smith_normal_form(M: IntMatrix) -> SmithDecomposition:
    m, n = M.rows, M.cols
    a = M.to_rows()
    U, V, Ui, Vi = _snf_rows(a, m, n)
    return SmithDecomposition(
        U=IntMatrix.from_rows(U, m),
        D=IntMatrix.from_rows(a, n),
        V=IntMatrix.from_rows(V, n),
        U_inv=IntMatrix.from_rows(Ui, m),
        V_inv=IntMatrix.from_rows(Vi, n),
        original_dims=(m, n),
    )


def solve(A: IntMatrix, b: Sequence[int], snf: SmithDecomposition | None = None) -> list[int] | None:
    """An integer solution of ``A x = b``, or ``None`` if there is none."""
    if len(b) != A.rows:
        raise ValueError("right-hand side length mismatch")
    if snf is None:
        snf = smith_normal_form(A)
    c = snf.U.apply(b)
    diag = snf.diagonal
    y = [0] * A.cols
    for i, ci in enumerate(c):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if ci != 0:
                return None
        else:
            if ci % d:
                return None
            y[i] = ci // d
    return snf.V.apply(y)


def kernel_basis(A: IntMatrix, snf: SmithDecomposition | None = None) -> list[list[int]]:
    """A Z-basis of ``{x : A x = 0}``."""
    if snf is None:
        snf = smith_normal_form(A)
    r = snf.rank
    return [snf.V.column(j) for j in range(r, A.cols)]


def lattice_basis(generators: Iterable[Sequence[int]], dim: int) -> list[list[int]]:
    """A Z-basis of the lattice spanned by ``generators`` inside Z^dim."""
    gens = [list(g) for g in generators]
    if not gens:
        return []
    G = IntMatrix.from_columns(gens, dim)
    snf = smith_normal_form(G)
    basis = []
    for i, d in enumerate(snf.diagonal):
        if d == 0:
            break
        basis.append([d * x for x in snf.U_inv.column(i)])
    return basis


def determinant(M: IntMatrix) -> int:
    """Bareiss fraction-free elimination; exact for integer input."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return 1
    a = M.to_rows()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
