"""Exact dense linear algebra over Q and F_p, plus integer normal forms.

Field matrices support reduced row echelon form with a tracked left
transform, kernel bases, and linear solving.  Integer matrices get a Smith
normal form with unimodular transforms (minimal-absolute-value pivoting) and
the invariants of their cokernel, which is how finitely presented abelian
groups are read off throughout the package.

Everything is exact; there is no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NoSolution
from .fields import Field


class Matrix:
    """An immutable dense matrix over a `Field` (row-major)."""

    __slots__ = ("field", "rows", "cols", "e")

    def __init__(self, field: Field, rows: int, cols: int, entries):
        self.field = field
        self.rows = rows
        self.cols = cols
        e = tuple(tuple(field.of(x) for x in row) for row in entries)
        if len(e) != rows or any(len(r) != cols for r in e):
            raise ValueError(f"entry grid is not {rows}x{cols}")
        self.e = e

    @classmethod
    def _new(cls, field, rows, cols, frozen_entries):
        # Internal fast path: entries already canonical field elements.
        m = object.__new__(cls)
        m.field, m.rows, m.cols, m.e = field, rows, cols, frozen_entries
        return m

    @classmethod
    def from_rows(cls, field: Field, rows) -> "Matrix":
        rows = [list(r) for r in rows]
        return cls(field, len(rows), len(rows[0]) if rows else 0, rows)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero()
        return cls._new(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero(), field.one()
        return cls._new(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, field: Field, cols: list, nrows: int) -> "Matrix":
        return cls(field, nrows, len(cols), [[c[i] for c in cols] for i in range(nrows)])

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.shape == other.shape
            and self.e == other.e
        )

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.e))

    def __repr__(self):
        return f"Matrix({self.field}, {self.rows}x{self.cols}, {self.e!r})"

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.e for x in row)

    def __add__(self, other):
        self._check_same_shape(other)
        add = self.field.add
        return Matrix._new(
            self.field, self.rows, self.cols,
            tuple(tuple(add(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(self.e, other.e)),
        )

    def __sub__(self, other):
        self._check_same_shape(other)
        sub = self.field.sub
        return Matrix._new(
            self.field, self.rows, self.cols,
            tuple(tuple(sub(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(self.e, other.e)),
        )

    def __neg__(self):
        neg = self.field.neg
        return Matrix._new(self.field, self.rows, self.cols, tuple(tuple(neg(a) for a in r) for r in self.e))

    def scale(self, c) -> "Matrix":
        c = self.field.of(c)
        mul = self.field.mul
        return Matrix._new(self.field, self.rows, self.cols, tuple(tuple(mul(c, a) for a in r) for r in self.e))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows or self.field != other.field:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        p = self.field.p
        ot = list(zip(*other.e)) if other.e else [()] * other.cols
        z = self.field.zero()
        out = []
        for row in self.e:
            if p is None:
                out.append(tuple(sum((a * b for a, b in zip(row, col)), z) for col in ot))
            else:
                out.append(tuple(sum(a * b for a, b in zip(row, col)) % p for col in ot))
        return Matrix._new(self.field, self.rows, other.cols, tuple(out))

    def transpose(self) -> "Matrix":
        return Matrix._new(self.field, self.cols, self.rows, tuple(zip(*self.e)) if self.e else ())

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.e)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows or self.field != other.field:
            raise ValueError("row counts differ")
        return Matrix._new(self.field, self.rows, self.cols + other.cols,
                           tuple(a + b for a, b in zip(self.e, other.e)))

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols or self.field != other.field:
            raise ValueError("column counts differ")
        return Matrix._new(self.field, self.rows + other.rows, self.cols, self.e + other.e)

    def submatrix(self, row_idx, col_idx) -> "Matrix":
        return Matrix._new(self.field, len(row_idx), len(col_idx),
                           tuple(tuple(self.e[i][j] for j in col_idx) for i in row_idx))

    def to_json(self):
        tj = self.field.to_json
        return [[tj(x) for x in row] for row in self.e]

    @classmethod
    def from_json(cls, field: Field, data, rows: int, cols: int) -> "Matrix":
        if data == [] and rows * cols == 0:
            return cls.zeros(field, rows, cols)
        return cls(field, rows, cols, data)

    def _check_same_shape(self, other):
        if not isinstance(other, Matrix) or self.shape != other.shape or self.field != other.field:
            raise ValueError("shape or field mismatch")


def block_matrix(field: Field, grid) -> "Matrix":
    """Assemble a matrix from a 2d grid of blocks (each row of blocks must
    agree on height, each column on width)."""
    if not grid or not grid[0]:
        return Matrix.zeros(field, 0, 0)
    rows = []
    for brow in grid:
        h = brow[0].rows
        for i in range(h):
            rows.append([x for blk in brow for x in blk.e[i]])
    return Matrix.from_rows(field, rows) if rows else Matrix.zeros(field, 0, sum(b.cols for b in grid[0]))


def _rref_core(m: Matrix, track: bool):
    field = m.field
    p = field.p
    a = [list(row) for row in m.e]
    nrows, ncols = m.rows, m.cols
    t = [[field.one() if i == j else field.zero() for j in range(nrows)] for i in range(nrows)] if track else None
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if pr is None:
            continue
        if pr != r:
            a[r], a[pr] = a[pr], a[r]
            if track:
                t[r], t[pr] = t[pr], t[r]
        piv = a[r][c]
        if piv != 1:
            ipiv = field.inv(piv)
            if p is None:
                a[r] = [x * ipiv for x in a[r]]
                if track:
                    t[r] = [x * ipiv for x in t[r]]
            else:
                a[r] = [x * ipiv % p for x in a[r]]
                if track:
                    t[r] = [x * ipiv % p for x in t[r]]
        row_r = a[r]
        for i in range(nrows):
            f = a[i][c]
            if i == r or f == 0:
                continue
            if p is None:
                a[i] = [x - f * y for x, y in zip(a[i], row_r)]
                if track:
                    t[i] = [x - f * y for x, y in zip(t[i], t[r])]
            else:
                a[i] = [(x - f * y) % p for x, y in zip(a[i], row_r)]
                if track:
                    t[i] = [(x - f * y) % p for x, y in zip(t[i], t[r])]
        pivots.append(c)
        r += 1
    R = Matrix._new(field, nrows, ncols, tuple(tuple(row) for row in a))
    T = Matrix._new(field, nrows, nrows, tuple(tuple(row) for row in t)) if track else None
    return R, tuple(pivots), T


def rref(m: Matrix):
    """Reduced row echelon form.

    Returns ``(R, pivots, T)`` where ``R`` is the RREF of ``m``, ``pivots``
    lists the pivot column indices, and ``T`` is an invertible matrix with
    ``T @ m == R``.
    """
    return _rref_core(m, track=True)


def rank(m: Matrix) -> int:
    return len(_rref_core(m, track=False)[1])


def kernel_basis(m: Matrix) -> Matrix:
    """A matrix whose columns form a basis of ker(m).

    Column count equals ``m.cols - rank(m)``; for an injective map the result
    has zero columns.
    """
    R, pivots, _ = _rref_core(m, track=False)
    field = m.field
    z, o = field.zero(), field.one()
    pivset = set(pivots)
    free = [j for j in range(m.cols) if j not in pivset]
    cols = []
    for f in free:
        v = [z] * m.cols
        v[f] = o
        for k, pc in enumerate(pivots):
            v[pc] = field.neg(R.e[k][f])
        cols.append(v)
    return Matrix.from_columns(field, cols, m.cols)


def column_space_basis(m: Matrix) -> Matrix:
    """The pivot columns of ``m``: a basis of its column space."""
    _, pivots, _ = _rref_core(m, track=False)
    return m.submatrix(range(m.rows), pivots)


def solve(a: Matrix, b: Matrix) -> Matrix:
    """Some X with ``a @ X == b``; raises `NoSolution` if none exists.

    The returned solution is re-verified by multiplication before returning.
    """
    if a.rows != b.rows or a.field != b.field:
        raise ValueError("incompatible shapes for solve")
    R, pivots, T = _rref_core(a, track=True)
    tb = T @ b
    nr = len(pivots)
    for i in range(nr, a.rows):
        if any(x != 0 for x in tb.e[i]):
            raise NoSolution("right-hand side is not in the column space")
    field = a.field
    z = field.zero()
    x = [[z] * b.cols for _ in range(a.cols)]
    for k, pc in enumerate(pivots):
        # Free variables are set to zero, so row k of R@X reduces to X[pc].
        x[pc] = list(tb.e[k])
    X = Matrix._new(field, a.cols, b.cols, tuple(tuple(r) for r in x))
    if (a @ X).e != b.e:
        raise NoSolution("verification failed: no exact solution")
    return X


def invert(m: Matrix) -> Matrix:
    """Inverse of a square invertible matrix; raises `NoSolution` otherwise."""
    if m.rows != m.cols:
        raise NoSolution("only square matrices are invertible")
    return solve(m, Matrix.identity(m.field, m.rows))


# ---------------------------------------------------------------------------
# Integer matrices, Smith normal form, abelian group invariants
# ---------------------------------------------------------------------------


class IntMatrix:
    """Immutable dense matrix with arbitrary-precision integer entries."""

    __slots__ = ("rows", "cols", "e")

    def __init__(self, rows: int, cols: int, entries):
        self.rows = rows
        self.cols = cols
        e = tuple(tuple(int(x) for x in row) for row in entries)
        if len(e) != rows or any(len(r) != cols for r in e):
            raise ValueError(f"entry grid is not {rows}x{cols}")
        self.e = e

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        rows = [list(r) for r in rows]
        return cls(len(rows), len(rows[0]) if rows else 0, rows)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, diag, rows=None, cols=None) -> "IntMatrix":
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        m = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            m[i][i] = d
        return cls(rows, cols, m)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.shape == other.shape and self.e == other.e

    def __hash__(self):
        return hash((self.rows, self.cols, self.e))

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols}, {self.e!r})"

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        ot = list(zip(*other.e)) if other.e else []
        return IntMatrix(self.rows, other.cols,
                         [[sum(a * b for a, b in zip(row, col)) for col in ot] for row in self.e])

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, list(zip(*self.e)) if self.e else [])

    def diagonal_entries(self) -> list[int]:
        return [self.e[i][i] for i in range(min(self.rows, self.cols))]

    def to_json(self):
        return [list(row) for row in self.e]


def integer_determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant needs a square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = [list(row) for row in m.e]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _smith_core(a_rows, nrows, ncols, want_u, want_v):
    """Shared SNF elimination.  Returns (diag, U_rows, V_rows).

    Pivoting picks the minimal-absolute-value nonzero entry of the working
    submatrix, which keeps coefficient growth tame at the scale this package
    targets.  The divisibility chain is enforced before each pivot is locked.
    """
    a = [list(r) for r in a_rows]
    U = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)] if want_u else None
    V = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)] if want_v else None
    t = 0
    limit = min(nrows, ncols)
    while t < limit:
        # Minimal-absolute-value pivot in the trailing submatrix.
        best = None
        best_abs = None
        for i in range(t, nrows):
            row = a[i]
            for j in range(t, ncols):
                x = row[j]
                if x != 0 and (best_abs is None or -best_abs < x < best_abs):
                    best, best_abs = (i, j), abs(x)
                    if best_abs == 1:
                        break
            if best_abs == 1:
                break
        if best is None:
            break
        bi, bj = best
        if bi != t:
            a[t], a[bi] = a[bi], a[t]
            if want_u:
                U[t], U[bi] = U[bi], U[t]
        if bj != t:
            for row in a:
                row[t], row[bj] = row[bj], row[t]
            if want_v:
                for row in V:
                    row[t], row[bj] = row[bj], row[t]
        while True:
            if a[t][t] < 0:
                a[t] = [-x for x in a[t]]
                if want_u:
                    U[t] = [-x for x in U[t]]
            # Clear column t below the pivot.
            restart = False
            for i in range(t + 1, nrows):
                x = a[i][t]
                if x == 0:
                    continue
                q = x // a[t][t]
                if q:
                    a[i] = [u - q * v for u, v in zip(a[i], a[t])]
                    if want_u:
                        U[i] = [u - q * v for u, v in zip(U[i], U[t])]
                if a[i][t] != 0:
                    a[t], a[i] = a[i], a[t]
                    if want_u:
                        U[t], U[i] = U[i], U[t]
                    restart = True
                    break
            if restart:
                continue
            # Clear row t to the right of the pivot.
            for j in range(t + 1, ncols):
                x = a[t][j]
                if x == 0:
                    continue
                q = x // a[t][t]
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                    if want_v:
                        for row in V:
                            row[j] -= q * row[t]
                if a[t][j] != 0:
                    for row in a:
                        row[t], row[j] = row[j], row[t]
                    if want_v:
                        for row in V:
                            row[t], row[j] = row[j], row[t]
                    restart = True
                    break
            if restart:
                continue
            # Pivot must divide every remaining entry for the chain to hold.
            d = a[t][t]
            bad = None
            for i in range(t + 1, nrows):
                row = a[i]
                for j in range(t + 1, ncols):
                    if row[j] % d:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            a[t] = [u + v for u, v in zip(a[t], a[bad])]
            if want_u:
                U[t] = [u + v for u, v in zip(U[t], U[bad])]
        t += 1
    diag = [a[i][i] for i in range(limit)]
    return diag, U, V, a


def smith_normal_form(a: IntMatrix):
    """Smith normal form with transforms.

    Returns ``(U, D, V)`` with ``U @ a @ V == D``, U and V unimodular (their
    determinants are +-1 by construction from elementary operations), and D
    diagonal with ``d1 | d2 | ...`` and all diagonal entries >= 0.
    """
    diag, U, V, _ = _smith_core(a.e, a.rows, a.cols, True, True)
    D = IntMatrix.diagonal(diag, a.rows, a.cols)
    return IntMatrix(a.rows, a.rows, U), D, IntMatrix(a.cols, a.cols, V)


@dataclass(frozen=True, slots=True)
class GroupInvariants:
    """A finitely generated abelian group Z^free_rank + sum of Z/d_i.

    The torsion coefficients satisfy d1 | d2 | ... and each is >= 2.
    """

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be >= 0")
        tor = tuple(int(d) for d in self.torsion)
        object.__setattr__(self, "torsion", tor)
        if any(d < 2 for d in tor):
            raise ValueError("torsion coefficients must be >= 2")
        if any(tor[i + 1] % tor[i] for i in range(len(tor) - 1)):
            raise ValueError("torsion coefficients must form a divisibility chain")

    def to_json(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append(f"Z^{self.free_rank}" if self.free_rank > 1 else "Z")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def cokernel_invariants(a: IntMatrix) -> GroupInvariants:
    """Invariants of Z^rows / (column span of ``a``)."""
    diag, _, _, _ = _smith_core(a.e, a.rows, a.cols, False, False)
    nonzero = [d for d in diag if d != 0]
    return GroupInvariants(a.rows - len(nonzero), tuple(d for d in nonzero if d >= 2))


def sparse_cokernel_invariants(n_rows: int, columns: list[dict[int, int]]) -> GroupInvariants:
    """Cokernel invariants of a sparse integer matrix given columnwise.

    Unit entries are peeled off first with row/column operations (each peel
    contributes an invariant factor of 1), then the small dense core is
    finished by `cokernel_invariants`.  This is an internal accelerator for
    the relation matrices built by the Grothendieck-group engine; the result
    agrees with the dense computation.
    """
    cols = {}
    row_to_cols: dict[int, set] = {}
    for cid, col in enumerate(columns):
        c = {r: v for r, v in col.items() if v != 0}
        if not c:
            continue
        cols[cid] = c
        for r in c:
            row_to_cols.setdefault(r, set()).add(cid)

    queue = [cid for cid, c in cols.items() if any(v in (1, -1) for v in c.values())]
    peeled_rows = set()
    while queue:
        cid = queue.pop()
        col = cols.get(cid)
        if col is None:
            continue
        unit = next(((r, v) for r, v in col.items() if v in (1, -1)), None)
        if unit is None:
            continue
        r0, v0 = unit
        # Column operations clear row r0 from every other column.
        for other in list(row_to_cols.get(r0, ())):
            if other == cid:
                continue
            oc = cols[other]
            f = oc[r0] * v0  # oc -= f * col  kills the r0 entry since v0*v0 == 1
            touched_unit = False
            for r, v in col.items():
                nv = oc.get(r, 0) - f * v
                if nv == 0:
                    oc.pop(r, None)
                    row_to_cols[r].discard(other)
                else:
                    if r not in oc:
                        row_to_cols.setdefault(r, set()).add(other)
                    oc[r] = nv
                    if nv in (1, -1):
                        touched_unit = True
            if not oc:
                del cols[other]
            elif touched_unit:
                queue.append(other)
        # Row operations clear the rest of this column, then both go away.
        for r in col:
            row_to_cols[r].discard(cid)
        del cols[cid]
        peeled_rows.add(r0)

    live_rows = sorted(set(range(n_rows)) - peeled_rows)
    row_index = {r: i for i, r in enumerate(live_rows)}
    dense_cols = []
    for c in cols.values():
        v = [0] * len(live_rows)
        for r, x in c.items():
            v[row_index[r]] = x
        dense_cols.append(v)
    if dense_cols:
        core = IntMatrix(len(live_rows), len(dense_cols),
                         [[dense_cols[j][i] for j in range(len(dense_cols))] for i in range(len(live_rows))])
        return cokernel_invariants(core)
    return GroupInvariants(len(live_rows), ())


def integer_solvable(a: IntMatrix, b: list[int]) -> bool:
    """Whether ``a @ x == b`` has an integer solution x."""
    if len(b) != a.rows:
        raise ValueError("right-hand side length mismatch")
    diag, U, _, _ = _smith_core(a.e, a.rows, a.cols, True, False)
    ub = [sum(U[i][k] * b[k] for k in range(a.rows)) for i in range(a.rows)]
    for i in range(a.rows):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if ub[i] != 0:
                return False
        elif ub[i] % d:
            return False
    return True
