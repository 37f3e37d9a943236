"""Exact integer matrices and Smith normal form with unimodular transforms."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple = ()

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows, ncols: int | None = None) -> IntegerMatrix:
        rows = [tuple(int(x) for x in r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, tuple(rows))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntegerMatrix:
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> IntegerMatrix:
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, columns, nrows: int) -> IntegerMatrix:
        columns = [list(c) for c in columns]
        return cls(nrows, len(columns), tuple(tuple(c[i] for c in columns) for i in range(nrows)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def column(self, j: int) -> list[int]:
        return [r[j] for r in self.entries]

    def columns(self) -> list[list[int]]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> IntegerMatrix:
        return IntegerMatrix(self.cols, self.rows,
                             tuple(tuple(self.entries[i][j] for i in range(self.rows))
                                   for j in range(self.cols)))

    def __matmul__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        ocols = other.columns()
        return IntegerMatrix(self.rows, other.cols, tuple(
            tuple(sum(a * b for a, b in zip(r, c) if a) for c in ocols) for r in self.entries))

    def apply(self, vector) -> list[int]:
        return [sum(a * b for a, b in zip(r, vector) if a) for r in self.entries]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)


def matvec(rows: list[list[int]], vector) -> list[int]:
    return [sum(a * b for a, b in zip(r, vector) if a) for r in rows]


@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == D`` with ``D`` diagonal and unimodular ``U``, ``V``.

    ``U_inv`` and ``V_inv`` are carried along because homology needs them to
    move between chain coordinates and homology coordinates.
    """

    D: IntegerMatrix
    U: IntegerMatrix
    V: IntegerMatrix
    U_inv: IntegerMatrix
    V_inv: IntegerMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(min(self.D.rows, self.D.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def invariants(self) -> list[int]:
        """Non-zero diagonal entries, each dividing the next."""
        return [d for d in self.diagonal if d]


def _freeze(m: list[list[int]], rows: int, cols: int) -> IntegerMatrix:
    return IntegerMatrix(rows, cols, tuple(tuple(r) for r in m))


def smith_normal_form(A: IntegerMatrix) -> SmithForm:
    m, n = A.rows, A.cols
    a = A.tolist()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    # Row ops act on a and U from the left; the inverse op acts on the columns
    # of U_inv.  Column ops act on a and V from the right; the inverse acts on
    # the rows of V_inv.
    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]
        for r in Ui:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if not q:
            return
        rs, rd = a[src], a[dst]
        for k in range(n):
            if rs[k]:
                rd[k] += q * rs[k]
        us, ud = U[src], U[dst]
        for k in range(m):
            if us[k]:
                ud[k] += q * us[k]
        for r in Ui:
            if r[dst]:
                r[src] -= q * r[dst]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        if not q:
            return
        for r in a:
            if r[src]:
                r[dst] += q * r[src]
        for r in V:
            if r[src]:
                r[dst] += q * r[src]
        vd, vs = Vi[dst], Vi[src]
        for k in range(n):
            if vd[k]:
                vs[k] -= q * vd[k]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        U[i] = [-x for x in U[i]]
        for r in Ui:
            r[i] = -r[i]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)
        while True:
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            # smallest leftover in the pivot row/column becomes the new pivot
            cand = None
            for i in range(t + 1, m):
                if a[i][t] and (cand is None or abs(a[i][t]) < cand[0]):
                    cand = (abs(a[i][t]), "r", i)
            for j in range(t + 1, n):
                if a[t][j] and (cand is None or abs(a[t][j]) < cand[0]):
                    cand = (abs(a[t][j]), "c", j)
            if cand is not None:
                if cand[1] == "r":
                    swap_rows(t, cand[2])
                else:
                    swap_cols(t, cand[2])
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            negate_row(t)
        t += 1
    return SmithForm(_freeze(a, m, n), _freeze(U, m, m), _freeze(V, n, n),
                     _freeze(Ui, m, m), _freeze(Vi, n, n))


def invariant_factors(A: IntegerMatrix) -> list[int]:
    return smith_normal_form(A).invariants


def solve_integer(A: IntegerMatrix, b) -> list[int] | None:
    """An integer ``x`` with ``A x = b``, or ``None`` when none exists."""
    S = smith_normal_form(A)
    c = S.U.apply(b)
    diag = S.diagonal
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
    return S.V.apply(y)


def integer_kernel(A: IntegerMatrix) -> list[list[int]]:
    """Basis of the integer null space ``{x : A x = 0}``."""
    S = smith_normal_form(A)
    r = S.rank
    return [S.V.column(j) for j in range(r, A.cols)]
