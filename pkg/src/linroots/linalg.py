"""Dense matrices over a :class:`~linroots.gf.Field`."""

from __future__ import annotations

from dataclasses import dataclass

from .gf import Field


class NotSquare(ValueError):
    pass


@dataclass(frozen=True)
class Matrix:
    field: Field
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise ValueError("ragged matrix")

    @classmethod
    def from_rows(cls, field: Field, rows) -> Matrix:
        return cls(field, tuple(tuple(int(x) for x in r) for r in rows))

    @classmethod
    def from_ints(cls, field: Field, rows) -> Matrix:
        """Integer entries reduced into the prime field."""
        return cls.from_rows(field, [[field.scalar(x) for x in r] for r in rows])

    @classmethod
    def identity(cls, field: Field, size: int) -> Matrix:
        return cls.from_rows(field, [[1 if i == j else 0 for j in range(size)]
                                     for i in range(size)])

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> Matrix:
        return cls.from_rows(field, [[0] * ncols for _ in range(nrows)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> Matrix:
        return Matrix(self.field, tuple(zip(*self.rows)))

    def __add__(self, other: Matrix) -> Matrix:
        add = self.field.add
        return Matrix(self.field, tuple(tuple(add(x, y) for x, y in zip(r, s))
                                        for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: Matrix) -> Matrix:
        sub = self.field.sub
        return Matrix(self.field, tuple(tuple(sub(x, y) for x, y in zip(r, s))
                                        for r, s in zip(self.rows, other.rows)))

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} @ "
                             f"{other.nrows}x{other.ncols}")
        F = self.field
        add, mul = F.add, F.mul
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = 0
                for x, y in zip(r, c):
                    if x and y:
                        acc = add(acc, mul(x, y))
                row.append(acc)
            out.append(tuple(row))
        return Matrix(F, tuple(out))

    def submatrix(self, rows, cols) -> Matrix:
        return Matrix(self.field, tuple(tuple(self.rows[i][j] for j in cols) for i in rows))

    def row(self, i: int) -> tuple[int, ...]:
        return self.rows[i]

    def format(self, style: str = "coords") -> str:
        fmt = self.field.format_element
        return "\n".join(" ".join(fmt(x, style) for x in r) for r in self.rows)


def _echelon(M: Matrix):
    """Row reduce a copy of M; returns (rows, pivot columns, det sign*pivots)."""
    F = M.field
    rows = [list(r) for r in M.rows]
    pivots = []
    prod = 1
    r = 0
    for c in range(M.ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            prod = F.neg(prod)
        pv = rows[r][c]
        prod = F.mul(prod, pv)
        inv = F.inv(pv)
        pr = [F.mul(inv, x) for x in rows[r]]
        rows[r] = pr
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f:
                rows[i] = [F.sub(x, F.mul(f, y)) if y else x for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots, prod


def rank(M: Matrix) -> int:
    if not M.rows or not M.ncols:
        return 0
    return len(_echelon(M)[1])


def det(M: Matrix) -> int:
    if not M.is_square:
        raise NotSquare(f"{M.nrows}x{M.ncols} matrix has no determinant")
    if M.nrows == 0:
        return 1
    _, pivots, prod = _echelon(M)
    return prod if len(pivots) == M.nrows else 0


def twist(M: Matrix, e: int) -> Matrix:
    """Apply a -> a^{p^e} to every entry."""
    fr = M.field.frobenius
    return Matrix(M.field, tuple(tuple(fr(x, e) for x in r) for r in M.rows))


def twisted_product(M: Matrix, step: int, count: int) -> Matrix:
    """M^{(step*(count-1))} ... M^{(step)} M with ^{(e)} the entrywise twist."""
    if not M.is_square:
        raise NotSquare("twisted product needs a square matrix")
    if count < 1:
        raise ValueError("count must be >= 1")
    acc = M
    for i in range(1, count):
        acc = twist(M, step * i) @ acc
    return acc


def shift_matrix(field: Field, size: int, power: int) -> Matrix:
    """J^power, J having ones on the superdiagonal and in the bottom-left corner."""
    k = power % size
    return Matrix.from_rows(field, [[1 if j == (i + k) % size else 0 for j in range(size)]
                                    for i in range(size)])
