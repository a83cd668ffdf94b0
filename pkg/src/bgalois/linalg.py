"""Dense exact linear algebra over a Field.

Matrices are immutable; all arithmetic is exact.  Similarity is decided by
invariant factors (Smith form of xI - A over k[x]); Jordan structure is read off
the ranks of (A - lambda I)^k when the characteristic polynomial splits.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable, Sequence

from .errors import FieldMismatch, NotSquare, Singular
from .exact import Field, FieldElem, Poly

__all__ = [
    "Mat",
    "SimilarityInvariants",
    "mat_inverse",
    "charpoly",
    "similarity_invariants",
    "similar",
    "jordan_block",
    "bareiss_det",
    "smith_diagonal",
]


class Mat:
    __slots__ = ("field", "rows", "cols", "_e")

    def __init__(self, field: Field, rows: Iterable[Iterable]):
        data = tuple(tuple(field(x) for x in row) for row in rows)
        self.field = field
        self.rows = len(data)
        self.cols = len(data[0]) if data else 0
        if any(len(r) != self.cols for r in data):
            raise ValueError("ragged matrix")
        self._e = data

    # construction -------------------------------------------------------
    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field: Field, r: int, c: int | None = None) -> "Mat":
        c = r if c is None else c
        return cls(field, [[0] * c for _ in range(r)])

    @classmethod
    def diag(cls, field: Field, values: Sequence) -> "Mat":
        n = len(values)
        return cls(field, [[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def block_diag(cls, field: Field, blocks: Sequence["Mat"]) -> "Mat":
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        rows = [[field.zero] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            if b.field != field:
                raise FieldMismatch(f"{b.field} vs {field}")
            for i in range(b.rows):
                for j in range(b.cols):
                    rows[r0 + i][c0 + j] = b[i, j]
            r0 += b.rows
            c0 += b.cols
        return cls(field, rows)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence]) -> "Mat":
        if not columns:
            raise ValueError("no columns")
        return cls(field, [[col[i] for col in columns] for i in range(len(columns[0]))])

    # access ---------------------------------------------------------------
    def __getitem__(self, ij) -> FieldElem:
        i, j = ij
        return self._e[i][j]

    def row(self, i: int) -> tuple[FieldElem, ...]:
        return self._e[i]

    def col(self, j: int) -> tuple[FieldElem, ...]:
        return tuple(r[j] for r in self._e)

    def to_rows(self) -> list[list[FieldElem]]:
        return [list(r) for r in self._e]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_square(self) -> bool:
        return self.rows == self.cols

    def _require_square(self):
        if not self.is_square():
            raise NotSquare(f"matrix is {self.rows}x{self.cols}")

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Mat":
        return Mat(self.field, [[self._e[i][j] for j in cols] for i in rows])

    def map(self, fn: Callable[[FieldElem], FieldElem]) -> "Mat":
        return Mat(self.field, [[fn(x) for x in r] for r in self._e])

    # arithmetic -------------------------------------------------------------
    def _check(self, other: "Mat"):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Mat(self.field, [[a + b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)])

    def __sub__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Mat(self.field, [[a - b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)])

    def __neg__(self) -> "Mat":
        return self.map(lambda x: -x)

    def __mul__(self, other):
        if isinstance(other, Mat):
            self._check(other)
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            oc = [other.col(j) for j in range(other.cols)]
            zero = self.field.zero
            out = []
            for r in self._e:
                row = []
                for c in oc:
                    acc = zero
                    for a, b in zip(r, c):
                        if not a.is_zero() and not b.is_zero():
                            acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return Mat(self.field, out)
        c = self.field(other)
        return self.map(lambda x: x * c)

    def __rmul__(self, other):
        c = self.field(other)
        return self.map(lambda x: c * x)

    def __pow__(self, k: int) -> "Mat":
        self._require_square()
        if k < 0:
            return mat_inverse(self) ** (-k)
        out = Mat.identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    @property
    def T(self) -> "Mat":
        return Mat(self.field, [list(c) for c in zip(*self._e)]) if self.rows else self

    def trace(self) -> FieldElem:
        self._require_square()
        acc = self.field.zero
        for i in range(self.rows):
            acc = acc + self._e[i][i]
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.field == other.field and self._e == other._e

    def __hash__(self) -> int:
        return hash(self._e)

    def is_symmetric(self) -> bool:
        return self == self.T

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in r) for r in self._e)
        return f"Mat({self.field}, [{body}])"

    # elimination ------------------------------------------------------------
    def rref(self) -> tuple["Mat", list[int]]:
        """Reduced row echelon form and pivot columns.

        Pivot choice is deterministic: the lowest row index holding a nonzero
        entry in the current column.
        """
        a = [list(r) for r in self._e]
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            pr = next((i for i in range(r, self.rows) if not a[i][c].is_zero()), None)
            if pr is None:
                continue
            a[r], a[pr] = a[pr], a[r]
            inv = a[r][c].inverse()
            a[r] = [x * inv for x in a[r]]
            for i in range(self.rows):
                if i != r and not a[i][c].is_zero():
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return Mat(self.field, a) if a else self, pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list[list[FieldElem]]:
        """Basis of {x : A x = 0}; one vector per free column, that entry set to 1."""
        red, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for fcol in free:
            v = [self.field.zero] * self.cols
            v[fcol] = self.field.one
            for i, pc in enumerate(pivots):
                v[pc] = -red[i, fcol]
            basis.append(v)
        return basis

    def det(self) -> FieldElem:
        self._require_square()
        a = [list(r) for r in self._e]
        n = self.rows
        d = self.field.one
        for c in range(n):
            pr = next((i for i in range(c, n) if not a[i][c].is_zero()), None)
            if pr is None:
                return self.field.zero
            if pr != c:
                a[c], a[pr] = a[pr], a[c]
                d = -d
            piv = a[c][c]
            d = d * piv
            inv = piv.inverse()
            for i in range(c + 1, n):
                if not a[i][c].is_zero():
                    f = a[i][c] * inv
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return d

    def is_invertible(self) -> bool:
        return self.is_square() and not self.det().is_zero()


def mat_inverse(a: Mat) -> Mat:
    """Exact inverse by Gauss-Jordan elimination on [A | I]."""
    a._require_square()
    n = a.rows
    aug = Mat(a.field, [list(a.row(i)) + [1 if i == j else 0 for j in range(n)] for i in range(n)])
    red, pivots = aug.rref()
    if pivots[:n] != list(range(n)):
        raise Singular("matrix is singular")
    return red.submatrix(range(n), range(n, 2 * n))


def jordan_block(field: Field, eigenvalue, size: int, off=1) -> Mat:
    """Jordan block with the off-diagonal entries on the superdiagonal (i, i+1)."""
    lam = field(eigenvalue)
    return Mat(field, [[lam if i == j else (off if j == i + 1 else 0) for j in range(size)]
                       for i in range(size)])


# polynomial-entry helpers -------------------------------------------------------


def bareiss_det(rows: Sequence[Sequence], one, exact_div: Callable | None = None):
    """Fraction-free determinant for entries in an integral domain.

    ``exact_div(a, b)`` must return a/b when b divides a; it defaults to
    ``a.exact_div(b)`` (polynomials) and falls back to ``a / b``.
    """
    n = len(rows)
    if n == 0:
        return one
    a = [list(r) for r in rows]
    if exact_div is None:
        def exact_div(x, y):
            return x.exact_div(y) if hasattr(x, "exact_div") else x / y
    sign = 1
    prev = one
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return one * 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign == 1 else -d


def charpoly(a: Mat) -> Poly:
    """det(xI - A), monic of degree dim A."""
    a._require_square()
    f = a.field
    x = Poly.x(f)
    rows = [[(x if i == j else Poly(f)) - Poly(f, (a[i, j],)) for j in range(a.cols)]
            for i in range(a.rows)]
    return bareiss_det(rows, Poly(f, (1,)))


def smith_diagonal(rows: Sequence[Sequence[Poly]]) -> list[Poly]:
    """Diagonal of the Smith normal form of a square matrix over k[x], made monic."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return []
    field = a[0][0].field
    zero = Poly(field)
    diag: list[Poly] = []
    for k in range(n):
        while True:
            # pivot: nonzero entry of least degree in the trailing block
            best = None
            for i in range(k, n):
                for j in range(k, n):
                    if not a[i][j].is_zero() and (best is None or a[i][j].degree < a[best[0]][best[1]].degree):
                        best = (i, j)
            if best is None:
                diag.extend([zero] * (n - k))
                return diag
            i, j = best
            a[k], a[i] = a[i], a[k]
            for r in a:
                r[k], r[j] = r[j], r[k]
            piv = a[k][k]
            dirty = False
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    quo, rem = divmod(a[i][k], piv)
                    a[i] = [x - quo * y for x, y in zip(a[i], a[k])]
                    dirty |= not rem.is_zero()
            for j in range(k + 1, n):
                if not a[k][j].is_zero():
                    quo, rem = divmod(a[k][j], piv)
                    for r in a:
                        r[j] = r[j] - quo * r[k]
                    dirty |= not rem.is_zero()
            if dirty:
                continue
            bad = next(((i, j) for i in range(k + 1, n) for j in range(k + 1, n)
                        if not (a[i][j] % piv).is_zero()), None)
            if bad is not None:
                # fold the offending row into row k and redo the step
                a[k] = [x + y for x, y in zip(a[k], a[bad[0]])]
                continue
            diag.append(piv.monic())
            break
    return diag


@dataclass(frozen=True)
class SimilarityInvariants:
    charpoly: Poly
    invariant_factors: tuple[Poly, ...]
    jordan: dict | None = dc_field(default=None, compare=False)

    def jordan_items(self) -> list[tuple[FieldElem, tuple[int, ...]]]:
        if self.jordan is None:
            return []
        return sorted(self.jordan.items(), key=lambda kv: kv[0].sort_key())


def jordan_structure(a: Mat, roots=None) -> dict | None:
    """{eigenvalue: block sizes (descending)} or None when charpoly does not split."""
    a._require_square()
    n = a.rows
    if roots is None:
        roots = charpoly(a).roots()
    if sum(m for _, m in roots) != n:
        return None
    out = {}
    ident = Mat.identity(a.field, n)
    for lam, mult in roots:
        shifted = a - ident * lam
        ranks = [n]
        power = ident
        for _ in range(mult):
            power = power * shifted
            ranks.append(power.rank())
        # blocks of size >= k: ranks[k-1] - ranks[k]
        at_least = [ranks[k - 1] - ranks[k] for k in range(1, mult + 1)] + [0]
        sizes = []
        for k in range(1, mult + 1):
            sizes.extend([k] * (at_least[k - 1] - at_least[k]))
        out[lam] = tuple(sorted(sizes, reverse=True))
    return out


def similarity_invariants(a: Mat) -> SimilarityInvariants:
    a._require_square()
    f = a.field
    x = Poly.x(f)
    cp = charpoly(a)
    rows = [[(x if i == j else Poly(f)) - Poly(f, (a[i, j],)) for j in range(a.cols)]
            for i in range(a.rows)]
    factors = tuple(d for d in smith_diagonal(rows) if d.degree >= 1)
    return SimilarityInvariants(cp, factors, jordan_structure(a))


def similar(a: Mat, b: Mat) -> bool:
    """Complete similarity test: equal size and identical invariant factors."""
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    a._require_square()
    b._require_square()
    if a.rows != b.rows:
        return False
    return similarity_invariants(a).invariant_factors == similarity_invariants(b).invariant_factors
