"""Polynomial paths F(t) in GL_m(k[t]) between Gram matrices, and their certificates.

A path certifies a homotopy between B(E_q, F(0)) and B(E_q, F(1)) once three
things hold exactly: the endpoints match, det F(t) is a unit of k[t] and the
trace of F(t)^-1 F(t)^t is the constant trace of the endpoints, and F(t) is
manageable over k[t].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import (
    CharpolyDoesNotSplit,
    CheckFailed,
    DomainError,
    FieldMismatch,
    NotAntiTriangular,
    NotReduced,
    ZeroEigenvalue,
)
from .exact import Field, FieldElem, Poly
from .forms import (
    BilinearForm,
    Lemma15Case,
    as_form,
    lemma15_verify,
    manageability_of_inverse,
    trace_invariant,
)
from .linalg import Mat, bareiss_det, charpoly, jordan_structure, mat_inverse

__all__ = [
    "PathMatrix",
    "PathCertificate",
    "Block",
    "Reduction",
    "HomotopyVerdict",
    "path_anti_triangular",
    "path_jordan_pair",
    "direct_sum_paths",
    "validate_path",
    "reduce_to_blocks",
    "path_for_form",
    "block_congruence",
    "homotopy_decide",
]

DEFAULT_BUDGET = 1_000_000


class PathMatrix:
    """A square-or-rectangular matrix with entries in k[t]."""

    __slots__ = ("field", "rows", "cols", "_e")

    def __init__(self, field: Field, rows: Sequence[Sequence]):
        def lift(x):
            if isinstance(x, Poly):
                if x.field != field:
                    raise FieldMismatch(f"{x.field} vs {field}")
                return x
            return Poly(field, (x,))

        data = tuple(tuple(lift(x) for x in r) for r in rows)
        self.field = field
        self.rows = len(data)
        self.cols = len(data[0]) if data else 0
        self._e = data

    @classmethod
    def constant(cls, m: Mat) -> "PathMatrix":
        return cls(m.field, m.to_rows())

    def __getitem__(self, ij) -> Poly:
        i, j = ij
        return self._e[i][j]

    def to_rows(self) -> list[list[Poly]]:
        return [list(r) for r in self._e]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def T(self) -> "PathMatrix":
        return PathMatrix(self.field, [list(c) for c in zip(*self._e)])

    def __mul__(self, other: "PathMatrix") -> "PathMatrix":
        zero = Poly(self.field)
        out = []
        for r in self._e:
            row = []
            for j in range(other.cols):
                acc = zero
                for k, a in enumerate(r):
                    b = other._e[k][j]
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PathMatrix(self.field, out)

    def scale(self, c) -> "PathMatrix":
        c = self.field(c)
        return PathMatrix(self.field, [[x * c for x in r] for r in self._e])

    def at(self, t0) -> Mat:
        """Entrywise evaluation at t = t0."""
        t0 = self.field(t0)
        return Mat(self.field, [[x(t0) for x in r] for r in self._e])

    def det(self) -> Poly:
        return bareiss_det(self._e, Poly(self.field, (1,)))

    def adjugate(self) -> "PathMatrix":
        n = self.rows
        one = Poly(self.field, (1,))
        if n == 1:
            return PathMatrix(self.field, [[one]])
        out = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [[self._e[r][c] for c in range(n) if c != i] for r in range(n) if r != j]
                d = bareiss_det(minor, one)
                out[i][j] = d if (i + j) % 2 == 0 else -d
        return PathMatrix(self.field, out)

    def max_degree(self) -> int:
        return max((len(x.coeffs) - 1 for r in self._e for x in r if not x.is_zero()), default=0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PathMatrix):
            return NotImplemented
        return self.field == other.field and self._e == other._e

    def __hash__(self) -> int:
        return hash(self._e)

    def __repr__(self) -> str:
        body = "; ".join(", ".join(x.to_str("t") for x in r) for r in self._e)
        return f"PathMatrix({self.field}, [{body}])"


@dataclass(frozen=True)
class PathCertificate:
    path: PathMatrix
    endpoint0: Mat
    endpoint1: Mat
    checks: dict


def path_anti_triangular(f) -> PathMatrix:
    """Keep the anti-diagonal of F, multiply every other entry by t."""
    g = f.gram if isinstance(f, BilinearForm) else f
    n = g.rows
    if not g.is_square():
        raise NotAntiTriangular("matrix is not square")
    for i in range(n):
        for j in range(n):
            if i + j < n - 1 and not g[i, j].is_zero():
                raise NotAntiTriangular(f"entry ({i + 1},{j + 1}) above the anti-diagonal is nonzero")
        if g[i, n - 1 - i].is_zero():
            raise NotAntiTriangular(f"anti-diagonal entry ({i + 1},{n - i}) is zero")
    field = g.field
    t = Poly.x(field)
    return PathMatrix(field, [[Poly(field, (g[i, j],)) if i + j == n - 1 else t * g[i, j]
                               for j in range(n)] for i in range(n)])


def path_jordan_pair(p: FieldElem, n: int) -> PathMatrix:
    """[[0, I_n], [J_p(t), 0]] where J_p(t) has p on the diagonal and t at (i, i+1)."""
    if p.is_zero():
        raise ZeroEigenvalue("p must be nonzero")
    field = p.field
    t = Poly.x(field)
    zero, one = Poly(field), Poly(field, (1,))
    rows = [[zero] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        rows[i][n + i] = one
        rows[n + i][i] = Poly(field, (p,))
        if i + 1 < n:
            rows[n + i][i + 1] = t
    return PathMatrix(field, rows)


def direct_sum_paths(paths: Sequence[PathMatrix]) -> PathMatrix:
    if not paths:
        raise ValueError("no paths to assemble")
    field = paths[0].field
    for p in paths:
        if p.field != field:
            raise FieldMismatch(f"{p.field} vs {field}")
    n = sum(p.rows for p in paths)
    zero = Poly(field)
    rows = [[zero] * n for _ in range(n)]
    off = 0
    for p in paths:
        for i in range(p.rows):
            for j in range(p.cols):
                rows[off + i][off + j] = p[i, j]
        off += p.rows
    return PathMatrix(field, rows)


def _path_inverse(f: PathMatrix, det: Poly) -> PathMatrix:
    return f.adjugate().scale(det.constant_term().inverse())


def validate_path(f: PathMatrix, f0: Mat, f1: Mat) -> PathCertificate:
    """Check the three path conditions exactly; raise CheckFailed on the first failure."""
    if f.shape != f0.shape or f.shape != f1.shape or f.rows != f.cols:
        raise ValueError("dimension mismatch between path and endpoints")
    checks: dict = {}
    at0, at1 = f.at(0), f.at(1)
    checks["endpoints"] = {"passed": at0 == f0 and at1 == f1, "at0": at0, "at1": at1}

    det = f.det()
    trace_check = {"passed": False, "det": det}
    manage_check: dict = {"passed": False}
    if det.is_unit():
        inv = _path_inverse(f, det)
        asym = inv * f.T
        tr = Poly(f.field)
        for i in range(f.rows):
            tr = tr + asym[i, i]
        trace_check["trace"] = tr
        expected = None
        if not f0.det().is_zero():
            expected = trace_invariant(f0)
            trace_check["expected"] = expected
        trace_check["passed"] = tr.is_constant() and expected is not None and tr == Poly(f.field, (expected,))
        if not trace_check["passed"]:
            trace_check["reason"] = "trace of the asymmetry is not the constant endpoint trace"
        man = manageability_of_inverse(inv.to_rows(), lambda x: x.is_zero(), lambda x: x.is_unit())
        manage_check.update(passed=man.manageable, column=man.column, reason=man.reason)
        manage_check["inverse"] = inv
    else:
        trace_check["reason"] = f"det F(t) = {det.to_str('t')} is not a unit of k[t]"
        manage_check["reason"] = "F(t) is not invertible over k[t]"
    checks["trace"] = trace_check
    checks["manageable"] = manage_check
    if not checks["endpoints"]["passed"]:
        checks["endpoints"]["reason"] = "F(0), F(1) differ from the given endpoints"
    for cond, key in ((1, "endpoints"), (2, "trace"), (3, "manageable")):
        if not checks[key]["passed"]:
            raise CheckFailed(cond, checks[key], checks)
    return PathCertificate(f, f0, f1, checks)


# block reduction ------------------------------------------------------------------


@dataclass(frozen=True)
class Block:
    """One orthogonal summand: kind is 'A', 'B', 'C' (elementary cases) or a residual
    'symmetric' (asymmetry I) / 'skew' (asymmetry -I)."""

    kind: str
    gram: Mat
    case: Lemma15Case | None = None


@dataclass(frozen=True)
class Reduction:
    congruence: Mat  # P with P F P^t = blockdiag(blocks)
    blocks: tuple[Block, ...]

    def assembled(self) -> Mat:
        return Mat.block_diag(self.congruence.field, [b.gram for b in self.blocks])


class _Budget:
    def __init__(self, steps: int):
        self.left = steps

    def spend(self, n: int = 1) -> bool:
        self.left -= n
        return self.left >= 0


def _col(vs: Sequence[Sequence[FieldElem]], field: Field) -> Mat:
    return Mat.from_columns(field, vs)


def _matvec(a: Mat, v: Sequence[FieldElem]) -> list[FieldElem]:
    out = []
    for i in range(a.rows):
        acc = a.field.zero
        for j in range(a.cols):
            if not a[i, j].is_zero() and not v[j].is_zero():
                acc = acc + a[i, j] * v[j]
        out.append(acc)
    return out


def _leading_index(vs) -> int:
    return min((next((i for i, x in enumerate(v) if not x.is_zero()), len(v)) for v in vs), default=0)


def _independent(vectors, field) -> bool:
    if not vectors:
        return True
    return Mat.from_columns(field, vectors).rank() == len(vectors)


def _contiguous_split(g: Mat) -> list[list[int]]:
    """Finest split of range(n) into consecutive index blocks with F block diagonal."""
    n = g.rows
    blocks, start = [], 0
    for k in range(1, n + 1):
        if k == n or all(g[i, j].is_zero() and g[j, i].is_zero() for i in range(start, k) for j in range(k, n)):
            blocks.append(list(range(start, k)))
            start = k
    return blocks


def classify_block(g: Mat) -> Block | None:
    """Recognise a Gram block already in one of the elementary shapes."""
    n = g.rows
    field = g.field
    if g.det().is_zero():
        return None
    sigma = mat_inverse(g) * g.T
    ident = Mat.identity(field, n)
    if sigma == ident:
        return Block("symmetric", g)
    if sigma == -ident:
        return Block("skew", g)
    if n % 2 == 0:
        a = Lemma15Case("A", n)
        if lemma15_verify(g, a).ok:
            return Block("A", g, a)
        c = lemma15_verify(g, Lemma15Case("C", n // 2))
        p = c.diagnostics.get("p")
        if c.ok and p != 1 and p != -1:
            return Block("C", g, Lemma15Case("C", n // 2, p))
    elif n >= 3:
        b = Lemma15Case("B", n)
        if lemma15_verify(g, b).ok:
            return Block("B", g, b)
    return None


def _jordan_chains(a: Mat, lam: FieldElem) -> list[list[list[FieldElem]]]:
    """Jordan chains of A for eigenvalue lam, longest first.

    Each chain is [N^(k-1) v, ..., N v, v] with N = A - lam, so that in this
    basis A is a Jordan block with its 1s on the superdiagonal.
    """
    field = a.field
    n = a.rows
    nil = a - Mat.identity(field, n) * lam
    kernels = [[]]
    power = Mat.identity(field, n)
    while True:
        power = power * nil
        k = power.nullspace()
        kernels.append(k)
        if len(k) == len(kernels[-2]) or len(k) == n:
            break
    top = len(kernels) - 1
    chains: list[tuple[list[FieldElem], int]] = []
    for level in range(top, 0, -1):
        current = list(kernels[level - 1])
        for v, length in chains:
            w = v
            for _ in range(length - level):
                w = _matvec(nil, w)
            current.append(w)
        for cand in kernels[level]:
            if _independent(current + [cand], field):
                current.append(cand)
                chains.append((cand, level))
    out = []
    for v, length in chains:
        seq = [v]
        for _ in range(length - 1):
            seq.append(_matvec(nil, seq[-1]))
        out.append(list(reversed(seq)))
    return out


def _skew_split(g: Mat, basis: list[list[FieldElem]], field: Field) -> list[list[list[FieldElem]]]:
    """Symplectic basis pairs (x, y) with x^t F y = 1 for a nondegenerate skew block."""
    beta = lambda u, v: _dot(u, _matvec(g, v))  # noqa: E731
    remaining = list(basis)
    pairs = []
    while remaining:
        x = remaining.pop(0)
        idx = next((i for i, y in enumerate(remaining) if not beta(x, y).is_zero()), None)
        if idx is None:
            raise NotReduced("skew block is degenerate")
        y = remaining.pop(idx)
        c = beta(x, y).inverse()
        y = [c * e for e in y]
        new = []
        for z in remaining:
            # z - beta(z, y) x + beta(z, x) y is orthogonal to x and y
            bzy, bzx = beta(z, y), beta(z, x)
            new.append([zi - bzy * xi + bzx * yi for zi, xi, yi in zip(z, x, y)])
        remaining = new
        pairs.append([x, y])
    return pairs


def _dot(u, v):
    acc = u[0].field.zero if u else None
    for a, b in zip(u, v):
        if not a.is_zero() and not b.is_zero():
            acc = acc + a * b
    return acc


def _candidate_vectors(dim: int, field: Field):
    """Deterministic probe vectors: unit vectors, then e_i + c e_j for small c."""
    zero, one = field.zero, field.one
    for i in range(dim):
        yield [one if k == i else zero for k in range(dim)]
    for i, j in itertools.permutations(range(dim), 2):
        for c in (1, -1, 2, -2):
            v = [zero] * dim
            v[i] = one
            v[j] = field(c)
            yield v


def _split_unipotent(g: Mat, eps: int, budget: _Budget) -> list[tuple[str, list[list[FieldElem]]]]:
    """Split a form whose asymmetry has the single eigenvalue eps into
    orthogonal single-Jordan-block pieces plus a diagonalizable residual.

    Returns (kind, basis-columns) pieces in the coordinates of ``g``.
    """
    field = g.field
    n = g.rows
    pieces: list[tuple[str, list[list[FieldElem]]]] = []
    # W: current subspace as columns in coordinates of g
    w = [[field.one if k == i else field.zero for k in range(n)] for i in range(n)]
    while w:
        wm = _col(w, field)
        gw = wm.T * g * wm
        sigma = mat_inverse(gw) * gw.T
        nil = sigma - Mat.identity(field, len(w)) * eps
        struct = jordan_structure(sigma, [(field(eps), len(w))])
        top = struct[field(eps)][0]
        if top == 1:
            kind = "symmetric" if eps == 1 else "skew"
            pieces.append((kind, w))
            return pieces
        good = (eps == -1 and top % 2 == 0) or (eps == 1 and top % 2 == 1)
        if not good:
            raise NotReduced(f"Jordan block of size {top} for eigenvalue {eps} needs a paired split",
                             residual=gw, partial=pieces)
        nil_pow = nil ** (top - 1)
        found = None
        for x in _candidate_vectors(len(w), field):
            if not budget.spend():
                raise NotReduced("step budget exhausted while splitting", residual=gw, partial=pieces)
            if all(c.is_zero() for c in _matvec(nil_pow, x)):
                continue
            chain = [x]
            for _ in range(top - 1):
                chain.append(_matvec(nil, chain[-1]))
            chain.reverse()
            zm = _col(chain, field)
            gz = zm.T * gw * zm
            if not gz.det().is_zero():
                found = chain
                break
        if found is None:
            raise NotReduced("no nondegenerate cyclic subspace found", residual=gw, partial=pieces)
        zm = _col(found, field)
        # orthogonal complement inside W: {y : Z^t G_W y = 0}
        comp = (zm.T * gw).nullspace()
        to_g = lambda v: _matvec(wm, v)  # noqa: E731
        pieces.append(("A" if eps == -1 else "B", [to_g(v) for v in found]))
        w = [to_g(v) for v in comp]
    return pieces


def reduce_to_blocks(f, budget: int = DEFAULT_BUDGET) -> Reduction:
    """Congruence P with P F P^t block diagonal along the characteristic spaces of
    the asymmetry, each block of an elementary case shape or a symmetric/skew residual."""
    form = as_form(f)
    g = form.gram
    field = form.field
    n = form.dim

    # the input may already be a direct sum of recognisable blocks
    split = _contiguous_split(g)
    recognised = [classify_block(g.submatrix(ix, ix)) for ix in split]
    if all(b is not None for b in recognised):
        return Reduction(Mat.identity(field, n), tuple(recognised))

    sigma = mat_inverse(g) * g.T
    roots = charpoly(sigma).roots()
    if sum(m for _, m in roots) != n:
        raise CharpolyDoesNotSplit("the characteristic polynomial of the asymmetry does not split")
    steps = _Budget(budget)
    ident = Mat.identity(field, n)
    spaces = {lam: (sigma - ident * lam) ** mult for lam, mult in roots}
    spaces = {lam: m.nullspace() for lam, m in spaces.items()}

    groups = []  # (leading index, kind, data)
    seen = set()
    for lam, _ in roots:
        if lam in seen:
            continue
        seen.add(lam)
        if lam == 1 or lam == -1:
            groups.append((_leading_index(spaces[lam]), "eps", (int(1 if lam == 1 else -1), spaces[lam])))
            continue
        inv = lam.inverse()
        if inv not in spaces:
            raise NotReduced(f"eigenvalue {lam} has no partner {inv}")
        seen.add(inv)
        u, v = spaces[lam], spaces[inv]
        if _leading_index(v) < _leading_index(u):
            u, v = v, u
        groups.append((min(_leading_index(u), _leading_index(v)), "pair", (u, v)))
    groups.sort(key=lambda gr: gr[0])

    final_cols: list[list[FieldElem]] = []
    kinds: list[tuple[str, int, FieldElem | None]] = []
    for _, kind, data in groups:
        if kind == "pair":
            u, v = data
            um, vm = _col(u, field), _col(v, field)
            vm = vm * mat_inverse(um.T * g * vm)  # now U^t F V = I
            y = vm.T * g * um
            p = charpoly(y).roots()[0][0]
            chains = _jordan_chains(y, p)
            s = _col([vec for ch in chains for vec in ch], field)
            uj, vj = um * s, vm * mat_inverse(s).T
            off = 0
            for ch in chains:
                k = len(ch)
                final_cols.extend(list(uj.col(off + j)) for j in range(k))
                final_cols.extend(list(vj.col(off + j)) for j in range(k))
                kinds.append(("C", 2 * k, p))
                off += k
            continue
        eps, basis = data
        bm = _col(basis, field)
        gb = bm.T * g * bm
        for piece_kind, piece in _split_unipotent(gb, eps, steps):
            cols = [_matvec(bm, vv) for vv in piece]
            if piece_kind == "skew":
                sub = _col(cols, field)
                gs = sub.T * g * sub
                local = [[field.one if k == i else field.zero for k in range(len(cols))] for i in range(len(cols))]
                for pair in _skew_split(gs, local, field):
                    final_cols.extend(_matvec(sub, vv) for vv in pair)
                    kinds.append(("skew", 2, None))
            else:
                final_cols.extend(cols)
                kinds.append((piece_kind, len(cols), None))

    q = _col(final_cols, field)
    pmat = q.T
    reduced = pmat * g * q
    out_blocks = []
    off = 0
    for kind, size, p in kinds:
        ix = list(range(off, off + size))
        gb = reduced.submatrix(ix, ix)
        if kind == "C":
            case = Lemma15Case("C", size // 2, p)
        elif kind in ("A", "B"):
            case = Lemma15Case(kind, size)
        else:
            case = None
        block = Block(kind, gb, case)
        if case is not None and not lemma15_verify(gb, case).ok:
            raise NotReduced(f"block {case.label()} did not land in its normal shape", residual=gb)
        out_blocks.append(block)
        off += size
    red = Reduction(pmat, tuple(out_blocks))
    if red.assembled() != reduced:
        raise NotReduced("characteristic spaces are not orthogonal", residual=reduced)
    return red


def _block_path(block: Block) -> PathMatrix:
    if block.kind == "C":
        return path_jordan_pair(block.case.p, block.case.size)
    if block.kind in ("A", "B"):
        return path_anti_triangular(block.gram)
    try:
        return path_anti_triangular(block.gram)
    except NotAntiTriangular:
        return PathMatrix.constant(block.gram)


def _is_manageable_block(block: Block) -> bool:
    inv = mat_inverse(block.gram)
    return manageability_of_inverse(inv.to_rows(), lambda x: x.is_zero(), lambda x: not x.is_zero()).manageable


def path_for_form(f, budget: int = DEFAULT_BUDGET) -> tuple[Mat, PathMatrix, Reduction]:
    """Reduce F to blocks and assemble the blockwise paths.

    Returns (P, F(t), reduction) with F(1) = P F P^t.  Blocks are permuted so
    that a manageable block comes last whenever one exists.
    """
    red = reduce_to_blocks(f, budget)
    blocks = list(red.blocks)
    sizes = [b.gram.rows for b in blocks]
    offsets = [sum(sizes[:i]) for i in range(len(blocks))]
    order = list(range(len(blocks)))
    manageable = [i for i in order if _is_manageable_block(blocks[i])]
    if manageable and manageable[-1] != order[-1]:
        last = manageable[-1]
        order = [i for i in order if i != last] + [last]
    perm_rows = [offsets[i] + k for i in order for k in range(sizes[i])]
    field = red.congruence.field
    n = red.congruence.rows
    perm = Mat(field, [[1 if j == r else 0 for j in range(n)] for r in perm_rows])
    pmat = perm * red.congruence
    path = direct_sum_paths([_block_path(blocks[i]) for i in order])
    return pmat, path, Reduction(pmat, tuple(blocks[i] for i in order))


def block_congruence(g0: Mat, g1: Mat, budget: int = DEFAULT_BUDGET) -> Mat | None:
    """P with g0 = P g1 P^t when both reduce to the very same block matrix."""
    try:
        r0, r1 = reduce_to_blocks(g0, budget), reduce_to_blocks(g1, budget)
    except (NotReduced, CharpolyDoesNotSplit):
        return None
    q0, q1 = _sorted_blocks(r0), _sorted_blocks(r1)
    if q0 is None or q1 is None or q0[1] != q1[1]:
        return None
    p = mat_inverse(q0[0]) * q1[0]
    return p if p * g1 * p.T == g0 else None


def _sorted_blocks(red: Reduction):
    """(Q, G) with Q f Q^t = G, the blocks of ``red`` put in a canonical order."""
    if not red.blocks:
        return None
    starts, pos = [], 0
    for b in red.blocks:
        starts.append(pos)
        pos += b.gram.rows
    field = red.congruence.field
    local, grams = [], []
    for b in red.blocks:
        n = b.gram.rows
        if b.kind == "skew":
            unit = [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
            rows = [v for pair in _skew_split(b.gram, unit, field) for v in pair]
            m = Mat(field, rows)
        else:
            m = Mat.identity(field, n)
        local.append(m)
        grams.append(m * b.gram * m.T)
    order = sorted(range(len(grams)), key=lambda i: str(grams[i].to_rows()))
    perm = [[field.zero] * pos for _ in range(pos)]
    row = 0
    for i in order:
        for k in range(red.blocks[i].gram.rows):
            perm[row][starts[i] + k] = field.one
            row += 1
    q = Mat(field, perm) * Mat.block_diag(field, local) * red.congruence
    return q, Mat.block_diag(field, [grams[i] for i in order])


@dataclass(frozen=True)
class HomotopyVerdict:
    status: str  # "Equivalent" | "NotEquivalent" | "Unknown"
    reason: str
    certificates: tuple[PathCertificate, ...] = ()
    congruences: tuple[Mat, ...] = ()
    connected: bool = False
    notes: tuple[str, ...] = dc_field(default=())

    @property
    def certificate(self) -> PathCertificate | None:
        return self.certificates[0] if self.certificates else None


def homotopy_decide(f0, f1, budget: int = DEFAULT_BUDGET) -> HomotopyVerdict:
    """Decide homotopy equivalence of B(E_q, F0) and B(E_q, F1) as far as possible.

    Different sizes: NotEquivalent.  Same size and the asymmetries share their
    characteristic polynomial: Equivalent, with validated paths when both
    sides reduce to elementary blocks.  Anything else: Unknown.
    """
    a, b = as_form(f0), as_form(f1)
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    t0, t1 = trace_invariant(a), trace_invariant(b)
    if t0 != t1:
        raise DomainError(f"trace invariants differ ({t0} vs {t1}); not Galois objects over the same B(E)")
    if a.dim != b.dim:
        return HomotopyVerdict("NotEquivalent", "size")
    cp0 = charpoly(mat_inverse(a.gram) * a.gram.T)
    cp1 = charpoly(mat_inverse(b.gram) * b.gram.T)
    if cp0 != cp1:
        return HomotopyVerdict("Unknown", "same size and trace, different characteristic polynomials")

    notes = []
    certs = []
    congruences = []
    try:
        for form in (a, b):
            p, path, _ = path_for_form(form, budget)
            certs.append(validate_path(path, path.at(0), path.at(1)))
            congruences.append(p)
    except (NotReduced, CharpolyDoesNotSplit, CheckFailed) as exc:
        notes.append(f"no path certificate: {type(exc).__name__}: {exc}")
        return HomotopyVerdict("Equivalent", "same characteristic polynomial", notes=tuple(notes))

    connected = certs[0].endpoint0 == certs[1].endpoint0
    if not connected:
        bridge = block_congruence(certs[0].endpoint0, certs[1].endpoint0, budget)
        if bridge is None:
            notes.append("paths reach t = 0 forms not shown to be congruent")
        else:
            # B(E_q, F) only depends on F up to congruence, so a bridge joins the two legs
            connected = True
            congruences.append(bridge)
            notes.append("t = 0 forms joined by the congruence listed last")
    # constant legs carry no information
    ordered = [c for c in certs if c.path.max_degree() > 0] or certs[:1]
    return HomotopyVerdict("Equivalent", "same characteristic polynomial", tuple(ordered),
                           tuple(congruences), connected, tuple(notes))
