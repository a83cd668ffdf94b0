"""Invariants of nondegenerate bilinear forms given by an invertible Gram matrix F.

The asymmetry of F is sigma = F^-1 F^t.  Congruence F -> P F P^t conjugates it
(sigma -> P^-t sigma P^t), so the similarity class of sigma is a congruence
invariant.  Over a non-closed field it is not a complete one: I_2 and
diag(1, 2) over F_3 have the same asymmetry but are not congruent.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

import numpy as np

from .errors import (
    FieldMismatch,
    FieldNotEnumerable,
    NoInvertibleSolution,
    NoRootInField,
    NotSquare,
    Singular,
    WrongSize,
)
from .exact import Field, FieldElem, Poly, PrimeField
from .linalg import Mat, SimilarityInvariants, jordan_block, mat_inverse, similar, similarity_invariants

__all__ = [
    "BilinearForm",
    "AsymmetryReport",
    "Manageability",
    "Lemma15Case",
    "Lemma15Check",
    "as_form",
    "asymmetry",
    "trace_invariant",
    "solve_q",
    "is_manageable",
    "similar_asymmetries",
    "congruence_witness_bruteforce",
    "iter_general_linear",
    "asymmetry_solution_space",
    "manageability_of_inverse",
    "lemma15_verify",
    "lemma15_solve",
    "jordan_pair_form",
    "e_q",
]


@dataclass(frozen=True)
class BilinearForm:
    """A nondegenerate bilinear form, stored by its Gram matrix.

    Single Jordan-block pieces of size 1 occur in block decompositions, so
    1x1 forms are accepted here; the Galois-object layer insists on size >= 2.
    """

    gram: Mat

    def __post_init__(self):
        if not self.gram.is_square():
            raise NotSquare(f"Gram matrix is {self.gram.rows}x{self.gram.cols}")
        if self.gram.rows < 1:
            raise WrongSize("empty Gram matrix")
        if self.gram.det().is_zero():
            raise Singular("Gram matrix is singular")

    @property
    def field(self) -> Field:
        return self.gram.field

    @property
    def dim(self) -> int:
        return self.gram.rows

    def congruent_image(self, p: Mat) -> "BilinearForm":
        """The form with Gram matrix P F P^t."""
        return BilinearForm(p * self.gram * p.T)


def as_form(f) -> BilinearForm:
    return f if isinstance(f, BilinearForm) else BilinearForm(f)


def e_q(q: FieldElem) -> Mat:
    """The 2x2 Gram matrix [[0, 1], [-q^-1, 0]] whose quantum group is O_q(SL(2))."""
    return Mat(q.field, [[0, 1], [-q.inverse(), 0]])


@dataclass(frozen=True)
class AsymmetryReport:
    sigma: Mat
    invariants: SimilarityInvariants
    self_reciprocal: bool
    det_one: bool
    reciprocal_sign: FieldElem = dc_field(compare=False, default=None)


def asymmetry(f) -> AsymmetryReport:
    form = as_form(f)
    sigma = mat_inverse(form.gram) * form.gram.T
    inv = similarity_invariants(sigma)
    cp = inv.charpoly
    # x^m p(1/x) = p(0) p(x); p(0) = (-1)^m det(sigma) = (-1)^m
    sign = cp.constant_term()
    self_rec = cp.reciprocal() == cp * sign
    return AsymmetryReport(sigma, inv, self_rec, sigma.det() == 1, sign)


def trace_invariant(f) -> FieldElem:
    form = as_form(f)
    return (mat_inverse(form.gram) * form.gram.T).trace()


def solve_q(e) -> tuple[FieldElem, ...]:
    """Roots in the field of q^2 + Tr(E^-1 E^t) q + 1.

    Raises NoRootInField when the quadratic is irreducible over the field.
    """
    tr = trace_invariant(e)
    field = tr.field
    quad = Poly(field, (1, tr, 1))
    roots = quad.roots()
    if not roots:
        raise NoRootInField(f"q^2 + ({tr})q + 1 has no root in {field}", discriminant=tr * tr - 4)
    return tuple(r for r, _ in roots)


@dataclass(frozen=True)
class Manageability:
    manageable: bool
    column: int | None  # 1-based column of the rightmost nonzero bottom-row entry of F^-1
    reason: str = ""

    def __bool__(self) -> bool:
        return self.manageable


def manageability_of_inverse(inverse_rows: Sequence[Sequence], is_zero: Callable, is_unit: Callable) -> Manageability:
    """The manageable predicate, phrased on the rows of F^-1 over any ring."""
    bottom = inverse_rows[-1]
    m = len(bottom)
    if not is_zero(bottom[m - 1]):
        return Manageability(False, None, "entry (m,m) of the inverse is nonzero")
    col = next((j for j in range(m - 1, -1, -1) if not is_zero(bottom[j])), None)
    if col is None:
        return Manageability(False, None, "bottom row of the inverse vanishes")
    if not is_unit(bottom[col]):
        return Manageability(False, col + 1, "rightmost nonzero bottom-row entry is not a unit")
    return Manageability(True, col + 1)


def is_manageable(f) -> Manageability:
    form = as_form(f)
    inv = mat_inverse(form.gram)
    return manageability_of_inverse(inv.to_rows(), lambda x: x.is_zero(), lambda x: not x.is_zero())


def similar_asymmetries(f1, f2) -> bool:
    """Similarity of the asymmetries.

    Always necessary for congruence; sufficient only over an algebraically
    closed field.
    """
    a, b = as_form(f1), as_form(f2)
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    if a.dim != b.dim:
        return False
    return similar(mat_inverse(a.gram) * a.gram.T, mat_inverse(b.gram) * b.gram.T)


# brute force ------------------------------------------------------------------------

_BRUTE_MAX_DIM = 3
_BRUTE_MAX_P = 5


def _as_int_array(m: Mat) -> np.ndarray:
    return np.array([[int(x.value) for x in row] for row in m.to_rows()], dtype=np.int64)


def congruence_witness_bruteforce(f1, f2) -> Mat | None:
    """Some P in GL_m(F_p) with F1 = P F2 P^t, or None after exhausting GL_m(F_p).

    The identity is tried first, then all matrices in lexicographic order of
    their row-major entries.
    """
    a, b = as_form(f1), as_form(f2)
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    field = a.field
    if not isinstance(field, PrimeField) or field.p > _BRUTE_MAX_P:
        raise FieldNotEnumerable(f"brute force needs F_p with p <= {_BRUTE_MAX_P}, got {field}")
    if a.dim != b.dim:
        return None
    m = a.dim
    if m > _BRUTE_MAX_DIM:
        raise FieldNotEnumerable(f"brute force limited to dimension <= {_BRUTE_MAX_DIM}")
    if a.gram == b.gram:
        return Mat.identity(field, m)
    p = field.p
    target = _as_int_array(a.gram)
    f2a = _as_int_array(b.gram)
    # enumerate the first row in the outer loop, the remaining rows vectorised
    rest = np.array(list(itertools.product(range(p), repeat=m * (m - 1))), dtype=np.int64)
    rest = rest.reshape(p ** (m * (m - 1)), m - 1, m)
    for first in itertools.product(range(p), repeat=m):
        ps = np.concatenate([np.broadcast_to(np.array(first, dtype=np.int64), (len(rest), 1, m)), rest], axis=1)
        img = np.einsum("nij,jk,nlk->nil", ps, f2a, ps) % p
        hits = np.nonzero((img == target).all(axis=(1, 2)))[0]
        if len(hits):
            cand = Mat(field, ps[hits[0]].tolist())
            assert cand * b.gram * cand.T == a.gram and cand.is_invertible()
            return cand
    return None


def iter_general_linear(field: PrimeField, m: int):
    """All of GL_m(F_p), in lexicographic order of row-major entries."""
    if not isinstance(field, PrimeField):
        raise FieldNotEnumerable(f"{field} cannot be enumerated")
    for entries in itertools.product(range(field.p), repeat=m * m):
        mat = Mat(field, [entries[i * m:(i + 1) * m] for i in range(m)])
        if not mat.det().is_zero():
            yield mat


# elementary case forms ----------------------------------------------------------------


@dataclass(frozen=True)
class Lemma15Case:
    """An elementary asymmetry type.

    A: one Jordan block of even size with eigenvalue -1.
    B: one Jordan block of odd size with eigenvalue +1.
    C: a pair of Jordan blocks of size ``size`` with eigenvalues p and p^-1
       (the Gram matrix then has dimension 2*size).
    """

    tag: str
    size: int
    p: FieldElem | None = None

    def __post_init__(self):
        if self.tag == "A":
            if self.size < 2 or self.size % 2:
                raise ValueError("case A needs an even size >= 2")
        elif self.tag == "B":
            if self.size < 1 or self.size % 2 == 0:
                raise ValueError("case B needs an odd size >= 1")
        elif self.tag == "C":
            if self.size < 1:
                raise ValueError("case C needs size >= 1")
            if self.p is not None and self.p.is_zero():
                raise ValueError("case C needs p != 0")
        else:
            raise ValueError(f"unknown case {self.tag!r}")

    @property
    def eigenvalue(self) -> int:
        return -1 if self.tag == "A" else 1

    @property
    def matrix_size(self) -> int:
        return 2 * self.size if self.tag == "C" else self.size

    def label(self) -> str:
        return f"{self.tag}{self.size}" + (f"(p={self.p})" if self.p is not None else "")


@dataclass(frozen=True)
class Lemma15Check:
    ok: bool
    diagnostics: dict

    def __bool__(self) -> bool:
        return self.ok


def jordan_pair_form(p: FieldElem, n: int) -> Mat:
    """[[0, I_n], [J_p, 0]] with J_p the n x n Jordan block of eigenvalue p."""
    field = p.field
    jp = jordan_block(field, p, n)
    rows = [[field.zero] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        rows[i][n + i] = field.one
        for j in range(n):
            rows[n + i][j] = jp[i, j]
    return Mat(field, rows)


def _anti_triangular_checks(g: Mat) -> dict:
    n = g.rows
    lower = all(g[i, j].is_zero() for i in range(n) for j in range(n) if i + j < n - 1)
    f1n = g[0, n - 1]
    pattern = (not f1n.is_zero()) and all(
        g[i, n - 1 - i] == (f1n if i % 2 == 0 else -f1n) for i in range(n))
    return {"lower_anti_triangular": lower, "anti_diagonal_pattern": pattern, "corner": f1n}


def lemma15_verify(f, case: Lemma15Case) -> Lemma15Check:
    """Check that F has the elementary shape for ``case``.

    Cases A/B: F is lower anti-triangular with anti-diagonal entries
    (-1)^(i+1) F_1n, det F = F_1n^n, and the asymmetry is similar to the single
    Jordan block of eigenvalue -1 (A) or +1 (B).  Whether the asymmetry equals
    that Jordan block exactly is reported under ``asymmetry_equals_jordan``.
    Case C: F is literally [[0, I_n], [J_p, 0]] with p read from F (and equal
    to ``case.p`` when that is given).
    """
    g = f.gram if isinstance(f, BilinearForm) else f
    if not g.is_square() or g.rows != case.matrix_size:
        raise WrongSize(f"case {case.label()} needs a {case.matrix_size}x{case.matrix_size} matrix, got {g.shape}")
    field = g.field
    n = case.size
    if case.tag == "C":
        p = g[n, 0]
        diag = {"p": p}
        if p.is_zero():
            diag["form_matches"] = False
            return Lemma15Check(False, diag)
        matches = g == jordan_pair_form(p, n)
        diag["form_matches"] = matches
        diag["p_matches_case"] = case.p is None or case.p == p
        return Lemma15Check(matches and diag["p_matches_case"], diag)

    diag = _anti_triangular_checks(g)
    if not (diag["lower_anti_triangular"] and diag["anti_diagonal_pattern"]):
        return Lemma15Check(False, diag)
    f1n = diag["corner"]
    det = g.det()
    diag["det_matches"] = det == f1n**n
    jb = jordan_block(field, case.eigenvalue, n)
    sigma = mat_inverse(g) * g.T
    diag["asymmetry_equals_jordan"] = sigma == jb
    diag["asymmetry_similar"] = diag["asymmetry_equals_jordan"] or similar(sigma, jb)
    ok = diag["det_matches"] and diag["asymmetry_similar"]
    return Lemma15Check(ok, diag)


def asymmetry_solution_space(sigma0: Mat) -> list[Mat]:
    """Basis of {F : F^t = F sigma0} (a linear condition on the entries of F)."""
    field = sigma0.field
    n = sigma0.rows
    idx = lambda i, j: i * n + j  # noqa: E731
    eqs = []
    for i in range(n):
        for j in range(n):
            row = [field.zero] * (n * n)
            row[idx(j, i)] = row[idx(j, i)] + 1
            for k in range(n):
                if not sigma0[k, j].is_zero():
                    row[idx(i, k)] = row[idx(i, k)] - sigma0[k, j]
            eqs.append(row)
    basis = Mat(field, eqs).nullspace()
    return [Mat(field, [v[i * n:(i + 1) * n] for i in range(n)]) for v in basis]


_COMBO_RANGE = range(-2, 3)


def lemma15_solve(case: Lemma15Case, field: Field | None = None, budget: int = 100_000) -> BilinearForm:
    """An invertible F realising ``case``.

    A/B: solves F^t = F J for the Jordan block J, tries each basis vector of
    the solution space, then integer combinations with coefficients in -2..2
    (lexicographic), and rescales the first invertible hit so that F_1n = 1.
    The asymmetry of the result is exactly J.  C: the block matrix
    [[0, I_n], [J_p, 0]], whose asymmetry is only similar to the Jordan pair.
    """
    if case.tag == "C":
        if case.p is None:
            raise ValueError("case C needs p")
        return BilinearForm(jordan_pair_form(case.p, case.size))
    if field is None:
        raise ValueError("cases A and B need a field")
    n = case.size
    jb = jordan_block(field, case.eigenvalue, n)
    basis = asymmetry_solution_space(jb)
    candidates = itertools.chain(
        iter(basis),
        (sum((b * c for b, c in zip(basis, combo) if c), Mat.zeros(field, n))
         for combo in itertools.product(_COMBO_RANGE, repeat=len(basis))),
    )
    for steps, cand in enumerate(candidates):
        if steps >= budget:
            break
        if cand.det().is_zero():
            continue
        corner = cand[0, n - 1]
        if not corner.is_zero():
            cand = cand * corner.inverse()
        assert mat_inverse(cand) * cand.T == jb
        return BilinearForm(cand)
    raise NoInvertibleSolution(f"no invertible F with F^-1 F^t = J_{n}({case.eigenvalue}) found over {field}")
