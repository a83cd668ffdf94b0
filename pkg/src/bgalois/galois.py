"""Decision procedures for Galois objects B(E, F) over B(E): classification data,
isomorphism, homotopy, and the cleft-object demonstration for O_q(SL(2))."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field as dc_field

from .errors import (
    DomainError,
    FieldMismatch,
    FieldNotEnumerable,
    NoRootInField,
    Singular,
    SizeTooSmall,
)
from .exact import FieldElem, Poly, PrimeField
from .forms import (
    AsymmetryReport,
    asymmetry,
    asymmetry_solution_space,
    congruence_witness_bruteforce,
    e_q,
    is_manageable,
    similar_asymmetries,
    solve_q,
    trace_invariant,
)
from .homotopy import HomotopyVerdict, block_congruence, homotopy_decide, path_anti_triangular, validate_path
from .linalg import Mat, jordan_block, jordan_structure, mat_inverse, similarity_invariants
from .ncalg import complete, dims_by_rewriting, presentation_BEF

__all__ = [
    "ClassificationReport",
    "IsoVerdict",
    "classify",
    "iso_decide",
    "homotopy_decide_galois",
    "cleft_triviality_demo",
]

REDUCTION_NOTE = ("any B(E) with trace -q-q^-1 is handled through B(E_q) by the Galois-object reduction; "
                  "the homotopy data are computed for the Gram matrices directly")


def _check_sizes(*mats: Mat):
    for m in mats:
        if not m.is_square():
            raise Singular(f"matrix of shape {m.shape} is not square")
        if m.rows < 2:
            raise SizeTooSmall("Gram matrices must have size >= 2")
        if m.det().is_zero():
            raise Singular("Gram matrix is singular")
    fields = {m.field for m in mats}
    if len(fields) > 1:
        raise FieldMismatch(" vs ".join(sorted(str(f) for f in fields)))


@dataclass(frozen=True)
class ClassificationReport:
    trace_E: FieldElem
    trace_F: FieldElem
    trace_match: bool
    q_roots: frozenset
    size: int
    manageable: bool
    cleft_possible: bool
    asymmetry: AsymmetryReport
    nonzero_evidence: tuple[int, ...] | None
    notes: tuple[str, ...] = ()


def classify(e: Mat, f: Mat, degree: int = 2, degree_bound: int = 4, budget: int = 1_000_000) -> ClassificationReport:
    """Invariants deciding whether (E, F) defines a Galois object over B(E), and its basic shape."""
    _check_sizes(e, f)
    notes = []
    te, tf = trace_invariant(e), trace_invariant(f)
    try:
        roots = frozenset(solve_q(e))
    except NoRootInField as exc:
        roots = frozenset()
        notes.append(f"q-equation has no root in {e.field}: {exc}")
    match = te == tf
    evidence = None
    if match:
        system = complete(presentation_BEF(e, f), degree_bound, budget)
        evidence = dims_by_rewriting(system, min(degree, system.confluent_up_to))
    else:
        notes.append("traces differ: B(E, F) is zero, no filtration evidence computed")
    return ClassificationReport(te, tf, match, roots, f.rows, bool(is_manageable(f)),
                                e.rows == f.rows, asymmetry(f), evidence, tuple(notes))


@dataclass(frozen=True)
class IsoVerdict:
    status: str  # "No" | "Yes" | "YesOverClosure" | "Unknown"
    reason: str | None = None
    witness: Mat | None = None
    evidence: dict = dc_field(default_factory=dict, compare=False)

    def __str__(self) -> str:
        return f"{self.status}({self.reason})" if self.reason else self.status


def _require_traces(e: Mat, *fs: Mat):
    te = trace_invariant(e)
    for f in fs:
        tf = trace_invariant(f)
        if tf != te:
            raise DomainError(f"trace {tf} of F differs from trace {te} of E")


def iso_decide(e: Mat, f1: Mat, f2: Mat, closed_field_semantics: bool = False) -> IsoVerdict:
    """Is B(E, F1) isomorphic to B(E, F2), i.e. is F1 = P F2 P^t for some invertible P?"""
    _check_sizes(e, f1, f2)
    _require_traces(e, f1, f2)
    evidence = {
        "invariants_F1": similarity_invariants(mat_inverse(f1) * f1.T),
        "invariants_F2": similarity_invariants(mat_inverse(f2) * f2.T),
    }
    if f1.rows != f2.rows:
        return IsoVerdict("No", "size", None, evidence)
    if not similar_asymmetries(f1, f2):
        return IsoVerdict("No", "dissimilar-asymmetries", None, evidence)
    if f1 == f2:
        return IsoVerdict("Yes", None, Mat.identity(f1.field, f1.rows), evidence)
    if isinstance(f1.field, PrimeField):
        try:
            p = congruence_witness_bruteforce(f1, f2)
        except FieldNotEnumerable:
            pass
        else:
            if p is None:
                return IsoVerdict("No", "exhaustive-search", None, evidence)
            return IsoVerdict("Yes", None, p, evidence)
    p = block_congruence(f1, f2)
    if p is not None:
        return IsoVerdict("Yes", None, p, evidence)
    if closed_field_semantics:
        return IsoVerdict("YesOverClosure", None, None, evidence)
    return IsoVerdict("Unknown", None, None, evidence)


def homotopy_decide_galois(e: Mat, f0: Mat, f1: Mat, budget: int = 1_000_000) -> HomotopyVerdict:
    _require_traces(e, f0, f1)
    verdict = homotopy_decide(f0, f1, budget)
    return dataclasses.replace(verdict, notes=verdict.notes + (REDUCTION_NOTE,))


def _squarefree(p: Poly) -> bool:
    return p.gcd(p.derivative()).degree == 0


def cleft_triviality_demo(q: FieldElem) -> dict:
    """Evidence that every cleft O_q(SL(2))-Galois object is homotopically trivial.

    Cleft objects have m = n = 2, so they are B(E_q, F) with F of size 2 and
    trace -q - q^-1.  The report is organised by the value of q.
    """
    if q.is_zero():
        raise ValueError("q must be nonzero")
    field = q.field
    e = e_q(q)
    trace = trace_invariant(e)
    x = Poly.x(field)
    cp = x * x - Poly(field, (trace,)) * x + Poly(field, (1,))
    out: dict = {"q": q, "E_q": e, "trace": trace, "charpoly": cp}
    one = field.one
    if q == one or q == -one:
        eps = -1 if q == one else 1
        out["branch"] = "q=1" if q == one else "q=-1"
        out["eigenvalue"] = eps
        classes = []
        # diagonalizable class: eps * I
        diag_rep = Mat(field, [[0, 1], [-1, 0]]) if eps == -1 else Mat.identity(field, 2)
        classes.append({"jordan": {field(eps): (1, 1)}, "representative": diag_rep,
                        "asymmetry": mat_inverse(diag_rep) * diag_rep.T})
        # single Jordan block J_2(eps): realisable only for eps = -1 (even size)
        space = asymmetry_solution_space(jordan_block(field, eps, 2))
        invertible = [s for s in space if not s.det().is_zero()]
        jordan_case = {"jordan": {field(eps): (2,)}, "solution_space_dimension": len(space)}
        if eps == -1:
            rep = Mat(field, [[0, 1], [-1, 1]])
            jordan_case["representative"] = rep
            jordan_case["asymmetry"] = mat_inverse(rep) * rep.T
            classes.append(jordan_case)
            iso = iso_decide(e, diag_rep, rep)
            hom = homotopy_decide_galois(e, rep, diag_rep)
            out["iso"] = iso
            out["homotopy"] = hom
            out["path_certificate"] = validate_path(path_anti_triangular(rep), diag_rep, rep)
        else:
            # with a one-dimensional solution space the basis vector decides invertibility
            conclusive = len(space) <= 1
            jordan_case["realisable"] = bool(invertible) if conclusive else None
            jordan_case["reason"] = ("every F with F^t = F J_2(1) is singular, so a single even "
                                     "Jordan block for eigenvalue 1 is not an asymmetry")
            out["excluded"] = [jordan_case]
            hom = homotopy_decide_galois(e, diag_rep, e)
            out["homotopy"] = hom
        out["classes"] = classes
        return out

    out["branch"] = "generic"
    out["squarefree"] = _squarefree(cp)
    sigma = mat_inverse(e) * e.T
    out["asymmetry"] = sigma
    out["jordan"] = jordan_structure(sigma)
    sample = Mat(field, [[0, 1], [-q.inverse(), 1]])
    out["sample_F"] = sample
    out["sample_similar"] = similar_asymmetries(sample, e)
    out["iso"] = iso_decide(e, sample, e, closed_field_semantics=True)
    out["homotopy"] = homotopy_decide_galois(e, sample, e)
    out["classes"] = [{"jordan": out["jordan"], "representative": e, "asymmetry": sigma}]
    return out
