"""Coactions on B(E, F) and exact checks of the Hopf and comodule-algebra identities."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from ..errors import DegreeOutOfRange
from ..linalg import Mat, mat_inverse
from . import words as W
from .presentation import Presentation, presentation_BE, presentation_BEF
from .rewriting import DEFAULT_BUDGET, DEFAULT_DEGREE_BOUND, AlgebraElement, RewriteSystem, complete


@dataclass(frozen=True)
class TensorElem:
    """Finite sum of (word ⊗ word ⊗ ...) with every leg a normal-form word."""

    systems: tuple[RewriteSystem, ...]
    terms: dict

    def is_zero(self) -> bool:
        return not self.terms

    def __sub__(self, other: "TensorElem") -> "TensorElem":
        return TensorElem(self.systems, W.sub(self.terms, other.terms))

    def __add__(self, other: "TensorElem") -> "TensorElem":
        return TensorElem(self.systems, W.add(self.terms, other.terms))

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorElem) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=lambda k: tuple(W.deglex_key(w) for w in k)):
            c = self.terms[key]
            legs = " ⊗ ".join(
                "*".join(s.presentation.generators[i] for i in w) or "1" for s, w in zip(self.systems, key))
            parts.append(legs if c.is_one() else f"({c})*{legs}")
        return " + ".join(parts)

    __repr__ = __str__


def reduce_tensor(systems, raw: dict) -> TensorElem:
    """Normalize every leg of a sum {(w1, w2, ...): c} of free-word tensors."""
    out: dict = {}
    for key, c in raw.items():
        legs = [s._nf_word(w) for s, w in zip(systems, key)]
        for combo in itertools.product(*(lg.items() for lg in legs)):
            coeff = c
            for _, cc in combo:
                coeff = coeff * cc
            W.add_into(out, {tuple(w for w, _ in combo): coeff})
    return TensorElem(tuple(systems), out)


def _check_degree(systems, raw):
    for i, s in enumerate(systems):
        deg = max((len(k[i]) for k in raw), default=0)
        if deg > s.confluent_up_to:
            raise DegreeOutOfRange(f"leg {i + 1} has degree {deg} beyond {s.confluent_up_to}")


def _left_image(poly, n: int, m: int) -> dict:
    """delta(z_ij) = sum_k a_ik ⊗ z_kj, extended multiplicatively to a polynomial in z."""
    raw: dict = {}
    for w, c in poly.items():
        choices = []
        for g in w:
            i, j = divmod(g, m)
            choices.append([(i * n + k, k * m + j) for k in range(n)])
        for combo in itertools.product(*choices):
            left = tuple(a for a, _ in combo)
            right = tuple(z for _, z in combo)
            W.add_into(raw, {(left, right): c})
    return raw


def _right_image(poly, n: int, m: int) -> dict:
    """rho(z_ij) = sum_k z_ik ⊗ b_kj."""
    raw: dict = {}
    for w, c in poly.items():
        choices = []
        for g in w:
            i, j = divmod(g, m)
            choices.append([(i * m + k, k * m + j) for k in range(m)])
        for combo in itertools.product(*choices):
            left = tuple(z for z, _ in combo)
            right = tuple(b for _, b in combo)
            W.add_into(raw, {(left, right): c})
    return raw


@dataclass(frozen=True)
class Verification:
    ok: bool
    checks: dict
    failures: tuple[str, ...] = ()
    details: dict = dc_field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def _verdict(checks: dict, failures: list, details=None) -> Verification:
    return Verification(all(checks.values()), checks, tuple(failures), details or {})


def _systems(e: Mat, f: Mat, degree_bound: int, budget: int, z_presentation: Presentation | None = None):
    h = complete(presentation_BE(e), degree_bound, budget)
    z = complete(z_presentation or presentation_BEF(e, f), degree_bound, budget)
    return h, z


def coaction_delta(e: Mat, f: Mat, elem: AlgebraElement) -> TensorElem:
    """Left B(E)-coaction on an element of B(E, F), reduced on both legs."""
    h = complete(presentation_BE(e), elem.system.degree_bound)
    raw = _left_image(elem.value, e.rows, f.rows)
    _check_degree((h, elem.system), raw)
    return reduce_tensor((h, elem.system), raw)


def coaction_rho(e: Mat, f: Mat, elem: AlgebraElement) -> TensorElem:
    """Right B(F)-coaction on an element of B(E, F)."""
    k = complete(presentation_BE(f, "b"), elem.system.degree_bound)
    raw = _right_image(elem.value, e.rows, f.rows)
    _check_degree((elem.system, k), raw)
    return reduce_tensor((elem.system, k), raw)


def verify_comodule_algebra(e: Mat, f: Mat, degree_bound: int = DEFAULT_DEGREE_BOUND,
                            budget: int = DEFAULT_BUDGET, z_presentation: Presentation | None = None) -> Verification:
    """delta sends every defining relation of B(E, F) to zero in B(E) ⊗ B(E, F); plus
    coassociativity and counit on the generators.

    ``z_presentation`` replaces the presentation of B(E, F) (relations checked and
    right-leg rewriting), which is how a corrupted relation set is tested.
    """
    h, z = _systems(e, f, degree_bound, budget, z_presentation)
    n, m = e.rows, f.rows
    field = e.field
    failures = []
    for name, rel in zip(z.presentation.relation_names, z.presentation.relation_polys()):
        if not reduce_tensor((h, z), _left_image(rel, n, m)).is_zero():
            failures.append(name)
    checks = {"relations_map_to_zero": not failures}

    coassoc = counit = True
    for i, j in itertools.product(range(n), range(m)):
        # (Δ ⊗ id) δ(z_ij) and (id ⊗ δ) δ(z_ij), as triple tensors of words
        lhs, rhs = {}, {}
        for k in range(n):
            for l in range(n):
                W.add_into(lhs, {((i * n + l,), (l * n + k,), (k * m + j,)): field.one})
                W.add_into(rhs, {((i * n + k,), (k * n + l,), (l * m + j,)): field.one})
        if reduce_tensor((h, h, z), lhs) != reduce_tensor((h, h, z), rhs):
            coassoc = False
            failures.append(f"coassociativity at z{i + 1}{j + 1}")
        # (ε ⊗ id) δ(z_ij) = sum_k δ_ik z_kj
        image = {}
        for k in range(n):
            if k == i:
                W.add_into(image, {(k * m + j,): field.one})
        if z.reduce(image) != z.reduce({(i * m + j,): field.one}):
            counit = False
            failures.append(f"counit at z{i + 1}{j + 1}")
    checks["coassociative"] = coassoc
    checks["counital"] = counit
    return _verdict(checks, failures)


def verify_right_comodule_algebra(e: Mat, f: Mat, degree_bound: int = DEFAULT_DEGREE_BOUND,
                                  budget: int = DEFAULT_BUDGET) -> Verification:
    """Mirror check for the right B(F)-coaction rho."""
    z = complete(presentation_BEF(e, f), degree_bound, budget)
    k = complete(presentation_BE(f, "b"), degree_bound, budget)
    failures = [name for name, rel in zip(z.presentation.relation_names, z.presentation.relation_polys())
                if not reduce_tensor((z, k), _right_image(rel, e.rows, f.rows)).is_zero()]
    return _verdict({"relations_map_to_zero": not failures}, failures)


def _antipode(e: Mat, transpose: bool = True) -> list[list[dict]]:
    """S(a) = E^-1 a^t E as degree-1 polynomials; without the transpose when asked."""
    n = e.rows
    einv = mat_inverse(e)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            p: dict = {}
            for k in range(n):
                for l in range(n):
                    c = einv[i, k] * e[l, j]
                    if not c.is_zero():
                        g = l * n + k if transpose else k * n + l
                        W.add_into(p, {(g,): c})
            row.append(p)
        out.append(row)
    return out


def hopf_structure_BE(e: Mat, degree_bound: int = DEFAULT_DEGREE_BOUND, budget: int = DEFAULT_BUDGET,
                      antipode: str = "standard") -> Verification:
    """Check Δ and ε respect the relations, coassociativity, counit and antipode axioms on generators.

    ``antipode="untransposed"`` uses E^-1 a E instead of E^-1 a^t E (negative control).
    """
    if antipode not in ("standard", "untransposed"):
        raise ValueError("antipode must be 'standard' or 'untransposed'")
    h = complete(presentation_BE(e), degree_bound, budget)
    n = e.rows
    field = e.field
    failures = []
    rels = list(zip(h.presentation.relation_names, h.presentation.relation_polys()))

    bad = [nm for nm, r in rels if not reduce_tensor((h, h), _left_image(r, n, n)).is_zero()]
    failures += [f"coproduct: {nm}" for nm in bad]
    checks = {"coproduct_respects_relations": not bad}

    bad = []
    for nm, r in rels:
        val = field.zero
        for w, c in r.items():
            if all(divmod(g, n)[0] == divmod(g, n)[1] for g in w):
                val = val + c
        if not val.is_zero():
            bad.append(nm)
    failures += [f"counit: {nm}" for nm in bad]
    checks["counit_respects_relations"] = not bad

    coassoc = counit = True
    for i, j in itertools.product(range(n), range(n)):
        lhs, rhs = {}, {}
        for k, l in itertools.product(range(n), range(n)):
            W.add_into(lhs, {((i * n + l,), (l * n + k,), (k * n + j,)): field.one})
            W.add_into(rhs, {((i * n + k,), (k * n + l,), (l * n + j,)): field.one})
        if reduce_tensor((h, h, h), lhs) != reduce_tensor((h, h, h), rhs):
            coassoc = False
            failures.append(f"coassociativity at a{i + 1}{j + 1}")
        # (ε ⊗ id)Δ(a_ij) = a_ij = (id ⊗ ε)Δ(a_ij): only k = i (resp. k = j) survives
        if {(i * n + j,): field.one} != h.reduce({(i * n + j,): field.one}):
            counit = False
            failures.append(f"counit at a{i + 1}{j + 1}")
    checks["coassociative"] = coassoc
    checks["counital"] = counit

    s = _antipode(e, transpose=(antipode == "standard"))
    left_ok = right_ok = True
    for i, j in itertools.product(range(n), range(n)):
        left, right = {}, {}
        for k in range(n):
            W.add_into(left, W.mul(s[i][k], {(k * n + j,): field.one}))
            W.add_into(right, W.mul({(i * n + k,): field.one}, s[k][j]))
        target = W.const(field, 1 if i == j else 0)
        if h.reduce(left) != target:
            left_ok = False
            failures.append(f"antipode (S*id) at ({i + 1},{j + 1})")
        if h.reduce(right) != target:
            right_ok = False
            failures.append(f"antipode (id*S) at ({i + 1},{j + 1})")
    checks["antipode_left"] = left_ok
    checks["antipode_right"] = right_ok
    return _verdict(checks, failures)


def _zmat_product(field, left: list[list[dict]], right: list[list[dict]]) -> list[list[dict]]:
    out = []
    for i in range(len(left)):
        row = []
        for j in range(len(right[0])):
            acc: dict = {}
            for k in range(len(right)):
                W.add_into(acc, W.mul(left[i][k], right[k][j]))
            row.append(acc)
        out.append(row)
    return out


def _const_mat(m: Mat) -> list[list[dict]]:
    return [[W.const(m.field, m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def _zmat(field, n: int, m: int, transpose: bool = False) -> list[list[dict]]:
    z = [[{(i * m + j,): field.one} for j in range(m)] for i in range(n)]
    return [list(r) for r in zip(*z)] if transpose else z


def gram_identities(e: Mat, f: Mat, degree_bound: int = DEFAULT_DEGREE_BOUND, budget: int = DEFAULT_BUDGET,
                    z_presentation: Presentation | None = None) -> Verification:
    """z^t E z = F and z F^-1 z^t = E^-1 entrywise in B(E, F)."""
    field = e.field
    n, m = e.rows, f.rows
    z = complete(z_presentation or presentation_BEF(e, f), degree_bound, budget)
    zt, zz = _zmat(field, n, m, True), _zmat(field, n, m)
    first = _zmat_product(field, _zmat_product(field, zt, _const_mat(e)), zz)
    second = _zmat_product(field, _zmat_product(field, zz, _const_mat(mat_inverse(f))), zt)
    einv = mat_inverse(e)
    bad1 = [f"(z^t E z - F)[{i + 1},{j + 1}]" for i, j in itertools.product(range(m), range(m))
            if z.reduce(W.sub(first[i][j], W.const(field, f[i, j])))]
    bad2 = [f"(z F^-1 z^t - E^-1)[{i + 1},{j + 1}]" for i, j in itertools.product(range(n), range(n))
            if z.reduce(W.sub(second[i][j], W.const(field, einv[i, j])))]
    return _verdict({"zt_E_z_equals_F": not bad1, "z_Finv_zt_equals_Einv": not bad2}, bad1 + bad2)


def canonical_preimage(e: Mat, f: Mat, degree_bound: int = DEFAULT_DEGREE_BOUND, budget: int = DEFAULT_BUDGET,
                       z_presentation: Presentation | None = None) -> Verification:
    """sum_j can(z_ij ⊗ (F^-1 z^t E)_jk) = a_ik ⊗ 1 for every i, k."""
    field = e.field
    n, m = e.rows, f.rows
    h, z = _systems(e, f, degree_bound, budget, z_presentation)
    w = _zmat_product(field, _zmat_product(field, _const_mat(mat_inverse(f)), _zmat(field, n, m, True)),
                      _const_mat(e))  # m x n, degree 1
    failures = []
    results = {}
    for i, k in itertools.product(range(n), range(n)):
        raw: dict = {}
        for j in range(m):
            # can(x ⊗ y) = δ(x)(1 ⊗ y)
            for l in range(n):
                for yw, yc in w[j][k].items():
                    W.add_into(raw, {((i * n + l,), (l * m + j,) + yw): yc})
        got = reduce_tensor((h, z), raw)
        want = reduce_tensor((h, z), {((i * n + k,), ()): field.one})
        results[(i + 1, k + 1)] = str(got)
        if got != want:
            failures.append(f"can preimage of a{i + 1}{k + 1} ⊗ 1")
    return _verdict({"generator_preimages": not failures}, failures, {"images": results})


@dataclass(frozen=True)
class CotensorReport:
    degree: int
    dimension: int
    basis: tuple[str, ...]
    contains_w: bool
    equals_w_span: bool
    expected_dimension: int

    @property
    def ok(self) -> bool:
        if self.degree == 0:
            return self.dimension == 0
        return self.contains_w and self.equals_w_span and self.dimension == self.expected_dimension


def cotensor_degree1(e: Mat, f: Mat, degree: int = 1, degree_bound: int = DEFAULT_DEGREE_BOUND,
                     budget: int = DEFAULT_BUDGET) -> CotensorReport:
    """Kernel of δ_V ⊗ id - id ⊗ δ on the degree <= ``degree`` part of V_E ⊗ B(E, F).

    V_E has basis v_1..v_n with δ_V(v_k) = sum_i v_i ⊗ a_ik.
    """
    if degree not in (0, 1):
        raise ValueError("only degrees 0 and 1 are supported")
    field = e.field
    n, m = e.rows, f.rows
    h, z = _systems(e, f, degree_bound, budget)
    zwords = [w for level in z.irreducible_words(degree) for w in level]
    domain = [(i, w) for i in range(n) for w in zwords]
    images = []
    for i, w in domain:
        raw: dict = {}
        for l in range(n):
            W.add_into(raw, {((l,), (l * n + i,), w): field.one})
        for (hw, zw), c in _left_image({w: field.one}, n, m).items():
            W.add_into(raw, {((i,), hw, zw): -c})
        # v-leg is a plain index; normalize the algebra legs only
        out: dict = {}
        for (vw, hw, zw), c in raw.items():
            for (hn, zn), cc in reduce_tensor((h, z), {(hw, zw): c}).terms.items():
                W.add_into(out, {(vw, hn, zn): cc})
        images.append(out)
    coords = sorted({k for img in images for k in img}, key=lambda k: (k[0], W.deglex_key(k[1]), W.deglex_key(k[2])))
    if coords:
        mat = Mat(field, [[img.get(k, field.zero) for img in images] for k in coords])
        kernel = mat.nullspace()
    else:
        kernel = [[field.one if r == c else field.zero for r in range(len(domain))] for c in range(len(domain))]

    def fmt(vec) -> str:
        parts = []
        for r, c in enumerate(vec):
            if c.is_zero():
                continue
            i, w = domain[r]
            zs = "*".join(z.presentation.generators[g] for g in w) or "1"
            parts.append((f"v{i + 1}⊗{zs}") if c.is_one() else f"({c})*v{i + 1}⊗{zs}")
        return " + ".join(parts) or "0"

    wvecs = []
    if degree >= 1:
        pos = {d: r for r, d in enumerate(domain)}
        for j in range(m):
            vec = [field.zero] * len(domain)
            for i in range(n):
                vec[pos[(i, (i * m + j,))]] = field.one
            wvecs.append(vec)
    contains = all(_in_span(kernel, v, field) for v in wvecs)
    equals = contains and len(kernel) == len(wvecs)
    return CotensorReport(degree, len(kernel), tuple(fmt(v) for v in kernel), contains, equals,
                          m if degree >= 1 else 0)


def _in_span(basis, v, field) -> bool:
    if not basis:
        return all(x.is_zero() for x in v)
    a = Mat.from_columns(field, basis)
    b = Mat.from_columns(field, list(basis) + [v])
    return a.rank() == b.rank()


__all__ = [
    "TensorElem",
    "Verification",
    "CotensorReport",
    "reduce_tensor",
    "coaction_delta",
    "coaction_rho",
    "verify_comodule_algebra",
    "verify_right_comodule_algebra",
    "hopf_structure_BE",
    "gram_identities",
    "canonical_preimage",
    "cotensor_degree1",
]
