"""Presentations of B(E) and B(E, F) by generators and quadratic-minus-constant relations."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import FieldMismatch, Singular, SizeTooSmall
from ..exact import Field
from ..linalg import Mat, mat_inverse
from . import words as W


@dataclass(frozen=True)
class Presentation:
    field: Field
    generators: tuple[str, ...]
    relations: tuple[tuple, ...]  # each relation: sorted tuple of (word, coeff)
    relation_names: tuple[str, ...] = ()

    @classmethod
    def build(cls, field, generators, relations, names=None) -> "Presentation":
        frozen = tuple(tuple(sorted(W.clean(r).items(), key=lambda kv: W.deglex_key(kv[0]))) for r in relations)
        names = tuple(names) if names is not None else tuple(f"r{i + 1}" for i in range(len(frozen)))
        return cls(field, tuple(generators), frozen, names)

    def relation(self, i: int) -> dict:
        return dict(self.relations[i])

    def relation_polys(self) -> list[dict]:
        return [dict(r) for r in self.relations]

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def with_relations(self, relations, names=None) -> "Presentation":
        return Presentation.build(self.field, self.generators, relations,
                                  names if names is not None else self.relation_names[:len(relations)])

    def format_relation(self, i: int) -> str:
        return W.to_str(self.relation(i), self.generators)


def _gen_names(symbol: str, rows: int, cols: int) -> list[str]:
    if rows <= 9 and cols <= 9:
        return [f"{symbol}{i + 1}{j + 1}" for i in range(rows) for j in range(cols)]
    return [f"{symbol}{i + 1}_{j + 1}" for i in range(rows) for j in range(cols)]


def _require(e: Mat, label: str):
    if not e.is_square():
        raise Singular(f"{label} is not square")
    if e.rows < 2:
        raise SizeTooSmall(f"{label} must have size >= 2")
    if e.det().is_zero():
        raise Singular(f"{label} is singular")


def _two_sided_relations(field, e: Mat, f: Mat, symbol: str):
    """Entries of F^-1 z^t E z - I_m and z F^-1 z^t E - I_n for z of shape n x m."""
    n, m = e.rows, f.rows
    finv = mat_inverse(f)
    gen = lambda i, j: i * m + j  # noqa: E731
    rels, names = [], []
    for i in range(m):
        for j in range(m):
            r: dict = {}
            for k in range(m):
                if finv[i, k].is_zero():
                    continue
                for l in range(n):
                    for s in range(n):
                        c = finv[i, k] * e[l, s]
                        if not c.is_zero():
                            W.add_into(r, {(gen(l, k), gen(s, j)): c})
            if i == j:
                W.add_into(r, {W.EMPTY: -field.one})
            rels.append(r)
            names.append(f"(F^-1 {symbol}^t E {symbol} - I)[{i + 1},{j + 1}]")
    for i in range(n):
        for j in range(n):
            r = {}
            for k in range(m):
                for l in range(m):
                    if finv[k, l].is_zero():
                        continue
                    for s in range(n):
                        c = finv[k, l] * e[s, j]
                        if not c.is_zero():
                            W.add_into(r, {(gen(i, k), gen(s, l)): c})
            if i == j:
                W.add_into(r, {W.EMPTY: -field.one})
            rels.append(r)
            names.append(f"({symbol} F^-1 {symbol}^t E - I)[{i + 1},{j + 1}]")
    return rels, names


def presentation_BEF(e: Mat, f: Mat, symbol: str = "z") -> Presentation:
    """B(E, F): generators z_ij (n x m), m^2 + n^2 relations."""
    if e.field != f.field:
        raise FieldMismatch(f"{e.field} vs {f.field}")
    _require(e, "E")
    _require(f, "F")
    rels, names = _two_sided_relations(e.field, e, f, symbol)
    return Presentation.build(e.field, _gen_names(symbol, e.rows, f.rows), rels, names)


def presentation_BE(e: Mat, symbol: str = "a") -> Presentation:
    """B(E) = B(E, E): generators a_ij, 2n^2 relations."""
    return Presentation.build(e.field, *_be_parts(e, symbol))


def _be_parts(e: Mat, symbol: str):
    _require(e, "E")
    rels, names = _two_sided_relations(e.field, e, e, symbol)
    names = [nm.replace("F^-1", "E^-1") for nm in names]
    return _gen_names(symbol, e.rows, e.rows), rels, names


def free_presentation(field: Field, generators) -> Presentation:
    return Presentation.build(field, generators, [])


def with_reversed_relation(p: Presentation, index: int = 0) -> Presentation:
    """Copy of p whose relation ``index`` has every word written backwards."""
    rels = p.relation_polys()
    rels[index] = {tuple(reversed(w)): c for w, c in rels[index].items()}
    return p.with_relations(rels, p.relation_names)


def without_relations(p: Presentation, keep: int) -> Presentation:
    """Copy of p keeping only its first ``keep`` relations."""
    return p.with_relations(p.relation_polys()[:keep], p.relation_names[:keep])
