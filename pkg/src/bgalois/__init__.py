"""Exact classification of Galois objects B(E, F) over the quantum group B(E)."""

from .errors import AlgebraError
from .exact import GF, QQ, QQq, Field, FieldElem, Poly, field_from_json
from .forms import BilinearForm, e_q, is_manageable, solve_q, trace_invariant
from .galois import classify, cleft_triviality_demo, homotopy_decide_galois, iso_decide
from .homotopy import homotopy_decide, validate_path
from .linalg import Mat

__all__ = [
    "AlgebraError",
    "GF",
    "QQ",
    "QQq",
    "Field",
    "FieldElem",
    "Poly",
    "field_from_json",
    "BilinearForm",
    "e_q",
    "is_manageable",
    "solve_q",
    "trace_invariant",
    "classify",
    "cleft_triviality_demo",
    "homotopy_decide_galois",
    "iso_decide",
    "homotopy_decide",
    "validate_path",
    "Mat",
]
