from .field import QQ, GF, Field
from .poly import Caps, Poly, Ring
from .groebner import buchberger, normal_form
from .matrix import RingMatrix
from .ideal import (NEG_INF, Height, Ideal, height_of, ideal_membership, krull_dimension,
                    minors_ideal, radical_membership)
from .linear import ColumnSpan, in_column_span, solve_linear, syzygies

__all__ = [
    "QQ", "GF", "Field", "Caps", "Poly", "Ring", "buchberger", "normal_form", "RingMatrix",
    "NEG_INF", "Height", "Ideal", "height_of", "ideal_membership", "krull_dimension",
    "minors_ideal", "radical_membership", "ColumnSpan", "in_column_span", "solve_linear",
    "syzygies",
]
