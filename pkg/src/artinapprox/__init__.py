"""Exact tools for strong approximation of textile maps."""

from .approxchain import (
    build_ideal,
    closure_projection,
    counterexample_nonexistence,
    lift,
    obstruction_scan,
    stabilization_scan,
)
from .exactfield import QQ, NumberField
from .groebner import buchberger, eliminate, ideal_equal, ideal_member, is_trivial, solve_points
from .multipoly import GREVLEX, LEX, MPoly, PolyRing, block
from .sysfile import parse_solution, parse_system, render_system
from .textile import (
    TextileSystem,
    TruncatedSeries,
    counterexample_solution,
    evaluate,
    extract_coeffs,
    order_at_least,
)

__version__ = "0.1.0"

__all__ = [
    "GREVLEX", "LEX", "MPoly", "NumberField", "PolyRing", "QQ", "TextileSystem", "TruncatedSeries",
    "block", "buchberger", "build_ideal", "closure_projection", "counterexample_nonexistence",
    "counterexample_solution", "eliminate", "evaluate", "extract_coeffs", "ideal_equal",
    "ideal_member", "is_trivial", "lift", "obstruction_scan", "order_at_least", "parse_solution",
    "parse_system", "render_system", "solve_points", "stabilization_scan",
]
