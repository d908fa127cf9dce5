"""Twisted standard bases of Hecke algebras of Coxeter groups and their positivity."""

from .biclosed import (
    BiclosedSet,
    Complement,
    DepthExceeded,
    DoubleTwist,
    ExplicitOnBall,
    HalfSpace,
    InversionSet,
    all_reflections,
    double_twist,
    empty_set,
    twisted_length,
    twisted_order_on_ball,
)
from .coxeter import INF, ConfigError, CoxeterSystem, Element, preset
from .hecke import C_BASIS, CPRIME_BASIS, H_BASIS, T_BASIS, HeckeElement, expand_in_basis, hecke_algebra
from .laurent import LaurentPoly, parse_laurent
from .lifts import BraidWord, TwistedT, eval_hecke, lift, lift_all, parse_braid, t_twisted

__version__ = "0.1.0"

__all__ = [
    "BiclosedSet", "Complement", "DepthExceeded", "DoubleTwist", "ExplicitOnBall", "HalfSpace",
    "InversionSet", "all_reflections", "double_twist", "empty_set", "twisted_length",
    "twisted_order_on_ball", "INF", "ConfigError", "CoxeterSystem", "Element", "preset",
    "C_BASIS", "CPRIME_BASIS", "H_BASIS", "T_BASIS", "HeckeElement", "expand_in_basis",
    "hecke_algebra", "LaurentPoly", "parse_laurent", "BraidWord", "TwistedT", "eval_hecke",
    "lift", "lift_all", "parse_braid", "t_twisted",
]
