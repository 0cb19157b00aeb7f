"""Exact genus-3 to genus-0 reduction of one-point 3-spin intersection numbers."""

from .algebra import KPoly, kpoly_arith, kpoly_eval, rat_arith
from .engine import (
    DEFAULT_RULES,
    Reducer,
    RecursionInapplicable,
    Rules,
    base_genus0,
    check_theorem3,
    expand_once,
    lhs_factor,
    normalize_correlator,
    reduce_u,
    theorem1_assemble,
)
from .state import (
    CorrelatorKey,
    EtaFactor,
    LinComb,
    UState,
    canonical_ustate,
    eta,
    lincomb_add,
    lincomb_scale,
)

__all__ = [
    "DEFAULT_RULES", "CorrelatorKey", "EtaFactor", "KPoly", "LinComb", "Reducer",
    "RecursionInapplicable", "Rules", "UState", "base_genus0", "canonical_ustate",
    "check_theorem3", "eta", "expand_once", "kpoly_arith", "kpoly_eval", "lhs_factor",
    "lincomb_add", "lincomb_scale", "normalize_correlator", "rat_arith", "reduce_u",
    "theorem1_assemble",
]
