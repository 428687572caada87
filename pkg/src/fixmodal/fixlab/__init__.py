"""Finite stand-in for the fixed-point construction: pools of self-referential
sentences, strong Kleene evaluation, the jump and its fixed points."""
from .classify import (
    AuditReport,
    Classification,
    classify,
    classify_pool,
    definability_audit,
    intrinsic_points,
    profile,
)
from .kleene import K3, AndD, Bot, Def, NotD, OrD, Top, TruthOf, eval_k3, parse_def, render_def
from .modal import pool_eval, pool_valid
from .pool import (
    FixedPointSet,
    Pool,
    PoolTooLarge,
    Valuation,
    compatible,
    enumerate_fixed_points,
    info_join,
    jump,
    least_fixed_point,
    valuation_leq,
)
from .realize import PrimeViolation, realize

__all__ = [
    "AndD", "AuditReport", "Bot", "Classification", "Def", "FixedPointSet", "K3", "NotD", "OrD",
    "Pool", "PoolTooLarge", "PrimeViolation", "Top", "TruthOf", "Valuation", "classify",
    "classify_pool", "compatible", "definability_audit", "enumerate_fixed_points", "eval_k3",
    "info_join", "intrinsic_points", "jump", "least_fixed_point", "parse_def", "pool_eval",
    "pool_valid", "profile", "realize", "render_def", "valuation_leq",
]
