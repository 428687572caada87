"""Satisfiability and provability in the S5 family.

Provability is decided semantically: a formula is provable in a system iff
it holds at every admissible isolator pair.  Countermodels and witnesses are
the least pair in (world cell, frame mask) order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .formula import Formula, Not, System, render, variables
from .isolator import ArityError, IsolatorPair
from .semantics import Signature, find_model, holds

MAX_ARITY = 3


@dataclass(frozen=True)
class Verdict:
    """Outcome of a query.

    For validity queries ``valid`` means provable and ``witness`` is a
    countermodel; for satisfiability queries ``valid`` means satisfiable and
    ``witness`` is a model.
    """

    query: str
    system: System
    valid: bool
    witness: Optional[IsolatorPair] = None
    formula: Optional[Formula] = field(default=None, repr=False, compare=False)

    def __bool__(self) -> bool:
        return self.valid

    def to_json(self) -> dict:
        out = {
            "query": self.query,
            "system": self.system.label,
            "formula": render(self.formula) if self.formula is not None else None,
            "valid": self.valid,
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def _signature(f: Formula, system: System, exhaustive: bool) -> Signature:
    sig = Signature.of(f, system.alphabet)
    if sig.n > MAX_ARITY:
        raise ArityError(f"formula has {sig.n} variables; the decision cap is {MAX_ARITY}")
    return sig


def _method(exhaustive: bool) -> str:
    return "exhaustive" if exhaustive else "auto"


def satisfiable(f: Formula, system: System, exhaustive: bool = False) -> Verdict:
    """Is ``f`` true at some admissible pair?

    ``exhaustive`` forces the frame-by-frame sweep (permitted up to 27
    cells; ternary n=3 takes minutes).
    """
    sig = _signature(f, system, exhaustive)
    model = find_model(f, system, sig, method=_method(exhaustive), allow_large=exhaustive)
    if model is not None:
        assert holds(f, model.world, model.frame, sig)
    return Verdict("sat", system, model is not None, model, f)


def valid(f: Formula, system: System, exhaustive: bool = False) -> Verdict:
    """Is ``f`` provable, i.e. true at every admissible pair?"""
    sig = _signature(f, system, exhaustive)
    counter = find_model(Not(f), system, sig, method=_method(exhaustive), allow_large=exhaustive)
    if counter is not None:
        assert not holds(f, counter.world, counter.frame, sig)
    return Verdict("valid", system, counter is None, counter, f)


def fix_valid(f: Formula, exhaustive: bool = False) -> Verdict:
    """Truth in every fixed point under every realization.

    Equivalent to provability in the full system with Min for as many
    variables as ``f`` mentions.
    """
    if not variables(f):
        raise ArityError("formula has no variables")
    return valid(f, System.S5ConGroundMin, exhaustive)
