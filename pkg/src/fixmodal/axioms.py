"""Axiom schemas and standard instances."""
from __future__ import annotations

from typing import Sequence

from .formula import (
    Box,
    Diamond,
    Formula,
    Implies,
    N,
    Not,
    System,
    T,
    F,
    And,
    conj,
)


def con(i: int = 1) -> Formula:
    return Not(And(T(i), F(i)))


def ground(i: int = 1) -> Formula:
    return Implies(And(Diamond(T(i)), Diamond(F(i))), Diamond(N(i)))


def min_axiom(indices: Sequence[int]) -> Formula:
    """Min for the given variable indices; repeats are allowed."""
    if not indices:
        raise ValueError("Min needs at least one variable")
    antecedent = conj(Diamond(N(i)) for i in indices)
    return Implies(antecedent, Diamond(conj(N(i) for i in indices)))


def min_n(n: int) -> Formula:
    return min_axiom(list(range(1, n + 1)))


def axiom_k(a: Formula, b: Formula) -> Formula:
    return Implies(Box(Implies(a, b)), Implies(Box(a), Box(b)))


def axiom_t(a: Formula) -> Formula:
    return Implies(Box(a), a)


def axiom_5(a: Formula) -> Formula:
    return Implies(Diamond(a), Box(Diamond(a)))


def instances(system: System, samples: Sequence[Formula], indices: Sequence[int]) -> list[Formula]:
    """Axiom instances of ``system`` built from ``samples`` over ``indices``.

    K is instantiated on every ordered pair of samples, T and 5 on every
    sample; Con and Ground on every index; Min on the full index list.
    """
    out: list[Formula] = []
    for a in samples:
        out.append(axiom_t(a))
        out.append(axiom_5(a))
        for b in samples:
            out.append(axiom_k(a, b))
    if system >= System.S5Con:
        out.extend(con(i) for i in indices)
    if system >= System.S5ConGround:
        out.extend(ground(i) for i in indices)
    if system >= System.S5ConGroundMin:
        out.append(min_axiom(list(indices)))
    return out
