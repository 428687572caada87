"""Modal formulas evaluated directly over a pool's fixed points.

Worlds are the fixed points; a realization sends each variable to a pool
sentence.  ``T(x)`` holds at a world iff the sentence is TRUE there, ``F(x)``
iff it is FALSE, and ``[]`` quantifies over all fixed points.
"""
from __future__ import annotations

from typing import Mapping, Optional, Union

from ..formula import And, AtomF, AtomT, Box, Formula, Not, Variable, variables
from .kleene import K3
from .pool import FixedPointSet, Pool, Valuation, enumerate_fixed_points

Assignment = Mapping[Union[Variable, int, str], str]


class UnassignedVariable(KeyError):
    pass


def _normalize(assignment: Assignment) -> dict[int, str]:
    out = {}
    for key, name in assignment.items():
        if isinstance(key, Variable):
            out[key.index] = name
        elif isinstance(key, str):
            out[int(key.lstrip("x"))] = name
        else:
            out[int(key)] = name
    return out


def _prepare(pool: Pool, f: Formula, assignment: Assignment) -> dict[int, str]:
    amap = _normalize(assignment)
    for var in variables(f):
        if var.index not in amap:
            raise UnassignedVariable(f"{var} has no sentence assigned")
        if amap[var.index] not in pool:
            raise KeyError(f"unknown sentence {amap[var.index]!r}")
    return amap


def _holds(f: Formula, world: Valuation, worlds: FixedPointSet, amap: dict[int, str], boxes: dict) -> bool:
    if isinstance(f, AtomT):
        return world[amap[f.var.index]] is K3.TRUE
    if isinstance(f, AtomF):
        return world[amap[f.var.index]] is K3.FALSE
    if isinstance(f, Not):
        return not _holds(f.sub, world, worlds, amap, boxes)
    if isinstance(f, And):
        return _holds(f.left, world, worlds, amap, boxes) and _holds(f.right, world, worlds, amap, boxes)
    if isinstance(f, Box):
        key = id(f)
        if key not in boxes:
            boxes[key] = all(_holds(f.sub, u, worlds, amap, boxes) for u in worlds)
        return boxes[key]
    raise TypeError(f"not a formula: {f!r}")


def pool_eval(
    pool: Pool,
    f: Formula,
    assignment: Assignment,
    world: Valuation,
    fixed_points: Optional[FixedPointSet] = None,
) -> bool:
    """Truth of ``f`` at one fixed point of the pool."""
    worlds = fixed_points if fixed_points is not None else enumerate_fixed_points(pool)
    amap = _prepare(pool, f, assignment)
    return _holds(f, world, worlds, amap, {})


def pool_valid(
    pool: Pool,
    f: Formula,
    assignment: Assignment,
    fixed_points: Optional[FixedPointSet] = None,
) -> bool:
    """Truth of ``f`` at every fixed point of the pool."""
    worlds = fixed_points if fixed_points is not None else enumerate_fixed_points(pool)
    amap = _prepare(pool, f, assignment)
    boxes: dict = {}
    return all(_holds(f, w, worlds, amap, boxes) for w in worlds)
