"""Finite self-referential sentence pools and their jump fixed points."""
from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Mapping, Optional, Sequence

import networkx as nx

from .kleene import (
    K3,
    Def,
    UnresolvedName,
    compile_def,
    eval_k3,
    info_leq,
    parse_def,
    references,
    render_def,
)

Valuation = dict[str, K3]

BRUTE_FORCE_CAP = 12
COMPONENT_CAP = 12
FIXED_POINT_CAP = 3 ** 12

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class PoolTooLarge(ValueError):
    pass


@dataclass
class Pool:
    """Ordered mapping from sentence names to their definitions."""

    sentences: dict[str, Def]
    _compiled: Optional[list] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.sentences:
            raise ValueError("a pool needs at least one sentence")
        for name, d in self.sentences.items():
            if not _NAME_RE.fullmatch(name) or name in ("TOP", "BOT", "True"):
                raise ValueError(f"bad sentence name {name!r}")
            missing = references(d) - self.sentences.keys()
            if missing:
                raise UnresolvedName(f"{name} refers to undefined {sorted(missing)}")

    @property
    def names(self) -> list[str]:
        return list(self.sentences)

    def __len__(self) -> int:
        return len(self.sentences)

    def __getitem__(self, name: str) -> Def:
        return self.sentences[name]

    def __contains__(self, name: str) -> bool:
        return name in self.sentences

    @classmethod
    def from_text(cls, defs: Mapping[str, str]) -> "Pool":
        return cls({name: parse_def(text) for name, text in defs.items()})

    @classmethod
    def from_json(cls, data: dict) -> "Pool":
        return cls.from_text(data["sentences"])

    @classmethod
    def load(cls, path: str | Path) -> "Pool":
        return cls.from_json(json.loads(Path(path).read_text(encoding="utf-8")))

    def to_json(self) -> dict:
        return {"sentences": {name: render_def(d) for name, d in self.sentences.items()}}

    def compiled(self) -> list:
        if self._compiled is None:
            index = {name: i for i, name in enumerate(self.sentences)}
            self._compiled = [compile_def(d, index) for d in self.sentences.values()]
        return self._compiled


def neutral(pool: Pool) -> Valuation:
    return {name: K3.NEITHER for name in pool.names}


def jump(pool: Pool, valuation: Mapping[str, K3]) -> Valuation:
    """Re-evaluate every definition under ``valuation``."""
    return {name: eval_k3(d, valuation) for name, d in pool.sentences.items()}


def least_fixed_point(pool: Pool) -> Valuation:
    """Iterate the jump from all-NEITHER until it stabilizes."""
    current = neutral(pool)
    for _ in range(len(pool) + 2):
        nxt = jump(pool, current)
        if nxt == current:
            return current
        current = nxt
    raise AssertionError("jump failed to stabilize; definitions are not monotone")


def valuation_leq(a: Mapping[str, K3], b: Mapping[str, K3]) -> bool:
    return all(info_leq(a[k], b[k]) for k in a)


def compatible(a: Mapping[str, K3], b: Mapping[str, K3]) -> bool:
    """No sentence is TRUE in one valuation and FALSE in the other."""
    return not any({a[k], b[k]} == {K3.TRUE, K3.FALSE} for k in a)


def info_join(a: Mapping[str, K3], b: Mapping[str, K3]) -> Valuation:
    if not compatible(a, b):
        raise ValueError("valuations conflict")
    return {k: a[k] if a[k] is not K3.NEITHER else b[k] for k in a}


@dataclass(frozen=True)
class FixedPointSet:
    points: tuple[Valuation, ...]
    minimum: int

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Valuation]:
        return iter(self.points)

    def __getitem__(self, i: int) -> Valuation:
        return self.points[i]

    @property
    def least(self) -> Valuation:
        return self.points[self.minimum]


def _order_key(names: Sequence[str]):
    return lambda val: tuple(val[n].code for n in names)


def _brute_force(pool: Pool) -> list[list[int]]:
    if len(pool) > BRUTE_FORCE_CAP:
        raise PoolTooLarge(f"{len(pool)} sentences exceed the brute-force cap of {BRUTE_FORCE_CAP}")
    comp = pool.compiled()
    out = []
    for vals in itertools.product((2, 0, 1), repeat=len(pool)):
        vals = list(vals)
        if all(f(vals) == x for f, x in zip(comp, vals)):
            out.append(vals)
    return out


def _by_components(pool: Pool) -> list[list[int]]:
    names = pool.names
    index = {n: i for i, n in enumerate(names)}
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(names)))
    for name, d in pool.sentences.items():
        for ref in references(d):
            graph.add_edge(index[name], index[ref])
    dag = nx.condensation(graph)
    # dependencies first; ties broken by pool position
    order = list(nx.lexicographical_topological_sort(dag.reverse(copy=True), key=lambda c: min(dag.nodes[c]["members"])))
    comp = pool.compiled()
    partial: list[list[int]] = [[1] * len(names)]
    for c in order:
        members = sorted(dag.nodes[c]["members"])
        cyclic = len(members) > 1 or graph.has_edge(members[0], members[0])
        if len(members) > COMPONENT_CAP:
            raise PoolTooLarge(f"a self-referential cluster of {len(members)} sentences exceeds {COMPONENT_CAP}")
        nxt = []
        for vals in partial:
            if not cyclic:
                (m,) = members
                vals[m] = comp[m](vals)
                nxt.append(vals)
                continue
            for combo in itertools.product((2, 0, 1), repeat=len(members)):
                trial = list(vals)
                for m, x in zip(members, combo):
                    trial[m] = x
                if all(comp[m](trial) == trial[m] for m in members):
                    nxt.append(trial)
        if len(nxt) > FIXED_POINT_CAP:
            raise PoolTooLarge(f"more than {FIXED_POINT_CAP} fixed points")
        partial = nxt
    return partial


def enumerate_fixed_points(pool: Pool, method: str = "components") -> FixedPointSet:
    """All valuations stable under the jump.

    ``components`` solves self-referential clusters in dependency order;
    ``brute`` tests all ``3**k`` valuations and serves as a cross-check.
    """
    if method == "components":
        raw = _by_components(pool)
    elif method == "brute":
        raw = _brute_force(pool)
    else:
        raise ValueError(f"unknown method {method!r}")
    names = pool.names
    points = sorted(({n: K3(x) for n, x in zip(names, vals)} for vals in raw), key=_order_key(names))
    least = least_fixed_point(pool)
    return FixedPointSet(tuple(points), points.index(least))
