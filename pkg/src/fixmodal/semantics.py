"""Finite semantics over isolator pairs.

A point of the semantics is a world cell ``c`` inside a frame tensor ``t``.
Atoms read the cell, boolean connectives are classical, and ``[]A`` holds
iff ``A`` holds at every cell of ``t``.  Both evaluators below work on
bitmasks over ``[v]^n``.

Two search routes find the least satisfying pair in ``(cell, frame mask)``
order: ``search_exhaustive`` walks every admissible frame, while
``search_symbolic`` guesses the truth value of each boxed subformula and
asks a frame oracle whether some admissible tensor realizes the guess.  The
routes are independent and must agree wherever both are feasible.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .formula import And, AtomF, AtomT, Box, Formula, Not, System, Variable, subformulas, variables
from .isolator import (
    ArityError,
    Condition,
    DEFAULT_CELL_CAP,
    IsolatorPair,
    NVAL,
    Tensor,
    admissible_masks,
    all_cells,
    cell_index,
    first_violation,
    full_mask,
    layer_mask,
)


@lru_cache(maxsize=None)
def atom_masks(n: int, v: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Per-coordinate masks of the cells where ``T(x_i)``, resp. ``F(x_i)``, hold."""
    if v == 3:
        t_vals, f_vals = {1}, {2}
    else:
        t_vals, f_vals = {1, 2}, {1, 3}
    tm = [0] * n
    fm = [0] * n
    for idx, cell in enumerate(all_cells(n, v)):
        for i, x in enumerate(cell):
            if x in t_vals:
                tm[i] |= 1 << idx
            if x in f_vals:
                fm[i] |= 1 << idx
    return tuple(tm), tuple(fm)


@dataclass(frozen=True)
class Signature:
    """Variable-to-coordinate layout for evaluating formulas."""

    variables: tuple[Variable, ...]
    v: int

    @property
    def n(self) -> int:
        return len(self.variables)

    def coordinate(self, var: Variable) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise KeyError(f"variable {var} is outside the signature") from None

    @classmethod
    def of(cls, f: Formula, v: int, extra: Sequence[Variable] = ()) -> "Signature":
        vs = sorted(set(variables(f)) | set(extra))
        return cls(tuple(vs), v)


def sat_mask(f: Formula, frame: int, sig: Signature) -> int:
    """Cells of ``frame`` at which ``f`` holds."""
    tm, fm = atom_masks(sig.n, sig.v)
    cache: dict[int, int] = {}

    def go(g: Formula) -> int:
        key = id(g)
        if key in cache:
            return cache[key]
        if isinstance(g, AtomT):
            r = tm[sig.coordinate(g.var)] & frame
        elif isinstance(g, AtomF):
            r = fm[sig.coordinate(g.var)] & frame
        elif isinstance(g, Not):
            r = frame & ~go(g.sub)
        elif isinstance(g, And):
            r = go(g.left) & go(g.right)
        else:
            r = frame if go(g.sub) == frame else 0
        cache[key] = r
        return r

    return go(f)


def holds(f: Formula, world: Sequence[int], frame: Tensor, sig: Signature | None = None) -> bool:
    if sig is None:
        sig = Signature.of(f, frame.v)
    return bool(sat_mask(f, frame.mask, sig) >> cell_index(world, frame.v) & 1)


def _pick(best: Optional[tuple[int, int]], cand: tuple[int, int]) -> tuple[int, int]:
    return cand if best is None or cand < best else best


def _to_pair(found: Optional[tuple[int, int]], sig: Signature) -> Optional[IsolatorPair]:
    if found is None:
        return None
    idx, mask = found
    return IsolatorPair(all_cells(sig.n, sig.v)[idx], Tensor(sig.n, sig.v, mask))


def search_exhaustive(f: Formula, system: System, sig: Signature, allow_large: bool = False) -> Optional[IsolatorPair]:
    """Least (cell, frame) satisfying ``f`` by walking every admissible frame."""
    best = None
    for mask in admissible_masks(system, sig.n, allow_large):
        m = sat_mask(f, mask, sig)
        if m:
            low = (m & -m).bit_length() - 1
            best = _pick(best, (low, mask))
    return _to_pair(best, sig)


# -- frame oracle ---------------------------------------------------------------

class FrameOracle:
    """Decides: is there an admissible tensor inside ``within`` meeting every set in ``meets``?

    For the Ground and Min conditions the search keeps a candidate region
    ``M``.  If ``M`` itself is admissible it is the answer.  Otherwise the
    first violated condition forces every admissible subset of ``M`` to
    avoid some layer, and the search branches on which one.
    """

    def __init__(self, system: System, n: int):
        self.system = system
        self.n = n
        self.v = system.alphabet
        self.full = full_mask(n, self.v)

    def _region(self, within: int, meets: Sequence[int]) -> Optional[int]:
        if any(not within & e for e in meets) or not within:
            return None
        if self.system <= System.S5Con:
            return within
        violation = first_violation(within, self.n, minimal=self.system is System.S5ConGroundMin)
        if violation is None:
            return within
        if violation.condition is Condition.GROUND:
            (j,) = violation.slices
            options = (layer_mask(j, 1, self.n), layer_mask(j, 2, self.n))
        else:
            options = tuple(layer_mask(j, NVAL, self.n) for j in violation.slices)
        for avoid in options:
            found = self._region(within & ~avoid, meets)
            if found is not None:
                return found
        return None

    def feasible(self, within: int, meets: Sequence[int]) -> bool:
        return self._region(within, meets) is not None

    def least(self, within: int, meets: Sequence[int]) -> Optional[int]:
        """Numerically least admissible mask inside ``within`` meeting ``meets``."""
        if not self.feasible(within, meets):
            return None
        meets = list(meets)
        for idx in reversed(range(self.v ** self.n)):
            bit = 1 << idx
            if not within & bit:
                continue
            if self.feasible(within & ~bit, meets):
                within &= ~bit
            else:
                meets.append(bit)
        return within


def _boxes(f: Formula) -> list[Box]:
    seen: list[Box] = []
    for g in subformulas(f):
        if isinstance(g, Box) and g not in seen:
            seen.append(g)
    return seen


def search_symbolic(f: Formula, system: System, sig: Signature) -> Optional[IsolatorPair]:
    """Least (cell, frame) satisfying ``f`` without enumerating frames."""
    oracle = FrameOracle(system, sig.n)
    tm, fm = atom_masks(sig.n, sig.v)
    full = oracle.full
    boxes = _boxes(f)

    def ext(g: Formula, beta: dict[Box, bool]) -> int:
        if isinstance(g, AtomT):
            return tm[sig.coordinate(g.var)]
        if isinstance(g, AtomF):
            return fm[sig.coordinate(g.var)]
        if isinstance(g, Not):
            return full & ~ext(g.sub, beta)
        if isinstance(g, And):
            return ext(g.left, beta) & ext(g.right, beta)
        return full if beta[g] else 0

    best: Optional[tuple[int, int]] = None

    def dfs(i: int, beta: dict[Box, bool], within: int, meets: list[int]) -> None:
        nonlocal best
        if i == len(boxes):
            target = within & ext(f, beta)
            idx = 0
            while target:
                if target & 1:
                    bit = 1 << idx
                    if best is not None and idx > best[0]:
                        return
                    mask = oracle.least(within, meets + [bit])
                    if mask is not None:
                        best = _pick(best, (idx, mask))
                        return
                target >>= 1
                idx += 1
            return
        box = boxes[i]
        inner = ext(box.sub, beta)
        beta[box] = True
        if oracle.feasible(within & inner, meets):
            dfs(i + 1, beta, within & inner, meets)
        beta[box] = False
        outside = full & ~inner
        if oracle.feasible(within, meets + [outside]):
            dfs(i + 1, beta, within, meets + [outside])
        del beta[box]

    dfs(0, {}, full, [])
    return _to_pair(best, sig)


def find_model(
    f: Formula,
    system: System,
    sig: Signature | None = None,
    method: str = "auto",
    allow_large: bool = False,
) -> Optional[IsolatorPair]:
    """Least satisfying isolator pair of ``f`` in ``system``, or ``None``."""
    if sig is None:
        sig = Signature.of(f, system.alphabet)
    if sig.v != system.alphabet:
        raise ValueError("signature alphabet does not match the system")
    if method == "auto":
        method = "exhaustive" if sig.v ** sig.n <= DEFAULT_CELL_CAP else "symbolic"
    if method == "exhaustive":
        return search_exhaustive(f, system, sig, allow_large)
    if method == "symbolic":
        if sig.n < 1:
            raise ArityError("formula has no variables")
        return search_symbolic(f, system, sig)
    raise ValueError(f"unknown search method {method!r}")

