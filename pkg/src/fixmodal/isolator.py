"""Extensional cells, intensional tensors, the prime conditions, and counting.

A cell is a tuple of extensional values, one per variable.  With the
consistency axiom the alphabet is ``1=T, 2=F, 3=N``; for bare S5 it is
``1=B (both), 2=T only, 3=F only, 4=N``.  A tensor is a set of cells over
``[v]^n`` and is stored as a bitmask: cell ``c`` owns bit
``cell_index(c, v)``, where the index orders cells lexicographically.
"""
from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from .formula import System

Cell = tuple[int, ...]

TVAL, FVAL, NVAL = 1, 2, 3
B4, TONLY4, FONLY4, NONE4 = 1, 2, 3, 4

# Exhaustive enumeration walks all 2^(v^n) masks.
DEFAULT_CELL_CAP = 16
LARGE_CELL_CAP = 27


class ArityError(ValueError):
    """The requested arity is beyond the exhaustive-enumeration cap."""


class AlphabetError(ValueError):
    """Tensor alphabet does not match the governing system."""


def check_cap(n: int, v: int, allow_large: bool = False) -> None:
    if n < 1:
        raise ArityError(f"arity must be >= 1, got {n}")
    cap = LARGE_CELL_CAP if allow_large else DEFAULT_CELL_CAP
    if v ** n > cap:
        hint = "" if allow_large or v ** n > LARGE_CELL_CAP else " (pass allow_large to permit)"
        raise ArityError(f"{v}^{n} = {v ** n} cells exceeds the enumeration cap of {cap}{hint}")


# -- cells --------------------------------------------------------------------

def cell_index(cell: Sequence[int], v: int) -> int:
    idx = 0
    for value in cell:
        idx = idx * v + (value - 1)
    return idx


def cell_at(index: int, n: int, v: int) -> Cell:
    out = []
    for _ in range(n):
        index, r = divmod(index, v)
        out.append(r + 1)
    return tuple(reversed(out))


@lru_cache(maxsize=None)
def all_cells(n: int, v: int) -> tuple[Cell, ...]:
    return tuple(itertools.product(range(1, v + 1), repeat=n))


def full_mask(n: int, v: int) -> int:
    return (1 << v ** n) - 1


def corner(n: int) -> Cell:
    """The all-NEITHER cell (3, ..., 3)."""
    return (NVAL,) * n


def format_cell(cell: Cell) -> str:
    return ",".join(str(x) for x in cell)


# -- tensors ------------------------------------------------------------------

@dataclass(frozen=True)
class Tensor:
    n: int
    v: int
    mask: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("tensor arity must be >= 1")
        if self.v not in (3, 4):
            raise ValueError("alphabet size must be 3 or 4")
        if self.mask < 0 or self.mask > full_mask(self.n, self.v):
            raise ValueError("mask has bits outside [v]^n")

    @classmethod
    def from_cells(cls, cells: Iterable[Sequence[int]], n: int | None = None, v: int = 3) -> "Tensor":
        cells = [tuple(c) for c in cells]
        if n is None:
            if not cells:
                raise ValueError("arity of an empty tensor must be given")
            n = len(cells[0])
        mask = 0
        for c in cells:
            if len(c) != n:
                raise ValueError(f"cell {c} does not have arity {n}")
            if any(not 1 <= x <= v for x in c):
                raise ValueError(f"cell {c} has values outside 1..{v}")
            mask |= 1 << cell_index(c, v)
        return cls(n, v, mask)

    @classmethod
    def parse(cls, text: str, n: int | None = None, v: int = 3) -> "Tensor":
        """Read ``"1,1;2,2;3,3"`` or a JSON array of arrays."""
        text = text.strip()
        if text.startswith("["):
            cells = json.loads(text)
        elif not text:
            cells = []
        else:
            cells = []
            for chunk in text.split(";"):
                chunk = chunk.strip()
                if not chunk:
                    continue
                try:
                    cells.append(tuple(int(x) for x in chunk.split(",")))
                except ValueError:
                    raise ValueError(f"malformed cell {chunk!r}") from None
        return cls.from_cells(cells, n=n, v=v)

    def cells(self) -> list[Cell]:
        return [c for i, c in enumerate(all_cells(self.n, self.v)) if self.mask >> i & 1]

    def __contains__(self, cell: Sequence[int]) -> bool:
        return bool(self.mask >> cell_index(cell, self.v) & 1)

    def __iter__(self) -> Iterator[Cell]:
        return iter(self.cells())

    def __len__(self) -> int:
        return self.mask.bit_count()

    def format(self) -> str:
        return ";".join(format_cell(c) for c in self.cells())

    def to_json(self) -> list[list[int]]:
        return [list(c) for c in self.cells()]

    def __str__(self) -> str:
        return "{" + self.format() + "}"

    def drop(self, j: int) -> "Tensor":
        """Forget coordinate ``j`` (1-based)."""
        if self.n < 2:
            raise ValueError("cannot drop the only coordinate")
        cells = {c[: j - 1] + c[j:] for c in self.cells()}
        return Tensor.from_cells(cells, n=self.n - 1, v=self.v)


def layer(j: int, k: int, n: int, v: int = 3) -> frozenset[Cell]:
    """Cells whose ``j``-th coordinate equals ``k``."""
    if not 1 <= j <= n:
        raise IndexError(f"slice index {j} out of range 1..{n}")
    if not 1 <= k <= v:
        raise IndexError(f"layer index {k} out of range 1..{v}")
    return frozenset(c for c in all_cells(n, v) if c[j - 1] == k)


@lru_cache(maxsize=None)
def layer_mask(j: int, k: int, n: int, v: int = 3) -> int:
    mask = 0
    for i, c in enumerate(all_cells(n, v)):
        if c[j - 1] == k:
            mask |= 1 << i
    return mask


@lru_cache(maxsize=None)
def _corner_masks(n: int) -> tuple[int, ...]:
    """Entry ``d`` is the intersection of the 3-layers of the slices in bitset ``d``."""
    full = full_mask(n, 3)
    out = []
    for d in range(1 << n):
        m = full
        for j in range(n):
            if d >> j & 1:
                m &= layer_mask(j + 1, NVAL, n, 3)
        out.append(m)
    return tuple(out)


# -- prime conditions ---------------------------------------------------------

class Condition(enum.Enum):
    EMPTY = "nonempty"
    GROUND = "Ground"
    MIN = "Min"


@dataclass(frozen=True)
class Violation:
    condition: Condition
    slices: tuple[int, ...] = ()

    def describe(self) -> str:
        if self.condition is Condition.EMPTY:
            return "empty tensor"
        if self.condition is Condition.GROUND:
            return f"Ground on slice {self.slices[0]}"
        return "Min on slices {" + ",".join(map(str, self.slices)) + "}"


@dataclass(frozen=True)
class PrimeVerdict:
    ok: bool
    violation: Optional[Violation] = None

    def __bool__(self) -> bool:
        return self.ok


def first_violation(mask: int, n: int, *, ground: bool = True, minimal: bool = True) -> Optional[Violation]:
    """First failed prime condition of a ternary mask, or ``None``."""
    if mask == 0:
        return Violation(Condition.EMPTY)
    if ground:
        for j in range(1, n + 1):
            if (
                mask & layer_mask(j, TVAL, n)
                and mask & layer_mask(j, FVAL, n)
                and not mask & layer_mask(j, NVAL, n)
            ):
                return Violation(Condition.GROUND, (j,))
    if minimal:
        d = 0
        for j in range(n):
            if mask & layer_mask(j + 1, NVAL, n):
                d |= 1 << j
        if not mask & _corner_masks(n)[d]:
            return Violation(Condition.MIN, tuple(j + 1 for j in range(n) if d >> j & 1))
    return None


def prime_check(t: Tensor) -> PrimeVerdict:
    if t.v != 3:
        raise AlphabetError("the prime conditions are stated over the ternary alphabet")
    violation = first_violation(t.mask, t.n)
    return PrimeVerdict(violation is None, violation)


def _expected_alphabet(system: System) -> int:
    return system.alphabet


def admissible_mask(mask: int, n: int, system: System) -> bool:
    if system <= System.S5Con:
        return mask != 0
    return first_violation(mask, n, minimal=system is System.S5ConGroundMin) is None


def admissible(t: Tensor, system: System) -> bool:
    """Is the tensor a consistent intensional isolator of ``system``?"""
    if t.v != _expected_alphabet(system):
        raise AlphabetError(f"{system.label} needs alphabet size {system.alphabet}, tensor has {t.v}")
    return admissible_mask(t.mask, t.n, system)


def admissible_masks(system: System, n: int, allow_large: bool = False) -> Iterator[int]:
    v = system.alphabet
    check_cap(n, v, allow_large)
    for mask in range(1, full_mask(n, v) + 1):
        if admissible_mask(mask, n, system):
            yield mask


def enumerate_admissible(system: System, n: int, allow_large: bool = False) -> Iterator[Tensor]:
    """All admissible tensors of arity ``n`` in ascending mask order."""
    v = system.alphabet
    for mask in admissible_masks(system, n, allow_large):
        yield Tensor(n, v, mask)


# -- isolator pairs -----------------------------------------------------------

@dataclass(frozen=True)
class IsolatorPair:
    """A world cell inside an intensional frame."""

    world: Cell
    frame: Tensor

    def __post_init__(self):
        if self.world not in self.frame:
            raise ValueError(f"world {self.world} is not a member of frame {self.frame}")

    def sort_key(self) -> tuple[int, int]:
        return cell_index(self.world, self.frame.v), self.frame.mask

    def to_json(self) -> dict:
        return {"world": list(self.world), "frame": self.frame.to_json()}

    def __str__(self) -> str:
        return f"world {format_cell(self.world)} in frame {self.frame}"


# -- counting -----------------------------------------------------------------

@dataclass(frozen=True)
class SymbolicCount:
    """The number ``2**exponent``; expanded only for small exponents."""

    exponent: int

    MAX_EXPAND = 64

    @property
    def value(self) -> Optional[int]:
        if self.exponent <= self.MAX_EXPAND:
            return 2 ** self.exponent
        return None

    def __str__(self) -> str:
        if self.value is None:
            return f"2^{self.exponent}"
        return f"2^{self.exponent} = {self.value}"

    def to_json(self) -> dict:
        out: dict = {"base": 2, "exponent": self.exponent}
        if self.value is not None:
            out["value"] = self.value
        return out


def _closed_form(system: System) -> bool:
    return system <= System.S5Con


def count_admissible(system: System, n: int, allow_large: bool = False) -> int:
    """Number of intensional n-isolators."""
    v = system.alphabet
    if _closed_form(system):
        return 2 ** (v ** n) - 1
    check_cap(n, v, allow_large)
    if v ** n > DEFAULT_CELL_CAP:
        return _vectorized_counts(system, n)[0]
    return sum(1 for _ in admissible_masks(system, n, allow_large))


def count_isolator_pairs(system: System, n: int, allow_large: bool = False, closed_form: bool = True) -> int:
    """Number of (cell, admissible tensor) pairs with the cell in the tensor."""
    v = system.alphabet
    if closed_form and _closed_form(system):
        return v ** n * 2 ** (v ** n - 1)
    check_cap(n, v, allow_large)
    if v ** n > DEFAULT_CELL_CAP:
        return _vectorized_counts(system, n)[1]
    return sum(mask.bit_count() for mask in admissible_masks(system, n, allow_large))


def count_formula_classes(system: System, n: int, allow_large: bool = False) -> SymbolicCount:
    """Number of n-formulas up to provable equivalence in ``system``."""
    return SymbolicCount(count_isolator_pairs(system, n, allow_large))


@dataclass(frozen=True)
class DefinableCount:
    count: SymbolicCount
    lower: int
    upper: int

    @property
    def within_bounds(self) -> bool:
        return self.lower < self.count.exponent < self.upper

    def __str__(self) -> str:
        return f"{self.count}  ({self.lower} < {self.count.exponent} < {self.upper})"


def definable_exponent_bounds(n: int) -> tuple[int, int]:
    """Open interval containing ``log2`` of the number of definable n-ary relations."""
    return 2 ** (3 ** n - 1), 2 ** (3 ** n)


def count_definable(n: int, allow_large: bool = False) -> DefinableCount:
    k = count_admissible(System.S5ConGroundMin, n, allow_large)
    lo, hi = definable_exponent_bounds(n)
    result = DefinableCount(SymbolicCount(k), lo, hi)
    if not result.within_bounds:
        raise AssertionError(f"definable exponent {k} escapes ({lo}, {hi})")
    return result


def _vectorized_counts(system: System, n: int, chunk_bits: int = 22) -> tuple[int, int]:
    """(admissible tensors, isolator pairs) by a chunked numpy sweep over all masks."""
    import numpy as np

    cells = 3 ** n
    total = 1 << cells
    minimal = system is System.S5ConGroundMin
    layers = [[np.uint32(layer_mask(j, k, n)) for k in (1, 2, 3)] for j in range(1, n + 1)]
    corners = np.array(_corner_masks(n), dtype=np.uint32)
    n_tensors = 0
    n_pairs = 0
    step = 1 << chunk_bits
    for start in range(0, total, step):
        m = np.arange(start, min(start + step, total), dtype=np.uint32)
        ok = m != 0
        d = np.zeros_like(m)
        for j, (l1, l2, l3) in enumerate(layers):
            has3 = (m & l3) != 0
            ok &= ~(((m & l1) != 0) & ((m & l2) != 0)) | has3
            d |= has3.astype(np.uint32) << np.uint32(j)
        if minimal:
            ok &= (m & corners[d]) != 0
        n_tensors += int(ok.sum())
        n_pairs += int(np.bitwise_count(m[ok]).sum(dtype=np.int64))
    return n_tensors, n_pairs
