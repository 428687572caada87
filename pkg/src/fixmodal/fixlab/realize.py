"""Build a pool whose sentences realize a given prime tensor as their profile.

Tensors without the all-NEITHER corner sit inside a T- or F-layer of some
slice; that coordinate is pinned to a constant and the rest is solved
recursively.  Arity-1 tensors map onto stock sentences (constants, the liar,
a truth-teller, the tautology-teller and its negation).

Tensors containing the corner are built from ``k`` independent
truth-tellers.  Each sign pattern over them is a selector conjunction
``C``; every cell of the tensor gets its own selector, and sentence ``a_i``
is the conjunction over all selectors of ``C -> theta`` where ``theta`` is
TOP, BOT or the liar according to the cell's ``i``-th value (the liar for
selectors not assigned to a tensor cell).

With ``layout="sparse"`` (the default) cells are assigned only to selectors
of even parity, so no two assigned selectors differ in a single sign.  Any
fixed point leaving some truth-teller NEITHER then leaves every ``a_i``
NEITHER, which lands on the corner.  ``layout="dense"`` uses consecutive
selectors with the smallest ``k`` such that ``2**k > 3**n``; it can leak
extra cells through such partial fixed points and is kept for comparison.
"""
from __future__ import annotations

from functools import reduce

from ..isolator import (
    ArityError,
    NVAL,
    Tensor,
    all_cells,
    corner,
    layer_mask,
    prime_check,
)
from .kleene import AndD, Bot, Def, NotD, OrD, Top, TruthOf
from .pool import Pool

MAX_REALIZE_ARITY = 3


class PrimeViolation(ValueError):
    def __init__(self, tensor: Tensor, violation):
        super().__init__(f"tensor {tensor} violates the prime conditions: {violation.describe()}")
        self.tensor = tensor
        self.violation = violation


class _Builder:
    def __init__(self):
        self.sentences: dict[str, Def] = {}

    def define(self, name: str, d: Def) -> str:
        self.sentences.setdefault(name, d)
        return name

    def top(self) -> str:
        return self.define("top", Top())

    def bot(self) -> str:
        return self.define("bot", Bot())

    def liar(self) -> str:
        return self.define("liar", NotD(TruthOf("liar")))

    def gamma(self) -> str:
        return self.define("gamma", OrD(TruthOf("gamma"), NotD(TruthOf("gamma"))))

    def neg_gamma(self) -> str:
        self.gamma()
        return self.define("neg_gamma", NotD(TruthOf("gamma")))

    def truth_teller(self, name: str = "tau") -> str:
        return self.define(name, TruthOf(name))

    def one_dimensional(self, t: Tensor) -> str:
        values = frozenset(c[0] for c in t.cells())
        table = {
            frozenset({1}): self.top,
            frozenset({2}): self.bot,
            frozenset({3}): self.liar,
            frozenset({1, 3}): self.gamma,
            frozenset({2, 3}): self.neg_gamma,
            frozenset({1, 2, 3}): self.truth_teller,
        }
        return table[values]()


def _selector_count(n: int, layout: str) -> int:
    cells = 3 ** n
    k = 1
    if layout == "dense":
        while 2 ** k <= cells:
            k += 1
    else:
        while 2 ** (k - 1) < cells:
            k += 1
    return k


def _codes(k: int, count: int, layout: str) -> list[int]:
    """Selector patterns assigned to the first ``count`` cells (bit m set = m-th sign negated)."""
    if layout == "dense":
        return list(range(count))
    even = [p for p in range(2 ** k) if bin(p).count("1") % 2 == 0]
    return even[:count]


def _conj(parts: list[Def]) -> Def:
    return reduce(AndD, parts)


def _selector(pattern: int, tellers: list[str]) -> Def:
    k = len(tellers)
    lits = []
    for m, name in enumerate(tellers):
        neg = pattern >> (k - 1 - m) & 1
        lits.append(NotD(TruthOf(name)) if neg else TruthOf(name))
    return _conj(lits)


def _corner_case(t: Tensor, b: _Builder, coords: list[int], layout: str) -> list[str]:
    n = t.n
    k = _selector_count(n, layout)
    tellers = [b.truth_teller(f"tt{m + 1}") for m in range(k)]
    liar = TruthOf(b.liar())
    cells = all_cells(n, 3)
    codes = _codes(k, len(cells), layout)
    assigned = {code: cell for code, cell in zip(codes, cells) if cell in t}
    theta = {1: Top(), 2: Bot(), NVAL: liar}
    names = []
    for i, coord in enumerate(coords):
        parts = []
        for pattern in range(2 ** k):
            cell = assigned.get(pattern)
            consequent = theta[cell[i]] if cell is not None else liar
            # K3 material conditional
            parts.append(OrD(NotD(_selector(pattern, tellers)), consequent))
        names.append(b.define(f"a{coord}", _conj(parts)))
    return names


def _solve(t: Tensor, b: _Builder, coords: list[int], layout: str) -> list[str]:
    if t.n == 1:
        return [b.one_dimensional(t)]
    if corner(t.n) in t:
        return _corner_case(t, b, coords, layout)
    for j in range(1, t.n + 1):
        for value, pin in ((1, b.top), (2, b.bot)):
            if t.mask & ~layer_mask(j, value, t.n) == 0:
                rest = _solve(t.drop(j), b, coords[: j - 1] + coords[j:], layout)
                return rest[: j - 1] + [pin()] + rest[j - 1:]
    raise AssertionError(f"prime tensor {t} without the corner lies in no T/F layer")


def realize(t: Tensor, layout: str = "sparse") -> tuple[Pool, tuple[str, ...]]:
    """A pool and a name tuple whose joint profile is exactly ``t``."""
    if t.v != 3:
        raise ValueError("realization works over the ternary alphabet")
    if t.n > MAX_REALIZE_ARITY:
        raise ArityError(f"arity {t.n} exceeds the realization cap of {MAX_REALIZE_ARITY}")
    if layout not in ("sparse", "dense"):
        raise ValueError(f"unknown layout {layout!r}")
    verdict = prime_check(t)
    if not verdict.ok:
        raise PrimeViolation(t, verdict.violation)
    b = _Builder()
    names = _solve(t, b, list(range(1, t.n + 1)), layout)
    return Pool(dict(b.sentences)), tuple(names)
