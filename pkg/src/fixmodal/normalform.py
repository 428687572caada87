"""Isolator normal forms and the second-order rendering of basic-form formulas.

The normal form of ``f`` in a system is the set of admissible isolator pairs
at which ``f`` is true.  Two formulas are provably equivalent exactly when
their normal forms coincide, so the set doubles as a canonical fingerprint.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .formula import (
    And,
    AtomF,
    AtomT,
    Box,
    Diamond,
    F,
    Formula,
    N,
    Not,
    Or,
    System,
    T,
    Variable,
    conj,
    variables,
)
from .isolator import (
    IsolatorPair,
    Tensor,
    admissible_masks,
    all_cells,
    check_cap,
)
from .semantics import Signature, sat_mask


@dataclass(frozen=True)
class NormalForm:
    system: System
    variables: tuple[Variable, ...]
    disjuncts: frozenset[IsolatorPair]

    @property
    def arity(self) -> int:
        return len(self.variables)

    @property
    def refutable(self) -> bool:
        return not self.disjuncts

    def sorted_disjuncts(self) -> list[IsolatorPair]:
        return sorted(self.disjuncts, key=IsolatorPair.sort_key)

    def to_json(self) -> dict:
        return {
            "system": self.system.label,
            "arity": self.arity,
            "disjuncts": [p.to_json() for p in self.sorted_disjuncts()],
        }

    @classmethod
    def from_json(cls, data: dict, variables: Optional[Sequence[Variable]] = None) -> "NormalForm":
        system = next(s for s in System if s.label == data["system"])
        n = data["arity"]
        vs = tuple(variables) if variables is not None else tuple(Variable(i) for i in range(1, n + 1))
        pairs = frozenset(
            IsolatorPair(tuple(d["world"]), Tensor.from_cells(d["frame"], n=n, v=system.alphabet))
            for d in data["disjuncts"]
        )
        return cls(system, vs, pairs)


def all_pairs(system: System, n: int, allow_large: bool = False) -> Iterable[IsolatorPair]:
    v = system.alphabet
    cells = all_cells(n, v)
    for mask in admissible_masks(system, n, allow_large):
        t = Tensor(n, v, mask)
        for idx, c in enumerate(cells):
            if mask >> idx & 1:
                yield IsolatorPair(c, t)


def to_normal_form(
    f: Formula,
    system: System,
    over: Optional[Sequence[Variable]] = None,
    allow_large: bool = False,
) -> NormalForm:
    """Disjunction of isolator pairs equivalent to ``f`` in ``system``.

    ``over`` widens the variable list (needed to compare formulas that do
    not mention the same variables).
    """
    sig = Signature.of(f, system.alphabet, over or ())
    check_cap(sig.n, sig.v, allow_large)
    cells = all_cells(sig.n, sig.v)
    pairs = set()
    for mask in admissible_masks(system, sig.n, allow_large):
        m = sat_mask(f, mask, sig)
        if not m:
            continue
        t = Tensor(sig.n, sig.v, mask)
        idx = 0
        while m:
            if m & 1:
                pairs.add(IsolatorPair(cells[idx], t))
            m >>= 1
            idx += 1
    return NormalForm(system, sig.variables, frozenset(pairs))


def equivalent(f: Formula, g: Formula, system: System, allow_large: bool = False) -> bool:
    shared = sorted(set(variables(f)) | set(variables(g)))
    return to_normal_form(f, system, shared, allow_large) == to_normal_form(g, system, shared, allow_large)


# -- rebuilding formulas --------------------------------------------------------

def cell_formula(cell: Sequence[int], vs: Sequence[Variable], v: int) -> Formula:
    """Extensional isolator for a cell."""
    parts = []
    for var, value in zip(vs, cell):
        i = var.index
        if v == 3:
            parts.append({1: T(i), 2: F(i), 3: N(i)}[value])
        else:
            parts.append({
                1: And(T(i), F(i)),
                2: And(T(i), Not(F(i))),
                3: And(Not(T(i)), F(i)),
                4: N(i),
            }[value])
    return conj(parts)


def frame_formula(frame: Tensor, vs: Sequence[Variable], _cells: Optional[dict] = None) -> Formula:
    """Intensional isolator: possible exactly at the frame's cells, over every cell in order."""
    cells = _cells if _cells is not None else {}
    parts = []
    for c in all_cells(frame.n, frame.v):
        if c not in cells:
            cells[c] = cell_formula(c, vs, frame.v)
        if ("<>", c) not in cells:
            poss = Diamond(cells[c])
            cells[("<>", c)] = poss
            cells[("~<>", c)] = Not(poss)
        parts.append(cells[("<>", c)] if c in frame else cells[("~<>", c)])
    return _balanced(And, parts)


def _balanced(op, parts: Sequence[Formula]) -> Formula:
    # keeps rebuilt formulas shallow; normal forms can have thousands of disjuncts
    if len(parts) == 1:
        return parts[0]
    mid = len(parts) // 2
    return op(_balanced(op, parts[:mid]), _balanced(op, parts[mid:]))


def pair_formula(pair: IsolatorPair, vs: Sequence[Variable]) -> Formula:
    return And(cell_formula(pair.world, vs, pair.frame.v), frame_formula(pair.frame, vs))


def from_normal_form(nf: NormalForm) -> Formula:
    if not nf.variables:
        raise ValueError("normal form has no variables")
    if nf.refutable:
        x = nf.variables[0].index
        return And(T(x), Not(T(x)))
    # shared subterms let the evaluator's identity cache do its job
    shared: dict = {}
    frames: dict[Tensor, Formula] = {}
    parts = []
    for p in nf.sorted_disjuncts():
        if p.frame not in frames:
            frames[p.frame] = frame_formula(p.frame, nf.variables, shared)
        if p.world not in shared:
            shared[p.world] = cell_formula(p.world, nf.variables, p.frame.v)
        parts.append(And(shared[p.world], frames[p.frame]))
    return _balanced(Or, parts)


# -- second-order rendering -----------------------------------------------------

class NotBasicForm(ValueError):
    """The formula is not a disjunction of conjunctions of modal literals."""


@dataclass(frozen=True)
class ModalLiteral:
    necessary: bool   # [] vs <>
    negated: bool     # T/F(x) vs ~T/F(x)
    falsity: bool     # F(x) vs T(x)
    var: Variable


def _atom(g: Formula) -> Optional[tuple[bool, Variable]]:
    if isinstance(g, AtomT):
        return False, g.var
    if isinstance(g, AtomF):
        return True, g.var
    return None


def _literal(g: Formula) -> Optional[ModalLiteral]:
    # ~~L is L; this is how ~<>A arrives
    if isinstance(g, Not) and isinstance(g.sub, Not):
        return _literal(g.sub.sub)
    # []A, []~A
    if isinstance(g, Box):
        a = _atom(g.sub)
        if a:
            return ModalLiteral(True, False, *a)
        if isinstance(g.sub, Not) and (a := _atom(g.sub.sub)):
            return ModalLiteral(True, True, *a)
        return None
    if isinstance(g, Not) and isinstance(g.sub, Box):
        inner = g.sub.sub
        # <>A parses as ~[]~A, <>~A as ~[]~~A; ~[]A is read as <>~A
        if isinstance(inner, Not):
            if a := _atom(inner.sub):
                return ModalLiteral(False, False, *a)
            if isinstance(inner.sub, Not) and (a := _atom(inner.sub.sub)):
                return ModalLiteral(False, True, *a)
            return None
        if a := _atom(inner):
            return ModalLiteral(False, True, *a)
    return None


def _conjuncts(g: Formula) -> list[ModalLiteral]:
    if isinstance(g, And):
        return _conjuncts(g.left) + _conjuncts(g.right)
    lit = _literal(g)
    if lit is None:
        raise NotBasicForm("expected a boxed or diamonded T/F literal")
    return [lit]


def _disjuncts(g: Formula) -> list[Formula]:
    # A | B parses as ~(~A & ~B)
    if (
        isinstance(g, Not)
        and isinstance(g.sub, And)
        and isinstance(g.sub.left, Not)
        and isinstance(g.sub.right, Not)
    ):
        return _disjuncts(g.sub.left.sub) + _disjuncts(g.sub.right.sub)
    return [g]


def basic_form(f: Formula) -> list[list[ModalLiteral]]:
    """Split a basic-form formula into disjuncts of modal literals."""
    out = []
    for d in _disjuncts(f):
        lit = _literal(d)
        out.append([lit] if lit is not None else _conjuncts(d))
    return out


_UNICODE = {"all": "∀X", "ex": "∃X", "imp": "→", "and": "∧", "or": "∨", "in": "∈", "notin": "∉", "lq": "⌜", "rq": "⌝"}
_ASCII = {"all": "forall X", "ex": "exists X", "imp": "->", "and": "&", "or": "|", "in": "in", "notin": "notin", "lq": "<<", "rq": ">>"}


def _render_literal(lit: ModalLiteral, sym: dict) -> str:
    term = f"Neg({lit.var})" if lit.falsity else str(lit.var)
    member = f"{sym['lq']}{term}{sym['rq']} {sym['notin'] if lit.negated else sym['in']} X"
    if lit.necessary:
        return f"{sym['all']}(Fix(X) {sym['imp']} {member})"
    return f"{sym['ex']}(Fix(X) {sym['and']} {member})"


def to_second_order(f: Formula, ascii: bool = False) -> str:
    """Translate a basic-form formula into second-order arithmetic notation.

    ``Fix`` stands for a formula defining the set of fixed points.
    """
    sym = _ASCII if ascii else _UNICODE
    parts = []
    disjuncts = basic_form(f)
    for lits in disjuncts:
        body = f" {sym['and']} ".join(_render_literal(l, sym) for l in lits)
        parts.append(f"({body})" if len(lits) > 1 and len(disjuncts) > 1 else body)
    return f" {sym['or']} ".join(parts)
