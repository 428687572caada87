"""Formulas of the modal language with truth/falsity atoms.

The official constructors are ``AtomT``, ``AtomF``, ``Not``, ``And`` and
``Box``.  Everything else (``|``, ``->``, ``<->``, ``<>``, ``N(x)``) is
expanded away by the parser, so two formulas are compared structurally on
the five primitive shapes only.

Concrete syntax::

    T(x1)  F(x2)  N(x3)          atoms
    ~ A    [] A   <> A           unary (tightest)
    A & B                        conjunction
    A | B                        disjunction
    A -> B                       implication (right associative)
    A <-> B                      biconditional (loosest)

The unicode spellings ``¬ ∧ ∨ → ↔ □ ◇`` are accepted as aliases.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Iterator, Union


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


@dataclass(frozen=True, order=True)
class Variable:
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"variable index must be >= 1, got {self.index}")

    def __str__(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True)
class AtomT:
    var: Variable


@dataclass(frozen=True)
class AtomF:
    var: Variable


@dataclass(frozen=True)
class Not:
    sub: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Box:
    sub: "Formula"


Formula = Union[AtomT, AtomF, Not, And, Box]


class System(enum.IntEnum):
    """Axiom systems, ordered by strength."""

    S5 = 0
    S5Con = 1
    S5ConGround = 2
    S5ConGroundMin = 3

    @property
    def alphabet(self) -> int:
        """Number of extensional values per variable (4 without Con)."""
        return 4 if self is System.S5 else 3

    @property
    def label(self) -> str:
        return _SYSTEM_LABELS[self]

    @classmethod
    def from_name(cls, name: str) -> "System":
        key = name.strip().lower()
        if key in _SYSTEM_ALIASES:
            return _SYSTEM_ALIASES[key]
        raise ValueError(f"unknown system {name!r}; expected one of s5, s5c, s5cg, s5cgm")


_SYSTEM_LABELS = {
    System.S5: "S5",
    System.S5Con: "S5[Con]",
    System.S5ConGround: "S5[Con,Ground]",
    System.S5ConGroundMin: "S5[Con,Ground,Min]",
}

_SYSTEM_ALIASES = {
    "s5": System.S5,
    "s5c": System.S5Con,
    "s5con": System.S5Con,
    "s5cg": System.S5ConGround,
    "s5conground": System.S5ConGround,
    "s5cgm": System.S5ConGroundMin,
    "s5congroundmin": System.S5ConGroundMin,
    "fix": System.S5ConGroundMin,
}


# -- derived connectives ------------------------------------------------------

def T(i: int) -> AtomT:
    return AtomT(Variable(i))


def F(i: int) -> AtomF:
    return AtomF(Variable(i))


def N(i: int) -> Formula:
    return And(Not(T(i)), Not(F(i)))


def Or(a: Formula, b: Formula) -> Formula:
    return Not(And(Not(a), Not(b)))


def Implies(a: Formula, b: Formula) -> Formula:
    return Not(And(a, Not(b)))


def Iff(a: Formula, b: Formula) -> Formula:
    return And(Implies(a, b), Implies(b, a))


def Diamond(a: Formula) -> Formula:
    return Not(Box(Not(a)))


def conj(parts: Iterable[Formula]) -> Formula:
    """Left-nested conjunction of a nonempty sequence."""
    parts = list(parts)
    if not parts:
        raise ValueError("empty conjunction")
    return reduce(And, parts)


def disj(parts: Iterable[Formula]) -> Formula:
    parts = list(parts)
    if not parts:
        raise ValueError("empty disjunction")
    return reduce(Or, parts)


# -- tokenizer ----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<op><->|->|\[\]|<>|[~&|()¬∧∨→↔□◇])
  | (?P<pred>[TFN])(?=\s*\()
  | (?P<var>x\d+)
  | (?P<word>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<bad>.)
    """,
    re.VERBOSE,
)

_ALIASES = {"¬": "~", "∧": "&", "∨": "|", "→": "->", "↔": "<->", "□": "[]", "◇": "<>"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        value = m.group()
        pos = m.start()
        if kind == "ws":
            continue
        if kind == "bad":
            raise ParseError(f"unknown token {value!r}", pos)
        if kind == "word":
            raise ParseError(f"unknown token {value!r}", pos)
        if kind == "op":
            value = _ALIASES.get(value, value)
        tokens.append((kind, value, pos))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> str | None:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][1]
        return None

    def where(self) -> int:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][2]
        return len(self.text)

    def expect(self, value: str) -> None:
        if self.peek() != value:
            found = self.peek()
            detail = "end of input" if found is None else repr(found)
            raise ParseError(f"expected {value!r}, found {detail}", self.where())
        self.pos += 1

    def parse(self) -> Formula:
        if not self.tokens:
            raise ParseError("empty formula", 0)
        f = self.iff()
        if self.pos != len(self.tokens):
            raise ParseError(f"unexpected token {self.peek()!r}", self.where())
        return f

    def iff(self) -> Formula:
        f = self.implication()
        while self.peek() == "<->":
            self.pos += 1
            f = Iff(f, self.implication())
        return f

    def implication(self) -> Formula:
        f = self.disjunction()
        if self.peek() == "->":
            self.pos += 1
            return Implies(f, self.implication())
        return f

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.peek() == "|":
            self.pos += 1
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.peek() == "&":
            self.pos += 1
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        if tok == "~":
            self.pos += 1
            return Not(self.unary())
        if tok == "[]":
            self.pos += 1
            return Box(self.unary())
        if tok == "<>":
            self.pos += 1
            return Diamond(self.unary())
        if tok == "(":
            self.pos += 1
            f = self.iff()
            self.expect(")")
            return f
        if tok in ("T", "F", "N") and self.tokens[self.pos][0] == "pred":
            return self.atom()
        if tok is None:
            raise ParseError("unexpected end of input", self.where())
        raise ParseError(f"unexpected token {tok!r}", self.where())

    def atom(self) -> Formula:
        pred = self.peek()
        self.pos += 1
        self.expect("(")
        if self.pos >= len(self.tokens) or self.tokens[self.pos][0] != "var":
            raise ParseError("malformed variable, expected x1, x2, ...", self.where())
        index = int(self.tokens[self.pos][1][1:])
        if index < 1:
            raise ParseError("malformed variable, indices start at 1", self.where())
        self.pos += 1
        self.expect(")")
        if pred == "T":
            return T(index)
        if pred == "F":
            return F(index)
        return N(index)


def parse(text: str) -> Formula:
    """Parse ``text`` into a primitive-only formula tree."""
    return _Parser(text).parse()


def render(f: Formula) -> str:
    """Canonical text; ``parse(render(f)) == f``."""
    if isinstance(f, AtomT):
        return f"T({f.var})"
    if isinstance(f, AtomF):
        return f"F({f.var})"
    if isinstance(f, Not):
        return "~" + render(f.sub)
    if isinstance(f, And):
        return f"({render(f.left)} & {render(f.right)})"
    if isinstance(f, Box):
        inner = render(f.sub)
        if isinstance(f.sub, And):
            return "[]" + inner
        return f"[]({inner})"
    raise TypeError(f"not a formula: {f!r}")


def subformulas(f: Formula) -> Iterator[Formula]:
    """Post-order traversal, children before parents."""
    if isinstance(f, (Not, Box)):
        yield from subformulas(f.sub)
    elif isinstance(f, And):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    yield f


def atom_count(f: Formula) -> int:
    return sum(1 for g in subformulas(f) if isinstance(g, (AtomT, AtomF)))


def variables(f: Formula) -> list[Variable]:
    """Distinct variables in ascending index order."""
    found = {g.var for g in subformulas(f) if isinstance(g, (AtomT, AtomF))}
    return sorted(found)


def box_depth(f: Formula) -> int:
    if isinstance(f, (AtomT, AtomF)):
        return 0
    if isinstance(f, Not):
        return box_depth(f.sub)
    if isinstance(f, And):
        return max(box_depth(f.left), box_depth(f.right))
    return 1 + box_depth(f.sub)


class SyntacticClass(enum.Enum):
    EXTENSIONAL = "extensional"
    INTENSIONAL = "intensional"
    NEITHER = "neither"


def syntactic_class(f: Formula) -> SyntacticClass:
    if box_depth(f) == 0:
        return SyntacticClass.EXTENSIONAL
    if _all_atoms_boxed(f):
        return SyntacticClass.INTENSIONAL
    return SyntacticClass.NEITHER


def _all_atoms_boxed(f: Formula) -> bool:
    if isinstance(f, Box):
        return True
    if isinstance(f, (AtomT, AtomF)):
        return False
    if isinstance(f, Not):
        return _all_atoms_boxed(f.sub)
    return _all_atoms_boxed(f.left) and _all_atoms_boxed(f.right)


def rename(f: Formula, mapping: dict[int, int]) -> Formula:
    """Substitute variable indices (missing keys are left alone)."""
    if isinstance(f, AtomT):
        return T(mapping.get(f.var.index, f.var.index))
    if isinstance(f, AtomF):
        return F(mapping.get(f.var.index, f.var.index))
    if isinstance(f, Not):
        return Not(rename(f.sub, mapping))
    if isinstance(f, And):
        return And(rename(f.left, mapping), rename(f.right, mapping))
    return Box(rename(f.sub, mapping))
