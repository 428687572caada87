"""Strong Kleene values and sentence definitions for finite pools."""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Callable, Mapping, Union


class K3(enum.IntEnum):
    """Truth order FALSE < NEITHER < TRUE, so conjunction is ``min``."""

    FALSE = 0
    NEITHER = 1
    TRUE = 2

    @property
    def code(self) -> int:
        """Extensional value numbering: TRUE=1, FALSE=2, NEITHER=3."""
        return _CODE[self]

    @property
    def short(self) -> str:
        return self.name[0]


_CODE = {K3.TRUE: 1, K3.FALSE: 2, K3.NEITHER: 3}
FROM_CODE = {1: K3.TRUE, 2: K3.FALSE, 3: K3.NEITHER}


def info_leq(a: K3, b: K3) -> bool:
    """Information order: NEITHER sits below both classical values."""
    return a is K3.NEITHER or a is b


@dataclass(frozen=True)
class TruthOf:
    name: str


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class NotD:
    sub: "Def"


@dataclass(frozen=True)
class AndD:
    left: "Def"
    right: "Def"


@dataclass(frozen=True)
class OrD:
    left: "Def"
    right: "Def"


Def = Union[TruthOf, Top, Bot, NotD, AndD, OrD]


class UnresolvedName(KeyError):
    pass


def eval_k3(d: Def, valuation: Mapping[str, K3]) -> K3:
    if isinstance(d, TruthOf):
        try:
            return K3(valuation[d.name])
        except KeyError:
            raise UnresolvedName(d.name) from None
    if isinstance(d, Top):
        return K3.TRUE
    if isinstance(d, Bot):
        return K3.FALSE
    if isinstance(d, NotD):
        return K3(2 - eval_k3(d.sub, valuation))
    if isinstance(d, AndD):
        return K3(min(eval_k3(d.left, valuation), eval_k3(d.right, valuation)))
    if isinstance(d, OrD):
        # ~(~a & ~b)
        return K3(2 - min(2 - eval_k3(d.left, valuation), 2 - eval_k3(d.right, valuation)))
    raise TypeError(f"not a definition: {d!r}")


def references(d: Def) -> set[str]:
    if isinstance(d, TruthOf):
        return {d.name}
    if isinstance(d, (Top, Bot)):
        return set()
    if isinstance(d, NotD):
        return references(d.sub)
    return references(d.left) | references(d.right)


def compile_def(d: Def, index: Mapping[str, int]) -> Callable[[list[int]], int]:
    """Closure evaluating ``d`` on a value list laid out by ``index``."""
    if isinstance(d, TruthOf):
        if d.name not in index:
            raise UnresolvedName(d.name)
        i = index[d.name]
        return lambda vals: vals[i]
    if isinstance(d, Top):
        return lambda vals: 2
    if isinstance(d, Bot):
        return lambda vals: 0
    if isinstance(d, NotD):
        sub = compile_def(d.sub, index)
        return lambda vals: 2 - sub(vals)
    parts = list(_flatten(d, type(d)))
    subs = [compile_def(p, index) for p in parts]
    if isinstance(d, AndD):
        def conj(vals):
            lo = 2
            for s in subs:
                x = s(vals)
                if x == 0:
                    return 0
                if x < lo:
                    lo = x
            return lo
        return conj

    def disj(vals):
        hi = 0
        for s in subs:
            x = s(vals)
            if x == 2:
                return 2
            if x > hi:
                hi = x
        return hi
    return disj


def _flatten(d: Def, kind: type):
    stack = [d]
    while stack:
        g = stack.pop()
        if isinstance(g, kind):
            stack.append(g.right)
            stack.append(g.left)
        else:
            yield g


# -- definition text --------------------------------------------------------------

_DEF_TOKEN = re.compile(r"\s*(True\(|TOP\b|BOT\b|[A-Za-z_][A-Za-z0-9_]*|[~&|()])")


class DefSyntaxError(ValueError):
    pass


def parse_def(text: str) -> Def:
    """Parse ``True(name) | TOP | BOT | ~d | (d & d) | (d | d)``.

    Outer parentheses around binary connectives may be dropped; ``&`` binds
    tighter than ``|``.
    """
    tokens: list[tuple[str, int]] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _DEF_TOKEN.match(text, pos)
        if not m:
            raise DefSyntaxError(f"unexpected character {text[pos:].lstrip()[:1]!r} at position {pos}")
        tokens.append((m.group(1), m.start(1)))
        pos = m.end()
    i = 0

    def peek():
        return tokens[i][0] if i < len(tokens) else None

    def take(expected=None):
        nonlocal i
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            where = tokens[i][1] if i < len(tokens) else len(text)
            want = f"{expected!r}" if expected else "a token"
            raise DefSyntaxError(f"expected {want} at position {where}")
        i += 1
        return tok

    def disj():
        d = conj()
        while peek() == "|":
            take()
            d = OrD(d, conj())
        return d

    def conj():
        d = unary()
        while peek() == "&":
            take()
            d = AndD(d, unary())
        return d

    def unary():
        tok = peek()
        if tok == "~":
            take()
            return NotD(unary())
        if tok == "(":
            take()
            d = disj()
            take(")")
            return d
        if tok == "TOP":
            take()
            return Top()
        if tok == "BOT":
            take()
            return Bot()
        if tok == "True(":
            take()
            name = take()
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name) or name in ("TOP", "BOT"):
                raise DefSyntaxError(f"bad sentence name {name!r}")
            take(")")
            return TruthOf(name)
        raise DefSyntaxError(f"unexpected token {tok!r}" if tok else "unexpected end of definition")

    if not tokens:
        raise DefSyntaxError("empty definition")
    d = disj()
    if i != len(tokens):
        raise DefSyntaxError(f"trailing input at position {tokens[i][1]}")
    return d


def render_def(d: Def) -> str:
    if isinstance(d, TruthOf):
        return f"True({d.name})"
    if isinstance(d, Top):
        return "TOP"
    if isinstance(d, Bot):
        return "BOT"
    if isinstance(d, NotD):
        return "~" + render_def(d.sub)
    op = "&" if isinstance(d, AndD) else "|"
    return f"({render_def(d.left)} {op} {render_def(d.right)})"
