"""Symbolic propositions for the C1 layer and the rewrite identities PBPT relies on.

Only five node kinds exist: atoms, negation, conjunction, disjunction and the
two constants ``TOP``/``BOTTOM`` (which only ever appear as rewrite results).
The derived forms -- non-contradictoriness ``a°``, contradictoriness, strong
negation and the non-contradictory part -- are expanded eagerly into these.

Textual form (S-expressions)::

    expr  := ATOM | "top" | "bottom"
           | "(" "not" expr ")" | "(" ("and" | "or") expr expr ")"
           | "(" ("nc" | "contra" | "sneg" | "ncpart") expr ")"
    ATOM  := [A-Za-z_][A-Za-z0-9_']*

``nc``, ``contra``, ``sneg`` and ``ncpart`` are sugar; they are expanded on
parse and never printed. ``top``/``bottom`` are only accepted when parsing
with ``constants=True``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Union

from .errors import ExpressionTooDeep, ParseError

MAX_DEPTH = 64


@dataclass(frozen=True)
class Atom:
    label: str
    depth: int = field(default=1, init=False, compare=False, repr=False)
    size: int = field(default=1, init=False, compare=False, repr=False)

    def __post_init__(self):
        if not self.label:
            raise ValueError("atom label must be nonempty")


@dataclass(frozen=True)
class _Const:
    name: str
    depth: int = field(default=1, init=False, compare=False, repr=False)
    size: int = field(default=1, init=False, compare=False, repr=False)


TOP = _Const("top")
BOTTOM = _Const("bottom")


def _measure(obj, first, second=None):
    if second is None:
        depth, size = first.depth + 1, first.size + 1
    else:
        depth = 1 + (first.depth if first.depth > second.depth else second.depth)
        size = 1 + first.size + second.size
    if depth > MAX_DEPTH:
        raise ExpressionTooDeep(f"expression depth {depth} exceeds {MAX_DEPTH}")
    object.__setattr__(obj, "depth", depth)
    object.__setattr__(obj, "size", size)


@dataclass(frozen=True)
class Not:
    child: "PropExpr"
    depth: int = field(default=0, init=False, compare=False, repr=False)
    size: int = field(default=0, init=False, compare=False, repr=False)

    def __post_init__(self):
        _measure(self, self.child)


@dataclass(frozen=True)
class And:
    left: "PropExpr"
    right: "PropExpr"
    depth: int = field(default=0, init=False, compare=False, repr=False)
    size: int = field(default=0, init=False, compare=False, repr=False)

    def __post_init__(self):
        _measure(self, self.left, self.right)


@dataclass(frozen=True)
class Or:
    left: "PropExpr"
    right: "PropExpr"
    depth: int = field(default=0, init=False, compare=False, repr=False)
    size: int = field(default=0, init=False, compare=False, repr=False)

    def __post_init__(self):
        _measure(self, self.left, self.right)


PropExpr = Union[Atom, Not, And, Or, _Const]


# -- derived forms -----------------------------------------------------------

def noncontra(a: PropExpr) -> PropExpr:
    """``a° = not(a and not a)``."""
    return Not(And(a, Not(a)))


def contra(a: PropExpr) -> PropExpr:
    """Contradictoriness of ``a``: the negation of ``a°``."""
    return Not(noncontra(a))


def strong_neg(a: PropExpr) -> PropExpr:
    return And(Not(a), noncontra(a))


def nc_part(a: PropExpr) -> PropExpr:
    """Non-contradictory part ``a and a°``."""
    return And(a, noncontra(a))


# -- shape recognition -------------------------------------------------------

def _neg_of(w: PropExpr, x: PropExpr) -> bool:
    # up to one double negation: not x, or x is itself "not w"
    return (type(w) is Not and w.child == x) or (type(x) is Not and x.child == w)


def _contradiction(e: PropExpr) -> tuple[PropExpr, PropExpr] | None:
    """``(x, w)`` when ``e`` is ``x and w`` with ``w`` a negation of ``x``."""
    if isinstance(e, And) and _neg_of(e.right, e.left):
        return e.left, e.right
    return None


def _noncontra_subjects(e: PropExpr) -> tuple[PropExpr, PropExpr] | None:
    if isinstance(e, Not):
        return _contradiction(e.child)
    return None


def _is_consistent(e: PropExpr) -> bool:
    """Propositions known to obey non-contradiction: any ``x°`` (Arruda)."""
    return _noncontra_subjects(e) is not None


def _is_nc_part_of(p: PropExpr, a: PropExpr) -> bool:
    if not isinstance(p, And):
        return False
    for base, nc in ((p.left, p.right), (p.right, p.left)):
        subj = _noncontra_subjects(nc)
        if base == a and subj is not None and a in subj:
            return True
    return False


# -- rules -------------------------------------------------------------------

def _root_rewrites(e: PropExpr) -> Iterator[tuple[str, PropExpr]]:
    """Every rule instance applicable at the root of ``e``, in priority order."""
    if isinstance(e, Not):
        c = e.child
        if isinstance(c, Not):
            yield "R5-dn", c.child
        if c is TOP:
            yield "R5-not-top", BOTTOM
        if c is BOTTOM:
            yield "R5-not-bottom", TOP
        pair = _contradiction(c)
        if pair is not None and any(_is_consistent(s) for s in pair):
            yield "R3", TOP
        return
    if isinstance(e, And):
        l, r = e.left, e.right
        if l is BOTTOM or r is BOTTOM:
            yield "R5-and-zero", BOTTOM
        if l is TOP:
            yield "R5-and-unit", r
        if r is TOP:
            yield "R5-and-unit", l
        pair = _contradiction(e)
        if pair is not None and any(_is_consistent(s) for s in pair):
            yield "R3-dual", BOTTOM
        for cpart, other in ((l, r), (r, l)):
            subj = _contradiction(cpart)
            if subj is None:
                continue
            if other in subj:
                yield "R1", cpart
            if any(_neg_of(other, s) for s in subj):
                yield "R2", cpart
            if any(_is_nc_part_of(other, s) for s in subj):
                yield "R4", BOTTOM
        return
    if isinstance(e, Or):
        l, r = e.left, e.right
        if l is TOP or r is TOP:
            yield "R5-or-top", TOP
        if l is BOTTOM:
            yield "R5-or-unit", r
        if r is BOTTOM:
            yield "R5-or-unit", l


def _rebuild(e: PropExpr, children: list[PropExpr]) -> PropExpr:
    if isinstance(e, Not):
        return Not(children[0])
    return type(e)(children[0], children[1])


def _children(e: PropExpr) -> list[PropExpr]:
    if isinstance(e, Not):
        return [e.child]
    if isinstance(e, (And, Or)):
        return [e.left, e.right]
    return []


def redexes(e: PropExpr) -> Iterator[tuple[str, PropExpr]]:
    """One-step rewrites of ``e`` at every position, as ``(rule, result)``."""
    yield from _root_rewrites(e)
    kids = _children(e)
    for i, kid in enumerate(kids):
        for rule, new in redexes(kid):
            yield rule, _rebuild(e, kids[:i] + [new] + kids[i + 1:])


def simplify_trace(e: PropExpr) -> tuple[PropExpr, list[str]]:
    """Innermost normalization, returning the normal form and the rules fired."""
    trace: list[str] = []

    def go(node: PropExpr) -> PropExpr:
        kids = _children(node)
        if kids:
            new = [go(k) for k in kids]
            if any(a is not b for a, b in zip(new, kids)):
                node = _rebuild(node, new)
        while True:
            step = next(_root_rewrites(node), None)
            if step is None:
                return node
            trace.append(step[0])
            node = step[1]
            # rule outputs are normalized subterms or constants; renormalize anyway
            if _children(node):
                node = go(node)

    return go(e), trace


def simplify(e: PropExpr) -> PropExpr:
    return simplify_trace(e)[0]


def decomposition_of(e: PropExpr) -> PropExpr | None:
    """Return ``A`` when ``e`` is ``nc_part(A) or contra(A)`` (either order, after simplify).

    Such a disjunction is the decomposition of ``A`` into its non-contradictory
    and contradictory parts and carries the same probability as ``A``.
    """
    e = simplify(e)
    if not isinstance(e, Or):
        return None
    for p, c in ((e.left, e.right), (e.right, e.left)):
        subj = _contradiction(c)
        if subj is None:
            continue
        for a in subj:
            if _is_nc_part_of(p, a):
                return a
    return None


def atoms(e: PropExpr) -> set[str]:
    if isinstance(e, Atom):
        return {e.label}
    out: set[str] = set()
    for k in _children(e):
        out |= atoms(k)
    return out


def has_constants(e: PropExpr) -> bool:
    if isinstance(e, _Const):
        return True
    return any(has_constants(k) for k in _children(e))


# -- S-expressions -----------------------------------------------------------

_TOKEN = re.compile(r"\s*(\(|\)|[^\s()]+)")
_ATOM = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")
_SUGAR = {"nc": noncontra, "contra": contra, "sneg": strong_neg, "ncpart": nc_part}


def to_sexpr(e: PropExpr) -> str:
    if isinstance(e, Atom):
        return e.label
    if isinstance(e, _Const):
        return e.name
    if isinstance(e, Not):
        return f"(not {to_sexpr(e.child)})"
    op = "and" if isinstance(e, And) else "or"
    return f"({op} {to_sexpr(e.left)} {to_sexpr(e.right)})"


def parse(text: str, constants: bool = False) -> PropExpr:
    tokens = _tokenize(text)
    pos = 0

    def expr(level: int) -> PropExpr:
        nonlocal pos
        if level > MAX_DEPTH:
            raise ExpressionTooDeep(f"expression depth exceeds {MAX_DEPTH}")
        if pos >= len(tokens):
            raise ParseError("unexpected end of input")
        tok = tokens[pos]
        pos += 1
        if tok == ")":
            raise ParseError("unexpected ')'")
        if tok != "(":
            if tok in ("top", "bottom"):
                if not constants:
                    raise ParseError(f"'{tok}' is not allowed in user input")
                return TOP if tok == "top" else BOTTOM
            if tok in ("not", "and", "or") or tok in _SUGAR or not _ATOM.match(tok):
                raise ParseError(f"bad atom {tok!r}")
            return Atom(tok)
        if pos >= len(tokens):
            raise ParseError("unexpected end of input")
        op = tokens[pos]
        pos += 1
        if op in ("and", "or"):
            args = [expr(level + 1), expr(level + 1)]
        elif op == "not" or op in _SUGAR:
            args = [expr(level + 1)]
        else:
            raise ParseError(f"unknown operator {op!r}")
        if pos >= len(tokens) or tokens[pos] != ")":
            raise ParseError(f"expected ')' after ({op} ...")
        pos += 1
        if op == "and":
            return And(*args)
        if op == "or":
            return Or(*args)
        if op == "not":
            return Not(args[0])
        return _SUGAR[op](args[0])

    result = expr(1)
    if pos != len(tokens):
        raise ParseError(f"trailing input at token {pos}")
    return result


def _tokenize(text: str) -> list[str]:
    tokens, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"cannot tokenize at offset {pos}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens
