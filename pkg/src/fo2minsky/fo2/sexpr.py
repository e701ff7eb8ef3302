"""S-expression syntax for formulas.

    (P x)  (succL x y)  (succP x y)  (= x y)
    (not f)  (and f ...)  (or f ...)  (implies f g)  (iff f g)
    (exists x f)  (forall y f)

``;`` starts a comment running to the end of the line.
"""

from __future__ import annotations

import re

from .ast import (
    And, Eq, Exists, Forall, Formula, Iff, Implies, Not, Or, SuccL, SuccP,
    Unary, Var,
)

KEYWORDS = {"not", "and", "or", "implies", "iff", "exists", "forall", "succL", "succP", "="}

_TOKEN = re.compile(r"\s+|;[^\n]*|\(|\)|[^\s();]+")


class FormulaSyntaxError(ValueError):
    def __init__(self, msg, line=0, col=0):
        super().__init__(f"{msg} (at {line}:{col})")
        self.line, self.col = line, col


def _tokens(text):
    line, col, i = 1, 1, 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        tok = m.group()
        if not tok[0].isspace() and tok[0] != ";":
            yield tok, line, col
        nl = tok.count("\n")
        if nl:
            line += nl
            col = len(tok) - tok.rfind("\n")
        else:
            col += len(tok)
        i = m.end()
    yield None, line, col


def _read(text):
    """Nested lists of (token, line, col) triples."""
    toks = _tokens(text)
    stack = [[]]
    opened = []
    for tok, line, col in toks:
        if tok is None:
            break
        if tok == "(":
            stack.append([])
            opened.append((line, col))
        elif tok == ")":
            if len(stack) == 1:
                raise FormulaSyntaxError("unbalanced ')'", line, col)
            done = stack.pop()
            start = opened.pop()
            stack[-1].append((done, *start))
        else:
            stack[-1].append((tok, line, col))
    if len(stack) > 1:
        raise FormulaSyntaxError("missing ')'", *opened[-1])
    top = stack[0]
    if len(top) != 1:
        where = top[1][1:] if len(top) > 1 else (line, col)
        raise FormulaSyntaxError("expected exactly one formula", *where)
    return top[0]


def _var(node):
    tok, line, col = node
    if tok not in ("x", "y"):
        raise FormulaSyntaxError(f"expected variable x or y, got {_show(tok)}", line, col)
    return Var(tok)


def _show(tok):
    return "a list" if isinstance(tok, list) else repr(tok)


def _build(node) -> Formula:
    body, line, col = node
    if not isinstance(body, list):
        raise FormulaSyntaxError(f"expected '(', got {body!r}", line, col)
    if not body:
        raise FormulaSyntaxError("empty list", line, col)
    head, hl, hc = body[0]
    args = body[1:]
    if isinstance(head, list):
        raise FormulaSyntaxError("list cannot start with a list", hl, hc)

    def arity(k):
        if len(args) != k:
            raise FormulaSyntaxError(f"'{head}' takes {k} argument(s), got {len(args)}", line, col)

    if head in ("succL", "succP", "="):
        arity(2)
        cls = {"succL": SuccL, "succP": SuccP, "=": Eq}[head]
        return cls(_var(args[0]), _var(args[1]))
    if head == "not":
        arity(1)
        return Not(_build(args[0]))
    if head in ("and", "or"):
        return (And if head == "and" else Or)(tuple(_build(a) for a in args))
    if head in ("implies", "iff"):
        arity(2)
        return (Implies if head == "implies" else Iff)(_build(args[0]), _build(args[1]))
    if head in ("exists", "forall"):
        arity(2)
        return (Exists if head == "exists" else Forall)(_var(args[0]), _build(args[1]))
    arity(1)
    return Unary(head, _var(args[0]))


def parse_formula(text: str) -> Formula:
    return _build(_read(text))


def print_formula(f: Formula) -> str:
    if isinstance(f, Unary):
        return f"({f.pred} {f.var})"
    if isinstance(f, (SuccL, SuccP, Eq)):
        head = {SuccL: "succL", SuccP: "succP", Eq: "="}[type(f)]
        return f"({head} {f.left} {f.right})"
    head, parts = _split(f)
    return "(" + " ".join([head, *parts[:_inline(f)], *map(print_formula, parts[_inline(f):])]) + ")"


def _split(f):
    if isinstance(f, Not):
        return "not", [f.arg]
    if isinstance(f, (And, Or)):
        return ("and" if isinstance(f, And) else "or"), list(f.args)
    if isinstance(f, (Implies, Iff)):
        return ("implies" if isinstance(f, Implies) else "iff"), [f.left, f.right]
    if isinstance(f, (Exists, Forall)):
        return ("exists" if isinstance(f, Exists) else "forall"), [str(f.var), f.body]
    raise TypeError(f"not a formula: {f!r}")


def _inline(f):
    # quantifiers keep their variable on the head line
    return 1 if isinstance(f, (Exists, Forall)) else 0


def pretty_formula(f: Formula, width: int = 88, indent: int = 0) -> str:
    flat = print_formula(f)
    if indent + len(flat) <= width or isinstance(f, (Unary, SuccL, SuccP, Eq)):
        return " " * indent + flat
    head, parts = _split(f)
    k = _inline(f)
    first = " " * indent + "(" + " ".join([head, *parts[:k]])
    rest = [pretty_formula(g, width, indent + 2) for g in parts[k:]]
    return "\n".join([first, *rest]) + ")"
