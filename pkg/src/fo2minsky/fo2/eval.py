"""Evaluation of two-variable formulas over ordered structures.

``evaluate`` computes, bottom-up, the table of every subformula over all
(x, y) pairs of the universe: O(n^2) work per node. ``compile_formula``
turns a formula into nested closures evaluated pointwise with
short-circuiting, which is faster on the tiny structures the model search
enumerates.
"""

from __future__ import annotations

from typing import Callable, Mapping

import numpy as np

from ..structures import Indexed, OrderedStructure, UnknownElement
from .ast import (
    And, Eq, Exists, Forall, Formula, Iff, Implies, Not, Or, SuccL, SuccP,
    Unary, Var, free_vars,
)


class UnboundVariable(ValueError):
    pass


def _relations(view: Indexed) -> dict[type, np.ndarray]:
    n = view.n
    idx = np.arange(n)
    cls = np.asarray(view.cls)
    return {
        SuccL: idx[None, :] == idx[:, None] + 1,
        SuccP: cls[None, :] == cls[:, None] + 1,
        Eq: np.eye(n, dtype=bool),
    }


def table(view: Indexed, f: Formula, _rel=None) -> np.ndarray:
    """Boolean (n, n) array whose entry [i, j] is the truth value of ``f``
    with x at position i and y at position j."""
    n = view.n
    rel = _rel if _rel is not None else _relations(view)

    def go(f) -> np.ndarray:
        if isinstance(f, Unary):
            row = np.asarray(view.lab.get(f.pred, (False,) * n), dtype=bool)
            col = row[:, None] if f.var is Var.X else row[None, :]
            return np.broadcast_to(col, (n, n))
        if isinstance(f, (SuccL, SuccP, Eq)):
            m = rel[type(f)]
            if f.left is f.right:
                d = np.diag(m)
                return np.broadcast_to(d[:, None] if f.left is Var.X else d[None, :], (n, n))
            return m if f.left is Var.X else m.T
        if isinstance(f, Not):
            return ~go(f.arg)
        if isinstance(f, And):
            out = np.ones((n, n), dtype=bool)
            for g in f.args:
                out = out & go(g)
            return out
        if isinstance(f, Or):
            out = np.zeros((n, n), dtype=bool)
            for g in f.args:
                out = out | go(g)
            return out
        if isinstance(f, Implies):
            return ~go(f.left) | go(f.right)
        if isinstance(f, Iff):
            return go(f.left) == go(f.right)
        if isinstance(f, (Exists, Forall)):
            body = go(f.body)
            axis = 0 if f.var is Var.X else 1
            red = body.any(axis=axis, keepdims=True) if isinstance(f, Exists) else body.all(axis=axis, keepdims=True)
            return np.broadcast_to(red, (n, n))
        raise TypeError(f"not a formula: {f!r}")

    return go(f)


def evaluate(s: OrderedStructure, f: Formula, a: Mapping | None = None) -> bool:
    """Truth value of ``f`` in ``s`` under the assignment ``a`` (variable -> element)."""
    a = {Var(k): v for k, v in (a or {}).items()}
    missing = free_vars(f) - a.keys()
    if missing:
        raise UnboundVariable(", ".join(sorted(v.value for v in missing)))
    pos = s.position
    for e in a.values():
        if e not in pos:
            raise UnknownElement(e)
    t = table(s.indexed, f)
    return bool(t[pos[a[Var.X]] if Var.X in a else 0, pos[a[Var.Y]] if Var.Y in a else 0])


def satisfies(s: OrderedStructure, sentence: Formula) -> bool:
    return evaluate(s, sentence, {})


# -- compiled pointwise evaluation -------------------------------------------

Compiled = Callable[[Indexed, int, int], bool]


def compile_formula(f: Formula) -> Compiled:
    """Closure ``fn(view, x, y) -> bool`` with x, y linear positions.

    The view only needs ``n``, ``cls`` and ``lab`` (a mapping that may omit
    predicates that label nothing).
    """
    if isinstance(f, Unary):
        p = f.pred
        if f.var is Var.X:
            return lambda v, x, y: p in v.lab and v.lab[p][x]
        return lambda v, x, y: p in v.lab and v.lab[p][y]
    if isinstance(f, SuccL):
        return _binary(f, lambda a, b: b == a + 1, lambda v, a, b: b == a + 1)
    if isinstance(f, SuccP):
        return _binary(f, None, lambda v, a, b: v.cls[b] == v.cls[a] + 1)
    if isinstance(f, Eq):
        return _binary(f, lambda a, b: a == b, None)
    if isinstance(f, Not):
        g = compile_formula(f.arg)
        return lambda v, x, y: not g(v, x, y)
    if isinstance(f, And):
        gs = tuple(compile_formula(g) for g in f.args)
        if len(gs) == 1:
            return gs[0]
        if len(gs) == 2:
            g0, g1 = gs
            return lambda v, x, y: g0(v, x, y) and g1(v, x, y)

        def conj(v, x, y):
            for g in gs:
                if not g(v, x, y):
                    return False
            return True
        return conj
    if isinstance(f, Or):
        gs = tuple(compile_formula(g) for g in f.args)
        if len(gs) == 1:
            return gs[0]
        if len(gs) == 2:
            g0, g1 = gs
            return lambda v, x, y: g0(v, x, y) or g1(v, x, y)

        def disj(v, x, y):
            for g in gs:
                if g(v, x, y):
                    return True
            return False
        return disj
    if isinstance(f, Implies):
        a, b = compile_formula(f.left), compile_formula(f.right)
        return lambda v, x, y: not a(v, x, y) or b(v, x, y)
    if isinstance(f, Iff):
        a, b = compile_formula(f.left), compile_formula(f.right)
        return lambda v, x, y: a(v, x, y) == b(v, x, y)
    if isinstance(f, (Exists, Forall)):
        g = compile_formula(f.body)
        want = isinstance(f, Exists)
        if f.var is Var.X:
            def quant_x(v, x, y):
                for u in range(v.n):
                    if g(v, u, y) == want:
                        return want
                return not want
            return quant_x

        def quant_y(v, x, y):
            for u in range(v.n):
                if g(v, x, u) == want:
                    return want
            return not want
        return quant_y
    raise TypeError(f"not a formula: {f!r}")


def _binary(f, pure, with_view) -> Compiled:
    # pure(a, b) ignores the view; with_view(v, a, b) needs it
    rel = with_view if pure is None else (lambda v, a, b: pure(a, b))
    key = (f.left, f.right)
    if key == (Var.X, Var.Y):
        return lambda v, x, y: rel(v, x, y)
    if key == (Var.Y, Var.X):
        return lambda v, x, y: rel(v, y, x)
    if key == (Var.X, Var.X):
        return lambda v, x, y: rel(v, x, x)
    return lambda v, x, y: rel(v, y, y)
