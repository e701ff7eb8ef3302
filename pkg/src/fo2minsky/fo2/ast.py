"""Formulas of two-variable logic over unary predicates, succL, succP and =."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union


class Var(str, Enum):
    X = "x"
    Y = "y"

    def __str__(self):
        return self.value

    @property
    def other(self) -> "Var":
        return Var.Y if self is Var.X else Var.X


X, Y = Var.X, Var.Y


@dataclass(frozen=True)
class Unary:
    pred: str
    var: Var


@dataclass(frozen=True)
class SuccL:
    left: Var
    right: Var


@dataclass(frozen=True)
class SuccP:
    left: Var
    right: Var


@dataclass(frozen=True)
class Eq:
    left: Var
    right: Var


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    args: tuple["Formula", ...]


@dataclass(frozen=True)
class Or:
    args: tuple["Formula", ...]


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: Var
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: Var
    body: "Formula"


Formula = Union[Unary, SuccL, SuccP, Eq, Not, And, Or, Implies, Iff, Exists, Forall]
ATOMS = (Unary, SuccL, SuccP, Eq)
BINARY_ATOMS = (SuccL, SuccP, Eq)


# Builders. conj/disj take any number of arguments; the empty conjunction
# is true and the empty disjunction is false.

def conj(*fs: Formula) -> And:
    return And(tuple(fs))


def disj(*fs: Formula) -> Or:
    return Or(tuple(fs))


def neg(f: Formula) -> Not:
    return Not(f)


def implies(a: Formula, b: Formula) -> Implies:
    return Implies(a, b)


def iff(a: Formula, b: Formula) -> Iff:
    return Iff(a, b)


def exists(v: Var, f: Formula) -> Exists:
    return Exists(v, f)


def forall(v: Var, f: Formula) -> Forall:
    return Forall(v, f)


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, ATOMS):
        return ()
    if isinstance(f, Not):
        return (f.arg,)
    if isinstance(f, (And, Or)):
        return f.args
    if isinstance(f, (Implies, Iff)):
        return (f.left, f.right)
    if isinstance(f, (Exists, Forall)):
        return (f.body,)
    raise TypeError(f"not a formula: {f!r}")


def free_vars(f: Formula) -> frozenset[Var]:
    if isinstance(f, Unary):
        return frozenset((f.var,))
    if isinstance(f, BINARY_ATOMS):
        return frozenset((f.left, f.right))
    if isinstance(f, (Exists, Forall)):
        return free_vars(f.body) - {f.var}
    out: frozenset[Var] = frozenset()
    for g in children(f):
        out |= free_vars(g)
    return out


def is_sentence(f: Formula) -> bool:
    return not free_vars(f)


def predicates(f: Formula) -> set[str]:
    if isinstance(f, Unary):
        return {f.pred}
    out: set[str] = set()
    for g in children(f):
        out |= predicates(g)
    return out


def size(f: Formula) -> int:
    return 1 + sum(size(g) for g in children(f))


def depth(f: Formula) -> int:
    return 1 + max((depth(g) for g in children(f)), default=0)
