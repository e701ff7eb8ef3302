"""Compile a two-counter machine into a two-variable sentence over (succL, succP).

The sentence talks about structures whose preorder classes are the
configurations of a run. Every element outside the first class carries the
tag of the transition that produced its class, and the counters are the
numbers of ``B``- and ``R``-colored elements in a class. Finite models of
the sentence are exactly the encodings of accepting runs.

Conjuncts, in output order: T1-T5 (shape and transitions), B1-B5 and R1-R5
(counter bookkeeping, one block per color), A1-A3 (two classes, disjoint
colors, untagged first class).
"""

from __future__ import annotations

from dataclasses import dataclass

from .ca import CounterMachine
from .fo2 import (
    Formula, SuccL, SuccP, Unary, X, Y, conj, disj, exists, forall, iff,
    implies, neg,
)

COLORS = ("B", "R")


class UnsupportedCounters(ValueError):
    pass


class TrivialMachine(ValueError):
    pass


@dataclass(frozen=True)
class Vocabulary:
    """Predicate names used by the compiled sentence.

    ``color_of`` maps each machine counter to ``B`` or ``R``.
    """

    colors: tuple[str, str]
    tags: tuple[str, ...]
    color_of: dict

    def counter_of(self, color: str) -> str | None:
        for c, col in self.color_of.items():
            if col == color:
                return c
        return None


def vocabulary(machine: CounterMachine) -> Vocabulary:
    """Counters named B/R keep their color; others fill the free colors in declared order."""
    if len(machine.counters) > 2:
        raise UnsupportedCounters(f"{len(machine.counters)} counters; the reduction handles at most two")
    color_of = {c: c for c in machine.counters if c in COLORS}
    free = [col for col in COLORS if col not in color_of.values()]
    for c in machine.counters:
        if c not in color_of:
            color_of[c] = free.pop(0)
    tags = tuple(t.tag for t in machine.transitions)
    if len(set(tags)) != len(tags) or set(tags) & set(COLORS):
        raise UnsupportedCounters("transition tags must be distinct from each other and from B, R")
    return Vocabulary(COLORS, tags, color_of)


# -- shared shapes ----------------------------------------------------------

def has_pred(v=X) -> Formula:
    w = v.other
    return exists(w, SuccP(w, v))


def has_succ(v=X) -> Formula:
    w = v.other
    return exists(w, SuccP(v, w))


def first(v=X) -> Formula:
    """v is in the first class."""
    return neg(has_pred(v))


def last(v=X) -> Formula:
    return neg(has_succ(v))


def second() -> Formula:
    """x is in the second class."""
    return exists(Y, conj(SuccP(Y, X), neg(exists(X, SuccP(X, Y)))))


def in_class_exists(psi: Formula) -> Formula:
    """Some element of x's class satisfies ``psi`` (free in x only).

    A successor of a predecessor, or a predecessor of a successor, of x; the
    inner quantifier rebinds x. Correct on structures with at least two classes.
    """
    prec = exists(Y, conj(SuccP(Y, X), exists(X, conj(SuccP(Y, X), psi))))
    succ = exists(Y, conj(SuccP(X, Y), exists(X, conj(SuccP(X, Y), psi))))
    return disj(prec, succ)


def _any(*fs: Formula) -> Formula:
    return fs[0] if len(fs) == 1 else disj(*fs)


def _all(*fs: Formula) -> Formula:
    return fs[0] if len(fs) == 1 else conj(*fs)


def _tagged(ts, v=X) -> Formula:
    # empty group: (or), which is false
    return _any(*(Unary(t.tag, v) for t in ts)) if ts else disj()


def _color(machine: CounterMachine, color: str) -> tuple:
    """Transitions grouped by effect on ``color``: neutral, inc, dec, ifz."""
    counter = vocabulary(machine).counter_of(color)
    groups = {"neutral": [], "inc": [], "dec": [], "ifz": []}
    for t in machine.transitions:
        if t.op.counter != counter:
            groups["neutral"].append(t)
        else:
            groups[t.op.kind].append(t)
            if t.op.kind == "ifz":
                # a zero test leaves the counter unchanged
                groups["neutral"].append(t)
    return counter, groups["neutral"], groups["inc"], groups["dec"], groups["ifz"]


# -- T1..T5 -----------------------------------------------------------------

def build_t(machine: CounterMachine, i: int) -> Formula:
    ts = machine.transitions
    if i == 1:
        one = [Unary(t.tag, X) for t in ts]
        parts = [_any(*one)]
        parts += [neg(conj(a, b)) for j, a in enumerate(one) for b in one[j + 1:]]
        if len(one) > 1:
            # no other tag anywhere in x's class
            parts += [implies(a, neg(in_class_exists(_any(*(b for b in one if b != a))))) for a in one]
        return forall(X, implies(has_pred(), _all(*parts)))
    if i == 2:
        return forall(X, implies(second(), _tagged([t for t in ts if t.source == machine.initial])))
    if i == 3:
        return forall(X, implies(last(), _tagged([t for t in ts if t.target in machine.finals])))
    if i == 4:
        return forall(X, forall(Y, implies(SuccP(X, Y), _all(*(
            implies(Unary(t.tag, X), _tagged([u for u in ts if u.source == t.target], Y))
            for t in ts
        )))))
    if i == 5:
        return conj(
            forall(X, implies(has_succ(), exists(Y, conj(SuccL(X, Y), SuccP(X, Y))))),
            forall(X, implies(has_pred(), exists(Y, conj(SuccL(Y, X), SuccP(Y, X))))),
        )
    raise ValueError(f"no condition T{i}")


# -- B1..B5 / R1..R5 --------------------------------------------------------

def build_counter(machine: CounterMachine, color: str, i: int) -> Formula:
    """Counter condition ``i`` for ``color``; meaningful only where T1 and T5 hold."""
    if color not in COLORS:
        raise ValueError(f"color must be one of {COLORS}")
    vocabulary(machine)
    _, neutral, inc, dec, ifz = _color(machine, color)
    c = lambda v: Unary(color, v)  # noqa: E731
    if i == 1:
        return forall(X, implies(disj(first(), last()), neg(c(X))))
    if i == 2:
        return forall(X, forall(Y, implies(
            conj(_tagged(neutral), SuccL(Y, X), SuccP(Y, X)),
            iff(c(X), c(Y)),
        )))
    if i == 3:
        # every colored element of the previous class keeps its color along succL
        keep = forall(Y, implies(conj(SuccP(Y, X), c(Y)), exists(X, conj(SuccL(Y, X), c(X)))))
        # one uncolored predecessor gains the color; every other colored element
        # of x's class has a colored succL-predecessor
        fresh = exists(Y, conj(
            SuccP(Y, X), neg(c(Y)), exists(X, conj(SuccL(Y, X), c(X))),
            forall(X, implies(conj(SuccP(Y, X), c(X), neg(SuccL(Y, X))), exists(Y, conj(SuccL(Y, X), c(Y))))),
        ))
        return forall(X, implies(_tagged(inc), conj(keep, fresh)))
    if i == 4:
        # every colored element of x's class has a colored succL-predecessor
        keep = forall(Y, implies(SuccP(Y, X), forall(X, implies(
            conj(SuccP(Y, X), c(X)), exists(Y, conj(SuccL(Y, X), c(Y)))))))
        # some element of x's class is uncolored with a colored predecessor, and
        # every other colored element of the previous class keeps its color
        lost = [
            neg(c(X)), exists(Y, conj(SuccL(Y, X), c(Y))),
            forall(Y, implies(conj(SuccP(Y, X), c(Y), neg(SuccL(Y, X))), exists(X, conj(SuccL(Y, X), c(X))))),
        ]
        witness = exists(Y, conj(SuccP(Y, X), exists(X, conj(SuccP(Y, X), *lost))))
        return forall(X, implies(_tagged(dec), conj(keep, witness)))
    if i == 5:
        return forall(X, implies(_tagged(ifz), neg(exists(Y, conj(SuccP(Y, X), c(Y))))))
    raise ValueError(f"no condition {color}{i}")


# -- auxiliary conjuncts ------------------------------------------------------

def build_aux(machine: CounterMachine, i: int) -> Formula:
    if i == 1:
        return exists(X, exists(Y, SuccP(X, Y)))
    if i == 2:
        return forall(X, neg(conj(Unary("B", X), Unary("R", X))))
    if i == 3:
        return forall(X, implies(first(), _all(*(neg(Unary(t.tag, X)) for t in machine.transitions))))
    raise ValueError(f"no auxiliary condition A{i}")


def conjuncts(machine: CounterMachine) -> list[tuple[str, Formula]]:
    """Labelled conjuncts of the compiled sentence, in output order."""
    if not machine.transitions:
        raise TrivialMachine("machine has no transitions")
    vocabulary(machine)
    out = [(f"T{i}", build_t(machine, i)) for i in range(1, 6)]
    for color in COLORS:
        out += [(f"{color}{i}", build_counter(machine, color, i)) for i in range(1, 6)]
    out += [(f"A{i}", build_aux(machine, i)) for i in range(1, 4)]
    return out


def compile_machine(machine: CounterMachine) -> Formula:
    return conj(*(f for _, f in conjuncts(machine)))


compile = compile_machine  # noqa: A001
