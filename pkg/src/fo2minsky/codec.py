"""Runs to structures and back.

A run with n steps becomes n + 1 classes of k elements each, where k is the
largest combined counter value along the run (at least 1). The linear order
runs through the classes in k threads: thread t occupies positions
t*(n+1) ... t*(n+1)+n, one element per class, so every element outside the
last class has its succL-successor in the next class.

In class i, B colors threads 0 .. b_i-1 and R colors threads k-r_i .. k-1.
Every element of class i >= 1 carries the tag of the i-th transition.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ca import Configuration, CounterMachine, Run, run_violation
from .reduction import vocabulary
from .structures import OrderedStructure, validate


class EncodeError(ValueError):
    pass


class DecodeError(ValueError):
    pass


class NoTag(DecodeError):
    pass


class AmbiguousTag(DecodeError):
    pass


class SingleClass(DecodeError):
    pass


@dataclass(frozen=True)
class EncodingMeta:
    k: int
    threads: int
    class_count: int

    def comments(self) -> list[str]:
        return [f"k: {self.k}", f"threads: {self.threads}", f"classes: {self.class_count}"]


def encode(machine: CounterMachine, run: Run) -> tuple[OrderedStructure, EncodingMeta]:
    if not run.steps:
        raise EncodeError("cannot encode a run without steps")
    why = run_violation(machine, run)
    if why:
        raise EncodeError(f"not an accepting run: {why}")
    vocab = vocabulary(machine)
    blue, red = vocab.counter_of("B"), vocab.counter_of("R")

    def count(c: Configuration, counter):
        return c.value(counter) if counter is not None else 0

    b = [count(c, blue) for c in run.configs]
    r = [count(c, red) for c in run.configs]
    m = len(run.configs)
    k = max(1, max(x + y for x, y in zip(b, r)))

    def elem(thread, cls):
        return f"e{thread * m + cls}"

    order = tuple(f"e{i}" for i in range(k * m))
    classes = tuple(frozenset(elem(t, i) for t in range(k)) for i in range(m))
    labels: dict[str, set[str]] = {}
    for i in range(m):
        labels.setdefault("B", set()).update(elem(t, i) for t in range(b[i]))
        labels.setdefault("R", set()).update(elem(t, i) for t in range(k - r[i], k))
        if i:
            labels.setdefault(run.steps[i - 1].tag, set()).update(classes[i])
    s = OrderedStructure(order, classes, {p: frozenset(es) for p, es in labels.items()})
    return s, EncodingMeta(k, k, m)


def decode(machine: CounterMachine, s: OrderedStructure) -> Run:
    """Read a run off the classes of ``s``. Acceptance is not checked here."""
    problems = validate(s)
    if problems:
        raise DecodeError("invalid structure: " + "; ".join(problems))
    if len(s.classes) < 2:
        raise SingleClass("structure has a single class, so no transition")
    vocab = vocabulary(machine)
    steps = []
    for i, cls in enumerate(s.classes[1:], 1):
        found = {t.tag for t in machine.transitions if s.label(t.tag) & cls}
        if len(found) > 1:
            raise AmbiguousTag(f"class {i} carries tags {', '.join(sorted(found))}")
        if not found:
            raise NoTag(f"class {i} carries no transition tag")
        tag = found.pop()
        if not cls <= s.label(tag):
            raise NoTag(f"class {i}: some elements lack tag {tag}")
        steps.append(machine.transition(tag))

    def values(cls):
        return {c: len(s.label(vocab.color_of[c]) & cls) for c in machine.counters}

    configs = [Configuration(steps[0].source, values(s.classes[0]))]
    for t, cls in zip(steps, s.classes[1:]):
        configs.append(Configuration(t.target, values(cls)))
    return Run(tuple(configs), tuple(steps))
