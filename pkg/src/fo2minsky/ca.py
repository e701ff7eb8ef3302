"""Minsky counter automata: machines, configurations, runs and a BFS oracle.

Text format (``#`` starts a comment)::

    states: q0 q1 q2
    counters: B R
    init: q0
    final: q2
    trans: q0 inc B q1
    trans: q1 dec B q2

Transitions are tagged ``t1``, ``t2``, ... in file order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

OPS = ("inc", "dec", "ifz")


class ParseError(ValueError):
    pass


class NotApplicable(ValueError):
    pass


@dataclass(frozen=True)
class CounterOp:
    kind: str
    counter: str

    def __post_init__(self):
        if self.kind not in OPS:
            raise ValueError(f"unknown counter operation {self.kind!r}")

    def __str__(self):
        return f"{self.kind}({self.counter})"


@dataclass(frozen=True)
class Transition:
    source: str
    op: CounterOp
    target: str
    tag: str

    def __str__(self):
        return f"{self.tag}: ({self.source}, {self.op}, {self.target})"


@dataclass(frozen=True)
class Configuration:
    """A state plus counter values.

    ``values`` may be given as a mapping; it is stored as a tuple of
    ``(counter, value)`` pairs sorted by counter name so configurations hash.
    """

    state: str
    values: tuple = ()

    def __post_init__(self):
        items = self.values.items() if isinstance(self.values, Mapping) else self.values
        items = tuple(sorted((str(c), int(v)) for c, v in items))
        if any(v < 0 for _, v in items):
            raise ValueError(f"negative counter value in {items}")
        object.__setattr__(self, "values", items)

    def value(self, counter: str) -> int:
        for c, v in self.values:
            if c == counter:
                return v
        raise KeyError(counter)

    def as_dict(self) -> dict[str, int]:
        return dict(self.values)


@dataclass(frozen=True)
class CounterMachine:
    states: tuple[str, ...]
    counters: tuple[str, ...]
    transitions: tuple[Transition, ...]
    initial: str
    finals: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "counters", tuple(self.counters))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        object.__setattr__(self, "finals", frozenset(self.finals))
        problems = self.problems()
        if problems:
            raise ValueError("; ".join(problems))

    def problems(self) -> list[str]:
        out = []
        states = set(self.states)
        if len(states) != len(self.states):
            out.append("duplicate state")
        if len(set(self.counters)) != len(self.counters):
            out.append("duplicate counter")
        if self.initial not in states:
            out.append(f"initial state {self.initial!r} not declared")
        for q in sorted(self.finals - states):
            out.append(f"final state {q!r} not declared")
        tags = set()
        for t in self.transitions:
            if t.source not in states or t.target not in states:
                out.append(f"transition {t.tag} uses an undeclared state")
            if t.op.counter not in self.counters:
                out.append(f"transition {t.tag} uses undeclared counter {t.op.counter!r}")
            if t.tag in tags:
                out.append(f"duplicate transition tag {t.tag}")
            tags.add(t.tag)
        return out

    def transition(self, tag: str) -> Transition:
        for t in self.transitions:
            if t.tag == tag:
                return t
        raise KeyError(tag)

    def initial_config(self) -> Configuration:
        return Configuration(self.initial, {c: 0 for c in self.counters})


@dataclass(frozen=True)
class Run:
    """``configs[i]`` leads to ``configs[i + 1]`` via ``steps[i]``."""

    configs: tuple[Configuration, ...]
    steps: tuple[Transition, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "configs", tuple(self.configs))
        object.__setattr__(self, "steps", tuple(self.steps))
        if not self.configs:
            raise ValueError("a run has at least one configuration")
        if len(self.steps) != len(self.configs) - 1:
            raise ValueError("a run with n+1 configurations needs exactly n steps")

    def __len__(self):
        return len(self.steps)


def apply(machine: CounterMachine, t: Transition, c: Configuration) -> Configuration:
    if t not in machine.transitions:
        raise NotApplicable(f"{t.tag} is not a transition of this machine")
    if c.state != t.source:
        raise NotApplicable(f"{t.tag} starts in {t.source}, configuration is in {c.state}")
    values = c.as_dict()
    counter = t.op.counter
    if counter not in values:
        raise NotApplicable(f"configuration has no value for counter {counter}")
    if t.op.kind == "inc":
        values[counter] += 1
    elif t.op.kind == "dec":
        if values[counter] == 0:
            raise NotApplicable(f"{t.tag}: cannot decrement {counter} at zero")
        values[counter] -= 1
    elif values[counter] != 0:
        raise NotApplicable(f"{t.tag}: {counter} = {values[counter]} is not zero")
    return Configuration(t.target, values)


def run_violation(machine: CounterMachine, run: Run) -> str | None:
    """Reason why ``run`` is not an accepting run of ``machine``, or None."""
    if run.configs[0] != machine.initial_config():
        return "run does not start at the initial configuration with zero counters"
    for i, (t, c) in enumerate(zip(run.steps, run.configs)):
        try:
            nxt = apply(machine, t, c)
        except NotApplicable as e:
            return f"step {i + 1}: {e}"
        if nxt != run.configs[i + 1]:
            return f"step {i + 1}: {t.tag} yields {format_config(machine, nxt)}"
    last = run.configs[-1]
    if last.state not in machine.finals:
        return f"last state {last.state} is not final"
    if any(v for _, v in last.values):
        return "counters are not zero in the last configuration"
    return None


def validate_run(machine: CounterMachine, run: Run) -> bool:
    return run_violation(machine, run) is None


def find_accepting_run(machine: CounterMachine, max_steps: int, min_steps: int = 0) -> Run | None:
    """Breadth-first search for a shortest accepting run of at most ``max_steps`` steps.

    Among shortest runs, the one whose tag sequence comes first in transition
    order is returned. ``min_steps=1`` excludes the empty run when the initial
    state is final.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    start = machine.initial_config()
    # nodes are (configuration, reached-after-at-least-min_steps)
    root = (start, min_steps <= 0)
    parent: dict = {root: None}
    frontier = deque([(root, 0)])
    while frontier:
        node, depth = frontier.popleft()
        config, armed = node
        if armed and config.state in machine.finals and not any(v for _, v in config.values):
            return _rebuild(parent, node)
        if depth == max_steps:
            continue
        for t in machine.transitions:
            if t.source != config.state:
                continue
            try:
                nxt = apply(machine, t, config)
            except NotApplicable:
                continue
            if any(v > max_steps for _, v in nxt.values):
                continue
            child = (nxt, armed or depth + 1 >= min_steps)
            if child not in parent:
                parent[child] = (node, t)
                frontier.append((child, depth + 1))
    return None


def _rebuild(parent, node) -> Run:
    configs, steps = [node[0]], []
    while parent[node] is not None:
        node, t = parent[node]
        configs.append(node[0])
        steps.append(t)
    return Run(tuple(reversed(configs)), tuple(reversed(steps)))


# -- text formats -----------------------------------------------------------


def _lines(text: str) -> Iterable[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_machine(text: str) -> CounterMachine:
    states, counters, finals, trans = None, None, [], []
    initial = None
    for lineno, line in _lines(text):
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(f"line {lineno}: expected 'key: value', got {line!r}")
        key, words = key.strip(), rest.split()
        if key == "states":
            states = words
        elif key == "counters":
            counters = words
        elif key == "init":
            if len(words) != 1:
                raise ParseError(f"line {lineno}: exactly one initial state expected")
            initial = words[0]
        elif key == "final":
            finals.extend(words)
        elif key == "trans":
            if len(words) != 4 or words[1] not in OPS:
                raise ParseError(f"line {lineno}: expected 'trans: <src> inc|dec|ifz <counter> <dst>'")
            src, kind, counter, dst = words
            trans.append(Transition(src, CounterOp(kind, counter), dst, f"t{len(trans) + 1}"))
        else:
            raise ParseError(f"line {lineno}: unknown key {key!r}")
    if states is None or counters is None or initial is None:
        raise ParseError("machine needs 'states:', 'counters:' and 'init:' lines")
    try:
        return CounterMachine(tuple(states), tuple(counters), tuple(trans), initial, frozenset(finals))
    except ValueError as e:
        raise ParseError(str(e)) from None


def format_machine(machine: CounterMachine) -> str:
    lines = [
        f"states: {' '.join(machine.states)}",
        f"counters: {' '.join(machine.counters)}",
        f"init: {machine.initial}",
        f"final: {' '.join(q for q in machine.states if q in machine.finals)}",
    ]
    lines += [f"trans: {t.source} {t.op.kind} {t.op.counter} {t.target}" for t in machine.transitions]
    return "\n".join(lines) + "\n"


def format_config(machine: CounterMachine, c: Configuration) -> str:
    vals = c.as_dict()
    return " ".join([c.state] + [f"{k}={vals[k]}" for k in machine.counters if k in vals])


def format_run(machine: CounterMachine, run: Run) -> str:
    """Alternating ``config:`` and ``step:`` lines."""
    lines = [f"# run: {len(run)} steps", f"config: {format_config(machine, run.configs[0])}"]
    for t, c in zip(run.steps, run.configs[1:]):
        lines.append(f"step: {t.tag}")
        lines.append(f"config: {format_config(machine, c)}")
    return "\n".join(lines) + "\n"


def parse_run(machine: CounterMachine, text: str) -> Run:
    configs, steps = [], []
    for lineno, line in _lines(text):
        key, sep, rest = line.partition(":")
        words = rest.split()
        if key == "config" and sep and words:
            if len(configs) != len(steps):
                raise ParseError(f"line {lineno}: two configurations without a step between them")
            values = {}
            for w in words[1:]:
                name, eq, num = w.partition("=")
                if not eq or not num.isdigit():
                    raise ParseError(f"line {lineno}: bad counter value {w!r}")
                values[name] = int(num)
            configs.append(Configuration(words[0], values))
        elif key == "step" and sep and len(words) == 1:
            if len(configs) != len(steps) + 1:
                raise ParseError(f"line {lineno}: step must follow a configuration")
            try:
                steps.append(machine.transition(words[0]))
            except KeyError:
                raise ParseError(f"line {lineno}: unknown transition {words[0]!r}") from None
        else:
            raise ParseError(f"line {lineno}: expected 'config: ...' or 'step: <tag>'")
    if not configs or len(configs) != len(steps) + 1:
        raise ParseError("a run must start and end with a configuration")
    return Run(tuple(configs), tuple(steps))
