"""Finite structures with one linear order and one total preorder.

The linear order is stored as the ascending sequence of elements and the
preorder as an ordered partition (its classes, ascending). Both successor
relations are derived from these.

Text format::

    size: 3
    order: e0 e1 e2
    classes: [e0] [e1] [e2]
    label B: e1
    label t1: e1
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence


class StructureParseError(ValueError):
    pass


class UnknownElement(KeyError):
    pass


@dataclass(frozen=True, eq=False)
class OrderedStructure:
    order: tuple[str, ...]
    classes: tuple[frozenset[str], ...]
    labels: Mapping[str, frozenset[str]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        object.__setattr__(self, "classes", tuple(frozenset(c) for c in self.classes))
        # empty label sets are dropped so "omitted" and "empty" compare equal
        labels = {p: frozenset(es) for p, es in sorted(self.labels.items()) if es}
        object.__setattr__(self, "labels", labels)

    def __eq__(self, other):
        if not isinstance(other, OrderedStructure):
            return NotImplemented
        return (self.order, self.classes, self.labels) == (other.order, other.classes, other.labels)

    def __hash__(self):
        return hash((self.order, self.classes, tuple(self.labels.items())))

    def __len__(self):
        return len(self.order)

    @cached_property
    def position(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.order)}

    @cached_property
    def _class_of(self) -> dict[str, int]:
        return {e: i for i, c in enumerate(self.classes) for e in c}

    def class_index(self, e: str) -> int:
        try:
            return self._class_of[e]
        except KeyError:
            raise UnknownElement(e) from None

    def same_class(self, u: str, v: str) -> bool:
        return self.class_index(u) == self.class_index(v)

    def label(self, pred: str) -> frozenset[str]:
        return self.labels.get(pred, frozenset())

    def sorted_class(self, i: int) -> list[str]:
        """Elements of class ``i`` in linear order."""
        pos = self.position
        return sorted(self.classes[i], key=lambda e: pos.get(e, -1))

    @cached_property
    def indexed(self) -> "Indexed":
        return Indexed.from_structure(self)


def derive_succ_l(s: OrderedStructure) -> set[tuple[str, str]]:
    return {(s.order[i], s.order[i + 1]) for i in range(len(s.order) - 1)}


def derive_succ_p(s: OrderedStructure) -> set[tuple[str, str]]:
    return {(u, v) for a, b in zip(s.classes, s.classes[1:]) for u in a for v in b}


def class_index(s: OrderedStructure, e: str) -> int:
    return s.class_index(e)


def same_class(s: OrderedStructure, u: str, v: str) -> bool:
    return s.same_class(u, v)


def validate(s: OrderedStructure) -> list[str]:
    """List of violated structure invariants; empty means valid."""
    out = []
    universe = set(s.order)
    if not s.order:
        out.append("empty universe")
    if len(universe) != len(s.order):
        out.append("linear order repeats an element")
    seen: set[str] = set()
    disjoint = True
    for c in s.classes:
        if not c:
            out.append("empty class")
        if seen & c:
            disjoint = False
        seen |= c
    if not disjoint:
        out.append("classes not disjoint")
    if seen != universe:
        out.append("partition/universe mismatch")
    for p, es in s.labels.items():
        if not es <= universe:
            out.append(f"label {p} mentions elements outside the universe")
    if out:
        return out

    # reconstructed relations; cheap at the sizes we handle
    elems = list(s.order)
    cls = s._class_of
    pos = s.position

    def le_p(u, v):
        return cls[u] <= cls[v]

    def le_l(u, v):
        return pos[u] <= pos[v]

    for name, le in (("preorder", le_p), ("linear order", le_l)):
        if not all(le(u, u) for u in elems):
            out.append(f"{name} not reflexive")
        if not all(le(u, v) or le(v, u) for u in elems for v in elems):
            out.append(f"{name} not total")
        if not all(le(u, w) for u in elems for v in elems for w in elems if le(u, v) and le(v, w)):
            out.append(f"{name} not transitive")
    if not all(u == v for u in elems for v in elems if le_l(u, v) and le_l(v, u)):
        out.append("linear order not antisymmetric")
    return out


def from_class_sizes(sizes: Sequence[int], labels: Mapping[str, Iterable[int]] | None = None) -> OrderedStructure:
    """Structure e0 < e1 < ... whose classes are consecutive blocks of the given sizes.

    Labels are given by element position.
    """
    n = sum(sizes)
    order = tuple(f"e{i}" for i in range(n))
    classes, i = [], 0
    for size in sizes:
        classes.append(frozenset(order[i:i + size]))
        i += size
    labs = {p: frozenset(order[j] for j in js) for p, js in (labels or {}).items()}
    return OrderedStructure(order, tuple(classes), labs)


def from_class_indices(cls: Sequence[int], labels: Mapping[str, Iterable[int]] | None = None) -> OrderedStructure:
    """Canonical order e0 < ... < e(n-1), element i placed in class ``cls[i]``.

    Class indices must cover 0..max(cls).
    """
    order = tuple(f"e{i}" for i in range(len(cls)))
    k = max(cls) + 1 if cls else 0
    classes = tuple(frozenset(order[i] for i, c in enumerate(cls) if c == j) for j in range(k))
    labs = {p: frozenset(order[j] for j in js) for p, js in (labels or {}).items()}
    return OrderedStructure(order, classes, labs)


def rename(s: OrderedStructure, mapping: Mapping[str, str]) -> OrderedStructure:
    """Isomorphic copy with every element ``e`` renamed to ``mapping[e]``."""
    return OrderedStructure(
        tuple(mapping[e] for e in s.order),
        tuple(frozenset(mapping[e] for e in c) for c in s.classes),
        {p: frozenset(mapping[e] for e in es) for p, es in s.labels.items()},
    )


def canonical(s: OrderedStructure) -> OrderedStructure:
    """Rename elements to e0..e(n-1) by linear-order position."""
    return rename(s, {e: f"e{i}" for i, e in enumerate(s.order)})


@dataclass(frozen=True)
class Indexed:
    """Position-indexed view used by the evaluators.

    ``cls[i]`` is the class index of the element at linear position ``i``;
    ``lab[p][i]`` tells whether it carries predicate ``p``.
    """

    n: int
    cls: tuple[int, ...]
    lab: Mapping[str, tuple[bool, ...]]

    @classmethod
    def from_structure(cls, s: OrderedStructure) -> "Indexed":
        pos = s.position
        ci = tuple(s.class_index(e) for e in s.order)
        lab = {}
        for p, es in s.labels.items():
            row = [False] * len(s.order)
            for e in es:
                row[pos[e]] = True
            lab[p] = tuple(row)
        return cls(len(s.order), ci, lab)


# -- text format ------------------------------------------------------------

_BRACKETS = re.compile(r"\[([^\[\]]*)\]")


def format_structure(s: OrderedStructure, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"size: {len(s.order)}")
    lines.append(f"order: {' '.join(s.order)}")
    lines.append("classes: " + " ".join("[" + " ".join(s.sorted_class(i)) + "]" for i in range(len(s.classes))))
    pos = s.position
    for p, es in s.labels.items():
        lines.append(f"label {p}: {' '.join(sorted(es, key=lambda e: pos.get(e, -1)))}")
    return "\n".join(lines) + "\n"


def parse_structure(text: str) -> OrderedStructure:
    size = order = classes = None
    labels: dict[str, frozenset[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise StructureParseError(f"line {lineno}: expected 'key: value'")
        key = key.strip()
        if key == "size":
            try:
                size = int(rest)
            except ValueError:
                raise StructureParseError(f"line {lineno}: size must be an integer") from None
        elif key == "order":
            order = tuple(rest.split())
        elif key == "classes":
            groups = _BRACKETS.findall(rest)
            if _BRACKETS.sub("", rest).strip():
                raise StructureParseError(f"line {lineno}: classes must be bracketed groups")
            classes = tuple(frozenset(g.split()) for g in groups)
        elif key.startswith("label "):
            pred = key[len("label "):].strip()
            if not pred or pred in labels:
                raise StructureParseError(f"line {lineno}: missing or repeated label name")
            labels[pred] = frozenset(rest.split())
        else:
            raise StructureParseError(f"line {lineno}: unknown key {key!r}")
    if order is None or classes is None:
        raise StructureParseError("structure needs 'order:' and 'classes:' lines")
    if size is not None and size != len(order):
        raise StructureParseError(f"size {size} does not match {len(order)} ordered elements")
    s = OrderedStructure(order, classes, labels)
    problems = validate(s)
    if problems:
        raise StructureParseError("; ".join(problems))
    return s
