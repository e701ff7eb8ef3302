"""Bounded finite-model search.

Models are searched with the linear order fixed to e0 < e1 < ... < e(n-1):
renaming elements by their linear-order rank is an isomorphism, so this
loses no models. For each size the search walks every ordered partition
(the total preorders) and every labelling of the elements.

Labelling modes:

``well-colored``
    each element carries at most one tag predicate and at most one color
    predicate; other predicates are unrestricted. Complete for the compiled
    machine sentences, whose conjuncts force this shape anyway.
``full``
    every subset of the predicates on every element. Grows as 2^(p*n).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import chain, combinations, product
from typing import Iterator, Sequence

from .ca import CounterMachine
from .fo2 import And, Formula, compile_formula, is_sentence, predicates, satisfies
from .reduction import COLORS, compile_machine
from .structures import OrderedStructure, from_class_indices

MODES = ("well-colored", "full")
_TAG = re.compile(r"t\d+$")


@dataclass(frozen=True)
class SearchSpec:
    sentence: Formula
    max_size: int
    mode: str = "well-colored"
    tags: tuple[str, ...] = ()
    colors: tuple[str, ...] = ()
    plain: tuple[str, ...] = ()

    def __post_init__(self):
        if self.max_size < 1:
            raise ValueError("max_size must be at least 1")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if not is_sentence(self.sentence):
            raise ValueError("search needs a sentence (no free variables)")

    @classmethod
    def for_sentence(cls, sentence: Formula, max_size: int, mode: str = "well-colored") -> "SearchSpec":
        """Roles by naming convention: ``t<number>`` are tags, ``B``/``R`` colors."""
        preds = sorted(predicates(sentence), key=_natural)
        return cls(
            sentence, max_size, mode,
            tags=tuple(p for p in preds if _TAG.match(p)),
            colors=tuple(p for p in COLORS if p in preds),
            plain=tuple(p for p in preds if not _TAG.match(p) and p not in COLORS),
        )

    @classmethod
    def for_machine(cls, machine: CounterMachine, max_size: int, mode: str = "well-colored") -> "SearchSpec":
        return cls(compile_machine(machine), max_size, mode,
                   tags=tuple(t.tag for t in machine.transitions), colors=COLORS)

    @property
    def all_predicates(self) -> tuple[str, ...]:
        return self.tags + self.colors + self.plain


@dataclass(frozen=True)
class NoModel:
    max_size: int
    mode: str

    def __str__(self):
        return f"unsat-up-to: {self.max_size} mode: {self.mode}"


def _natural(name):
    return [int(p) if p.isdigit() else p for p in re.split(r"(\d+)", name)]


def enumerate_ordered_partitions(n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Every ordered partition of 0..n-1 exactly once, blocks as sorted tuples."""
    if n < 1:
        raise ValueError("n must be at least 1")
    yield from _partitions(tuple(range(n)))


def _partitions(items):
    if not items:
        yield ()
        return
    for k in range(1, len(items) + 1):
        for block in combinations(items, k):
            rest = tuple(i for i in items if i not in block)
            for tail in _partitions(rest):
                yield (block, *tail)


def fubini(n: int) -> int:
    """Number of ordered set partitions of an n-set."""
    from math import comb
    a = [1]
    for m in range(1, n + 1):
        a.append(sum(comb(m, j) * a[m - j] for j in range(1, m + 1)))
    return a[n]


@dataclass
class _View:
    """Mutable position-indexed structure reused across the enumeration."""

    n: int
    cls: tuple[int, ...]
    lab: dict = field(default_factory=dict)

    def to_structure(self) -> OrderedStructure:
        return from_class_indices(
            self.cls, {p: [i for i, b in enumerate(row) if b] for p, row in self.lab.items()})


def _element_options(spec: SearchSpec) -> list[frozenset[str]]:
    if spec.mode == "full":
        preds = spec.all_predicates
        subsets = chain.from_iterable(combinations(preds, k) for k in range(len(preds) + 1))
        return [frozenset(s) for s in subsets]
    plain = [frozenset(s) for s in chain.from_iterable(
        combinations(spec.plain, k) for k in range(len(spec.plain) + 1))]
    return [
        frozenset(x for x in (tag, color) if x) | extra
        for tag in (None, *spec.tags)
        for color in (None, *spec.colors)
        for extra in plain
    ]


def iter_candidates(spec: SearchSpec, n: int) -> Iterator[_View]:
    """All candidate structures of size ``n`` in enumeration order.

    The same view object is mutated and yielded repeatedly.
    """
    options = _element_options(spec)
    preds = spec.all_predicates
    rows = [{p: p in o for p in preds} for o in options]
    view = _View(n, ())
    for blocks in enumerate_ordered_partitions(n):
        cls = [0] * n
        for j, block in enumerate(blocks):
            for i in block:
                cls[i] = j
        view.cls = tuple(cls)
        for combo in product(range(len(options)), repeat=n):
            picked = [rows[c] for c in combo]
            view.lab = {p: tuple(r[p] for r in picked) for p in preds}
            yield view


class _Checker:
    """Top-level conjunction with move-to-front on the failing conjunct."""

    def __init__(self, sentence: Formula):
        parts = sentence.args if isinstance(sentence, And) else (sentence,)
        self.parts = [compile_formula(p) for p in parts]

    def __call__(self, view) -> bool:
        parts = self.parts
        for i, part in enumerate(parts):
            if not part(view, 0, 0):
                if i:
                    parts.insert(0, parts.pop(i))
                return False
        return True


def iter_models(spec: SearchSpec) -> Iterator[OrderedStructure]:
    """Every model up to ``spec.max_size``, in enumeration order."""
    check = _Checker(spec.sentence)
    for n in range(1, spec.max_size + 1):
        for view in iter_candidates(spec, n):
            if check(view):
                s = view.to_structure()
                # second opinion from the table evaluator
                if not satisfies(s, spec.sentence):
                    raise AssertionError("evaluators disagree on a candidate model")
                yield s


def solve(spec: SearchSpec) -> OrderedStructure | NoModel:
    for s in iter_models(spec):
        return s
    return NoModel(spec.max_size, spec.mode)


def solve_machine(machine: CounterMachine, max_size: int, mode: str = "well-colored") -> OrderedStructure | NoModel:
    return solve(SearchSpec.for_machine(machine, max_size, mode))


def all_models(spec: SearchSpec) -> Sequence[OrderedStructure]:
    return list(iter_models(spec))
