import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import EMPTY, NONEMPTY, load
from fo2minsky.ca import find_accepting_run, parse_machine
from fo2minsky.codec import encode
from fo2minsky.fo2 import (
    Unary, X, compile_formula, evaluate, is_sentence, satisfies,
)
from fo2minsky.reduction import (
    TrivialMachine, UnsupportedCounters, build_counter, build_t,
    compile_machine, conjuncts, in_class_exists, vocabulary,
)
from fo2minsky.satsearch import SearchSpec, iter_candidates
from fo2minsky.structures import OrderedStructure, from_class_sizes, validate
from oracles import intended_model

LABELS = ["T1", "T2", "T3", "T4", "T5", "B1", "B2", "B3", "B4", "B5",
          "R1", "R2", "R3", "R4", "R5", "A1", "A2", "A3"]


def encoding(name):
    m = load(name)
    run = find_accepting_run(m, NONEMPTY[name], min_steps=1)
    return m, run, encode(m, run)[0]


def test_in_class_exists_examples():
    s = from_class_sizes([2, 1], {"B": [0]})
    f = in_class_exists(Unary("B", X))
    assert evaluate(s, f, {X: "e1"})
    assert not evaluate(s, f, {X: "e2"})
    one = from_class_sizes([3], {"B": [0, 1, 2]})
    assert not any(evaluate(one, f, {X: e}) for e in one.order)


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False), st.integers(2, 6))
def test_in_class_exists_with_two_classes(rng, n):
    cls = [rng.randrange(n) for _ in range(n)]
    k = len(set(cls))
    if k < 2:
        cls[0] = 1 - cls[1] if cls[1] < 2 else 0
    ranks = {c: i for i, c in enumerate(sorted(set(cls)))}
    sizes = [0] * len(ranks)
    for c in cls:
        sizes[ranks[c]] += 1
    s = from_class_sizes(sizes, {"B": [i for i in range(n) if rng.random() < 0.3]})
    f = in_class_exists(Unary("B", X))
    for e in s.order:
        expected = bool(s.label("B") & s.classes[s.class_index(e)])
        assert evaluate(s, f, {X: e}) == expected


def test_conjunct_order_and_sentences(m1):
    parts = conjuncts(m1)
    assert [label for label, _ in parts] == LABELS
    assert all(is_sentence(f) for _, f in parts)


@pytest.mark.parametrize("name", sorted(NONEMPTY))
def test_each_condition_true_on_encoding(name):
    m, _, s = encoding(name)
    for label, f in conjuncts(m):
        assert satisfies(s, f), label


def test_compiled_sentence_on_m1(m1):
    _, _, s = encoding("m1")
    assert satisfies(s, compile_machine(m1))
    assert not satisfies(from_class_sizes([1]), compile_machine(m1))


def test_t5_rejects_uneven_classes(m1):
    t5 = build_t(m1, 5)
    for order in itertools.permutations(["a", "b", "c"]):
        s = OrderedStructure(order, (frozenset("ab"), frozenset("c")))
        assert not satisfies(s, t5)


def test_t2_wrong_start(m1):
    s = from_class_sizes([1, 1, 1], {"t2": [1, 2]})
    assert not satisfies(s, build_t(m1, 2))
    assert satisfies(from_class_sizes([1, 1, 1], {"t1": [1]}), build_t(m1, 2))


def test_b5_vacuous_without_zero_tests(m1):
    rng = random.Random(3)
    f = build_counter(m1, "B", 5)
    for _ in range(50):
        sizes = [rng.randint(1, 3) for _ in range(rng.randint(1, 3))]
        n = sum(sizes)
        labs = {p: [i for i in range(n) if rng.random() < 0.5] for p in ("B", "R", "t1", "t2")}
        assert satisfies(from_class_sizes(sizes, labs), f)


def test_b5_rejects_nonzero_test(m2):
    s = from_class_sizes([1, 1], {"B": [0], "t2": [1]})
    assert not satisfies(s, build_counter(m2, "B", 5))


def test_b3_on_m1_encoding(m1):
    _, _, s = encoding("m1")
    assert satisfies(s, build_counter(m1, "B", 3))


def test_trivial_machine():
    m = parse_machine("states: q\ncounters: B R\ninit: q\nfinal: q\n")
    with pytest.raises(TrivialMachine):
        compile_machine(m)


def test_three_counters_unsupported():
    m = parse_machine("states: q\ncounters: B R G\ninit: q\nfinal: q\ntrans: q inc G q\n")
    with pytest.raises(UnsupportedCounters):
        compile_machine(m)


def test_vocabulary_mapping():
    m = parse_machine("states: q\ncounters: Y B\ninit: q\nfinal: q\ntrans: q inc Y q\n")
    assert vocabulary(m).color_of == {"B": "B", "Y": "R"}
    m = parse_machine("states: q\ncounters: c1 c2\ninit: q\nfinal: q\ntrans: q inc c1 q\n")
    assert vocabulary(m).color_of == {"c1": "B", "c2": "R"}


def single_flips(s, preds):
    for e in s.order:
        for p in preds:
            labels = dict(s.labels)
            labels[p] = s.label(p) ^ {e}
            yield (e, p), OrderedStructure(s.order, s.classes, labels)


def test_every_single_flip_falsifies_m1():
    m, _, s = encoding("m1")
    phi = compile_machine(m)
    flips = list(single_flips(s, ["B", "R", "t1", "t2"]))
    assert len(flips) == 12
    for where, mutant in flips:
        assert not satisfies(mutant, phi), where


@pytest.mark.parametrize("name", sorted(NONEMPTY))
def test_single_flips_falsify_corpus(name):
    m, _, s = encoding(name)
    check = compile_formula(compile_machine(m))
    preds = ["B", "R"] + [t.tag for t in m.transitions]
    for where, mutant in single_flips(s, preds):
        assert not check(mutant.indexed, 0, 0), where


def test_golden_compile_output():
    from conftest import GOLDEN
    from fo2minsky.cli import render_sentence
    for name in ("m1", "m2"):
        text = render_sentence(load(name), f"{name}.ca")
        assert text == (GOLDEN / f"{name}.fo2").read_text()


# The compiled sentence and the direct check of the conditions must accept
# exactly the same structures.

@pytest.mark.parametrize("name,size", [
    ("m1", 3), ("m2", 3), ("zero", 3), ("stuck", 4), ("decz", 3), ("pump", 2),
])
def test_exhaustive_agreement_with_direct_check(name, size):
    m = load(name)
    spec = SearchSpec.for_machine(m, size)
    check = compile_formula(spec.sentence)
    for n in range(1, size + 1):
        for view in iter_candidates(spec, n):
            s = view.to_structure()
            assert check(view, 0, 0) == intended_model(m, s), s


def test_exhaustive_agreement_loop_machine():
    m = parse_machine("states: q0\ncounters: B R\ninit: q0\nfinal: q0\ntrans: q0 ifz B q0\n")
    spec = SearchSpec.for_machine(m, 4)
    check = compile_formula(spec.sentence)
    found = 0
    for view in iter_candidates(spec, 4):
        s = view.to_structure()
        ok = check(view, 0, 0)
        found += ok
        assert ok == intended_model(m, s)
    # four singleton classes, or two classes of two threaded elements
    assert found == 2


def mutate(rng, s, preds):
    order, classes = list(s.order), [set(c) for c in s.classes]
    labels = {p: set(s.label(p)) for p in preds}
    kind = rng.randrange(5)
    if kind == 0:
        e, p = rng.choice(order), rng.choice(preds)
        labels[p] ^= {e}
    elif kind == 1:
        i, j = rng.sample(range(len(order)), 2)
        order[i], order[j] = order[j], order[i]
    elif kind == 2:
        # move a color between two elements of the same class
        color = rng.choice(["B", "R"])
        c = rng.choice(classes)
        have, lack = sorted(c & labels[color]), sorted(c - labels[color])
        if have and lack:
            labels[color] ^= {rng.choice(have), rng.choice(lack)}
    elif kind == 3:
        e = rng.choice(order)
        src = next(c for c in classes if e in c)
        dst = rng.choice(classes)
        if len(src) > 1:
            src.discard(e)
            dst.add(e)
    else:
        # swap the whole label sets of two elements
        a, b = rng.sample(order, 2)
        for p in preds:
            if (a in labels[p]) != (b in labels[p]):
                labels[p] ^= {a, b}
    return OrderedStructure(tuple(order), tuple(frozenset(c) for c in classes),
                            {p: frozenset(es) for p, es in labels.items()})


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(sorted(NONEMPTY)), st.randoms(use_true_random=False), st.integers(1, 3))
def test_mutated_encodings_agree_with_direct_check(name, rng, rounds):
    m, _, s = encoding(name)
    preds = ["B", "R"] + [t.tag for t in m.transitions]
    for _ in range(rounds):
        s = mutate(rng, s, preds)
    assert validate(s) == []
    assert compile_formula(compile_machine(m))(s.indexed, 0, 0) == intended_model(m, s)


@pytest.mark.parametrize("name", EMPTY)
def test_empty_machines_compile(name):
    assert is_sentence(compile_machine(load(name)))
