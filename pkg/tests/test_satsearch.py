import pytest

from conftest import NONEMPTY, load
from fo2minsky.ca import find_accepting_run, validate_run
from fo2minsky.codec import decode, encode
from fo2minsky.fo2 import parse_formula, satisfies
from fo2minsky.satsearch import (
    NoModel, SearchSpec, enumerate_ordered_partitions, fubini, iter_candidates,
    solve, solve_machine,
)
from fo2minsky.structures import validate
from oracles import fubini_recurrence


@pytest.mark.parametrize("n,count", [(1, 1), (2, 3), (3, 13), (4, 75), (5, 541), (6, 4683)])
def test_partition_counts(n, count):
    assert fubini_recurrence(n) == count
    parts = list(enumerate_ordered_partitions(n))
    assert len(parts) == count == fubini(n)
    assert len(set(parts)) == count
    for blocks in parts:
        assert all(blocks)
        assert sorted(i for b in blocks for i in b) == list(range(n))


def test_partitions_reject_zero():
    with pytest.raises(ValueError):
        list(enumerate_ordered_partitions(0))


def test_two_classes_needed():
    f = parse_formula("(exists x (exists y (succP x y)))")
    assert solve(SearchSpec.for_sentence(f, 1)) == NoModel(1, "well-colored")
    s = solve(SearchSpec.for_sentence(f, 2))
    assert len(s) == 2 and len(s.classes) == 2


def test_certificate_text():
    assert str(NoModel(4, "well-colored")) == "unsat-up-to: 4 mode: well-colored"


def test_m1_model_decodes(m1):
    s = solve_machine(m1, 3)
    assert len(s) == 3
    assert decode(m1, s) == find_accepting_run(m1, 5)


def test_m2_small_bound(m2):
    assert isinstance(solve_machine(m2, 3), NoModel)


def test_candidates_are_valid_structures(m1):
    spec = SearchSpec.for_machine(m1, 3)
    for n in (1, 2, 3):
        seen = 0
        for view in iter_candidates(spec, n):
            seen += 1
            if seen % 7 == 0:
                assert validate(view.to_structure()) == []
        assert seen == fubini(n) * 9 ** n


def test_deterministic(m1):
    f = parse_formula("(forall x (or (P x) (exists y (and (succL x y) (Q y)))))")
    a = solve(SearchSpec.for_sentence(f, 3))
    b = solve(SearchSpec.for_sentence(f, 3))
    assert a == b and satisfies(a, f)
    assert solve_machine(m1, 3) == solve_machine(m1, 3)


def test_well_colored_restriction_and_full_mode():
    f = parse_formula("(exists x (and (t1 x) (t2 x)))")
    assert isinstance(solve(SearchSpec.for_sentence(f, 2)), NoModel)
    s = solve(SearchSpec.for_sentence(f, 2, mode="full"))
    assert len(s) == 1 and satisfies(s, f)


def test_plain_predicates_unrestricted():
    f = parse_formula("(exists x (and (P x) (Q x) (B x)))")
    spec = SearchSpec.for_sentence(f, 1)
    assert spec.plain == ("P", "Q") and spec.colors == ("B",)
    assert satisfies(solve(spec), f)


def test_spec_checks():
    f = parse_formula("(P x)")
    with pytest.raises(ValueError):
        SearchSpec.for_sentence(f, 2)
    g = parse_formula("(exists x (P x))")
    with pytest.raises(ValueError):
        SearchSpec.for_sentence(g, 0)
    with pytest.raises(ValueError):
        SearchSpec.for_sentence(g, 1, mode="half")


@pytest.mark.parametrize("name", ["m1", "zero"])
def test_agreement_with_encode(name):
    # only machines whose encoding is small enough for exhaustive search
    m = load(name)
    run = find_accepting_run(m, NONEMPTY[name], min_steps=1)
    _, meta = encode(m, run)
    bound = meta.class_count * meta.k
    assert bound <= 3
    s = solve_machine(m, bound)
    assert not isinstance(s, NoModel)
    assert validate_run(m, decode(m, s))
