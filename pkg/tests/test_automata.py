from __future__ import annotations

import itertools

import pytest

from pcpgames import automata as au
from pcpgames import pcp
from pcpgames.automata import AutomatonError, Transition

from conftest import load_instance


@pytest.fixture(scope="module")
def aut_i1(i1):
    return au.build_solution_checker(i1)


@pytest.fixture(scope="module")
def aut_eq(eq):
    return au.build_solution_checker(eq)


@pytest.fixture(scope="module")
def aut_mm(mm):
    return au.build_solution_checker(mm)


def test_construction_shape(fixture_instances):
    for inst in fixture_instances.values():
        aut = au.build_solution_checker(inst)
        assert len(aut.states) == 5
        assert aut.finals == frozenset({"q4"})
        assert aut.initial == "q0"
        assert au.is_complete(aut)


def test_i1_base_family_weight(aut_i1):
    assert Transition("q0", "a", "q1", -2) in aut_i1.transitions


def test_i1_error_guessing_weight(aut_i1):
    # position k=1 of h(a)="a" with code 1: s(k-|g(a)|)+j_k = 2(1-2)+1
    assert Transition("q1", "a", "q2", -1) in aut_i1.transitions


def test_reverse_negates_and_swaps(aut_i1):
    rev = au.reverse(aut_i1)
    assert rev.initial == "q4" and rev.finals == frozenset({"q0"})
    assert Transition("q1", "a", "q0", 2) in rev.transitions


def test_reverse_is_involution(aut_i1):
    back = au.reverse(au.reverse(aut_i1))
    assert back.transitions == aut_i1.transitions
    assert back.initial == aut_i1.initial and back.finals == aut_i1.finals


def test_reverse_needs_single_final(aut_i1):
    unfolded = au.unfold_self_loops(aut_i1)
    with pytest.raises(AutomatonError, match="single final"):
        au.reverse(unfolded)


def _all_paths(aut, length):
    frontier = [((), aut.initial)]
    for _ in range(length):
        frontier = [
            (path + (t,), t.target)
            for path, state in frontier
            for t in aut.sorted_transitions()
            if t.source == state
        ]
    return [p for p, _ in frontier]


def test_reverse_path_duality(aut_i1):
    rev = au.reverse(aut_i1)
    for length in range(1, 7):
        for path in _all_paths(aut_i1, length):
            prefix = au.PathPrefix.of(path)
            mirrored = au.reverse_path(prefix)
            assert mirrored.weight == -prefix.weight
            assert set(mirrored.transitions) <= rev.transitions


def test_unfold_shape(aut_i1):
    unfolded = au.unfold_self_loops(aut_i1)
    assert unfolded.states == au.STATE_NAMES_9
    assert unfolded.finals == frozenset({"q4", "q8"})
    assert unfolded.initial == "q0"
    assert all(t.source != t.target for t in unfolded.transitions)
    assert au.is_complete(unfolded)


def test_unfold_cross_edges(aut_i1):
    unfolded = au.unfold_self_loops(aut_i1)
    # the q1 self-loop of weight -2 becomes a bounce pair
    assert Transition("q1", "a", "q5", -2) in unfolded.transitions
    assert Transition("q5", "a", "q1", -2) in unfolded.transitions
    # q0-outgoing edges are duplicated onto the primed copies
    assert Transition("q0", "a", "q5", -2) in unfolded.transitions
    # accepting sink loops unfold like the others
    assert Transition("q4", "a", "q8", 0) in unfolded.transitions
    assert Transition("q8", "a", "q4", 0) in unfolded.transitions


def test_unfold_rejects_other_shapes(aut_i1):
    unfolded = au.unfold_self_loops(aut_i1)
    with pytest.raises(AutomatonError):
        au.unfold_self_loops(unfolded)


def test_unfold_of_reverse_keeps_q0_final(aut_i1):
    unfolded = au.unfold_self_loops(au.reverse(aut_i1))
    assert unfolded.initial == "q4"
    assert unfolded.finals == frozenset({"q0"})
    # reversed q1 -> q0 edge is duplicated from the primed copy
    assert Transition("q5", "a", "q0", 2) in unfolded.transitions


def test_unfold_preserves_bounded_language(fixture_instances):
    for inst in fixture_instances.values():
        aut = au.build_solution_checker(inst)
        unfolded = au.unfold_self_loops(aut)
        for n in range(1, 5):
            for letters in itertools.product(inst.domain_alphabet, repeat=n):
                w = "".join(letters)
                assert au.accepts_within(aut, w) == au.accepts_within(unfolded, w)


def test_step_examples(aut_i1):
    cfg = au.AutConfiguration("q0", "a", 0)
    t = Transition("q0", "a", "q1", -2)
    assert au.step(cfg, t) == au.AutConfiguration("q1", "", -2)
    zero = Transition("q4", "a", "q4", 0)
    assert au.step(au.AutConfiguration("q4", "ab", 5), zero).weight == 5
    with pytest.raises(AutomatonError):
        au.step(au.AutConfiguration("q0", "b", 0), t)


def test_enumerate_accepting_prefixes(aut_eq, aut_i1):
    found = au.enumerate_accepting_prefixes(aut_eq, "a")
    assert any(p.transitions == (Transition("q0", "a", "q4", 0),) for p in found)
    assert au.enumerate_accepting_prefixes(aut_i1, "a" * 8, bound=8) == []
    assert au.enumerate_accepting_prefixes(aut_i1, "") == []


def test_enumerate_reverse_weight_mode(aut_eq):
    forward = au.enumerate_accepting_prefixes(aut_eq, "aa", mode="forward")
    rev = au.enumerate_accepting_prefixes(aut_eq, "aa", mode="reverse-weight")
    assert len(forward) == len(rev)
    assert {p.word for p in forward} == {p.word for p in rev}


def test_bounded_universality_examples(aut_i1, aut_mm, aut_eq):
    assert au.bounded_universality(aut_i1, 6).counterexample == "aaaaaa"
    assert au.bounded_universality(aut_mm, 4).all_accepted
    assert au.bounded_universality(aut_eq, 1).all_accepted


def test_bounded_universality_cap(aut_i1):
    with pytest.raises(AutomatonError, match="safety cap"):
        au.bounded_universality(aut_i1, 3, max_words=0)


def test_desk_scale_solution_language(i1, eq, mm):
    """Bad-prefix existence coincides with zero-weight acceptance, words <= 4."""
    for inst in (i1, eq, mm):
        aut = au.build_solution_checker(inst)
        for n in range(1, 5):
            for letters in itertools.product(inst.domain_alphabet, repeat=n):
                w = "".join(letters)
                bad = any(pcp.bad_prefix_case(inst, w[:k]) is not None for k in range(1, n + 1))
                assert bad == au.accepts_within(aut, w), w


def test_acceptance_never_false_positive(fixture_instances):
    """Soundness corpus-wide: accepted words always carry a bad prefix.

    The converse can lag at finite horizons (a first-letter error beyond the
    other image's first letter is only verifiable at a later equivalent
    position), so completeness is pinned by targeted witnesses instead.
    """
    for inst in fixture_instances.values():
        aut = au.build_solution_checker(inst)
        for n in range(1, 5):
            for letters in itertools.product(inst.domain_alphabet, repeat=n):
                w = "".join(letters)
                if au.accepts_within(aut, w):
                    assert any(
                        pcp.bad_prefix_case(inst, w[:k]) is not None for k in range(1, n + 1)
                    ), w


def test_acceptance_lag_witness(fin):
    """fin's word aa is bad at position 2 but only verified on the longer aaaa."""
    aut = au.build_solution_checker(fin)
    assert pcp.bad_prefix_case(fin, "aa") is not None
    assert not au.accepts_within(aut, "aa")
    assert au.accepts_within(aut, "aaaa")


CASE_WITNESSES = [
    ("eq", "a", "q4"),
    ("eq", "aa", "q1"),
    ("mm", "a", "q4"),
    ("c4", "ab", "q1"),
    ("c5", "aba", "q2"),
    ("c6", "aba", "q3"),
]


@pytest.mark.parametrize("name,word,state", CASE_WITNESSES)
def test_case_to_path_completeness(name, word, state):
    """Each witness case is certified by a zero-weight path through its family states."""
    inst = load_instance(name)
    aut = au.build_solution_checker(inst)
    paths = []
    for k in range(1, len(word) + 1):
        paths += au.enumerate_accepting_prefixes(aut, word[:k], bound=8)
    assert any(state in p.states for p in paths)


def test_dot_round_trip(aut_i1):
    dot = au.export_dot(aut_i1)
    assert 'label="a,-2"' in dot
    assert au.parse_dot_edges(dot) == aut_i1.sorted_transitions()


def test_flat_round_trip(aut_i1):
    flat = au.export_flat(aut_i1)
    assert au.parse_flat(flat) == aut_i1


def test_path_weight_and_prefix_invariants():
    t1 = Transition("q0", "a", "q1", -2)
    t2 = Transition("q1", "a", "q4", 0)
    p = au.PathPrefix.of((t1, t2))
    assert au.path_weight(p) == -2
    assert p.word == "aa"
    assert p.states == ("q0", "q1", "q4")
    with pytest.raises(AutomatonError):
        au.PathPrefix.of((t2, t1))
    with pytest.raises(AutomatonError):
        au.PathPrefix((t1,), 5)
