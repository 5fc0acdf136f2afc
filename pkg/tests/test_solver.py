"""Word problem: traces, verdicts, radius sufficiency."""

import itertools
import random

import pytest

from polyfold.complexes import Complex, init_complex
from polyfold.errors import NotSparse
from polyfold.solver import (
    IDENTITY,
    NOT_IDENTITY,
    NOT_IN_RCLASS,
    in_r_class,
    is_identity,
    required_radius,
    solve,
    solve_on,
    trace,
)
from polyfold.words import free_reduce, parse_word

from util import rand_freely_reduced, words_up_to


def test_identity_examples():
    assert is_identity("abABcdCD", "abABcdCD")
    assert is_identity("abABcdCD", "")
    assert is_identity("abABcdCD", "aA")
    assert not is_identity("abABcdCD", "a")


def test_rclass_examples():
    assert in_r_class("abABcdCD", "abAB")
    assert in_r_class("abABcdCD", "aa")
    assert not in_r_class("abABcdCD", "aB")


def test_solver_rejects_non_sparse_relator():
    with pytest.raises(NotSparse):
        solve("abAB", "a")


def test_trace_progression():
    s1 = init_complex("abABcdCD")
    t = trace(s1, "aa")
    assert t.fail_position == 1
    assert len(t.path) == 2
    grown = init_complex("abABcdCD").build_to_radius(3)
    t2 = trace(grown, "aa")
    assert t2.ok
    assert grown.distance(t2.endpoint) == 2


def test_trace_empty_word():
    cx = init_complex("abABcdCD")
    t = trace(cx, "")
    assert t.ok and t.endpoint == cx.find(cx.v0)
    v = solve_on(cx, "", grow=False)
    assert v.outcome == IDENTITY and v.endpoint_distance == 0


def test_verdict_fields():
    v = solve("abABcdCD", "a")
    assert v.outcome == NOT_IDENTITY
    assert v.endpoint_distance == 1
    assert v.fail_position is None
    assert "distance 1" in v.describe()
    v2 = solve("abABcdCD", "aB")
    assert v2.outcome == NOT_IN_RCLASS
    assert v2.fail_position == 1
    assert "position 1" in v2.describe()
    v3 = solve("abABcdCD", "aA")
    assert v3.outcome == IDENTITY
    assert "base vertex" in v3.describe()


def test_solve_on_refuses_uncertified_failure_without_grow():
    cx = init_complex("abABcdCD")
    # a successful trace is final at any radius
    v = solve_on(cx, "abAB", grow=False)
    assert v.outcome == NOT_IDENTITY
    # a failed trace needs saturation to certify the missing edge
    with pytest.raises(ValueError):
        solve_on(cx, "aa", grow=False)
    v2 = solve_on(cx, "aa", grow=True)
    assert v2.outcome == NOT_IDENTITY
    assert cx.saturated_radius >= 1 + 8 // 2


def test_free_reduction_preserves_complete_traces(flagship_r10):
    # reduction preserves the endpoint of a complete trace, so verdicts
    # agree whenever the unreduced word lies in the R-class; inserting
    # xX pairs can leave the R-class (xx' is not 1 in an inverse
    # monoid), so NOT_IN_RCLASS for the unreduced word says nothing
    cx = flagship_r10
    rng = random.Random(11)
    seen_rclass = 0
    for _ in range(400):
        n = rng.randint(0, 6)
        w = tuple(rng.randrange(8) for _ in range(n))
        r = free_reduce(w)
        vu = solve_on(cx, w, grow=False)
        vr = solve_on(cx, r, grow=False)
        if vu.outcome != NOT_IN_RCLASS:
            seen_rclass += 1
            assert vu.outcome == vr.outcome
            assert vu.trace.endpoint == vr.trace.endpoint
        if vr.outcome == NOT_IN_RCLASS:
            assert vu.outcome == NOT_IN_RCLASS
    assert seen_rclass > 20


def test_free_reduction_can_change_the_element():
    # bBaA reduces freely to the empty word, but bb'aa' is a strictly
    # smaller idempotent than 1 here: no b-edge exists at the base
    assert is_identity("abABcdCD", "")
    v = solve("abABcdCD", "bBaA")
    assert v.outcome == NOT_IN_RCLASS


def test_early_exit_agrees_with_classical_bound():
    for rel in ["ab", "aB", "abc"]:
        n = len(rel)
        letters = [x for g in sorted({c // 2 for c in parse_word(rel)})
                   for x in (2 * g, 2 * g + 1)]
        early = Complex(rel).build_to_radius(required_radius(4, n, True))
        classical = Complex(rel).build_to_radius(required_radius(4, n, False))
        for w in words_up_to(letters, 4):
            a = solve_on(early, w, grow=False).outcome
            b = solve_on(classical, w, grow=False).outcome
            assert a == b, (rel, w)


def test_radius_stability(flagship_r10):
    # enlarging the complex never changes a verdict: the full relator
    # radius bound on a small relator, a +2 margin on the flagship
    small = init_complex("abc").build_to_radius(required_radius(4, 3))
    full = init_complex("abc").build_to_radius(required_radius(4, 3) + 3)
    letters3 = [0, 1, 2, 3, 4, 5]
    for w in words_up_to(letters3, 4):
        assert (
            solve_on(small, w, grow=False).outcome
            == solve_on(full, w, grow=False).outcome
        )
    base = init_complex("abABcdCD").build_to_radius(required_radius(4, 8))
    letters = list(range(8))
    for w in words_up_to(letters, 4):
        assert (
            solve_on(base, w, grow=False).outcome
            == solve_on(flagship_r10, w, grow=False).outcome
        )


def test_identity_words_form_expected_set_up_to_length_4():
    cx = init_complex("abABcdCD").build_to_radius(required_radius(4, 8))
    identities = [
        w
        for w in words_up_to(list(range(8)), 4)
        if solve_on(cx, w, grow=False).outcome == IDENTITY
    ]
    # the identity loops at v0 through length 4: the empty word, the
    # two edge round-trips, and the ten length-4 excursions
    assert len(identities) == 13
    assert () in identities
    assert parse_word("aA") in identities
    assert parse_word("dD") in identities
    assert parse_word("abBA") in identities
    assert parse_word("dcCD") in identities
    assert parse_word("aAdD") in identities


def test_relator_is_identity_for_all_relators():
    for rel in ["abABcdCD", "cdCDabAB", "abABcdCDefEF", "ab", "abc"]:
        assert is_identity(rel, rel)
        assert in_r_class(rel, rel)


def test_seeded_random_words_rclass_implies_prefix_closed(flagship_r10):
    cx = flagship_r10
    rng = random.Random(5)
    for _ in range(300):
        w = rand_freely_reduced(rng, 6, 4)
        v = solve_on(cx, w, grow=False)
        if v.outcome != NOT_IN_RCLASS:
            for k in range(len(w)):
                assert solve_on(cx, w[:k], grow=False).outcome != NOT_IN_RCLASS
