"""Word core: parsing, reduction, cyclic subwords, sparseness."""

import random

import pytest

from polyfold.errors import WordParseError
from polyfold.words import (
    CyclicSubword,
    coerce_word,
    cyclic_conjugate,
    cyclic_subword,
    free_reduce,
    inverse,
    is_cyclically_reduced,
    is_freely_reduced,
    is_primitive,
    is_sparse,
    letter_to_char,
    parse_word,
    word_to_str,
    _candidate_pairs,
)

from util import (
    brute_clause1,
    brute_clause2,
    is_candidate_pair,
    rand_freely_reduced,
)


def test_parse_and_render_roundtrip():
    for s in ["", "a", "abAB", "abABcdCD", "zZ"]:
        assert word_to_str(parse_word(s)) == s


def test_parse_letter_encoding():
    assert parse_word("aA") == (0, 1)
    assert parse_word("bB") == (2, 3)
    assert inverse(0) == 1 and inverse(1) == 0
    assert letter_to_char(4) == "c" and letter_to_char(5) == "C"


def test_parse_error_reports_char_and_position():
    with pytest.raises(WordParseError) as exc:
        parse_word("ab1")
    assert exc.value.char == "1"
    assert exc.value.position == 2
    with pytest.raises(WordParseError):
        parse_word("a b")


def test_free_reduce_examples():
    assert word_to_str(free_reduce(parse_word("aAb"))) == "b"
    assert free_reduce(()) == ()
    assert free_reduce(parse_word("abBA")) == ()
    assert free_reduce(parse_word("abAB")) == parse_word("abAB")


def test_free_reduce_properties_seeded():
    rng = random.Random(1)
    for _ in range(300):
        n = rng.randint(0, 12)
        w = tuple(rng.randrange(8) for _ in range(n))
        r = free_reduce(w)
        assert is_freely_reduced(r)
        assert free_reduce(r) == r
        assert (len(w) - len(r)) % 2 == 0


def test_cyclic_subword_readings_abAB():
    w = parse_word("abAB")
    q = cyclic_subword(w, 3, 2, -1)
    assert word_to_str(q.letters) == "a"
    assert q.zone == (3, 2)
    q = cyclic_subword(w, 0, 1, 1)
    assert word_to_str(q.letters) == "a"
    assert q.zone == (0, 1)
    q = cyclic_subword(w, 1, 2, 1)
    assert word_to_str(q.letters) == "b"
    assert q.zone == (1, 2)
    q = cyclic_subword(w, 0, 3, -1)
    assert word_to_str(q.letters) == "b"
    assert q.zone == (0, 3)


def test_cyclic_subword_validation():
    w = parse_word("abAB")
    with pytest.raises(ValueError):
        cyclic_subword(w, 1, 1, 1)
    with pytest.raises(ValueError):
        cyclic_subword(w, 0, 1, 2)
    with pytest.raises(ValueError):
        cyclic_subword((), 0, 1, 1)
    with pytest.raises(ValueError):
        cyclic_subword(w, 2, 6, 1)  # j is i mod n, empty reading
    q = cyclic_subword(w, 5, 2, 1)  # indices normalize mod n
    assert (q.i, q.j) == (1, 2) and word_to_str(q.letters) == "b"


def test_cyclic_subword_lengths_and_zones_seeded():
    rng = random.Random(2)
    for _ in range(200):
        w = rand_freely_reduced(rng, 9, 3, min_len=2)
        n = len(w)
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        for eps in (1, -1):
            q = cyclic_subword(w, i, j, eps)
            expect = (j - i) % n if eps == 1 else (i - j) % n
            assert len(q.letters) == expect
            assert 1 <= len(q.letters) <= n - 1
            assert len(q.zone) == len(q.letters) + 1
            assert q.zone[0] == i and q.zone[-1] == j
            # reading backwards is the inverse subword
            back = cyclic_subword(w, j, i, -eps)
            assert back.letters == tuple(inverse(x) for x in reversed(q.letters))
            assert back.zone == tuple(reversed(q.zone))


def test_cyclically_reduced_and_primitive():
    assert is_cyclically_reduced(parse_word("abAB"))
    assert not is_cyclically_reduced(parse_word("abA"))
    assert not is_cyclically_reduced(parse_word("aAb"))
    assert is_cyclically_reduced(())
    assert is_primitive(parse_word("ab"))
    assert is_primitive(parse_word("a"))
    assert is_primitive(parse_word("aba"))
    assert not is_primitive(parse_word("abab"))
    assert not is_primitive(parse_word("aa"))
    assert not is_primitive(())


def test_sparse_flagship_verdicts():
    assert is_sparse("abABcdCD").verdict
    assert is_sparse("abABcdCDefEF").verdict
    assert is_sparse(cyclic_conjugate(parse_word("abABcdCD"), 4)).verdict
    rep = is_sparse("abAB")
    assert not rep.verdict
    assert rep.reason == "sparse-1"
    assert rep.witness is not None


def test_sparse_short_and_unreduced_reasons():
    assert is_sparse("").reason == "too-short"
    assert is_sparse("a").reason == "too-short"
    assert is_sparse("aA").reason == "not-freely-reduced"
    assert is_sparse("abBc").reason == "not-freely-reduced"
    for reason_case in ("", "a", "aA"):
        assert is_sparse(reason_case).witness is None


def test_sparse_small_words_with_empty_candidate_sets():
    # distinct single letters never repeat a reading, so the candidate
    # set is empty and the word is vacuously sparse
    for s in ["ab", "aB", "abc", "aBc"]:
        assert _candidate_pairs(parse_word(s)) == []
        assert is_sparse(s).verdict


def test_sparse_rejects_powers_and_near_powers():
    for s in ["aa", "abab", "aabb", "ababab", "abcabc"]:
        rep = is_sparse(s)
        assert not rep.verdict, s
        assert rep.reason in ("sparse-1", "sparse-2")


def test_sparse_witness_survives_independent_recheck():
    cases = ["abAB", "aa", "abab", "aabb", "bABcdCDa", "abA", "abcabc"]
    for s in cases:
        rep = is_sparse(s)
        assert not rep.verdict
        if rep.witness is None:
            continue
        q1, q1p, q2, q2p = rep.witness
        n = len(coerce_word(s))
        for q in rep.witness:
            assert isinstance(q, CyclicSubword)
        assert is_candidate_pair(q1, q1p), s
        assert is_candidate_pair(q2, q2p), s
        if rep.reason == "sparse-1":
            assert not brute_clause1((q1, q1p), (q2, q2p)), s
        else:
            assert brute_clause1((q1, q1p), (q2, q2p)), s
            assert not brute_clause2((q1, q1p), (q2, q2p), n), s


def test_sparse_with_letter_list_input():
    assert is_sparse(parse_word("abABcdCD")).verdict
    assert is_sparse([0, 2, 1, 3]).verdict is False


def test_report_bool_protocol():
    assert bool(is_sparse("ab"))
    assert not bool(is_sparse("aa"))


def test_sparse_implies_cyclically_reduced_and_primitive_seeded():
    rng = random.Random(8)
    for _ in range(1500):
        w = rand_freely_reduced(rng, 10, 4)
        if is_sparse(w).verdict:
            assert is_cyclically_reduced(w), word_to_str(w)
            assert is_primitive(w), word_to_str(w)


def test_conjugates_of_flagship():
    # only the half-rotation of the double commutator stays sparse;
    # other rotations break at the commutator seam
    w = parse_word("abABcdCD")
    verdicts = [is_sparse(cyclic_conjugate(w, k)).verdict for k in range(8)]
    assert verdicts == [True, False, False, False, True, False, False, False]
