"""The sklearn-style estimators and the shared input validation."""

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from polyfold.errors import NotSparse, WordParseError
from polyfold.estimators import GeodesicRecognizer, WordProblemSolver
from polyfold.solver import IDENTITY, NOT_IDENTITY, NOT_IN_RCLASS
from polyfold.validation import check_positive_int, check_relator, check_words


def test_check_relator():
    assert check_relator("abc") == (0, 2, 4)
    assert check_relator((0, 2, 4)) == (0, 2, 4)
    with pytest.raises(ValueError):
        check_relator("")
    with pytest.raises(WordParseError):
        check_relator("ab1")
    with pytest.raises(ValueError):
        check_relator((0, -2))


def test_check_words_shapes():
    assert check_words("aA") == [(0, 1)]
    assert check_words("") == [()]
    assert check_words([]) == []
    assert check_words(["a", "b"]) == [(0,), (2,)]
    assert check_words((0, 1)) == [(0, 1)]
    assert check_words([(0,), (2, 3)]) == [(0,), (2, 3)]
    assert check_words(np.array(["a", "bA"])) == [(0,), (2, 1)]


def test_check_positive_int():
    assert check_positive_int(3, "cap") == 3
    for bad in (0, -1, 2.5, True, "7"):
        with pytest.raises(ValueError):
            check_positive_int(bad, "cap")


def test_word_problem_solver_predict_and_transform():
    est = WordProblemSolver().fit("abABcdCD")
    words = ["", "abABcdCD", "abAB", "a", "aB"]
    got = est.predict(words)
    assert got.tolist() == [IDENTITY, IDENTITY, NOT_IDENTITY, NOT_IDENTITY, NOT_IN_RCLASS]
    dist = est.transform(words)
    assert dist.shape == (5, 1)
    assert dist[:, 0].tolist() == [0, 0, 4, 1, -1]
    single = est.predict("aA")
    assert single.shape == (1,) and single[0] == IDENTITY


def test_word_problem_solver_is_an_estimator():
    est = WordProblemSolver(face_cap=5000)
    assert est.get_params() == {"early_exit": True, "face_cap": 5000}
    est.set_params(early_exit=False)
    assert est.get_params()["early_exit"] is False
    with pytest.raises(NotFittedError):
        est.predict(["a"])
    fitted = est.fit("abc")
    fresh = clone(fitted)
    assert fresh.get_params() == fitted.get_params()
    with pytest.raises(NotFittedError):
        fresh.predict(["a"])


def test_word_problem_solver_rejects_bad_relators():
    with pytest.raises(NotSparse):
        WordProblemSolver().fit("abab")
    with pytest.raises(ValueError):
        WordProblemSolver(face_cap=0).fit("abc")


def test_geodesic_recognizer_on_the_triangle():
    est = GeodesicRecognizer().fit("abc")
    assert est.n_classes_ == 3
    assert est.n_cone_types_ == 1
    got = est.predict(["", "a", "aa", "ab", "aA", "b"])
    assert got.dtype == bool
    assert got.tolist() == [True, True, True, False, False, False]
    states = est.transform(["", "a", "ab"])
    assert states.shape == (3, 1)
    assert states[0, 0] == 0
    assert states[1, 0] != -1
    assert states[2, 0] == -1


def test_geodesic_recognizer_fold_seed_changes_nothing():
    plain = GeodesicRecognizer().fit("abc")
    shuffled = GeodesicRecognizer(fold_seed=7).fit("abc")
    assert shuffled.n_classes_ == plain.n_classes_
    assert shuffled.n_cone_types_ == plain.n_cone_types_
    assert shuffled.table_.to_json_dict() == plain.table_.to_json_dict()
    assert shuffled.dfa_.to_json_dict() == plain.dfa_.to_json_dict()


def test_geodesic_recognizer_exposes_the_pda():
    est = GeodesicRecognizer().fit("abc")
    pda = est.pda("identity")
    assert pda.accepts("abc") and pda.accepts("aA") and not pda.accepts("a")
    rpda = est.pda("rclass")
    assert rpda.accepts("ab") and not rpda.accepts("ba")
    with pytest.raises(NotFittedError):
        GeodesicRecognizer().pda()
