"""Scikit-learn style estimators over one-relator inverse monoids.

Both estimators are fit on a relator (the ``X`` of ``fit`` is the
relator itself; there is no target).  Fitted attributes follow the
trailing-underscore convention and ``get_params``/``set_params``/
``clone`` work as usual, so the estimators drop into pipelines and
grid searches that treat the relator as data.
"""

import random

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .automata import build_geodesic_fsa, build_pda, minimize
from .complexes import DEFAULT_FACE_CAP, init_complex
from .facetypes import enumerate_classes
from .solver import NOT_IN_RCLASS, solve_on
from .validation import check_positive_int, check_relator, check_words


class WordProblemSolver(BaseEstimator):
    """Decides which words equal 1 in Inv<X | w=1> for a sparse w.

    fit(relator) seeds the approximation complex; predict(words)
    returns the outcome per word (IDENTITY, NOT_IDENTITY or
    NOT_IN_RCLASS), growing the complex as far as the face cap allows;
    transform(words) returns the endpoint distance of each word as a
    column vector, with -1 for words outside the R-class of 1.
    """

    def __init__(self, early_exit=True, face_cap=DEFAULT_FACE_CAP):
        self.early_exit = early_exit
        self.face_cap = face_cap

    def fit(self, relator, y=None):
        check_positive_int(self.face_cap, "face_cap")
        self.relator_ = check_relator(relator)
        self.complex_ = init_complex(self.relator_, face_cap=self.face_cap)
        self.n_ = self.complex_.n
        return self

    def _verdicts(self, words):
        check_is_fitted(self)
        return [
            solve_on(self.complex_, w, grow=True, early_exit=self.early_exit)
            for w in check_words(words)
        ]

    def predict(self, words):
        """Outcome string per word."""
        return np.array([v.outcome for v in self._verdicts(words)], dtype=object)

    def transform(self, words):
        """Endpoint distance per word (-1 off the R-class), shape (n, 1)."""
        dist = [
            -1 if v.outcome == NOT_IN_RCLASS else v.endpoint_distance
            for v in self._verdicts(words)
        ]
        return np.array(dist, dtype=int).reshape(-1, 1)


class GeodesicRecognizer(BaseEstimator):
    """Recognizes geodesic words over the R-class of 1.

    fit(relator) closes the vertex-class table and minimizes the
    geodesic automaton; predict(words) returns a boolean array (is the
    word geodesic?); transform(words) returns the minimized-automaton
    state per word as a column vector, with -1 for words that fail.
    A fold_seed of 0 keeps the deterministic first-in first-out fold
    order; any other value shuffles fold order, which must not change
    any fitted attribute.
    """

    def __init__(self, face_cap=DEFAULT_FACE_CAP, fold_seed=0):
        self.face_cap = face_cap
        self.fold_seed = fold_seed

    def fit(self, relator, y=None):
        check_positive_int(self.face_cap, "face_cap")
        rng = random.Random(self.fold_seed) if self.fold_seed else None
        self.table_ = enumerate_classes(
            check_relator(relator), face_cap=self.face_cap, fold_rng=rng
        )
        self.relator_ = self.table_.word
        self.fsa_ = build_geodesic_fsa(self.table_)
        self.dfa_ = minimize(self.fsa_)
        self.n_classes_ = self.table_.n_classes
        self.n_cone_types_ = self.dfa_.n_cone_types
        return self

    def pda(self, accept="identity"):
        """The word-problem PDA over the fitted class table."""
        check_is_fitted(self)
        return build_pda(self.table_, accept)

    def predict(self, words):
        """True per word exactly when the word is geodesic."""
        check_is_fitted(self)
        return np.array(
            [self.dfa_.accepts(w) for w in check_words(words)], dtype=bool
        )

    def transform(self, words):
        """Cone-type state per word (-1 when the word is not geodesic)."""
        check_is_fitted(self)
        rows = []
        for w in check_words(words):
            state = self.dfa_.run(w)
            rows.append(-1 if state is None or state == self.dfa_.dead else state)
        return np.array(rows, dtype=int).reshape(-1, 1)
