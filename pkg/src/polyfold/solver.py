"""Word problem for sparse one-relator inverse monoids.

A word u equals 1 in M = Inv<X | w=1> exactly when u labels a loop at
the base vertex of the Schützenberger complex of 1, and u lies in the
R-class of 1 exactly when u labels any path from the base vertex. A
finite approximation decides both: every vertex within distance l(u)
of the base has its complete edge star once the complex is saturated
to radius l(u) + floor(n/2), because any face incident to such a
vertex has its attachment vertex within that radius (the attachment
vertex minimizes distance along a face boundary up to n/2). The
larger classical bound l(u) * n is kept available for cross-checks.
"""

from dataclasses import dataclass
from typing import Optional

from .complexes import DEFAULT_FACE_CAP, Complex
from .words import coerce_word

IDENTITY = "IDENTITY"
NOT_IDENTITY = "NOT_IDENTITY"
NOT_IN_RCLASS = "NOT_IN_RCLASS"


@dataclass
class TraceResult:
    """Path taken by a word from the base vertex.

    path holds the visited vertex ids (one more than the letters
    consumed); fail_position is the 0-based index of the first letter
    with no edge, or None when the whole word was consumed.
    """

    path: list
    fail_position: Optional[int]

    @property
    def ok(self):
        return self.fail_position is None

    @property
    def endpoint(self):
        return self.path[-1]


@dataclass
class WpVerdict:
    outcome: str  # IDENTITY, NOT_IDENTITY or NOT_IN_RCLASS
    word: tuple
    trace: TraceResult
    endpoint_distance: Optional[int]
    fail_position: Optional[int]

    def describe(self):
        if self.outcome == IDENTITY:
            return f"{self.outcome} (loop at the base vertex)"
        if self.outcome == NOT_IDENTITY:
            return (
                f"{self.outcome} (endpoint at distance "
                f"{self.endpoint_distance})"
            )
        return f"{self.outcome} (no edge at position {self.fail_position})"


def required_radius(word_len, n, early_exit=True):
    """Saturation radius that decides words of the given length."""
    classical = word_len * n
    if not early_exit:
        return classical
    return min(word_len + n // 2, classical)


def trace(cx, word):
    """Follow a word letter by letter from the base vertex."""
    word = coerce_word(word)
    v = cx.find(cx.v0)
    path = [v]
    for pos, x in enumerate(word):
        nxt = cx.neighbor(v, x)
        if nxt is None:
            return TraceResult(path, pos)
        v = nxt
        path.append(v)
    return TraceResult(path, None)


def solve_on(cx, word, grow=True, early_exit=True):
    """Decide a word against a given complex, growing it if needed.

    A successful trace is final at any radius: attachments never alter
    existing cells, so the endpoint cannot move. Only a failed trace
    needs certification, and the missing edge is conclusively absent
    once the complex is saturated to distance(fail vertex) + floor(n/2)
    (or to the classical bound l(u) * n when early_exit is off). With
    grow off, an uncertified failure raises ValueError instead of
    attaching more faces.
    """
    word = coerce_word(word)
    while True:
        t = trace(cx, word)
        if t.ok:
            d = cx.distance(t.endpoint)
            if t.endpoint == cx.find(cx.v0):
                return WpVerdict(IDENTITY, word, t, d, None)
            return WpVerdict(NOT_IDENTITY, word, t, d, None)
        if early_exit:
            need = cx.distance(t.endpoint) + cx.n // 2
        else:
            need = required_radius(len(word), cx.n, False)
        if cx.saturated_radius >= need:
            return WpVerdict(NOT_IN_RCLASS, word, t, None, t.fail_position)
        if not grow:
            raise ValueError(
                f"complex saturated to radius {cx.saturated_radius}, "
                f"certifying the failure at position {t.fail_position} "
                f"needs {need}"
            )
        cx.build_to_radius(need)


def solve(relator, word, early_exit=True, face_cap=DEFAULT_FACE_CAP):
    """Decide a single word from scratch; raises NotSparse on a bad
    relator."""
    word = coerce_word(word)
    cx = Complex(relator, face_cap=face_cap)
    return solve_on(cx, word, grow=True, early_exit=early_exit)


def is_identity(relator, word, early_exit=True, face_cap=DEFAULT_FACE_CAP):
    """True when the word equals 1 in Inv<X | w=1>."""
    return solve(relator, word, early_exit, face_cap).outcome == IDENTITY


def in_r_class(relator, word, early_exit=True, face_cap=DEFAULT_FACE_CAP):
    """True when the word is R-related to 1 (labels a path from v0)."""
    return solve(relator, word, early_exit, face_cap).outcome != NOT_IN_RCLASS
