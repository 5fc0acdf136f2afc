"""Words over an inverse alphabet and the sparseness test.

A letter is an int: generator g (0-based) is the even letter 2*g, its
formal inverse is the odd letter 2*g + 1. In text form generator g is
the ASCII lowercase letter chr(ord('a') + g) and its inverse the
corresponding uppercase letter, so at most 26 generators are
representable as text.

A word is a tuple of letters. Indices into a word of length n are
taken mod n throughout the cyclic-subword machinery.
"""

from dataclasses import dataclass
from typing import Optional

from .errors import WordParseError

Word = tuple  # tuple of int letters


def inverse(letter: int) -> int:
    """Inverse of a letter: flips the low bit."""
    return letter ^ 1


def char_to_letter(ch: str) -> int:
    if "a" <= ch <= "z":
        return 2 * (ord(ch) - ord("a"))
    if "A" <= ch <= "Z":
        return 2 * (ord(ch) - ord("A")) + 1
    raise ValueError(f"not an ASCII letter: {ch!r}")


def letter_to_char(letter: int) -> str:
    if letter < 0 or letter >= 52:
        raise ValueError(f"letter {letter} outside the ASCII-representable range")
    g, low = divmod(letter, 2)
    return chr(ord("A" if low else "a") + g)


def parse_word(text: str) -> Word:
    """Parse an ASCII word; positions in errors are 0-based."""
    out = []
    for pos, ch in enumerate(text):
        try:
            out.append(char_to_letter(ch))
        except ValueError:
            raise WordParseError(ch, pos) from None
    return tuple(out)


def word_to_str(word: Word) -> str:
    return "".join(letter_to_char(x) for x in word)


def coerce_word(word) -> Word:
    """Accept a string or an iterable of int letters; return a tuple."""
    if isinstance(word, str):
        return parse_word(word)
    return tuple(word)


def free_reduce(word: Word) -> Word:
    """Delete adjacent inverse pairs until none remain."""
    out = []
    for x in word:
        if out and out[-1] == inverse(x):
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def is_freely_reduced(word: Word) -> bool:
    return all(word[k + 1] != inverse(word[k]) for k in range(len(word) - 1))


def is_cyclically_reduced(word: Word) -> bool:
    if not is_freely_reduced(word):
        return False
    return len(word) < 2 or word[0] != inverse(word[-1])


def is_primitive(word: Word) -> bool:
    """True when the word is not a proper power u**k with k >= 2."""
    n = len(word)
    if n == 0:
        return False
    for d in range(1, n):
        if n % d == 0 and word == word[:d] * (n // d):
            return False
    return True


def cyclic_conjugate(word: Word, k: int) -> Word:
    """Rotate left by k: a_k a_{k+1} ... a_{k-1}."""
    n = len(word)
    if n == 0:
        return word
    k %= n
    return word[k:] + word[:k]


def generators(word: Word) -> tuple:
    """Sorted generator indices occurring in the word (either sign)."""
    return tuple(sorted({x // 2 for x in word}))


def alphabet_letters(word: Word) -> tuple:
    """Sorted letters (both signs) of every generator occurring in the word."""
    out = []
    for g in generators(word):
        out.extend((2 * g, 2 * g + 1))
    return tuple(out)


@dataclass(frozen=True)
class CyclicSubword:
    """A cyclic subword w(i, j, eps) of an ambient word of length n.

    eps=+1 reads a_i a_{i+1} ... a_{j-1}; eps=-1 reads the inverses
    a_{i-1}' a_{i-2}' ... a_j' (indices mod n). The zone is the ordered
    tuple of residues (i, i+eps, ..., j) traversed by the reading, one
    longer than the subword. Zones compare as traversal tuples; zone
    membership and overlap are residue-set questions, exposed via
    zone_set.
    """

    i: int
    j: int
    eps: int
    letters: Word
    zone: tuple
    zone_set: frozenset

    def spec(self) -> str:
        return f"w({self.i},{self.j},{self.eps:+d})"


def cyclic_subword(word: Word, i: int, j: int, eps: int) -> CyclicSubword:
    """Build w(i, j, eps). Rejects parameters giving an empty reading."""
    n = len(word)
    if n == 0:
        raise ValueError("ambient word is empty")
    if eps not in (1, -1):
        raise ValueError(f"eps must be +1 or -1, got {eps}")
    i %= n
    j %= n
    if i == j:
        raise ValueError(f"w({i},{j},{eps:+d}) is empty")
    length = (j - i) % n if eps == 1 else (i - j) % n
    if eps == 1:
        letters = tuple(word[(i + t) % n] for t in range(length))
    else:
        letters = tuple(inverse(word[(i - 1 - t) % n]) for t in range(length))
    zone = tuple((i + t * eps) % n for t in range(length + 1))
    return CyclicSubword(i, j, eps, letters, zone, frozenset(zone))


@dataclass(frozen=True)
class SparseReport:
    """Outcome of the sparseness test.

    reason is None for a sparse word, otherwise one of
    "not-freely-reduced", "too-short", "sparse-1", "sparse-2".
    For the clause reasons, witness is the quadruple (q1, q1p, q2, q2p)
    of cyclic subwords violating that clause.
    """

    verdict: bool
    word: Word
    reason: Optional[str] = None
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.verdict

    def describe(self) -> str:
        if self.verdict:
            return "sparse"
        if self.reason in ("not-freely-reduced", "too-short"):
            return f"not sparse: {self.reason}"
        names = ("q1", "q1'", "q2", "q2'")
        quad = ", ".join(
            f"{name}={q.spec()}={word_to_str(q.letters)}"
            for name, q in zip(names, self.witness)
        )
        return f"not sparse: clause {self.reason} fails for {quad}"


def _candidate_pairs(word: Word):
    """All ordered pairs (q, q') of equal-reading cyclic subwords with
    distinct zones and 0 in the zone of q'."""
    n = len(word)
    by_reading = {}
    order = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for eps in (1, -1):
                q = cyclic_subword(word, i, j, eps)
                by_reading.setdefault(q.letters, []).append(q)
                order.append(q)
    pairs = []
    for q in order:
        for qp in by_reading[q.letters]:
            if q.zone != qp.zone and 0 in qp.zone_set:
                pairs.append((q, qp))
    return pairs


def _sparse1_holds(p1, p2) -> bool:
    q1, q1p = p1
    q2, q2p = p2
    return not (q1.zone_set & q2p.zone_set) and not (q1p.zone_set & q2.zone_set)


def _sparse2_holds(p1, p2, n: int) -> bool:
    q1, q1p = p1
    q2, q2p = p2
    if not (q1.zone_set & q2.zone_set):
        return True
    s1 = q1.eps * q1p.eps
    s2 = q2.eps * q2p.eps
    return s1 == s2 and (q1.i - s1 * q1p.i) % n == (q2.i - s2 * q2p.i) % n


def is_sparse(word) -> SparseReport:
    """Test the sparseness of a word.

    A word is sparse when it is freely reduced, longer than one letter,
    and for every two candidate pairs (q1, q1'), (q2, q2') of equal
    cyclic subwords (distinct zones, 0 in the primed zone) both hold:

    sparse 1: zone(q1) meets neither zone(q2') nor vice versa;
    sparse 2: zone(q1) and zone(q2) are disjoint, or the pairs have
      equal orientation products and aligned offsets i - ee'i' mod n.

    The same pair may appear as both (q1, q1') and (q2, q2').
    """
    word = coerce_word(word)
    if not is_freely_reduced(word):
        return SparseReport(False, word, "not-freely-reduced")
    n = len(word)
    if n <= 1:
        return SparseReport(False, word, "too-short")
    pairs = _candidate_pairs(word)
    for p1 in pairs:
        for p2 in pairs:
            if not _sparse1_holds(p1, p2):
                return SparseReport(False, word, "sparse-1", (p1[0], p1[1], p2[0], p2[1]))
    for p1 in pairs:
        for p2 in pairs:
            if not _sparse2_holds(p1, p2, n):
                return SparseReport(False, word, "sparse-2", (p1[0], p1[1], p2[0], p2[1]))
    return SparseReport(True, word)
