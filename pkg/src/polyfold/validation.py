"""Input checking shared by the estimators and the command line."""

from .words import coerce_word


def check_relator(relator):
    """Return the relator as a tuple of int letters.

    Accepts a string like "abABcdCD" or an iterable of int letters.
    Raises WordParseError on characters outside the letter alphabet and
    ValueError on an empty relator.  Sparseness is not checked here; the
    complex constructor rejects non-sparse relators.
    """
    word = coerce_word(relator)
    if not word:
        raise ValueError("the relator must be nonempty")
    if any(not isinstance(x, int) or x < 0 for x in word):
        raise ValueError("letters must be nonnegative ints")
    return word


def check_words(words):
    """Coerce predict/transform input into a list of words.

    A single string is one word, never a sequence of one-letter words;
    a flat tuple or list of ints is likewise a single word.  Anything
    else is treated as an iterable of words (strings or letter tuples).
    The empty word is legal, so an empty string is one word while an
    empty list is zero words.
    """
    if isinstance(words, str):
        return [coerce_word(words)]
    items = list(words)
    if items and all(isinstance(x, int) for x in items):
        return [check_relator(items)]
    return [coerce_word(w) for w in items]


def check_positive_int(value, name):
    """Validate an integer option such as a face cap or a radius."""
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return value
