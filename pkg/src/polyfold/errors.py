"""Exception types shared across the package."""


class PolyfoldError(Exception):
    """Base class for all package-specific errors."""


class WordParseError(PolyfoldError, ValueError):
    """A word string contains a character outside the ASCII letter alphabet.

    Carries the offending character and its 0-based position.
    """

    def __init__(self, char: str, position: int):
        self.char = char
        self.position = position
        super().__init__(f"invalid character {char!r} at position {position}")


class NotSparse(PolyfoldError, ValueError):
    """The relator failed the sparseness check; carries the report."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"relator is not sparse: {report.reason}")


class AlreadySaturated(PolyfoldError, ValueError):
    """A face attachment was requested at a vertex that already hosts one."""


class ResourceLimit(PolyfoldError, RuntimeError):
    """A build exceeded its face cap before reaching the requested size."""


class StructureViolation(PolyfoldError, RuntimeError):
    """The complex violates an invariant that holds for sparse relators.

    Raised when folding would identify two pre-existing cells, when a
    polygon boundary fails to embed, or when audited data contradicts
    the structure theorems. Indicates a non-sparse input or corrupt
    imported data.
    """


class StaleDistances(PolyfoldError, RuntimeError):
    """Face-type data was requested from a complex with missing distances.

    Built complexes always carry exact distances; only imports of
    corrupt data can trigger this.
    """


class IncompleteTable(PolyfoldError, RuntimeError):
    """A class table lacks rows or classes needed to assemble an automaton."""
