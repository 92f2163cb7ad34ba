"""Exception hierarchy shared by every engine.

Domain errors carry a ``citation`` naming the hypothesis that was violated,
so the CLI can report it verbatim.
"""


class SixSplitError(Exception):
    """Base class for all domain errors raised by the package."""

    def __init__(self, message, citation=None):
        super().__init__(message)
        self.citation = citation

    def __str__(self):
        msg = super().__str__()
        if self.citation:
            return f"{msg} [{self.citation}]"
        return msg


class ChainComplexError(SixSplitError):
    pass


class SpaceParseError(SixSplitError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NoNormalForm(SixSplitError):
    """Raised when the rewrite system gets stuck on a subterm."""

    def __init__(self, subterm, reason=""):
        text = f"no normal form for subterm {subterm}"
        if reason:
            text += f": {reason}"
        super().__init__(text)
        self.subterm = subterm


class NotCatalogued(SixSplitError):
    """A homotopy group outside the stored table was requested."""


class InvariantError(SixSplitError):
    """Manifold invariants violate a hypothesis of the splitting theorem."""


class HiltonMilnorError(SixSplitError):
    pass


class UnsupportedBundle(SixSplitError):
    pass


class NotComputable(SixSplitError):
    """Homotopy groups of a factor cannot be read off catalogued data."""

    def __init__(self, message, factors=()):
        super().__init__(message)
        self.factors = tuple(factors)


class TheoryError(SixSplitError):
    pass
