"""Exception types raised by isoreg."""


class IsoregError(Exception):
    """Base class for all isoreg errors."""


class CycleDetected(IsoregError, ValueError):
    """The edge relation contains a directed cycle.

    ``cycle`` holds the vertices of one witness cycle, in order.
    """

    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("cycle detected: " + " -> ".join(map(str, self.cycle + self.cycle[:1])))


class OrderViolation(IsoregError, ValueError):
    """A comparator failed the strict partial order spot-check."""


class ExtractionMismatch(IsoregError, AssertionError):
    """A min-flow / antichain postcondition failed (solver bug)."""


class NotAntichain(IsoregError, ValueError):
    """The function restricted to the given set is not isotonic."""


class TooLarge(IsoregError):
    """An exhaustive oracle refused an instance above its size guard."""


class InvalidP(IsoregError, ValueError):
    pass


class InvalidDelta(IsoregError, ValueError):
    pass


class ParseError(IsoregError, ValueError):
    """Malformed instance file; ``line`` is 1-based (0 when unknown)."""

    def __init__(self, message, line=0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)
