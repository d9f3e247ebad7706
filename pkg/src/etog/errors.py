"""Shared exception types."""


class EtogError(Exception):
    """Base class for all library errors."""


class SpecMismatchError(EtogError):
    """An element was used under a group spec it does not belong to."""


class UnknownGeneratorError(EtogError):
    """A letter refers to a generator outside the declared generating set."""


class UnknownColorError(EtogError):
    """A word contains a color outside the declared alphabet."""


class FirstCoefficientMissingError(EtogError):
    """No usable leading coefficient was found for a non-identity word.

    Mathematically impossible when expanding up to the word's length; raised
    only to surface an implementation bug instead of mis-ordering elements.
    """


class NotationError(EtogError, ValueError):
    """Malformed group spec, element literal, valuation file or condition spec."""


class ArenaError(EtogError, ValueError):
    """Malformed arena description."""


class MissingOutgoingEdgeError(ArenaError):
    """A declared node has no outgoing edge."""


class DuplicateNodeError(ArenaError):
    """The same node identifier was declared twice."""


class UnknownEndpointError(ArenaError):
    """An edge endpoint was never declared as a node."""
